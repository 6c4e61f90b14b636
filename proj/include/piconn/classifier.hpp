#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "piconn/levi_civita.hpp"
#include "piconn/natural_connection.hpp"
#include "piconn/nijenhuis.hpp"
#include "piconn/structure.hpp"
#include "piconn/tensor.hpp"

namespace piconn {

// First failing clause of a membership test.
struct ClassWitness {
    std::string clause;
    std::vector<int> index;
    std::string residual;
};

struct Verdict {
    bool holds = true;
    std::optional<ClassWitness> witness;
};

struct UnionVerdicts {
    Verdict u0;      // N ≡ 0
    Verdict u0hat;   // N̂ ≡ 0
    Verdict u1;      // N(φ·, φ·) ≡ 0
};

// Membership verdicts against the eleven characteristic conditions plus the
// F ≡ 0 intersection class.
struct ClassificationReport {
    Verdict f0;
    std::array<Verdict, 11> basic;  // basic[i] is the class numbered i+1
};

// Checks every displayed characteristic condition (including the cyclic-sum
// and trace clauses of the second and third classes) on all basis triples.
ClassificationReport classify_by_F(const PiManifoldInstance& inst, const Tensor& F,
                                   const LeeForms& lee);

// Union membership from the Nijenhuis pair.
UnionVerdicts classify_unions(const PiManifoldInstance& inst, const NijenhuisPair& pair);

// Membership verdicts against the torsion-based characterizations (the rows
// differ between the two connections only in the ξ-component clause of the
// seventh class).
std::array<Verdict, 11> characterize_by_torsion(const PiManifoldInstance& inst,
                                                const TorsionData& T, ConnectionKind which);

// The component of F along the seventh class:
//   ¼{[F(φ²x,φ²y,ξ)−F(φ²y,φ²x,ξ)+F(φx,φy,ξ)−F(φy,φx,ξ)]η(z) + (y↔z term)}.
Tensor f7_projection(const PiManifoldInstance& inst, const Tensor& F);

// Summary line for reports: "F0", the true basic classes joined with '+',
// or "mixed" when F ≠ 0 and no single condition holds.
std::string single_class_label(const ClassificationReport& report);

}  // namespace piconn
