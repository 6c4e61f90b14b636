#pragma once

#include <optional>
#include <utility>

#include "piconn/levi_civita.hpp"
#include "piconn/nijenhuis.hpp"
#include "piconn/report.hpp"
#include "piconn/structure.hpp"
#include "piconn/tensor.hpp"

namespace piconn {

enum class ConnectionKind { First, Second };

// A structure-preserving connection together with its potential (the lowered
// difference from the metric connection).
struct NaturalConnection {
    ConnectionKind kind = ConnectionKind::First;
    ConnectionCoefficients coefficients;
    Tensor potential;  // (0,3): Q(x,y,z) = g(D_x y − ∇_x y, z)
};

// Torsion of a connection with its three trace forms.
struct TorsionData {
    Tensor T;      // (1,2), slots {Lower, Lower, Upper}
    Tensor T_cov;  // (0,3)
    Tensor t;      // t(x)  = g^{ij} T(x, e_i, e_j)
    Tensor t_star; // t*(x) = g^{ij} T(x, e_i, φe_j)
    Tensor t_hat;  // t̂(x) = T(x, ξ, ξ)
};

// Outcome of the D¹ = D² comparison: the φ-restricted N criterion with a
// witness pair, alongside the direct coefficient comparison.
struct CoincidenceResult {
    bool n_phi_phi_vanishes = false;
    std::optional<std::pair<int, int>> witness_pair;
    bool coefficients_equal = false;
    bool consistent() const { return n_phi_phi_vanishes == coefficients_equal; }
};

// Compact-formula selector: the classes whose torsions collapse to short
// expressions in Nʰ and dη.
enum class CompactClass { U0hat, F3, F7 };

// D¹: the connection  ∇_x y − ½{(∇_xφ)φy − (∇_xη)(y)ξ} − η(y)∇_xξ.
NaturalConnection first_connection(const PiManifoldInstance& inst,
                                   const ConnectionCoefficients& conn);

// D²: the connection with potential
//   Q²(x,y,z) = Q¹(x,y,z) − ⅛{N(φ²z,φ²y,φ²x) + 2η(x)N(φz,φy,ξ)}.
NaturalConnection second_connection(const PiManifoldInstance& inst,
                                    const ConnectionCoefficients& conn,
                                    const NijenhuisPair& pair);

// T(x,y) = D_x y − D_y x − [x,y], lowered, with the three trace forms.
TorsionData torsion(const NaturalConnection& connection, const PiManifoldInstance& inst);

// Torsion rebuilt purely from F components (independent of the coefficient
// path): the first kind uses
//   −½{F(x,φy,z)−F(y,φx,z)} − ½η(z){F(x,φy,ξ)−F(y,φx,ξ)}
//   + η(y)F(x,φz,ξ) − η(x)F(y,φz,ξ),
// the second adds the five-term ⅛ block and the two ¼ trace blocks.
Tensor torsion_via_F(const PiManifoldInstance& inst, const Tensor& F, ConnectionKind which);

// Torsion rebuilt from the Nijenhuis pair (third independent path).
Tensor torsion_via_N(const PiManifoldInstance& inst, const NijenhuisPair& pair,
                     ConnectionKind which);

// dη(x,y) = (∇_xη)y − (∇_yη)x; on left-invariant fields equals −η([x,y]),
// which check_d_eta_bracket verifies.
Tensor d_eta(const PiManifoldInstance& inst, const ConnectionCoefficients& conn);
CheckResult check_d_eta_bracket(const PiManifoldInstance& inst, const Tensor& dEta);

// Short-form torsions on the collapsing classes, built from Nʰ and dη with
// the pinned conventions
//   (η∧dη)(x,y,z) = η(x)dη(y,z) − η(y)dη(x,z) + η(z)dη(x,y),
//   (dη⊗η)(x,y,z) = dη(x,y)η(z).
// Throws std::domain_error when the instance fails the class requirement
// (N̂ ≠ 0, or the named basic-class condition).
Tensor compact_torsion_forms(const PiManifoldInstance& inst, CompactClass which_class,
                             ConnectionKind which_conn);

// The hv-split torsion formula valid when the two connections coincide.
Tensor u1_torsion_formula(const PiManifoldInstance& inst, const NijenhuisPair& pair);

// Trace-form relations: the Lee-form expressions for the first connection's
// forms, the coincidence of the two connections' forms, and the φ/φ²
// composition relations.
ValidationReport torsion_form_relations(const PiManifoldInstance& inst, const LeeForms& lee,
                                        const TorsionData& first, const TorsionData& second);

// D annihilates φ, ξ, η, g, and the associated metric.
ValidationReport naturality_report(const PiManifoldInstance& inst,
                                   const NaturalConnection& connection);

// The potential identities: Q(x,y,φz) − Q(x,φy,z) = F(x,y,z) and
// Q(x,y,z) = −Q(x,z,y).
ValidationReport potential_identities(const PiManifoldInstance& inst,
                                      const NaturalConnection& connection, const Tensor& F);

// The eight-term defining identity of the second connection's torsion.
CheckResult t2_defining_property(const PiManifoldInstance& inst, const Tensor& T_cov);

// Whether D¹ = D², by the N(φ·,φ·) criterion and by coefficients.
CoincidenceResult coincidence_test(const PiManifoldInstance& inst);

}  // namespace piconn
