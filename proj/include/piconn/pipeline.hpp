#pragma once

#include <string>
#include <vector>

#include "piconn/classifier.hpp"
#include "piconn/levi_civita.hpp"
#include "piconn/natural_connection.hpp"
#include "piconn/nijenhuis.hpp"
#include "piconn/report.hpp"
#include "piconn/structure.hpp"

namespace piconn {

// Everything derivable from one validated instance, computed once.
struct Pipeline {
    PiManifoldInstance instance;
    ConnectionCoefficients nabla;
    Tensor F;
    LeeForms lee;
    NijenhuisPair pair;
    NaturalConnection d1;
    NaturalConnection d2;
    TorsionData T1;
    TorsionData T2;
    Tensor dEta;

    static Pipeline build(const PiManifoldInstance& inst);

    ValidationReport suite_identities() const;
    ValidationReport suite_naturality() const;
    ValidationReport suite_torsion_paths() const;
    ValidationReport suite_t2_property() const;
    ValidationReport suite_forms() const;
    ValidationReport suite_coincidence() const;
    ValidationReport suite_theorems() const;

    // One of the suite names above, or "all".  Throws std::invalid_argument
    // for unknown names.
    ValidationReport run_suite(const std::string& name) const;

    static const std::vector<std::string>& suite_names();
};

}  // namespace piconn
