#include "piconn/pipeline.hpp"

#include <stdexcept>

#include "piconn/checks.hpp"

namespace piconn {

Pipeline Pipeline::build(const PiManifoldInstance& inst) {
    Pipeline p{inst,
               levi_civita(inst),
               Tensor{},
               LeeForms{},
               NijenhuisPair{},
               NaturalConnection{},
               NaturalConnection{},
               TorsionData{},
               TorsionData{},
               Tensor{}};
    p.F = fundamental_tensor(inst, p.nabla);
    p.lee = lee_forms(inst, p.F);
    p.pair = nijenhuis_pair(inst, p.nabla);
    p.d1 = first_connection(inst, p.nabla);
    p.d2 = second_connection(inst, p.nabla, p.pair);
    p.T1 = torsion(p.d1, inst);
    p.T2 = torsion(p.d2, inst);
    p.dEta = d_eta(inst, p.nabla);
    return p;
}

ValidationReport Pipeline::suite_identities() const {
    ValidationReport report;
    report.merge(check_connection_basics(instance, nabla));
    report.merge(check_F_properties(instance, F));
    report.merge(check_derivative_identities(instance, nabla, F));
    report.merge(check_lee_relations(instance, lee));
    report.merge(check_NN_properties(pair, instance));

    const NijenhuisPair from_f = NN_from_F(F, instance);
    report.add(check_tensor_equal("N_dual_path", pair.N_cov, from_f.N_cov));
    report.add(check_tensor_equal("N_hat_dual_path", pair.N_hat_cov, from_f.N_hat_cov));
    report.add(check_tensor_equal("F_round_trip", F_from_NN(pair, instance), F));

    if (pair.N_cov.is_zero())
        report.add(check_tensor_equal("F_restricted_form_U0",
                                      F_restricted_forms(pair, instance, RestrictedDomain::U0),
                                      F));
    else
        report.add(CheckResult::ok("F_restricted_form_U0", "skipped: N does not vanish"));
    if (pair.N_hat_cov.is_zero())
        report.add(check_tensor_equal(
            "F_restricted_form_U0hat",
            F_restricted_forms(pair, instance, RestrictedDomain::U0hat), F));
    else
        report.add(
            CheckResult::ok("F_restricted_form_U0hat", "skipped: N_hat does not vanish"));
    return report;
}

ValidationReport Pipeline::suite_naturality() const {
    ValidationReport report;
    report.merge(naturality_report(instance, d1));
    report.merge(naturality_report(instance, d2));
    report.merge(potential_identities(instance, d1, F));
    report.merge(potential_identities(instance, d2, F));
    return report;
}

ValidationReport Pipeline::suite_torsion_paths() const {
    const int dim = instance.dim();
    ValidationReport report;
    report.add(check_identity("T1_antisymmetry", dim, 3, [&](const std::vector<int>& i) {
        return T1.T_cov.at(i[0], i[1], i[2]) + T1.T_cov.at(i[1], i[0], i[2]);
    }));
    report.add(check_identity("T2_antisymmetry", dim, 3, [&](const std::vector<int>& i) {
        return T2.T_cov.at(i[0], i[1], i[2]) + T2.T_cov.at(i[1], i[0], i[2]);
    }));
    report.add(check_tensor_equal("T1_via_F", torsion_via_F(instance, F, ConnectionKind::First),
                                  T1.T_cov));
    report.add(check_tensor_equal("T2_via_F", torsion_via_F(instance, F, ConnectionKind::Second),
                                  T2.T_cov));
    report.add(check_tensor_equal(
        "T1_via_N", torsion_via_N(instance, pair, ConnectionKind::First), T1.T_cov));
    report.add(check_tensor_equal(
        "T2_via_N", torsion_via_N(instance, pair, ConnectionKind::Second), T2.T_cov));
    report.add(check_identity("d_eta_antisymmetry", dim, 2, [&](const std::vector<int>& i) {
        return dEta.at(i[0], i[1]) + dEta.at(i[1], i[0]);
    }));
    report.add(check_d_eta_bracket(instance, dEta));
    return report;
}

ValidationReport Pipeline::suite_t2_property() const {
    ValidationReport report;
    report.add(t2_defining_property(instance, T2.T_cov));
    return report;
}

ValidationReport Pipeline::suite_forms() const {
    return torsion_form_relations(instance, lee, T1, T2);
}

ValidationReport Pipeline::suite_coincidence() const {
    ValidationReport report;
    const CoincidenceResult result = coincidence_test(instance);
    report.add(result.consistent()
                   ? CheckResult::ok("coincidence_consistent")
                   : CheckResult::fail("coincidence_consistent", {},
                                       result.n_phi_phi_vanishes ? "1" : "0",
                                       "criterion and coefficient comparison disagree"));
    const UnionVerdicts unions = classify_unions(instance, pair);
    report.add(unions.u1.holds == result.n_phi_phi_vanishes
                   ? CheckResult::ok("u1_verdict_matches_coincidence")
                   : CheckResult::fail("u1_verdict_matches_coincidence", {}, "",
                                       "union verdict disagrees with the pair criterion"));
    if (result.n_phi_phi_vanishes) {
        report.add(check_tensor_equal("torsions_coincide", T1.T_cov, T2.T_cov));
        report.add(check_tensor_equal("coincident_torsion_formula",
                                      u1_torsion_formula(instance, pair), T1.T_cov));
    } else {
        report.add(CheckResult::ok("torsions_coincide", "skipped: connections differ"));
        report.add(
            CheckResult::ok("coincident_torsion_formula", "skipped: connections differ"));
    }
    return report;
}

ValidationReport Pipeline::suite_theorems() const {
    ValidationReport report;
    const ClassificationReport cls = classify_by_F(instance, F, lee);
    const auto rows_first = characterize_by_torsion(instance, T1, ConnectionKind::First);
    const auto rows_second = characterize_by_torsion(instance, T2, ConnectionKind::Second);
    const bool traces_vanish_at_xi = eval_form(lee.theta, {instance.xi()}).is_zero() &&
                                     eval_form(lee.theta_star, {instance.xi()}).is_zero();

    for (size_t i = 0; i < cls.basic.size(); ++i) {
        const std::string label = "F" + std::to_string(i + 1);
        auto row_check = [&](const std::string& name, const Verdict& row) {
            if (!cls.basic[i].holds) {
                report.add(CheckResult::ok(name, "skipped: instance is not in " + label));
                return;
            }
            if (i == 5 && !traces_vanish_at_xi) {
                report.add(CheckResult::ok(
                    name,
                    "skipped: nonzero trace forms place the instance outside " + label +
                        " proper, although the printed shape conditions hold"));
                return;
            }
            if (row.holds) {
                report.add(CheckResult::ok(name));
            } else if (row.witness) {
                report.add(CheckResult::fail(name, row.witness->index, row.witness->residual,
                                             "clause " + row.witness->clause));
            } else {
                report.add(CheckResult::fail(name, {}, "", "row condition violated"));
            }
        };
        row_check("torsion_row_first_" + label, rows_first[i]);
        row_check("torsion_row_second_" + label, rows_second[i]);
    }

    if (cls.f0.holds) {
        bool all = true;
        for (const auto& v : cls.basic) all = all && v.holds;
        report.add(all ? CheckResult::ok("f0_inside_every_class")
                       : CheckResult::fail("f0_inside_every_class", {}, "",
                                           "zero F rejected by a class condition"));
    } else {
        report.add(CheckResult::ok("f0_inside_every_class", "skipped: F is nonzero"));
    }

    if (pair.N_hat_cov.is_zero()) {
        report.add(check_tensor_equal(
            "compact_torsion_U0hat_first",
            compact_torsion_forms(instance, CompactClass::U0hat, ConnectionKind::First),
            T1.T_cov));
        report.add(check_tensor_equal(
            "compact_torsion_U0hat_second",
            compact_torsion_forms(instance, CompactClass::U0hat, ConnectionKind::Second),
            T2.T_cov));
    } else {
        report.add(
            CheckResult::ok("compact_torsion_U0hat_first", "skipped: N_hat does not vanish"));
        report.add(
            CheckResult::ok("compact_torsion_U0hat_second", "skipped: N_hat does not vanish"));
    }
    if (cls.basic[2].holds && pair.N_hat_cov.is_zero()) {
        report.add(check_tensor_equal(
            "compact_torsion_F3_first",
            compact_torsion_forms(instance, CompactClass::F3, ConnectionKind::First), T1.T_cov));
        report.add(check_tensor_equal(
            "compact_torsion_F3_second",
            compact_torsion_forms(instance, CompactClass::F3, ConnectionKind::Second),
            T2.T_cov));
    } else {
        report.add(CheckResult::ok("compact_torsion_F3_first", "skipped: not in F3"));
        report.add(CheckResult::ok("compact_torsion_F3_second", "skipped: not in F3"));
    }
    if (cls.basic[6].holds && pair.N_hat_cov.is_zero()) {
        report.add(check_tensor_equal(
            "compact_torsion_F7_first",
            compact_torsion_forms(instance, CompactClass::F7, ConnectionKind::First), T1.T_cov));
        report.add(check_tensor_equal(
            "compact_torsion_F7_second",
            compact_torsion_forms(instance, CompactClass::F7, ConnectionKind::Second),
            T2.T_cov));
    } else {
        report.add(CheckResult::ok("compact_torsion_F7_first", "skipped: not in F7"));
        report.add(CheckResult::ok("compact_torsion_F7_second", "skipped: not in F7"));
    }

    if (cls.basic[6].holds) {
        report.add(check_tensor_equal("f7_projection_reproduces_F",
                                      f7_projection(instance, F), F));
    } else {
        report.add(CheckResult::ok("f7_projection_reproduces_F", "skipped: not in F7"));
    }
    return report;
}

ValidationReport Pipeline::run_suite(const std::string& name) const {
    if (name == "identities") return suite_identities();
    if (name == "naturality") return suite_naturality();
    if (name == "torsion-paths") return suite_torsion_paths();
    if (name == "t2-property") return suite_t2_property();
    if (name == "forms") return suite_forms();
    if (name == "coincidence") return suite_coincidence();
    if (name == "theorems") return suite_theorems();
    if (name == "all") {
        ValidationReport report;
        for (const auto& suite : suite_names())
            if (suite != "all") report.merge(run_suite(suite));
        return report;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

const std::vector<std::string>& Pipeline::suite_names() {
    static const std::vector<std::string> names{"identities",  "naturality", "torsion-paths",
                                                "t2-property", "forms",      "coincidence",
                                                "theorems",    "all"};
    return names;
}

}  // namespace piconn
