#include <doctest.h>

#include "piconn/natural_connection.hpp"

#include "fixture_helpers.hpp"

using namespace piconn;
using testutil::load_fixture;
using testutil::make_tensor;

namespace {

struct Setup {
    PiManifoldInstance inst;
    ConnectionCoefficients conn;
    Tensor F;
    LeeForms lee;
    NijenhuisPair pair;
    NaturalConnection d1;
    NaturalConnection d2;
    TorsionData T1;
    TorsionData T2;
};

Setup setup(const std::string& fixture) {
    PiManifoldInstance inst = load_fixture(fixture);
    ConnectionCoefficients conn = levi_civita(inst);
    Tensor F = fundamental_tensor(inst, conn);
    LeeForms lee = lee_forms(inst, F);
    NijenhuisPair pair = nijenhuis_pair(inst, conn);
    NaturalConnection d1 = first_connection(inst, conn);
    NaturalConnection d2 = second_connection(inst, conn, pair);
    TorsionData T1 = torsion(d1, inst);
    TorsionData T2 = torsion(d2, inst);
    return {std::move(inst), std::move(conn), std::move(F),  std::move(lee), std::move(pair),
            std::move(d1),   std::move(d2),   std::move(T1), std::move(T2)};
}

}  // namespace

TEST_CASE("the first connection drops exactly the vertical interaction terms") {
    const Setup s = setup("EX-L.json");
    const Tensor expected = make_tensor(s.inst, {Slot::Lower, Slot::Lower, Slot::Upper},
                                        testutil::example_D1_components());
    CHECK(s.d1.coefficients.gamma == expected);
    CHECK(testutil::nonzero_count(s.d1.coefficients.gamma) == 40);

    // Named rows: the vertical direction derives as before, the vertical
    // argument is annihilated, horizontal rows lose the vertical component.
    const auto var = [&](const char* n) { return Scalar::variable(s.inst.params(), n); };
    const Vec d0_e1 = s.d1.coefficients.derivative_basis(0, 1);
    CHECK(d0_e1[2] == -var("m1"));
    CHECK(d0_e1[4] == -var("m2"));
    CHECK(vec_is_zero(s.d1.coefficients.derivative_basis(1, 0)));
    const Vec d1_e2 = s.d1.coefficients.derivative_basis(1, 2);
    CHECK(d1_e2[1] == var("l1"));
    CHECK(d1_e2[3] == var("l3"));
    CHECK(d1_e2[0].is_zero());
}

TEST_CASE("both torsions match the worked example tables") {
    const Setup s = setup("EX-L.json");
    const Tensor expected_T1 = make_tensor(s.inst, {Slot::Lower, Slot::Lower, Slot::Lower},
                                           testutil::example_T1_components());
    const Tensor expected_T2 = make_tensor(s.inst, {Slot::Lower, Slot::Lower, Slot::Lower},
                                           testutil::example_T2_components());
    CHECK(s.T1.T_cov == expected_T1);
    CHECK(s.T2.T_cov == expected_T2);
    CHECK(testutil::nonzero_count(s.T1.T_cov) == 24);
    CHECK(testutil::nonzero_count(s.T2.T_cov) == 8);
    CHECK(s.T1.T.lower(2, s.inst.g()) == s.T1.T_cov);

    // All six torsion trace forms vanish here.
    CHECK(s.T1.t.is_zero());
    CHECK(s.T1.t_star.is_zero());
    CHECK(s.T1.t_hat.is_zero());
    CHECK(s.T2.t.is_zero());
    CHECK(s.T2.t_star.is_zero());
    CHECK(s.T2.t_hat.is_zero());
}

TEST_CASE("three independent torsion constructions agree on every fixture") {
    for (const char* fixture : {"EX-L.json", "EX-0.json", "EX-F4.json", "EX-F5.json"}) {
        INFO(fixture);
        const Setup s = setup(fixture);
        CHECK(torsion_via_F(s.inst, s.F, ConnectionKind::First) == s.T1.T_cov);
        CHECK(torsion_via_F(s.inst, s.F, ConnectionKind::Second) == s.T2.T_cov);
        CHECK(torsion_via_N(s.inst, s.pair, ConnectionKind::First) == s.T1.T_cov);
        CHECK(torsion_via_N(s.inst, s.pair, ConnectionKind::Second) == s.T2.T_cov);
    }
}

TEST_CASE("both connections annihilate the whole structure") {
    for (const char* fixture : {"EX-L.json", "EX-F5.json"}) {
        INFO(fixture);
        const Setup s = setup(fixture);
        for (const NaturalConnection* d : {&s.d1, &s.d2}) {
            const ValidationReport report = naturality_report(s.inst, *d);
            for (const auto& check : report.checks) {
                INFO(check.name);
                CHECK(check.passed);
            }
            // Directly: the derivative of each structure tensor vanishes.
            CHECK(nabla_tensor(d->coefficients, phi_as_tensor(s.inst)).is_zero());
            CHECK(nabla_tensor(d->coefficients, xi_as_tensor(s.inst)).is_zero());
            CHECK(nabla_tensor(d->coefficients, eta_as_tensor(s.inst)).is_zero());
            CHECK(nabla_tensor(d->coefficients, matrix_as_tensor(s.inst.g())).is_zero());
            CHECK(nabla_tensor(d->coefficients, matrix_as_tensor(associated_metric(s.inst)))
                      .is_zero());
        }
    }
}

TEST_CASE("potentials are antisymmetric in the last slots and reproduce F") {
    for (const char* fixture : {"EX-L.json", "EX-F4.json"}) {
        INFO(fixture);
        const Setup s = setup(fixture);
        CHECK(potential_identities(s.inst, s.d1, s.F).all_passed());
        CHECK(potential_identities(s.inst, s.d2, s.F).all_passed());
    }
}

TEST_CASE("the exterior derivative of the one-form matches the bracket values") {
    const Setup s = setup("EX-L.json");
    const Tensor dEta = d_eta(s.inst, s.conn);
    const Tensor expected =
        make_tensor(s.inst, {Slot::Lower, Slot::Lower}, testutil::example_d_eta_components());
    CHECK(dEta == expected);
    CHECK(check_d_eta_bracket(s.inst, dEta).passed);
}

TEST_CASE("compact torsion forms collapse on the worked example") {
    const Setup s = setup("EX-L.json");
    CHECK(compact_torsion_forms(s.inst, CompactClass::F7, ConnectionKind::First) == s.T1.T_cov);
    CHECK(compact_torsion_forms(s.inst, CompactClass::F7, ConnectionKind::Second) == s.T2.T_cov);
    CHECK(compact_torsion_forms(s.inst, CompactClass::U0hat, ConnectionKind::First) ==
          s.T1.T_cov);
    CHECK(compact_torsion_forms(s.inst, CompactClass::U0hat, ConnectionKind::Second) ==
          s.T2.T_cov);
    // The worked example is not of the third basic class.
    CHECK_THROWS_AS(
        (void)compact_torsion_forms(s.inst, CompactClass::F3, ConnectionKind::First),
        std::domain_error);
    // The conformal-type fixture has a nonvanishing symmetric tensor, so no
    // compact form applies at all.
    const Setup f5 = setup("EX-F5.json");
    CHECK_THROWS_AS(
        (void)compact_torsion_forms(f5.inst, CompactClass::U0hat, ConnectionKind::First),
        std::domain_error);
}

TEST_CASE("the split formula reproduces the torsion when the connections coincide") {
    for (const char* fixture : {"EX-0.json", "EX-F4.json", "EX-F5.json"}) {
        INFO(fixture);
        const Setup s = setup(fixture);
        CHECK(s.d1.coefficients.gamma == s.d2.coefficients.gamma);
        CHECK(u1_torsion_formula(s.inst, s.pair) == s.T1.T_cov);
        CHECK(s.T1.T_cov == s.T2.T_cov);
    }
}

TEST_CASE("coincidence is decided consistently by criterion and by coefficients") {
    const CoincidenceResult on_example = coincidence_test(load_fixture("EX-L.json"));
    CHECK_FALSE(on_example.n_phi_phi_vanishes);
    CHECK_FALSE(on_example.coefficients_equal);
    CHECK(on_example.consistent());
    REQUIRE(on_example.witness_pair.has_value());
    const auto [wi, wj] = *on_example.witness_pair;
    CHECK(wi >= 1);
    CHECK(wj >= 1);

    const CoincidenceResult on_abelian = coincidence_test(load_fixture("EX-0.json"));
    CHECK(on_abelian.n_phi_phi_vanishes);
    CHECK(on_abelian.coefficients_equal);
    CHECK_FALSE(on_abelian.witness_pair.has_value());
}

TEST_CASE("torsion trace forms obey the Lee-form expressions") {
    for (const char* fixture : {"EX-L.json", "EX-0.json", "EX-F4.json", "EX-F5.json"}) {
        INFO(fixture);
        const Setup s = setup(fixture);
        const ValidationReport report = torsion_form_relations(s.inst, s.lee, s.T1, s.T2);
        for (const auto& check : report.checks) {
            INFO(check.name);
            CHECK(check.passed);
        }
    }

    // Nontrivial value: on the conformal-type fixture the first form at the
    // vertical field equals minus the second trace form there.
    const Setup f5 = setup("EX-F5.json");
    const Scalar a = Scalar::variable(f5.inst.params(), "a");
    CHECK(eval_form(f5.T1.t, {f5.inst.xi()}) == Scalar(-4) * a);
    CHECK(eval_form(f5.lee.theta_star, {f5.inst.xi()}) == Scalar(4) * a);
}

TEST_CASE("the eight-term identity pins down the second torsion") {
    for (const char* fixture : {"EX-L.json", "EX-F4.json", "EX-F5.json"}) {
        INFO(fixture);
        const Setup s = setup(fixture);
        CHECK(t2_defining_property(s.inst, s.T2.T_cov).passed);
    }

    // Negative control: a perturbed tensor breaks the identity, and the
    // check reports a witness index with a nonzero residual.
    const Setup s = setup("EX-L.json");
    Tensor broken = s.T2.T_cov;
    broken.at(1, 2, 3) = broken.at(1, 2, 3) + Scalar(1);
    const CheckResult failed = t2_defining_property(s.inst, broken);
    CHECK_FALSE(failed.passed);
    CHECK_FALSE(failed.witness_index.empty());
    CHECK_FALSE(failed.residual.empty());
}
