#include <doctest.h>

#include "piconn/levi_civita.hpp"

#include "fixture_helpers.hpp"

using namespace piconn;
using testutil::load_fixture;
using testutil::make_tensor;

TEST_CASE("connection coefficients reproduce the worked example table") {
    const auto inst = load_fixture("EX-L.json");
    const ConnectionCoefficients conn = levi_civita(inst);
    const Tensor expected = make_tensor(inst, {Slot::Lower, Slot::Lower, Slot::Upper},
                                        testutil::example_connection_components());
    CHECK(conn.gamma == expected);
    CHECK(testutil::nonzero_count(conn.gamma) == 56);

    // A couple of named values, read directly off the derivative helper.
    const Vec d_e1_e2 = conn.derivative_basis(1, 2);
    CHECK(d_e1_e2[0] == Scalar::variable(inst.params(), "m1"));
    CHECK(d_e1_e2[1] == Scalar::variable(inst.params(), "l1"));
    CHECK(d_e1_e2[3] == Scalar::variable(inst.params(), "l3"));
    CHECK(d_e1_e2[2].is_zero());
    const Vec d_e1_e0 = conn.derivative_basis(1, 0);
    CHECK(d_e1_e0[2] == -Scalar::variable(inst.params(), "m1"));
    CHECK(d_e1_e0[4] == -Scalar::variable(inst.params(), "m2"));
}

TEST_CASE("the abelian variant is flat") {
    const auto inst = load_fixture("EX-0.json");
    CHECK(levi_civita(inst).gamma.is_zero());
}

TEST_CASE("connection derivation commutes with substitution") {
    const auto inst = load_fixture("EX-L.json");
    const Substitution s(inst.params(), {{"l1", make_rational(1)},
                                         {"l2", make_rational(2)},
                                         {"l3", make_rational(-1)},
                                         {"l4", make_rational(3)},
                                         {"m1", make_rational(1)},
                                         {"m2", make_rational(-2)}});
    const Tensor symbolic_then_subst = levi_civita(inst).gamma.substituted(s);
    const Tensor subst_then_symbolic = levi_civita(inst.substituted(s)).gamma;
    CHECK(symbolic_then_subst == subst_then_symbolic);
    CHECK(subst_then_symbolic.at(1, 2, 1) == Scalar(1));   // l1 -> 1
    CHECK(subst_then_symbolic.at(0, 3, 2) == Scalar(2));   // -m2 -> 2
}

TEST_CASE("the computed connection is torsion-free and metric-parallel") {
    const auto inst = load_fixture("EX-L.json");
    const ConnectionCoefficients conn = levi_civita(inst);
    const ValidationReport report = check_connection_basics(inst, conn);
    for (const auto& check : report.checks) {
        INFO(check.name);
        CHECK(check.passed);
    }
    CHECK(report.find("torsion_free_vs_brackets") != nullptr);
    CHECK(report.find("metric_parallel") != nullptr);

    // The metric derivative is identically zero as a tensor as well.
    CHECK(nabla_tensor(conn, matrix_as_tensor(inst.g())).is_zero());
}

TEST_CASE("the fundamental tensor has the worked example components") {
    const auto inst = load_fixture("EX-L.json");
    const ConnectionCoefficients conn = levi_civita(inst);
    const Tensor F = fundamental_tensor(inst, conn);
    const Tensor expected = make_tensor(inst, {Slot::Lower, Slot::Lower, Slot::Lower},
                                        testutil::example_F_components());
    CHECK(F == expected);
    CHECK(testutil::nonzero_count(F) == 16);
}

TEST_CASE("fundamental tensor properties hold and violations are witnessed") {
    const auto inst = load_fixture("EX-L.json");
    const Tensor F = fundamental_tensor(inst, levi_civita(inst));
    CHECK(check_F_properties(inst, F).all_passed());

    Tensor corrupted = F;
    corrupted.at(1, 0, 4) += Scalar(1);  // breaks the last-two-slot symmetry
    const ValidationReport report = check_F_properties(inst, corrupted);
    CHECK_FALSE(report.all_passed());
    const CheckResult* sym = report.find("F_last_two_symmetry");
    REQUIRE(sym != nullptr);
    CHECK_FALSE(sym->passed);
    CHECK_FALSE(sym->witness_index.empty());
    CHECK_FALSE(sym->residual.empty());
}

TEST_CASE("derivatives of the one-form and the field agree with the metric duals") {
    const auto inst = load_fixture("EX-L.json");
    const ConnectionCoefficients conn = levi_civita(inst);
    const Tensor F = fundamental_tensor(inst, conn);
    CHECK(check_derivative_identities(inst, conn, F).all_passed());

    // The covariant derivative of the one-form at (e1, e2) equals the
    // component of the derivative of the field: g(d(e1) xi, e2) = -m1.
    const Tensor nabla_eta = nabla_tensor(conn, eta_as_tensor(inst));
    CHECK(nabla_eta.at(1, 2) == -Scalar::variable(inst.params(), "m1"));
    const Tensor nabla_xi = nabla_tensor(conn, xi_as_tensor(inst));
    for (int i = 0; i < inst.dim(); ++i) {
        Scalar eta_of_derivative;
        for (int k = 0; k < inst.dim(); ++k)
            eta_of_derivative += inst.eta()[static_cast<size_t>(k)] * nabla_xi.at(i, k);
        CHECK(eta_of_derivative.is_zero());
    }
}

TEST_CASE("all three trace forms vanish on the worked example") {
    const auto inst = load_fixture("EX-L.json");
    const Tensor F = fundamental_tensor(inst, levi_civita(inst));
    const LeeForms lee = lee_forms(inst, F);
    CHECK(lee.theta.is_zero());
    CHECK(lee.theta_star.is_zero());
    CHECK(lee.omega.is_zero());
    CHECK(check_lee_relations(inst, lee).all_passed());
}

TEST_CASE("trace forms detect the conformal-type fixture") {
    const auto inst = load_fixture("EX-F5.json");
    const Tensor F = fundamental_tensor(inst, levi_civita(inst));
    const LeeForms lee = lee_forms(inst, F);
    CHECK(lee.theta.is_zero());
    CHECK(lee.omega.is_zero());
    CHECK(eval_form(lee.theta_star, {inst.xi()}) ==
          Scalar(4) * Scalar::variable(inst.params(), "a"));
    CHECK(check_lee_relations(inst, lee).all_passed());
}

TEST_CASE("slot composition threads an endomorphism through one argument") {
    const auto inst = load_fixture("EX-L.json");
    const Tensor F = fundamental_tensor(inst, levi_civita(inst));
    const Tensor composed = compose_slot(F, 1, inst.phi());
    for (int i = 0; i < inst.dim(); ++i)
        for (int j = 0; j < inst.dim(); ++j)
            for (int k = 0; k < inst.dim(); ++k) {
                Scalar expected;
                for (int m = 0; m < inst.dim(); ++m)
                    expected += inst.phi().at(m, j) * F.at(i, m, k);
                CHECK(composed.at(i, j, k) == expected);
            }
}
