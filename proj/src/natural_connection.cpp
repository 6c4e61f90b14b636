#include "piconn/natural_connection.hpp"

#include <stdexcept>

#include "piconn/checks.hpp"
#include "piconn/classifier.hpp"

namespace piconn {

namespace {

const Rational kHalf(1, 2);
const Rational kQuarter(1, 4);
const Rational kEighth(1, 8);

Tensor lowered_potential(const PiManifoldInstance& inst, const Tensor& d_coeffs,
                         const Tensor& gamma) {
    return (d_coeffs - gamma).lower(2, inst.g());
}

// Projector matrix of the vertical part: (ξ⊗η)x = η(x)ξ.
Mat vertical_projector(const PiManifoldInstance& inst) {
    const int dim = inst.dim();
    Mat pv = Mat::zero(dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            pv.at(a, b) = inst.xi()[static_cast<size_t>(a)] * inst.eta()[static_cast<size_t>(b)];
    return pv;
}

Tensor compose_all(const Tensor& t, const Mat& a, const Mat& b, const Mat& c) {
    return compose_slot(compose_slot(compose_slot(t, 0, a), 1, b), 2, c);
}

}  // namespace

NaturalConnection first_connection(const PiManifoldInstance& inst,
                                   const ConnectionCoefficients& conn) {
    const int dim = inst.dim();
    const Tensor nabla_phi = nabla_tensor(conn, phi_as_tensor(inst));
    const Tensor nabla_eta = nabla_tensor(conn, eta_as_tensor(inst));
    const Tensor nabla_xi = nabla_tensor(conn, xi_as_tensor(inst));

    Tensor coeffs(dim, {Slot::Lower, Slot::Lower, Slot::Upper});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                Scalar correction;
                for (int m = 0; m < dim; ++m) {
                    if (inst.phi().at(m, j).is_zero()) continue;
                    correction += inst.phi().at(m, j) * nabla_phi.at(i, m, k);
                }
                correction -= nabla_eta.at(i, j) * inst.xi()[static_cast<size_t>(k)];
                coeffs.at(i, j, k) = conn.gamma.at(i, j, k) - correction.scaled(kHalf) -
                                     inst.eta()[static_cast<size_t>(j)] * nabla_xi.at(i, k);
            }

    NaturalConnection d1;
    d1.kind = ConnectionKind::First;
    d1.coefficients = ConnectionCoefficients{coeffs};
    d1.potential = lowered_potential(inst, coeffs, conn.gamma);
    return d1;
}

NaturalConnection second_connection(const PiManifoldInstance& inst,
                                    const ConnectionCoefficients& conn,
                                    const NijenhuisPair& pair) {
    const int dim = inst.dim();
    const NaturalConnection d1 = first_connection(inst, conn);

    const Mat& p = inst.phi();
    const Mat& q = inst.phi_squared();
    const Tensor n_all_q = compose_all(pair.N_cov, q, q, q);  // N(φ²a, φ²b, φ²c)
    const Tensor n_pp_xi = partial_apply(
        compose_slot(compose_slot(pair.N_cov, 0, p), 1, p), 2, inst.xi());  // N(φa, φb, ξ)

    Tensor q2(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                Scalar brace = n_all_q.at(k, j, i);
                const Scalar& e_i = inst.eta()[static_cast<size_t>(i)];
                if (!e_i.is_zero()) brace += (e_i * n_pp_xi.at(k, j)).scaled(Rational(2));
                q2.at(i, j, k) = d1.potential.at(i, j, k) - brace.scaled(kEighth);
            }

    NaturalConnection d2;
    d2.kind = ConnectionKind::Second;
    d2.potential = q2;
    d2.coefficients = ConnectionCoefficients{conn.gamma + q2.raise(2, inst.g_inv())};
    return d2;
}

TorsionData torsion(const NaturalConnection& connection, const PiManifoldInstance& inst) {
    const int dim = inst.dim();
    const Tensor& d = connection.coefficients.gamma;

    TorsionData data;
    data.T = Tensor(dim, {Slot::Lower, Slot::Lower, Slot::Upper});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                data.T.at(i, j, k) =
                    d.at(i, j, k) - d.at(j, i, k) - inst.algebra().c.at(i, j, k);
    data.T_cov = data.T.lower(2, inst.g());
    data.t = trace_with_metric(data.T_cov, inst.g_inv(), 1, 2);
    data.t_star = trace_with_metric(compose_slot(data.T_cov, 2, inst.phi()), inst.g_inv(), 1, 2);
    data.t_hat = partial_apply(partial_apply(data.T_cov, 1, inst.xi()), 1, inst.xi());
    return data;
}

Tensor torsion_via_F(const PiManifoldInstance& inst, const Tensor& F, ConnectionKind which) {
    const int dim = inst.dim();
    const auto& eta = inst.eta();
    const Mat& p = inst.phi();
    const Mat& q = inst.phi_squared();

    const Tensor a = compose_slot(F, 1, p);              // F(x, φy, z)
    const Tensor b = partial_apply(a, 2, inst.xi());     // F(x, φy, ξ)

    Tensor out(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                Scalar sum = (a.at(i, j, k) - a.at(j, i, k)).scaled(-kHalf);
                const Scalar& e_k = eta[static_cast<size_t>(k)];
                if (!e_k.is_zero()) sum -= (e_k * (b.at(i, j) - b.at(j, i))).scaled(kHalf);
                sum += eta[static_cast<size_t>(j)] * b.at(i, k) -
                       eta[static_cast<size_t>(i)] * b.at(j, k);
                out.at(i, j, k) = sum;
            }
    if (which == ConnectionKind::First) return out;

    const Tensor c1 = compose_all(F, q, q, p);  // F(φ²a, φ²b, φc)
    const Tensor c2 = compose_all(F, p, q, q);  // F(φa, φ²b, φ²c)
    const Tensor d1t =
        partial_apply(compose_slot(compose_slot(F, 0, q), 1, p), 2, inst.xi());  // F(φ²a, φb, ξ)
    const Tensor d2t =
        partial_apply(compose_slot(compose_slot(F, 0, p), 1, q), 2, inst.xi());  // F(φa, φ²b, ξ)

    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                Scalar extra = (c1.at(k, i, j).scaled(Rational(2)) + c2.at(i, k, j) -
                                c2.at(j, k, i) - c1.at(i, k, j) + c1.at(j, k, i))
                                   .scaled(-kEighth);
                const Scalar& e_i = eta[static_cast<size_t>(i)];
                if (!e_i.is_zero())
                    extra -= (e_i * (d1t.at(k, j) - d1t.at(j, k) + d2t.at(k, j) -
                                     d2t.at(j, k)))
                                 .scaled(kQuarter);
                const Scalar& e_j = eta[static_cast<size_t>(j)];
                if (!e_j.is_zero())
                    extra += (e_j * (d1t.at(k, i) - d1t.at(i, k) + d2t.at(k, i) -
                                     d2t.at(i, k)))
                                 .scaled(kQuarter);
                out.at(i, j, k) += extra;
            }
    return out;
}

Tensor torsion_via_N(const PiManifoldInstance& inst, const NijenhuisPair& pair,
                     ConnectionKind which) {
    const int dim = inst.dim();
    const auto& eta = inst.eta();
    const Mat& p = inst.phi();
    const Mat& q = inst.phi_squared();
    const Tensor& n = pair.N_cov;
    const Tensor& h = pair.N_hat_cov;

    const Tensor n_pp = compose_slot(compose_slot(n, 0, p), 1, p);      // N(φa, φb, c)
    const Tensor n_p1p3 = compose_slot(compose_slot(n, 0, p), 2, p);    // N(φa, b, φc)
    const Tensor h_p1p3 = compose_slot(compose_slot(h, 0, p), 2, p);    // N̂(φa, b, φc)
    const Tensor n_xi_pp =
        partial_apply(compose_slot(compose_slot(n, 1, p), 2, p), 0, inst.xi());  // N(ξ, φb, φc)
    const Tensor n_pp_xi = partial_apply(n_pp, 2, inst.xi());                    // N(φa, φb, ξ)
    const Tensor h_pp_xi = partial_apply(compose_slot(compose_slot(h, 0, p), 1, p), 2,
                                         inst.xi());                             // N̂(φa, φb, ξ)
    const Tensor h_xixi_q = partial_apply(
        partial_apply(compose_slot(h, 2, q), 0, inst.xi()), 0, inst.xi());  // N̂(ξ, ξ, φ²c)
    const Tensor n_mid_xi = partial_apply(n_p1p3, 1, inst.xi());            // N(φa, ξ, φc)
    const Tensor h_mid_xi = partial_apply(h_p1p3, 1, inst.xi());            // N̂(φa, ξ, φc)

    Tensor out(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                Scalar sum = (n_pp.at(i, j, k).scaled(Rational(2)) + n_p1p3.at(i, k, j) -
                              n_p1p3.at(j, k, i) + h_p1p3.at(i, k, j) - h_p1p3.at(j, k, i))
                                 .scaled(-kEighth);
                const Scalar& e_i = eta[static_cast<size_t>(i)];
                const Scalar& e_j = eta[static_cast<size_t>(j)];
                const Scalar& e_k = eta[static_cast<size_t>(k)];
                if (!e_i.is_zero()) {
                    Scalar brace = n_xi_pp.at(j, k).scaled(Rational(2)) - n_pp_xi.at(j, k) -
                                   h_pp_xi.at(j, k);
                    if (!e_k.is_zero())
                        brace += (e_k * h_xixi_q.at(std::vector<int>{j})).scaled(Rational(2));
                    sum += (e_i * brace).scaled(kQuarter);
                }
                if (!e_j.is_zero()) {
                    Scalar brace = n_xi_pp.at(i, k).scaled(Rational(2)) - n_pp_xi.at(i, k) -
                                   h_pp_xi.at(i, k);
                    if (!e_k.is_zero())
                        brace += (e_k * h_xixi_q.at(std::vector<int>{i})).scaled(Rational(2));
                    sum -= (e_j * brace).scaled(kQuarter);
                }
                if (!e_k.is_zero()) {
                    Scalar brace = n_pp_xi.at(i, j).scaled(Rational(2)) + n_mid_xi.at(i, j) -
                                   n_mid_xi.at(j, i) + h_mid_xi.at(i, j) - h_mid_xi.at(j, i);
                    sum -= (e_k * brace).scaled(kEighth);
                }
                out.at(i, j, k) = sum;
            }
    if (which == ConnectionKind::First) return out;

    // T²(x,y,z) = T¹(x,y,z) − ⅛{N(φ²z,φ²y,φ²x) − N(φ²z,φ²x,φ²y)
    //                          + 2η(x)N(φz,φy,ξ) − 2η(y)N(φz,φx,ξ)}.
    const Tensor n_all_q = compose_all(n, q, q, q);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                Scalar brace = n_all_q.at(k, j, i) - n_all_q.at(k, i, j);
                const Scalar& e_i = eta[static_cast<size_t>(i)];
                if (!e_i.is_zero()) brace += (e_i * n_pp_xi.at(k, j)).scaled(Rational(2));
                const Scalar& e_j = eta[static_cast<size_t>(j)];
                if (!e_j.is_zero()) brace -= (e_j * n_pp_xi.at(k, i)).scaled(Rational(2));
                out.at(i, j, k) -= brace.scaled(kEighth);
            }
    return out;
}

Tensor d_eta(const PiManifoldInstance& inst, const ConnectionCoefficients& conn) {
    const int dim = inst.dim();
    const Tensor nabla_eta = nabla_tensor(conn, eta_as_tensor(inst));
    Tensor out(dim, {Slot::Lower, Slot::Lower});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) out.at(i, j) = nabla_eta.at(i, j) - nabla_eta.at(j, i);
    return out;
}

CheckResult check_d_eta_bracket(const PiManifoldInstance& inst, const Tensor& dEta) {
    const int dim = inst.dim();
    return check_identity("d_eta_vs_bracket", dim, 2, [&](const std::vector<int>& idx) {
        Scalar bracket_eta;
        for (int m = 0; m < dim; ++m)
            bracket_eta += inst.algebra().c.at(idx[0], idx[1], m) *
                           inst.eta()[static_cast<size_t>(m)];
        return dEta.at(idx[0], idx[1]) + bracket_eta;
    });
}

Tensor compact_torsion_forms(const PiManifoldInstance& inst, CompactClass which_class,
                             ConnectionKind which_conn) {
    const int dim = inst.dim();
    const auto& eta = inst.eta();
    const ConnectionCoefficients conn = levi_civita(inst);
    const NijenhuisPair pair = nijenhuis_pair(inst, conn);

    if (!pair.N_hat_cov.is_zero())
        throw std::domain_error(
            "compact torsion formulas need the associated Nijenhuis tensor to vanish");
    if (which_class != CompactClass::U0hat) {
        const Tensor F = fundamental_tensor(inst, conn);
        const LeeForms lee = lee_forms(inst, F);
        const ClassificationReport cls = classify_by_F(inst, F, lee);
        const int index = (which_class == CompactClass::F3) ? 3 : 7;
        if (!cls.basic[static_cast<size_t>(index - 1)].holds)
            throw std::domain_error("instance is not in the requested basic class F" +
                                    std::to_string(index));
    }

    const Mat& q = inst.phi_squared();
    const Tensor n_h = compose_all(pair.N_cov, q, q, q);  // Nʰ(x,y,z) = N(φ²x, φ²y, φ²z)
    const Tensor dEta = d_eta(inst, conn);

    Tensor horizontal(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    Tensor vertical(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                if (which_conn == ConnectionKind::First) {
                    // −⅛{ΣNʰ + Nʰ} with Σ the cyclic sum over the arguments.
                    horizontal.at(i, j, k) = (n_h.at(i, j, k) + n_h.at(j, k, i) +
                                              n_h.at(k, i, j) + n_h.at(i, j, k))
                                                 .scaled(-kEighth);
                    // ½{(η∧dη) + dη⊗η}.
                    vertical.at(i, j, k) =
                        (eta[static_cast<size_t>(i)] * dEta.at(j, k) -
                         eta[static_cast<size_t>(j)] * dEta.at(i, k) +
                         eta[static_cast<size_t>(k)] * dEta.at(i, j) +
                         dEta.at(i, j) * eta[static_cast<size_t>(k)])
                            .scaled(kHalf);
                } else {
                    horizontal.at(i, j, k) = n_h.at(i, j, k).scaled(-kQuarter);
                    vertical.at(i, j, k) = dEta.at(i, j) * eta[static_cast<size_t>(k)];
                }
            }

    switch (which_class) {
        case CompactClass::F3:
            return horizontal;
        case CompactClass::F7:
            return vertical;
        case CompactClass::U0hat:
            return horizontal + vertical;
    }
    throw std::logic_error("unreachable compact class");
}

Tensor u1_torsion_formula(const PiManifoldInstance& inst, const NijenhuisPair& pair) {
    const int dim = inst.dim();
    const Mat& q = inst.phi_squared();
    const Mat pv = vertical_projector(inst);
    const Tensor& n = pair.N_cov;
    const Tensor& h = pair.N_hat_cov;

    const Tensor h_hhh = compose_all(h, q, q, q);
    const Tensor n_vhh = compose_all(n, pv, q, q);
    const Tensor n_hvh = compose_all(n, q, pv, q);
    const Tensor h_vhh = compose_all(h, pv, q, q);
    const Tensor h_hhv = compose_all(h, q, q, pv);
    const Tensor h_vvh = compose_all(h, pv, pv, q);

    Tensor out(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                Scalar sum = (h_hhh.at(j, k, i) - h_hhh.at(k, i, j)).scaled(-kEighth);
                sum -= (n_vhh.at(k, i, j) + n_hvh.at(j, k, i) - h_vhh.at(k, i, j) +
                        h_vhh.at(k, j, i) - h_hhv.at(k, i, j) + h_hhv.at(j, k, i))
                           .scaled(kQuarter);
                sum -= (n_vhh.at(i, j, k) + n_hvh.at(i, j, k) - h_vvh.at(k, i, j) +
                        h_vvh.at(j, k, i))
                           .scaled(kHalf);
                out.at(i, j, k) = sum;
            }
    return out;
}

ValidationReport torsion_form_relations(const PiManifoldInstance& inst, const LeeForms& lee,
                                        const TorsionData& first, const TorsionData& second) {
    const int dim = inst.dim();
    auto on_matrix = [dim](const Tensor& form, const Mat& m, int j) {
        Scalar sum;
        for (int r = 0; r < dim; ++r) {
            if (m.at(r, j).is_zero()) continue;
            sum += m.at(r, j) * form.at(std::vector<int>{r});
        }
        return sum;
    };
    const Scalar theta_xi = eval_form(lee.theta, {inst.xi()});
    const Scalar theta_star_xi = eval_form(lee.theta_star, {inst.xi()});

    ValidationReport report;
    report.add(check_identity("t1_from_lee", dim, 1, [&](const std::vector<int>& i) {
        return first.t.at(std::vector<int>{i[0]}) -
               on_matrix(lee.theta, inst.phi(), i[0]).scaled(kHalf) +
               theta_star_xi * inst.eta()[static_cast<size_t>(i[0])];
    }));
    report.add(check_identity("t1_star_from_lee", dim, 1, [&](const std::vector<int>& i) {
        return first.t_star.at(std::vector<int>{i[0]}) -
               on_matrix(lee.theta_star, inst.phi(), i[0]).scaled(kHalf) +
               theta_xi * inst.eta()[static_cast<size_t>(i[0])];
    }));
    report.add(check_identity("t1_hat_from_lee", dim, 1, [&](const std::vector<int>& i) {
        return first.t_hat.at(std::vector<int>{i[0]}) - on_matrix(lee.omega, inst.phi(), i[0]);
    }));
    report.add(check_tensor_equal("t2_equals_t1", second.t, first.t));
    report.add(check_tensor_equal("t2_star_equals_t1_star", second.t_star, first.t_star));
    report.add(check_tensor_equal("t2_hat_equals_t1_hat", second.t_hat, first.t_hat));
    report.add(check_identity("t1_star_phi_vs_t1_phi2", dim, 1, [&](const std::vector<int>& i) {
        return on_matrix(first.t_star, inst.phi(), i[0]) -
               on_matrix(first.t, inst.phi_squared(), i[0]);
    }));
    report.add(check_identity("t1_phi_doubling", dim, 1, [&](const std::vector<int>& i) {
        return on_matrix(first.t, inst.phi(), i[0]).scaled(Rational(2)) -
               on_matrix(lee.theta, inst.phi_squared(), i[0]);
    }));
    report.add(check_identity("t1_phi2_doubling", dim, 1, [&](const std::vector<int>& i) {
        return on_matrix(first.t, inst.phi_squared(), i[0]).scaled(Rational(2)) -
               on_matrix(lee.theta, inst.phi(), i[0]);
    }));
    report.add(check_identity("t1_star_phi_doubling", dim, 1, [&](const std::vector<int>& i) {
        return on_matrix(first.t_star, inst.phi(), i[0]).scaled(Rational(2)) -
               on_matrix(lee.theta_star, inst.phi_squared(), i[0]);
    }));
    report.add(check_identity("t1_star_phi2_doubling", dim, 1, [&](const std::vector<int>& i) {
        return on_matrix(first.t_star, inst.phi_squared(), i[0]).scaled(Rational(2)) -
               on_matrix(lee.theta_star, inst.phi(), i[0]);
    }));
    report.add(check_identity("t2_star_phi_vs_t2_phi2", dim, 1, [&](const std::vector<int>& i) {
        return on_matrix(second.t_star, inst.phi(), i[0]) -
               on_matrix(second.t, inst.phi_squared(), i[0]);
    }));
    return report;
}

ValidationReport naturality_report(const PiManifoldInstance& inst,
                                   const NaturalConnection& connection) {
    const std::string prefix =
        (connection.kind == ConnectionKind::First) ? "D1" : "D2";
    const ConnectionCoefficients& d = connection.coefficients;

    ValidationReport report;
    report.add(check_tensor_zero(prefix + "_parallel_phi", nabla_tensor(d, phi_as_tensor(inst))));
    report.add(check_tensor_zero(prefix + "_parallel_xi", nabla_tensor(d, xi_as_tensor(inst))));
    report.add(check_tensor_zero(prefix + "_parallel_eta", nabla_tensor(d, eta_as_tensor(inst))));
    report.add(
        check_tensor_zero(prefix + "_parallel_metric", nabla_tensor(d, matrix_as_tensor(inst.g()))));
    report.add(check_tensor_zero(prefix + "_parallel_associated_metric",
                                 nabla_tensor(d, matrix_as_tensor(associated_metric(inst)))));
    return report;
}

ValidationReport potential_identities(const PiManifoldInstance& inst,
                                      const NaturalConnection& connection, const Tensor& F) {
    const std::string prefix =
        (connection.kind == ConnectionKind::First) ? "Q1" : "Q2";
    const Tensor& q = connection.potential;
    const Tensor q_p3 = compose_slot(q, 2, inst.phi());
    const Tensor q_p2 = compose_slot(q, 1, inst.phi());

    ValidationReport report;
    report.add(check_identity(prefix + "_phi_commutation", inst.dim(), 3,
                              [&](const std::vector<int>& i) {
                                  return q_p3.at(i[0], i[1], i[2]) - q_p2.at(i[0], i[1], i[2]) -
                                         F.at(i[0], i[1], i[2]);
                              }));
    report.add(check_identity(prefix + "_antisymmetry", inst.dim(), 3,
                              [&](const std::vector<int>& i) {
                                  return q.at(i[0], i[1], i[2]) + q.at(i[0], i[2], i[1]);
                              }));
    return report;
}

CheckResult t2_defining_property(const PiManifoldInstance& inst, const Tensor& T_cov) {
    const int dim = inst.dim();
    const auto& eta = inst.eta();
    const Mat& p = inst.phi();
    const Tensor& s = T_cov;

    const Tensor a1 = compose_slot(compose_slot(s, 0, p), 2, p);  // T(φa, b, φc)
    const Tensor a3 = compose_slot(compose_slot(s, 1, p), 2, p);  // T(a, φb, φc)
    const Tensor s_x0 = partial_apply(s, 0, inst.xi());           // T(ξ, b, c)
    const Tensor s_xi2 = partial_apply(s, 1, inst.xi());          // T(a, ξ, c)
    const Tensor s_xi3 = partial_apply(s, 2, inst.xi());          // T(a, b, ξ)
    const Tensor s_x0_xi = partial_apply(s_x0, 1, inst.xi());     // T(ξ, b, ξ)
    const Tensor s_xixi = partial_apply(s_xi2, 1, inst.xi());     // T(a, ξ, ξ)
    const Tensor b1 = partial_apply(a1, 1, inst.xi());            // T(φa, ξ, φc)
    const Tensor b3 = partial_apply(a3, 0, inst.xi());            // T(ξ, φb, φc)

    return check_identity("t2_defining_property", dim, 3, [&](const std::vector<int>& idx) {
        const int i = idx[0], j = idx[1], k = idx[2];
        Scalar sum = s.at(i, j, k) + s.at(j, k, i) + a1.at(i, j, k) + a3.at(j, k, i);
        const Scalar& e_i = eta[static_cast<size_t>(i)];
        const Scalar& e_j = eta[static_cast<size_t>(j)];
        const Scalar& e_k = eta[static_cast<size_t>(k)];
        if (!e_i.is_zero())
            sum -= e_i * (s_x0.at(j, k) + s_xi3.at(j, k) -
                          e_j * s_x0_xi.at(std::vector<int>{k}));
        if (!e_j.is_zero())
            sum -= e_j * (s_xi2.at(i, k) + s_x0.at(k, i) + b1.at(i, k) + b3.at(k, i));
        if (!e_k.is_zero())
            sum -= e_k * (s_xi3.at(i, j) + s_xi2.at(j, i) -
                          e_j * s_xixi.at(std::vector<int>{i}));
        return sum;
    });
}

CoincidenceResult coincidence_test(const PiManifoldInstance& inst) {
    const ConnectionCoefficients conn = levi_civita(inst);
    const NijenhuisPair pair = nijenhuis_pair(inst, conn);
    const Tensor n_pp =
        compose_slot(compose_slot(pair.N_cov, 0, inst.phi()), 1, inst.phi());

    CoincidenceResult result;
    result.n_phi_phi_vanishes = true;
    for (int i = 0; i < inst.dim() && result.n_phi_phi_vanishes; ++i)
        for (int j = 0; j < inst.dim() && result.n_phi_phi_vanishes; ++j)
            for (int k = 0; k < inst.dim(); ++k)
                if (!n_pp.at(i, j, k).is_zero()) {
                    result.n_phi_phi_vanishes = false;
                    result.witness_pair = std::make_pair(i, j);
                    break;
                }

    const NaturalConnection d1 = first_connection(inst, conn);
    const NaturalConnection d2 = second_connection(inst, conn, pair);
    result.coefficients_equal = (d1.coefficients.gamma == d2.coefficients.gamma);
    return result;
}

}  // namespace piconn
