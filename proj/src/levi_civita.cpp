#include "piconn/levi_civita.hpp"

#include <stdexcept>

#include "piconn/checks.hpp"

namespace piconn {

Vec ConnectionCoefficients::derivative_basis(int i, int j) const {
    Vec out(static_cast<size_t>(gamma.dim()));
    for (int k = 0; k < gamma.dim(); ++k) out[static_cast<size_t>(k)] = gamma.at(i, j, k);
    return out;
}

Tensor phi_as_tensor(const PiManifoldInstance& inst) {
    const int dim = inst.dim();
    Tensor t(dim, {Slot::Lower, Slot::Upper});
    for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) t.at(j, k) = inst.phi().at(k, j);
    return t;
}

Tensor xi_as_tensor(const PiManifoldInstance& inst) {
    const int dim = inst.dim();
    Tensor t(dim, {Slot::Upper});
    for (int k = 0; k < dim; ++k) t.at(std::vector<int>{k}) = inst.xi()[static_cast<size_t>(k)];
    return t;
}

Tensor eta_as_tensor(const PiManifoldInstance& inst) {
    const int dim = inst.dim();
    Tensor t(dim, {Slot::Lower});
    for (int k = 0; k < dim; ++k) t.at(std::vector<int>{k}) = inst.eta()[static_cast<size_t>(k)];
    return t;
}

Tensor matrix_as_tensor(const Mat& m) {
    Tensor t(m.rows(), {Slot::Lower, Slot::Lower});
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t.at(i, j) = m.at(i, j);
    return t;
}

Tensor compose_slot(const Tensor& t, int slot, const Mat& m) {
    if (slot < 0 || slot >= t.rank()) throw std::invalid_argument("tensor slot out of range");
    if (t.slots()[static_cast<size_t>(slot)] != Slot::Lower)
        throw std::invalid_argument("compose_slot needs a Lower (argument) slot");
    if (m.rows() != t.dim() || m.cols() != t.dim())
        throw std::invalid_argument("matrix shape mismatch");
    Tensor out(t.dim(), t.slots());
    std::vector<int> index(static_cast<size_t>(t.rank()), 0);
    do {
        Scalar sum;
        std::vector<int> src = index;
        const int j = index[static_cast<size_t>(slot)];
        for (int r = 0; r < t.dim(); ++r) {
            if (m.at(r, j).is_zero()) continue;
            src[static_cast<size_t>(slot)] = r;
            const Scalar& value = t.at(src);
            if (value.is_zero()) continue;
            sum += m.at(r, j) * value;
        }
        out.at(index) = sum;
    } while (next_index(index, t.dim()));
    return out;
}

ConnectionCoefficients levi_civita(const PiManifoldInstance& inst) {
    const int dim = inst.dim();
    // k_low(i,j,k) = g(D_{e_i} e_j, e_k) from the reduced Koszul equality.
    const Tensor c_low = inst.algebra().c.lower(2, inst.g());
    Tensor k_low(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    const Rational half(1, 2);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                k_low.at(i, j, k) =
                    (c_low.at(i, j, k) - c_low.at(i, k, j) - c_low.at(j, k, i)).scaled(half);
    return ConnectionCoefficients{k_low.raise(2, inst.g_inv())};
}

Tensor nabla_tensor(const ConnectionCoefficients& conn, const Tensor& t) {
    const int dim = conn.gamma.dim();
    if (t.dim() != dim) throw std::invalid_argument("tensor dimension mismatch");

    std::vector<Slot> out_slots{Slot::Lower};
    out_slots.insert(out_slots.end(), t.slots().begin(), t.slots().end());
    Tensor out(dim, out_slots);

    std::vector<int> index(out_slots.size(), 0);
    do {
        const int d = index[0];
        std::vector<int> base(index.begin() + 1, index.end());
        Scalar sum;
        for (int p = 0; p < t.rank(); ++p) {
            const int a = base[static_cast<size_t>(p)];
            std::vector<int> src = base;
            if (t.slots()[static_cast<size_t>(p)] == Slot::Upper) {
                // value components transform with +Γ^a_{dm}
                for (int m = 0; m < dim; ++m) {
                    const Scalar& coeff = conn.gamma.at(d, m, a);
                    if (coeff.is_zero()) continue;
                    src[static_cast<size_t>(p)] = m;
                    const Scalar& value = t.at(src);
                    if (value.is_zero()) continue;
                    sum += coeff * value;
                }
            } else {
                // argument slots transform with -Γ^m_{da}
                for (int m = 0; m < dim; ++m) {
                    const Scalar& coeff = conn.gamma.at(d, a, m);
                    if (coeff.is_zero()) continue;
                    src[static_cast<size_t>(p)] = m;
                    const Scalar& value = t.at(src);
                    if (value.is_zero()) continue;
                    sum -= coeff * value;
                }
            }
        }
        out.at(index) = sum;
    } while (next_index(index, dim));
    return out;
}

ValidationReport check_connection_basics(const PiManifoldInstance& inst,
                                         const ConnectionCoefficients& conn) {
    ValidationReport report;
    report.add(check_identity(
        "torsion_free_vs_brackets", inst.dim(), 3, [&](const std::vector<int>& idx) {
            return conn.gamma.at(idx[0], idx[1], idx[2]) - conn.gamma.at(idx[1], idx[0], idx[2]) -
                   inst.algebra().c.at(idx[0], idx[1], idx[2]);
        }));
    report.add(check_tensor_zero("metric_parallel",
                                 nabla_tensor(conn, matrix_as_tensor(inst.g()))));
    return report;
}

Tensor fundamental_tensor(const PiManifoldInstance& inst, const ConnectionCoefficients& conn) {
    return nabla_tensor(conn, phi_as_tensor(inst)).lower(2, inst.g());
}

ValidationReport check_F_properties(const PiManifoldInstance& inst, const Tensor& F) {
    const auto& eta = inst.eta();
    const Tensor F_p2 = compose_slot(F, 1, inst.phi());       // F(x, φy, z)
    const Tensor F_p3 = compose_slot(F, 2, inst.phi());       // F(x, y, φz)
    const Tensor F_pp = compose_slot(F_p2, 2, inst.phi());    // F(x, φy, φz)
    const Tensor F_q2 = compose_slot(F, 1, inst.phi_squared());  // F(x, φ²y, z)
    const Tensor F_qq = compose_slot(F_q2, 2, inst.phi_squared());  // F(x, φ²y, φ²z)
    const Tensor F_pq = compose_slot(F_p2, 2, inst.phi_squared());  // F(x, φy, φ²z)
    const Tensor F_qp = compose_slot(F_q2, 2, inst.phi());          // F(x, φ²y, φz)
    const Tensor F_xi2 = partial_apply(F, 1, inst.xi());      // F(x, ξ, z)
    const Tensor F_xi3 = partial_apply(F, 2, inst.xi());      // F(x, y, ξ)
    const Tensor F_p2_xi3 = partial_apply(F_p2, 2, inst.xi());  // F(x, φy, ξ)
    const Tensor F_p3_as2 = compose_slot(F, 2, inst.phi());     // F(x, y, φz) [alias]
    (void)F_p3_as2;

    ValidationReport report;
    report.add(check_identity("F_last_two_symmetry", F.dim(), 3, [&](const std::vector<int>& i) {
        return F.at(i[0], i[1], i[2]) - F.at(i[0], i[2], i[1]);
    }));
    report.add(check_identity("F_phi_phi_reduction", F.dim(), 3, [&](const std::vector<int>& i) {
        return F.at(i[0], i[1], i[2]) + F_pp.at(i[0], i[1], i[2]) -
               eta[static_cast<size_t>(i[1])] * F_xi2.at(i[0], i[2]) -
               eta[static_cast<size_t>(i[2])] * F_xi3.at(i[0], i[1]);
    }));
    report.add(check_identity("F_phi_swap", F.dim(), 3, [&](const std::vector<int>& i) {
        // F(x,y,φz) = -F(x,φy,z) + η(z)F(x,φy,ξ) + η(y)F(x,φz,ξ)
        return F_p3.at(i[0], i[1], i[2]) + F_p2.at(i[0], i[1], i[2]) -
               eta[static_cast<size_t>(i[2])] * F_p2_xi3.at(i[0], i[1]) -
               eta[static_cast<size_t>(i[1])] * F_p2_xi3.at(i[0], i[2]);
    }));
    report.add(check_identity("F_phi_phi_vs_phi2_phi2", F.dim(), 3,
                              [&](const std::vector<int>& i) {
                                  return F_pp.at(i[0], i[1], i[2]) + F_qq.at(i[0], i[1], i[2]);
                              }));
    report.add(check_identity("F_phi_phi2_antisymmetry", F.dim(), 3,
                              [&](const std::vector<int>& i) {
                                  return F_pq.at(i[0], i[1], i[2]) + F_qp.at(i[0], i[1], i[2]);
                              }));
    return report;
}

ValidationReport check_derivative_identities(const PiManifoldInstance& inst,
                                             const ConnectionCoefficients& conn,
                                             const Tensor& F) {
    const int dim = inst.dim();
    const Tensor nabla_eta = nabla_tensor(conn, eta_as_tensor(inst));  // (d, j)
    const Tensor nabla_xi = nabla_tensor(conn, xi_as_tensor(inst));    // (d, k-upper)
    const Tensor F_p2_xi3 =
        partial_apply(compose_slot(F, 1, inst.phi()), 2, inst.xi());   // F(x, φy, ξ)

    ValidationReport report;
    report.add(check_identity("eta_derivative_metric_dual", dim, 2,
                              [&](const std::vector<int>& i) {
                                  Scalar dual;
                                  for (int m = 0; m < dim; ++m) {
                                      if (nabla_xi.at(i[0], m).is_zero()) continue;
                                      dual += nabla_xi.at(i[0], m) * inst.g().at(m, i[1]);
                                  }
                                  return nabla_eta.at(i[0], i[1]) - dual;
                              }));
    report.add(check_identity("eta_of_xi_derivative_zero", dim, 1,
                              [&](const std::vector<int>& i) {
                                  Scalar sum;
                                  for (int m = 0; m < dim; ++m)
                                      sum += inst.eta()[static_cast<size_t>(m)] *
                                             nabla_xi.at(i[0], m);
                                  return sum;
                              }));
    report.add(check_identity("F_xi_slot_vs_eta_derivative", dim, 2,
                              [&](const std::vector<int>& i) {
                                  return F_p2_xi3.at(i[0], i[1]) + nabla_eta.at(i[0], i[1]);
                              }));
    return report;
}

LeeForms lee_forms(const PiManifoldInstance& inst, const Tensor& F) {
    LeeForms lee;
    lee.theta = trace_with_metric(F, inst.g_inv(), 0, 1);
    lee.theta_star = trace_with_metric(compose_slot(F, 1, inst.phi()), inst.g_inv(), 0, 1);
    lee.omega = partial_apply(partial_apply(F, 0, inst.xi()), 0, inst.xi());
    return lee;
}

ValidationReport check_lee_relations(const PiManifoldInstance& inst, const LeeForms& lee) {
    const int dim = inst.dim();
    auto form_on = [dim](const Tensor& form, const Mat& m, int j) {
        Scalar sum;
        for (int r = 0; r < dim; ++r) {
            if (m.at(r, j).is_zero()) continue;
            sum += m.at(r, j) * form.at(std::vector<int>{r});
        }
        return sum;
    };

    ValidationReport report;
    {
        const Scalar omega_xi = eval_form(lee.omega, {inst.xi()});
        report.add(omega_xi.is_zero()
                       ? CheckResult::ok("omega_xi_zero")
                       : CheckResult::fail("omega_xi_zero", {}, omega_xi.to_string()));
    }
    report.add(check_identity("theta_star_phi_relation", dim, 1, [&](const std::vector<int>& i) {
        return form_on(lee.theta_star, inst.phi(), i[0]) +
               form_on(lee.theta, inst.phi_squared(), i[0]);
    }));
    report.add(check_identity("theta_star_phi2_relation", dim, 1, [&](const std::vector<int>& i) {
        return form_on(lee.theta_star, inst.phi_squared(), i[0]) -
               form_on(lee.theta, inst.phi(), i[0]);
    }));
    return report;
}

}  // namespace piconn
