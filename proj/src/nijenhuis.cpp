#include "piconn/nijenhuis.hpp"

#include <stdexcept>

#include "piconn/checks.hpp"

namespace piconn {

namespace {

std::string index_text(const std::vector<int>& index) {
    std::string out = "(";
    for (size_t p = 0; p < index.size(); ++p) {
        if (p) out += ",";
        out += std::to_string(index[p]);
    }
    out += ")";
    return out;
}

// First nonzero component of t, or nullptr when t vanishes.
bool first_nonzero(const Tensor& t, std::vector<int>* index, Scalar* value) {
    std::vector<int> idx(static_cast<size_t>(t.rank()), 0);
    do {
        const Scalar& v = t.at(idx);
        if (!v.is_zero()) {
            *index = idx;
            *value = v;
            return true;
        }
    } while (next_index(idx, t.dim()));
    return false;
}

}  // namespace

NijenhuisPair nijenhuis_pair(const PiManifoldInstance& inst,
                             const ConnectionCoefficients& conn) {
    const int dim = inst.dim();
    const Tensor nabla_phi = nabla_tensor(conn, phi_as_tensor(inst));  // (d, j, k-upper)
    const Tensor nabla_eta = nabla_tensor(conn, eta_as_tensor(inst));  // (d, j)

    // block(i,j) = (D_{φe_i}φ)e_j − φ(D_{e_i}φ)e_j − (D_{e_i}η)(e_j)ξ
    Tensor block(dim, {Slot::Lower, Slot::Lower, Slot::Upper});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                Scalar sum;
                for (int a = 0; a < dim; ++a) {
                    if (inst.phi().at(a, i).is_zero()) continue;
                    sum += inst.phi().at(a, i) * nabla_phi.at(a, j, k);
                }
                for (int m = 0; m < dim; ++m) {
                    if (inst.phi().at(k, m).is_zero()) continue;
                    sum -= inst.phi().at(k, m) * nabla_phi.at(i, j, m);
                }
                sum -= nabla_eta.at(i, j) * inst.xi()[static_cast<size_t>(k)];
                block.at(i, j, k) = sum;
            }

    NijenhuisPair pair;
    pair.N = Tensor(dim, {Slot::Lower, Slot::Lower, Slot::Upper});
    pair.N_hat = Tensor(dim, {Slot::Lower, Slot::Lower, Slot::Upper});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                pair.N.at(i, j, k) = block.at(i, j, k) - block.at(j, i, k);
                pair.N_hat.at(i, j, k) = block.at(i, j, k) + block.at(j, i, k);
            }
    pair.N_cov = pair.N.lower(2, inst.g());
    pair.N_hat_cov = pair.N_hat.lower(2, inst.g());
    return pair;
}

NijenhuisPair NN_from_F(const Tensor& F, const PiManifoldInstance& inst) {
    const int dim = inst.dim();
    const auto& eta = inst.eta();
    const Tensor F_p1 = compose_slot(F, 0, inst.phi());  // F(φx, y, z)
    const Tensor F_p3 = compose_slot(F, 2, inst.phi());  // F(x, y, φz)
    const Tensor F_p2_xi3 =
        partial_apply(compose_slot(F, 1, inst.phi()), 2, inst.xi());  // F(x, φy, ξ)

    NijenhuisPair pair;
    pair.N_cov = Tensor(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    pair.N_hat_cov = Tensor(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const Scalar b_ij = F_p2_xi3.at(i, j);
            const Scalar b_ji = F_p2_xi3.at(j, i);
            for (int k = 0; k < dim; ++k) {
                const Scalar& e_k = eta[static_cast<size_t>(k)];
                pair.N_cov.at(i, j, k) = F_p1.at(i, j, k) - F_p1.at(j, i, k) -
                                         F_p3.at(i, j, k) + F_p3.at(j, i, k) +
                                         e_k * (b_ij - b_ji);
                pair.N_hat_cov.at(i, j, k) = F_p1.at(i, j, k) + F_p1.at(j, i, k) -
                                             F_p3.at(i, j, k) - F_p3.at(j, i, k) +
                                             e_k * (b_ij + b_ji);
            }
        }
    pair.N = pair.N_cov.raise(2, inst.g_inv());
    pair.N_hat = pair.N_hat_cov.raise(2, inst.g_inv());
    return pair;
}

ValidationReport check_NN_properties(const NijenhuisPair& pair, const PiManifoldInstance& inst) {
    const int dim = inst.dim();
    const Mat& p = inst.phi();
    const Mat& q = inst.phi_squared();

    ValidationReport report;
    report.add(check_identity("N_antisymmetry", dim, 3, [&](const std::vector<int>& i) {
        return pair.N_cov.at(i[0], i[1], i[2]) + pair.N_cov.at(i[1], i[0], i[2]);
    }));
    report.add(check_identity("N_hat_symmetry", dim, 3, [&](const std::vector<int>& i) {
        return pair.N_hat_cov.at(i[0], i[1], i[2]) - pair.N_hat_cov.at(i[1], i[0], i[2]);
    }));

    // The six slot-exchange identities, shared by the pair (the prefix names
    // the tensor under test).
    auto add_exchange_checks = [&](const std::string& prefix, const Tensor& t) {
        auto composed = [&](const Mat& a, const Mat& b, const Mat& c) {
            return compose_slot(compose_slot(compose_slot(t, 0, a), 1, b), 2, c);
        };
        const Mat id = Mat::identity(dim);
        const Tensor t_qpp = composed(q, p, p);
        const Tensor t_qqq = composed(q, q, q);
        const Tensor t_ppq = composed(p, p, q);
        const Tensor t_iqq = composed(id, q, q);
        const Tensor t_ipp = composed(id, p, p);
        const Tensor t_qqi = composed(q, q, id);
        const Tensor t_ppi = composed(p, p, id);
        const Tensor xi_pp = partial_apply(t_ipp, 0, inst.xi());
        const Tensor xi_qq = partial_apply(t_iqq, 0, inst.xi());
        const Tensor pp_xi = partial_apply(t_ppi, 2, inst.xi());
        const Tensor qq_xi = partial_apply(t_qqi, 2, inst.xi());

        report.add(check_tensor_zero(prefix + "_phi2_phi_phi_vs_all_phi2", t_qpp + t_qqq));
        report.add(check_tensor_zero(prefix + "_all_phi2_vs_phi_phi_phi2", t_qqq - t_ppq));
        report.add(check_tensor_zero(prefix + "_last_two_phi2_vs_phi", t_iqq + t_ipp));
        report.add(check_tensor_zero(prefix + "_first_two_phi2_vs_phi", t_qqi - t_ppi));
        report.add(check_tensor_zero(prefix + "_xi_phi_phi_vs_phi2", xi_pp + xi_qq));
        report.add(check_tensor_zero(prefix + "_phi_phi_xi_vs_phi2", pp_xi - qq_xi));
    };
    add_exchange_checks("N", pair.N_cov);
    add_exchange_checks("N_hat", pair.N_hat_cov);
    return report;
}

Tensor F_from_NN(const NijenhuisPair& pair, const PiManifoldInstance& inst) {
    const int dim = inst.dim();
    const auto& eta = inst.eta();
    const Tensor n_p1 = compose_slot(pair.N_cov, 0, inst.phi());      // N(φx, y, z)
    const Tensor h_p1 = compose_slot(pair.N_hat_cov, 0, inst.phi());  // N̂(φx, y, z)
    const Tensor n_xi_p3 =
        partial_apply(compose_slot(pair.N_cov, 2, inst.phi()), 0, inst.xi());  // N(ξ, y, φz)
    const Tensor h_xi_p3 =
        partial_apply(compose_slot(pair.N_hat_cov, 2, inst.phi()), 0, inst.xi());
    const Tensor h_xixi_p3 = partial_apply(
        partial_apply(compose_slot(pair.N_hat_cov, 2, inst.phi()), 0, inst.xi()), 0,
        inst.xi());  // j ↦ N̂(ξ, ξ, φe_j)

    const Rational quarter(1, 4);
    const Rational half(1, 2);
    Tensor F(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                Scalar sum = (n_p1.at(i, j, k) + n_p1.at(i, k, j) + h_p1.at(i, j, k) +
                              h_p1.at(i, k, j))
                                 .scaled(quarter);
                const Scalar& e_i = eta[static_cast<size_t>(i)];
                if (!e_i.is_zero()) {
                    Scalar brace = n_xi_p3.at(j, k) + h_xi_p3.at(j, k) +
                                   eta[static_cast<size_t>(k)] *
                                       h_xixi_p3.at(std::vector<int>{j});
                    sum -= (e_i * brace).scaled(half);
                }
                F.at(i, j, k) = sum;
            }
    return F;
}

Tensor F_restricted_forms(const NijenhuisPair& pair, const PiManifoldInstance& inst,
                          RestrictedDomain which) {
    const int dim = inst.dim();
    const auto& eta = inst.eta();
    const Tensor& must_vanish = (which == RestrictedDomain::U0) ? pair.N_cov : pair.N_hat_cov;
    {
        std::vector<int> index;
        Scalar value;
        if (first_nonzero(must_vanish, &index, &value)) {
            const std::string tensor_name = (which == RestrictedDomain::U0) ? "N" : "N_hat";
            throw std::domain_error("instance is not in the requested union: " + tensor_name +
                                    index_text(index) + " = " + value.to_string());
        }
    }

    const Rational quarter(1, 4);
    const Rational half(1, 2);
    Tensor F(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    if (which == RestrictedDomain::U0) {
        const Tensor h_p1 = compose_slot(pair.N_hat_cov, 0, inst.phi());
        const Tensor h_xi_p3 =
            partial_apply(compose_slot(pair.N_hat_cov, 2, inst.phi()), 0, inst.xi());
        const Tensor h_xixi_p3 = partial_apply(
            partial_apply(compose_slot(pair.N_hat_cov, 2, inst.phi()), 0, inst.xi()), 0,
            inst.xi());
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k) {
                    Scalar sum = (h_p1.at(i, j, k) + h_p1.at(i, k, j)).scaled(quarter);
                    const Scalar& e_i = eta[static_cast<size_t>(i)];
                    if (!e_i.is_zero()) {
                        Scalar brace = h_xi_p3.at(j, k) + eta[static_cast<size_t>(k)] *
                                                              h_xixi_p3.at(std::vector<int>{j});
                        sum -= (e_i * brace).scaled(half);
                    }
                    F.at(i, j, k) = sum;
                }
    } else {
        const Tensor n_p1 = compose_slot(pair.N_cov, 0, inst.phi());
        const Tensor n_xi_p3 =
            partial_apply(compose_slot(pair.N_cov, 2, inst.phi()), 0, inst.xi());
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k) {
                    Scalar sum = (n_p1.at(i, j, k) + n_p1.at(i, k, j)).scaled(quarter);
                    const Scalar& e_i = eta[static_cast<size_t>(i)];
                    if (!e_i.is_zero()) sum -= (e_i * n_xi_p3.at(j, k)).scaled(half);
                    F.at(i, j, k) = sum;
                }
    }
    return F;
}

}  // namespace piconn
