#include "piconn/classifier.hpp"

#include "piconn/checks.hpp"

namespace piconn {

namespace {

const Rational kHalf(1, 2);
const Rational kQuarter(1, 4);

// Clause evaluator collecting the first failure across an ordered clause
// list; every clause is an exhaustive residual scan of the given arity.
class VerdictBuilder {
  public:
    explicit VerdictBuilder(int dim) : dim_(dim) {}

    template <typename Fn>
    void clause(const std::string& name, int arity, Fn&& residual) {
        if (!verdict_.holds) return;
        std::vector<int> index(static_cast<size_t>(arity), 0);
        do {
            const Scalar r = residual(index);
            if (!r.is_zero()) {
                verdict_.holds = false;
                verdict_.witness = ClassWitness{name, index, r.to_string()};
                return;
            }
        } while (next_index(index, dim_));
    }

    Verdict take() { return std::move(verdict_); }

  private:
    int dim_;
    Verdict verdict_;
};

Verdict tensor_zero_verdict(const Tensor& t, const std::string& clause) {
    VerdictBuilder v(t.dim());
    v.clause(clause, t.rank(), [&](const std::vector<int>& i) { return t.at(i); });
    return v.take();
}

}  // namespace

ClassificationReport classify_by_F(const PiManifoldInstance& inst, const Tensor& F,
                                   const LeeForms& lee) {
    const int dim = inst.dim();
    const auto& eta = inst.eta();
    const Rational r(1, 2 * inst.n());
    const Mat g_phi = inst.g() * inst.phi();                            // g(x, φy)
    const Mat g_phi_phi = inst.phi().transposed() * g_phi;              // g(φx, φy)
    const Tensor f_xi1 = partial_apply(F, 0, inst.xi());                // F(ξ, y, z)
    const Tensor f_xi2 = partial_apply(F, 1, inst.xi());                // F(x, ξ, z)
    const Tensor f_xi3 = partial_apply(F, 2, inst.xi());                // F(x, y, ξ)
    const Tensor f_p3 = compose_slot(F, 2, inst.phi());                 // F(x, y, φz)
    const Tensor f_xi3_pp =
        compose_slot(compose_slot(f_xi3, 0, inst.phi()), 1, inst.phi());  // F(φx, φy, ξ)
    const Tensor f_xi1_pp = compose_slot(compose_slot(f_xi1, 0, inst.phi()), 1,
                                         inst.phi());                     // F(ξ, φy, φz)
    const Scalar theta_xi = eval_form(lee.theta, {inst.xi()});
    const Scalar theta_star_xi = eval_form(lee.theta_star, {inst.xi()});

    auto theta_phi = [&](int k) {
        Scalar sum;
        for (int m = 0; m < dim; ++m) {
            if (inst.phi().at(m, k).is_zero()) continue;
            sum += inst.phi().at(m, k) * lee.theta.at(std::vector<int>{m});
        }
        return sum;
    };
    auto theta_phi2 = [&](int k) {
        Scalar sum;
        for (int m = 0; m < dim; ++m) {
            if (inst.phi_squared().at(m, k).is_zero()) continue;
            sum += inst.phi_squared().at(m, k) * lee.theta.at(std::vector<int>{m});
        }
        return sum;
    };

    ClassificationReport report;
    report.f0 = tensor_zero_verdict(F, "F0_zero");

    {
        VerdictBuilder v(dim);
        v.clause("F1_shape", 3, [&](const std::vector<int>& i) {
            return F.at(i[0], i[1], i[2]) -
                   (g_phi_phi.at(i[0], i[1]) * theta_phi2(i[2]) +
                    g_phi_phi.at(i[0], i[2]) * theta_phi2(i[1]) -
                    g_phi.at(i[0], i[1]) * theta_phi(i[2]) -
                    g_phi.at(i[0], i[2]) * theta_phi(i[1]))
                       .scaled(r);
        });
        report.basic[0] = v.take();
    }
    {
        VerdictBuilder v(dim);
        v.clause("F2_xi_first_slot", 2,
                 [&](const std::vector<int>& i) { return f_xi1.at(i[0], i[1]); });
        v.clause("F2_xi_middle_slot", 2,
                 [&](const std::vector<int>& i) { return f_xi2.at(i[0], i[1]); });
        v.clause("F2_theta_zero", 1,
                 [&](const std::vector<int>& i) { return lee.theta.at(std::vector<int>{i[0]}); });
        v.clause("F2_cyclic_phi", 3, [&](const std::vector<int>& i) {
            return f_p3.at(i[0], i[1], i[2]) + f_p3.at(i[1], i[2], i[0]) +
                   f_p3.at(i[2], i[0], i[1]);
        });
        report.basic[1] = v.take();
    }
    {
        VerdictBuilder v(dim);
        v.clause("F3_xi_first_slot", 2,
                 [&](const std::vector<int>& i) { return f_xi1.at(i[0], i[1]); });
        v.clause("F3_xi_middle_slot", 2,
                 [&](const std::vector<int>& i) { return f_xi2.at(i[0], i[1]); });
        v.clause("F3_cyclic", 3, [&](const std::vector<int>& i) {
            return F.at(i[0], i[1], i[2]) + F.at(i[1], i[2], i[0]) + F.at(i[2], i[0], i[1]);
        });
        report.basic[2] = v.take();
    }
    {
        VerdictBuilder v(dim);
        v.clause("F4_shape", 3, [&](const std::vector<int>& i) {
            return F.at(i[0], i[1], i[2]) -
                   (theta_xi * (g_phi_phi.at(i[0], i[1]) * eta[static_cast<size_t>(i[2])] +
                                g_phi_phi.at(i[0], i[2]) * eta[static_cast<size_t>(i[1])]))
                       .scaled(r);
        });
        report.basic[3] = v.take();
    }
    {
        VerdictBuilder v(dim);
        v.clause("F5_shape", 3, [&](const std::vector<int>& i) {
            return F.at(i[0], i[1], i[2]) -
                   (theta_star_xi * (g_phi.at(i[0], i[1]) * eta[static_cast<size_t>(i[2])] +
                                     g_phi.at(i[0], i[2]) * eta[static_cast<size_t>(i[1])]))
                       .scaled(r);
        });
        report.basic[4] = v.take();
    }

    auto xi_slot_shape = [&](VerdictBuilder& v, const std::string& name) {
        v.clause(name, 3, [&](const std::vector<int>& i) {
            return F.at(i[0], i[1], i[2]) -
                   f_xi3.at(i[0], i[1]) * eta[static_cast<size_t>(i[2])] -
                   f_xi3.at(i[0], i[2]) * eta[static_cast<size_t>(i[1])];
        });
    };
    {
        VerdictBuilder v(dim);
        xi_slot_shape(v, "F6_shape");
        v.clause("F6_xi_symmetry", 2, [&](const std::vector<int>& i) {
            return f_xi3.at(i[0], i[1]) - f_xi3.at(i[1], i[0]);
        });
        v.clause("F6_xi_phi_invariance", 2, [&](const std::vector<int>& i) {
            return f_xi3.at(i[0], i[1]) - f_xi3_pp.at(i[0], i[1]);
        });
        report.basic[5] = v.take();
    }
    {
        VerdictBuilder v(dim);
        xi_slot_shape(v, "F7_shape");
        v.clause("F7_xi_antisymmetry", 2, [&](const std::vector<int>& i) {
            return f_xi3.at(i[0], i[1]) + f_xi3.at(i[1], i[0]);
        });
        v.clause("F7_xi_phi_invariance", 2, [&](const std::vector<int>& i) {
            return f_xi3.at(i[0], i[1]) - f_xi3_pp.at(i[0], i[1]);
        });
        report.basic[6] = v.take();
    }
    {
        VerdictBuilder v(dim);
        xi_slot_shape(v, "F8_shape");
        v.clause("F8_xi_symmetry", 2, [&](const std::vector<int>& i) {
            return f_xi3.at(i[0], i[1]) - f_xi3.at(i[1], i[0]);
        });
        v.clause("F8_xi_phi_anti_invariance", 2, [&](const std::vector<int>& i) {
            return f_xi3.at(i[0], i[1]) + f_xi3_pp.at(i[0], i[1]);
        });
        report.basic[7] = v.take();
    }
    {
        VerdictBuilder v(dim);
        xi_slot_shape(v, "F9_shape");
        v.clause("F9_xi_antisymmetry", 2, [&](const std::vector<int>& i) {
            return f_xi3.at(i[0], i[1]) + f_xi3.at(i[1], i[0]);
        });
        v.clause("F9_xi_phi_anti_invariance", 2, [&](const std::vector<int>& i) {
            return f_xi3.at(i[0], i[1]) + f_xi3_pp.at(i[0], i[1]);
        });
        report.basic[8] = v.take();
    }
    {
        VerdictBuilder v(dim);
        v.clause("F10_shape", 3, [&](const std::vector<int>& i) {
            return F.at(i[0], i[1], i[2]) +
                   eta[static_cast<size_t>(i[0])] * f_xi1_pp.at(i[1], i[2]);
        });
        report.basic[9] = v.take();
    }
    {
        VerdictBuilder v(dim);
        v.clause("F11_shape", 3, [&](const std::vector<int>& i) {
            return F.at(i[0], i[1], i[2]) -
                   eta[static_cast<size_t>(i[0])] *
                       (eta[static_cast<size_t>(i[1])] * lee.omega.at(std::vector<int>{i[2]}) +
                        eta[static_cast<size_t>(i[2])] * lee.omega.at(std::vector<int>{i[1]}));
        });
        report.basic[10] = v.take();
    }
    return report;
}

UnionVerdicts classify_unions(const PiManifoldInstance& inst, const NijenhuisPair& pair) {
    UnionVerdicts verdicts;
    verdicts.u0 = tensor_zero_verdict(pair.N_cov, "U0_N_zero");
    verdicts.u0hat = tensor_zero_verdict(pair.N_hat_cov, "U0hat_N_hat_zero");
    verdicts.u1 = tensor_zero_verdict(
        compose_slot(compose_slot(pair.N_cov, 0, inst.phi()), 1, inst.phi()), "U1_N_phi_phi_zero");
    return verdicts;
}

std::array<Verdict, 11> characterize_by_torsion(const PiManifoldInstance& inst,
                                                const TorsionData& T, ConnectionKind which) {
    const int dim = inst.dim();
    const auto& eta = inst.eta();
    const Rational r(1, 2 * inst.n());
    const Tensor& s = T.T_cov;
    const Mat g_phi = inst.phi().transposed() * inst.g();          // g(φx, z)
    const Mat g_phi2 = inst.phi_squared().transposed() * inst.g(); // g(φ²x, z)
    const Tensor s_x0 = partial_apply(s, 0, inst.xi());            // T(ξ, y, z)
    const Tensor s_xi3 = partial_apply(s, 2, inst.xi());           // T(x, y, ξ)
    const Tensor s_pp = compose_slot(compose_slot(s, 0, inst.phi()), 1, inst.phi());
    const Tensor s_p2p3 = compose_slot(compose_slot(s, 1, inst.phi()), 2, inst.phi());
    const Tensor s_x0_pp =
        compose_slot(compose_slot(s_x0, 0, inst.phi()), 1, inst.phi());  // T(ξ, φy, φz)
    const Tensor s_xi3_pp =
        compose_slot(compose_slot(s_xi3, 0, inst.phi()), 1, inst.phi());  // T(φy, φz, ξ)
    const Scalar t_xi = eval_form(T.t, {inst.xi()});
    const Scalar t_star_xi = eval_form(T.t_star, {inst.xi()});

    auto t_on = [&](const Mat& m, int k) {
        Scalar sum;
        for (int a = 0; a < dim; ++a) {
            if (m.at(a, k).is_zero()) continue;
            sum += m.at(a, k) * T.t.at(std::vector<int>{a});
        }
        return sum;
    };

    std::array<Verdict, 11> verdicts;
    {
        VerdictBuilder v(dim);
        v.clause("F1_shape", 3, [&](const std::vector<int>& i) {
            return s.at(i[0], i[1], i[2]) +
                   (t_on(inst.phi_squared(), i[1]) * g_phi2.at(i[0], i[2]) -
                    t_on(inst.phi_squared(), i[0]) * g_phi2.at(i[1], i[2]) +
                    t_on(inst.phi(), i[0]) * g_phi.at(i[1], i[2]) -
                    t_on(inst.phi(), i[1]) * g_phi.at(i[0], i[2]))
                       .scaled(r);
        });
        verdicts[0] = v.take();
    }
    {
        VerdictBuilder v(dim);
        v.clause("F2_xi_first_slot", 2,
                 [&](const std::vector<int>& i) { return s_x0.at(i[0], i[1]); });
        v.clause("F2_no_xi_component", 2,
                 [&](const std::vector<int>& i) { return s_xi3.at(i[0], i[1]); });
        v.clause("F2_phi_phi_anti_invariance", 3, [&](const std::vector<int>& i) {
            return s.at(i[0], i[1], i[2]) + s_pp.at(i[0], i[1], i[2]);
        });
        v.clause("F2_t_form_zero", 1,
                 [&](const std::vector<int>& i) { return T.t.at(std::vector<int>{i[0]}); });
        verdicts[1] = v.take();
    }
    {
        VerdictBuilder v(dim);
        v.clause("F3_xi_first_slot", 2,
                 [&](const std::vector<int>& i) { return s_x0.at(i[0], i[1]); });
        v.clause("F3_no_xi_component", 2,
                 [&](const std::vector<int>& i) { return s_xi3.at(i[0], i[1]); });
        v.clause("F3_phi_pullout", 3, [&](const std::vector<int>& i) {
            return s.at(i[0], i[1], i[2]) + s_p2p3.at(i[0], i[1], i[2]);
        });
        verdicts[2] = v.take();
    }
    {
        VerdictBuilder v(dim);
        v.clause("F4_shape", 3, [&](const std::vector<int>& i) {
            return s.at(i[0], i[1], i[2]) +
                   (t_star_xi * (eta[static_cast<size_t>(i[1])] * g_phi.at(i[0], i[2]) -
                                 eta[static_cast<size_t>(i[0])] * g_phi.at(i[1], i[2])))
                       .scaled(r);
        });
        verdicts[3] = v.take();
    }
    {
        VerdictBuilder v(dim);
        v.clause("F5_shape", 3, [&](const std::vector<int>& i) {
            return s.at(i[0], i[1], i[2]) +
                   (t_xi * (eta[static_cast<size_t>(i[1])] * g_phi2.at(i[0], i[2]) -
                            eta[static_cast<size_t>(i[0])] * g_phi2.at(i[1], i[2])))
                       .scaled(r);
        });
        verdicts[4] = v.take();
    }

    auto eta_shape = [&](VerdictBuilder& v, const std::string& name, int xi_sign) {
        v.clause(name, 3, [&, xi_sign](const std::vector<int>& i) {
            Scalar expected = eta[static_cast<size_t>(i[0])] * s_x0.at(i[1], i[2]) -
                              eta[static_cast<size_t>(i[1])] * s_x0.at(i[0], i[2]);
            Scalar xi_part = s_xi3.at(i[0], i[1]) * eta[static_cast<size_t>(i[2])];
            if (xi_sign > 0)
                expected += xi_part;
            else if (xi_sign < 0)
                expected -= xi_part;
            return s.at(i[0], i[1], i[2]) - expected;
        });
    };
    auto chain_antisym = [&](VerdictBuilder& v, const std::string& name) {
        v.clause(name, 2, [&](const std::vector<int>& i) {
            return s_x0.at(i[0], i[1]) + s_x0.at(i[1], i[0]);
        });
    };
    auto chain_sym = [&](VerdictBuilder& v, const std::string& name) {
        v.clause(name, 2, [&](const std::vector<int>& i) {
            return s_x0.at(i[0], i[1]) - s_x0.at(i[1], i[0]);
        });
    };
    auto chain_phi = [&](VerdictBuilder& v, const std::string& name, int sign) {
        v.clause(name, 2, [&, sign](const std::vector<int>& i) {
            return (sign > 0) ? s_x0.at(i[0], i[1]) - s_x0_pp.at(i[0], i[1])
                              : s_x0.at(i[0], i[1]) + s_x0_pp.at(i[0], i[1]);
        });
    };
    auto chain_half = [&](VerdictBuilder& v, const std::string& name) {
        v.clause(name, 2, [&](const std::vector<int>& i) {
            return s_x0.at(i[0], i[1]) - s_xi3.at(i[0], i[1]).scaled(kHalf);
        });
    };
    auto chain_half_phi = [&](VerdictBuilder& v, const std::string& name, int sign) {
        v.clause(name, 2, [&, sign](const std::vector<int>& i) {
            const Scalar half_pp = s_xi3_pp.at(i[0], i[1]).scaled(kHalf);
            return (sign > 0) ? s_x0.at(i[0], i[1]) - half_pp : s_x0.at(i[0], i[1]) + half_pp;
        });
    };

    {
        VerdictBuilder v(dim);
        eta_shape(v, "F6_shape", -1);
        chain_antisym(v, "F6_chain_antisymmetry");
        chain_phi(v, "F6_chain_phi_invariance", +1);
        chain_half(v, "F6_chain_half_transpose");
        chain_half_phi(v, "F6_chain_half_phi_transpose", +1);
        verdicts[5] = v.take();
    }
    {
        VerdictBuilder v(dim);
        eta_shape(v, "F7_shape", +1);
        chain_antisym(v, "F7_chain_antisymmetry");
        chain_phi(v, "F7_chain_phi_invariance", +1);
        if (which == ConnectionKind::First) {
            chain_half(v, "F7_chain_half_transpose");
            chain_half_phi(v, "F7_chain_half_phi_transpose", +1);
        } else {
            v.clause("F7_xi_component_phi_invariance", 2, [&](const std::vector<int>& i) {
                return s_xi3.at(i[0], i[1]) - s_xi3_pp.at(i[0], i[1]);
            });
        }
        verdicts[6] = v.take();
    }
    {
        VerdictBuilder v(dim);
        eta_shape(v, "F8_shape", -1);
        chain_antisym(v, "F8_chain_antisymmetry");
        chain_phi(v, "F8_chain_phi_anti_invariance", -1);
        chain_half(v, "F8_chain_half_transpose");
        chain_half_phi(v, "F8_chain_minus_half_phi_transpose", -1);
        verdicts[7] = v.take();
    }
    {
        VerdictBuilder v(dim);
        eta_shape(v, "F9_shape", 0);
        chain_sym(v, "F9_chain_symmetry");
        chain_phi(v, "F9_chain_phi_anti_invariance", -1);
        verdicts[8] = v.take();
    }
    {
        VerdictBuilder v(dim);
        eta_shape(v, "F10_shape", 0);
        chain_antisym(v, "F10_chain_antisymmetry");
        chain_phi(v, "F10_chain_phi_anti_invariance", -1);
        verdicts[9] = v.take();
    }
    {
        VerdictBuilder v(dim);
        v.clause("F11_shape", 3, [&](const std::vector<int>& i) {
            return s.at(i[0], i[1], i[2]) -
                   (eta[static_cast<size_t>(i[1])] * T.t_hat.at(std::vector<int>{i[0]}) -
                    eta[static_cast<size_t>(i[0])] * T.t_hat.at(std::vector<int>{i[1]})) *
                       eta[static_cast<size_t>(i[2])];
        });
        verdicts[10] = v.take();
    }
    return verdicts;
}

Tensor f7_projection(const PiManifoldInstance& inst, const Tensor& F) {
    const int dim = inst.dim();
    const auto& eta = inst.eta();
    const Tensor f_xi3 = partial_apply(F, 2, inst.xi());
    const Tensor p1 = compose_slot(compose_slot(f_xi3, 0, inst.phi()), 1, inst.phi());
    const Tensor p2 =
        compose_slot(compose_slot(f_xi3, 0, inst.phi_squared()), 1, inst.phi_squared());

    Mat a = Mat::zero(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a.at(i, j) = p2.at(i, j) - p2.at(j, i) + p1.at(i, j) - p1.at(j, i);

    Tensor out(dim, {Slot::Lower, Slot::Lower, Slot::Lower});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                out.at(i, j, k) = (a.at(i, j) * eta[static_cast<size_t>(k)] +
                                   a.at(i, k) * eta[static_cast<size_t>(j)])
                                      .scaled(kQuarter);
    return out;
}

std::string single_class_label(const ClassificationReport& report) {
    if (report.f0.holds) return "F0";
    std::string joined;
    for (size_t i = 0; i < report.basic.size(); ++i) {
        if (!report.basic[i].holds) continue;
        if (!joined.empty()) joined += "+";
        joined += "F" + std::to_string(i + 1);
    }
    return joined.empty() ? "mixed" : joined;
}

}  // namespace piconn
