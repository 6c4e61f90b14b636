#include "piconn/structure.hpp"

#include <stdexcept>

#include "piconn/checks.hpp"

namespace piconn {

namespace {

Vec substituted_vec(const Vec& v, const Substitution& subst) {
    Vec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].substitute(subst);
    return out;
}

// ξ⊗η as the matrix of x ↦ η(x)ξ.
Mat xi_tensor_eta(const Vec& xi, const Vec& eta) {
    const int dim = static_cast<int>(xi.size());
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m.at(i, j) = xi[static_cast<size_t>(i)] * eta[static_cast<size_t>(j)];
    return m;
}

// Exact determinant of a fully constant matrix.
Rational constant_determinant(const Mat& m) {
    const int n = m.rows();
    std::vector<Rational> a(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const auto v = m.at(r, c).constant_value();
            if (!v) throw std::invalid_argument("determinant of non-constant matrix");
            a[static_cast<size_t>(r * n + c)] = *v;
        }
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a[static_cast<size_t>(r * n + col)] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rational(0);
        if (pivot != col) {
            for (int c = 0; c < n; ++c)
                std::swap(a[static_cast<size_t>(pivot * n + c)], a[static_cast<size_t>(col * n + c)]);
            det = -det;
        }
        const Rational p = a[static_cast<size_t>(col * n + col)];
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            const Rational factor = a[static_cast<size_t>(r * n + col)] / p;
            if (factor == 0) continue;
            for (int c = col; c < n; ++c)
                a[static_cast<size_t>(r * n + c)] -= factor * a[static_cast<size_t>(col * n + c)];
        }
    }
    return det;
}

}  // namespace

Vec LieAlgebraStructure::bracket_basis(int i, int j) const {
    Vec out(static_cast<size_t>(dim()));
    for (int k = 0; k < dim(); ++k) out[static_cast<size_t>(k)] = c.at(i, j, k);
    return out;
}

Vec LieAlgebraStructure::bracket(const Vec& x, const Vec& y) const {
    return eval_vector_field(c, {x, y});
}

PiManifoldInstance::PiManifoldInstance(LieAlgebraStructure algebra, PiStructure structure)
    : algebra_(std::move(algebra)), structure_(std::move(structure)) {
    const int dim = algebra_.dim();
    if (dim <= 0) throw std::invalid_argument("instance needs a nonempty basis");
    if (algebra_.c.dim() != dim || algebra_.c.rank() != 3 ||
        algebra_.c.slots() != std::vector<Slot>{Slot::Lower, Slot::Lower, Slot::Upper})
        throw std::invalid_argument("bracket table shape mismatch");
    if (structure_.phi.rows() != dim || structure_.phi.cols() != dim ||
        structure_.g.rows() != dim || structure_.g.cols() != dim ||
        static_cast<int>(structure_.xi.size()) != dim ||
        static_cast<int>(structure_.eta.size()) != dim)
        throw std::invalid_argument("dimension mismatch between algebra and structure");
    phi_squared_ = structure_.phi * structure_.phi;
    g_inverse_ = try_invert(structure_.g);
}

const Mat& PiManifoldInstance::g_inv() const {
    if (!g_inverse_.inverse) throw std::domain_error("metric not invertible: " + g_inverse_.failure);
    return *g_inverse_.inverse;
}

bool PiManifoldInstance::metric_invertible(std::string* why) const {
    if (g_inverse_.inverse) return true;
    if (why) *why = g_inverse_.failure;
    return false;
}

Scalar PiManifoldInstance::eta_of(const Vec& x) const {
    Scalar out;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero() || structure_.eta[i].is_zero()) continue;
        out += structure_.eta[i] * x[i];
    }
    return out;
}

PiManifoldInstance PiManifoldInstance::substituted(const Substitution& subst) const {
    LieAlgebraStructure alg{algebra_.params, algebra_.basis, algebra_.c.substituted(subst)};
    PiStructure st{structure_.phi.substituted(subst), substituted_vec(structure_.xi, subst),
                   substituted_vec(structure_.eta, subst), structure_.g.substituted(subst)};
    return PiManifoldInstance(std::move(alg), std::move(st));
}

ValidationReport validate(const LieAlgebraStructure& algebra, const PiStructure& structure) {
    const int dim = algebra.dim();
    if (algebra.c.dim() != dim || structure.phi.rows() != dim || structure.phi.cols() != dim ||
        structure.g.rows() != dim || structure.g.cols() != dim ||
        static_cast<int>(structure.xi.size()) != dim ||
        static_cast<int>(structure.eta.size()) != dim)
        throw std::invalid_argument("dimension mismatch between algebra and structure");

    ValidationReport report;

    if (dim % 2 == 1) {
        report.add(CheckResult::ok("dimension_odd"));
    } else {
        report.add(CheckResult::fail("dimension_odd", {dim}, std::to_string(dim),
                                     "dimension must be odd (2n+1)"));
    }

    report.add(check_identity("bracket_alternating", dim, 3, [&](const std::vector<int>& idx) {
        return algebra.c.at(idx[0], idx[1], idx[2]) + algebra.c.at(idx[1], idx[0], idx[2]);
    }));

    {
        CheckResult jacobi = CheckResult::ok("jacobi_identity");
        for (int i = 0; i < dim && jacobi.passed; ++i) {
            for (int j = i + 1; j < dim && jacobi.passed; ++j) {
                for (int k = j + 1; k < dim && jacobi.passed; ++k) {
                    const Vec sum = vec_add(
                        vec_add(algebra.bracket(algebra.bracket_basis(i, j), unit_vec(dim, k)),
                                algebra.bracket(algebra.bracket_basis(j, k), unit_vec(dim, i))),
                        algebra.bracket(algebra.bracket_basis(k, i), unit_vec(dim, j)));
                    for (int m = 0; m < dim; ++m) {
                        if (!sum[static_cast<size_t>(m)].is_zero()) {
                            jacobi = CheckResult::fail("jacobi_identity", {i, j, k, m},
                                                       sum[static_cast<size_t>(m)].to_string());
                            break;
                        }
                    }
                }
            }
        }
        report.add(jacobi);
    }

    const Vec phi_xi = structure.phi.apply(structure.xi);
    report.add(check_identity("phi_xi_zero", dim, 1, [&](const std::vector<int>& idx) {
        return phi_xi[static_cast<size_t>(idx[0])];
    }));

    const Mat phi2 = structure.phi * structure.phi;
    const Mat phi2_expected = Mat::identity(dim) - xi_tensor_eta(structure.xi, structure.eta);
    report.add(check_identity("phi_squared_identity", dim, 2, [&](const std::vector<int>& idx) {
        return phi2.at(idx[0], idx[1]) - phi2_expected.at(idx[0], idx[1]);
    }));

    report.add(check_identity("eta_phi_zero", dim, 1, [&](const std::vector<int>& idx) {
        Scalar sum;
        for (int i = 0; i < dim; ++i)
            sum += structure.eta[static_cast<size_t>(i)] * structure.phi.at(i, idx[0]);
        return sum;
    }));

    {
        Scalar eta_xi;
        for (int i = 0; i < dim; ++i)
            eta_xi += structure.eta[static_cast<size_t>(i)] * structure.xi[static_cast<size_t>(i)];
        const Scalar residual = eta_xi - Scalar(Rational(1));
        report.add(residual.is_zero() ? CheckResult::ok("eta_xi_one")
                                      : CheckResult::fail("eta_xi_one", {}, residual.to_string()));
    }

    {
        Scalar trace;
        for (int i = 0; i < dim; ++i) trace += structure.phi.at(i, i);
        report.add(trace.is_zero() ? CheckResult::ok("phi_traceless")
                                   : CheckResult::fail("phi_traceless", {}, trace.to_string()));
    }

    report.add(check_identity("metric_symmetric", dim, 2, [&](const std::vector<int>& idx) {
        return structure.g.at(idx[0], idx[1]) - structure.g.at(idx[1], idx[0]);
    }));

    {
        const InverseResult inv = try_invert(structure.g);
        report.add(inv.inverse ? CheckResult::ok("metric_invertible")
                               : CheckResult::fail("metric_invertible", {}, "", inv.failure));
    }

    const Mat phi_t = structure.phi.transposed();
    const Mat g_phi_phi = phi_t * structure.g * structure.phi;
    report.add(check_identity("metric_phi_compatible", dim, 2, [&](const std::vector<int>& idx) {
        return g_phi_phi.at(idx[0], idx[1]) - structure.g.at(idx[0], idx[1]) +
               structure.eta[static_cast<size_t>(idx[0])] * structure.eta[static_cast<size_t>(idx[1])];
    }));

    const Mat g_phi = structure.g * structure.phi;
    const Mat phi_t_g = phi_t * structure.g;
    report.add(check_identity("phi_self_adjoint", dim, 2, [&](const std::vector<int>& idx) {
        return g_phi.at(idx[0], idx[1]) - phi_t_g.at(idx[0], idx[1]);
    }));

    const Vec g_xi = structure.g.apply(structure.xi);
    report.add(check_identity("metric_xi_eta", dim, 1, [&](const std::vector<int>& idx) {
        return g_xi[static_cast<size_t>(idx[0])] - structure.eta[static_cast<size_t>(idx[0])];
    }));

    {
        Scalar g_xi_xi;
        for (int i = 0; i < dim; ++i)
            g_xi_xi += g_xi[static_cast<size_t>(i)] * structure.xi[static_cast<size_t>(i)];
        const Scalar residual = g_xi_xi - Scalar(Rational(1));
        report.add(residual.is_zero() ? CheckResult::ok("xi_unit")
                                      : CheckResult::fail("xi_unit", {}, residual.to_string()));
    }

    {
        bool constant_metric = true;
        for (int r = 0; r < dim && constant_metric; ++r)
            for (int c = 0; c < dim; ++c)
                if (!structure.g.at(r, c).is_constant()) {
                    constant_metric = false;
                    break;
                }
        if (!constant_metric) {
            report.add(CheckResult::ok("metric_positive_definite_numeric",
                                       "skipped: metric has symbolic entries; decidable only "
                                       "after a full substitution"));
        } else {
            CheckResult pd = CheckResult::ok("metric_positive_definite_numeric");
            for (int k = 1; k <= dim; ++k) {
                Mat leading(k, k);
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c) leading.at(r, c) = structure.g.at(r, c);
                const Rational det = constant_determinant(leading);
                if (det <= 0) {
                    pd = CheckResult::fail("metric_positive_definite_numeric", {k},
                                           to_string(det),
                                           "leading principal minor is not positive");
                    break;
                }
            }
            report.add(pd);
        }
    }

    return report;
}

Vec project_h(const PiManifoldInstance& inst, const Vec& x) {
    return inst.phi_squared_apply(x);
}

Vec project_v(const PiManifoldInstance& inst, const Vec& x) {
    return vec_scaled(inst.xi(), inst.eta_of(x));
}

Mat associated_metric(const PiManifoldInstance& inst) {
    const int dim = inst.dim();
    const Mat g_phi = inst.g() * inst.phi();
    Mat out(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            out.at(i, j) = g_phi.at(i, j) +
                           inst.eta()[static_cast<size_t>(i)] * inst.eta()[static_cast<size_t>(j)];
    return out;
}

}  // namespace piconn
