#pragma once

#include <string>
#include <vector>

#include "piconn/linalg.hpp"
#include "piconn/report.hpp"
#include "piconn/scalar.hpp"
#include "piconn/tensor.hpp"

namespace piconn {

// A Lie algebra given by structure constants over the scalar ring.  The
// bracket table is stored densely and antisymmetrically: c(i,j,k) is the
// e_k-coefficient of [e_i, e_j].
struct LieAlgebraStructure {
    ParamTablePtr params;
    std::vector<std::string> basis;
    Tensor c;  // slots {Lower, Lower, Upper}

    int dim() const { return static_cast<int>(basis.size()); }
    Vec bracket_basis(int i, int j) const;
    Vec bracket(const Vec& x, const Vec& y) const;
};

// The almost-paracontact ingredients: the endomorphism φ (columns hold the
// images of basis vectors), the distinguished vector ξ, the covector η, and
// the compatible metric g.
struct PiStructure {
    Mat phi;
    Vec xi;
    Vec eta;  // covector components
    Mat g;
};

// A validated algebra + structure pair with the derived matrices cached.
// Instances are immutable; every operation on them is pure.
class PiManifoldInstance {
  public:
    PiManifoldInstance(LieAlgebraStructure algebra, PiStructure structure);

    int dim() const { return algebra_.dim(); }
    int n() const { return (dim() - 1) / 2; }
    const ParamTablePtr& params() const { return algebra_.params; }
    const LieAlgebraStructure& algebra() const { return algebra_; }
    const PiStructure& structure() const { return structure_; }

    const Mat& phi() const { return structure_.phi; }
    const Mat& phi_squared() const { return phi_squared_; }
    const Vec& xi() const { return structure_.xi; }
    const Vec& eta() const { return structure_.eta; }
    const Mat& g() const { return structure_.g; }
    // Throws std::domain_error when g has no constant-pivot inverse.
    const Mat& g_inv() const;
    bool metric_invertible(std::string* why = nullptr) const;

    Vec basis_vec(int i) const { return unit_vec(dim(), i); }
    Vec phi_apply(const Vec& x) const { return structure_.phi.apply(x); }
    Vec phi_squared_apply(const Vec& x) const { return phi_squared_.apply(x); }
    Scalar eta_of(const Vec& x) const;
    Scalar g_of(const Vec& x, const Vec& y) const { return bilinear(structure_.g, x, y); }
    Vec bracket(const Vec& x, const Vec& y) const { return algebra_.bracket(x, y); }

    PiManifoldInstance substituted(const Substitution& subst) const;

  private:
    LieAlgebraStructure algebra_;
    PiStructure structure_;
    Mat phi_squared_;
    InverseResult g_inverse_;
};

// Checks the Jacobi identity and every structure axiom; each named check
// carries the first violating index tuple and the residual on failure.
// Throws std::invalid_argument when algebra and structure shapes disagree.
ValidationReport validate(const LieAlgebraStructure& algebra, const PiStructure& structure);

// Horizontal and vertical projections x = φ²x + η(x)ξ.
Vec project_h(const PiManifoldInstance& inst, const Vec& x);
Vec project_v(const PiManifoldInstance& inst, const Vec& x);

// The associated metric g with φ in one slot plus the η⊗η correction.
Mat associated_metric(const PiManifoldInstance& inst);

}  // namespace piconn
