#pragma once

#include "piconn/report.hpp"
#include "piconn/structure.hpp"
#include "piconn/tensor.hpp"

namespace piconn {

// Connection coefficients: gamma(i,j,k) is the e_k-component of the
// connection applied to the pair (e_i, e_j).
struct ConnectionCoefficients {
    Tensor gamma;  // slots {Lower, Lower, Upper}

    Vec derivative_basis(int i, int j) const;
    Vec derivative(const Vec& x, const Vec& y) const { return eval_vector_field(gamma, {x, y}); }
};

// Structure fields as tensors, in the slot convention above (argument slots
// first, the component slot of vector-valued fields last).
Tensor phi_as_tensor(const PiManifoldInstance& inst);     // (1,1): {Lower, Upper}
Tensor xi_as_tensor(const PiManifoldInstance& inst);      // {Upper}
Tensor eta_as_tensor(const PiManifoldInstance& inst);     // {Lower}
Tensor matrix_as_tensor(const Mat& m);                    // (0,2) bilinear form

// Argument substitution x_slot -> M x_slot on a Lower slot.
Tensor compose_slot(const Tensor& t, int slot, const Mat& m);

// The metric connection of the left-invariant metric, from the reduced
// Koszul equality 2g(D_x y, z) = g([x,y],z) - g([x,z],y) - g([y,z],x)
// (the scalar-derivative terms vanish: all field components are constant on
// the group).  Throws std::domain_error when the metric is not invertible.
ConnectionCoefficients levi_civita(const PiManifoldInstance& inst);

// Covariant derivative of a tensor field with constant components; adds the
// direction slot in front and applies the Leibniz rule over every slot.
Tensor nabla_tensor(const ConnectionCoefficients& conn, const Tensor& t);

// Torsion-freeness (against the bracket table) and metric compatibility.
ValidationReport check_connection_basics(const PiManifoldInstance& inst,
                                         const ConnectionCoefficients& conn);

// F(x,y,z) = g((D_x φ)y, z) for the metric connection.
Tensor fundamental_tensor(const PiManifoldInstance& inst, const ConnectionCoefficients& conn);

// The four general identities every fundamental tensor satisfies.
ValidationReport check_F_properties(const PiManifoldInstance& inst, const Tensor& F);

// Identities tying the derivatives of η and ξ to F: the η-derivative is the
// metric dual of the ξ-derivative, η annihilates the ξ-derivative, and
// F(x,φy,ξ) recovers -(D_x η)(y).
ValidationReport check_derivative_identities(const PiManifoldInstance& inst,
                                             const ConnectionCoefficients& conn, const Tensor& F);

// The three trace forms of F over the full basis with the inverse metric.
struct LeeForms {
    Tensor theta;       // g^{ij} F(e_i, e_j, ·)
    Tensor theta_star;  // g^{ij} F(e_i, φe_j, ·)
    Tensor omega;       // F(ξ, ξ, ·)
};

LeeForms lee_forms(const PiManifoldInstance& inst, const Tensor& F);

// Trace-form relations: ω(ξ) = 0, θ*∘φ = -θ∘φ², θ*∘φ² = θ∘φ.
ValidationReport check_lee_relations(const PiManifoldInstance& inst, const LeeForms& lee);

}  // namespace piconn
