#pragma once

#include "piconn/levi_civita.hpp"
#include "piconn/report.hpp"
#include "piconn/structure.hpp"
#include "piconn/tensor.hpp"

namespace piconn {

// The antisymmetric/symmetric pair of structure tensors built from the
// derivatives of φ and η.  The (1,2) versions are primary; the covariant
// versions are their metric lowerings.
struct NijenhuisPair {
    Tensor N;          // (1,2), slots {Lower, Lower, Upper}
    Tensor N_hat;      // (1,2)
    Tensor N_cov;      // (0,3)
    Tensor N_hat_cov;  // (0,3)
};

// Restriction choices for the reduced reconstruction formulas.
enum class RestrictedDomain { U0, U0hat };

// Direct path from the metric connection:
//   N(x,y)    = (D_{φx}φ)y − φ(D_xφ)y − (D_xη)(y)ξ  −  (same with x↔y),
//   N̂(x,y)   = (D_{φx}φ)y − φ(D_xφ)y − (D_xη)(y)ξ  +  (same with x↔y).
NijenhuisPair nijenhuis_pair(const PiManifoldInstance& inst, const ConnectionCoefficients& conn);

// Second, independent path built purely from F components:
//   N(x,y,z)  = F(φx,y,z) − F(φy,x,z) − F(x,y,φz) + F(y,x,φz)
//               + η(z){F(x,φy,ξ) − F(y,φx,ξ)},
//   N̂(x,y,z) = the same with + signs on the swapped terms.
NijenhuisPair NN_from_F(const Tensor& F, const PiManifoldInstance& inst);

// Antisymmetry/symmetry plus the twelve φ-slot exchange identities.
ValidationReport check_NN_properties(const NijenhuisPair& pair, const PiManifoldInstance& inst);

// Reconstruction of F from the pair:
//   F(x,y,z) = ¼{N(φx,y,z)+N(φx,z,y)+N̂(φx,y,z)+N̂(φx,z,y)}
//              − ½η(x){N(ξ,y,φz)+N̂(ξ,y,φz)+η(z)N̂(ξ,ξ,φy)}.
Tensor F_from_NN(const NijenhuisPair& pair, const PiManifoldInstance& inst);

// Reduced reconstructions valid on the named unions (U0: N ≡ 0 and F is
// rebuilt from N̂ alone; U0hat: N̂ ≡ 0 and F is rebuilt from N alone).
// Throws std::domain_error with a witness component when the instance is not
// in the requested union.
Tensor F_restricted_forms(const NijenhuisPair& pair, const PiManifoldInstance& inst,
                          RestrictedDomain which);

}  // namespace piconn
