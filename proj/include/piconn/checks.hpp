#pragma once

#include <string>
#include <vector>

#include "piconn/report.hpp"
#include "piconn/scalar.hpp"
#include "piconn/tensor.hpp"

namespace piconn {

// Exhaustively evaluates a multilinear identity's residual on every basis
// tuple of the given arity; the first nonzero residual becomes the witness.
// Valid as a complete decision procedure because the checked identities are
// multilinear in each argument.
template <typename ResidualFn>
CheckResult check_identity(const std::string& name, int dim, int arity, ResidualFn&& residual) {
    std::vector<int> index(static_cast<size_t>(arity), 0);
    if (arity == 0) {
        const Scalar r = residual(index);
        if (r.is_zero()) return CheckResult::ok(name);
        return CheckResult::fail(name, {}, r.to_string());
    }
    do {
        const Scalar r = residual(index);
        if (!r.is_zero()) return CheckResult::fail(name, index, r.to_string());
    } while (next_index(index, dim));
    return CheckResult::ok(name);
}

// Pass/fail wrapper for "this tensor vanishes identically".
CheckResult check_tensor_zero(const std::string& name, const Tensor& t);

// Pass/fail wrapper for "these tensors are equal componentwise".
CheckResult check_tensor_equal(const std::string& name, const Tensor& a, const Tensor& b);

}  // namespace piconn
