#include "piconn/checks.hpp"

namespace piconn {

CheckResult check_tensor_zero(const std::string& name, const Tensor& t) {
    std::vector<int> index(static_cast<size_t>(t.rank()), 0);
    if (t.rank() == 0) {
        const Scalar& v = t.at(index);
        if (v.is_zero()) return CheckResult::ok(name);
        return CheckResult::fail(name, {}, v.to_string());
    }
    do {
        const Scalar& v = t.at(index);
        if (!v.is_zero()) return CheckResult::fail(name, index, v.to_string());
    } while (next_index(index, t.dim()));
    return CheckResult::ok(name);
}

CheckResult check_tensor_equal(const std::string& name, const Tensor& a, const Tensor& b) {
    if (a.dim() != b.dim() || a.slots() != b.slots())
        return CheckResult::fail(name, {}, "", "tensor shape mismatch");
    return check_tensor_zero(name, a - b);
}

}  // namespace piconn
