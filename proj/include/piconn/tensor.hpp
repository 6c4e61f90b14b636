#pragma once

#include <cstdint>
#include <vector>

#include "piconn/linalg.hpp"
#include "piconn/scalar.hpp"

namespace piconn {

// Variance of one tensor slot.  Slot order follows argument order: the
// component T(i, j, ..) is the value of the tensor on (e_i, e_j, ..), and for
// fields with vector values the final Upper slot carries the component index.
enum class Slot : std::uint8_t { Lower, Upper };

class Tensor {
  public:
    Tensor() = default;
    Tensor(int dim, std::vector<Slot> slots);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(slots_.size()); }
    const std::vector<Slot>& slots() const { return slots_; }

    const Scalar& at(const std::vector<int>& index) const { return data_[flat(index)]; }
    Scalar& at(const std::vector<int>& index) { return data_[flat(index)]; }
    template <typename... I>
    const Scalar& at(I... parts) const {
        return data_[flat({static_cast<int>(parts)...})];
    }
    template <typename... I>
    Scalar& at(I... parts) {
        return data_[flat({static_cast<int>(parts)...})];
    }

    bool is_zero() const;
    bool operator==(const Tensor& other) const;
    bool operator!=(const Tensor& other) const { return !(*this == other); }

    Tensor operator+(const Tensor& other) const;
    Tensor operator-(const Tensor& other) const;
    Tensor operator-() const;
    Tensor scaled(const Rational& factor) const;
    Tensor scaled(const Scalar& factor) const;
    Tensor substituted(const Substitution& subst) const;

    // Converts an Upper slot to Lower with the metric, or back with its
    // inverse; the other slots are untouched.
    Tensor lower(int slot, const Mat& g) const;
    Tensor raise(int slot, const Mat& g_inv) const;

    // Natural trace of one Upper against one Lower slot.
    Tensor contract(int upper_slot, int lower_slot) const;

  private:
    size_t flat(const std::vector<int>& index) const;

    int dim_ = 0;
    std::vector<Slot> slots_;
    std::vector<Scalar> data_;
};

// Odometer step through all multi-indices of the given width; returns false
// after the last one.  Start from an all-zero vector.
bool next_index(std::vector<int>& index, int dim);

// Metric trace g^{ab} T(..a..b..) over two Lower slots.
Tensor trace_with_metric(const Tensor& t, const Mat& g_inv, int slot_a, int slot_b);

// Contracts one slot with a coordinate column (for Lower slots this is
// evaluation on a vector argument).
Tensor partial_apply(const Tensor& t, int slot, const Vec& x);

// Value of a fully covariant tensor on coordinate columns.
Scalar eval_form(const Tensor& t, const std::vector<Vec>& args);

// Value of a tensor whose final slot is Upper (a vector-valued field) on
// columns filling the Lower slots; the result is the coordinate column.
Vec eval_vector_field(const Tensor& t, const std::vector<Vec>& args);

}  // namespace piconn
