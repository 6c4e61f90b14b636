#pragma once

#include <optional>
#include <string>
#include <vector>

#include "piconn/scalar.hpp"

namespace piconn {

// Coordinate column over the exact scalar ring.
using Vec = std::vector<Scalar>;

Vec zero_vec(int dim);
Vec unit_vec(int dim, int index);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scaled(const Vec& a, const Scalar& factor);
bool vec_is_zero(const Vec& a);

// Dense square/rectangular matrix of exact scalars, row-major.
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols);

    static Mat identity(int dim);
    static Mat zero(int dim) { return Mat(dim, dim); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Scalar& at(int r, int c) const { return data_[index(r, c)]; }
    Scalar& at(int r, int c) { return data_[index(r, c)]; }

    Vec column(int c) const;
    Vec row(int r) const;
    Mat transposed() const;
    bool is_zero() const;
    bool operator==(const Mat& other) const;
    bool operator!=(const Mat& other) const { return !(*this == other); }

    Mat operator+(const Mat& other) const;
    Mat operator-(const Mat& other) const;
    Mat operator*(const Mat& other) const;
    Vec apply(const Vec& x) const;  // matrix * column
    Mat scaled(const Scalar& factor) const;
    Mat substituted(const Substitution& subst) const;

  private:
    size_t index(int r, int c) const;

    int rows_ = 0;
    int cols_ = 0;
    std::vector<Scalar> data_;
};

// Exact Gauss-Jordan inverse.  Pivots must be invertible scalars, i.e.
// nonzero rational constants; a symbolic pivot (entry that is neither zero
// nor constant) makes the elimination fail with an explanation, as does a
// singular matrix.
struct InverseResult {
    std::optional<Mat> inverse;
    std::string failure;  // empty on success
};

InverseResult try_invert(const Mat& m);

// Bilinear form value x^T m y.
Scalar bilinear(const Mat& m, const Vec& x, const Vec& y);

}  // namespace piconn
