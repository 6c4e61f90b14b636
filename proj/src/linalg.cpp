#include "piconn/linalg.hpp"

#include <stdexcept>

namespace piconn {

Vec zero_vec(int dim) { return Vec(static_cast<size_t>(dim)); }

Vec unit_vec(int dim, int index) {
    Vec v = zero_vec(dim);
    v.at(static_cast<size_t>(index)) = Scalar(Rational(1));
    return v;
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vec vec_scaled(const Vec& a, const Scalar& factor) {
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * factor;
    return out;
}

bool vec_is_zero(const Vec& a) {
    for (const auto& s : a)
        if (!s.is_zero()) return false;
    return true;
}

Mat::Mat(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
}

size_t Mat::index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("matrix index out of range");
    return static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c);
}

Mat Mat::identity(int dim) {
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = Scalar(Rational(1));
    return m;
}

Vec Mat::column(int c) const {
    Vec v(static_cast<size_t>(rows_));
    for (int r = 0; r < rows_; ++r) v[static_cast<size_t>(r)] = at(r, c);
    return v;
}

Vec Mat::row(int r) const {
    Vec v(static_cast<size_t>(cols_));
    for (int c = 0; c < cols_; ++c) v[static_cast<size_t>(c)] = at(r, c);
    return v;
}

Mat Mat::transposed() const {
    Mat m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

bool Mat::is_zero() const {
    for (const auto& s : data_)
        if (!s.is_zero()) return false;
    return true;
}

bool Mat::operator==(const Mat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (size_t i = 0; i < data_.size(); ++i)
        if (data_[i] != other.data_[i]) return false;
    return true;
}

Mat Mat::operator+(const Mat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix shape mismatch");
    Mat m(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + other.data_[i];
    return m;
}

Mat Mat::operator-(const Mat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix shape mismatch");
    Mat m(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - other.data_[i];
    return m;
}

Mat Mat::operator*(const Mat& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix shape mismatch");
    Mat m(rows_, other.cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int k = 0; k < cols_; ++k) {
            const Scalar& lhs = at(r, k);
            if (lhs.is_zero()) continue;
            for (int c = 0; c < other.cols_; ++c) {
                const Scalar& rhs = other.at(k, c);
                if (rhs.is_zero()) continue;
                m.at(r, c) += lhs * rhs;
            }
        }
    }
    return m;
}

Vec Mat::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("vector size mismatch");
    Vec out(static_cast<size_t>(rows_));
    for (int c = 0; c < cols_; ++c) {
        if (x[static_cast<size_t>(c)].is_zero()) continue;
        for (int r = 0; r < rows_; ++r) {
            const Scalar& entry = at(r, c);
            if (entry.is_zero()) continue;
            out[static_cast<size_t>(r)] += entry * x[static_cast<size_t>(c)];
        }
    }
    return out;
}

Mat Mat::scaled(const Scalar& factor) const {
    Mat m(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * factor;
    return m;
}

Mat Mat::substituted(const Substitution& subst) const {
    Mat m(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i].substitute(subst);
    return m;
}

InverseResult try_invert(const Mat& m) {
    if (m.rows() != m.cols()) return {std::nullopt, "matrix is not square"};
    const int n = m.rows();
    Mat work = m;
    Mat inv = Mat::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot_row = -1;
        int symbolic_row = -1;
        for (int r = col; r < n; ++r) {
            const Scalar& entry = work.at(r, col);
            if (entry.is_zero()) continue;
            if (entry.is_constant()) {
                pivot_row = r;
                break;
            }
            if (symbolic_row < 0) symbolic_row = r;
        }
        if (pivot_row < 0) {
            if (symbolic_row >= 0)
                return {std::nullopt,
                        "pivot at (" + std::to_string(symbolic_row) + "," + std::to_string(col) +
                            ") is not a rational constant: " +
                            work.at(symbolic_row, col).to_string()};
            return {std::nullopt, "matrix is singular (no pivot in column " +
                                      std::to_string(col) + ")"};
        }
        const auto pivot_value = work.at(pivot_row, col).constant_value();
        if (pivot_row != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(work.at(pivot_row, c), work.at(col, c));
                std::swap(inv.at(pivot_row, c), inv.at(col, c));
            }
        }
        const Rational inv_pivot = Rational(1) / *pivot_value;
        for (int c = 0; c < n; ++c) {
            work.at(col, c) = work.at(col, c).scaled(inv_pivot);
            inv.at(col, c) = inv.at(col, c).scaled(inv_pivot);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Scalar factor = work.at(r, col);
            if (factor.is_zero()) continue;
            for (int c = 0; c < n; ++c) {
                work.at(r, c) -= factor * work.at(col, c);
                inv.at(r, c) -= factor * inv.at(col, c);
            }
        }
    }
    return {std::move(inv), ""};
}

Scalar bilinear(const Mat& m, const Vec& x, const Vec& y) {
    if (static_cast<int>(x.size()) != m.rows() || static_cast<int>(y.size()) != m.cols())
        throw std::invalid_argument("vector size mismatch");
    Scalar out;
    for (int r = 0; r < m.rows(); ++r) {
        if (x[static_cast<size_t>(r)].is_zero()) continue;
        for (int c = 0; c < m.cols(); ++c) {
            if (y[static_cast<size_t>(c)].is_zero() || m.at(r, c).is_zero()) continue;
            out += x[static_cast<size_t>(r)] * m.at(r, c) * y[static_cast<size_t>(c)];
        }
    }
    return out;
}

}  // namespace piconn
