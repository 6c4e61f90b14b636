#include "piconn/tensor.hpp"

#include <stdexcept>

namespace piconn {

namespace {

size_t power(int base, int exponent) {
    size_t out = 1;
    for (int i = 0; i < exponent; ++i) out *= static_cast<size_t>(base);
    return out;
}

}  // namespace

Tensor::Tensor(int dim, std::vector<Slot> slots)
    : dim_(dim), slots_(std::move(slots)), data_(power(dim, static_cast<int>(slots_.size()))) {
    if (dim <= 0) throw std::invalid_argument("tensor dimension must be positive");
}

size_t Tensor::flat(const std::vector<int>& index) const {
    if (index.size() != slots_.size()) throw std::invalid_argument("tensor index rank mismatch");
    size_t out = 0;
    for (size_t p = 0; p < index.size(); ++p) {
        if (index[p] < 0 || index[p] >= dim_) throw std::out_of_range("tensor index out of range");
        out = out * static_cast<size_t>(dim_) + static_cast<size_t>(index[p]);
    }
    return out;
}

bool Tensor::is_zero() const {
    for (const auto& s : data_)
        if (!s.is_zero()) return false;
    return true;
}

bool Tensor::operator==(const Tensor& other) const {
    if (dim_ != other.dim_ || slots_ != other.slots_) return false;
    for (size_t i = 0; i < data_.size(); ++i)
        if (data_[i] != other.data_[i]) return false;
    return true;
}

Tensor Tensor::operator+(const Tensor& other) const {
    if (dim_ != other.dim_ || slots_ != other.slots_)
        throw std::invalid_argument("tensor shape mismatch");
    Tensor out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
    return out;
}

Tensor Tensor::operator-(const Tensor& other) const {
    if (dim_ != other.dim_ || slots_ != other.slots_)
        throw std::invalid_argument("tensor shape mismatch");
    Tensor out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
    return out;
}

Tensor Tensor::operator-() const {
    Tensor out = *this;
    for (auto& s : out.data_) s = -s;
    return out;
}

Tensor Tensor::scaled(const Rational& factor) const {
    Tensor out = *this;
    for (auto& s : out.data_) s = s.scaled(factor);
    return out;
}

Tensor Tensor::scaled(const Scalar& factor) const {
    Tensor out = *this;
    for (auto& s : out.data_) s = s * factor;
    return out;
}

Tensor Tensor::substituted(const Substitution& subst) const {
    Tensor out = *this;
    for (auto& s : out.data_) s = s.substitute(subst);
    return out;
}

Tensor Tensor::lower(int slot, const Mat& g) const {
    if (slot < 0 || slot >= rank()) throw std::invalid_argument("tensor slot out of range");
    if (slots_[static_cast<size_t>(slot)] != Slot::Upper)
        throw std::invalid_argument("lower() needs an Upper slot");
    Tensor out(dim_, slots_);
    out.slots_[static_cast<size_t>(slot)] = Slot::Lower;
    std::vector<int> index(static_cast<size_t>(rank()), 0);
    do {
        Scalar sum;
        std::vector<int> src = index;
        const int k = index[static_cast<size_t>(slot)];
        for (int m = 0; m < dim_; ++m) {
            if (g.at(k, m).is_zero()) continue;
            src[static_cast<size_t>(slot)] = m;
            const Scalar& value = at(src);
            if (value.is_zero()) continue;
            sum += g.at(k, m) * value;
        }
        out.at(index) = sum;
    } while (next_index(index, dim_));
    return out;
}

Tensor Tensor::raise(int slot, const Mat& g_inv) const {
    if (slot < 0 || slot >= rank()) throw std::invalid_argument("tensor slot out of range");
    if (slots_[static_cast<size_t>(slot)] != Slot::Lower)
        throw std::invalid_argument("raise() needs a Lower slot");
    Tensor out(dim_, slots_);
    out.slots_[static_cast<size_t>(slot)] = Slot::Upper;
    std::vector<int> index(static_cast<size_t>(rank()), 0);
    do {
        Scalar sum;
        std::vector<int> src = index;
        const int k = index[static_cast<size_t>(slot)];
        for (int m = 0; m < dim_; ++m) {
            if (g_inv.at(k, m).is_zero()) continue;
            src[static_cast<size_t>(slot)] = m;
            const Scalar& value = at(src);
            if (value.is_zero()) continue;
            sum += g_inv.at(k, m) * value;
        }
        out.at(index) = sum;
    } while (next_index(index, dim_));
    return out;
}

Tensor Tensor::contract(int upper_slot, int lower_slot) const {
    if (upper_slot == lower_slot) throw std::invalid_argument("contract needs distinct slots");
    if (upper_slot < 0 || upper_slot >= rank() || lower_slot < 0 || lower_slot >= rank())
        throw std::invalid_argument("tensor slot out of range");
    if (slots_[static_cast<size_t>(upper_slot)] != Slot::Upper ||
        slots_[static_cast<size_t>(lower_slot)] != Slot::Lower)
        throw std::invalid_argument("contract needs one Upper and one Lower slot");

    std::vector<Slot> out_slots;
    for (int p = 0; p < rank(); ++p)
        if (p != upper_slot && p != lower_slot) out_slots.push_back(slots_[static_cast<size_t>(p)]);
    Tensor out(dim_, out_slots);
    if (out_slots.empty()) {
        Scalar sum;
        std::vector<int> src(static_cast<size_t>(rank()), 0);
        for (int m = 0; m < dim_; ++m) {
            src[static_cast<size_t>(upper_slot)] = m;
            src[static_cast<size_t>(lower_slot)] = m;
            sum += at(src);
        }
        out.at(std::vector<int>{}) = sum;
        return out;
    }
    std::vector<int> index(out_slots.size(), 0);
    do {
        Scalar sum;
        std::vector<int> src(static_cast<size_t>(rank()), 0);
        for (int m = 0; m < dim_; ++m) {
            size_t q = 0;
            for (int p = 0; p < rank(); ++p) {
                if (p == upper_slot || p == lower_slot) {
                    src[static_cast<size_t>(p)] = m;
                } else {
                    src[static_cast<size_t>(p)] = index[q++];
                }
            }
            sum += at(src);
        }
        out.at(index) = sum;
    } while (next_index(index, dim_));
    return out;
}

bool next_index(std::vector<int>& index, int dim) {
    for (size_t p = index.size(); p-- > 0;) {
        if (++index[p] < dim) return true;
        index[p] = 0;
    }
    return false;
}

Tensor trace_with_metric(const Tensor& t, const Mat& g_inv, int slot_a, int slot_b) {
    if (slot_a == slot_b) throw std::invalid_argument("trace needs distinct slots");
    if (t.slots().at(static_cast<size_t>(slot_a)) != Slot::Lower ||
        t.slots().at(static_cast<size_t>(slot_b)) != Slot::Lower)
        throw std::invalid_argument("metric trace needs two Lower slots");
    return t.raise(slot_a, g_inv).contract(slot_a, slot_b);
}

Tensor partial_apply(const Tensor& t, int slot, const Vec& x) {
    if (slot < 0 || slot >= t.rank()) throw std::invalid_argument("tensor slot out of range");
    if (static_cast<int>(x.size()) != t.dim()) throw std::invalid_argument("vector size mismatch");

    std::vector<Slot> out_slots;
    for (int p = 0; p < t.rank(); ++p)
        if (p != slot) out_slots.push_back(t.slots()[static_cast<size_t>(p)]);

    std::vector<int> live;  // components of x worth visiting
    for (int m = 0; m < t.dim(); ++m)
        if (!x[static_cast<size_t>(m)].is_zero()) live.push_back(m);

    if (out_slots.empty()) {
        Tensor out(t.dim(), {});
        Scalar sum;
        for (int m : live) sum += x[static_cast<size_t>(m)] * t.at(std::vector<int>{m});
        out.at(std::vector<int>{}) = sum;
        return out;
    }
    Tensor out(t.dim(), out_slots);
    std::vector<int> index(out_slots.size(), 0);
    do {
        Scalar sum;
        std::vector<int> src(static_cast<size_t>(t.rank()), 0);
        for (int m : live) {
            size_t q = 0;
            for (int p = 0; p < t.rank(); ++p) {
                if (p == slot) {
                    src[static_cast<size_t>(p)] = m;
                } else {
                    src[static_cast<size_t>(p)] = index[q++];
                }
            }
            const Scalar& value = t.at(src);
            if (value.is_zero()) continue;
            sum += x[static_cast<size_t>(m)] * value;
        }
        out.at(index) = sum;
    } while (next_index(index, t.dim()));
    return out;
}

Scalar eval_form(const Tensor& t, const std::vector<Vec>& args) {
    if (static_cast<int>(args.size()) != t.rank())
        throw std::invalid_argument("argument count does not match tensor rank");
    for (const auto slot : t.slots())
        if (slot != Slot::Lower) throw std::invalid_argument("eval_form needs a covariant tensor");
    Tensor current = t;
    for (const auto& x : args) current = partial_apply(current, 0, x);
    return current.at(std::vector<int>{});
}

Vec eval_vector_field(const Tensor& t, const std::vector<Vec>& args) {
    if (static_cast<int>(args.size()) != t.rank() - 1)
        throw std::invalid_argument("argument count does not match tensor rank");
    if (t.slots().empty() || t.slots().back() != Slot::Upper)
        throw std::invalid_argument("eval_vector_field needs a final Upper slot");
    for (size_t p = 0; p + 1 < t.slots().size(); ++p)
        if (t.slots()[p] != Slot::Lower)
            throw std::invalid_argument("eval_vector_field needs Lower argument slots");
    Tensor current = t;
    for (const auto& x : args) current = partial_apply(current, 0, x);
    Vec out(static_cast<size_t>(t.dim()));
    for (int k = 0; k < t.dim(); ++k) out[static_cast<size_t>(k)] = current.at(std::vector<int>{k});
    return out;
}

}  // namespace piconn
