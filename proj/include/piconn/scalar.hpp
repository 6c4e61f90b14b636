#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace piconn {

// Exact rational numbers (arbitrary precision, always canonicalized).
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational rational_from_string(const std::string& text);
std::string to_string(const Rational& q);

// The ordered list of parameter names of one problem instance.  The
// declaration order fixes the canonical monomial order, so every scalar
// belonging to the instance shares one table.
class ParamTable {
  public:
    explicit ParamTable(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
    std::optional<int> index_of(std::string_view name) const;

    bool operator==(const ParamTable& other) const { return names_ == other.names_; }

  private:
    std::vector<std::string> names_;
};

using ParamTablePtr = std::shared_ptr<const ParamTable>;

ParamTablePtr make_param_table(std::vector<std::string> names);

// Exponent vector over the parameters of one table; size always equals the
// table size (zero for table-free constants).
struct Monomial {
    std::vector<std::int32_t> exp;

    int degree() const;
    bool is_constant() const { return degree() == 0; }
    bool operator==(const Monomial& other) const { return exp == other.exp; }
};

// Strict weak order placing higher graded-lexicographic monomials first, so
// map iteration prints leading terms before trailing ones.
struct MonomialBefore {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// A polynomial over the rationals in the instance parameters.  This is the
// only scalar domain of the library: every value is exact and two values are
// equal iff their canonical forms coincide.  Division is defined only by
// nonzero rational constants.
class Scalar {
  public:
    Scalar() = default;  // zero
    explicit Scalar(const Rational& value);
    explicit Scalar(long value);

    static Scalar constant(const Rational& value) { return Scalar(value); }
    static Scalar variable(const ParamTablePtr& table, std::string_view name);

    const ParamTablePtr& table() const { return table_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // The rational value when is_constant(); nullopt otherwise.
    std::optional<Rational> constant_value() const;
    int degree() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& other) const;
    Scalar operator-(const Scalar& other) const;
    Scalar operator*(const Scalar& other) const;
    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Scalar& other);

    Scalar scaled(const Rational& factor) const;
    // Throws std::domain_error when the divisor is zero.
    Scalar divided_by(const Rational& divisor) const;
    // Division by a scalar is defined only when the divisor is a nonzero
    // constant; throws std::domain_error otherwise.
    Scalar operator/(const Scalar& divisor) const;
    Scalar pow(unsigned exponent) const;

    bool operator==(const Scalar& other) const;
    bool operator!=(const Scalar& other) const { return !(*this == other); }

    std::string to_string() const;

    // Replaces every bound parameter by its rational value; unbound
    // parameters stay symbolic, so a partial substitution yields another
    // polynomial and a full one yields a constant.
    Scalar substitute(const class Substitution& subst) const;

  private:
    friend class Substitution;

    using TermMap = std::map<Monomial, Rational, MonomialBefore>;

    ParamTablePtr table_;  // null for table-free constants
    TermMap terms_;        // canonical: no zero coefficients

    void add_term(const Monomial& m, const Rational& coeff);
    static ParamTablePtr unify_tables(const Scalar& a, const Scalar& b);
    Scalar rebased(const ParamTablePtr& table) const;
};

inline Scalar operator*(const Rational& factor, const Scalar& s) { return s.scaled(factor); }

// A set of parameter-name -> rational bindings validated against a table.
class Substitution {
  public:
    // Throws std::invalid_argument naming the first binding that is not a
    // declared parameter of the table.
    Substitution(const ParamTablePtr& table, std::map<std::string, Rational> bindings);

    const ParamTablePtr& table() const { return table_; }
    const std::map<std::string, Rational>& bindings() const { return bindings_; }
    bool binds_all() const { return table_ && static_cast<int>(bindings_.size()) == table_->size(); }
    std::optional<Rational> value_of(std::string_view name) const;

  private:
    ParamTablePtr table_;
    std::map<std::string, Rational> bindings_;
};

// Error raised by parse_scalar, carrying the byte offset of the problem.
class ScalarParseError : public std::runtime_error {
  public:
    ScalarParseError(const std::string& message, size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}
    size_t position() const { return position_; }

  private:
    size_t position_;
};

// Parses "+ - * / ( )" expressions over integers and declared parameter
// names; "/" only by (sub)expressions that evaluate to nonzero rational
// constants.  "name^k" with a positive integer k is accepted as shorthand
// for repeated multiplication.  The printed form of any Scalar parses back
// to an equal Scalar.
Scalar parse_scalar(std::string_view text, const ParamTablePtr& table);

}  // namespace piconn
