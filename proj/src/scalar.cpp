#include "piconn/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace piconn {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational rational_from_string(const std::string& text) {
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("not a rational literal: '" + text + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        throw std::domain_error("rational with zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

ParamTable::ParamTable(std::vector<std::string> names) : names_(std::move(names)) {
    for (size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw std::invalid_argument("empty parameter name");
        for (size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate parameter name '" + names_[i] + "'");
    }
}

std::optional<int> ParamTable::index_of(std::string_view name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

ParamTablePtr make_param_table(std::vector<std::string> names) {
    return std::make_shared<const ParamTable>(std::move(names));
}

int Monomial::degree() const {
    int d = 0;
    for (auto e : exp) d += e;
    return d;
}

bool MonomialBefore::operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    const size_t n = std::max(a.exp.size(), b.exp.size());
    for (size_t i = 0; i < n; ++i) {
        const std::int32_t ea = i < a.exp.size() ? a.exp[i] : 0;
        const std::int32_t eb = i < b.exp.size() ? b.exp[i] : 0;
        if (ea != eb) return ea > eb;
    }
    return false;
}

Scalar::Scalar(const Rational& value) {
    if (value != 0) terms_.emplace(Monomial{}, value);
}

Scalar::Scalar(long value) : Scalar(Rational(value)) {}

Scalar Scalar::variable(const ParamTablePtr& table, std::string_view name) {
    if (!table) throw std::invalid_argument("variable requires a parameter table");
    const auto idx = table->index_of(name);
    if (!idx)
        throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
    Scalar s;
    s.table_ = table;
    Monomial m;
    m.exp.assign(static_cast<size_t>(table->size()), 0);
    m.exp[static_cast<size_t>(*idx)] = 1;
    s.terms_.emplace(std::move(m), Rational(1));
    return s;
}

bool Scalar::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.is_constant();
}

std::optional<Rational> Scalar::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first.is_constant())
        return terms_.begin()->second;
    return std::nullopt;
}

int Scalar::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

void Scalar::add_term(const Monomial& m, const Rational& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

ParamTablePtr Scalar::unify_tables(const Scalar& a, const Scalar& b) {
    if (!a.table_) return b.table_;
    if (!b.table_) return a.table_;
    if (a.table_ == b.table_ || *a.table_ == *b.table_) return a.table_;
    throw std::invalid_argument("scalars belong to different parameter tables");
}

Scalar Scalar::rebased(const ParamTablePtr& table) const {
    if (table_ == table) return *this;
    if (table_ && table && *table_ == *table) {
        Scalar s = *this;
        s.table_ = table;
        return s;
    }
    if (!table_) {
        Scalar s;
        s.table_ = table;
        const size_t n = table ? static_cast<size_t>(table->size()) : 0;
        for (const auto& [m, c] : terms_) {
            Monomial grown = m;
            grown.exp.resize(n, 0);
            s.terms_.emplace(std::move(grown), c);
        }
        return s;
    }
    throw std::invalid_argument("scalars belong to different parameter tables");
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    for (auto& [m, c] : s.terms_) c = -c;
    return s;
}

Scalar Scalar::operator+(const Scalar& other) const {
    const ParamTablePtr table = unify_tables(*this, other);
    Scalar result = rebased(table);
    const Scalar rhs = other.rebased(table);
    for (const auto& [m, c] : rhs.terms_) result.add_term(m, c);
    return result;
}

Scalar Scalar::operator-(const Scalar& other) const { return *this + (-other); }

Scalar Scalar::operator*(const Scalar& other) const {
    const ParamTablePtr table = unify_tables(*this, other);
    const Scalar lhs = rebased(table);
    const Scalar rhs = other.rebased(table);
    Scalar result;
    result.table_ = table;
    for (const auto& [ma, ca] : lhs.terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            Monomial m = ma;
            for (size_t i = 0; i < mb.exp.size(); ++i) m.exp[i] += mb.exp[i];
            result.add_term(m, ca * cb);
        }
    }
    return result;
}

Scalar& Scalar::operator+=(const Scalar& other) { return *this = *this + other; }
Scalar& Scalar::operator-=(const Scalar& other) { return *this = *this - other; }
Scalar& Scalar::operator*=(const Scalar& other) { return *this = *this * other; }

Scalar Scalar::scaled(const Rational& factor) const {
    if (factor == 0) {
        Scalar zero;
        zero.table_ = table_;
        return zero;
    }
    Scalar s = *this;
    for (auto& [m, c] : s.terms_) c *= factor;
    return s;
}

Scalar Scalar::divided_by(const Rational& divisor) const {
    if (divisor == 0) throw std::domain_error("division by zero");
    return scaled(Rational(1) / divisor);
}

Scalar Scalar::operator/(const Scalar& divisor) const {
    const auto value = divisor.constant_value();
    if (!value) throw std::domain_error("division by a non-constant scalar");
    return divided_by(*value);
}

Scalar Scalar::pow(unsigned exponent) const {
    Scalar result{Rational(1)};
    Scalar base = *this;
    while (exponent > 0) {
        if (exponent & 1u) result *= base;
        exponent >>= 1u;
        if (exponent > 0) base *= base;
    }
    return result;
}

bool Scalar::operator==(const Scalar& other) const {
    ParamTablePtr table;
    try {
        table = unify_tables(*this, other);
    } catch (const std::invalid_argument&) {
        const auto a = constant_value();
        const auto b = other.constant_value();
        return a && b && *a == *b;
    }
    return rebased(table).terms_ == other.rebased(table).terms_;
}

std::string Scalar::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = c < 0;
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        const Rational mag = negative ? Rational(-c) : c;
        std::string mono;
        for (size_t i = 0; i < m.exp.size(); ++i) {
            if (m.exp[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += table_->name(static_cast<int>(i));
            if (m.exp[i] > 1) mono += "^" + std::to_string(m.exp[i]);
        }
        if (mono.empty()) {
            out += piconn::to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += piconn::to_string(mag) + "*" + mono;
        }
    }
    return out;
}

Substitution::Substitution(const ParamTablePtr& table, std::map<std::string, Rational> bindings)
    : table_(table), bindings_(std::move(bindings)) {
    for (const auto& [name, value] : bindings_) {
        (void)value;
        if (!table_ || !table_->index_of(name))
            throw std::invalid_argument("substitution binds unknown parameter '" + name + "'");
    }
}

std::optional<Rational> Substitution::value_of(std::string_view name) const {
    auto it = bindings_.find(std::string(name));
    if (it == bindings_.end()) return std::nullopt;
    return it->second;
}

Scalar Scalar::substitute(const Substitution& subst) const {
    if (!table_ || terms_.empty()) return *this;
    if (subst.table() && !(subst.table() == table_ || *subst.table() == *table_))
        throw std::invalid_argument("substitution belongs to a different parameter table");
    std::vector<std::optional<Rational>> bound(static_cast<size_t>(table_->size()));
    for (int i = 0; i < table_->size(); ++i)
        bound[static_cast<size_t>(i)] = subst.value_of(table_->name(i));

    Scalar result;
    result.table_ = table_;
    for (const auto& [m, c] : terms_) {
        Rational coeff = c;
        Monomial rest = m;
        for (size_t i = 0; i < m.exp.size(); ++i) {
            if (m.exp[i] == 0 || !bound[i]) continue;
            Rational power(1);
            for (std::int32_t k = 0; k < m.exp[i]; ++k) power *= *bound[i];
            coeff *= power;
            rest.exp[i] = 0;
        }
        result.add_term(rest, coeff);
    }
    return result;
}

namespace {

struct Parser {
    std::string_view text;
    const ParamTablePtr& table;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    Scalar parse_expression() {
        Scalar value = parse_term();
        while (true) {
            const char c = peek();
            if (c == '+') {
                ++pos;
                value += parse_term();
            } else if (c == '-') {
                ++pos;
                value -= parse_term();
            } else {
                return value;
            }
        }
    }

    Scalar parse_term() {
        Scalar value = parse_factor();
        while (true) {
            const char c = peek();
            if (c == '*') {
                ++pos;
                value *= parse_factor();
            } else if (c == '/') {
                const size_t op_pos = pos;
                ++pos;
                const Scalar divisor = parse_factor();
                const auto divisor_value = divisor.constant_value();
                if (!divisor_value)
                    throw ScalarParseError("division by a non-constant expression", op_pos);
                if (*divisor_value == 0) throw ScalarParseError("division by zero", op_pos);
                value = value.divided_by(*divisor_value);
            } else {
                return value;
            }
        }
    }

    Scalar parse_factor() {
        if (peek() == '-') {
            ++pos;
            return -parse_factor();
        }
        if (peek() == '+') {
            ++pos;
            return parse_factor();
        }
        return parse_power();
    }

    Scalar parse_power() {
        Scalar base = parse_atom();
        if (peek() == '^') {
            const size_t op_pos = pos;
            ++pos;
            skip_ws();
            const size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) throw ScalarParseError("expected integer exponent", op_pos);
            if (pos - start > 6) throw ScalarParseError("exponent too large", start);
            const unsigned long e = std::stoul(std::string(text.substr(start, pos - start)));
            if (e == 0) throw ScalarParseError("exponent must be positive", start);
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Scalar parse_atom() {
        skip_ws();
        if (pos >= text.size()) throw ScalarParseError("unexpected end of expression", pos);
        const char c = text[pos];
        if (c == '(') {
            const size_t open_pos = pos;
            ++pos;
            Scalar inner = parse_expression();
            if (!consume(')')) throw ScalarParseError("unbalanced parenthesis", open_pos);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            const Rational value(mpz_class(std::string(text.substr(start, pos - start)), 10));
            Scalar s{value};
            return s;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            const std::string name(text.substr(start, pos - start));
            if (!table || !table->index_of(name))
                throw ScalarParseError("unknown parameter '" + name + "'", start);
            return Scalar::variable(table, name);
        }
        throw ScalarParseError(std::string("unexpected character '") + c + "'", pos);
    }
};

}  // namespace

Scalar parse_scalar(std::string_view text, const ParamTablePtr& table) {
    Parser parser{text, table};
    Scalar value = parser.parse_expression();
    if (!parser.at_end())
        throw ScalarParseError(
            std::string("unexpected character '") + text[parser.pos] + "'", parser.pos);
    return value;
}

}  // namespace piconn
