#include <doctest.h>

#include <random>
#include <vector>

#include "piconn/scalar.hpp"

using namespace piconn;

namespace {

ParamTablePtr table() {
    static ParamTablePtr t = make_param_table({"l1", "l2", "l3", "l4", "m1", "m2"});
    return t;
}

Scalar var(const char* name) { return Scalar::variable(table(), name); }

// Small random polynomial: up to four terms, coefficients in [-5,5],
// up to two variable factors per term.
Scalar random_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> nterms(0, 3);
    std::uniform_int_distribution<int> nvars(0, 2);
    std::uniform_int_distribution<int> which(0, table()->size() - 1);
    Scalar out;
    const int terms = nterms(rng) + 1;
    for (int t = 0; t < terms; ++t) {
        Scalar term(make_rational(coeff(rng)));
        const int vars = nvars(rng);
        for (int v = 0; v < vars; ++v) term *= var(table()->name(which(rng)).c_str());
        out += term;
    }
    return out;
}

Substitution random_binding(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-7, 7);
    std::uniform_int_distribution<int> den(1, 7);
    std::map<std::string, Rational> bindings;
    for (const auto& name : table()->names())
        bindings[name] = make_rational(num(rng), den(rng));
    return Substitution(table(), bindings);
}

}  // namespace

TEST_CASE("rational arithmetic is exact") {
    const Scalar half(make_rational(1, 2));
    const Scalar third(make_rational(1, 3));
    const Scalar sum = half + third;
    CHECK(sum == Scalar(make_rational(5, 6)));
    CHECK(sum.to_string() == "5/6");
    CHECK(rational_from_string("-14/21") == make_rational(-2, 3));
    CHECK(to_string(make_rational(4, -6)) == "-2/3");
}

TEST_CASE("polynomial product expands and cancels") {
    const Scalar l1 = var("l1");
    const Scalar l3 = var("l3");
    const Scalar product = (l1 + l3) * (l1 - l3);
    CHECK(product == l1 * l1 - l3 * l3);
    CHECK(product.to_string() == "l1^2 - l3^2");
    CHECK((product - l1 * l1 + l3 * l3).is_zero());
}

TEST_CASE("canonical printing") {
    CHECK(Scalar().to_string() == "0");
    CHECK((Scalar(2) * var("m1")).to_string() == "2*m1");
    CHECK((var("l1") + var("l3")).to_string() == "l1 + l3");
    CHECK((-var("l1")).to_string() == "-l1");
    CHECK(var("l1").pow(2).to_string() == "l1^2");
    // Graded-lex order: the quadratic term prints before the linear ones.
    CHECK((var("l2") + var("l1") * var("l1")).to_string() == "l1^2 + l2");
    CHECK((var("l1") - Scalar(1)).to_string() == "l1 - 1");
}

TEST_CASE("parser accepts expressions and rejects malformed input") {
    const Scalar parsed = parse_scalar("(l1+l3)/2", table());
    CHECK(parsed == (var("l1") + var("l3")).divided_by(2));
    CHECK(parse_scalar("2*m1", table()) == Scalar(2) * var("m1"));
    CHECK(parse_scalar("-l1", table()) == -var("l1"));
    CHECK(parse_scalar("l1^2", table()) == var("l1") * var("l1"));
    CHECK(parse_scalar("l1*(l2 - 3) + 4/5", table()) ==
          var("l1") * (var("l2") - Scalar(3)) + Scalar(make_rational(4, 5)));
    CHECK(parse_scalar(" 0 ", table()).is_zero());

    CHECK_THROWS_AS((void)parse_scalar("l7", table()), ScalarParseError);
    CHECK_THROWS_AS((void)parse_scalar("l1 +", table()), ScalarParseError);
    CHECK_THROWS_AS((void)parse_scalar("(l1", table()), ScalarParseError);
    CHECK_THROWS_AS((void)parse_scalar("l1 / 0", table()), ScalarParseError);
    CHECK_THROWS_AS((void)parse_scalar("1 / l1", table()), ScalarParseError);
    CHECK_THROWS_AS((void)parse_scalar("l1 ^ l2", table()), ScalarParseError);

    try {
        (void)parse_scalar("l1 + @", table());
        CHECK(false);
    } catch (const ScalarParseError& e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("division is defined only by nonzero rational constants") {
    CHECK(var("l1").divided_by(2) + var("l1").divided_by(2) == var("l1"));
    CHECK_THROWS_AS((void)var("l1").divided_by(0), std::domain_error);
    CHECK_THROWS_AS((void)(var("l1") / var("l2")), std::domain_error);
    CHECK(var("l1") / Scalar(make_rational(1, 4)) == Scalar(4) * var("l1"));
}

TEST_CASE("ring axioms hold on random polynomials") {
    std::mt19937_64 rng(0xC0FFEE);
    for (int round = 0; round < 60; ++round) {
        const Scalar a = random_scalar(rng);
        const Scalar b = random_scalar(rng);
        const Scalar c = random_scalar(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(a + Scalar() == a);
        CHECK(a * Scalar(1) == a);
        CHECK((a * Scalar()).is_zero());
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937_64 rng(0xBEEF);
    for (int round = 0; round < 40; ++round) {
        const Scalar a = random_scalar(rng);
        const Scalar b = random_scalar(rng);
        const Substitution s = random_binding(rng);
        CHECK((a + b).substitute(s) == a.substitute(s) + b.substitute(s));
        CHECK((a * b).substitute(s) == a.substitute(s) * b.substitute(s));
        CHECK(a.substitute(s).is_constant());
    }
}

TEST_CASE("partial substitution keeps the remaining parameters symbolic") {
    const Substitution partial(table(), {{"l1", make_rational(2)}});
    const Scalar value = (var("l1") * var("m1") + var("l3")).substitute(partial);
    CHECK(value == Scalar(2) * var("m1") + var("l3"));
    CHECK_FALSE(value.is_constant());
    CHECK_THROWS_AS(Substitution(table(), {{"zz", make_rational(1)}}), std::invalid_argument);
}

TEST_CASE("printed form parses back to an equal scalar") {
    std::mt19937_64 rng(0xFACADE);
    for (int round = 0; round < 60; ++round) {
        const Scalar a = random_scalar(rng);
        CHECK(parse_scalar(a.to_string(), table()) == a);
    }
}
