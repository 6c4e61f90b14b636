#include <doctest.h>

#include <random>
#include <vector>

#include "piconn/levi_civita.hpp"
#include "piconn/tensor.hpp"

#include "fixture_helpers.hpp"

using namespace piconn;
using testutil::load_fixture;

namespace {

Tensor random_tensor(int dim, std::vector<Slot> slots, const ParamTablePtr& params,
                     std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> which(0, params->size() - 1);
    std::uniform_int_distribution<int> kind(0, 2);
    Tensor t(dim, std::move(slots));
    std::vector<int> index(static_cast<size_t>(t.rank()), 0);
    do {
        switch (kind(rng)) {
            case 0:
                break;  // leave zero
            case 1:
                t.at(index) = Scalar(make_rational(coeff(rng)));
                break;
            default:
                t.at(index) = Scalar(coeff(rng)) *
                              Scalar::variable(params, params->name(which(rng)));
                break;
        }
    } while (next_index(index, dim));
    return t;
}

}  // namespace

TEST_CASE("index odometer walks in lexicographic order") {
    std::vector<int> index{0, 0};
    std::vector<std::vector<int>> seen{index};
    while (next_index(index, 2)) seen.push_back(index);
    const std::vector<std::vector<int>> expected{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(seen == expected);
}

TEST_CASE("contracting the identity endomorphism counts the dimension") {
    const auto inst = load_fixture("EX-L.json");
    Tensor identity(inst.dim(), {Slot::Lower, Slot::Upper});
    for (int i = 0; i < inst.dim(); ++i) identity.at(i, i) = Scalar(1);
    const Tensor trace = identity.contract(1, 0);
    CHECK(trace.rank() == 0);
    CHECK(trace.at(std::vector<int>{}) == Scalar(5));
}

TEST_CASE("the structure endomorphism is traceless") {
    const auto inst = load_fixture("EX-L.json");
    const Tensor phi = phi_as_tensor(inst);
    CHECK(phi.contract(1, 0).at(std::vector<int>{}).is_zero());
}

TEST_CASE("lowering the endomorphism against the identity metric copies components") {
    const auto inst = load_fixture("EX-L.json");
    const Tensor lowered = phi_as_tensor(inst).lower(1, inst.g());
    CHECK(lowered.slots() == std::vector<Slot>{Slot::Lower, Slot::Lower});
    CHECK(lowered.at(1, 3) == Scalar(1));
    CHECK(lowered.at(2, 4) == Scalar(1));
    CHECK(lowered.at(3, 1) == Scalar(1));
    CHECK(lowered.at(4, 2) == Scalar(1));
    CHECK(lowered.at(0, 0).is_zero());
    CHECK(lowered == lowered);  // self-equality sanity
}

TEST_CASE("raise then lower is the identity on random tensors") {
    const auto inst = load_fixture("EX-L.json");
    std::mt19937_64 rng(0xA11CE);
    for (int round = 0; round < 5; ++round) {
        const Tensor t = random_tensor(inst.dim(), {Slot::Lower, Slot::Lower, Slot::Lower},
                                       inst.params(), rng);
        CHECK(t.raise(2, inst.g_inv()).lower(2, inst.g()) == t);
        CHECK(t.raise(0, inst.g_inv()).lower(0, inst.g()) == t);
    }
}

TEST_CASE("tensor arithmetic is componentwise and exact") {
    const auto inst = load_fixture("EX-L.json");
    std::mt19937_64 rng(0xD1CE);
    const Tensor a = random_tensor(inst.dim(), {Slot::Lower, Slot::Lower}, inst.params(), rng);
    const Tensor b = random_tensor(inst.dim(), {Slot::Lower, Slot::Lower}, inst.params(), rng);
    CHECK(a + b - b == a);
    CHECK((a - a).is_zero());
    CHECK(a.scaled(make_rational(2)) == a + a);
    CHECK((-a) + a == Tensor(inst.dim(), {Slot::Lower, Slot::Lower}));
    CHECK(a.scaled(Scalar(3)) == a + a + a);
}

TEST_CASE("partial application slices one slot") {
    const auto inst = load_fixture("EX-L.json");
    std::mt19937_64 rng(0xF00D);
    const Tensor t =
        random_tensor(inst.dim(), {Slot::Lower, Slot::Lower, Slot::Lower}, inst.params(), rng);
    const Tensor sliced = partial_apply(t, 1, inst.basis_vec(3));
    CHECK(sliced.rank() == 2);
    for (int i = 0; i < inst.dim(); ++i)
        for (int k = 0; k < inst.dim(); ++k) CHECK(sliced.at(i, k) == t.at(i, 3, k));

    // Applying a combination is linear in the argument.
    const Vec combo = vec_add(inst.basis_vec(1), vec_scaled(inst.basis_vec(2), Scalar(2)));
    const Tensor combo_slice = partial_apply(t, 1, combo);
    const Tensor expected = partial_apply(t, 1, inst.basis_vec(1)) +
                            partial_apply(t, 1, inst.basis_vec(2)).scaled(make_rational(2));
    CHECK(combo_slice == expected);
}

TEST_CASE("metric trace agrees with explicit summation") {
    const auto inst = load_fixture("EX-L.json");
    std::mt19937_64 rng(0xBEAD);
    const Tensor t =
        random_tensor(inst.dim(), {Slot::Lower, Slot::Lower, Slot::Lower}, inst.params(), rng);
    const Tensor traced = trace_with_metric(t, inst.g_inv(), 0, 1);
    CHECK(traced.rank() == 1);
    for (int k = 0; k < inst.dim(); ++k) {
        Scalar sum;
        for (int a = 0; a < inst.dim(); ++a)
            for (int b = 0; b < inst.dim(); ++b)
                sum += inst.g_inv().at(a, b) * t.at(a, b, k);
        CHECK(traced.at(k) == sum);
    }
}

TEST_CASE("form evaluation is multilinear") {
    const auto inst = load_fixture("EX-L.json");
    std::mt19937_64 rng(0xCAB);
    const Tensor t = random_tensor(inst.dim(), {Slot::Lower, Slot::Lower}, inst.params(), rng);
    const Vec x = inst.basis_vec(1);
    const Vec y = inst.basis_vec(2);
    const Vec z = inst.basis_vec(4);
    const Scalar left = eval_form(t, {vec_add(x, vec_scaled(y, Scalar(5))), z});
    const Scalar right = eval_form(t, {x, z}) + Scalar(5) * eval_form(t, {y, z});
    CHECK(left == right);
}

TEST_CASE("substitution distributes over tensor operations") {
    const auto inst = load_fixture("EX-L.json");
    std::mt19937_64 rng(0x5EED);
    const Tensor a = random_tensor(inst.dim(), {Slot::Lower, Slot::Upper}, inst.params(), rng);
    const Tensor b = random_tensor(inst.dim(), {Slot::Lower, Slot::Upper}, inst.params(), rng);
    const Substitution s(inst.params(), {{"l1", make_rational(2)},
                                         {"l2", make_rational(-1, 3)},
                                         {"l3", make_rational(0)},
                                         {"l4", make_rational(7, 2)},
                                         {"m1", make_rational(1)},
                                         {"m2", make_rational(-5)}});
    CHECK((a + b).substituted(s) == a.substituted(s) + b.substituted(s));
    CHECK(a.contract(1, 0).substituted(s) == a.substituted(s).contract(1, 0));
}

TEST_CASE("shape violations are rejected") {
    const auto inst = load_fixture("EX-L.json");
    Tensor t(inst.dim(), {Slot::Lower, Slot::Upper});
    CHECK_THROWS_AS((void)t.contract(0, 1), std::invalid_argument);  // wrong variance order
    CHECK_THROWS_AS((void)t.lower(0, inst.g()), std::invalid_argument);
    CHECK_THROWS_AS((void)t.raise(1, inst.g_inv()), std::invalid_argument);
}
