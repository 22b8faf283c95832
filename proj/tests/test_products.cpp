#include <catch2/catch_amalgamated.hpp>

#include "cupforge/constructions.hpp"
#include "oracles.hpp"

using namespace cupforge;

namespace {

CupStructure circle_factor(std::size_t n) {
    AbelianGroup g({unsigned(n)});
    BitVector c(n), cin(n), cout(n);
    c.set(0, true);           // 1
    c.set(1, true);           // x
    cin.set(0, true);         // in = {1}
    cout.set(1, true);        // out = {x}
    return group_algebra_complex(g, c, cin, cout);
}

// tensor basis vector u (x) v for a two-factor complex at degree d1 + d2
BitVector tensor_vec(const TensorCupComplex& t, int d1, const BitVector& u, int d2,
                     const BitVector& v) {
    BitVector r(t.complex().dim(d1 + d2));
    for (std::size_t i : u.support())
        for (std::size_t j : v.support()) {
            TensorCupComplex::Elem e{std::uint32_t((d1 ? 1 : 0) | (d2 ? 2 : 0)), {i, j}};
            r.flip(t.index_of(e));
        }
    return r;
}

BitVector random_vec(std::mt19937& rng, std::size_t n, double density = 0.4) {
    std::bernoulli_distribution on(density);
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (on(rng)) v.set(i, true);
    return v;
}

}  // namespace

TEST_CASE("abelian group arithmetic and monomial text") {
    AbelianGroup g({6, 12});
    CHECK(g.size() == 72);
    std::size_t a = g.from_coords({3, 2}), b = g.from_coords({4, 11});
    CHECK(g.coords(g.mul(a, b)) == std::vector<unsigned>{1, 1});
    CHECK(g.mul(a, g.inv(a)) == g.identity());
    CHECK(g.from_coords({-3, -2}) == g.inv(a));
    CHECK(monomial_str(g, a) == "x^3*y^2");
    CHECK(monomial_str(g, g.identity()) == "1");
    CHECK(parse_monomial(g, "x^3*y^2") == a);
    CHECK(parse_monomial(g, "x^-3*y^-2") == g.inv(a));
    CHECK(parse_monomial(g, "1") == g.identity());
    CHECK(parse_monomial(g, "x*x^2") == g.from_coords({3, 0}));
    CHECK_THROWS_AS(parse_monomial(g, "q^2"), std::invalid_argument);

    BitVector v = parse_algebra(g, "x^3*y^2 + x + 1");
    CHECK(v.popcount() == 3);
    CHECK(parse_algebra(g, algebra_str(g, v)) == v);
    CHECK(translate_left(g, a, parse_algebra(g, "1")) == parse_algebra(g, "x^3*y^2"));
    CHECK(translate_right(g, parse_algebra(g, "x + y"), a) ==
          parse_algebra(g, "x^4*y^2 + x^3*y^3"));
    CHECK(invert_support(g, parse_algebra(g, "x + 1")) == parse_algebra(g, "x^-1 + 1"));
}

TEST_CASE("group algebra complex matches the hand-built cycle") {
    auto cs = circle_factor(5);
    CHECK(cs.checks() == 5);
    CHECK(cs.bits() == 5);
    CHECK(cs.complex().validate().empty());
    CHECK(validate_preorientation(cs.complex(), cs.orientation()).empty());
    CHECK(check_nonoverlap(cs).ok);
    CHECK(cs.integral_defined());
    for (int lambda : {1, 2, 3}) CHECK(check_integrated_leibniz(cs, lambda).ok);
    // delta(c(1)) = b(1) + b(x), with in = b(1) and out = b(x)
    long row = cs.complex().index_of(0, BasisLabel::atom("c(1)"));
    REQUIRE(row >= 0);
    long b1 = cs.complex().index_of(1, BasisLabel::atom("b(1)"));
    long bx = cs.complex().index_of(1, BasisLabel::atom("b(x)"));
    CHECK(cs.delta_of(std::size_t(row)).get(std::size_t(b1)));
    CHECK(cs.delta_of(std::size_t(row)).get(std::size_t(bx)));
    CHECK(cs.orientation().in[std::size_t(row)].get(std::size_t(b1)));
    CHECK(cs.orientation().out[std::size_t(row)].get(std::size_t(bx)));
    CHECK_THROWS_AS(group_algebra_complex(AbelianGroup({4}), parse_algebra(AbelianGroup({4}), "1 + x"),
                                          parse_algebra(AbelianGroup({4}), "x^2"), BitVector(4)),
                    std::invalid_argument);
}

TEST_CASE("two-factor tensor of circles is a torus") {
    for (std::size_t L : {2u, 3u}) {
        TensorCupComplex t({circle_factor(L), circle_factor(L)});
        CHECK(t.lambda() == 2);
        CHECK(t.complex().dim(0) == L * L);
        CHECK(t.complex().dim(1) == 2 * L * L);
        CHECK(t.complex().dim(2) == L * L);
        CHECK(t.complex().validate().empty());
        CHECK(t.complex().betti(0) == 1);
        CHECK(t.complex().betti(1) == 2);
        CHECK(t.complex().betti(2) == 1);
        CHECK(t.integral_defined());
    }
}

TEST_CASE("three-factor tensor has the cohomology of the three-torus") {
    TensorCupComplex t({circle_factor(2), circle_factor(2), circle_factor(2)});
    CHECK(t.complex().dim(1) == 3 * 8);
    CHECK(t.complex().validate().empty());
    CHECK(t.complex().betti(0) == 1);
    CHECK(t.complex().betti(1) == 3);
    CHECK(t.complex().betti(2) == 3);
    CHECK(t.complex().betti(3) == 1);
}

TEST_CASE("tensor cup is componentwise on vectors") {
    std::mt19937 rng(11);
    TensorCupComplex t({circle_factor(3), circle_factor(4)});
    const auto& f0 = t.factor(0);
    const auto& f1 = t.factor(1);
    for (int trial = 0; trial < 60; ++trial) {
        int p1 = trial % 2, p2 = (trial / 2) % 2, q1 = (trial / 4) % 2, q2 = (trial / 8) % 2;
        BitVector u1 = random_vec(rng, p1 ? f0.bits() : f0.checks());
        BitVector u2 = random_vec(rng, p2 ? f1.bits() : f1.checks());
        BitVector v1 = random_vec(rng, q1 ? f0.bits() : f0.checks());
        BitVector v2 = random_vec(rng, q2 ? f1.bits() : f1.checks());
        BitVector lhs = t.cup(p1 + p2, tensor_vec(t, p1, u1, p2, u2), q1 + q2,
                              tensor_vec(t, q1, v1, q2, v2));
        BitVector rhs = tensor_vec(t, p1 + q1, f0.cup(p1, u1, q1, v1), p2 + q2,
                                   f1.cup(p2, u2, q2, v2));
        // degree collisions inside one factor vanish on both sides
        if (p1 + q1 > 1 || p2 + q2 > 1) {
            CHECK(lhs.none());
        } else {
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("tensor integral is the weight parity and respects coboundaries") {
    TensorCupComplex t({circle_factor(3), circle_factor(3)});
    std::mt19937 rng(17);
    BitVector top = random_vec(rng, t.complex().dim(2));
    CHECK(t.integral_top(top) == (top.popcount() % 2 == 1));
    // integral kills coboundaries of degree-1 cochains
    for (int trial = 0; trial < 20; ++trial) {
        BitVector v = random_vec(rng, t.complex().dim(1));
        CHECK_FALSE(t.integral_top(t.complex().apply_delta(1, v)));
    }
}

TEST_CASE("balanced pair of circles over the full group is free and small") {
    AbelianGroup g({4});
    TensorCupComplex t({circle_factor(4), circle_factor(4)});
    auto action = balanced_pair_action(g, t);
    CHECK(check_action_compatibility(t, action).empty());
    BalancedCupComplex b(t, action);
    CHECK(b.is_free());
    CHECK(b.complex().dim(0) == 4);
    CHECK(b.complex().dim(1) == 8);
    CHECK(b.complex().dim(2) == 4);
    CHECK(b.complex().validate().empty());
    // projection commutes with coboundaries on random tensor cochains
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        BitVector v = random_vec(rng, t.complex().dim(1));
        CHECK(b.project(2, t.complex().apply_delta(1, v)) ==
              b.complex().apply_delta(1, b.project(1, v)));
    }
}

TEST_CASE("balanced cup is independent of representatives and of side") {
    AbelianGroup g({2, 2});
    BitVector c = parse_algebra(g, "1 + x + y + x*y");  // full group sum, even weight
    BitVector cin = parse_algebra(g, "x");
    BitVector cout = parse_algebra(g, "y");
    auto f = group_algebra_complex(g, c, cin, cout);
    TensorCupComplex t({f, f});
    BalancedCupComplex b(t, balanced_pair_action(g, t));
    REQUIRE(b.is_free());

    std::mt19937 rng(31);
    std::size_t n = b.group().size();
    for (int trial = 0; trial < 40; ++trial) {
        int p = trial % 2, q = (trial / 2) % 2;
        std::uniform_int_distribution<std::size_t> pick_p(0, b.complex().dim(p) - 1);
        std::uniform_int_distribution<std::size_t> pick_q(0, b.complex().dim(q) - 1);
        std::size_t i = pick_p(rng), j = pick_q(rng);
        BitVector base = b.cup_vec(p, i, q, j);

        // replace the left representative by another orbit member
        std::uniform_int_distribution<std::size_t> pick_h(0, n - 1);
        std::size_t other = b.act(pick_h(rng), p, b.rep_of(p, i));
        BitVector alt(b.complex().dim(p + q));
        for (std::size_t h = 0; h < n; ++h)
            if (auto m = t.cup_monomial(p, other, q, b.act(h, q, b.rep_of(q, j))))
                alt.flip(b.orbit_of(p + q, *m));
        CHECK(alt == base);

        // sum over the left orbit against a fixed right representative
        BitVector flipped(b.complex().dim(p + q));
        for (std::size_t h = 0; h < n; ++h)
            if (auto m = t.cup_monomial(p, b.act(h, p, b.rep_of(p, i)), q, b.rep_of(q, j)))
                flipped.flip(b.orbit_of(p + q, *m));
        CHECK(flipped == base);
    }
}

TEST_CASE("incompatible actions are rejected") {
    AbelianGroup g({3});
    auto f = circle_factor(3);
    TensorCupComplex t({f, f});
    auto action = balanced_pair_action(g, t);
    SECTION("non-permutation table") {
        action.gen_perm[0][0][1][0] = action.gen_perm[0][0][1][1];
        CHECK_FALSE(check_action_compatibility(t, action).empty());
    }
    SECTION("breaking coboundary equivariance") {
        std::swap(action.gen_perm[0][0][1][0], action.gen_perm[0][0][1][1]);
        auto issues = check_action_compatibility(t, action);
        REQUIRE_FALSE(issues.empty());
        CHECK_THROWS_AS(BalancedCupComplex(t, action), std::invalid_argument);
    }
}
