#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "cupforge/constructions.hpp"
#include "cupforge/gates.hpp"
#include "oracles.hpp"

using namespace cupforge;

namespace {

// circle factor basis lookups (all torus factors share the same label set)
struct CircleIdx {
    std::vector<std::size_t> v, e;
    explicit CircleIdx(const BasedComplex& f, std::size_t L) : v(L), e(L) {
        for (std::size_t i = 0; i < L; ++i) {
            v[i] = std::size_t(f.index_of(0, BasisLabel::atom("v" + std::to_string(i))));
            e[i] = std::size_t(f.index_of(1, BasisLabel::atom("e" + std::to_string(i))));
        }
    }
};

// geometric cohomology representative of the torus: the edge e_0 in factor d,
// summed over all vertex positions of the other factors
BitVector torus_class(const TensorCupComplex& t, std::size_t d, std::size_t L) {
    std::size_t lam = t.lambda();
    CircleIdx ci(t.factor(0).complex(), L);
    BitVector r(t.complex().dim(1));
    std::vector<std::size_t> pos(lam - 1, 0);
    for (bool more = true; more;) {
        std::vector<std::size_t> idx(lam);
        std::size_t slot = 0;
        for (std::size_t k = 0; k < lam; ++k)
            idx[k] = k == d ? ci.e[0] : ci.v[pos[slot++]];
        r.flip(t.index_of({std::uint32_t(1u << d), idx}));
        more = false;
        for (std::size_t i = 0; i < pos.size(); ++i) {
            if (++pos[i] < L) {
                more = true;
                break;
            }
            pos[i] = 0;
        }
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

using Monomial = std::vector<std::pair<int, std::size_t>>;

}  // namespace

TEST_CASE("direct evaluation on the two-dimensional torus") {
    auto code = torus_code(2, 2);
    const auto& t = code.tensor;
    CircleIdx ci(t.factor(0).complex(), 2);
    auto h = [&](std::size_t a, std::size_t b) { return t.index_of({1u, {ci.e[a], ci.v[b]}}); };
    auto v = [&](std::size_t a, std::size_t b) { return t.index_of({2u, {ci.v[a], ci.e[b]}}); };
    std::size_t n = t.complex().dim(1);

    CHECK(psi_eval(t, {BitVector::unit(n, h(0, 0)), BitVector::unit(n, v(1, 0))}));
    CHECK_FALSE(psi_eval(t, {BitVector::unit(n, h(0, 0)), BitVector::unit(n, v(0, 0))}));
    CHECK_FALSE(psi_eval(t, {BitVector::unit(n, h(0, 0)), BitVector::unit(n, h(1, 0))}));
    CHECK_FALSE(psi_eval(t, {BitVector(n), BitVector::unit(n, v(1, 0))}));

    BitVector g0 = torus_class(t, 0, 2), g1 = torus_class(t, 1, 2);
    CHECK(t.complex().apply_delta(1, g0).none());
    CHECK(t.complex().apply_delta(1, g1).none());
    CHECK(psi_eval(t, {g0, g1}));
    CHECK(psi_eval(t, {g1, g0}));
    CHECK_FALSE(psi_eval(t, {g0, g0}));
    CHECK_THROWS_AS(psi_eval(t, {g0}), std::invalid_argument);
}

TEST_CASE("torus phase polynomial matches the consecutive-pair oracle") {
    for (std::size_t L : {std::size_t(2), std::size_t(3)}) {
        auto code = torus_code(2, L);
        const auto& t = code.tensor;
        CircleIdx ci(t.factor(0).complex(), L);
        auto h = [&](std::size_t a, std::size_t b) { return t.index_of({1u, {ci.e[a], ci.v[b]}}); };
        auto v = [&](std::size_t a, std::size_t b) { return t.index_of({2u, {ci.v[a], ci.e[b]}}); };

        std::vector<Monomial> expected;
        for (std::size_t a = 0; a < L; ++a)
            for (std::size_t b = 0; b < L; ++b) {
                expected.push_back({{0, h(a, b)}, {1, v((a + 1) % L, b)}});
                expected.push_back({{0, v(a, b)}, {1, h(a, (b + 1) % L)}});
            }
        std::sort(expected.begin(), expected.end());

        auto poly = psi_polynomial(t);
        CHECK(poly.lambda == 2);
        CHECK(poly.monomials == expected);
        CHECK(poly.monomials.size() == 2 * L * L);
    }
}

TEST_CASE("two-dimensional synthesis is depth one at every size") {
    for (std::size_t L : {std::size_t(2), std::size_t(3), std::size_t(4)}) {
        auto code = torus_code(2, L);
        auto circ = synth_circuit(psi_polynomial(code.tensor));
        CHECK(circ.arity == 2);
        CHECK(std::is_sorted(circ.gates.begin(), circ.gates.end()));
        auto cert = circuit_depth_certificate(circ, tensor_qubit_classes(code.tensor));
        CHECK(cert.valid);
        CHECK(cert.depth == 1);
    }
}

TEST_CASE("three-dimensional torus: six gates per cube, depth two") {
    std::size_t depth2 = 0, depth3 = 0;
    for (std::size_t L : {std::size_t(2), std::size_t(3)}) {
        auto code = torus_code(3, L);
        const auto& t = code.tensor;
        auto poly = psi_polynomial(t);
        CHECK(poly.monomials.size() == 6 * L * L * L);

        // bucket monomials by the cube their cup product lands on
        auto classes = tensor_qubit_classes(t);
        std::size_t n = t.complex().dim(1);
        std::map<std::size_t, std::set<std::vector<std::size_t>>> cubes;
        for (const auto& m : poly.monomials) {
            BitVector acc = BitVector::unit(n, m[0].second);
            acc = t.cup(1, acc, 1, BitVector::unit(n, m[1].second));
            acc = t.cup(2, acc, 1, BitVector::unit(n, m[2].second));
            REQUIRE(acc.popcount() == 1);
            cubes[acc.support()[0]].insert(
                {classes[m[0].second], classes[m[1].second], classes[m[2].second]});
        }
        CHECK(cubes.size() == L * L * L);
        std::set<std::vector<std::size_t>> perms;
        std::vector<std::size_t> axes{1, 2, 4};
        std::sort(axes.begin(), axes.end());
        do {
            perms.insert(axes);
        } while (std::next_permutation(axes.begin(), axes.end()));
        for (const auto& [cube, pats] : cubes) CHECK(pats == perms);

        auto cert = circuit_depth_certificate(synth_circuit(poly), classes);
        CHECK(cert.valid);
        (L == 2 ? depth2 : depth3) = cert.depth;
    }
    CHECK(depth2 == depth3);
    CHECK(depth2 == 2);
}

TEST_CASE("polynomial and direct evaluation agree on random tuples") {
    std::mt19937 rng(11);
    auto drive = [&](const auto& s, int trials) {
        auto poly = psi_polynomial(s);
        std::size_t n = s.complex().dim(1);
        for (int i = 0; i < trials; ++i) {
            std::vector<BitVector> args;
            for (int c = 0; c < poly.lambda; ++c) args.push_back(random_vec(rng, n));
            CHECK(poly.eval(args) == psi_eval(s, args));
        }
    };
    drive(torus_code(2, 3).tensor, 150);
    drive(torus_code(3, 2).tensor, 150);
    drive(anisotropic_lineon(2).tensor, 100);
    AbelianGroup g8({4, 2});
    BitVector c8 = parse_algebra(g8, "x + x^3 + y + x^2*y");
    Splitting s8{BitVector::unit(8, parse_monomial(g8, "x")),
                 BitVector::unit(8, parse_monomial(g8, "x^3")),
                 c8 ^ BitVector::unit(8, parse_monomial(g8, "x")) ^
                     BitVector::unit(8, parse_monomial(g8, "x^3"))};
    auto bb = bivariate_bicycle(g8, c8, c8, s8, s8);
    drive(bb.balanced, 150);
}

TEST_CASE("circuit phase equals the polynomial on every assignment") {
    auto code = torus_code(2, 2);
    auto poly = psi_polynomial(code.tensor);
    auto circ = synth_circuit(poly);
    std::size_t n = code.tensor.complex().dim(1);
    REQUIRE(2 * n <= 20);
    for (std::uint32_t word = 0; word < (1u << (2 * n)); ++word) {
        std::vector<BitVector> args(2, BitVector(n));
        for (std::size_t b = 0; b < 2 * n; ++b)
            if (word & (1u << b)) args[b / n].set(b % n, true);
        bool direct = psi_eval(code.tensor, args);
        if (circ.phase(args) != direct || poly.eval(args) != direct) {
            REQUIRE(circ.phase(args) == direct);  // report the first mismatch only
            REQUIRE(poly.eval(args) == direct);
        }
    }
    SUCCEED("all 65536 assignments agree");
}

TEST_CASE("circuit text uses canonical one-based addresses") {
    auto code = torus_code(2, 2);
    auto circ = synth_circuit(psi_polynomial(code.tensor));
    auto text = circuit_text(circ, qubit_labels(code.tensor.complex()));
    std::size_t lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == circ.gates.size());
    CHECK(text.rfind("CZ 1:", 0) == 0);
    CHECK(text.find(" 2:") != std::string::npos);
    CHECK(text.find(' ') != std::string::npos);
    CHECK(gate_name(1) == "Z");
    CHECK(gate_name(3) == "CCZ");
    CHECK(gate_name(4) == "C3Z");
}

TEST_CASE("invariance certificates and the torus logical action") {
    auto code = torus_code(2, 2);
    const auto& t = code.tensor;
    auto poly = psi_polynomial(t);
    auto gens = coboundary_generators(t.complex());

    CHECK(verify_invariance(poly, code.css.x_logicals, gens).ok);

    BitVector g0 = torus_class(t, 0, 2), g1 = torus_class(t, 1, 2);
    auto cob = t.complex().coboundary_basis(1);
    CHECK_FALSE(in_span(g0, cob));
    CHECK_FALSE(in_span(g1, cob));
    auto act = logical_action(poly, {g0, g1}, gens);
    std::vector<Monomial> expected{{{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}};
    CHECK(act.terms == expected);
    CHECK(hierarchy_level(act) == 2);
    CHECK(min_cz_count(act, 2) == 2);

    // the action is unchanged when the representatives absorb coboundaries
    auto act2 = logical_action(poly, {g0 ^ gens[0], g1 ^ gens[2]}, gens);
    CHECK(act2.terms == act.terms);
    CHECK(act2.level == act.level);

    // three copies: the action is exactly the six-permutation product
    auto code3 = torus_code(3, 2);
    auto poly3 = psi_polynomial(code3.tensor);
    std::vector<BitVector> reps3;
    for (std::size_t d = 0; d < 3; ++d) reps3.push_back(torus_class(code3.tensor, d, 2));
    auto act3 = logical_action(poly3, reps3, coboundary_generators(code3.tensor.complex()));
    std::vector<Monomial> expected3;
    std::vector<std::size_t> perm{0, 1, 2};
    do {
        expected3.push_back({{0, perm[0]}, {1, perm[1]}, {2, perm[2]}});
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(expected3.begin(), expected3.end());
    CHECK(act3.terms == expected3);
    CHECK(act3.level == 3);
}

TEST_CASE("lineon action is a full-rank pairing of the two layers") {
    for (std::size_t L : {std::size_t(2), std::size_t(3)}) {
        auto code = anisotropic_lineon(L);
        auto poly = psi_polynomial(code.tensor);
        auto gens = coboundary_generators(code.tensor.complex());
        auto act = logical_action(poly, code.css.x_logicals, gens);
        CHECK(act.level == 2);
        CHECK(!act.terms.empty());
        CHECK(min_cz_count(act, code.css.k) == 4 * L - 2);
        auto cert = circuit_depth_certificate(synth_circuit(poly), tensor_qubit_classes(code.tensor));
        CHECK(cert.valid);
    }
}

TEST_CASE("a corrupted orientation is caught by the invariance certificate") {
    auto good = repetition_circle(2);
    PreOrientation ori = good.orientation();
    std::size_t moved = ori.in[0].support()[0];
    ori.in[0].set(moved, false);
    ori.free[0].set(moved, true);  // in-edge demoted to free: breaks the parity conditions
    CupStructure bad(good.complex(), std::move(ori));
    CHECK_FALSE(check_integrated_leibniz(bad, 2).ok);

    std::vector<CupStructure> fs;
    fs.push_back(bad);
    fs.push_back(repetition_circle(2));
    TensorCupComplex t(std::move(fs));
    auto poly = psi_polynomial(t);
    auto css = CssCode::from_complex(t.complex());
    auto report = verify_invariance(poly, css.x_logicals, coboundary_generators(t.complex()));
    CHECK_FALSE(report.ok);
    CHECK(report.slot >= 0);
    CHECK(report.generator >= 0);
    CHECK_THROWS_AS(logical_action(poly, css.x_logicals, coboundary_generators(t.complex())),
                    std::runtime_error);
}

TEST_CASE("address gates fix one copy and renumber the rest") {
    auto code = torus_code(2, 2);
    auto poly = psi_polynomial(code.tensor);
    std::size_t n = code.tensor.complex().dim(1);
    CHECK(address_gate(poly, 0, BitVector(n)).monomials.empty());
    CHECK_THROWS_AS(address_gate(poly, 2, BitVector(n)), std::invalid_argument);
    CHECK_THROWS_AS(address_gate(poly, 0, BitVector(n + 1)), std::invalid_argument);

    // addressing a three-copy gate with a logical class leaves a two-copy
    // gate with a nontrivial action
    auto code3 = torus_code(3, 2);
    auto poly3 = psi_polynomial(code3.tensor);
    BitVector gamma = torus_class(code3.tensor, 0, 2);
    auto gated = address_gate(poly3, 0, gamma);
    CHECK(gated.lambda == 2);
    CHECK(!gated.monomials.empty());
    for (const auto& m : gated.monomials)
        for (auto [c, q] : m) {
            (void)q;
            CHECK((c == 0 || c == 1));
        }
    auto gens3 = coboundary_generators(code3.tensor.complex());
    std::vector<BitVector> reps3;
    for (std::size_t d = 0; d < 3; ++d) reps3.push_back(torus_class(code3.tensor, d, 2));
    auto act = logical_action(gated, reps3, gens3);
    CHECK(act.level == 2);
    CHECK(!act.terms.empty());

    // addressing with a coboundary leaves a stabilizer product: trivial action
    auto gens = coboundary_generators(code.tensor.complex());
    auto gated0 = address_gate(poly, 0, gens[0]);
    CHECK(gated0.lambda == 1);
    auto act0 = logical_action(gated0, code.css.x_logicals, gens);
    CHECK(act0.level == 0);
    CHECK(act0.terms.empty());
    CHECK(!act0.note.empty());
    BitVector support(n);
    for (const auto& m : gated0.monomials) support.flip(m[0].second);
    std::vector<BitVector> hz_rows;
    for (std::size_t r = 0; r < code.css.hz.rows(); ++r) hz_rows.push_back(code.css.hz.row(r));
    CHECK(in_span(support, hz_rows));
}

TEST_CASE("mixed-degree actions certify lifted hierarchy levels") {
    AbelianGroup z6({6});
    auto graph = cayley_graph(z6, {1});
    std::vector<BasisLabel> cl{BasisLabel::atom("l0")};
    std::vector<BasisLabel> bl{BasisLabel::atom("s0"), BasisLabel::atom("s1")};
    auto lc = make_complex({cl, bl}, [&](int, const BasisLabel&) { return bl; });
    LocalSystem local{lc, cayley_phi(z6, {1})};
    auto ss = sipser_spielman(graph, local);
    auto cs = ss_preorientation_lambda3(ss, 0, 0, 1);

    for (const auto& degrees : std::vector<std::vector<int>>{
             {1}, {0, 1}, {1, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}}) {
        auto act = mixed_logical_action(cs, degrees);
        INFO("width " << degrees.size());
        CHECK(act.level == int(degrees.size()));
        CHECK(!act.terms.empty());
    }
    CHECK_THROWS_AS(mixed_logical_action(cs, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(mixed_logical_action(cs, {}), std::invalid_argument);
    CHECK_THROWS_AS(mixed_logical_action(cs, {0, 2}), std::invalid_argument);
}
