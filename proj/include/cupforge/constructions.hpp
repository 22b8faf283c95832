#pragma once

// Ready-made code families: group-algebra two-term complexes and their
// balanced pairs, geometric lattice models, and Tanner-graph lifts. Each
// construction returns oriented two-term factors (CupStructure) or finished
// product complexes ready for gate synthesis.

#include "cupforge/css.hpp"
#include "cupforge/products.hpp"

namespace cupforge {

// --- group algebra two-term complexes ---------------------------------------

// two-term complex F2[G] -> F2[G] with delta(a) = c * a; check labels are
// "c(<monomial>)", bit labels "b(<monomial>)"
inline BasedComplex group_algebra_code(const AbelianGroup& g, const BitVector& c) {
    if (c.size() != g.size())
        throw std::invalid_argument("group_algebra_code: element width mismatch");
    if (!c.any()) throw std::invalid_argument("group_algebra_code: empty element");
    std::vector<BasisLabel> checks, bits;
    for (std::size_t a = 0; a < g.size(); ++a) {
        checks.push_back(BasisLabel::atom("c(" + monomial_str(g, a) + ")"));
        bits.push_back(BasisLabel::atom("b(" + monomial_str(g, a) + ")"));
    }
    return make_complex({checks, bits}, [&](int, const BasisLabel& l) {
        std::size_t a = parse_monomial(g, l.name().substr(2, l.name().size() - 3));
        std::vector<BasisLabel> out;
        for (std::size_t m : translate_right(g, c, a).support())
            out.push_back(BasisLabel::atom("b(" + monomial_str(g, m) + ")"));
        return out;
    });
}

// the same complex oriented by translation: in(a) = c_in * a, out(a) =
// c_out * a, the rest of c is free
inline CupStructure group_algebra_complex(const AbelianGroup& g, const BitVector& c,
                                          const BitVector& c_in, const BitVector& c_out) {
    if (c.size() != g.size() || c_in.size() != g.size() || c_out.size() != g.size())
        throw std::invalid_argument("group_algebra_complex: element width mismatch");
    if ((c_in & c_out).any() || ((c_in ^ (c_in & c)).any()) || ((c_out ^ (c_out & c)).any()))
        throw std::invalid_argument("group_algebra_complex: in/out must be disjoint subsets of c");

    auto cx = group_algebra_code(g, c);
    PreOrientation ori;
    ori.in.assign(g.size(), BitVector(g.size()));
    ori.out.assign(g.size(), BitVector(g.size()));
    ori.free.assign(g.size(), BitVector(g.size()));
    for (std::size_t a = 0; a < g.size(); ++a) {
        std::size_t row = std::size_t(cx.index_of(0, BasisLabel::atom("c(" + monomial_str(g, a) + ")")));
        auto fill = [&](const BitVector& set, std::vector<BitVector>& dst) {
            for (std::size_t m : translate_right(g, set, a).support())
                dst[row].set(
                    std::size_t(cx.index_of(1, BasisLabel::atom("b(" + monomial_str(g, m) + ")"))),
                    true);
        };
        fill(c_in, ori.in);
        fill(c_out, ori.out);
        fill(c ^ c_in ^ c_out, ori.free);
    }
    return CupStructure(std::move(cx), std::move(ori));
}

// The chain action of G^{lambda-1} on a tensor chain of group-algebra
// complexes over G: generator block k moves factor k by right multiplication
// with g^{-1} and factor k+1 by left multiplication with g, so the product of
// the factor monomials is an orbit invariant.
inline BalancedAction balanced_chain_action(const AbelianGroup& g, const TensorCupComplex& tensor) {
    std::size_t lam = tensor.lambda();
    if (lam < 2) throw std::invalid_argument("balanced_chain_action: need at least two factors");
    auto elem_of = [&](const CupStructure& cs, int d, std::size_t i) {
        const std::string& s = cs.complex().label(d, i).name();
        return parse_monomial(g, s.substr(2, s.size() - 3));
    };
    auto index_of = [&](const CupStructure& cs, int d, std::size_t a) {
        std::string tag = d == 0 ? "c(" : "b(";
        long i = cs.complex().index_of(d, BasisLabel::atom(tag + monomial_str(g, a) + ")"));
        if (i < 0) throw std::invalid_argument("balanced_chain_action: factor is not a group-algebra complex");
        return std::size_t(i);
    };
    std::vector<unsigned> horders;
    for (std::size_t b = 0; b + 1 < lam; ++b)
        horders.insert(horders.end(), g.orders().begin(), g.orders().end());
    BalancedAction action{AbelianGroup(horders), {}};
    for (std::size_t b = 0; b + 1 < lam; ++b)
        for (std::size_t k = 0; k < g.rank(); ++k) {
            std::vector<long> unit(g.rank(), 0);
            unit[k] = 1;
            std::size_t u = g.from_coords(unit), uinv = g.inv(u);
            std::vector<std::array<std::vector<std::size_t>, 2>> per_factor(lam);
            for (std::size_t f = 0; f < lam; ++f) {
                const CupStructure& cs = tensor.factor(f);
                for (int d = 0; d < 2; ++d) {
                    std::size_t dim = d ? cs.bits() : cs.checks();
                    std::vector<std::size_t> perm(dim);
                    for (std::size_t i = 0; i < dim; ++i) {
                        std::size_t a = elem_of(cs, d, i);
                        std::size_t m = f == b ? g.mul(a, uinv) : (f == b + 1 ? g.mul(u, a) : a);
                        perm[i] = index_of(cs, d, m);
                    }
                    per_factor[f][std::size_t(d)] = std::move(perm);
                }
            }
            action.gen_perm.push_back(std::move(per_factor));
        }
    return action;
}

// the two-factor case: left factor moves by right multiplication with g^{-1},
// right factor by left multiplication with g
inline BalancedAction balanced_pair_action(const AbelianGroup& g, const TensorCupComplex& tensor) {
    if (tensor.lambda() != 2)
        throw std::invalid_argument("balanced_pair_action: expects exactly two factors");
    return balanced_chain_action(g, tensor);
}

// --- splittings of a group-algebra element -----------------------------------

// three-way splitting of the support of c into in, out, and free parts
struct Splitting {
    BitVector c_in, c_out, c_free;
};

// Requirements for a splitting to induce a well-behaved translation-invariant
// orientation: the parts partition c, the in-part is a single monomial, the
// out-part is its inverse set, the free part is closed under inversion, and
// translation acts freely on the monomial basis. Returns the violations,
// empty when valid.
inline std::vector<std::string> validate_splitting(const AbelianGroup& g, const BitVector& c,
                                                   const Splitting& s) {
    std::vector<std::string> issues;
    if (c.size() != g.size() || s.c_in.size() != g.size() || s.c_out.size() != g.size() ||
        s.c_free.size() != g.size()) {
        issues.push_back("element width mismatch");
        return issues;
    }
    if ((s.c_in & s.c_out).any() || (s.c_in & s.c_free).any() || (s.c_out & s.c_free).any())
        issues.push_back("parts overlap");
    if ((s.c_in ^ s.c_out ^ s.c_free) != c) issues.push_back("parts do not partition the element");
    if (s.c_in.popcount() != 1) issues.push_back("in-part is not a single monomial");
    if (invert_support(g, s.c_out) != s.c_in) issues.push_back("out-part is not the inverse of the in-part");
    if (invert_support(g, s.c_free) != s.c_free) issues.push_back("free part is not closed under inversion");
    bool free_action = true;
    for (std::size_t u = 1; free_action && u < g.size(); ++u)
        for (std::size_t a = 0; a < g.size(); ++a)
            if (g.mul(u, a) == a) {
                free_action = false;
                break;
            }
    if (!free_action) issues.push_back("translation action is not free");
    return issues;
}

// the oriented group-algebra complex induced by a valid splitting
inline CupStructure splitting_cup(const AbelianGroup& g, const BitVector& c, const Splitting& s) {
    auto issues = validate_splitting(g, c, s);
    if (!issues.empty()) throw std::invalid_argument("splitting_cup: " + issues.front());
    return group_algebra_complex(g, c, s.c_in, s.c_out);
}

// every valid splitting of c, in ascending order of the in-monomial; the
// in-part determines the other two parts, so this enumeration is complete
inline std::vector<Splitting> search_splittings(const AbelianGroup& g, const BitVector& c) {
    std::vector<Splitting> found;
    for (std::size_t a : c.support()) {
        std::size_t b = g.inv(a);
        if (b == a || !c.get(b)) continue;
        Splitting s{BitVector::unit(g.size(), a), BitVector::unit(g.size(), b),
                    c ^ BitVector::unit(g.size(), a) ^ BitVector::unit(g.size(), b)};
        if (validate_splitting(g, c, s).empty()) found.push_back(std::move(s));
    }
    return found;
}

// --- geometric families ------------------------------------------------------

// oriented circle with n vertices: delta(v_i) = {e_{i-1}, e_i}, the left edge
// incoming and the right edge outgoing; n = 2 is the double edge
inline CupStructure repetition_circle(std::size_t n) {
    if (n < 2) throw std::invalid_argument("repetition_circle: need at least two vertices");
    auto vlab = [](std::size_t i) { return BasisLabel::atom("v" + std::to_string(i)); };
    auto elab = [](std::size_t i) { return BasisLabel::atom("e" + std::to_string(i)); };
    std::vector<BasisLabel> vs, es;
    for (std::size_t i = 0; i < n; ++i) {
        vs.push_back(vlab(i));
        es.push_back(elab(i));
    }
    auto cx = make_complex({vs, es}, [&](int, const BasisLabel& l) {
        std::size_t i = std::stoul(l.name().substr(1));
        return std::vector<BasisLabel>{elab((i + n - 1) % n), elab(i)};
    });
    PreOrientation ori;
    ori.in.assign(n, BitVector(n));
    ori.out.assign(n, BitVector(n));
    ori.free.assign(n, BitVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t row = std::size_t(cx.index_of(0, vlab(i)));
        ori.in[row].set(std::size_t(cx.index_of(1, elab((i + n - 1) % n))), true);
        ori.out[row].set(std::size_t(cx.index_of(1, elab(i))), true);
    }
    return CupStructure(std::move(cx), std::move(ori));
}

// L x L periodic plaquette model: each check p(i,j) acts on its four corner
// vertices, oriented with the south-west corner in, the north-east corner
// out, and the other two corners free
inline CupStructure plaquette_ising(std::size_t L) {
    if (L < 2) throw std::invalid_argument("plaquette_ising: need L >= 2");
    auto vlab = [&](std::size_t i, std::size_t j) {
        return BasisLabel::atom("v(" + std::to_string(i % L) + "," + std::to_string(j % L) + ")");
    };
    auto plab = [&](std::size_t i, std::size_t j) {
        return BasisLabel::atom("p(" + std::to_string(i) + "," + std::to_string(j) + ")");
    };
    std::vector<BasisLabel> ps, vs;
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < L; ++j) {
            ps.push_back(plab(i, j));
            vs.push_back(vlab(i, j));
        }
    auto cx = make_complex({ps, vs}, [&](int, const BasisLabel& l) {
        std::size_t comma = l.name().find(',');
        std::size_t i = std::stoul(l.name().substr(2, comma - 2));
        std::size_t j = std::stoul(l.name().substr(comma + 1));
        return std::vector<BasisLabel>{vlab(i, j), vlab(i + 1, j), vlab(i, j + 1), vlab(i + 1, j + 1)};
    });
    std::size_t n = L * L;
    PreOrientation ori;
    ori.in.assign(n, BitVector(n));
    ori.out.assign(n, BitVector(n));
    ori.free.assign(n, BitVector(n));
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < L; ++j) {
            std::size_t row = std::size_t(cx.index_of(0, plab(i, j)));
            ori.in[row].set(std::size_t(cx.index_of(1, vlab(i, j))), true);
            ori.out[row].set(std::size_t(cx.index_of(1, vlab(i + 1, j + 1))), true);
            ori.free[row].set(std::size_t(cx.index_of(1, vlab(i + 1, j))), true);
            ori.free[row].set(std::size_t(cx.index_of(1, vlab(i, j + 1))), true);
        }
    return CupStructure(std::move(cx), std::move(ori));
}

// a CSS code realized as a tensor product of oriented two-term factors, with
// qubits in degree 1
struct TensorCode {
    TensorCupComplex tensor;
    CssCode css;
};

inline TensorCode make_tensor_code(std::vector<CupStructure> factors) {
    TensorCupComplex t(std::move(factors));
    CssCode css = CssCode::from_complex(t.complex());
    return {std::move(t), std::move(css)};
}

// lambda-dimensional torus: product of lambda oriented circles of length L
inline TensorCode torus_code(int lambda, std::size_t L) {
    if (lambda < 1) throw std::invalid_argument("torus_code: need lambda >= 1");
    std::vector<CupStructure> fs(std::size_t(lambda), repetition_circle(L));
    return make_tensor_code(std::move(fs));
}

// anisotropic lineon model: plaquette layer times an oriented circle
inline TensorCode anisotropic_lineon(std::size_t L) {
    std::vector<CupStructure> fs;
    fs.push_back(plaquette_ising(L));
    fs.push_back(repetition_circle(L));
    return make_tensor_code(std::move(fs));
}

// --- balanced bicycle codes ---------------------------------------------------

// Balanced pair of two group-algebra factors over G. Degree-1 orbits split
// into a vertical sector [1, q] (left check times right bit) and a horizontal
// sector [p, 1]; both sectors and the degree-2 orbits are indexed by group
// elements via the product of the factor monomials.
struct BicycleCode {
    AbelianGroup group;
    BalancedCupComplex balanced;
    CssCode css;
    std::vector<std::size_t> v_orbit;    // group element q -> degree-1 orbit of [1, q]
    std::vector<std::size_t> h_orbit;    // group element p -> degree-1 orbit of [p, 1]
    std::vector<std::size_t> top_orbit;  // product of monomials -> degree-2 orbit
};

namespace detail {

inline std::size_t ga_label_elem(const AbelianGroup& g, const BasisLabel& l) {
    const std::string& s = l.name();
    return parse_monomial(g, s.substr(2, s.size() - 3));
}

inline BicycleCode make_bicycle(const AbelianGroup& g, CupStructure f1, CupStructure f2) {
    std::vector<CupStructure> fs;
    fs.push_back(std::move(f1));
    fs.push_back(std::move(f2));
    TensorCupComplex tensor(std::move(fs));
    BalancedAction action = balanced_pair_action(g, tensor);
    BalancedCupComplex bal(std::move(tensor), std::move(action));
    if (!bal.is_free())
        throw std::invalid_argument("make_bicycle: translation action is not free on the tensor basis");
    CssCode css = CssCode::from_complex(bal.complex());
    BicycleCode bb{g, std::move(bal), std::move(css), {}, {}, {}};
    const TensorCupComplex& t = bb.balanced.tensor();
    auto fidx = [&](std::size_t f, int d, std::size_t a) {
        std::string tag = d == 0 ? "c(" : "b(";
        return std::size_t(
            t.factor(f).complex().index_of(d, BasisLabel::atom(tag + monomial_str(g, a) + ")")));
    };
    std::size_t id = g.identity();
    bb.v_orbit.resize(g.size());
    bb.h_orbit.resize(g.size());
    for (std::size_t a = 0; a < g.size(); ++a) {
        bb.v_orbit[a] = bb.balanced.orbit_of(1, t.index_of({2u, {fidx(0, 0, id), fidx(1, 1, a)}}));
        bb.h_orbit[a] = bb.balanced.orbit_of(1, t.index_of({1u, {fidx(0, 1, a), fidx(1, 0, id)}}));
    }
    bb.top_orbit.assign(g.size(), 0);
    for (std::size_t o = 0; o < bb.balanced.complex().dim(2); ++o) {
        const auto& e = t.elem(2, bb.balanced.rep_of(2, o));
        std::size_t p = ga_label_elem(g, t.factor(0).complex().label(1, e.idx[0]));
        std::size_t q = ga_label_elem(g, t.factor(1).complex().label(1, e.idx[1]));
        bb.top_orbit[g.mul(p, q)] = o;
    }
    return bb;
}

}  // namespace detail

// balanced bicycle code from two split group-algebra elements; throws when a
// splitting is invalid or the action is not free
inline BicycleCode bivariate_bicycle(const AbelianGroup& g, const BitVector& c1, const BitVector& c2,
                                     const Splitting& s1, const Splitting& s2) {
    auto issues = validate_splitting(g, c1, s1);
    auto more = validate_splitting(g, c2, s2);
    issues.insert(issues.end(), more.begin(), more.end());
    if (!issues.empty()) throw std::invalid_argument("bivariate_bicycle: " + issues.front());
    return detail::make_bicycle(g, group_algebra_complex(g, c1, s1.c_in, s1.c_out),
                                group_algebra_complex(g, c2, s2.c_in, s2.c_out));
}

// the same balanced pair with an all-free orientation: code parameters only,
// no cup identities claimed
inline BicycleCode bivariate_bicycle_complex(const AbelianGroup& g, const BitVector& c1,
                                             const BitVector& c2) {
    BitVector none(g.size());
    return detail::make_bicycle(g, group_algebra_complex(g, c1, none, none),
                                group_algebra_complex(g, c2, none, none));
}

// closed form for the cup of a vertical class [1, q] with a horizontal class
// [p, 1]: the sum of p*h*q over h in (p^{-1} c1_out) ∩ (q^{-1} c2_in), read in
// the degree-2 orbit basis
inline BitVector bb_cup_closed(const BicycleCode& bb, const Splitting& s1, const Splitting& s2,
                               std::size_t q, std::size_t p) {
    const AbelianGroup& g = bb.group;
    BitVector r(bb.balanced.complex().dim(2));
    BitVector hs = translate_left(g, g.inv(p), s1.c_out) & translate_left(g, g.inv(q), s2.c_in);
    for (std::size_t h : hs.support()) r.flip(bb.top_orbit[g.mul(g.mul(p, h), q)]);
    return r;
}

// Balanced product of three group-algebra factors over G under the chain
// action of G^2. Sector f holds the degree-1 orbits with factor f in degree
// one; sectors and degree-3 orbits are indexed by group elements.
struct TripleCode {
    AbelianGroup group;
    BalancedCupComplex balanced;
    std::array<std::vector<std::size_t>, 3> sector_orbit;
    std::vector<std::size_t> top_orbit;
};

inline TripleCode balanced_triple(const AbelianGroup& g, CupStructure f0, CupStructure f1,
                                  CupStructure f2) {
    std::vector<CupStructure> fs;
    fs.push_back(std::move(f0));
    fs.push_back(std::move(f1));
    fs.push_back(std::move(f2));
    TensorCupComplex tensor(std::move(fs));
    BalancedAction action = balanced_chain_action(g, tensor);
    BalancedCupComplex bal(std::move(tensor), std::move(action));
    if (!bal.is_free())
        throw std::invalid_argument("balanced_triple: chain action is not free on the tensor basis");
    TripleCode tc{g, std::move(bal), {}, {}};
    const TensorCupComplex& t = tc.balanced.tensor();
    auto fidx = [&](std::size_t f, int d, std::size_t a) {
        std::string tag = d == 0 ? "c(" : "b(";
        return std::size_t(
            t.factor(f).complex().index_of(d, BasisLabel::atom(tag + monomial_str(g, a) + ")")));
    };
    std::size_t id = g.identity();
    for (std::size_t f = 0; f < 3; ++f) {
        tc.sector_orbit[f].resize(g.size());
        for (std::size_t a = 0; a < g.size(); ++a) {
            std::vector<std::size_t> idx(3);
            for (std::size_t k = 0; k < 3; ++k) idx[k] = k == f ? fidx(k, 1, a) : fidx(k, 0, id);
            tc.sector_orbit[f][a] = tc.balanced.orbit_of(1, t.index_of({1u << f, idx}));
        }
    }
    tc.top_orbit.assign(g.size(), 0);
    for (std::size_t o = 0; o < tc.balanced.complex().dim(3); ++o) {
        const auto& e = t.elem(3, tc.balanced.rep_of(3, o));
        std::size_t prod = g.identity();
        for (std::size_t k = 0; k < 3; ++k)
            prod = g.mul(prod, detail::ga_label_elem(g, t.factor(k).complex().label(1, e.idx[k])));
        tc.top_orbit[prod] = o;
    }
    return tc;
}

// Closed form for the left-nested triple cup of one degree-1 class from each
// sector of a balanced triple: class p in factor 0, q in factor 1, r in
// factor 2 cup to the sum of p*a*q*b*r over a in (p^{-1} in_0) ∩ (q^{-1}
// out_1) and b in (q^{-1} in_1) ∩ (r^{-1} out_2), as a vector over group
// elements.
inline BitVector ga_cup_lambda3(const AbelianGroup& g, const Splitting& s0, const Splitting& s1,
                                const Splitting& s2, std::size_t p, std::size_t q, std::size_t r) {
    BitVector out(g.size());
    BitVector first = translate_left(g, g.inv(p), s0.c_in) & translate_left(g, g.inv(q), s1.c_out);
    BitVector second = translate_left(g, g.inv(q), s1.c_in) & translate_left(g, g.inv(r), s2.c_out);
    for (std::size_t a : first.support())
        for (std::size_t b : second.support())
            out.flip(g.mul(g.mul(g.mul(g.mul(p, a), q), b), r));
    return out;
}

// --- Tanner-graph lifts -------------------------------------------------------

// directed multigraph; parallel edges are allowed, self-loops are not
struct Graph {
    struct Edge {
        std::size_t tail = 0, head = 0;
    };
    std::size_t vertices = 0;
    std::vector<Edge> edges;
};

// Cayley graph of G over a generating set T with T and T^{-1} disjoint: edge
// v*|T|+j runs from v to v*t_j
inline Graph cayley_graph(const AbelianGroup& g, const std::vector<std::size_t>& t_gens) {
    for (std::size_t t : t_gens)
        if (t == g.identity() || g.inv(t) == t)
            throw std::invalid_argument("cayley_graph: generators must have order greater than two");
    for (std::size_t ti : t_gens)
        for (std::size_t tj : t_gens)
            if (g.inv(ti) == tj)
                throw std::invalid_argument("cayley_graph: generator set must avoid inverse pairs");
    Graph x;
    x.vertices = g.size();
    for (std::size_t v = 0; v < g.size(); ++v)
        for (std::size_t t : t_gens) x.edges.push_back({v, g.mul(v, t)});
    return x;
}

// per-vertex bijection from 2|T| local slots to the incident edges: slot j is
// the outgoing t_j edge, slot |T|+j the incoming t_j edge
inline std::vector<std::vector<std::size_t>> cayley_phi(const AbelianGroup& g,
                                                        const std::vector<std::size_t>& t_gens) {
    std::size_t nt = t_gens.size();
    std::vector<std::vector<std::size_t>> phi(g.size(), std::vector<std::size_t>(2 * nt));
    for (std::size_t v = 0; v < g.size(); ++v)
        for (std::size_t j = 0; j < nt; ++j) {
            phi[v][j] = v * nt + j;
            phi[v][nt + j] = g.mul(v, g.inv(t_gens[j])) * nt + j;
        }
    return phi;
}

// a two-term local code together with per-vertex bijections from its bit
// slots to the incident edges of a regular graph
struct LocalSystem {
    BasedComplex code;
    std::vector<std::vector<std::size_t>> phi;  // [vertex][local bit] -> edge
};

// lifted Tanner code: one copy of every local check at every vertex, bits on
// the edges, delta(v, c) = phi_v(delta_local(c))
struct SsCode {
    Graph graph;
    LocalSystem local;
    BasedComplex complex;
    std::vector<std::vector<std::size_t>> check_at;  // [vertex][local check] -> degree-0 index
    std::vector<std::size_t> bit_at;                 // [edge] -> degree-1 index
};

inline SsCode sipser_spielman(const Graph& x, const LocalSystem& l) {
    if (l.code.max_degree() != 1)
        throw std::invalid_argument("sipser_spielman: local code must be two-term");
    std::size_t s = l.code.dim(1);
    if (s < 2 || s % 2 != 0)
        throw std::invalid_argument("sipser_spielman: local bit count must be even and positive");
    if (l.phi.size() != x.vertices)
        throw std::invalid_argument("sipser_spielman: one slot bijection per vertex required");
    std::vector<std::vector<std::size_t>> incident(x.vertices);
    for (std::size_t e = 0; e < x.edges.size(); ++e) {
        if (x.edges[e].tail == x.edges[e].head)
            throw std::invalid_argument("sipser_spielman: self-loops are not supported");
        if (x.edges[e].tail >= x.vertices || x.edges[e].head >= x.vertices)
            throw std::invalid_argument("sipser_spielman: edge endpoint out of range");
        incident[x.edges[e].tail].push_back(e);
        incident[x.edges[e].head].push_back(e);
    }
    for (std::size_t v = 0; v < x.vertices; ++v) {
        if (incident[v].size() != s)
            throw std::invalid_argument("sipser_spielman: graph is not regular of the local degree");
        if (l.phi[v].size() != s)
            throw std::invalid_argument("sipser_spielman: slot bijection arity mismatch");
        std::vector<std::size_t> got = l.phi[v], want = incident[v];
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got != want)
            throw std::invalid_argument("sipser_spielman: slots do not map onto the incident edges");
    }

    std::vector<BasisLabel> checks, bits;
    for (std::size_t v = 0; v < x.vertices; ++v)
        for (std::size_t c = 0; c < l.code.dim(0); ++c)
            checks.push_back(
                BasisLabel::tuple({BasisLabel::atom("v" + std::to_string(v)), l.code.label(0, c)}));
    for (std::size_t e = 0; e < x.edges.size(); ++e)
        bits.push_back(BasisLabel::atom("e" + std::to_string(e)));

    auto cx = make_complex({checks, bits}, [&](int, const BasisLabel& lab) {
        std::size_t v = std::stoul(lab.parts()[0].name().substr(1));
        std::size_t ci = std::size_t(l.code.index_of(0, lab.parts()[1]));
        std::vector<BasisLabel> out;
        for (std::size_t b : l.code.coboundary(0).col(ci).support())
            out.push_back(BasisLabel::atom("e" + std::to_string(l.phi[v][b])));
        return out;
    });

    SsCode ss{x, l, std::move(cx), {}, {}};
    ss.check_at.assign(x.vertices, std::vector<std::size_t>(l.code.dim(0)));
    for (std::size_t v = 0; v < x.vertices; ++v)
        for (std::size_t c = 0; c < l.code.dim(0); ++c)
            ss.check_at[v][c] = std::size_t(ss.complex.index_of(
                0, BasisLabel::tuple({BasisLabel::atom("v" + std::to_string(v)), l.code.label(0, c)})));
    ss.bit_at.resize(x.edges.size());
    for (std::size_t e = 0; e < x.edges.size(); ++e)
        ss.bit_at[e] = std::size_t(ss.complex.index_of(1, BasisLabel::atom("e" + std::to_string(e))));
    return ss;
}

// Requirements for the aligned lifted orientation: every in-slot must map to
// an incoming edge and every out-slot to an outgoing edge at each vertex, and
// the local code oriented by the slot partition must pass the two-fold
// invariance conditions. Returns the violations, empty when valid.
inline std::vector<std::string> ss_lambda2_hypotheses(const SsCode& ss, const BitVector& l1_in) {
    std::vector<std::string> issues;
    std::size_t s = ss.local.code.dim(1);
    if (l1_in.size() != s) {
        issues.push_back("slot partition width mismatch");
        return issues;
    }
    for (std::size_t v = 0; v < ss.graph.vertices; ++v)
        for (std::size_t b = 0; b < s && issues.size() < 8; ++b) {
            const auto& e = ss.graph.edges[ss.local.phi[v][b]];
            if (l1_in.get(b) && e.head != v)
                issues.push_back("in-slot " + std::to_string(b) + " is not incoming at vertex " +
                                 std::to_string(v));
            if (!l1_in.get(b) && e.tail != v)
                issues.push_back("out-slot " + std::to_string(b) + " is not outgoing at vertex " +
                                 std::to_string(v));
        }
    std::size_t nc = ss.local.code.dim(0);
    PreOrientation lori;
    lori.in.assign(nc, BitVector(s));
    lori.out.assign(nc, BitVector(s));
    lori.free.assign(nc, BitVector(s));
    for (std::size_t c = 0; c < nc; ++c) {
        BitVector d = ss.local.code.coboundary(0).col(c);
        lori.in[c] = d & l1_in;
        lori.out[c] = d ^ (d & l1_in);
    }
    CupStructure lcs(ss.local.code, std::move(lori));
    if (!check_integrated_leibniz(lcs, 2).ok)
        issues.push_back("local code fails the two-fold invariance conditions");
    return issues;
}

// the lifted orientation: in(v, c) = phi_v(delta_local(c) ∩ in-slots), out
// the rest, nothing free; throws when the alignment requirements fail
inline CupStructure ss_preorientation_lambda2(const SsCode& ss, const BitVector& l1_in) {
    auto issues = ss_lambda2_hypotheses(ss, l1_in);
    if (!issues.empty()) throw std::invalid_argument("ss_preorientation_lambda2: " + issues.front());
    std::size_t n0 = ss.complex.dim(0), n1 = ss.complex.dim(1);
    PreOrientation ori;
    ori.in.assign(n0, BitVector(n1));
    ori.out.assign(n0, BitVector(n1));
    ori.free.assign(n0, BitVector(n1));
    for (std::size_t v = 0; v < ss.graph.vertices; ++v)
        for (std::size_t c = 0; c < ss.local.code.dim(0); ++c) {
            std::size_t row = ss.check_at[v][c];
            for (std::size_t b : ss.local.code.coboundary(0).col(c).support()) {
                std::size_t bit = ss.bit_at[ss.local.phi[v][b]];
                (l1_in.get(b) ? ori.in : ori.out)[row].set(bit, true);
            }
        }
    return CupStructure(ss.complex, std::move(ori));
}

// Requirements for the single-pair orientation: the distinguished local check
// hits exactly the two distinguished slots, every other check avoids them,
// the first slot maps to an outgoing edge and the second to an incoming edge
// at each vertex, and the two slots select the same edge set. Returns the
// violations, empty when valid.
inline std::vector<std::string> ss_lambda3_hypotheses(const SsCode& ss, std::size_t chat,
                                                      std::size_t t_bit, std::size_t t_inv_bit) {
    std::vector<std::string> issues;
    std::size_t s = ss.local.code.dim(1), nc = ss.local.code.dim(0);
    if (chat >= nc || t_bit >= s || t_inv_bit >= s || t_bit == t_inv_bit) {
        issues.push_back("distinguished indices out of range");
        return issues;
    }
    BitVector want(s);
    want.set(t_bit, true);
    want.set(t_inv_bit, true);
    if (ss.local.code.coboundary(0).col(chat) != want)
        issues.push_back("distinguished check must hit exactly the two distinguished slots");
    for (std::size_t c = 0; c < nc; ++c) {
        if (c == chat) continue;
        BitVector dc = ss.local.code.coboundary(0).col(c);
        if (dc.get(t_bit) || dc.get(t_inv_bit))
            issues.push_back("check " + std::to_string(c) + " touches a distinguished slot");
    }
    std::vector<std::size_t> outgoing, incoming;
    for (std::size_t v = 0; v < ss.graph.vertices; ++v) {
        std::size_t eo = ss.local.phi[v][t_bit], ei = ss.local.phi[v][t_inv_bit];
        if (ss.graph.edges[eo].tail != v)
            issues.push_back("forward slot is not outgoing at vertex " + std::to_string(v));
        if (ss.graph.edges[ei].head != v)
            issues.push_back("backward slot is not incoming at vertex " + std::to_string(v));
        outgoing.push_back(eo);
        incoming.push_back(ei);
    }
    std::sort(outgoing.begin(), outgoing.end());
    std::sort(incoming.begin(), incoming.end());
    if (outgoing != incoming) issues.push_back("forward and backward slots select different edge sets");
    return issues;
}

// orientation concentrated on one edge type: at every vertex the
// distinguished check takes its outgoing distinguished edge as in and its
// incoming one as out; everything else is free
inline CupStructure ss_preorientation_lambda3(const SsCode& ss, std::size_t chat, std::size_t t_bit,
                                              std::size_t t_inv_bit) {
    auto issues = ss_lambda3_hypotheses(ss, chat, t_bit, t_inv_bit);
    if (!issues.empty()) throw std::invalid_argument("ss_preorientation_lambda3: " + issues.front());
    std::size_t n0 = ss.complex.dim(0), n1 = ss.complex.dim(1);
    PreOrientation ori;
    ori.in.assign(n0, BitVector(n1));
    ori.out.assign(n0, BitVector(n1));
    ori.free.assign(n0, BitVector(n1));
    for (std::size_t v = 0; v < ss.graph.vertices; ++v)
        for (std::size_t c = 0; c < ss.local.code.dim(0); ++c) {
            std::size_t row = ss.check_at[v][c];
            for (std::size_t b : ss.local.code.coboundary(0).col(c).support()) {
                std::size_t bit = ss.bit_at[ss.local.phi[v][b]];
                if (c == chat && b == t_bit)
                    ori.in[row].set(bit, true);
                else if (c == chat && b == t_inv_bit)
                    ori.out[row].set(bit, true);
                else
                    ori.free[row].set(bit, true);
            }
        }
    return CupStructure(ss.complex, std::move(ori));
}

// nontriviality certificate for the single-pair orientation, built from the
// constant distinguished-check vector and the distinguished edges
struct SsWitness {
    bool cup_identities = false;      // basis cups match the single-edge pattern exactly
    bool constant_cocycle = false;    // the constant check vector is a cocycle
    bool classes_nontrivial = false;  // no distinguished edge is a coboundary
    bool integral_nonzero = false;    // mixed lambda-fold integrals evaluate to 1
    std::string detail;
    bool ok() const { return cup_identities && constant_cocycle && classes_nontrivial && integral_nonzero; }
};

inline SsWitness ss_nontriviality_witness(const CupStructure& cs, const SsCode& ss, std::size_t chat,
                                          std::size_t t_bit, std::size_t t_inv_bit, int max_lambda = 4) {
    SsWitness w;
    std::size_t n0 = cs.complex().dim(0), n1 = cs.complex().dim(1);
    BitVector cbar(n0);
    std::vector<std::size_t> fwd(ss.graph.vertices), bwd(ss.graph.vertices);
    std::vector<long> chat_vertex(n0, -1);
    for (std::size_t v = 0; v < ss.graph.vertices; ++v) {
        cbar.set(ss.check_at[v][chat], true);
        chat_vertex[ss.check_at[v][chat]] = long(v);
        fwd[v] = ss.bit_at[ss.local.phi[v][t_bit]];
        bwd[v] = ss.bit_at[ss.local.phi[v][t_inv_bit]];
    }

    w.cup_identities = cs.cup(0, cbar, 0, cbar) == cbar;
    if (!w.cup_identities) w.detail += "constant check vector does not square to itself; ";
    for (std::size_t a = 0; a < n0 && w.detail.size() < 160; ++a)
        for (std::size_t x = 0; x < n1; ++x) {
            bool want_xa = chat_vertex[a] >= 0 && fwd[std::size_t(chat_vertex[a])] == x;
            bool want_ax = chat_vertex[a] >= 0 && bwd[std::size_t(chat_vertex[a])] == x;
            if (cs.cup_basis(1, x, 0, a).has_value() != want_xa ||
                cs.cup_basis(0, a, 1, x).has_value() != want_ax) {
                w.cup_identities = false;
                w.detail += "unexpected cup at check " + std::to_string(a) + ", bit " +
                            std::to_string(x) + "; ";
            }
        }

    w.constant_cocycle = cs.complex().apply_delta(0, cbar).none();
    if (!w.constant_cocycle) w.detail += "constant check vector is not a cocycle; ";

    auto img = cs.complex().coboundary_basis(1);
    w.classes_nontrivial = true;
    for (std::size_t v = 0; v < ss.graph.vertices; ++v)
        if (in_span(BitVector::unit(n1, fwd[v]), img) || in_span(BitVector::unit(n1, bwd[v]), img)) {
            w.classes_nontrivial = false;
            w.detail += "distinguished edge at vertex " + std::to_string(v) + " is a coboundary; ";
            break;
        }

    w.integral_nonzero = cs.integral_defined();
    if (!w.integral_nonzero) w.detail += "integral undefined: odd check present; ";
    for (int lam = 1; w.integral_nonzero && lam <= max_lambda; ++lam)
        for (int pos = 0; pos < lam; ++pos)
            for (std::size_t v = 0; v < ss.graph.vertices; ++v)
                for (std::size_t e : {fwd[v], bwd[v]}) {
                    std::vector<std::pair<int, BitVector>> fs(std::size_t(lam), {0, cbar});
                    fs[std::size_t(pos)] = {1, BitVector::unit(n1, e)};
                    auto [deg, val] = cs.lambda_cup(fs);
                    if (deg != 1 || !cs.integral1(val)) {
                        w.integral_nonzero = false;
                        w.detail += "mixed integral vanished at width " + std::to_string(lam) + "; ";
                    }
                }
    return w;
}

}  // namespace cupforge
