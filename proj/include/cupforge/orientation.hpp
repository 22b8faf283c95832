#pragma once

// Pre-orientations and cup products on two-term complexes.
//
// A pre-orientation splits the coboundary support of every degree-0 basis
// element ("check") a into three disjoint sets: delta(a) = in(a) + out(a) +
// free(a). It induces a cup product on basis elements:
//
//   a cup a  = a                    (same check)
//   a cup x  = x  iff x in out(a)   (check times bit)
//   x cup a  = x  iff x in in(a)    (bit times check)
//   everything else = 0             (distinct checks, bit times bit)
//
// extended bilinearly. The degree-1 integral is the weight parity; it kills
// all coboundaries exactly when every check has even coboundary weight.
//
// check_integrated_leibniz decides, tuple by tuple, whether the integral of
// the left-nested Leibniz expansion of delta over lambda-fold products of
// checks vanishes — the exact condition under which the lambda-fold
// integrated cup product on product complexes descends to cohomology.

#include <array>
#include <optional>

#include "cupforge/complex.hpp"

namespace cupforge {

struct PreOrientation {
    // one BitVector over the degree-1 basis per check, index-aligned
    std::vector<BitVector> in, out, free;
};

class CupStructure {
public:
    CupStructure(BasedComplex cx, PreOrientation ori)
        : cx_(std::move(cx)), ori_(std::move(ori)) {
        if (cx_.max_degree() != 1)
            throw std::invalid_argument("CupStructure: complex must be two-term");
        std::size_t n0 = cx_.dim(0), n1 = cx_.dim(1);
        auto shaped = [&](const std::vector<BitVector>& v) {
            if (v.size() != n0) return false;
            for (const auto& b : v)
                if (b.size() != n1) return false;
            return true;
        };
        if (!shaped(ori_.in) || !shaped(ori_.out) || !shaped(ori_.free))
            throw std::invalid_argument("CupStructure: orientation shape mismatch");
        for (std::size_t a = 0; a < n0; ++a) delta_.push_back(cx_.coboundary(0).col(a));
    }

    const BasedComplex& complex() const { return cx_; }
    const PreOrientation& orientation() const { return ori_; }
    const BitVector& delta_of(std::size_t a) const { return delta_.at(a); }

    std::size_t checks() const { return cx_.dim(0); }
    std::size_t bits() const { return cx_.dim(1); }

    // cup of basis elements; nullopt means the product is zero
    std::optional<std::size_t> cup_basis(int p, std::size_t i, int q, std::size_t j) const {
        if (p == 0 && q == 0) return i == j ? std::optional(i) : std::nullopt;
        if (p == 0 && q == 1) return ori_.out[i].get(j) ? std::optional(j) : std::nullopt;
        if (p == 1 && q == 0) return ori_.in[j].get(i) ? std::optional(i) : std::nullopt;
        return std::nullopt;  // degree-1 times degree-1 (and beyond) vanishes here
    }

    // bilinear extension; the result lives in degree p+q (dimension 0 above top)
    BitVector cup(int p, const BitVector& u, int q, const BitVector& v) const {
        BitVector r(cx_.dim(p + q));
        for (std::size_t i : u.support())
            for (std::size_t j : v.support())
                if (auto k = cup_basis(p, i, q, j)) r.flip(*k);
        return r;
    }

    // left-nested product of a list of homogeneous cochains
    std::pair<int, BitVector> lambda_cup(const std::vector<std::pair<int, BitVector>>& fs) const {
        if (fs.empty()) throw std::invalid_argument("lambda_cup: empty product");
        auto [deg, acc] = fs[0];
        for (std::size_t i = 1; i < fs.size(); ++i) {
            acc = cup(deg, acc, fs[i].first, fs[i].second);
            deg += fs[i].first;
        }
        return {deg, acc};
    }

    // degree-1 integral: weight parity
    bool integral1(const BitVector& v) const { return v.parity(); }

    // the integral annihilates coboundaries iff every check has even weight
    bool integral_defined() const {
        for (const auto& d : delta_)
            if (d.parity()) return false;
        return true;
    }

private:
    BasedComplex cx_;
    PreOrientation ori_;
    std::vector<BitVector> delta_;  // cached coboundary columns
};

// --- validation ------------------------------------------------------------

// semantic check that in/out/free partition each check's coboundary support
inline std::vector<std::string> validate_preorientation(const BasedComplex& cx,
                                                        const PreOrientation& ori) {
    std::vector<std::string> issues;
    std::size_t n0 = cx.dim(0), n1 = cx.dim(1);
    if (ori.in.size() != n0 || ori.out.size() != n0 || ori.free.size() != n0) {
        issues.push_back("orientation has entries for " + std::to_string(ori.in.size()) +
                         " checks, complex has " + std::to_string(n0));
        return issues;
    }
    for (std::size_t a = 0; a < n0; ++a) {
        const std::string name = cx.label(0, a).str();
        if (ori.in[a].size() != n1 || ori.out[a].size() != n1 || ori.free[a].size() != n1) {
            issues.push_back("check " + name + ": set width differs from bit count");
            continue;
        }
        if ((ori.in[a] & ori.out[a]).any() || (ori.in[a] & ori.free[a]).any() ||
            (ori.out[a] & ori.free[a]).any())
            issues.push_back("check " + name + ": in/out/free sets overlap");
        if ((ori.in[a] ^ ori.out[a] ^ ori.free[a]) != cx.coboundary(0).col(a))
            issues.push_back("check " + name + ": sets do not cover the coboundary support");
    }
    return issues;
}

// --- structural conditions ---------------------------------------------------

struct PairOverlap {
    bool ok = true;
    std::size_t a = 0, b = 0;  // offending pair when !ok
    std::string side;          // "in" or "out"
};

// distinct checks may not share in-sets or out-sets
inline PairOverlap check_nonoverlap(const CupStructure& cs) {
    const auto& o = cs.orientation();
    for (std::size_t a = 0; a < cs.checks(); ++a)
        for (std::size_t b = a + 1; b < cs.checks(); ++b) {
            if ((o.in[a] & o.in[b]).any()) return {false, a, b, "in"};
            if ((o.out[a] & o.out[b]).any()) return {false, a, b, "out"};
        }
    return {};
}

struct AssocViolation {
    bool ok = true;
    std::array<int, 3> degree{};
    std::array<std::size_t, 3> index{};
};

// brute associativity over all basis triples (total degree above 2 vanishes)
inline AssocViolation check_associativity(const CupStructure& cs) {
    std::array<std::size_t, 2> dims{cs.checks(), cs.bits()};
    for (int p = 0; p <= 1; ++p)
        for (int q = 0; q <= 1; ++q)
            for (int r = 0; r <= 1; ++r)
                for (std::size_t i = 0; i < dims[std::size_t(p)]; ++i)
                    for (std::size_t j = 0; j < dims[std::size_t(q)]; ++j)
                        for (std::size_t k = 0; k < dims[std::size_t(r)]; ++k) {
                            auto ij = cs.cup_basis(p, i, q, j);
                            std::optional<std::size_t> lhs, rhs;
                            if (ij) lhs = cs.cup_basis(p + q, *ij, r, k);
                            auto jk = cs.cup_basis(q, j, r, k);
                            if (jk) rhs = cs.cup_basis(p, i, q + r, *jk);
                            if (lhs != rhs) return {false, {p, q, r}, {i, j, k}};
                        }
    return {};
}

// --- integrated Leibniz condition -------------------------------------------

struct LeibnizReport {
    bool ok = true;
    std::vector<std::size_t> counterexample;  // lex-least failing check tuple
};

// Exact tuple-by-tuple test. For checks (a_1..a_L) the Leibniz expansion of
// delta over the left-nested product a_1 cup ... cup a_L integrates to
//
//   sum_j [a_1=...=a_{j-1}] * |prefix_j  &  delta(a_j)  &  in(a_{j+1}) & ... & in(a_L)|
//
// with prefix_j = out(a_1) for j >= 2 and everything for j = 1; the structure
// is integrated-Leibniz iff the parity vanishes for every tuple.
inline LeibnizReport check_integrated_leibniz(const CupStructure& cs, int lambda) {
    if (lambda < 1) throw std::invalid_argument("check_integrated_leibniz: lambda must be >= 1");
    std::size_t n0 = cs.checks();
    if (n0 == 0) return {};
    const auto& o = cs.orientation();

    std::vector<std::size_t> tup(std::size_t(lambda), 0);
    BitVector ones(cs.bits());
    for (std::size_t x = 0; x < cs.bits(); ++x) ones.set(x, true);

    auto defect = [&](const std::vector<std::size_t>& t) {
        bool total = false;
        for (int j = 0; j < lambda; ++j) {
            bool prefix_equal = true;
            for (int k = 1; k < j; ++k) prefix_equal &= t[std::size_t(k)] == t[0];
            if (j > 0 && !prefix_equal) continue;
            BitVector m = j > 0 ? o.out[t[0]] : ones;
            m &= cs.delta_of(t[std::size_t(j)]);
            for (int k = j + 1; k < lambda; ++k) m &= o.in[t[std::size_t(k)]];
            total ^= m.parity();
        }
        return total;
    };

    while (true) {
        if (defect(tup)) return {false, tup};
        int pos = lambda - 1;
        while (pos >= 0 && tup[std::size_t(pos)] + 1 == n0) tup[std::size_t(pos--)] = 0;
        if (pos < 0) return {};
        ++tup[std::size_t(pos)];
    }
}

struct ConditionReport {
    bool ok = true;
    std::string failed;  // description of the first violated condition
};

// Closed-form pairwise conditions, exact for lambda = 2 without any
// non-overlap assumption: every check has even in+out weight, and for every
// ordered pair of distinct checks the cross terms cancel.
inline ConditionReport leibniz_conditions_lambda2(const CupStructure& cs) {
    const auto& o = cs.orientation();
    for (std::size_t a = 0; a < cs.checks(); ++a)
        if ((o.in[a].popcount() + o.out[a].popcount()) % 2)
            return {false, "odd in+out weight at check " + cs.complex().label(0, a).str()};
    for (std::size_t a = 0; a < cs.checks(); ++a)
        for (std::size_t b = 0; b < cs.checks(); ++b) {
            if (a == b) continue;
            std::size_t s = (o.in[a] & o.in[b]).popcount() + (o.out[a] & o.out[b]).popcount() +
                            (o.out[a] & o.free[b]).popcount() + (o.free[a] & o.in[b]).popcount();
            if (s % 2)
                return {false, "pair condition fails for (" + cs.complex().label(0, a).str() +
                                   "," + cs.complex().label(0, b).str() + ")"};
        }
    return {};
}

// Closed-form conditions valid when check_nonoverlap holds. For lambda = 2
// the pair terms reduce to out&free / free&in; for lambda >= 3 the condition
// is lambda-independent: those two parities vanish separately and so does the
// out&free&in triple parity over distinct checks.
inline ConditionReport leibniz_conditions_nonoverlap(const CupStructure& cs, int lambda) {
    if (lambda < 2)
        throw std::invalid_argument("leibniz_conditions_nonoverlap: lambda must be >= 2");
    const auto& o = cs.orientation();
    auto name = [&](std::size_t a) { return cs.complex().label(0, a).str(); };
    for (std::size_t a = 0; a < cs.checks(); ++a)
        if ((o.in[a].popcount() + o.out[a].popcount()) % 2)
            return {false, "odd in+out weight at check " + name(a)};
    if (lambda == 2) {
        for (std::size_t a = 0; a < cs.checks(); ++a)
            for (std::size_t b = 0; b < cs.checks(); ++b) {
                if (a == b) continue;
                std::size_t s =
                    (o.out[a] & o.free[b]).popcount() + (o.free[a] & o.in[b]).popcount();
                if (s % 2)
                    return {false,
                            "pair condition fails for (" + name(a) + "," + name(b) + ")"};
            }
        return {};
    }
    for (std::size_t a = 0; a < cs.checks(); ++a)
        for (std::size_t b = 0; b < cs.checks(); ++b) {
            if (a == b) continue;
            if ((o.free[a] & o.in[b]).popcount() % 2)
                return {false, "odd free&in overlap for (" + name(a) + "," + name(b) + ")"};
            if ((o.out[a] & o.free[b]).popcount() % 2)
                return {false, "odd out&free overlap for (" + name(a) + "," + name(b) + ")"};
        }
    for (std::size_t a = 0; a < cs.checks(); ++a)
        for (std::size_t b = 0; b < cs.checks(); ++b)
            for (std::size_t c = 0; c < cs.checks(); ++c) {
                if (a == b || b == c || a == c) continue;
                if ((o.out[a] & o.free[b] & o.in[c]).popcount() % 2)
                    return {false, "odd out&free&in overlap for (" + name(a) + "," + name(b) +
                                       "," + name(c) + ")"};
            }
    return {};
}

}  // namespace cupforge
