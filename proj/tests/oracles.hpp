#pragma once

// Brute-force reference implementations and random instance generators shared
// by the unit tests and the acceptance suite. These deliberately take the
// slow, literal route (full cochain products, exhaustive enumeration) so the
// fast library code has something independent to be checked against.

#include <random>

#include "cupforge/orientation.hpp"

namespace oracles {

using namespace cupforge;

// Leibniz defect of one check tuple, evaluated the literal way: form the
// left-nested product with delta applied at position j as an actual degree-1
// cochain, integrate, and sum over j.
inline bool brute_leibniz_defect(const CupStructure& cs, const std::vector<std::size_t>& tup) {
    bool total = false;
    for (std::size_t j = 0; j < tup.size(); ++j) {
        std::vector<std::pair<int, BitVector>> factors;
        for (std::size_t k = 0; k < tup.size(); ++k) {
            BitVector check = BitVector::unit(cs.checks(), tup[k]);
            if (k == j)
                factors.emplace_back(1, cs.complex().apply_delta(0, check));
            else
                factors.emplace_back(0, check);
        }
        auto [deg, v] = cs.lambda_cup(factors);
        if (deg != 1) throw std::logic_error("brute_leibniz_defect: degree bookkeeping broke");
        total ^= cs.integral1(v);
    }
    return total;
}

// same contract (and same lexicographic tuple order) as check_integrated_leibniz
inline LeibnizReport brute_leibniz_oracle(const CupStructure& cs, int lambda) {
    std::size_t n0 = cs.checks();
    if (n0 == 0) return {};
    std::vector<std::size_t> tup(std::size_t(lambda), 0);
    while (true) {
        if (brute_leibniz_defect(cs, tup)) return {false, tup};
        int pos = lambda - 1;
        while (pos >= 0 && tup[std::size_t(pos)] + 1 == n0) tup[std::size_t(pos--)] = 0;
        if (pos < 0) return {};
        ++tup[std::size_t(pos)];
    }
}

// random two-term complex with a random pre-orientation; when nonoverlap is
// requested, each bit gets at most one check claiming it as in and one as out
inline CupStructure random_cup_structure(std::mt19937& rng, std::size_t n0, std::size_t n1,
                                         double density, bool nonoverlap) {
    std::bernoulli_distribution on(density);
    std::vector<std::vector<BasisLabel>> labels(2);
    for (std::size_t a = 0; a < n0; ++a) labels[0].push_back(BasisLabel::atom("a" + std::to_string(a)));
    for (std::size_t x = 0; x < n1; ++x) labels[1].push_back(BasisLabel::atom("x" + std::to_string(x)));
    BitMatrix d(n1, n0);
    for (std::size_t x = 0; x < n1; ++x)
        for (std::size_t a = 0; a < n0; ++a)
            if (on(rng)) d.set(x, a, true);
    BasedComplex cx({labels[0], labels[1]}, {d});

    PreOrientation ori;
    ori.in.assign(n0, BitVector(n1));
    ori.out.assign(n0, BitVector(n1));
    ori.free.assign(n0, BitVector(n1));
    if (!nonoverlap) {
        std::uniform_int_distribution<int> cat(0, 2);
        for (std::size_t a = 0; a < n0; ++a)
            for (std::size_t x = 0; x < n1; ++x)
                if (d.get(x, a)) {
                    switch (cat(rng)) {
                        case 0: ori.in[a].set(x, true); break;
                        case 1: ori.out[a].set(x, true); break;
                        default: ori.free[a].set(x, true); break;
                    }
                }
    } else {
        for (std::size_t x = 0; x < n1; ++x) {
            std::vector<std::size_t> supp;
            for (std::size_t a = 0; a < n0; ++a)
                if (d.get(x, a)) supp.push_back(a);
            if (supp.empty()) continue;
            // owner index supp.size() means "nobody"
            std::uniform_int_distribution<std::size_t> pick(0, supp.size());
            std::size_t in_owner = pick(rng), out_owner = pick(rng);
            for (std::size_t s = 0; s < supp.size(); ++s) {
                if (s == in_owner)
                    ori.in[supp[s]].set(x, true);
                else if (s == out_owner)
                    ori.out[supp[s]].set(x, true);
                else
                    ori.free[supp[s]].set(x, true);
            }
        }
    }
    return CupStructure(std::move(cx), std::move(ori));
}

// exhaustive minimum-weight search over all 2^n vectors (n <= 24): smallest
// nonzero kernel vector of `constraints` outside the row space of `triviality`
inline std::size_t brute_min_logical(const BitMatrix& constraints, const BitMatrix& triviality) {
    std::size_t n = constraints.cols();
    if (n > 24) throw std::invalid_argument("brute_min_logical: too many bits");
    Rref triv = rref(triviality);
    std::size_t best = SIZE_MAX;
    for (std::size_t bits = 1; bits < (std::size_t(1) << n); ++bits) {
        std::size_t w = std::size_t(std::popcount(bits));
        if (w >= best) continue;
        BitVector v(n);
        for (std::size_t i = 0; i < n; ++i)
            if (bits >> i & 1) v.set(i, true);
        if (constraints.mul(v).any()) continue;
        if (triv.reduce(v).none()) continue;
        best = w;
    }
    return best;
}

}  // namespace oracles
