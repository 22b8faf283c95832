#pragma once

// CSS codes carved out of a based cochain complex: qubits sit at degree 1,
// X checks come from degree 0 (hx = transpose of delta^0), Z checks from
// degree 2 (hz = delta^1). Includes exact minimum logical weight search by
// ascending support weight and a randomized stabilizer-descent upper bound.

#include <random>

#include "cupforge/complex.hpp"

namespace cupforge {

struct CssCode {
    std::size_t n = 0, k = 0;
    BitMatrix hx, hz;  // checks x qubits
    std::vector<BitVector> x_logicals, z_logicals;

    static CssCode from_complex(const BasedComplex& cx) {
        if (cx.max_degree() < 1) throw std::invalid_argument("CssCode: need degrees 0 and 1");
        CssCode c;
        c.n = cx.dim(1);
        c.hx = cx.coboundary(0).transpose();
        c.hz = cx.max_degree() >= 2 ? cx.coboundary(1) : BitMatrix(0, c.n);
        c.k = c.n - rank(c.hx) - rank(c.hz);
        c.x_logicals = cx.cohomology_basis(1);
        // transpose side: kernel of hx modulo the row space of hz
        std::vector<BitVector> zrows = kernel_basis(c.hx);
        std::vector<BitVector> brows;
        for (std::size_t r = 0; r < c.hz.rows(); ++r) brows.push_back(c.hz.row(r));
        BitMatrix zm = zrows.empty() ? BitMatrix(0, c.n) : BitMatrix::from_rows(zrows, c.n);
        BitMatrix bm = brows.empty() ? BitMatrix(0, c.n) : BitMatrix::from_rows(brows, c.n);
        c.z_logicals = quotient_basis(zm, bm);
        if (c.x_logicals.size() != c.k || c.z_logicals.size() != c.k)
            throw std::logic_error("CssCode: logical count disagrees with rank computation");
        return c;
    }
};

struct DistanceResult {
    std::size_t weight = 0;  // exact minimum, or cap + 1 when !exact
    bool exact = true;
};

namespace detail {

// DFS over supports of fixed weight with prefix syndromes; returns true and
// fills idx when a nonzero constraint-kernel vector outside the row space of
// `triviality` exists at this weight
class WeightSearch {
public:
    WeightSearch(const BitMatrix& constraints, const Rref& triviality)
        : n_(constraints.cols()),
          words_(std::max<std::size_t>(1, (constraints.rows() + 63) / 64)),
          cols_(words_ * n_, 0),
          triv_(triviality) {
        for (std::size_t r = 0; r < constraints.rows(); ++r)
            for (std::size_t c = 0; c < constraints.cols(); ++c)
                if (constraints.get(r, c)) cols_[c * words_ + r / 64] |= 1ull << (r % 64);
    }

    bool find(std::size_t w, std::vector<std::size_t>& idx) {
        idx.assign(w, 0);
        stack_.assign((w + 1) * words_, 0);
        w_ = w;
        idx_ = &idx;
        return rec(0, 0);
    }

private:
    bool rec(std::size_t d, std::size_t start) {
        const std::uint64_t* s = &stack_[d * words_];
        if (d + 1 == w_) {
            for (std::size_t i = start; i < n_; ++i) {
                const std::uint64_t* col = &cols_[i * words_];
                bool zero = true;
                for (std::size_t t = 0; t < words_ && zero; ++t) zero = (s[t] ^ col[t]) == 0;
                if (!zero) continue;
                (*idx_)[d] = i;
                if (nontrivial()) return true;
            }
            return false;
        }
        std::uint64_t* next = &stack_[(d + 1) * words_];
        for (std::size_t i = start; i + (w_ - d - 1) < n_; ++i) {
            const std::uint64_t* col = &cols_[i * words_];
            for (std::size_t t = 0; t < words_; ++t) next[t] = s[t] ^ col[t];
            (*idx_)[d] = i;
            if (rec(d + 1, i + 1)) return true;
        }
        return false;
    }

    bool nontrivial() const {
        BitVector v(n_);
        for (std::size_t i : *idx_) v.set(i, true);
        return triv_.reduce(v).any();
    }

    std::size_t n_, words_;
    std::vector<std::uint64_t> cols_;
    const Rref& triv_;
    std::vector<std::uint64_t> stack_;
    std::size_t w_ = 0;
    std::vector<std::size_t>* idx_ = nullptr;
};

}  // namespace detail

// minimum weight of a nonzero v with constraints*v = 0 and v outside the row
// space of `triviality`, searched up to `cap`; weight = cap+1, exact = false
// when the search exhausts the cap
inline DistanceResult min_logical_weight(const BitMatrix& constraints, const BitMatrix& triviality,
                                         std::size_t cap) {
    if (constraints.cols() == 0) return {0, true};
    Rref triv = rref(triviality);
    detail::WeightSearch search(constraints, triv);
    std::vector<std::size_t> idx;
    for (std::size_t w = 1; w <= std::min(cap, constraints.cols()); ++w)
        if (search.find(w, idx)) return {w, true};
    return {cap + 1, false};
}

struct CodeParams {
    std::size_t n = 0, k = 0;
    DistanceResult dx, dz;
    std::size_t d() const { return std::min(dx.weight, dz.weight); }
    bool d_exact() const {
        // the minimum is exact if some side attaining it is exact
        return (dx.exact && dx.weight <= dz.weight) || (dz.exact && dz.weight <= dx.weight);
    }
};

inline CodeParams code_params(const CssCode& c, std::size_t cap) {
    CodeParams p;
    p.n = c.n;
    p.k = c.k;
    if (c.k == 0) return p;
    p.dx = min_logical_weight(c.hz, c.hx, cap);
    p.dz = min_logical_weight(c.hx, c.hz, cap);
    return p;
}

struct ClassicalParams {
    std::size_t n = 0, k = 0;
    DistanceResult d;
};

// the classical code checked by the degree-0 elements of a two-term complex
inline ClassicalParams classical_params(const BasedComplex& two_term, std::size_t cap) {
    ClassicalParams p;
    p.n = two_term.dim(1);
    BitMatrix h = two_term.coboundary(0).transpose();
    p.k = p.n - rank(h);
    if (p.k > 0) p.d = min_logical_weight(h, BitMatrix(0, p.n), cap);
    return p;
}

// randomized upper bound on the minimum logical weight: greedy descent over
// stabilizer additions (with pair moves when stuck) from every logical class,
// restarted from random stabilizer dressings; deterministic in the seed
inline DistanceResult logical_weight_upper_bound(const std::vector<BitVector>& logicals,
                                                 const BitMatrix& stabilizers, unsigned seed,
                                                 int restarts = 12,
                                                 std::size_t max_classes = 4096) {
    if (logicals.empty()) return {0, true};
    std::size_t n = logicals[0].size();
    std::vector<BitVector> rows;
    for (std::size_t r = 0; r < stabilizers.rows(); ++r) {
        BitVector row = stabilizers.row(r);
        if (row.any()) rows.push_back(row);
    }
    std::mt19937 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto descend = [&](BitVector v) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (const auto& s : rows) {
                if ((v ^ s).popcount() < v.popcount()) {
                    v ^= s;
                    moved = true;
                }
            }
            if (moved) continue;
            for (std::size_t i = 0; i < rows.size() && !moved; ++i)
                for (std::size_t j = i + 1; j < rows.size() && !moved; ++j) {
                    BitVector w = v ^ rows[i];
                    w ^= rows[j];
                    if (w.popcount() < v.popcount()) {
                        v = std::move(w);
                        moved = true;
                    }
                }
        }
        return v;
    };

    std::size_t best = SIZE_MAX;
    std::size_t classes = (logicals.size() >= 63) ? max_classes
                                                  : std::min((std::size_t(1) << logicals.size()) - 1,
                                                             max_classes);
    bool enumerate = logicals.size() < 63 &&
                     (std::size_t(1) << logicals.size()) - 1 <= max_classes;
    for (std::size_t c = 1; c <= classes; ++c) {
        BitVector base(n);
        if (enumerate) {
            for (std::size_t b = 0; b < logicals.size(); ++b)
                if (c >> b & 1) base ^= logicals[b];
        } else {
            bool nonzero = false;
            while (!nonzero) {
                base = BitVector(n);
                for (const auto& l : logicals)
                    if (coin(rng)) {
                        base ^= l;
                        nonzero = true;
                    }
            }
        }
        for (int r = 0; r < restarts; ++r) {
            BitVector v = base;
            if (r > 0)
                for (const auto& s : rows)
                    if (unit(rng) < 0.15) v ^= s;
            v = descend(std::move(v));
            best = std::min(best, v.popcount());
        }
    }
    return {best, false};
}

}  // namespace cupforge
