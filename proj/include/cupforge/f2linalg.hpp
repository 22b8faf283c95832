#pragma once

// Exact linear algebra over GF(2): reduced row echelon form and the derived
// subspace operations (rank, kernel, image, quotient bases, membership).
// All pivoting is leftmost-column / topmost-row, so every basis this module
// hands out is deterministic and reproducible across runs and platforms.

#include <optional>
#include <stdexcept>
#include <vector>

#include "cupforge/bits.hpp"

namespace cupforge {

struct Rref {
    BitMatrix m;              // fully reduced rows; zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column of each row, strictly increasing

    std::size_t rank() const { return pivots.size(); }

    // reduce v against the echelon rows; the result has no pivot-column bits
    BitVector reduce(BitVector v) const {
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (v.get(pivots[r])) {
                BitVector row = m.row(r);
                v ^= row;
            }
        return v;
    }
};

inline Rref rref(const BitMatrix& a) {
    BitMatrix m = a;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t sel = m.rows();
        for (std::size_t i = r; i < m.rows(); ++i)
            if (m.get(i, c)) { sel = i; break; }
        if (sel == m.rows()) continue;
        m.swap_rows(r, sel);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        pivots.push_back(c);
        ++r;
    }
    BitMatrix out(pivots.size(), m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) out.set_row(i, m.row(i));
    return Rref{std::move(out), std::move(pivots)};
}

inline std::size_t rank(const BitMatrix& a) { return rref(a).rank(); }

// Basis of the right kernel {v : a*v = 0}. One vector per free column, in
// ascending free-column order; vector for free column f has bit f set plus
// back-substituted pivot bits. Deterministic.
inline std::vector<BitVector> kernel_basis(const BitMatrix& a) {
    Rref e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVector v(a.cols());
        v.set(f, true);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            if (e.m.get(r, f)) v.set(e.pivots[r], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Basis of the column span: the original columns sitting at pivot positions.
// For the identity this is the standard basis.
inline std::vector<BitVector> image_basis(const BitMatrix& a) {
    Rref e = rref(a);
    std::vector<BitVector> basis;
    basis.reserve(e.pivots.size());
    for (std::size_t c : e.pivots) basis.push_back(a.col(c));
    return basis;
}

inline bool in_span(const BitVector& v, const Rref& space) {
    return space.reduce(v).none();
}
inline bool in_span(const BitVector& v, const std::vector<BitVector>& span_rows) {
    if (span_rows.empty()) return v.none();
    return in_span(v, rref(BitMatrix::from_rows(span_rows, v.size())));
}

// Representatives of span(Z)/span(B), where the rows of B must lie in span(Z)
// (invalid_argument otherwise). Each representative is reduced against the
// echelon form of B and the other representatives, smallest pivot first, so
// the returned coset basis is canonical.
inline std::vector<BitVector> quotient_basis(const BitMatrix& z, const BitMatrix& b) {
    if (z.cols() != b.cols() && b.rows() != 0)
        throw std::invalid_argument("quotient_basis: width mismatch");
    Rref ze = rref(z);
    for (std::size_t i = 0; i < b.rows(); ++i)
        if (!ze.reduce(b.row(i)).none())
            throw std::invalid_argument("quotient_basis: B is not contained in span(Z)");
    Rref be = rref(b);

    std::vector<BitVector> reps;          // kept mutually reduced
    std::vector<std::size_t> rep_pivots;
    for (std::size_t i = 0; i < ze.m.rows(); ++i) {
        BitVector v = be.reduce(ze.m.row(i));
        for (std::size_t r = 0; r < reps.size(); ++r)
            if (v.get(rep_pivots[r])) v ^= reps[r];
        if (v.none()) continue;
        std::size_t p = v.first_set();
        for (std::size_t r = 0; r < reps.size(); ++r)
            if (reps[r].get(p)) reps[r] ^= v;
        // insert keeping pivots ascending
        std::size_t pos = 0;
        while (pos < rep_pivots.size() && rep_pivots[pos] < p) ++pos;
        reps.insert(reps.begin() + long(pos), std::move(v));
        rep_pivots.insert(rep_pivots.begin() + long(pos), p);
    }
    return reps;
}

}  // namespace cupforge
