#pragma once

// Bit-packed vectors and matrices over GF(2). Rows are contiguous runs of
// 64-bit words; all arithmetic is word-wise XOR/AND. Everything here is
// deterministic: no hashing, no pointer-order dependence.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cupforge {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVector unit(std::size_t n, std::size_t i) {
        BitVector v(n);
        v.set(i, true);
        return v;
    }
    static BitVector from_support(std::size_t n, const std::vector<std::size_t>& idx) {
        BitVector v(n);
        for (std::size_t i : idx) v.set(i, true);
        return v;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const {
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool b) {
        if (i >= n_) throw std::out_of_range("BitVector::set: index " + std::to_string(i));
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (b) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) {
        w_[i >> 6] ^= std::uint64_t(1) << (i & 63);
    }

    BitVector& operator^=(const BitVector& o) {
        check_len(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    BitVector& operator&=(const BitVector& o) {
        check_len(o);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { a ^= b; return a; }
    friend BitVector operator&(BitVector a, const BitVector& b) { a &= b; return a; }

    bool none() const {
        for (std::uint64_t w : w_) if (w) return false;
        return true;
    }
    bool any() const { return !none(); }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += std::size_t(std::popcount(w));
        return c;
    }
    bool parity() const { return popcount() & 1u; }

    // index of lowest set bit, or size() if none
    std::size_t first_set() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return k * 64 + std::size_t(std::countr_zero(w_[k]));
        return n_;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                s.push_back(k * 64 + std::size_t(std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return s;
    }

    bool operator==(const BitVector& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVector& o) const { return !(*this == o); }
    // deterministic total order: by length, then numeric with bit i weighted 2^i
    bool operator<(const BitVector& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        for (std::size_t k = w_.size(); k-- > 0;)
            if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
        return false;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    void check_len(const BitVector& o) const {
        if (n_ != o.n_) throw std::invalid_argument("BitVector: length mismatch");
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : r_(rows), c_(cols), stride_((cols + 63) / 64), w_(rows * stride_, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }
    static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
        BitMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("BitMatrix::from_rows: width mismatch");
            for (std::size_t j : rows[i].support()) m.set(i, j, true);
        }
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    bool get(std::size_t i, std::size_t j) const {
        return (w_[i * stride_ + (j >> 6)] >> (j & 63)) & 1u;
    }
    void set(std::size_t i, std::size_t j, bool b) {
        if (i >= r_ || j >= c_) throw std::out_of_range("BitMatrix::set");
        std::uint64_t m = std::uint64_t(1) << (j & 63);
        if (b) w_[i * stride_ + (j >> 6)] |= m; else w_[i * stride_ + (j >> 6)] &= ~m;
    }

    BitVector row(std::size_t i) const {
        BitVector v(c_);
        for (std::size_t j = 0; j < c_; ++j) if (get(i, j)) v.set(j, true);
        return v;
    }
    BitVector col(std::size_t j) const {
        BitVector v(r_);
        for (std::size_t i = 0; i < r_; ++i) if (get(i, j)) v.set(i, true);
        return v;
    }
    void set_row(std::size_t i, const BitVector& v) {
        if (v.size() != c_) throw std::invalid_argument("BitMatrix::set_row: width mismatch");
        for (std::size_t k = 0; k < stride_; ++k) w_[i * stride_ + k] = v.words()[k];
    }

    void xor_row(std::size_t dst, std::size_t src) {
        std::uint64_t* d = &w_[dst * stride_];
        const std::uint64_t* s = &w_[src * stride_];
        for (std::size_t k = 0; k < stride_; ++k) d[k] ^= s[k];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t k = 0; k < stride_; ++k)
            std::swap(w_[a * stride_ + k], w_[b * stride_ + k]);
    }
    bool row_none(std::size_t i) const {
        const std::uint64_t* p = &w_[i * stride_];
        for (std::size_t k = 0; k < stride_; ++k) if (p[k]) return false;
        return true;
    }

    BitMatrix transpose() const {
        BitMatrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < stride_; ++k) {
                std::uint64_t w = w_[i * stride_ + k];
                while (w) {
                    std::size_t j = k * 64 + std::size_t(std::countr_zero(w));
                    t.set(j, i, true);
                    w &= w - 1;
                }
            }
        return t;
    }

    // this * v  (v indexed by columns)
    BitVector mul(const BitVector& v) const {
        if (v.size() != c_) throw std::invalid_argument("BitMatrix::mul: size mismatch");
        BitVector out(r_);
        for (std::size_t i = 0; i < r_; ++i) {
            std::uint64_t acc = 0;
            const std::uint64_t* p = &w_[i * stride_];
            for (std::size_t k = 0; k < stride_; ++k) acc ^= p[k] & v.words()[k];
            if (std::popcount(acc) & 1) out.set(i, true);
        }
        return out;
    }

    // this * other
    BitMatrix mul(const BitMatrix& o) const {
        if (c_ != o.r_) throw std::invalid_argument("BitMatrix::mul: shape mismatch");
        BitMatrix out(r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < stride_; ++k) {
                std::uint64_t w = w_[i * stride_ + k];
                while (w) {
                    std::size_t j = k * 64 + std::size_t(std::countr_zero(w));
                    for (std::size_t t = 0; t < out.stride_; ++t)
                        out.w_[i * out.stride_ + t] ^= o.w_[j * o.stride_ + t];
                    w &= w - 1;
                }
            }
        return out;
    }

    bool operator==(const BitMatrix& o) const {
        return r_ == o.r_ && c_ == o.c_ && w_ == o.w_;
    }

private:
    std::size_t r_ = 0, c_ = 0, stride_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace cupforge
