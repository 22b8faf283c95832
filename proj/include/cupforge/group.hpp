#pragma once

// Finite Abelian groups Z_{n_1} x ... x Z_{n_r} with elements encoded in
// mixed radix, plus group-algebra vectors over GF(2) written as polynomials
// in the generators x, y, z, w (e.g. "x^3*y^2 + x^-1 + 1").

#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cupforge/bits.hpp"

namespace cupforge {

class AbelianGroup {
public:
    explicit AbelianGroup(std::vector<unsigned> orders) : orders_(std::move(orders)) {
        if (orders_.empty()) throw std::invalid_argument("AbelianGroup: no factors");
        size_ = 1;
        for (unsigned n : orders_) {
            if (n == 0) throw std::invalid_argument("AbelianGroup: zero order");
            size_ *= n;
        }
    }

    std::size_t size() const { return size_; }
    std::size_t rank() const { return orders_.size(); }
    const std::vector<unsigned>& orders() const { return orders_; }
    std::size_t identity() const { return 0; }

    std::vector<unsigned> coords(std::size_t a) const {
        std::vector<unsigned> c(orders_.size());
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            c[i] = unsigned(a % orders_[i]);
            a /= orders_[i];
        }
        return c;
    }

    std::size_t from_coords(const std::vector<long>& c) const {
        if (c.size() != orders_.size())
            throw std::invalid_argument("AbelianGroup: coordinate arity mismatch");
        std::size_t a = 0, stride = 1;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            long m = c[i] % long(orders_[i]);
            if (m < 0) m += orders_[i];
            a += stride * std::size_t(m);
            stride *= orders_[i];
        }
        return a;
    }

    std::size_t mul(std::size_t a, std::size_t b) const {
        std::size_t r = 0, stride = 1;
        for (unsigned n : orders_) {
            r += stride * ((a + b) % n);
            a /= n;
            b /= n;
            stride *= n;
        }
        return r;
    }

    std::size_t inv(std::size_t a) const {
        std::size_t r = 0, stride = 1;
        for (unsigned n : orders_) {
            r += stride * ((n - a % n) % n);
            a /= n;
            stride *= n;
        }
        return r;
    }

private:
    std::vector<unsigned> orders_;
    std::size_t size_;
};

namespace detail {
inline constexpr char kGenerators[] = {'x', 'y', 'z', 'w'};
}

inline std::string monomial_str(const AbelianGroup& g, std::size_t a) {
    auto c = g.coords(a);
    if (c.size() > 4) throw std::invalid_argument("monomial_str: more than four generators");
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += detail::kGenerators[i];
        if (c[i] != 1) s += "^" + std::to_string(c[i]);
    }
    return s.empty() ? "1" : s;
}

inline std::size_t parse_monomial(const AbelianGroup& g, const std::string& text) {
    std::vector<long> c(g.rank(), 0);
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(unsigned(text[i]))) ++i; };
    skip_ws();
    if (i < text.size() && text[i] == '1' ) {
        ++i;
        skip_ws();
        if (i != text.size()) throw std::invalid_argument("parse_monomial: trailing text in '" + text + "'");
        return g.identity();
    }
    bool first = true;
    while (i < text.size()) {
        if (!first) {
            if (text[i] != '*') throw std::invalid_argument("parse_monomial: expected '*' in '" + text + "'");
            ++i;
            skip_ws();
        }
        first = false;
        std::size_t gen = g.rank();
        for (std::size_t k = 0; k < g.rank() && k < 4; ++k)
            if (i < text.size() && text[i] == detail::kGenerators[k]) gen = k;
        if (gen == g.rank())
            throw std::invalid_argument("parse_monomial: unknown generator in '" + text + "'");
        ++i;
        long e = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            bool neg = i < text.size() && text[i] == '-';
            if (neg) ++i;
            if (i >= text.size() || !std::isdigit(unsigned(text[i])))
                throw std::invalid_argument("parse_monomial: bad exponent in '" + text + "'");
            e = 0;
            while (i < text.size() && std::isdigit(unsigned(text[i]))) e = e * 10 + (text[i++] - '0');
            if (neg) e = -e;
        }
        c[gen] += e;
        skip_ws();
    }
    return g.from_coords(c);
}

// "x^3*y^2 + x + 1" -> support vector over the group elements
inline BitVector parse_algebra(const AbelianGroup& g, const std::string& text) {
    BitVector v(g.size());
    std::size_t start = 0;
    auto add_term = [&](std::string term) {
        std::size_t a = term.find_first_not_of(" \t");
        std::size_t b = term.find_last_not_of(" \t");
        if (a == std::string::npos) throw std::invalid_argument("parse_algebra: empty term");
        v.flip(parse_monomial(g, term.substr(a, b - a + 1)));
    };
    for (std::size_t i = 0; i <= text.size(); ++i)
        if (i == text.size() || text[i] == '+') {
            add_term(text.substr(start, i - start));
            start = i + 1;
        }
    return v;
}

inline std::string algebra_str(const AbelianGroup& g, const BitVector& v) {
    std::string s;
    for (std::size_t a : v.support()) {
        if (!s.empty()) s += " + ";
        s += monomial_str(g, a);
    }
    return s.empty() ? "0" : s;
}

inline BitVector translate_left(const AbelianGroup& g, std::size_t a, const BitVector& v) {
    BitVector r(v.size());
    for (std::size_t h : v.support()) r.set(g.mul(a, h), true);
    return r;
}

inline BitVector translate_right(const AbelianGroup& g, const BitVector& v, std::size_t a) {
    BitVector r(v.size());
    for (std::size_t h : v.support()) r.set(g.mul(h, a), true);
    return r;
}

inline BitVector invert_support(const AbelianGroup& g, const BitVector& v) {
    BitVector r(v.size());
    for (std::size_t h : v.support()) r.set(g.inv(h), true);
    return r;
}

}  // namespace cupforge
