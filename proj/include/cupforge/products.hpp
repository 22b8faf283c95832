#pragma once

// Tensor and balanced products of oriented two-term complexes.
//
// The lambda-fold tensor product of two-term complexes has degrees 0..lambda;
// a degree-d basis element is a tuple with exactly d factors sitting in
// degree 1 (recorded as a bitmask) and one basis index per factor. The cup
// product acts componentwise, so on basis elements it is again a basis
// element or zero. The top-degree integral is the weight parity.
//
// A balanced product quotients the tensor complex by a free action of a
// finite Abelian group H that permutes each factor's basis compatibly with
// the coboundaries and the orientation. Basis elements of the quotient are
// orbits (named by their least member); the cup product of two orbit classes
// sums the tensor products of one fixed representative against the whole
// orbit of the other.

#include <algorithm>
#include <bit>
#include <cstdint>

#include "cupforge/group.hpp"
#include "cupforge/orientation.hpp"

namespace cupforge {

class TensorCupComplex {
public:
    struct Elem {
        std::uint32_t mask = 0;             // which factors sit in degree 1
        std::vector<std::size_t> idx;       // basis index inside each factor
    };

    explicit TensorCupComplex(std::vector<CupStructure> factors) : factors_(std::move(factors)) {
        if (factors_.empty() || factors_.size() > 31)
            throw std::invalid_argument("TensorCupComplex: need between 1 and 31 factors");
        std::size_t total = 1;
        stride_.assign(factors_.size(), 1);
        for (std::size_t f = 0; f < factors_.size(); ++f) {
            stride_[f] = total;
            total *= std::max(factors_[f].checks(), factors_[f].bits());
        }
        lookup_.assign((std::size_t(1) << factors_.size()) * total, SIZE_MAX);
        radix_total_ = total;

        int lam = lambda();
        elems_.resize(std::size_t(lam) + 1);
        std::vector<std::vector<BasisLabel>> labels(std::size_t(lam) + 1);
        for (std::uint32_t mask = 0; mask < (1u << lam); ++mask) {
            int d = std::popcount(mask);
            // odometer over per-factor dimensions for this mask
            std::vector<std::size_t> dims(std::size_t(lam), 0);
            for (int f = 0; f < lam; ++f)
                dims[std::size_t(f)] =
                    (mask >> f & 1) ? factors_[std::size_t(f)].bits() : factors_[std::size_t(f)].checks();
            if (std::find(dims.begin(), dims.end(), 0u) != dims.end()) continue;
            Elem e{mask, std::vector<std::size_t>(std::size_t(lam), 0)};
            while (true) {
                elems_[std::size_t(d)].push_back(e);
                int f = 0;
                while (f < lam && e.idx[std::size_t(f)] + 1 == dims[std::size_t(f)])
                    e.idx[std::size_t(f++)] = 0;
                if (f == lam) break;
                ++e.idx[std::size_t(f)];
            }
        }
        // sort each degree by label and build the direct-address lookup
        for (int d = 0; d <= lam; ++d) {
            auto& es = elems_[std::size_t(d)];
            std::vector<std::pair<BasisLabel, Elem>> paired;
            paired.reserve(es.size());
            for (auto& e : es) paired.emplace_back(label_of(e), std::move(e));
            std::sort(paired.begin(), paired.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            es.clear();
            for (auto& [l, e] : paired) {
                lookup_[key_of(e)] = es.size();
                es.push_back(std::move(e));
                labels[std::size_t(d)].push_back(std::move(l));
            }
        }
        // coboundary: raise one degree-0 factor at a time
        std::vector<BitMatrix> delta;
        for (int d = 0; d < lam; ++d) {
            BitMatrix m(elems_[std::size_t(d) + 1].size(), elems_[std::size_t(d)].size());
            for (std::size_t i = 0; i < elems_[std::size_t(d)].size(); ++i) {
                Elem e = elems_[std::size_t(d)][i];
                for (int f = 0; f < lam; ++f) {
                    if (e.mask >> f & 1) continue;
                    Elem up = e;
                    up.mask |= 1u << f;
                    for (std::size_t t : factors_[std::size_t(f)].delta_of(e.idx[std::size_t(f)]).support()) {
                        up.idx[std::size_t(f)] = t;
                        m.set(lookup_[key_of(up)], i, true);
                    }
                }
            }
            delta.push_back(std::move(m));
        }
        cx_ = BasedComplex(std::move(labels), std::move(delta));
    }

    int lambda() const { return int(factors_.size()); }
    const CupStructure& factor(std::size_t f) const { return factors_.at(f); }
    const BasedComplex& complex() const { return cx_; }

    const Elem& elem(int d, std::size_t i) const { return elems_.at(std::size_t(d)).at(i); }
    std::size_t index_of(const Elem& e) const {
        std::size_t r = lookup_.at(key_of(e));
        if (r == SIZE_MAX) throw std::out_of_range("TensorCupComplex: unknown element");
        return r;
    }

    // componentwise cup of basis elements: a basis element or nothing
    std::optional<std::size_t> cup_monomial(int p, std::size_t i, int q, std::size_t j) const {
        const Elem& a = elem(p, i);
        const Elem& b = elem(q, j);
        if (a.mask & b.mask) return std::nullopt;  // some factor would be degree 1 twice
        Elem r{a.mask | b.mask, std::vector<std::size_t>(factors_.size())};
        for (std::size_t f = 0; f < factors_.size(); ++f) {
            auto k = factors_[f].cup_basis(a.mask >> f & 1, a.idx[f], b.mask >> f & 1, b.idx[f]);
            if (!k) return std::nullopt;
            r.idx[f] = *k;
        }
        return index_of(r);
    }

    BitVector cup_vec(int p, std::size_t i, int q, std::size_t j) const {
        BitVector r(cx_.dim(p + q));
        if (auto m = cup_monomial(p, i, q, j)) r.flip(*m);
        return r;
    }

    BitVector cup(int p, const BitVector& u, int q, const BitVector& v) const {
        BitVector r(cx_.dim(p + q));
        for (std::size_t i : u.support())
            for (std::size_t j : v.support())
                if (auto m = cup_monomial(p, i, q, j)) r.flip(*m);
        return r;
    }

    // integral over the top degree: weight parity
    bool integral_top(const BitVector& v) const {
        if (v.size() != cx_.dim(lambda()))
            throw std::invalid_argument("integral_top: not a top-degree cochain");
        return v.parity();
    }

    bool integral_defined() const {
        for (const auto& f : factors_)
            if (!f.integral_defined()) return false;
        return true;
    }

private:
    std::size_t key_of(const Elem& e) const {
        std::size_t k = 0;
        for (std::size_t f = 0; f < factors_.size(); ++f) k += stride_[f] * e.idx[f];
        return std::size_t(e.mask) * radix_total_ + k;
    }

    BasisLabel label_of(const Elem& e) const {
        std::vector<BasisLabel> parts;
        for (std::size_t f = 0; f < factors_.size(); ++f)
            parts.push_back(factors_[f].complex().label(e.mask >> f & 1, e.idx[f]));
        return BasisLabel::tuple(std::move(parts));
    }

    std::vector<CupStructure> factors_;
    BasedComplex cx_;
    std::vector<std::vector<Elem>> elems_;
    std::vector<std::size_t> stride_;
    std::size_t radix_total_ = 1;
    std::vector<std::size_t> lookup_;
};

// permutation action of a finite Abelian group on the factors of a tensor
// complex: gen_perm[g][f][d] permutes factor f's degree-d basis under the
// g-th generator of the group
struct BalancedAction {
    AbelianGroup group;
    std::vector<std::vector<std::array<std::vector<std::size_t>, 2>>> gen_perm;
};

// verifies each generator permutes bases bijectively, commutes with every
// factor coboundary, and maps in/out sets onto the image check's in/out sets
inline std::vector<std::string> check_action_compatibility(const TensorCupComplex& tensor,
                                                           const BalancedAction& action) {
    std::vector<std::string> issues;
    std::size_t lam = std::size_t(tensor.lambda());
    if (action.gen_perm.size() != action.group.rank()) {
        issues.push_back("action has " + std::to_string(action.gen_perm.size()) +
                         " generator tables, group has rank " + std::to_string(action.group.rank()));
        return issues;
    }
    auto permute = [](const std::vector<std::size_t>& perm, const BitVector& v) {
        BitVector r(v.size());
        for (std::size_t i : v.support()) r.set(perm[i], true);
        return r;
    };
    for (std::size_t g = 0; g < action.gen_perm.size(); ++g) {
        if (action.gen_perm[g].size() != lam) {
            issues.push_back("generator " + std::to_string(g) + " missing factor tables");
            continue;
        }
        for (std::size_t f = 0; f < lam; ++f) {
            const CupStructure& cs = tensor.factor(f);
            std::array<std::size_t, 2> dims{cs.checks(), cs.bits()};
            const auto& tables = action.gen_perm[g][f];
            bool shaped = true;
            for (int d = 0; d < 2; ++d) {
                if (tables[std::size_t(d)].size() != dims[std::size_t(d)]) {
                    issues.push_back("generator " + std::to_string(g) + ", factor " +
                                     std::to_string(f) + ": degree-" + std::to_string(d) +
                                     " table has wrong size");
                    shaped = false;
                    continue;
                }
                std::vector<bool> hit(dims[std::size_t(d)], false);
                for (std::size_t i : tables[std::size_t(d)]) {
                    if (i >= dims[std::size_t(d)] || hit[i]) {
                        issues.push_back("generator " + std::to_string(g) + ", factor " +
                                         std::to_string(f) + ": degree-" + std::to_string(d) +
                                         " table is not a permutation");
                        shaped = false;
                        break;
                    }
                    hit[i] = true;
                }
            }
            if (!shaped) continue;
            for (std::size_t a = 0; a < dims[0]; ++a) {
                std::size_t a2 = tables[0][a];
                if (permute(tables[1], cs.delta_of(a)) != cs.delta_of(a2))
                    issues.push_back("generator " + std::to_string(g) + ", factor " +
                                     std::to_string(f) + ": coboundary not equivariant at check " +
                                     cs.complex().label(0, a).str());
                if (permute(tables[1], cs.orientation().in[a]) != cs.orientation().in[a2] ||
                    permute(tables[1], cs.orientation().out[a]) != cs.orientation().out[a2])
                    issues.push_back("generator " + std::to_string(g) + ", factor " +
                                     std::to_string(f) + ": orientation not equivariant at check " +
                                     cs.complex().label(0, a).str());
            }
        }
    }
    return issues;
}

class BalancedCupComplex {
public:
    BalancedCupComplex(TensorCupComplex tensor, BalancedAction action)
        : tensor_(std::move(tensor)), action_(std::move(action)) {
        auto issues = check_action_compatibility(tensor_, action_);
        if (!issues.empty())
            throw std::invalid_argument("BalancedCupComplex: " + issues.front());
        build_element_perms();
        build_orbits();
    }

    const TensorCupComplex& tensor() const { return tensor_; }
    const AbelianGroup& group() const { return action_.group; }
    const BasedComplex& complex() const { return quotient_; }
    int lambda() const { return tensor_.lambda(); }
    bool is_free() const { return free_; }

    std::size_t orbit_of(int d, std::size_t tensor_index) const {
        return orbit_of_.at(std::size_t(d)).at(tensor_index);
    }
    std::size_t rep_of(int d, std::size_t orbit) const {
        return reps_.at(std::size_t(d)).at(orbit);
    }

    // tensor basis index moved by group element h
    std::size_t act(std::size_t h, int d, std::size_t tensor_index) const {
        TensorCupComplex::Elem e = tensor_.elem(d, tensor_index);
        for (std::size_t f = 0; f < std::size_t(tensor_.lambda()); ++f)
            e.idx[f] = elem_perm_[h][f][e.mask >> f & 1][e.idx[f]];
        return tensor_.index_of(e);
    }

    BitVector project(int d, const BitVector& tensor_vec) const {
        BitVector r(quotient_.dim(d));
        for (std::size_t i : tensor_vec.support()) r.flip(orbit_of_.at(std::size_t(d)).at(i));
        return r;
    }

    // orbit cup: one representative against the full orbit of the other
    BitVector cup_vec(int p, std::size_t i, int q, std::size_t j) const {
        BitVector r(quotient_.dim(p + q));
        std::size_t ri = rep_of(p, i), rj = rep_of(q, j);
        for (std::size_t h = 0; h < action_.group.size(); ++h)
            if (auto m = tensor_.cup_monomial(p, ri, q, act(h, q, rj)))
                r.flip(orbit_of_.at(std::size_t(p + q)).at(*m));
        return r;
    }

    BitVector cup(int p, const BitVector& u, int q, const BitVector& v) const {
        BitVector r(quotient_.dim(p + q));
        for (std::size_t i : u.support())
            for (std::size_t j : v.support()) r ^= cup_vec(p, i, q, j);
        return r;
    }

    bool integral_top(const BitVector& v) const {
        if (v.size() != quotient_.dim(lambda()))
            throw std::invalid_argument("integral_top: not a top-degree cochain");
        return v.parity();
    }

    bool integral_defined() const { return tensor_.integral_defined(); }

private:
    void build_element_perms() {
        std::size_t lam = std::size_t(tensor_.lambda());
        std::size_t n = action_.group.size();
        elem_perm_.assign(n, {});
        for (std::size_t h = 0; h < n; ++h) {
            auto c = action_.group.coords(h);
            auto& per_factor = elem_perm_[h];
            per_factor.resize(lam);
            for (std::size_t f = 0; f < lam; ++f)
                for (int d = 0; d < 2; ++d) {
                    std::size_t dim = d ? tensor_.factor(f).bits() : tensor_.factor(f).checks();
                    std::vector<std::size_t> perm(dim);
                    for (std::size_t i = 0; i < dim; ++i) perm[i] = i;
                    for (std::size_t g = 0; g < c.size(); ++g) {
                        const auto& gp = action_.gen_perm[g][f][std::size_t(d)];
                        for (unsigned rep = 0; rep < c[g]; ++rep)
                            for (std::size_t i = 0; i < dim; ++i) perm[i] = gp[perm[i]];
                    }
                    per_factor[f][std::size_t(d)] = std::move(perm);
                }
        }
    }

    void build_orbits() {
        int lam = tensor_.lambda();
        std::size_t n = action_.group.size();
        orbit_of_.resize(std::size_t(lam) + 1);
        reps_.resize(std::size_t(lam) + 1);
        std::vector<std::vector<BasisLabel>> labels(std::size_t(lam) + 1);
        for (int d = 0; d <= lam; ++d) {
            std::size_t dim = tensor_.complex().dim(d);
            auto& omap = orbit_of_[std::size_t(d)];
            omap.assign(dim, SIZE_MAX);
            for (std::size_t i = 0; i < dim; ++i) {
                if (omap[i] != SIZE_MAX) continue;
                std::size_t o = reps_[std::size_t(d)].size();
                std::size_t members = 0;
                for (std::size_t h = 0; h < n; ++h) {
                    std::size_t t = act(h, d, i);
                    if (omap[t] == SIZE_MAX) {
                        omap[t] = o;
                        ++members;
                    }
                }
                reps_[std::size_t(d)].push_back(i);
                labels[std::size_t(d)].push_back(
                    BasisLabel::orbit(tensor_.complex().label(d, i).parts()));
                if (members != n) free_ = false;
            }
        }
        std::vector<BitMatrix> delta;
        for (int d = 0; d < lam; ++d) {
            BitMatrix m(reps_[std::size_t(d) + 1].size(), reps_[std::size_t(d)].size());
            for (std::size_t o = 0; o < reps_[std::size_t(d)].size(); ++o) {
                BitVector img = tensor_.complex().coboundary(d).col(reps_[std::size_t(d)][o]);
                for (std::size_t t : img.support()) {
                    std::size_t to = orbit_of_[std::size_t(d) + 1][t];
                    m.set(to, o, !m.get(to, o));
                }
            }
            delta.push_back(std::move(m));
        }
        quotient_ = BasedComplex(std::move(labels), std::move(delta));
    }

    TensorCupComplex tensor_;
    BalancedAction action_;
    std::vector<std::vector<std::array<std::vector<std::size_t>, 2>>> elem_perm_;
    std::vector<std::vector<std::size_t>> orbit_of_;
    std::vector<std::vector<std::size_t>> reps_;
    bool free_ = true;
    BasedComplex quotient_;
};

}  // namespace cupforge
