#pragma once

// Based cochain complexes over GF(2) with labeled bases.
//
// A complex stores one ordered label list per degree and the coboundary
// matrices delta[p] : C^p -> C^{p+1}. Labels carry the combinatorial identity
// of basis elements (cells, tensor tuples, orbit classes) and have a total
// order; constructors keep each degree's labels sorted so that a basis
// element's index is its rank, which pins down qubit numbering everywhere.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cupforge/f2linalg.hpp"

namespace cupforge {

class BasisLabel {
public:
    enum class Kind { atom, tuple, orbit };

    static BasisLabel atom(std::string name) {
        BasisLabel l;
        l.kind_ = Kind::atom;
        l.name_ = std::move(name);
        return l;
    }
    static BasisLabel tuple(std::vector<BasisLabel> parts) {
        BasisLabel l;
        l.kind_ = Kind::tuple;
        l.parts_ = std::move(parts);
        return l;
    }
    // an orbit class, named by its canonical (least) representative tuple
    static BasisLabel orbit(std::vector<BasisLabel> rep_parts) {
        BasisLabel l;
        l.kind_ = Kind::orbit;
        l.parts_ = std::move(rep_parts);
        return l;
    }

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::vector<BasisLabel>& parts() const { return parts_; }

    std::string str() const {
        switch (kind_) {
            case Kind::atom: return name_;
            case Kind::tuple: return wrap('(', ')');
            case Kind::orbit: return wrap('[', ']');
        }
        return {};
    }

    bool operator==(const BasisLabel& o) const {
        return kind_ == o.kind_ && name_ == o.name_ && parts_ == o.parts_;
    }
    bool operator!=(const BasisLabel& o) const { return !(*this == o); }

    // total order: kind, then shortlex for atoms / componentwise for composites
    bool operator<(const BasisLabel& o) const {
        if (kind_ != o.kind_) return int(kind_) < int(o.kind_);
        if (kind_ == Kind::atom) {
            if (name_.size() != o.name_.size()) return name_.size() < o.name_.size();
            return name_ < o.name_;
        }
        std::size_t n = std::min(parts_.size(), o.parts_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (parts_[i] < o.parts_[i]) return true;
            if (o.parts_[i] < parts_[i]) return false;
        }
        return parts_.size() < o.parts_.size();
    }

private:
    std::string wrap(char open, char close) const {
        std::ostringstream os;
        os << open;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) os << ',';
            os << parts_[i].str();
        }
        os << close;
        return os.str();
    }

    Kind kind_ = Kind::atom;
    std::string name_;
    std::vector<BasisLabel> parts_;
};

struct ComplexIssue {
    enum class Code { shape_mismatch, square_nonzero };
    Code code;
    int degree;          // degree p the issue was found at
    std::string detail;
};

class BasedComplex {
public:
    BasedComplex() = default;

    // labels[p] must already be sorted and duplicate-free; delta[p] maps
    // degree p to p+1 (one matrix per adjacent pair, possibly with 0 rows).
    BasedComplex(std::vector<std::vector<BasisLabel>> labels, std::vector<BitMatrix> delta)
        : labels_(std::move(labels)), delta_(std::move(delta)) {
        for (int p = 0; p <= max_degree(); ++p) {
            auto& ls = labels_[std::size_t(p)];
            for (std::size_t i = 0; i + 1 < ls.size(); ++i)
                if (!(ls[i] < ls[i + 1]))
                    throw std::invalid_argument("BasedComplex: labels at degree " +
                                                std::to_string(p) + " not sorted/unique");
            index_.emplace_back();
            for (std::size_t i = 0; i < ls.size(); ++i) index_.back()[ls[i]] = i;
        }
    }

    int max_degree() const { return int(labels_.size()) - 1; }
    std::size_t dim(int p) const {
        return (p >= 0 && p <= max_degree()) ? labels_[std::size_t(p)].size() : 0;
    }
    const std::vector<BasisLabel>& labels(int p) const { return labels_.at(std::size_t(p)); }
    const BasisLabel& label(int p, std::size_t i) const { return labels_.at(std::size_t(p)).at(i); }

    // index of a label at degree p, or -1
    long index_of(int p, const BasisLabel& l) const {
        if (p < 0 || p > max_degree()) return -1;
        auto it = index_[std::size_t(p)].find(l);
        return it == index_[std::size_t(p)].end() ? -1 : long(it->second);
    }

    const BitMatrix& coboundary(int p) const { return delta_.at(std::size_t(p)); }

    // delta applied to a degree-p cochain (zero map above the top degree)
    BitVector apply_delta(int p, const BitVector& v) const {
        if (p >= max_degree()) return BitVector(0);
        return delta_[std::size_t(p)].mul(v);
    }

    std::vector<ComplexIssue> validate() const {
        std::vector<ComplexIssue> issues;
        if (delta_.size() + 1 != labels_.size()) {
            issues.push_back({ComplexIssue::Code::shape_mismatch, -1,
                              "expected " + std::to_string(labels_.size() ? labels_.size() - 1 : 0) +
                                  " coboundary maps, have " + std::to_string(delta_.size())});
            return issues;
        }
        for (int p = 0; p < max_degree(); ++p) {
            const BitMatrix& d = delta_[std::size_t(p)];
            if (d.rows() != dim(p + 1) || d.cols() != dim(p)) {
                issues.push_back({ComplexIssue::Code::shape_mismatch, p,
                                  "delta at degree " + std::to_string(p) + " is " +
                                      std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                                      ", expected " + std::to_string(dim(p + 1)) + "x" +
                                      std::to_string(dim(p))});
            }
        }
        if (!issues.empty()) return issues;  // shapes must hold before squaring
        for (int p = 0; p + 1 < max_degree(); ++p) {
            BitMatrix sq = delta_[std::size_t(p + 1)].mul(delta_[std::size_t(p)]);
            for (std::size_t j = 0; j < sq.cols(); ++j) {
                BitVector c = sq.col(j);
                if (c.any()) {
                    issues.push_back({ComplexIssue::Code::square_nonzero, p,
                                      "delta.delta != 0 on degree-" + std::to_string(p) +
                                          " basis element " + label(p, j).str()});
                    break;
                }
            }
        }
        return issues;
    }

    // cocycles at degree p (all of C^p at the top degree)
    std::vector<BitVector> cocycle_basis(int p) const {
        if (p >= max_degree()) {
            std::vector<BitVector> all;
            for (std::size_t i = 0; i < dim(p); ++i) all.push_back(BitVector::unit(dim(p), i));
            return all;
        }
        return kernel_basis(delta_[std::size_t(p)]);
    }

    std::vector<BitVector> coboundary_basis(int p) const {
        if (p <= 0 || p > max_degree()) return {};
        return image_basis(delta_[std::size_t(p - 1)]);
    }

    // canonical representatives of H^p = ker(delta^p) / im(delta^{p-1})
    std::vector<BitVector> cohomology_basis(int p) const {
        auto z = cocycle_basis(p);
        auto b = coboundary_basis(p);
        BitMatrix zm = z.empty() ? BitMatrix(0, dim(p)) : BitMatrix::from_rows(z, dim(p));
        BitMatrix bm = b.empty() ? BitMatrix(0, dim(p)) : BitMatrix::from_rows(b, dim(p));
        return quotient_basis(zm, bm);
    }

    std::size_t betti(int p) const {
        if (p < 0 || p > max_degree()) return 0;
        std::size_t zdim = (p == max_degree()) ? dim(p) : dim(p) - rank(delta_[std::size_t(p)]);
        std::size_t bdim = (p == 0) ? 0 : rank(delta_[std::size_t(p - 1)]);
        return zdim - bdim;
    }

private:
    std::vector<std::vector<BasisLabel>> labels_;
    std::vector<BitMatrix> delta_;
    std::vector<std::map<BasisLabel, std::size_t>> index_;
};

// Declarative construction: labels get sorted, then the coboundary of each
// basis element is asked for as a list of degree-(p+1) labels.
inline BasedComplex make_complex(
    std::vector<std::vector<BasisLabel>> labels,
    const std::function<std::vector<BasisLabel>(int, const BasisLabel&)>& coboundary_of) {
    for (auto& ls : labels) std::sort(ls.begin(), ls.end());
    // temporary index for filling matrices
    std::vector<std::map<BasisLabel, std::size_t>> index(labels.size());
    for (std::size_t p = 0; p < labels.size(); ++p)
        for (std::size_t i = 0; i < labels[p].size(); ++i) index[p][labels[p][i]] = i;
    std::vector<BitMatrix> delta;
    for (std::size_t p = 0; p + 1 < labels.size(); ++p) {
        BitMatrix d(labels[p + 1].size(), labels[p].size());
        for (std::size_t j = 0; j < labels[p].size(); ++j)
            for (const BasisLabel& out : coboundary_of(int(p), labels[p][j])) {
                auto it = index[p + 1].find(out);
                if (it == index[p + 1].end())
                    throw std::invalid_argument("make_complex: coboundary of " +
                                                labels[p][j].str() + " mentions unknown label " +
                                                out.str());
                d.set(it->second, j, !d.get(it->second, j));  // mod-2 accumulate
            }
        delta.push_back(std::move(d));
    }
    return BasedComplex(std::move(labels), std::move(delta));
}

}  // namespace cupforge
