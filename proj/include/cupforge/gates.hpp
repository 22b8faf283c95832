#pragma once

// Diagonal logical gates from integrated cup products: the exact multilinear
// phase polynomial of a product structure, its synthesis into a constant-depth
// multi-controlled-Z circuit, stabilizer-flow invariance certificates, and the
// induced action on cohomology classes.

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cupforge/f2linalg.hpp"
#include "cupforge/orientation.hpp"
#include "cupforge/products.hpp"

namespace cupforge {

// Psi(c_1, .., c_lambda): the integral of the left-nested cup product of one
// degree-one vector per copy, i.e. the weight parity of the top-degree result.
// The product structure supplies complex() and cup().
template <typename Product>
bool psi_eval(const Product& s, const std::vector<BitVector>& args) {
    int lambda = s.complex().max_degree();
    if (int(args.size()) != lambda)
        throw std::invalid_argument("psi_eval: need one argument per copy");
    BitVector acc = args[0];
    for (int d = 1; d < lambda; ++d) {
        if (acc.none()) return false;
        acc = s.cup(d, acc, 1, args[std::size_t(d)]);
    }
    return acc.parity();
}

// multilinear phase polynomial over F2: one boolean variable per (copy,
// qubit) address; monomials are sorted distinct variable sets
struct PhasePolynomial {
    int lambda = 0;
    std::size_t qubits = 0;
    std::vector<std::vector<std::pair<int, std::size_t>>> monomials;

    bool eval(const std::vector<BitVector>& assignment) const {
        bool v = false;
        for (const auto& m : monomials) {
            bool term = true;
            for (auto [c, q] : m) term = term && assignment[std::size_t(c)].get(q);
            v ^= term;
        }
        return v;
    }
};

// Exact polynomial of Psi: the monomial (q_1, .., q_lambda) appears iff the
// integrated cup of the corresponding basis vectors is odd. Partial products
// prune the enumeration, so the cost tracks the nonzero cup structure.
template <typename Product>
PhasePolynomial psi_polynomial(const Product& s) {
    const BasedComplex& cx = s.complex();
    int lambda = cx.max_degree();
    if (lambda < 1) throw std::invalid_argument("psi_polynomial: need a positive top degree");
    PhasePolynomial poly;
    poly.lambda = lambda;
    poly.qubits = cx.dim(1);
    std::vector<std::pair<int, std::size_t>> stack;
    auto rec = [&](auto&& self, int depth, const BitVector& acc) -> void {
        if (depth == lambda) {
            if (acc.parity()) poly.monomials.push_back(stack);
            return;
        }
        for (std::size_t q = 0; q < poly.qubits; ++q) {
            BitVector unit = BitVector::unit(poly.qubits, q);
            BitVector next = depth == 0 ? unit : s.cup(depth, acc, 1, unit);
            if (depth > 0 && next.none()) continue;
            stack.push_back({depth, q});
            self(self, depth + 1, next);
            stack.pop_back();
        }
    };
    rec(rec, 0, BitVector());
    std::sort(poly.monomials.begin(), poly.monomials.end());
    return poly;
}

// ordered list of distinct multi-controlled-Z gates; phase(assignment) is the
// parity of satisfied gates, so applying the circuit multiplies the state by
// (-1)^phase
struct Circuit {
    int lambda = 0;
    std::size_t qubits = 0;
    std::size_t arity = 0;
    std::vector<std::vector<std::pair<int, std::size_t>>> gates;

    bool phase(const std::vector<BitVector>& assignment) const {
        bool v = false;
        for (const auto& gseq : gates) {
            bool term = true;
            for (auto [c, q] : gseq) term = term && assignment[std::size_t(c)].get(q);
            v ^= term;
        }
        return v;
    }
};

// one gate per monomial in lexicographic address order; the arity must be
// uniform across the polynomial
inline Circuit synth_circuit(const PhasePolynomial& p) {
    Circuit c;
    c.lambda = p.lambda;
    c.qubits = p.qubits;
    c.gates = p.monomials;
    std::sort(c.gates.begin(), c.gates.end());
    for (const auto& gseq : c.gates) {
        if (c.arity == 0) c.arity = gseq.size();
        if (gseq.size() != c.arity || gseq.empty())
            throw std::invalid_argument("synth_circuit: mixed or empty gate arity");
    }
    return c;
}

inline std::string gate_name(std::size_t arity) {
    if (arity == 1) return "Z";
    if (arity == 2) return "CZ";
    if (arity == 3) return "CCZ";
    return "C" + std::to_string(arity - 1) + "Z";
}

// degree-one basis labels in canonical index order
inline std::vector<std::string> qubit_labels(const BasedComplex& cx) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < cx.dim(1); ++i) out.push_back(cx.label(1, i).str());
    return out;
}

// one gate per line: "<name> <copy>:<qubit-label> ..." with 1-based copies
inline std::string circuit_text(const Circuit& c, const std::vector<std::string>& labels) {
    std::string out;
    for (const auto& gseq : c.gates) {
        out += gate_name(gseq.size());
        for (auto [copy, q] : gseq) out += " " + std::to_string(copy + 1) + ":" + labels.at(q);
        out += "\n";
    }
    return out;
}

// assignment of gates to parallel layers; gates within a layer touch
// pairwise-disjoint (copy, qubit) addresses
struct DepthCertificate {
    std::size_t depth = 0;
    std::vector<std::size_t> layer;  // per gate, in circuit order
    bool valid = false;
};

// Greedy first-fit layering. Gates are scheduled grouped by their class
// pattern (the tuple of qubit classes along the gate) and then by address, so
// for translation-symmetric instances the layer count depends on the pattern
// mix rather than the instance size. The layering is re-verified before it is
// returned.
inline DepthCertificate circuit_depth_certificate(const Circuit& c,
                                                  const std::vector<std::size_t>& qubit_class = {}) {
    DepthCertificate cert;
    cert.layer.assign(c.gates.size(), 0);
    auto pattern = [&](std::size_t gi) {
        std::vector<std::size_t> p;
        for (auto [copy, q] : c.gates[gi]) {
            (void)copy;
            p.push_back(qubit_class.empty() ? 0 : qubit_class.at(q));
        }
        return p;
    };
    std::vector<std::size_t> order(c.gates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto pa = pattern(a), pb = pattern(b);
        return pa != pb ? pa < pb : c.gates[a] < c.gates[b];
    });
    std::vector<std::set<std::pair<int, std::size_t>>> used;
    for (std::size_t gi : order) {
        std::size_t l = 0;
        for (;; ++l) {
            if (l == used.size()) used.emplace_back();
            bool clash = false;
            for (auto ad : c.gates[gi])
                if (used[l].count(ad)) {
                    clash = true;
                    break;
                }
            if (!clash) break;
        }
        for (auto ad : c.gates[gi]) used[l].insert(ad);
        cert.layer[gi] = l;
    }
    cert.depth = used.size();
    cert.valid = true;
    std::vector<std::set<std::pair<int, std::size_t>>> seen(cert.depth);
    for (std::size_t gi = 0; gi < c.gates.size(); ++gi)
        for (auto ad : c.gates[gi])
            if (!seen[cert.layer[gi]].insert(ad).second) cert.valid = false;
    return cert;
}

// class of each degree-one basis element: which factors sit in degree one
inline std::vector<std::size_t> tensor_qubit_classes(const TensorCupComplex& t) {
    std::vector<std::size_t> cls(t.complex().dim(1));
    for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = t.elem(1, i).mask;
    return cls;
}

inline std::vector<std::size_t> balanced_qubit_classes(const BalancedCupComplex& b) {
    std::vector<std::size_t> cls(b.complex().dim(1));
    for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = b.tensor().elem(1, b.rep_of(1, i)).mask;
    return cls;
}

// the columns of the degree-zero coboundary: generators of the stabilizer flow
inline std::vector<BitVector> coboundary_generators(const BasedComplex& cx) {
    std::vector<BitVector> gens;
    for (std::size_t a = 0; a < cx.dim(0); ++a) gens.push_back(cx.coboundary(0).col(a));
    return gens;
}

struct InvarianceReport {
    bool ok = true;
    int slot = -1;                 // offending copy when !ok
    long generator = -1;           // offending coboundary generator, -1 for a sampled tuple
    std::vector<BitVector> tuple;  // offending argument tuple
};

// Direct certificate that the polynomial descends to cohomology: for every
// tuple of representatives, every slot, and every coboundary generator the
// value is unchanged, and the same holds on sampled random cocycle tuples.
// Multilinearity extends the exhaustive part over the representative span.
inline InvarianceReport verify_invariance(const PhasePolynomial& poly,
                                          const std::vector<BitVector>& reps,
                                          const std::vector<BitVector>& stab_gens,
                                          int random_samples = 64, unsigned seed = 1) {
    InvarianceReport report;
    std::size_t lam = std::size_t(poly.lambda);
    auto check_tuple = [&](std::vector<BitVector>& tuple) {
        bool base = poly.eval(tuple);
        for (std::size_t i = 0; i < lam; ++i)
            for (std::size_t gidx = 0; gidx < stab_gens.size(); ++gidx) {
                tuple[i] ^= stab_gens[gidx];
                bool shifted = poly.eval(tuple);
                tuple[i] ^= stab_gens[gidx];
                if (shifted != base) {
                    report.ok = false;
                    report.slot = int(i);
                    report.generator = long(gidx);
                    report.tuple = tuple;
                    return false;
                }
            }
        return true;
    };

    if (!reps.empty()) {
        std::vector<std::size_t> pick(lam, 0);
        for (bool more = true; more;) {
            std::vector<BitVector> tuple;
            for (std::size_t i = 0; i < lam; ++i) tuple.push_back(reps[pick[i]]);
            if (!check_tuple(tuple)) return report;
            more = false;
            for (std::size_t i = 0; i < lam; ++i) {
                if (++pick[i] < reps.size()) {
                    more = true;
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    std::mt19937 rng(seed);
    std::bernoulli_distribution flip(0.5);
    for (int t = 0; t < random_samples; ++t) {
        std::vector<BitVector> tuple;
        for (std::size_t i = 0; i < lam; ++i) {
            BitVector z(poly.qubits);
            for (const auto& r : reps)
                if (flip(rng)) z ^= r;
            for (const auto& s : stab_gens)
                if (flip(rng)) z ^= s;
            tuple.push_back(std::move(z));
        }
        if (!check_tuple(tuple)) return report;
    }
    return report;
}

// logical action on cohomology: a multilinear polynomial with one variable
// per (copy, class); level is the diagonal hierarchy level of the gate
struct LogicalAction {
    int lambda = 0;
    std::vector<std::vector<std::pair<int, std::size_t>>> terms;  // (copy, class index)
    int level = 0;
    std::string note;
};

// Action of the synthesized gate in the given representative basis. Verifies
// stabilizer-flow invariance first and refuses to report an action without
// it. Since each copy's argument is linear in its class expansion, the
// coefficient of a class tuple is just Psi on the matching representatives.
inline LogicalAction logical_action(const PhasePolynomial& poly, const std::vector<BitVector>& reps,
                                    const std::vector<BitVector>& stab_gens) {
    auto inv = verify_invariance(poly, reps, stab_gens);
    if (!inv.ok)
        throw std::runtime_error(
            "logical_action: the phase polynomial is not invariant under the stabilizer flow (slot " +
            std::to_string(inv.slot) + ", generator " + std::to_string(inv.generator) + ")");
    LogicalAction act;
    act.lambda = poly.lambda;
    std::size_t lam = std::size_t(poly.lambda);
    if (!reps.empty()) {
        std::vector<std::size_t> pick(lam, 0);
        for (bool more = true; more;) {
            std::vector<BitVector> tuple;
            for (std::size_t i = 0; i < lam; ++i) tuple.push_back(reps[pick[i]]);
            if (poly.eval(tuple)) {
                std::vector<std::pair<int, std::size_t>> term;
                for (std::size_t i = 0; i < lam; ++i) term.push_back({int(i), pick[i]});
                act.terms.push_back(std::move(term));
            }
            more = false;
            for (std::size_t i = 0; i < lam; ++i) {
                if (++pick[i] < reps.size()) {
                    more = true;
                    break;
                }
                pick[i] = 0;
            }
        }
    }
    std::sort(act.terms.begin(), act.terms.end());
    act.level = act.terms.empty() ? 0 : poly.lambda;
    if (act.terms.empty()) act.note = "the phase polynomial vanishes on cohomology";
    return act;
}

inline int hierarchy_level(const LogicalAction& a) { return a.level; }

// minimum CZ count realizing the same two-fold logical action: the rank of
// the bilinear term matrix over F2 (basis-independent)
inline std::size_t min_cz_count(const LogicalAction& a, std::size_t k) {
    if (a.lambda != 2) throw std::invalid_argument("min_cz_count: two-copy actions only");
    BitMatrix m(k, k);
    for (const auto& t : a.terms) m.set(t[0].second, t[1].second, true);
    return rank(m);
}

// The gate addressed by gamma on one copy: the polynomial of the conjugation
// difference Psi(.., c_i + gamma, ..) + Psi(.., c_i, ..), which by
// multilinearity is Psi with slot i fixed to gamma. Monomials without a
// copy-i variable cancel; the remaining copies are renumbered densely.
inline PhasePolynomial address_gate(const PhasePolynomial& p, int copy, const BitVector& gamma) {
    if (copy < 0 || copy >= p.lambda) throw std::invalid_argument("address_gate: copy out of range");
    if (gamma.size() != p.qubits) throw std::invalid_argument("address_gate: address width mismatch");
    PhasePolynomial out;
    out.lambda = p.lambda - 1;
    out.qubits = p.qubits;
    std::set<std::vector<std::pair<int, std::size_t>>> acc;
    for (const auto& m : p.monomials) {
        bool hit = false, on = false;
        std::vector<std::pair<int, std::size_t>> rest;
        for (auto [cp, q] : m) {
            if (cp == copy) {
                hit = true;
                on = gamma.get(q);
            } else {
                rest.push_back({cp > copy ? cp - 1 : cp, q});
            }
        }
        if (!hit || !on) continue;
        auto it = acc.find(rest);
        if (it == acc.end())
            acc.insert(std::move(rest));
        else
            acc.erase(it);
    }
    out.monomials.assign(acc.begin(), acc.end());
    return out;
}

// Logical action of a mixed-degree integrated product on a two-term
// structure: one class per slot, degrees 0 or 1 summing to one. Degree-one
// slots are verified invariant under every coboundary shift; degree-zero
// classes are plain kernel vectors, so no shift applies.
inline LogicalAction mixed_logical_action(const CupStructure& cs, const std::vector<int>& degrees) {
    int total = 0;
    for (int d : degrees) {
        if (d != 0 && d != 1)
            throw std::invalid_argument("mixed_logical_action: degrees must be 0 or 1");
        total += d;
    }
    if (degrees.empty() || total != 1)
        throw std::invalid_argument("mixed_logical_action: degrees must sum to one");
    std::array<std::vector<BitVector>, 2> reps{cs.complex().cohomology_basis(0),
                                               cs.complex().cohomology_basis(1)};
    auto gens = coboundary_generators(cs.complex());
    std::size_t lam = degrees.size();
    LogicalAction act;
    act.lambda = int(lam);
    bool empty_slot = false;
    for (int d : degrees) empty_slot = empty_slot || reps[std::size_t(d)].empty();
    if (!empty_slot) {
        std::vector<std::size_t> pick(lam, 0);
        for (bool more = true; more;) {
            std::vector<std::pair<int, BitVector>> fs;
            for (std::size_t i = 0; i < lam; ++i)
                fs.push_back({degrees[i], reps[std::size_t(degrees[i])][pick[i]]});
            auto [deg, val] = cs.lambda_cup(fs);
            bool base = deg == 1 && cs.integral1(val);
            for (std::size_t i = 0; i < lam; ++i) {
                if (degrees[i] != 1) continue;
                for (const auto& gvec : gens) {
                    auto shifted = fs;
                    shifted[i].second = shifted[i].second ^ gvec;
                    auto [sdeg, sval] = cs.lambda_cup(shifted);
                    if ((sdeg == 1 && cs.integral1(sval)) != base)
                        throw std::runtime_error(
                            "mixed_logical_action: integral is not invariant under the stabilizer flow");
                }
            }
            if (base) {
                std::vector<std::pair<int, std::size_t>> term;
                for (std::size_t i = 0; i < lam; ++i) term.push_back({int(i), pick[i]});
                act.terms.push_back(std::move(term));
            }
            more = false;
            for (std::size_t i = 0; i < lam; ++i) {
                if (++pick[i] < reps[std::size_t(degrees[i])].size()) {
                    more = true;
                    break;
                }
                pick[i] = 0;
            }
        }
    }
    std::sort(act.terms.begin(), act.terms.end());
    act.level = act.terms.empty() ? 0 : int(lam);
    if (act.terms.empty()) act.note = "the integrated product vanishes on cohomology";
    return act;
}

}  // namespace cupforge
