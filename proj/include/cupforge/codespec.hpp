#pragma once

// Declarative JSON code specifications and report serialization. A spec is a
// JSON object with a "kind" plus constructor parameters; build_code turns it
// into a cup-bearing code, and the report builders dump complexes, condition
// checks, circuits, logical actions, and code parameters as stable JSON.

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cupforge/constructions.hpp"
#include "cupforge/css.hpp"
#include "cupforge/gates.hpp"

namespace cupforge {

using json = nlohmann::json;

// a built code: exactly one of the three structure slots is set
struct BuiltCode {
    std::string kind;
    int lambda = 2;  // copy count for the gate stage
    std::optional<TensorCode> tensor;
    std::optional<BicycleCode> bicycle;
    std::optional<CupStructure> single;
    json spec;  // the normalized spec this code was built from

    const BasedComplex& complex() const {
        if (tensor) return tensor->tensor.complex();
        if (bicycle) return bicycle->balanced.complex();
        return single->complex();
    }

    // product codes put qubits at degree 1 of a three-or-more-term complex;
    // two-term structures describe classical factors
    bool quantum() const { return complex().max_degree() >= 2; }

    PhasePolynomial phase_polynomial() const {
        if (tensor) return psi_polynomial(tensor->tensor);
        if (bicycle) return psi_polynomial(bicycle->balanced);
        return psi_polynomial(*single);
    }

    std::vector<std::size_t> qubit_classes() const {
        if (tensor) return tensor_qubit_classes(tensor->tensor);
        if (bicycle) return balanced_qubit_classes(bicycle->balanced);
        return {};
    }

    // the two-term factors carrying the pre-orientations
    std::vector<const CupStructure*> factors() const {
        std::vector<const CupStructure*> fs;
        if (tensor)
            for (int f = 0; f < tensor->tensor.lambda(); ++f)
                fs.push_back(&tensor->tensor.factor(std::size_t(f)));
        else if (bicycle)
            for (int f = 0; f < bicycle->balanced.lambda(); ++f)
                fs.push_back(&bicycle->balanced.tensor().factor(std::size_t(f)));
        else
            fs.push_back(&*single);
        return fs;
    }
};

namespace detail {

inline AbelianGroup group_from_json(const json& spec) {
    std::vector<unsigned> orders;
    for (const auto& o : spec.at("group")) orders.push_back(o.get<unsigned>());
    return AbelianGroup(orders);
}

inline Splitting splitting_from_json(const AbelianGroup& g, const BitVector& c, const json& js) {
    std::size_t a = parse_monomial(g, js.at("in").get<std::string>());
    Splitting s{BitVector::unit(g.size(), a), BitVector(g.size()), BitVector(g.size())};
    if (js.contains("out"))
        s.c_out.set(parse_monomial(g, js["out"].get<std::string>()), true);
    else
        s.c_out.set(g.inv(a), true);
    s.c_free = js.contains("free") ? parse_algebra(g, js["free"].get<std::string>())
                                   : (c ^ s.c_in ^ s.c_out);
    return s;
}

inline json splitting_to_json(const AbelianGroup& g, const Splitting& s) {
    return {{"in", algebra_str(g, s.c_in)},
            {"out", algebra_str(g, s.c_out)},
            {"free", algebra_str(g, s.c_free)}};
}

inline CupStructure explicit_from_json(const json& spec) {
    std::vector<BasisLabel> checks, bits;
    for (const auto& s : spec.at("checks")) checks.push_back(BasisLabel::atom(s.get<std::string>()));
    for (const auto& s : spec.at("bits")) bits.push_back(BasisLabel::atom(s.get<std::string>()));
    const json& delta = spec.at("delta");
    auto cx = make_complex({checks, bits}, [&](int, const BasisLabel& l) {
        std::vector<BasisLabel> row;
        for (const auto& s : delta.at(l.name())) row.push_back(BasisLabel::atom(s.get<std::string>()));
        return row;
    });
    PreOrientation ori;
    std::size_t n0 = cx.dim(0), n1 = cx.dim(1);
    ori.in.assign(n0, BitVector(n1));
    ori.out.assign(n0, BitVector(n1));
    ori.free.assign(n0, BitVector(n1));
    const json& orientation = spec.at("orientation");
    for (std::size_t a = 0; a < n0; ++a) {
        const json& row = orientation.at(cx.label(0, a).name());
        auto fill = [&](const char* key, std::vector<BitVector>& part) {
            for (const auto& s : row.at(key)) {
                long i = cx.index_of(1, BasisLabel::atom(s.get<std::string>()));
                if (i < 0)
                    throw std::invalid_argument("explicit spec: orientation of " +
                                                cx.label(0, a).name() + " mentions unknown bit " +
                                                s.get<std::string>());
                part[a].set(std::size_t(i), true);
            }
        };
        fill("in", ori.in);
        fill("out", ori.out);
        fill("free", ori.free);
    }
    auto issues = validate_preorientation(cx, ori);
    if (!issues.empty()) throw std::invalid_argument("explicit spec: " + issues.front());
    return CupStructure(std::move(cx), std::move(ori));
}

inline SsCode ss_from_json(const json& spec) {
    AbelianGroup g = group_from_json(spec);
    std::vector<std::size_t> gens;
    for (const auto& t : spec.at("generators")) gens.push_back(parse_monomial(g, t.get<std::string>()));
    std::size_t s = 2 * gens.size();
    std::vector<BasisLabel> cl, bl;
    const json& lc = spec.at("local_checks");
    for (std::size_t c = 0; c < lc.size(); ++c) cl.push_back(BasisLabel::atom("l" + std::to_string(c)));
    for (std::size_t b = 0; b < s; ++b) bl.push_back(BasisLabel::atom("s" + std::to_string(b)));
    auto local_cx = make_complex({cl, bl}, [&](int, const BasisLabel& l) {
        std::vector<BasisLabel> row;
        for (const auto& b : lc.at(std::stoul(l.name().substr(1))))
            row.push_back(BasisLabel::atom("s" + std::to_string(b.get<std::size_t>())));
        return row;
    });
    return sipser_spielman(cayley_graph(g, gens), LocalSystem{local_cx, cayley_phi(g, gens)});
}

}  // namespace detail

inline BuiltCode build_code(const json& spec) {
    BuiltCode b;
    b.kind = spec.at("kind").get<std::string>();
    b.spec = spec;
    if (b.kind == "torus") {
        b.lambda = spec.value("lambda", 2);
        b.tensor = torus_code(b.lambda, spec.at("L").get<std::size_t>());
    } else if (b.kind == "lineon") {
        b.lambda = 2;
        b.tensor = anisotropic_lineon(spec.at("L").get<std::size_t>());
    } else if (b.kind == "plaquette_ising") {
        b.lambda = spec.value("lambda", 2);
        b.single = plaquette_ising(spec.at("L").get<std::size_t>());
    } else if (b.kind == "group_algebra") {
        AbelianGroup g = detail::group_from_json(spec);
        BitVector c = parse_algebra(g, spec.at("c").get<std::string>());
        b.lambda = spec.value("lambda", 2);
        if (spec.contains("splitting"))
            b.single = splitting_cup(g, c, detail::splitting_from_json(g, c, spec["splitting"]));
        else
            b.single = group_algebra_complex(g, c, BitVector(g.size()), BitVector(g.size()));
    } else if (b.kind == "bivariate_bicycle") {
        AbelianGroup g = detail::group_from_json(spec);
        BitVector c1 = parse_algebra(g, spec.at("c1").get<std::string>());
        BitVector c2 = parse_algebra(g, spec.at("c2").get<std::string>());
        b.lambda = 2;
        if (spec.contains("s1") != spec.contains("s2"))
            throw std::invalid_argument("bivariate_bicycle spec: give both splittings or neither");
        if (spec.contains("s1"))
            b.bicycle = bivariate_bicycle(g, c1, c2, detail::splitting_from_json(g, c1, spec["s1"]),
                                          detail::splitting_from_json(g, c2, spec["s2"]));
        else
            b.bicycle = bivariate_bicycle_complex(g, c1, c2);
    } else if (b.kind == "sipser_spielman") {
        SsCode ss = detail::ss_from_json(spec);
        b.lambda = spec.value("lambda", 2);
        std::string mode = spec.value("mode", std::string("lambda2"));
        if (mode == "lambda2") {
            BitVector l1_in(ss.local.code.dim(1));
            for (const auto& i : spec.at("in_slots")) l1_in.set(i.get<std::size_t>(), true);
            b.single = ss_preorientation_lambda2(ss, l1_in);
        } else if (mode == "lambda3") {
            b.single = ss_preorientation_lambda3(ss, spec.at("chat").get<std::size_t>(),
                                                 spec.at("t_bit").get<std::size_t>(),
                                                 spec.at("t_inv_bit").get<std::size_t>());
        } else {
            throw std::invalid_argument("sipser_spielman spec: mode must be lambda2 or lambda3");
        }
    } else if (b.kind == "explicit") {
        b.lambda = spec.value("lambda", 2);
        b.single = detail::explicit_from_json(spec);
    } else {
        throw std::invalid_argument("build_code: unknown kind '" + b.kind + "'");
    }
    return b;
}

// full dump of a based complex: labels per degree, coboundary rows as supports
inline json dump_complex(const BasedComplex& cx) {
    json degrees = json::array();
    for (int p = 0; p <= cx.max_degree(); ++p) {
        json labels = json::array();
        for (std::size_t i = 0; i < cx.dim(p); ++i) labels.push_back(cx.label(p, i).str());
        degrees.push_back({{"degree", p}, {"dim", cx.dim(p)}, {"labels", labels}});
    }
    json deltas = json::array();
    for (int p = 0; p < cx.max_degree(); ++p) {
        const BitMatrix& d = cx.coboundary(p);
        json rows = json::array();
        for (std::size_t r = 0; r < d.rows(); ++r) rows.push_back(d.row(r).support());
        deltas.push_back(rows);
    }
    return {{"degrees", degrees}, {"delta", deltas}};
}

// re-ingestable spec of a two-term cup structure
inline json explicit_spec(const CupStructure& cs) {
    const BasedComplex& cx = cs.complex();
    json spec;
    spec["kind"] = "explicit";
    json checks = json::array(), bits = json::array();
    for (std::size_t a = 0; a < cx.dim(0); ++a) checks.push_back(cx.label(0, a).str());
    for (std::size_t x = 0; x < cx.dim(1); ++x) bits.push_back(cx.label(1, x).str());
    spec["checks"] = checks;
    spec["bits"] = bits;
    json delta = json::object(), orientation = json::object();
    auto names = [&](const BitVector& v) {
        json arr = json::array();
        for (std::size_t x : v.support()) arr.push_back(cx.label(1, x).str());
        return arr;
    };
    for (std::size_t a = 0; a < cx.dim(0); ++a) {
        std::string key = cx.label(0, a).str();
        delta[key] = names(cs.delta_of(a));
        orientation[key] = {{"in", names(cs.orientation().in[a])},
                            {"out", names(cs.orientation().out[a])},
                            {"free", names(cs.orientation().free[a])}};
    }
    spec["delta"] = delta;
    spec["orientation"] = orientation;
    return spec;
}

// condition report: complex validity, per-factor orientation checks at the
// given copy count, and stabilizer-flow invariance of the phase polynomial
inline json check_report(const BuiltCode& b, int lambda) {
    json checks = json::array();
    bool all = true;
    auto add = [&](const std::string& name, bool ok, const json& detail = nullptr) {
        checks.push_back({{"name", name}, {"ok", ok}, {"detail", detail}});
        all = all && ok;
    };

    auto issues = b.complex().validate();
    json idetail = json::array();
    for (const auto& i : issues) idetail.push_back(i.detail);
    add("complex_valid", issues.empty(), issues.empty() ? json(nullptr) : idetail);

    auto fs = b.factors();
    for (std::size_t f = 0; f < fs.size(); ++f) {
        std::string tag = fs.size() > 1 ? "factor" + std::to_string(f) + "_" : "";
        auto nov = check_nonoverlap(*fs[f]);
        add(tag + "nonoverlap", nov.ok,
            nov.ok ? json(nullptr) : json{{"check", nov.a}, {"bit", nov.b}, {"side", nov.side}});
        auto assoc = check_associativity(*fs[f]);
        add(tag + "associativity", assoc.ok,
            assoc.ok ? json(nullptr) : json{{"degree", assoc.degree}, {"index", assoc.index}});
        auto leib = check_integrated_leibniz(*fs[f], lambda);
        add(tag + "integrated_leibniz", leib.ok,
            leib.ok ? json(nullptr) : json(leib.counterexample));
        add(tag + "integral_defined", fs[f]->integral_defined());
    }

    if (b.quantum()) {
        if (b.tensor) add("product_integral_defined", b.tensor->tensor.integral_defined());
        if (b.bicycle) add("product_integral_defined", b.bicycle->balanced.integral_defined());
        auto poly = b.phase_polynomial();
        auto reps = b.complex().cohomology_basis(1);
        auto inv = verify_invariance(poly, reps, coboundary_generators(b.complex()));
        json detail = nullptr;
        if (!inv.ok) {
            json tuple = json::array();
            for (const auto& v : inv.tuple) tuple.push_back(v.support());
            detail = {{"slot", inv.slot}, {"generator", inv.generator}, {"tuple", tuple}};
        }
        add("invariance", inv.ok, detail);
    }

    return {{"kind", b.kind}, {"lambda", lambda}, {"checks", checks}, {"ok", all}};
}

namespace detail {

inline json distance_json(const DistanceResult& d, std::size_t cap) {
    if (d.exact) return {{"d", d.weight}, {"exact", true}, {"method", "exhaustive"}};
    return {{"d_lower", cap + 1}, {"exact", false}, {"method", "exhaustive up to cap"}};
}

}  // namespace detail

// [[n, k, d]] report; exhaustive search up to the weight cap, with a randomized
// upper bound attached when the cap is hit on a quantum code
inline json params_report(const BuiltCode& b, std::size_t cap, unsigned seed = 1) {
    json r;
    r["kind"] = b.kind;
    if (b.quantum()) {
        const CssCode& css = b.tensor ? b.tensor->css : b.bicycle->css;
        CodeParams p = code_params(css, cap);
        r["n"] = p.n;
        r["k"] = p.k;
        if (p.k == 0) return r;
        r["dx"] = detail::distance_json(p.dx, cap);
        r["dz"] = detail::distance_json(p.dz, cap);
        if (p.d_exact()) {
            r["d"] = p.d();
            r["d_exact"] = true;
        } else {
            r["d_lower"] = cap + 1;
            r["d_exact"] = false;
            auto ux = logical_weight_upper_bound(css.x_logicals, css.hx, seed);
            auto uz = logical_weight_upper_bound(css.z_logicals, css.hz, seed);
            r["d_upper"] = std::min(ux.weight, uz.weight);
            r["method"] = "exhaustive lower bound + randomized descent upper bound";
        }
    } else {
        ClassicalParams p = classical_params(b.complex(), cap);
        r["n"] = p.n;
        r["k"] = p.k;
        r["classical"] = true;
        if (p.k > 0) {
            if (p.d.exact) {
                r["d"] = p.d.weight;
                r["d_exact"] = true;
            } else {
                r["d_lower"] = cap + 1;
                r["d_exact"] = false;
            }
        }
    }
    return r;
}

inline json circuit_json(const Circuit& c, const std::vector<std::string>& labels,
                         const DepthCertificate& cert) {
    json gates = json::array();
    for (const auto& gseq : c.gates) {
        json g = json::array();
        for (auto [copy, q] : gseq)
            g.push_back({{"copy", copy + 1}, {"qubit", q}, {"label", labels.at(q)}});
        gates.push_back(g);
    }
    return {{"lambda", c.lambda},       {"qubits", c.qubits}, {"arity", c.arity},
            {"gate", gate_name(c.arity)}, {"gate_count", c.gates.size()},
            {"depth", cert.depth},      {"depth_valid", cert.valid},
            {"gates", gates}};
}

inline json action_json(const LogicalAction& a) {
    json terms = json::array();
    for (const auto& t : a.terms) {
        json term = json::array();
        for (auto [copy, cls] : t) term.push_back({{"copy", copy + 1}, {"class", cls}});
        terms.push_back(term);
    }
    json r = {{"lambda", a.lambda}, {"level", a.level}, {"terms", terms},
              {"term_count", a.terms.size()}};
    if (!a.note.empty()) r["note"] = a.note;
    return r;
}

inline json splittings_json(const AbelianGroup& g, const BitVector& c) {
    json arr = json::array();
    for (const auto& s : search_splittings(g, c)) arr.push_back(detail::splitting_to_json(g, s));
    json orders = json::array();
    for (unsigned o : g.orders()) orders.push_back(o);
    return {{"group", orders}, {"c", algebra_str(g, c)}, {"count", arr.size()}, {"splittings", arr}};
}

}  // namespace cupforge
