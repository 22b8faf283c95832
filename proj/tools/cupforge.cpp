// cupforge: build cup-product codes from JSON specs, check the orientation
// conditions, synthesize constant-depth circuits, and report logical actions
// and code parameters. Exit code 0 iff everything requested passed; 1 when a
// requested check fails; 2 on spec or pipeline errors (diagnostic on stderr).

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cupforge/codespec.hpp"

namespace {

using cupforge::json;

json load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file: " + path);
    json spec;
    in >> spec;
    return spec;
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    std::string path = dir + "/" + name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void write_json(const std::string& dir, const std::string& name, const json& j) {
    write_file(dir, name, j.dump(2) + "\n");
}

void emit(const json& j, const std::string& format, const std::string& text) {
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string check_text(const json& report) {
    std::ostringstream os;
    for (const auto& c : report.at("checks")) {
        os << (c.at("ok").get<bool>() ? "ok   " : "FAIL ") << c.at("name").get<std::string>();
        if (!c.at("detail").is_null()) os << "  " << c.at("detail").dump();
        os << "\n";
    }
    os << (report.at("ok").get<bool>() ? "all checks passed\n" : "checks FAILED\n");
    return os.str();
}

std::string params_text(const json& r) {
    std::ostringstream os;
    os << "[[" << r.at("n").get<std::size_t>() << ", " << r.value("k", std::size_t(0));
    if (r.contains("d"))
        os << ", " << r.at("d").get<std::size_t>() << "]]";
    else if (r.contains("d_lower"))
        os << ", >=" << r.at("d_lower").get<std::size_t>()
           << (r.contains("d_upper") ? " <=" + std::to_string(r.at("d_upper").get<std::size_t>())
                                     : std::string())
           << "]]";
    else
        os << ", -]]";
    if (r.value("classical", false)) os << " (classical factor)";
    os << "\n";
    return os.str();
}

std::string action_text(const json& r) {
    std::ostringstream os;
    os << "level " << r.at("level").get<int>() << ", " << r.at("term_count").get<std::size_t>()
       << " terms\n";
    for (const auto& t : r.at("terms")) {
        for (const auto& v : t)
            os << " " << v.at("copy").get<int>() << ":[" << v.at("class").get<std::size_t>() << "]";
        os << "\n";
    }
    if (r.contains("note")) os << r.at("note").get<std::string>() << "\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cup-product code toolkit: build, check, synthesize, report"};
    app.require_subcommand(1);

    std::string spec_path, out_dir = ".", format = "json", group_arg, c_arg;
    int lambda = 0;  // 0: take the copy count from the spec
    std::size_t cap = 6;
    unsigned seed = 1;

    auto add_common = [&](CLI::App* sub, bool needs_spec) {
        if (needs_spec) sub->add_option("--spec", spec_path, "JSON code spec file")->required();
        sub->add_option("--out", out_dir, "output directory (default .)");
        sub->add_option("--format", format, "stdout format: json|text")
            ->check(CLI::IsMember({"json", "text"}));
        return sub;
    };

    auto* cmd_build = add_common(app.add_subcommand("build", "construct the code and dump it"), true);
    auto* cmd_check =
        add_common(app.add_subcommand("check", "verify the cup-product conditions"), true);
    cmd_check->add_option("--lambda", lambda, "copy count for the integrated checks");
    auto* cmd_synth =
        add_common(app.add_subcommand("synth", "synthesize the copy-cup circuit"), true);
    auto* cmd_action =
        add_common(app.add_subcommand("action", "logical action and hierarchy level"), true);
    cmd_action->add_option("--lambda", lambda, "copy count for two-term codes");
    auto* cmd_params = add_common(app.add_subcommand("params", "[[n,k,d]] report"), true);
    cmd_params->add_option("--weight-cap", cap, "exhaustive distance search cap (default 6)");
    cmd_params->add_option("--seed", seed, "seed for the randomized upper bound");
    auto* cmd_search =
        add_common(app.add_subcommand("search", "enumerate splittings of a group-algebra element"),
                   false);
    cmd_search->add_option("--spec", spec_path, "spec file with group and c fields");
    cmd_search->add_option("--group", group_arg, "comma-separated cyclic orders, e.g. 6,12");
    cmd_search->add_option("--c", c_arg, "group-algebra element, e.g. \"x + x^3\"");

    CLI11_PARSE(app, argc, argv);

    try {
        auto t0 = std::chrono::steady_clock::now();
        auto ms = [&] {
            return std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                .count();
        };

        if (cmd_search->parsed()) {
            cupforge::AbelianGroup g({1});
            cupforge::BitVector c(1);
            if (!group_arg.empty()) {
                std::vector<unsigned> orders;
                std::stringstream ss(group_arg);
                for (std::string tok; std::getline(ss, tok, ',');)
                    orders.push_back(unsigned(std::stoul(tok)));
                g = cupforge::AbelianGroup(orders);
                c = cupforge::parse_algebra(g, c_arg);
            } else if (!spec_path.empty()) {
                json spec = load_spec(spec_path);
                g = cupforge::detail::group_from_json(spec);
                c = cupforge::parse_algebra(g, spec.at("c").get<std::string>());
            } else {
                throw std::runtime_error("search: give --group/--c or --spec");
            }
            json r = cupforge::splittings_json(g, c);
            r["ms"] = ms();
            write_json(out_dir, "splittings.json", r);
            emit(r, format,
                 std::to_string(r.at("count").get<std::size_t>()) + " splittings of " +
                     r.at("c").get<std::string>() + "\n");
            return 0;
        }

        cupforge::BuiltCode code = cupforge::build_code(load_spec(spec_path));

        if (cmd_build->parsed()) {
            json r = {{"spec", code.spec},
                      {"kind", code.kind},
                      {"lambda", code.lambda},
                      {"complex", cupforge::dump_complex(code.complex())}};
            if (code.single) r["explicit"] = cupforge::explicit_spec(*code.single);
            r["ms"] = ms();
            write_json(out_dir, "build.json", r);
            emit(r, format,
                 code.kind + ": degrees 0.." + std::to_string(code.complex().max_degree()) + ", " +
                     std::to_string(code.complex().dim(1)) + " degree-1 elements\n");
            return 0;
        }

        if (cmd_check->parsed()) {
            json r = cupforge::check_report(code, lambda > 0 ? lambda : code.lambda);
            r["ms"] = ms();
            write_json(out_dir, "check.json", r);
            emit(r, format, check_text(r));
            return r.at("ok").get<bool>() ? 0 : 1;
        }

        if (cmd_synth->parsed()) {
            auto poly = code.phase_polynomial();
            auto circ = cupforge::synth_circuit(poly);
            auto cert = cupforge::circuit_depth_certificate(circ, code.qubit_classes());
            auto labels = cupforge::qubit_labels(code.complex());
            std::string text = cupforge::circuit_text(circ, labels);
            json r = cupforge::circuit_json(circ, labels, cert);
            r["ms"] = ms();
            write_file(out_dir, "circuit.txt", text);
            write_json(out_dir, "circuit.json", r);
            emit(r, format, text);
            return cert.valid ? 0 : 1;
        }

        if (cmd_action->parsed()) {
            json r;
            if (code.quantum()) {
                auto poly = code.phase_polynomial();
                auto act = cupforge::logical_action(poly, code.complex().cohomology_basis(1),
                                                    cupforge::coboundary_generators(code.complex()));
                r = cupforge::action_json(act);
            } else {
                int lam = lambda > 0 ? lambda : code.lambda;
                std::vector<int> degrees(std::size_t(lam), 0);
                degrees.back() = 1;
                r = cupforge::action_json(cupforge::mixed_logical_action(*code.single, degrees));
            }
            r["ms"] = ms();
            write_json(out_dir, "action.json", r);
            emit(r, format, action_text(r));
            return 0;
        }

        if (cmd_params->parsed()) {
            json r = cupforge::params_report(code, cap, seed);
            r["ms"] = ms();
            write_json(out_dir, "params.json", r);
            emit(r, format, params_text(r));
            return 0;
        }
    } catch (const std::exception& e) {
        json err = {{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 2;
}
