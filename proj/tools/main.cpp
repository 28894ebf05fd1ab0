#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "poslab/errors.hpp"
#include "poslab/graphcodes.hpp"
#include "poslab/hypergraph.hpp"
#include "poslab/indpoly.hpp"
#include "poslab/involution.hpp"
#include "poslab/kernel.hpp"
#include "poslab/quasi.hpp"
#include "poslab/rng.hpp"
#include "poslab/sidorenko.hpp"
#include "poslab/tournament.hpp"

namespace {

using nlohmann::json;
using namespace poslab;

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Rat parse_rat(const std::string& s, const std::string& what) {
    try {
        return Rat::from_string(s);
    } catch (const std::invalid_argument& e) {
        throw IoError("bad " + what + " '" + s + "': " + e.what());
    }
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw IoError("bad " + what + ": " + e.what());
    }
}

// Kernel specs: "parity:<r>", "constant:<r>:<p/q>", "odd-witness:<p/q>",
// "kernel-of:<hypergraph file>", otherwise a path to a kernel JSON file.
StepKernel parse_kernel_spec(const std::string& spec) {
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        return parts;
    };
    if (spec.rfind("parity:", 0) == 0) {
        auto p = split(spec);
        if (p.size() != 2) throw IoError("kernel spec: want parity:<r>");
        return parity_kernel(std::stoi(p[1]));
    }
    if (spec.rfind("constant:", 0) == 0) {
        auto p = split(spec);
        if (p.size() != 3) throw IoError("kernel spec: want constant:<r>:<p/q>");
        return StepKernel::constant(std::stoi(p[1]), parse_rat(p[2], "constant value"));
    }
    if (spec.rfind("odd-witness:", 0) == 0) {
        auto p = split(spec);
        if (p.size() != 2) throw IoError("kernel spec: want odd-witness:<p/q>");
        return odd_witness_kernel(parse_rat(p[1], "alpha"));
    }
    if (spec.rfind("kernel-of:", 0) == 0) {
        std::string path = spec.substr(std::string("kernel-of:").size());
        return kernel_of(read_hypergraph_file(path));
    }
    return StepKernel::from_json(read_file(spec));
}

std::string input_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

// returns process exit code for verification outcomes
int report_valid(bool ok) {
    json j;
    j["valid"] = ok;
    emit(j);
    return ok ? 0 : 2;
}

json copy_prob_json(const CopyProbability& cp) {
    json j;
    j["consistent"] = cp.consistent;
    j["rank"] = cp.rank;
    j["variables"] = cp.variables;
    j["probability"] = cp.probability.str();
    return j;
}

int run_density(const std::string& input, const std::string& kernel_spec, std::uint64_t budget) {
    Hypergraph h = read_hypergraph_file(input);
    StepKernel w = parse_kernel_spec(kernel_spec);
    json j;
    j["density"] = density(h, w, budget).str();
    emit(j);
    return 0;
}

int run_indpoly(const std::string& input, const std::string& tol_text) {
    Hypergraph g = read_hypergraph_file(input);
    Polynomial p = independence_polynomial(g);
    json j;
    json coeffs = json::array();
    for (const auto& c : p.coefficients()) coeffs.push_back(c.str());
    j["coefficients"] = coeffs;
    j["degree"] = p.degree();
    if (g.is_connected() && g.edge_count() > 0) {
        RootBracket b = smallest_root_bracket(p, parse_rat(tol_text, "tolerance"));
        j["bracket"] = {{"lo", b.lo.str()}, {"hi", b.hi.str()}};
    } else {
        j["bracket"] = nullptr;
    }
    emit(j);
    return 0;
}

int run_certify_odd(const std::string& input, const std::string& tol_text,
                    const std::string& verify_path) {
    if (!verify_path.empty()) {
        json j = parse_json(read_file(verify_path), "certificate file");
        Hypergraph g = parse_text(j.at("graph").get<std::string>());
        OddWitnessCertificate cert = odd_certificate_from_json(j.at("certificate").dump());
        return report_valid(validate_odd_certificate(g, cert));
    }
    Hypergraph g = read_hypergraph_file(input);
    OddWitnessCertificate cert = certify_nonpositive_odd(g, parse_rat(tol_text, "tolerance"));
    json j;
    j["graph"] = to_text(g);
    j["certificate"] = json::parse(odd_certificate_to_json(cert));
    j["bracket"] = {{"lo", cert.bracket.lo.str()}, {"hi", cert.bracket.hi.str()}};
    emit(j);
    return 0;
}

int run_levi(const std::string& input, const std::string& tol_text,
             const std::string& verify_path) {
    if (!verify_path.empty()) {
        json j = parse_json(read_file(verify_path), "certificate file");
        Hypergraph h = parse_text(j.at("hypergraph").get<std::string>());
        Hypergraph levi = parse_text(j.at("levi").get<std::string>());
        if (!(levi_graph(h) == levi)) return report_valid(false);
        OddWitnessCertificate cert = odd_certificate_from_json(j.at("certificate").dump());
        return report_valid(validate_odd_certificate(levi, cert));
    }
    Hypergraph h = read_hypergraph_file(input);
    LeviWitnessCertificate lc = levi_nonpositivity(h, parse_rat(tol_text, "tolerance"));
    json j;
    j["hypergraph"] = to_text(h);
    j["levi"] = to_text(lc.levi);
    j["certificate"] = json::parse(odd_certificate_to_json(lc.cert));
    emit(j);
    return 0;
}

SubsetFamily family_from_flags(int r, const std::string& family_text,
                               const std::string& family_file) {
    if (!family_text.empty() && !family_file.empty())
        throw IoError("give either --family or --family-file, not both");
    if (!family_text.empty()) return SubsetFamily::from_json(r, family_text);
    if (!family_file.empty()) return SubsetFamily::from_json(r, read_file(family_file));
    throw IoError("missing --family or --family-file");
}

int run_qvanish(const std::string& input, const std::string& family_text,
                const std::string& family_file, const std::string& verify_path) {
    if (!verify_path.empty()) {
        json j = parse_json(read_file(verify_path), "certificate file");
        if (!j.at("vanishing").get<bool>()) return report_valid(false);
        Hypergraph h = parse_text(j.at("hypergraph").get<std::string>());
        SubsetFamily q = SubsetFamily::from_json(h.uniformity(), j.at("family").dump());
        VanishingCertificate cert = vanishing_certificate_from_json(read_file(verify_path));
        return report_valid(validate_vanishing(h, q, cert));
    }
    Hypergraph h = read_hypergraph_file(input);
    SubsetFamily q = family_from_flags(h.uniformity(), family_text, family_file);
    auto cert = q_vanishing(h, q);
    if (!cert) {
        json j;
        j["vanishing"] = false;
        j["hypergraph"] = to_text(h);
        j["family"] = json::parse(q.to_json());
        emit(j);
        return 0;
    }
    json j = json::parse(vanishing_certificate_to_json(h, q, *cert));
    j["hypergraph"] = to_text(h);
    emit(j);
    return 0;
}

int run_build_hq(int r, const std::string& family_text, const std::string& family_file,
                 const std::string& output) {
    SubsetFamily q = family_from_flags(r, family_text, family_file);
    HqResult res = build_hq(r, q);
    json j;
    j["hypergraph"] = to_text(res.hypergraph);
    j["classes"] = res.classes;
    auto ord = hq_pair_intersection_check(res.hypergraph);
    j["pair_intersection_ordering"] = {{"exists", ord.exists}, {"ordering", ord.ordering}};
    if (!output.empty()) write_hypergraph_file(res.hypergraph, output);
    emit(j);
    return 0;
}

int run_copy_prob(const std::string& input, bool exhaustive) {
    Hypergraph h = read_hypergraph_file(input);
    CopyProbability exact = copy_probability_exact(h);
    if (!exhaustive) {
        emit(copy_prob_json(exact));
        return 0;
    }
    CopyProbability brute = copy_probability_exhaustive(h);
    json j;
    j["exact"] = copy_prob_json(exact);
    j["exhaustive"] = copy_prob_json(brute);
    j["agree"] = exact.probability == brute.probability;
    emit(j);
    return 0;
}

int run_mc_density(const std::string& input, int n, std::uint64_t samples, std::uint64_t seed,
                   const std::string& format) {
    Hypergraph h = read_hypergraph_file(input);
    McDensity mc = mc_density(h, n, samples, seed);
    if (format == "csv") {
        std::cout << "H-name,r,n,samples,estimate,stderr,seed\n";
        std::cout << input_stem(input) << "," << h.uniformity() << "," << n << "," << samples
                  << "," << fmt_double(mc.estimate) << "," << fmt_double(mc.stderr_value) << ","
                  << seed << "\n";
        return 0;
    }
    json j;
    j["name"] = input_stem(input);
    j["r"] = h.uniformity();
    j["n"] = n;
    j["samples"] = samples;
    j["hits"] = mc.hits;
    j["estimate"] = fmt_double(mc.estimate);
    j["stderr"] = fmt_double(mc.stderr_value);
    j["ci95"] = {fmt_double(mc.ci95_lo), fmt_double(mc.ci95_hi)};
    j["seed"] = seed;
    emit(j);
    return 0;
}

int run_minimize(const std::string& input, int parts, std::uint64_t budget, std::uint64_t seed,
                 const std::string& verify_path) {
    if (!verify_path.empty()) {
        json j = parse_json(read_file(verify_path), "certificate file");
        Hypergraph h = parse_text(j.at("target").get<std::string>());
        StepKernel kern = StepKernel::from_json(j.at("kernel").dump());
        Rat claimed = parse_rat(j.at("value").get<std::string>(), "value");
        Rat actual = density(h, kern);
        bool ok = actual == claimed && j.at("negative").get<bool>() == (actual.sign() < 0);
        return report_valid(ok);
    }
    Hypergraph h = read_hypergraph_file(input);
    MinimizeResult res = minimize_density(h, parts, budget, seed);
    json j;
    j["target"] = to_text(h);
    j["parts"] = parts;
    j["kernel"] = json::parse(res.kernel.to_json());
    j["value"] = res.value.str();
    j["negative"] = res.negative;
    j["budget_exhausted"] = res.budget_exhausted;
    j["best_float"] = fmt_double(res.best_float);
    j["restarts"] = res.restarts_done;
    emit(j);
    return 0;
}

int run_cycle_demo(int r, int ell, int n, std::uint64_t seed) {
    CycleDemoReport report = cycle_demo(r, ell, n, seed);
    std::cout << cycle_demo_to_json(report) << "\n";
    std::cerr << cycle_demo_summary(report);
    return 0;
}

int run_grid_demo(int r, std::uint64_t budget) {
    std::cout << grid_demo_to_json(grid_demo(r, budget)) << "\n";
    return 0;
}

int run_code_spectrum(const std::string& input, int n, const std::string& format) {
    Hypergraph h = read_hypergraph_file(input);
    CodeBound cb = code_density_bound(h, n);
    json summary;
    summary["beta"] = cb.beta.str();
    summary["gamma"] = cb.gamma.str();
    summary["argmin"] = graph_vector_to_hex(cb.argmin);
    summary["bound"] = cb.bound.str();
    if (format == "csv") {
        const int m = n * (n - 1) / 2;
        if (m > 16) throw BudgetError("code-spectrum csv: 2^C(n,2) rows over 65536");
        auto copies = enumerate_copies(h, n);
        auto spectrum = indicator_spectrum(n, copies);
        std::cout << "x-hex,coefficient\n";
        for (std::size_t x = 0; x < spectrum.size(); x++) {
            GraphVector gv{n, static_cast<std::uint64_t>(x)};
            Rat coeff = Rat(spectrum[x]) * Rat::pow2(-m);
            std::cout << graph_vector_to_hex(gv) << "," << coeff.str() << "\n";
        }
        std::cerr << summary.dump() << "\n";
        return 0;
    }
    emit(summary);
    return 0;
}

int run_code_bound(const std::string& input, int n) {
    Hypergraph h = read_hypergraph_file(input);
    CodeBound cb = code_density_bound(h, n);
    json j;
    j["n"] = cb.n;
    j["copy_count"] = cb.copy_count;
    j["beta"] = cb.beta.str();
    j["gamma"] = cb.gamma.str();
    j["argmin"] = graph_vector_to_hex(cb.argmin);
    j["bound"] = cb.bound.str();
    emit(j);
    return 0;
}

int run_max_code(const std::string& input, int n, bool check) {
    Hypergraph h = read_hypergraph_file(input);
    MaxCode mc = bruteforce_max_code(h, n);
    json j;
    j["max_size"] = mc.max_size;
    j["total"] = mc.total;
    j["density"] = mc.density.str();
    json example = json::array();
    std::size_t cap = 256;
    for (std::size_t i = 0; i < mc.example.size() && i < cap; i++)
        example.push_back(graph_vector_to_hex(mc.example[i]));
    j["example"] = example;
    j["example_truncated"] = mc.example.size() > cap;
    if (check) {
        MaxCode other = max_code_exhaustive(h, n);
        j["exhaustive_max_size"] = other.max_size;
        j["agree"] = other.max_size == mc.max_size;
    }
    emit(j);
    return 0;
}

int run_stable_involution(const std::string& input) {
    Hypergraph g = read_hypergraph_file(input);
    auto cert = detect_stable_involution(g);
    json j;
    j["exists"] = cert.has_value();
    if (cert) {
        j["involution"] = cert->involution;
        j["left"] = cert->left;
        j["right"] = cert->right;
        j["fixed"] = cert->fixed;
    }
    emit(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"poslab: exact homomorphism densities, non-positivity certificates,"
                 " quasirandomness gadgets and graph-code bounds"};
    app.require_subcommand(1);

    std::function<int()> action;

    std::string input, kernel_spec, tol = "1/1048576", verify_path, format = "json";
    std::string family_text, family_file, output;
    std::uint64_t seed = 0, samples = 100000, budget = kDefaultTermBudget;
    int n = 0, parts = 2, r = 3, ell = 6;
    bool exhaustive = false, check = false;

    auto* density_cmd = app.add_subcommand("density", "exact homomorphism density of H in a step kernel");
    density_cmd->add_option("--input", input, "hypergraph file")->required();
    density_cmd->add_option("--kernel", kernel_spec, "kernel spec or JSON path")->required();
    density_cmd->add_option("--budget", budget, "assignment budget");
    density_cmd->callback([&] { action = [&] { return run_density(input, kernel_spec, budget); }; });

    auto* indpoly_cmd = app.add_subcommand("indpoly", "independence polynomial and smallest-root bracket");
    indpoly_cmd->add_option("--input", input, "graph file")->required();
    indpoly_cmd->add_option("--tol", tol, "bracket width p/q");
    indpoly_cmd->callback([&] { action = [&] { return run_indpoly(input, tol); }; });

    auto* certify_cmd = app.add_subcommand("certify-odd", "negative-density witness for an all-odd-degree graph");
    certify_cmd->add_option("--input", input, "graph file");
    certify_cmd->add_option("--tol", tol, "bracket width p/q");
    certify_cmd->add_option("--verify", verify_path, "re-validate an emitted certificate");
    certify_cmd->callback([&] { action = [&] { return run_certify_odd(input, tol, verify_path); }; });

    auto* levi_cmd = app.add_subcommand("levi", "certify via the vertex-edge incidence graph");
    levi_cmd->add_option("--input", input, "hypergraph file");
    levi_cmd->add_option("--tol", tol, "bracket width p/q");
    levi_cmd->add_option("--verify", verify_path, "re-validate an emitted certificate");
    levi_cmd->callback([&] { action = [&] { return run_levi(input, tol, verify_path); }; });

    auto* qvanish_cmd = app.add_subcommand("qvanish", "vanishing certificate for a subset family");
    qvanish_cmd->add_option("--input", input, "hypergraph file");
    qvanish_cmd->add_option("--family", family_text, "family JSON, e.g. [[1,2],[3]]");
    qvanish_cmd->add_option("--family-file", family_file, "family JSON file");
    qvanish_cmd->add_option("--verify", verify_path, "re-validate an emitted certificate");
    qvanish_cmd->callback([&] { action = [&] { return run_qvanish(input, family_text, family_file, verify_path); }; });

    auto* hq_cmd = app.add_subcommand("build-hq", "gadget hypergraph of a subset family");
    hq_cmd->add_option("--r", r, "uniformity")->required();
    hq_cmd->add_option("--family", family_text, "family JSON");
    hq_cmd->add_option("--family-file", family_file, "family JSON file");
    hq_cmd->add_option("--output", output, "write the hypergraph to this file");
    hq_cmd->callback([&] { action = [&] { return run_build_hq(r, family_text, family_file, output); }; });

    auto* cp_cmd = app.add_subcommand("copy-prob", "exact tournament copy probability");
    cp_cmd->add_option("--input", input, "hypergraph file")->required();
    cp_cmd->add_flag("--exhaustive", exhaustive, "also run the orientation enumeration route");
    cp_cmd->callback([&] { action = [&] { return run_copy_prob(input, exhaustive); }; });

    auto* mc_cmd = app.add_subcommand("mc-density", "Monte Carlo copy probability in random tournaments");
    mc_cmd->add_option("--input", input, "hypergraph file")->required();
    mc_cmd->add_option("--n", n, "tournament vertex count")->required();
    mc_cmd->add_option("--samples", samples, "sample count");
    mc_cmd->add_option("--seed", seed, "RNG seed")->required();
    mc_cmd->add_option("--format", format, "json|csv");
    mc_cmd->callback([&] { action = [&] { return run_mc_density(input, n, samples, seed, format); }; });

    auto* min_cmd = app.add_subcommand("minimize", "search for a negative-density step kernel");
    min_cmd->add_option("--input", input, "hypergraph file");
    min_cmd->add_option("--parts", parts, "kernel part count");
    min_cmd->add_option("--budget", budget, "assignment-evaluation budget");
    min_cmd->add_option("--seed", seed, "RNG seed");
    min_cmd->add_option("--verify", verify_path, "re-validate an emitted result");
    min_cmd->callback([&] { action = [&] { return run_minimize(input, parts, budget, seed, verify_path); }; });

    auto* cycle_cmd = app.add_subcommand("cycle-demo", "tight-cycle evidence bundle");
    cycle_cmd->add_option("--r", r, "uniformity (3 or 5)");
    cycle_cmd->add_option("--ell", ell, "cycle length");
    cycle_cmd->add_option("--n", n, "finite kernel size")->default_val(12);
    cycle_cmd->add_option("--seed", seed, "RNG seed")->required();
    cycle_cmd->callback([&] { action = [&] { return run_cycle_demo(r, ell, n, seed); }; });

    auto* grid_cmd = app.add_subcommand("grid-demo", "parity-kernel sweep over grid edge subsets");
    grid_cmd->add_option("--r", r, "grid side");
    grid_cmd->add_option("--budget", budget, "assignment budget per subset");
    grid_cmd->callback([&] { action = [&] { return run_grid_demo(r, budget); }; });

    auto* spec_cmd = app.add_subcommand("code-spectrum", "copy-indicator Fourier spectrum");
    spec_cmd->add_option("--input", input, "graph file")->required();
    spec_cmd->add_option("--n", n, "host vertex count")->required();
    spec_cmd->add_option("--format", format, "json|csv");
    spec_cmd->callback([&] { action = [&] { return run_code_spectrum(input, n, format); }; });

    auto* bound_cmd = app.add_subcommand("code-bound", "spectral bound on code density");
    bound_cmd->add_option("--input", input, "graph file")->required();
    bound_cmd->add_option("--n", n, "host vertex count")->required();
    bound_cmd->callback([&] { action = [&] { return run_code_bound(input, n); }; });

    auto* max_cmd = app.add_subcommand("max-code", "exact maximum code avoiding copy differences");
    max_cmd->add_option("--input", input, "graph file")->required();
    max_cmd->add_option("--n", n, "host vertex count")->required();
    max_cmd->add_flag("--check", check, "compare against the exhaustive route");
    max_cmd->callback([&] { action = [&] { return run_max_code(input, n, check); }; });

    auto* inv_cmd = app.add_subcommand("stable-involution", "search for a positivity-certifying involution");
    inv_cmd->add_option("--input", input, "graph file")->required();
    inv_cmd->callback([&] { action = [&] { return run_stable_involution(input); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    }

    try {
        return action();
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
