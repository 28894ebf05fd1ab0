// Python surface: text formats in, exact strings out. Hypergraphs travel in
// the "r v m" text format, kernels as JSON, rationals as "p/q" strings.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "poslab/errors.hpp"
#include "poslab/graphcodes.hpp"
#include "poslab/hypergraph.hpp"
#include "poslab/indpoly.hpp"
#include "poslab/involution.hpp"
#include "poslab/kernel.hpp"
#include "poslab/quasi.hpp"
#include "poslab/sidorenko.hpp"
#include "poslab/tournament.hpp"

namespace py = pybind11;
using namespace poslab;

namespace {

Hypergraph hg(const std::string& text) { return parse_text(text); }

}  // namespace

PYBIND11_MODULE(_poslab, m) {
    m.doc() = "exact homomorphism densities, non-positivity certificates and graph codes";

    py::register_exception<PreconditionError>(m, "PreconditionViolation", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "ParseFailure", PyExc_ValueError);

    // constructions, all returning the text format
    m.def("tight_cycle", [](int r, int ell) { return to_text(tight_cycle(r, ell)); });
    m.def("grid", [](int r) { return to_text(grid_hypergraph(r)); });
    m.def("levi", [](const std::string& h) { return to_text(levi_graph(hg(h))); });
    m.def("single_edge", [](int r) { return to_text(single_edge(r)); });
    m.def("complete_graph", [](int n) { return to_text(complete_graph(n)); });
    m.def("path_graph", [](int n) { return to_text(path_graph(n)); });
    m.def("cycle_graph", [](int n) { return to_text(cycle_graph(n)); });
    m.def("star_graph", [](int leaves) { return to_text(star_graph(leaves)); });

    m.def("hom_count", [](const std::string& h, const std::string& g) {
        return hom_count(hg(h), hg(g));
    });

    // kernels as JSON strings
    m.def("parity_kernel", [](int r) { return parity_kernel(r).to_json(); });
    m.def("constant_kernel", [](int r, const std::string& value) {
        return StepKernel::constant(r, Rat::from_string(value)).to_json();
    });
    m.def("kernel_of", [](const std::string& h) { return kernel_of(hg(h)).to_json(); });
    m.def("odd_witness_kernel", [](const std::string& alpha) {
        return odd_witness_kernel(Rat::from_string(alpha)).to_json();
    });

    m.def("density", [](const std::string& h, const std::string& kernel_json) {
        return density(hg(h), StepKernel::from_json(kernel_json)).str();
    });
    m.def("expansion_density",
          [](const std::string& h, const std::string& kernel_json, const std::string& eps) {
              return expansion_density(hg(h), StepKernel::from_json(kernel_json),
                                       Rat::from_string(eps))
                  .str();
          });

    m.def("independence_polynomial", [](const std::string& g) {
        Polynomial p = independence_polynomial(hg(g));  // keep alive past coefficients()
        std::vector<std::string> out;
        for (const auto& c : p.coefficients()) out.push_back(c.str());
        return out;
    });

    m.def("certify_odd", [](const std::string& g) {
        return odd_certificate_to_json(certify_nonpositive_odd(hg(g)));
    });
    m.def("validate_odd", [](const std::string& g, const std::string& cert_json) {
        return validate_odd_certificate(hg(g), odd_certificate_from_json(cert_json));
    });
    m.def("levi_certify", [](const std::string& h) {
        auto lc = levi_nonpositivity(hg(h));
        return py::make_tuple(to_text(lc.levi), odd_certificate_to_json(lc.cert));
    });

    m.def("q_vanishing",
          [](const std::string& h, const std::string& family_json) -> std::optional<std::string> {
              Hypergraph target = hg(h);
              SubsetFamily q = SubsetFamily::from_json(target.uniformity(), family_json);
              auto cert = q_vanishing(target, q);
              if (!cert) return std::nullopt;
              return vanishing_certificate_to_json(target, q, *cert);
          });
    m.def("build_hq", [](int r, const std::string& family_json) {
        auto res = build_hq(r, SubsetFamily::from_json(r, family_json));
        return py::make_tuple(to_text(res.hypergraph), res.classes);
    });

    m.def("copy_probability", [](const std::string& h) {
        auto cp = copy_probability_exact(hg(h));
        return py::make_tuple(cp.consistent, cp.rank, cp.variables, cp.probability.str());
    });
    m.def("mc_density", [](const std::string& h, int n, std::uint64_t samples, std::uint64_t seed) {
        auto mc = mc_density(hg(h), n, samples, seed);
        return py::make_tuple(mc.estimate, mc.stderr_value, mc.hits);
    });

    m.def("minimize_density",
          [](const std::string& h, int k, std::uint64_t budget, std::uint64_t seed) {
              auto res = minimize_density(hg(h), k, budget, seed);
              return py::make_tuple(res.kernel.to_json(), res.value.str(), res.negative,
                                    res.budget_exhausted);
          });

    m.def("code_bound", [](const std::string& h, int n) {
        auto cb = code_density_bound(hg(h), n);
        return py::make_tuple(cb.beta.str(), cb.gamma.str(), graph_vector_to_hex(cb.argmin),
                              cb.bound.str());
    });
    m.def("max_code", [](const std::string& h, int n) {
        auto mc = bruteforce_max_code(hg(h), n);
        return py::make_tuple(mc.max_size, mc.total, mc.density.str());
    });
    m.def("enumerate_copies", [](const std::string& h, int n) {
        std::vector<std::string> out;
        for (const auto& c : enumerate_copies(hg(h), n)) out.push_back(graph_vector_to_hex(c));
        return out;
    });

    m.def("stable_involution",
          [](const std::string& g) -> std::optional<py::tuple> {
              auto cert = detect_stable_involution(hg(g));
              if (!cert) return std::nullopt;
              return py::make_tuple(cert->involution, cert->left, cert->right, cert->fixed);
          });
}
