#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poslab/hypergraph.hpp"
#include "poslab/indpoly.hpp"
#include "poslab/kernel.hpp"
#include "poslab/quasi.hpp"
#include "poslab/rational.hpp"
#include "poslab/tournament.hpp"

namespace poslab {

struct MinimizeResult {
    StepKernel kernel;  // best candidate after exact-rational rounding
    Rat value;          // exact density of that kernel
    bool negative;      // value < 0, decided exactly
    bool budget_exhausted;
    double best_float;  // objective at the best pre-rounding search point
    std::uint64_t restarts_done;
};

// Multi-start projected gradient descent over symmetric value tensors in
// [-1,1]^classes and softmax-parameterized part measures. The float search is
// heuristic; the returned value is always an exact re-evaluation of a
// rationally rounded kernel. Success is not guaranteed. budget counts
// assignment-loop evaluations across all restarts.
MinimizeResult minimize_density(const Hypergraph& h, int k, std::uint64_t budget,
                                std::uint64_t seed);

// Comparison of t_H against the edge-density power under a small
// perturbation 1 + eps*T. With a witness kernel W, T = W tensor U and both
// sides expand over edge subsets with per-factor multiplicativity; without
// one, T = U directly.
struct NonSidorenkoCertificate {
    Hypergraph target;                 // H
    std::vector<int> subgraph_edges;   // G as sorted edge indices into H
    std::optional<StepKernel> witness; // W; absent on the direct branch
    StepKernel quasirandom;            // U
    Rat epsilon;
    Rat subgraph_density;  // t_G(W), or t_G(U) on the direct branch
    Rat lhs;               // t_H(1 + eps*T)
    Rat rhs;               // (1 + eps * t_edge(T))^e(H)
    bool valid;            // lhs < rhs, decided exactly
};

NonSidorenkoCertificate nonsidorenko_certificate(const Hypergraph& h,
                                                 const std::vector<int>& subgraph_edges,
                                                 const std::optional<StepKernel>& w,
                                                 const StepKernel& u, const Rat& eps,
                                                 std::uint64_t term_budget = kDefaultTermBudget);

// Decreasing dyadic scan eps = 2^-1 .. 2^-20; first valid certificate wins.
std::optional<NonSidorenkoCertificate> find_epsilon(
    const Hypergraph& h, const std::vector<int>& subgraph_edges,
    const std::optional<StepKernel>& w, const StepKernel& u,
    std::uint64_t term_budget = kDefaultTermBudget);

std::string nonsidorenko_certificate_to_json(const NonSidorenkoCertificate& cert);
NonSidorenkoCertificate nonsidorenko_certificate_from_json(const std::string& text);
// Exact replay of both sides from the stored kernels and epsilon.
bool validate_nonsidorenko_certificate(const NonSidorenkoCertificate& cert);

// Evidence bundle for an odd-uniformity tight cycle: non-positivity of the
// Levi graph, vanishing certificates for every proper non-empty edge subset
// under the tight-cycle family, non-vanishing of the full cycle, the exact
// labelled-copy probability against the 2^{(1-r)ell} baseline, and measured
// |t_F| of short edge runs in centered finite tournament kernels.
struct CycleDemoReport {
    int r;
    int ell;
    int n;
    std::uint64_t seed;

    LeviWitnessCertificate levi;

    SubsetFamily family;            // {1..r-1} plus all (r-2)-subsets
    std::uint64_t proper_subsets;   // 2^ell - 2
    std::uint64_t vanishing_count;  // certified among those
    bool all_proper_vanish;
    bool full_cycle_vanishes;  // expected false

    CopyProbability copy_prob;  // rank route, exact
    std::optional<CopyProbability> copy_prob_exhaustive;  // when ell <= 14
    Rat random_bound;  // 2^{(1-r) ell}

    struct Decay {
        int run_length;           // consecutive edges in the subset
        std::vector<int> sizes;   // tournament vertex counts
        std::vector<Rat> values;  // exact t_F of the centered kernel
    };
    std::vector<Decay> decay;
};

CycleDemoReport cycle_demo(int r, int ell, int n, std::uint64_t seed);
std::string cycle_demo_to_json(const CycleDemoReport& report);
std::string cycle_demo_summary(const CycleDemoReport& report);

// Parity-kernel sweep over every non-empty edge subset of the grid: the
// density must be 1 exactly on all-even-degree subsets and 0 otherwise, and
// only the full grid attains 1. Subsets whose evaluation would exceed the
// term budget are skipped and counted.
struct GridDemoReport {
    int r;
    int edge_count;           // 2r
    std::uint64_t subsets;    // 2^(2r) - 1
    std::uint64_t checked;
    std::uint64_t skipped;
    std::uint64_t mismatches;  // density != even-degree indicator
    std::uint64_t density_one_count;  // among checked
    bool full_grid_attains_one;
};

GridDemoReport grid_demo(int r, std::uint64_t term_budget = kDefaultTermBudget);
std::string grid_demo_to_json(const GridDemoReport& report);

}  // namespace poslab
