#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poslab/hypergraph.hpp"
#include "poslab/kernel.hpp"
#include "poslab/rational.hpp"

namespace poslab {

// Element of the edge space of K_n: bit for pair (i,j), i<j, at colex index
// j(j-1)/2 + i. C(n,2) <= 64 here; dense spectra cap at C(n,2) <= 22.
struct GraphVector {
    int n;
    std::uint64_t bits;

    friend bool operator==(const GraphVector& a, const GraphVector& b) {
        return a.n == b.n && a.bits == b.bits;
    }
    friend bool operator<(const GraphVector& a, const GraphVector& b) {
        return a.n != b.n ? a.n < b.n : a.bits < b.bits;
    }
};

int pair_bit_index(int i, int j);

GraphVector graph_vector_of(const Hypergraph& g);   // r = 2, v <= 11
Hypergraph graph_of_vector(const GraphVector& x);
GraphVector complete_graph_vector(int n);

// "n=<n>:" then lowercase hex, little-endian: nibble t holds bits 4t..4t+3.
std::string graph_vector_to_hex(const GraphVector& x);
GraphVector graph_vector_from_hex(const std::string& text);

// All edge sets of K_n isomorphic to h, deduplicated, sorted by bits.
std::vector<GraphVector> enumerate_copies(const Hypergraph& h, int n);
std::uint64_t automorphism_count(const Hypergraph& h);  // graphs, v <= 8

struct FourierTable {
    int n;
    std::vector<double> values;  // size 2^C(n,2)
};

// Normalized transform: (1/2^C(n,2)) sum_y (-1)^{x.y} f(y).
FourierTable wht(int n, const std::vector<double>& f);
// Unnormalized in-place butterfly; applying it twice scales by table size.
void wht_unnormalized(std::vector<double>& f);
void wht_unnormalized(std::vector<std::int64_t>& f);

// Exact coefficient at x of the indicator of the given copy set.
Rat fourier_coefficient_exact(const std::vector<GraphVector>& copies, const GraphVector& x);

// Exact integer spectrum of an indicator: entry[x] = 2^C(n,2) * coefficient.
std::vector<std::int64_t> indicator_spectrum(int n, const std::vector<GraphVector>& points);

struct CodeBound {
    int n;
    std::uint64_t copy_count;
    Rat beta;           // |B| / 2^C(n,2)
    Rat gamma;          // min coefficient, exact
    GraphVector argmin; // lowest-index witness of the minimum
    Rat bound;          // -gamma / beta
};
CodeBound code_density_bound(const Hypergraph& h, int n);

// n equal parts; value -1 on pairs that are edges of x, +1 on other
// off-diagonal pairs, 0 on the diagonal.
StepKernel signed_kernel_from_graph_vector(const GraphVector& x);

struct PositivityRefutation {
    Rat coefficient;  // exact Fourier coefficient at x
    Rat threshold;    // -2 v(H)^v(H) beta / n
    StepKernel kernel;
    Rat density_value;  // exact, negative
};

// Fires only when coefficient < threshold strictly; the returned kernel then
// carries an exactly negative density.
std::optional<PositivityRefutation> positivity_refutation_from_fourier(const Hypergraph& h,
                                                                       int n,
                                                                       const GraphVector& x);

struct ExpectedFourier {
    std::uint64_t copy_count;   // copies of h on k*m vertices
    Rat weight_sum;             // sum over copies of the edge-weight product
    Rat expectation;            // weight_sum / 2^C(km,2)
    Rat beta;
};

// Expectation of the coefficient at a random x whose pair (u,v) is an edge
// with probability (1 - w[class(u)][class(v)])/2; classes are contiguous
// blocks of k vertices.
ExpectedFourier expected_fourier_from_kernel(const Hypergraph& h,
                                             const std::vector<std::vector<Rat>>& w, int k);

struct MaxCode {
    std::uint64_t max_size;
    std::uint64_t total;  // 2^C(n,2)
    Rat density;
    std::vector<GraphVector> example;  // one maximum code
};

// Exact maximum family with no two members differing by a copy of h.
// Conflicts live inside cosets of span(B), so: per-coset branch and bound,
// scaled by the coset count.
MaxCode bruteforce_max_code(const Hypergraph& h, int n);
// Independent route: per-coset exhaustive subset enumeration (coset size
// capped at 16 elements).
MaxCode max_code_exhaustive(const Hypergraph& h, int n);

bool code_is_valid(const std::vector<GraphVector>& code, const std::vector<GraphVector>& copies);

}  // namespace poslab
