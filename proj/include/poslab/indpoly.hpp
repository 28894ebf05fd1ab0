#pragma once

#include <string>

#include "poslab/hypergraph.hpp"
#include "poslab/kernel.hpp"
#include "poslab/polynomial.hpp"
#include "poslab/rational.hpp"

namespace poslab {

// I_G(x) = sum_k i_k(G) (-x)^k where i_k counts independent k-sets.
// Deletion recursion I_G = I_{G-v} - x * I_{G-N[v]}, memoized on vertex
// masks; graphs up to 64 vertices representable, budget capped at 40.
Polynomial independence_polynomial(const Hypergraph& g);

// Independent oracle: direct enumeration of all 2^v vertex subsets, v <= 24.
Polynomial independence_polynomial_enum(const Hypergraph& g);

struct RootBracket {
    Rat lo, hi;  // P(lo) > 0, P(hi) < 0, hi - lo <= tol, inside (0,1)
};

// Isolates the smallest root of an independence polynomial of a connected
// graph with an edge (caller's contract: such a root is real, simple and in
// (0,1)). Sign-change scan on refining grids, then exact bisection.
RootBracket smallest_root_bracket(const Polynomial& p, const Rat& tol);

// Two parts with measures (alpha, 1-alpha); value 0 on (0,0), -1 across,
// +1 on (1,1).
StepKernel odd_witness_kernel(const Rat& alpha);

struct WitnessIdentity {
    Rat lhs;  // density(g, odd_witness_kernel(alpha))
    Rat rhs;  // (1-alpha)^v * I_g(alpha/(1-alpha))
    bool equal;
};

// The all-odd-degree contraction identity behind the witness kernel.
WitnessIdentity verify_witness_identity(const Hypergraph& g, const Rat& alpha);

struct OddWitnessCertificate {
    Rat alpha;
    Rat value;  // exact density, strictly negative
    Polynomial polynomial;
    RootBracket bracket;
};

// Full pipeline for connected graphs with every degree odd: bracket the
// smallest root beta of I_G, scan rationals x slightly past beta for an
// exactly negative I_G(x), return alpha = x/(1+x) with the exact density.
OddWitnessCertificate certify_nonpositive_odd(const Hypergraph& g,
                                              const Rat& tol = Rat(1, 1048576));

struct LeviWitnessCertificate {
    Hypergraph levi;
    OddWitnessCertificate cert;
};

// Odd-uniformity hypergraphs with all degrees odd have all-odd Levi graphs;
// certify the Levi graph.
LeviWitnessCertificate levi_nonpositivity(const Hypergraph& h,
                                          const Rat& tol = Rat(1, 1048576));

// JSON certificate: {"alpha": "p/q", "density": "p/q", "polynomial": [...]}.
std::string odd_certificate_to_json(const OddWitnessCertificate& cert);
OddWitnessCertificate odd_certificate_from_json(const std::string& text);

// Exact replay: rebuilds the kernel from alpha, recomputes the density of g,
// checks value match, negativity, and the polynomial.
bool validate_odd_certificate(const Hypergraph& g, const OddWitnessCertificate& cert);

}  // namespace poslab
