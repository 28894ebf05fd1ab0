#pragma once

#include <optional>
#include <vector>

#include "poslab/hypergraph.hpp"

namespace poslab {

// Witness that a graph is positive: an involutary automorphism phi swapping
// L and R across the pointwise-fixed set F, where F spans no edge and no edge
// meets both L and R.
struct StableInvolutionCertificate {
    std::vector<int> involution;  // phi as a permutation of 0..v-1
    std::vector<int> left;
    std::vector<int> right;
    std::vector<int> fixed;
};

// Exhaustive search (all involutions, then all consistent L/R orientations).
// Graphs only (r = 2), v <= 10.
std::optional<StableInvolutionCertificate> detect_stable_involution(const Hypergraph& g);

// Re-checks every certificate invariant against g.
bool validate_stable_involution(const Hypergraph& g, const StableInvolutionCertificate& cert);

}  // namespace poslab
