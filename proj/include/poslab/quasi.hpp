#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poslab/hypergraph.hpp"

namespace poslab {

// Family of non-empty proper subsets of {1..r}, kept in the order given.
// Members are stored as bitmasks with element i on bit i-1.
class SubsetFamily {
public:
    SubsetFamily(int r, const std::vector<std::vector<int>>& members);  // 1-based elements
    static SubsetFamily from_masks(int r, std::vector<std::uint32_t> masks);

    int ground_arity() const { return r_; }
    int size() const { return static_cast<int>(masks_.size()); }
    const std::vector<std::uint32_t>& masks() const { return masks_; }
    std::vector<std::vector<int>> members() const;  // 1-based, each sorted

    std::string to_json() const;  // [[1,2],[3]]
    static SubsetFamily from_json(int r, const std::string& text);

    friend bool operator==(const SubsetFamily& a, const SubsetFamily& b) {
        return a.r_ == b.r_ && a.masks_ == b.masks_;
    }

private:
    int r_;
    std::vector<std::uint32_t> masks_;
};

// All non-empty subsets of members, in increasing mask order.
SubsetFamily closure(const SubsetFamily& q);

// The family used for tight cycles: {1..r-1} together with every
// (r-2)-subset of {1..r}.
SubsetFamily tight_cycle_family(int r);

// Witness that h is Q-vanishing: a distinguished edge e* and a bijection
// phi: e* -> {1..r} sending every non-empty intersection with another edge
// inside some member of Q.
struct VanishingCertificate {
    int edge_index;          // e* as index into h.edges()
    std::vector<int> phi;    // phi[i] = 1-based image of the i-th vertex of sorted e*
    struct Covering {
        int edge_index;              // the other edge e
        std::uint32_t image_mask;    // phi(e* cap e)
        int member_index;            // member of Q with image_mask subseteq member
    };
    std::vector<Covering> coverings;  // one per edge with non-empty intersection
};

// Exhaustive over all e* and all r! bijections; none returned means h is
// provably not Q-vanishing. Edges disjoint from e* impose nothing.
std::optional<VanishingCertificate> q_vanishing(const Hypergraph& h, const SubsetFamily& q);

bool validate_vanishing(const Hypergraph& h, const SubsetFamily& q,
                        const VanishingCertificate& cert);

// The r-partite gadget whose copy statistics characterize Q-quasirandomness:
// class V_i has one vertex per sign pattern on the members avoiding i, and
// each global sign vector contributes one edge.
struct HqResult {
    Hypergraph hypergraph;
    std::vector<std::vector<int>> classes;  // vertex ids per class V_1..V_r
};
HqResult build_hq(int r, const SubsetFamily& q);

// True iff the edges admit an ordering where each edge shares an (r-1)-set
// with at most one earlier edge. Backtracking over placements.
struct PairIntersectionOrdering {
    bool exists;
    std::vector<int> ordering;  // edge indices, valid when exists
};
PairIntersectionOrdering hq_pair_intersection_check(const Hypergraph& hq);

std::string vanishing_certificate_to_json(const Hypergraph& h, const SubsetFamily& q,
                                          const VanishingCertificate& cert);
VanishingCertificate vanishing_certificate_from_json(const std::string& text);

}  // namespace poslab
