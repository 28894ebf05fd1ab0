#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace poslab {

// r-uniform hypergraph on vertices 0..v-1. Edges are sorted r-sets, the edge
// list itself sorted lexicographically, so representation is canonical for a
// fixed labelling. r = 2 is an ordinary simple graph.
class Hypergraph {
public:
    Hypergraph(int r, int vertex_count, std::vector<std::vector<int>> edges);

    int uniformity() const { return r_; }
    int vertex_count() const { return v_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    const std::vector<int>& edge(int i) const { return edges_[static_cast<size_t>(i)]; }

    bool has_edge(std::vector<int> vertices) const;  // sorted internally

    std::vector<int> degrees() const;
    bool all_degrees_odd() const;
    bool is_connected() const;  // vacuously true when v <= 1; isolated vertices count

    // linear: every pair of distinct edges shares at most one vertex.
    struct Regularity {
        bool linear;
        std::optional<int> regular_degree;
    };
    Regularity linearity_and_regularity() const;

    // Subgraph keeping all v vertices, edges selected by index bitmask.
    Hypergraph edge_subgraph(std::uint64_t mask) const;
    Hypergraph edge_subgraph(const std::vector<int>& edge_indices) const;
    // Induced subgraph on the given vertices, relabelled 0..|S|-1 in given order.
    Hypergraph induced(const std::vector<int>& vertices) const;

    std::vector<int> non_isolated_vertices() const;

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.r_ == b.r_ && a.v_ == b.v_ && a.edges_ == b.edges_;
    }

private:
    int r_;
    int v_;
    std::vector<std::vector<int>> edges_;
};

// Named constructions.
Hypergraph tight_cycle(int r, int ell);
Hypergraph grid_hypergraph(int r);
Hypergraph levi_graph(const Hypergraph& h);
Hypergraph single_edge(int r);
Hypergraph complete_graph(int n);
Hypergraph path_graph(int n);       // n vertices, n-1 edges
Hypergraph cycle_graph(int n);
Hypergraph star_graph(int leaves);  // K_{1,leaves}, center = vertex 0
Hypergraph petersen_graph();
Hypergraph empty_hypergraph(int r, int v);
Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b);

// Number of (not necessarily injective) maps V(H) -> V(G) sending edges to
// edges. Backtracking over vertices ordered so edges complete early.
std::uint64_t hom_count(const Hypergraph& h, const Hypergraph& g);

// All 2^e - 1 non-empty edge subsets, each on the full vertex set.
// Masks run 1..2^e-1 in increasing order; e <= 25 enforced.
void for_each_edge_subgraph(const Hypergraph& h,
                            const std::function<void(const Hypergraph&, std::uint64_t)>& fn);
std::uint64_t edge_subset_count(const Hypergraph& h);

// Text format: "r v m" then m lines of r vertex indices.
std::string to_text(const Hypergraph& h);
Hypergraph parse_text(const std::string& text);
Hypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph_file(const Hypergraph& h, const std::string& path);

}  // namespace poslab
