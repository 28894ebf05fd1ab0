#include "poslab/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "poslab/errors.hpp"

namespace poslab {

Hypergraph::Hypergraph(int r, int vertex_count, std::vector<std::vector<int>> edges)
    : r_(r), v_(vertex_count), edges_(std::move(edges)) {
    if (r_ < 2) throw PreconditionError("Hypergraph: uniformity must be >= 2");
    if (v_ < 0) throw PreconditionError("Hypergraph: negative vertex count");
    for (auto& e : edges_) {
        if (static_cast<int>(e.size()) != r_)
            throw PreconditionError("Hypergraph: edge size != uniformity");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw PreconditionError("Hypergraph: repeated vertex in edge");
        if (e.front() < 0 || e.back() >= v_)
            throw PreconditionError("Hypergraph: vertex index out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw PreconditionError("Hypergraph: duplicate edge");
}

bool Hypergraph::has_edge(std::vector<int> vertices) const {
    std::sort(vertices.begin(), vertices.end());
    return std::binary_search(edges_.begin(), edges_.end(), vertices);
}

std::vector<int> Hypergraph::degrees() const {
    std::vector<int> deg(static_cast<size_t>(v_), 0);
    for (const auto& e : edges_)
        for (int u : e) deg[static_cast<size_t>(u)]++;
    return deg;
}

bool Hypergraph::all_degrees_odd() const {
    auto deg = degrees();
    return std::all_of(deg.begin(), deg.end(), [](int d) { return d % 2 == 1; });
}

bool Hypergraph::is_connected() const {
    if (v_ <= 1) return true;
    std::vector<std::vector<int>> adj(static_cast<size_t>(v_));
    for (const auto& e : edges_)
        for (int a : e)
            for (int b : e)
                if (a != b) adj[static_cast<size_t>(a)].push_back(b);
    std::vector<char> seen(static_cast<size_t>(v_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<size_t>(u)])
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                count++;
                stack.push_back(w);
            }
    }
    return count == v_;
}

Hypergraph::Regularity Hypergraph::linearity_and_regularity() const {
    Regularity out{true, std::nullopt};
    for (size_t i = 0; i < edges_.size() && out.linear; i++)
        for (size_t j = i + 1; j < edges_.size() && out.linear; j++) {
            std::vector<int> common;
            std::set_intersection(edges_[i].begin(), edges_[i].end(),
                                  edges_[j].begin(), edges_[j].end(),
                                  std::back_inserter(common));
            if (common.size() > 1) out.linear = false;
        }
    auto deg = degrees();
    if (!deg.empty() && std::all_of(deg.begin(), deg.end(),
                                    [&](int d) { return d == deg[0]; }))
        out.regular_degree = deg[0];
    if (deg.empty()) out.regular_degree = 0;
    return out;
}

Hypergraph Hypergraph::edge_subgraph(std::uint64_t mask) const {
    std::vector<std::vector<int>> sub;
    for (size_t i = 0; i < edges_.size(); i++)
        if (mask >> i & 1) sub.push_back(edges_[i]);
    return Hypergraph(r_, v_, std::move(sub));
}

Hypergraph Hypergraph::edge_subgraph(const std::vector<int>& edge_indices) const {
    std::uint64_t mask = 0;
    for (int i : edge_indices) {
        if (i < 0 || i >= edge_count())
            throw PreconditionError("edge_subgraph: edge index out of range");
        mask |= std::uint64_t{1} << i;
    }
    return edge_subgraph(mask);
}

Hypergraph Hypergraph::induced(const std::vector<int>& vertices) const {
    std::vector<int> where(static_cast<size_t>(v_), -1);
    for (size_t i = 0; i < vertices.size(); i++) {
        int u = vertices[i];
        if (u < 0 || u >= v_) throw PreconditionError("induced: vertex out of range");
        if (where[static_cast<size_t>(u)] != -1)
            throw PreconditionError("induced: repeated vertex");
        where[static_cast<size_t>(u)] = static_cast<int>(i);
    }
    std::vector<std::vector<int>> sub;
    for (const auto& e : edges_) {
        std::vector<int> img;
        for (int u : e) {
            if (where[static_cast<size_t>(u)] == -1) break;
            img.push_back(where[static_cast<size_t>(u)]);
        }
        if (static_cast<int>(img.size()) == r_) sub.push_back(std::move(img));
    }
    return Hypergraph(r_, static_cast<int>(vertices.size()), std::move(sub));
}

std::vector<int> Hypergraph::non_isolated_vertices() const {
    auto deg = degrees();
    std::vector<int> out;
    for (int u = 0; u < v_; u++)
        if (deg[static_cast<size_t>(u)] > 0) out.push_back(u);
    return out;
}

Hypergraph tight_cycle(int r, int ell) {
    if (r < 3) throw PreconditionError("tight_cycle: uniformity must be >= 3");
    if (ell <= r) throw PreconditionError("tight_cycle: need more vertices than uniformity");
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < ell; i++) {
        std::vector<int> e;
        for (int j = 0; j < r; j++) e.push_back((i + j) % ell);
        edges.push_back(std::move(e));
    }
    return Hypergraph(r, ell, std::move(edges));
}

Hypergraph grid_hypergraph(int r) {
    if (r < 2) throw PreconditionError("grid: r must be >= 2");
    // vertex (i,j) -> i*r + j
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < r; i++) {
        std::vector<int> row, col;
        for (int j = 0; j < r; j++) {
            row.push_back(i * r + j);
            col.push_back(j * r + i);
        }
        edges.push_back(std::move(row));
        edges.push_back(std::move(col));
    }
    return Hypergraph(r, r * r, std::move(edges));
}

Hypergraph levi_graph(const Hypergraph& h) {
    // original vertices keep their labels; edge i becomes vertex v(h)+i
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < h.edge_count(); i++)
        for (int u : h.edge(i))
            edges.push_back({u, h.vertex_count() + i});
    return Hypergraph(2, h.vertex_count() + h.edge_count(), std::move(edges));
}

Hypergraph single_edge(int r) {
    std::vector<int> e(static_cast<size_t>(r));
    std::iota(e.begin(), e.end(), 0);
    return Hypergraph(r, r, {e});
}

Hypergraph complete_graph(int n) {
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++) edges.push_back({i, j});
    return Hypergraph(2, n, std::move(edges));
}

Hypergraph path_graph(int n) {
    if (n < 1) throw PreconditionError("path_graph: need >= 1 vertex");
    std::vector<std::vector<int>> edges;
    for (int i = 0; i + 1 < n; i++) edges.push_back({i, i + 1});
    return Hypergraph(2, n, std::move(edges));
}

Hypergraph cycle_graph(int n) {
    if (n < 3) throw PreconditionError("cycle_graph: need >= 3 vertices");
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < n; i++) edges.push_back({i, (i + 1) % n});
    return Hypergraph(2, n, std::move(edges));
}

Hypergraph star_graph(int leaves) {
    if (leaves < 1) throw PreconditionError("star_graph: need >= 1 leaf");
    std::vector<std::vector<int>> edges;
    for (int i = 1; i <= leaves; i++) edges.push_back({0, i});
    return Hypergraph(2, leaves + 1, std::move(edges));
}

Hypergraph petersen_graph() {
    // outer C_5 = 0..4, inner pentagram = 5..9, spokes i -- i+5
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < 5; i++) {
        edges.push_back({i, (i + 1) % 5});
        edges.push_back({5 + i, 5 + (i + 2) % 5});
        edges.push_back({i, i + 5});
    }
    return Hypergraph(2, 10, std::move(edges));
}

Hypergraph empty_hypergraph(int r, int v) { return Hypergraph(r, v, {}); }

Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b) {
    if (a.uniformity() != b.uniformity())
        throw PreconditionError("disjoint_union: uniformity mismatch");
    std::vector<std::vector<int>> edges = a.edges();
    for (auto e : b.edges()) {
        for (int& u : e) u += a.vertex_count();
        edges.push_back(std::move(e));
    }
    return Hypergraph(a.uniformity(), a.vertex_count() + b.vertex_count(), std::move(edges));
}

namespace {

// Edges of h grouped by their largest vertex, so a backtracking pass that
// assigns vertices in increasing order can check each edge exactly once.
std::vector<std::vector<int>> edges_by_last_vertex(const Hypergraph& h) {
    std::vector<std::vector<int>> by_last(static_cast<size_t>(h.vertex_count()));
    for (int i = 0; i < h.edge_count(); i++)
        by_last[static_cast<size_t>(h.edge(i).back())].push_back(i);
    return by_last;
}

}  // namespace

std::uint64_t hom_count(const Hypergraph& h, const Hypergraph& g) {
    if (h.uniformity() != g.uniformity())
        throw PreconditionError("hom_count: uniformity mismatch");
    if (h.vertex_count() > 12)
        throw BudgetError("hom_count: pattern too large for backtracking budget");
    const int vh = h.vertex_count();
    const int vg = g.vertex_count();
    if (vh == 0) return 1;
    if (vg == 0) return 0;
    auto by_last = edges_by_last_vertex(h);
    std::vector<int> image(static_cast<size_t>(vh), -1);
    std::uint64_t total = 0;

    std::function<void(int)> rec = [&](int u) {
        if (u == vh) {
            total++;
            return;
        }
        for (int x = 0; x < vg; x++) {
            image[static_cast<size_t>(u)] = x;
            bool ok = true;
            for (int ei : by_last[static_cast<size_t>(u)]) {
                std::vector<int> img;
                img.reserve(static_cast<size_t>(h.uniformity()));
                for (int w : h.edge(ei)) img.push_back(image[static_cast<size_t>(w)]);
                std::sort(img.begin(), img.end());
                if (std::adjacent_find(img.begin(), img.end()) != img.end() ||
                    !std::binary_search(g.edges().begin(), g.edges().end(), img)) {
                    ok = false;
                    break;
                }
            }
            if (ok) rec(u + 1);
        }
        image[static_cast<size_t>(u)] = -1;
    };
    rec(0);
    return total;
}

std::uint64_t edge_subset_count(const Hypergraph& h) {
    if (h.edge_count() > 25)
        throw BudgetError("edge subsets: more than 25 edges");
    return (std::uint64_t{1} << h.edge_count()) - 1;
}

void for_each_edge_subgraph(const Hypergraph& h,
                            const std::function<void(const Hypergraph&, std::uint64_t)>& fn) {
    std::uint64_t total = edge_subset_count(h);
    for (std::uint64_t mask = 1; mask <= total; mask++) fn(h.edge_subgraph(mask), mask);
}

std::string to_text(const Hypergraph& h) {
    std::ostringstream os;
    os << h.uniformity() << ' ' << h.vertex_count() << ' ' << h.edge_count() << '\n';
    for (const auto& e : h.edges()) {
        for (size_t i = 0; i < e.size(); i++) os << (i ? " " : "") << e[i];
        os << '\n';
    }
    return os.str();
}

Hypergraph parse_text(const std::string& text) {
    std::istringstream is(text);
    int r = 0, v = 0, m = 0;
    if (!(is >> r >> v >> m)) throw IoError("hypergraph text: bad header, want 'r v m'");
    if (m < 0) throw IoError("hypergraph text: negative edge count");
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < m; i++) {
        std::vector<int> e(static_cast<size_t>(r));
        for (int j = 0; j < r; j++)
            if (!(is >> e[static_cast<size_t>(j)]))
                throw IoError("hypergraph text: truncated edge list");
        edges.push_back(std::move(e));
    }
    try {
        return Hypergraph(r, v, std::move(edges));
    } catch (const PreconditionError& err) {
        throw IoError(std::string("hypergraph text: ") + err.what());
    }
}

Hypergraph read_hypergraph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

void write_hypergraph_file(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << to_text(h);
}

}  // namespace poslab
