#include "poslab/involution.hpp"

#include <algorithm>
#include <functional>

#include "poslab/errors.hpp"

namespace poslab {

namespace {

bool is_automorphism(const Hypergraph& g, const std::vector<int>& phi) {
    for (const auto& e : g.edges()) {
        std::vector<int> img{phi[static_cast<size_t>(e[0])], phi[static_cast<size_t>(e[1])]};
        if (img[0] == img[1]) return false;
        std::sort(img.begin(), img.end());
        if (!std::binary_search(g.edges().begin(), g.edges().end(), img)) return false;
    }
    return true;
}

// Given an involution that is an automorphism, try to orient its 2-cycles
// into L/R. Constraints: no edge inside F or inside a 2-cycle; any edge
// between two distinct 2-cycles forces their endpoints onto the same side
// (an XOR relation), solved by BFS 2-coloring. Edges touching F are free.
std::optional<StableInvolutionCertificate> orient(const Hypergraph& g,
                                                  const std::vector<int>& phi) {
    const int v = g.vertex_count();
    std::vector<int> pair_id(static_cast<size_t>(v), -1);
    std::vector<std::pair<int, int>> pairs;  // (a, b) with a < b, phi(a) = b
    std::vector<int> fixed;
    for (int u = 0; u < v; u++) {
        if (phi[static_cast<size_t>(u)] == u) {
            fixed.push_back(u);
        } else if (u < phi[static_cast<size_t>(u)]) {
            pair_id[static_cast<size_t>(u)] = static_cast<int>(pairs.size());
            pair_id[static_cast<size_t>(phi[static_cast<size_t>(u)])] =
                static_cast<int>(pairs.size());
            pairs.emplace_back(u, phi[static_cast<size_t>(u)]);
        }
    }

    // side(u) = color(pair) XOR (u is the second element of its pair)
    std::vector<std::vector<std::pair<int, int>>> adj(pairs.size());  // (other pair, parity)
    for (const auto& e : g.edges()) {
        int pa = pair_id[static_cast<size_t>(e[0])];
        int pb = pair_id[static_cast<size_t>(e[1])];
        if (pa == -1 && pb == -1) return std::nullopt;  // edge inside F
        if (pa == -1 || pb == -1) continue;             // F endpoints constrain nothing
        if (pa == pb) return std::nullopt;              // edge inside a 2-cycle
        int bit_a = e[0] == pairs[static_cast<size_t>(pa)].second ? 1 : 0;
        int bit_b = e[1] == pairs[static_cast<size_t>(pb)].second ? 1 : 0;
        // want side equal: color_a ^ bit_a == color_b ^ bit_b
        int parity = bit_a ^ bit_b;
        adj[static_cast<size_t>(pa)].emplace_back(pb, parity);
        adj[static_cast<size_t>(pb)].emplace_back(pa, parity);
    }

    std::vector<int> color(pairs.size(), -1);
    for (size_t start = 0; start < pairs.size(); start++) {
        if (color[start] != -1) continue;
        color[start] = 0;
        std::vector<int> stack{static_cast<int>(start)};
        while (!stack.empty()) {
            int p = stack.back();
            stack.pop_back();
            for (auto [q, parity] : adj[static_cast<size_t>(p)]) {
                int want = color[static_cast<size_t>(p)] ^ parity;
                if (color[static_cast<size_t>(q)] == -1) {
                    color[static_cast<size_t>(q)] = want;
                    stack.push_back(q);
                } else if (color[static_cast<size_t>(q)] != want) {
                    return std::nullopt;
                }
            }
        }
    }

    StableInvolutionCertificate cert;
    cert.involution = phi;
    cert.fixed = fixed;
    for (size_t p = 0; p < pairs.size(); p++) {
        auto [a, b] = pairs[p];
        if (color[p] == 0) {
            cert.left.push_back(a);
            cert.right.push_back(b);
        } else {
            cert.left.push_back(b);
            cert.right.push_back(a);
        }
    }
    std::sort(cert.left.begin(), cert.left.end());
    std::sort(cert.right.begin(), cert.right.end());
    return cert;
}

}  // namespace

std::optional<StableInvolutionCertificate> detect_stable_involution(const Hypergraph& g) {
    if (g.uniformity() != 2)
        throw PreconditionError("detect_stable_involution: graphs only");
    if (g.vertex_count() > 10)
        throw BudgetError("detect_stable_involution: more than 10 vertices");

    const int v = g.vertex_count();
    std::vector<int> phi(static_cast<size_t>(v), -1);
    std::optional<StableInvolutionCertificate> found;

    // Enumerate involutions: smallest unassigned vertex is fixed or paired
    // with a larger unassigned one. Deterministic order, first hit wins.
    std::function<bool(int)> rec = [&](int u) {
        while (u < v && phi[static_cast<size_t>(u)] != -1) u++;
        if (u == v) {
            if (!is_automorphism(g, phi)) return false;
            found = orient(g, phi);
            return found.has_value();
        }
        phi[static_cast<size_t>(u)] = u;
        if (rec(u + 1)) return true;
        for (int w = u + 1; w < v; w++) {
            if (phi[static_cast<size_t>(w)] != -1) continue;
            phi[static_cast<size_t>(u)] = w;
            phi[static_cast<size_t>(w)] = u;
            if (rec(u + 1)) return true;
            phi[static_cast<size_t>(w)] = -1;
        }
        phi[static_cast<size_t>(u)] = -1;
        return false;
    };
    rec(0);
    return found;
}

bool validate_stable_involution(const Hypergraph& g, const StableInvolutionCertificate& cert) {
    const int v = g.vertex_count();
    const auto& phi = cert.involution;
    if (static_cast<int>(phi.size()) != v) return false;
    for (int u = 0; u < v; u++) {
        int w = phi[static_cast<size_t>(u)];
        if (w < 0 || w >= v || phi[static_cast<size_t>(w)] != u) return false;
    }
    // (L, R, F) partitions the vertices
    std::vector<int> side(static_cast<size_t>(v), -1);  // 0=L 1=R 2=F
    auto mark = [&](const std::vector<int>& part, int tag) {
        for (int u : part) {
            if (u < 0 || u >= v || side[static_cast<size_t>(u)] != -1) return false;
            side[static_cast<size_t>(u)] = tag;
        }
        return true;
    };
    if (!mark(cert.left, 0) || !mark(cert.right, 1) || !mark(cert.fixed, 2)) return false;
    if (std::count(side.begin(), side.end(), -1) != 0) return false;
    for (int u = 0; u < v; u++) {
        int w = phi[static_cast<size_t>(u)];
        int su = side[static_cast<size_t>(u)], sw = side[static_cast<size_t>(w)];
        if (su == 2 && w != u) return false;
        if (su == 0 && sw != 1) return false;
        if (su == 1 && sw != 0) return false;
    }
    if (!is_automorphism(g, phi)) return false;
    for (const auto& e : g.edges()) {
        int sa = side[static_cast<size_t>(e[0])], sb = side[static_cast<size_t>(e[1])];
        if (sa == 2 && sb == 2) return false;                      // F spans no edge
        if ((sa == 0 && sb == 1) || (sa == 1 && sb == 0)) return false;  // cut
    }
    return true;
}

}  // namespace poslab
