#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "poslab/errors.hpp"
#include "poslab/hypergraph.hpp"

namespace poslab::detail {

// Assignment plan: only vertices of positive degree enter the recursion.
// Isolated vertices integrate out to 1 because part measures sum to 1.
// Edges are keyed to the level at which their last vertex gets a part, so
// each edge value is multiplied in exactly once per assignment.
struct AssignmentPlan {
    std::vector<int> active;                          // original vertex ids
    std::vector<std::vector<std::vector<int>>> edges_at;  // level -> edges -> active positions
    int depth = 0;
};

inline AssignmentPlan make_plan(const Hypergraph& h) {
    AssignmentPlan plan;
    plan.active = h.non_isolated_vertices();
    plan.depth = static_cast<int>(plan.active.size());
    std::vector<int> pos(static_cast<size_t>(h.vertex_count()), -1);
    for (int i = 0; i < plan.depth; i++)
        pos[static_cast<size_t>(plan.active[static_cast<size_t>(i)])] = i;
    plan.edges_at.resize(static_cast<size_t>(plan.depth));
    for (const auto& e : h.edges()) {
        std::vector<int> positions;
        int last = -1;
        for (int u : e) {
            int p = pos[static_cast<size_t>(u)];
            positions.push_back(p);
            last = std::max(last, p);
        }
        plan.edges_at[static_cast<size_t>(last)].push_back(std::move(positions));
    }
    return plan;
}

inline void check_term_budget(int k, int depth, std::uint64_t budget) {
    unsigned __int128 terms = 1;
    for (int i = 0; i < depth; i++) {
        terms *= static_cast<unsigned>(k);
        if (terms > budget)
            throw BudgetError("density: assignment count k^v exceeds term budget");
    }
}

inline bool num_is_zero(const double& x) { return x == 0.0; }
template <class Num>
bool num_is_zero(const Num& x) { return x.is_zero(); }

// Sum over assignments of (measure product) * (edge-value product).
// Branches die as soon as any edge value is exactly zero.
template <class Num>
Num density_eval(const AssignmentPlan& plan, int k,
                 const std::vector<Num>& measures, const std::vector<Num>& values) {
    Num total = Num(0);
    std::vector<int> part(static_cast<size_t>(plan.depth), 0);
    std::vector<Num> running(static_cast<size_t>(plan.depth) + 1, Num(0));
    running[0] = Num(1);

    std::function<void(int)> rec = [&](int level) {
        if (level == plan.depth) {
            total += running[static_cast<size_t>(level)];
            return;
        }
        for (int p = 0; p < k; p++) {
            part[static_cast<size_t>(level)] = p;
            Num cur = running[static_cast<size_t>(level)] * measures[static_cast<size_t>(p)];
            bool alive = !num_is_zero(cur);
            if (alive) {
                for (const auto& e : plan.edges_at[static_cast<size_t>(level)]) {
                    std::size_t idx = 0;
                    for (int q : e)
                        idx = idx * static_cast<size_t>(k) +
                              static_cast<size_t>(part[static_cast<size_t>(q)]);
                    const Num& val = values[idx];
                    if (num_is_zero(val)) { alive = false; break; }
                    cur *= val;
                }
            }
            if (alive) {
                running[static_cast<size_t>(level) + 1] = cur;
                rec(level + 1);
            }
        }
    };
    if (plan.depth == 0) return Num(1);
    rec(0);
    return total;
}

// Partial derivatives of the density with respect to each symmetry class of
// the value tensor, holding measures fixed. grad[c] = sum over assignments
// and edges e with sorted part tuple c of (measure product) * (product of the
// other edge values). Zero edge values do not prune here; they merely zero
// the other edges' contributions, so we track the count.
template <class Num>
std::map<std::vector<int>, Num> gradient_eval(const AssignmentPlan& plan, int k,
                                              const std::vector<Num>& measures,
                                              const std::vector<Num>& values) {
    std::map<std::vector<int>, Num> grad;
    std::vector<int> part(static_cast<size_t>(plan.depth), 0);

    std::function<void(int, Num, Num, int)> rec =
        [&](int level, Num mprod, Num nonzero_prod, int zeros) {
            if (zeros >= 2) return;
            if (level == plan.depth) {
                for (const auto& level_edges : plan.edges_at)
                    for (const auto& e : level_edges) {
                        std::vector<int> cls;
                        std::size_t idx = 0;
                        for (int q : e) {
                            cls.push_back(part[static_cast<size_t>(q)]);
                            idx = idx * static_cast<size_t>(k) +
                                  static_cast<size_t>(part[static_cast<size_t>(q)]);
                        }
                        const Num& val = values[idx];
                        Num contrib(0);
                        if (zeros == 0)
                            contrib = mprod * nonzero_prod / val;
                        else if (num_is_zero(val))  // zeros == 1 and this is the zero edge
                            contrib = mprod * nonzero_prod;
                        else
                            continue;
                        std::sort(cls.begin(), cls.end());
                        auto it = grad.find(cls);
                        if (it == grad.end())
                            grad.emplace(std::move(cls), contrib);
                        else
                            it->second += contrib;
                    }
                return;
            }
            for (int p = 0; p < k; p++) {
                part[static_cast<size_t>(level)] = p;
                Num m2 = mprod * measures[static_cast<size_t>(p)];
                Num nz = nonzero_prod;
                int z = zeros;
                for (const auto& e : plan.edges_at[static_cast<size_t>(level)]) {
                    std::size_t idx = 0;
                    for (int q : e)
                        idx = idx * static_cast<size_t>(k) +
                              static_cast<size_t>(part[static_cast<size_t>(q)]);
                    const Num& val = values[idx];
                    if (num_is_zero(val))
                        z++;
                    else
                        nz *= val;
                }
                rec(level + 1, m2, nz, z);
            }
        };
    rec(0, Num(1), Num(1), 0);
    return grad;
}

}  // namespace poslab::detail
