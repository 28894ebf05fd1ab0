#include <doctest.h>

#include <cstdint>
#include <vector>

#include "poslab/errors.hpp"
#include "poslab/hypergraph.hpp"
#include "poslab/rational.hpp"
#include "poslab/rng.hpp"
#include "poslab/tournament.hpp"

using namespace poslab;

namespace {

Hypergraph two_edges_sharing(int r) {
    // {0..r-1} and {1..r}: overlap of size r-1
    std::vector<int> a, b;
    for (int i = 0; i < r; i++) a.push_back(i);
    for (int i = 1; i <= r; i++) b.push_back(i);
    return Hypergraph(r, r + 1, {a, b});
}

}  // namespace

TEST_CASE("lazy tournaments are deterministic pure functions of the seed") {
    Tournament t1 = Tournament::lazy(2, 30, 42);
    Tournament t2 = Tournament::lazy(2, 30, 42);
    Tournament t3 = Tournament::lazy(2, 30, 43);
    int diff = 0;
    for (int a = 0; a < 30; a++)
        for (int b = a + 1; b < 30; b++) {
            std::vector<int> s{a, b};
            int v = t1.sigma(s);
            CHECK((v == 1 || v == -1));
            CHECK(t2.sigma(s) == v);
            diff += t3.sigma(s) != v;
        }
    CHECK(diff > 100);  // different seeds disagree on a fat fraction of pairs
}

TEST_CASE("explicit sign tables reproduce the lazy signs") {
    Tournament lazy = Tournament::lazy(3, 8, 7);
    std::vector<std::int8_t> table;
    std::vector<int> subset{0, 1, 2};
    // colex order: ranks enumerate sorted triples
    for (int c = 2; c < 8; c++)
        for (int b = 1; b < c; b++)
            for (int a = 0; a < b; a++) {
                subset = {a, b, c};
                CHECK(lazy.colex_rank(subset) == table.size());
                table.push_back(static_cast<std::int8_t>(lazy.sigma(subset)));
            }
    Tournament copy = Tournament::from_signs(3, 8, table);
    for (int a = 0; a < 8; a++)
        for (int b = a + 1; b < 8; b++)
            for (int c = b + 1; c < 8; c++)
                CHECK(copy.sigma({a, b, c}) == lazy.sigma({a, b, c}));

    CHECK_THROWS_AS(Tournament::from_signs(3, 8, {1, -1}), PreconditionError);  // wrong size
    CHECK_THROWS_AS(Tournament::from_signs(1, 2, {1, 0}), PreconditionError);   // bad sign value
}

TEST_CASE("arrangement signs carry permutation parity") {
    Tournament t = Tournament::lazy(3, 6, 11);
    for (int a = 0; a < 6; a++)
        for (int b = a + 1; b < 6; b++)
            for (int c = b + 1; c < 6; c++) {
                std::vector<int> T{a, b, c};
                int base = t.sigma(T);
                // moving position pos to the back costs (s-1-pos) transpositions
                CHECK(t.t_sign_at(T, 2) == base);
                CHECK(t.t_sign_at(T, 1) == -base);
                CHECK(t.t_sign_at(T, 0) == base);
                CHECK(t.t_sign(T, {a, b}) == t.t_sign_at(T, 2));
                CHECK(t.t_sign(T, {a, c}) == t.t_sign_at(T, 1));
                CHECK(t.t_sign(T, {b, c}) == t.t_sign_at(T, 0));
            }
    CHECK_THROWS_AS(t.t_sign({0, 1, 2}, {3, 4}), PreconditionError);
}

TEST_CASE("weights take values in {-2, 0, 2} and decide edges") {
    Tournament t = Tournament::lazy(2, 8, 5);
    int edges = 0;
    for (int a = 0; a < 8; a++)
        for (int b = a + 1; b < 8; b++)
            for (int c = b + 1; c < 8; c++) {
                std::vector<int> R{a, b, c};
                bool all_zero = true;
                // S runs over the (r-2)-subsets, single vertices here
                for (int keep = 0; keep < 3; keep++) {
                    std::vector<int> S{R[static_cast<size_t>(keep)]};
                    int w = t.r_weight(R, S);
                    CHECK((w == -2 || w == 0 || w == 2));
                    all_zero &= w == 0;
                }
                CHECK(t.is_edge(R) == all_zero);
                edges += t.is_edge(R);
            }
    // s = 2: R = {a,b,c} is an edge iff its orientation is cyclic, 2 of the 8
    // patterns, so the count sits near C(8,3)/4 = 14
    CHECK(edges >= 3);
    CHECK(edges <= 35);

    Hypergraph g = build_g(t);
    CHECK(g.uniformity() == 3);
    CHECK(g.vertex_count() == 8);
    CHECK(g.edge_count() == edges);
}

TEST_CASE("copy probability of tight cycles, both routes") {
    Hypergraph c63 = tight_cycle(3, 6);
    CopyProbability exact = copy_probability_exact(c63);
    CHECK(exact.consistent);
    CHECK(exact.variables == 12);
    CHECK(exact.rank == 11);
    CHECK(exact.probability == Rat::pow2(-11));

    CopyProbability by_count = copy_probability_exhaustive(c63);
    CHECK(by_count.consistent);
    CHECK(by_count.probability == exact.probability);
    // exactly 2 of the 4096 orientations of the 12 relevant pairs work
    CHECK(by_count.probability * Rat::pow2(12) == Rat(2));
}

TEST_CASE("copy probability rank formula across sizes") {
    for (auto [r, ell] : std::vector<std::pair<int, int>>{
             {3, 6}, {3, 9}, {3, 12}, {5, 10}, {5, 15}}) {
        CopyProbability cp = copy_probability_exact(tight_cycle(r, ell));
        CHECK(cp.consistent);
        CHECK(cp.rank == (r - 1) * ell - 1);
        CHECK(cp.probability == Rat::pow2(1 + (1 - r) * ell));
    }
}

TEST_CASE("copy probability of single and overlapping edges") {
    for (int r = 3; r <= 7; r++) {
        CopyProbability cp = copy_probability_exact(single_edge(r));
        CHECK(cp.consistent);
        CHECK(cp.probability == Rat::pow2(1 - r));
    }
    for (int r = 3; r <= 5; r++) {
        CopyProbability cp = copy_probability_exact(two_edges_sharing(r));
        CHECK(cp.consistent);
        CHECK(cp.probability == Rat::pow2(2 * (1 - r)));
    }
}

TEST_CASE("exact and exhaustive routes agree on random instances") {
    Rng rng(909);
    for (int inst = 0; inst < 25; inst++) {
        int v = 4 + static_cast<int>(rng.below(3));
        int want = 1 + static_cast<int>(rng.below(3));
        std::vector<std::vector<int>> edges;
        for (int t = 0; t < 20 && static_cast<int>(edges.size()) < want; t++) {
            std::vector<int> e;
            while (static_cast<int>(e.size()) < 3) {
                int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
                bool dup = false;
                for (int x : e) dup |= x == u;
                if (!dup) e.push_back(u);
            }
            std::sort(e.begin(), e.end());
            bool seen = false;
            for (const auto& f : edges) seen |= f == e;
            if (!seen) edges.push_back(std::move(e));
        }
        Hypergraph h(3, v, std::move(edges));
        CopyProbability a = copy_probability_exact(h);
        CopyProbability b = copy_probability_exhaustive(h);
        CHECK(a.consistent == b.consistent);
        CHECK(a.probability == b.probability);
    }
}

TEST_CASE("empty hypergraphs land with probability one") {
    CopyProbability cp = copy_probability_exact(empty_hypergraph(3, 5));
    CHECK(cp.consistent);
    CHECK(cp.probability == Rat(1));
}

TEST_CASE("budgets and preconditions") {
    CHECK_THROWS_AS(copy_probability_exact(complete_graph(3)), PreconditionError);  // r = 2
    // 24 relevant pairs exceed the exhaustive cap of 20
    CHECK_THROWS_AS(copy_probability_exhaustive(tight_cycle(3, 12)), BudgetError);
    CHECK_THROWS_AS(mc_density(tight_cycle(3, 6), 5, 10, 1), PreconditionError);  // n < v
    CHECK_THROWS_AS(mc_density(tight_cycle(3, 6), 20, 0, 1), PreconditionError);
}

TEST_CASE("monte carlo is deterministic and seed-sensitive") {
    Hypergraph e3 = single_edge(3);
    McDensity a = mc_density(e3, 30, 4000, 17);
    McDensity b = mc_density(e3, 30, 4000, 17);
    CHECK(a.estimate == b.estimate);
    CHECK(a.hits == b.hits);
    CHECK(a.samples == 4000);
    McDensity c = mc_density(e3, 30, 4000, 18);
    CHECK(a.hits != c.hits);  // astronomically unlikely to tie

    // a single edge lands with probability 2^{1-r} = 1/4
    CHECK(a.estimate == doctest::Approx(0.25).epsilon(0.1));
    CHECK(a.ci95_lo <= a.estimate);
    CHECK(a.estimate <= a.ci95_hi);
    CHECK(a.stderr_value > 0.0);
    CHECK(a.estimate == static_cast<double>(a.hits) / 4000.0);
}

TEST_CASE("neighboring seeds yield unrelated streams") {
    // the substream combiner must not alias seed bits against counter bits
    Hypergraph e3 = single_edge(3);
    McDensity s1 = mc_density(e3, 30, 4000, 1);
    McDensity s3 = mc_density(e3, 30, 4000, 3);
    CHECK(s1.hits != s3.hits);
}
