#include "poslab/tournament.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "poslab/detail/parallel.hpp"
#include "poslab/errors.hpp"
#include "poslab/rng.hpp"

namespace poslab {

namespace {

std::vector<std::vector<std::uint64_t>> binomial_table(int n, int s) {
    std::vector<std::vector<std::uint64_t>> c(static_cast<size_t>(n) + 1,
                                              std::vector<std::uint64_t>(static_cast<size_t>(s) + 1, 0));
    for (int i = 0; i <= n; i++) {
        c[static_cast<size_t>(i)][0] = 1;
        for (int j = 1; j <= std::min(i, s); j++)
            c[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                c[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] +
                c[static_cast<size_t>(i) - 1][static_cast<size_t>(j)];
    }
    return c;
}

}  // namespace

Tournament::Tournament(int s, int n, std::uint64_t seed, std::vector<std::int8_t> signs,
                       bool lazy)
    : s_(s), n_(n), seed_(seed), lazy_(lazy), signs_(std::move(signs)),
      binom_(binomial_table(n, s)) {
    if (s_ < 1) throw PreconditionError("Tournament: sub-uniformity must be >= 1");
    if (n_ < s_) throw PreconditionError("Tournament: need n >= s");
}

Tournament Tournament::lazy(int s, int n, std::uint64_t seed) {
    return Tournament(s, n, seed, {}, true);
}

Tournament Tournament::from_signs(int s, int n, std::vector<std::int8_t> signs) {
    Tournament t(s, n, 0, std::move(signs), false);
    std::uint64_t expect = t.binom_[static_cast<size_t>(n)][static_cast<size_t>(s)];
    if (t.signs_.size() != expect)
        throw PreconditionError("Tournament: sign table size != C(n,s)");
    for (auto v : t.signs_)
        if (v != 1 && v != -1) throw PreconditionError("Tournament: signs must be +-1");
    return t;
}

std::uint64_t Tournament::colex_rank(const std::vector<int>& subset) const {
    if (static_cast<int>(subset.size()) != s_)
        throw PreconditionError("Tournament: subset size != s");
    std::uint64_t rank = 0;
    for (int i = 0; i < s_; i++) {
        int a = subset[static_cast<size_t>(i)];
        if (a < 0 || a >= n_ || (i > 0 && a <= subset[static_cast<size_t>(i) - 1]))
            throw PreconditionError("Tournament: subset must be sorted distinct in range");
        rank += binom_[static_cast<size_t>(a)][static_cast<size_t>(i) + 1];
    }
    return rank;
}

int Tournament::sigma(const std::vector<int>& subset) const {
    std::uint64_t rank = colex_rank(subset);
    if (lazy_) return (mix64(seed_, rank) >> 63) ? 1 : -1;
    return signs_[rank];
}

int Tournament::t_sign_at(const std::vector<int>& t, int removed_pos) const {
    // moving element removed_pos to the back costs s-1-pos transpositions
    int parity = (s_ - 1 - removed_pos) & 1;
    return sigma(t) * (parity ? -1 : 1);
}

int Tournament::t_sign(const std::vector<int>& t, const std::vector<int>& s) const {
    if (static_cast<int>(s.size()) != s_ - 1)
        throw PreconditionError("t_sign: S must have s-1 elements");
    int removed_pos = -1;
    std::size_t si = 0;
    for (int i = 0; i < s_; i++) {
        if (si < s.size() && s[si] == t[static_cast<size_t>(i)]) {
            si++;
        } else if (removed_pos == -1) {
            removed_pos = i;
        } else {
            throw PreconditionError("t_sign: S is not contained in T");
        }
    }
    if (si != s.size() || removed_pos == -1)
        throw PreconditionError("t_sign: S is not contained in T");
    return t_sign_at(t, removed_pos);
}

int Tournament::r_weight(const std::vector<int>& r_set, const std::vector<int>& s) const {
    if (r_set.size() != s.size() + 2)
        throw PreconditionError("r_weight: S must omit exactly two elements of R");
    std::vector<int> extra;
    std::size_t si = 0;
    for (int x : r_set) {
        if (si < s.size() && s[si] == x)
            si++;
        else
            extra.push_back(x);
    }
    if (si != s.size() || extra.size() != 2)
        throw PreconditionError("r_weight: S is not contained in R");
    int total = 0;
    for (int x : extra) {
        std::vector<int> t = s;
        t.insert(std::upper_bound(t.begin(), t.end(), x), x);
        total += t_sign(t, s);
    }
    return total;
}

bool Tournament::is_edge(const std::vector<int>& r_set) const {
    const int r = static_cast<int>(r_set.size());
    if (r != s_ + 1) throw PreconditionError("is_edge: |R| must be s+1");
    std::vector<int> sorted = r_set;
    std::sort(sorted.begin(), sorted.end());
    // each (r-2)-subset = drop two positions
    for (int i = 0; i < r; i++)
        for (int j = i + 1; j < r; j++) {
            std::vector<int> s;
            for (int k = 0; k < r; k++)
                if (k != i && k != j) s.push_back(sorted[static_cast<size_t>(k)]);
            if (r_weight(sorted, s) != 0) return false;
        }
    return true;
}

Hypergraph build_g(const Tournament& t) {
    const int n = t.vertex_count();
    const int r = t.sub_uniformity() + 1;
    if (n > 60) throw BudgetError("build_g: n above 60");
    std::vector<std::vector<int>> edges;
    std::vector<int> subset(static_cast<size_t>(r));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == r) {
            if (t.is_edge(subset)) edges.push_back(subset);
            return;
        }
        for (int x = start; x < n; x++) {
            subset[static_cast<size_t>(depth)] = x;
            rec(x + 1, depth + 1);
        }
    };
    rec(0, 0);
    return Hypergraph(r, n, std::move(edges));
}

Tournament sample_tournament(int s, int n, std::uint64_t seed) {
    return Tournament::lazy(s, n, seed);
}

Gf2System::Gf2System(int variables)
    : vars_(variables), blocks_(static_cast<std::size_t>(variables) / 64 + 1) {
    if (variables < 0) throw PreconditionError("Gf2System: negative variable count");
}

void Gf2System::add_pair_constraint(int a, int b, int rhs) {
    if (a < 0 || a >= vars_ || b < 0 || b >= vars_ || a == b)
        throw PreconditionError("Gf2System: bad variable pair");
    std::vector<std::uint64_t> row(blocks_, 0);
    row[static_cast<size_t>(a) / 64] ^= std::uint64_t{1} << (a % 64);
    row[static_cast<size_t>(b) / 64] ^= std::uint64_t{1} << (b % 64);
    if (rhs & 1) row[static_cast<size_t>(vars_) / 64] ^= std::uint64_t{1} << (vars_ % 64);
    rows_.push_back(std::move(row));
}

Gf2System::Elimination Gf2System::eliminate() const {
    std::vector<std::vector<std::uint64_t>> basis;  // reduced rows, by leading bit
    std::vector<int> leads;
    for (auto row : rows_) {
        for (std::size_t i = 0; i < basis.size(); i++) {
            int lead = leads[i];
            if (row[static_cast<size_t>(lead) / 64] >> (lead % 64) & 1)
                for (std::size_t b = 0; b < blocks_; b++) row[b] ^= basis[i][b];
        }
        int lead = -1;
        for (int v = 0; v < vars_ && lead == -1; v++)
            if (row[static_cast<size_t>(v) / 64] >> (v % 64) & 1) lead = v;
        if (lead == -1) {
            if (row[static_cast<size_t>(vars_) / 64] >> (vars_ % 64) & 1)
                return Elimination{false, -1};
            continue;  // redundant row
        }
        basis.push_back(std::move(row));
        leads.push_back(lead);
    }
    return Elimination{true, static_cast<int>(basis.size())};
}

namespace {

// Relevant (r-1)-subsets (those inside an edge) with dense variable ids, plus
// the parity rows coupling the two intermediate subsets of every (R, S) pair.
struct ParitySystem {
    std::map<std::vector<int>, int> var_of;
    Gf2System system{0};
};

ParitySystem build_parity_system(const Hypergraph& h) {
    const int r = h.uniformity();
    if (r < 3)
        throw PreconditionError("copy probability: uniformity must be >= 3");
    ParitySystem ps;
    for (const auto& edge : h.edges()) {
        for (int drop = 0; drop < r; drop++) {
            std::vector<int> t;
            for (int i = 0; i < r; i++)
                if (i != drop) t.push_back(edge[static_cast<size_t>(i)]);
            ps.var_of.emplace(std::move(t), 0);
        }
    }
    if (ps.var_of.size() > 10000)
        throw BudgetError("copy probability: more than 10^4 relevant subsets");
    int next = 0;
    for (auto& [subset, id] : ps.var_of) id = next++;

    ps.system = Gf2System(next);
    for (const auto& edge : h.edges()) {
        for (int i = 0; i < r; i++)
            for (int j = i + 1; j < r; j++) {
                // S omits positions i and j; T puts back edge[i], T' edge[j]
                std::vector<int> t1, t2;
                for (int k = 0; k < r; k++) {
                    if (k != j) t1.push_back(edge[static_cast<size_t>(k)]);
                    if (k != i) t2.push_back(edge[static_cast<size_t>(k)]);
                }
                // positions of the put-back elements within sorted T
                int pos1 = i;      // edge[i] inside edge-minus-j keeps index i
                int pos2 = j - 1;  // edge[j] inside edge-minus-i shifts left once
                int rhs = 1 ^ (pos1 & 1) ^ (pos2 & 1);
                ps.system.add_pair_constraint(ps.var_of.at(t1), ps.var_of.at(t2), rhs);
            }
    }
    return ps;
}

}  // namespace

CopyProbability copy_probability_exact(const Hypergraph& h) {
    if (h.edge_count() == 0) return CopyProbability{true, 0, 0, Rat(1)};
    ParitySystem ps = build_parity_system(h);
    auto elim = ps.system.eliminate();
    if (!elim.consistent)
        return CopyProbability{false, -1, ps.system.variables(), Rat(0)};
    return CopyProbability{true, elim.rank, ps.system.variables(),
                           Rat::pow2(-elim.rank)};
}

CopyProbability copy_probability_exhaustive(const Hypergraph& h) {
    if (h.edge_count() == 0) return CopyProbability{true, 0, 0, Rat(1)};
    const int r = h.uniformity();
    if (r < 3) throw PreconditionError("copy probability: uniformity must be >= 3");

    std::map<std::vector<int>, int> var_of;
    for (const auto& edge : h.edges())
        for (int drop = 0; drop < r; drop++) {
            std::vector<int> t;
            for (int i = 0; i < r; i++)
                if (i != drop) t.push_back(edge[static_cast<size_t>(i)]);
            var_of.emplace(std::move(t), 0);
        }
    const int m = static_cast<int>(var_of.size());
    if (m > 20) throw BudgetError("copy_probability_exhaustive: more than 20 relevant subsets");
    int next = 0;
    for (auto& [subset, id] : var_of) id = next++;

    // per edge and per dropped pair: variable ids and the parity offsets
    struct Check { int v1, p1, v2, p2; };
    std::vector<Check> checks;
    for (const auto& edge : h.edges())
        for (int i = 0; i < r; i++)
            for (int j = i + 1; j < r; j++) {
                std::vector<int> t1, t2;
                for (int k = 0; k < r; k++) {
                    if (k != j) t1.push_back(edge[static_cast<size_t>(k)]);
                    if (k != i) t2.push_back(edge[static_cast<size_t>(k)]);
                }
                checks.push_back({var_of.at(t1), (r - 1 - 1 - i) & 1,
                                  var_of.at(t2), (r - 1 - 1 - (j - 1)) & 1});
            }

    std::uint64_t count = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); bits++) {
        bool ok = true;
        for (const auto& c : checks) {
            int s1 = static_cast<int>(bits >> c.v1 & 1) ^ c.p1;
            int s2 = static_cast<int>(bits >> c.v2 & 1) ^ c.p2;
            if (s1 == s2) { ok = false; break; }  // T-signs must be opposite
        }
        if (ok) count++;
    }
    CopyProbability out;
    out.variables = m;
    out.consistent = count > 0;
    out.rank = -1;
    if (count > 0 && (count & (count - 1)) == 0) {
        int log = 0;
        while ((std::uint64_t{1} << log) != count) log++;
        out.rank = m - log;
    }
    out.probability = Rat(static_cast<long>(count)) * Rat::pow2(-m);
    return out;
}

McDensity mc_density(const Hypergraph& h, int n, std::uint64_t samples, std::uint64_t seed) {
    if (n < h.vertex_count())
        throw PreconditionError("mc_density: n must be at least v(H)");
    if (samples < 1) throw PreconditionError("mc_density: need at least one sample");
    const int v = h.vertex_count();
    const int s = h.uniformity() - 1;
    if (h.uniformity() < 3)
        throw PreconditionError("mc_density: uniformity must be >= 3");

    auto run_chunk = [&](std::uint64_t begin, std::uint64_t end) -> std::uint64_t {
        std::uint64_t hits = 0;
        std::vector<int> image(static_cast<size_t>(v));
        std::vector<char> used(static_cast<size_t>(n));
        for (std::uint64_t i = begin; i < end; i++) {
            std::uint64_t key = mix64(seed, i);
            Tournament t = Tournament::lazy(s, n, key);
            Rng rng(mix64(key, 0x696e6a)); // injection substream
            std::fill(used.begin(), used.end(), 0);
            for (int u = 0; u < v; u++) {
                std::uint64_t x;
                do {
                    x = rng.below(static_cast<std::uint64_t>(n));
                } while (used[static_cast<size_t>(x)]);
                used[static_cast<size_t>(x)] = 1;
                image[static_cast<size_t>(u)] = static_cast<int>(x);
            }
            bool all = true;
            for (const auto& e : h.edges()) {
                std::vector<int> mapped;
                mapped.reserve(e.size());
                for (int u : e) mapped.push_back(image[static_cast<size_t>(u)]);
                std::sort(mapped.begin(), mapped.end());
                if (!t.is_edge(mapped)) { all = false; break; }
            }
            if (all) hits++;
        }
        return hits;
    };

    const int workers = detail::worker_count();
    std::uint64_t hits = 0;
    if (workers <= 1 || samples < 1000) {
        hits = run_chunk(0, samples);
    } else {
        std::vector<std::uint64_t> partial(static_cast<size_t>(workers), 0);
        std::vector<std::thread> threads;
        std::uint64_t chunk = (samples + static_cast<std::uint64_t>(workers) - 1) /
                              static_cast<std::uint64_t>(workers);
        for (int w = 0; w < workers; w++) {
            std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
            std::uint64_t end = std::min(samples, begin + chunk);
            if (begin >= end) break;
            threads.emplace_back([&partial, w, begin, end, &run_chunk]() {
                partial[static_cast<size_t>(w)] = run_chunk(begin, end);
            });
        }
        for (auto& t : threads) t.join();
        for (auto p : partial) hits += p;
    }

    McDensity out;
    out.hits = hits;
    out.samples = samples;
    out.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    out.stderr_value =
        std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
    out.ci95_lo = out.estimate - 1.96 * out.stderr_value;
    out.ci95_hi = out.estimate + 1.96 * out.stderr_value;
    return out;
}

}  // namespace poslab
