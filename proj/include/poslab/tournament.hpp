#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poslab/hypergraph.hpp"
#include "poslab/rational.hpp"

namespace poslab {

// Orientation of every s-subset of [n]: the increasing arrangement of a
// subset T carries sign sigma(T); other arrangements get sigma(T) times the
// permutation parity. Signs are either an explicit table indexed by colex
// rank or a pure function of (seed, rank), so huge n costs no memory.
class Tournament {
public:
    static Tournament lazy(int s, int n, std::uint64_t seed);
    static Tournament from_signs(int s, int n, std::vector<std::int8_t> signs);

    int sub_uniformity() const { return s_; }
    int vertex_count() const { return n_; }

    // sigma of the increasing arrangement; subset must be sorted, distinct.
    int sigma(const std::vector<int>& subset) const;

    // Sign of the arrangement (T minus its pos-th element, that element last).
    int t_sign_at(const std::vector<int>& t, int removed_pos) const;
    // Same, with S given explicitly as the (s-1)-subset of T.
    int t_sign(const std::vector<int>& t, const std::vector<int>& s) const;

    // Sum of the two T-signs of S within R; in {-2, 0, 2}.
    int r_weight(const std::vector<int>& r_set, const std::vector<int>& s) const;

    // R is an edge of G(T) iff every (r-2)-subset has weight zero.
    bool is_edge(const std::vector<int>& r_set) const;

    std::uint64_t colex_rank(const std::vector<int>& subset) const;

private:
    Tournament(int s, int n, std::uint64_t seed, std::vector<std::int8_t> signs, bool lazy);
    int s_;
    int n_;
    std::uint64_t seed_;
    bool lazy_;
    std::vector<std::int8_t> signs_;
    std::vector<std::vector<std::uint64_t>> binom_;
};

// Materialized G(T): all r-subsets passing is_edge. C(n,r) capped.
Hypergraph build_g(const Tournament& t);

Tournament sample_tournament(int s, int n, std::uint64_t seed);

// Affine system over F_2 tracking "the two T-signs of S inside R are
// opposite" for every edge R and every (r-2)-subset S.
class Gf2System {
public:
    explicit Gf2System(int variables);
    void add_pair_constraint(int a, int b, int rhs);
    struct Elimination {
        bool consistent;
        int rank;
    };
    Elimination eliminate() const;
    int variables() const { return vars_; }
    int rows() const { return static_cast<int>(rows_.size()); }

private:
    int vars_;
    std::size_t blocks_;
    std::vector<std::vector<std::uint64_t>> rows_;  // coefficient bits, rhs at bit index vars_
};

struct CopyProbability {
    bool consistent;
    int rank;       // -1 when inconsistent or not applicable
    int variables;  // relevant (r-1)-subsets
    Rat probability;
};

// Exact probability that every edge of h lands in G(T) for a uniform random
// tournament on the labelled vertex set of h: 2^{-rank}, or 0 if the parity
// constraints contradict.
CopyProbability copy_probability_exact(const Hypergraph& h);

// Independent route: enumerate all 2^m orientations of the m relevant
// (r-1)-subsets and count the valid ones. m <= 20.
CopyProbability copy_probability_exhaustive(const Hypergraph& h);

struct McDensity {
    double estimate;
    double stderr_value;
    double ci95_lo;
    double ci95_hi;
    std::uint64_t hits;
    std::uint64_t samples;
};

// Labelled-copy probability estimate: per sample, a fresh random tournament
// on [n] and a uniform injective map V(h) -> [n]; Bernoulli statistics.
// Deterministic for a fixed seed, independent of thread count.
McDensity mc_density(const Hypergraph& h, int n, std::uint64_t samples, std::uint64_t seed);

}  // namespace poslab
