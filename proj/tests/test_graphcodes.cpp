#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "poslab/errors.hpp"
#include "poslab/graphcodes.hpp"
#include "poslab/hypergraph.hpp"
#include "poslab/kernel.hpp"
#include "poslab/rng.hpp"

using namespace poslab;

TEST_CASE("pair bits use colex order") {
    CHECK(pair_bit_index(0, 1) == 0);
    CHECK(pair_bit_index(0, 2) == 1);
    CHECK(pair_bit_index(1, 2) == 2);
    CHECK(pair_bit_index(0, 3) == 3);
    CHECK(pair_bit_index(2, 3) == 5);
    CHECK(pair_bit_index(3, 2) == 5);  // order of arguments is free
    CHECK_THROWS_AS(pair_bit_index(2, 2), PreconditionError);
}

TEST_CASE("graph vector round trips") {
    Hypergraph k3 = complete_graph(3);
    GraphVector x = graph_vector_of(k3);
    CHECK(x.n == 3);
    CHECK(x.bits == 7);
    CHECK(graph_of_vector(x) == k3);
    CHECK(complete_graph_vector(4).bits == 63);

    // triangle on {0,1,2} inside K_4: bits 0,1,2 -> "70" in little-endian nibbles
    GraphVector t{4, 7};
    CHECK(graph_vector_to_hex(t) == "n=4:70");
    CHECK(graph_vector_from_hex("n=4:70") == t);
    CHECK(graph_vector_from_hex(graph_vector_to_hex(GraphVector{5, 0x2ab})) ==
          GraphVector{5, 0x2ab});

    CHECK_THROWS_AS(graph_vector_from_hex("4:70"), IoError);
    CHECK_THROWS_AS(graph_vector_from_hex("n=4:7"), IoError);     // too short
    CHECK_THROWS_AS(graph_vector_from_hex("n=4:701"), IoError);   // too long
    CHECK_THROWS_AS(graph_vector_from_hex("n=4:g0"), IoError);    // bad digit
    CHECK_THROWS_AS(graph_vector_from_hex("n=3:f0"), IoError);    // stray bits past C(3,2)
    CHECK_THROWS_AS(graph_vector_of(tight_cycle(3, 4)), PreconditionError);
    CHECK_THROWS_AS(complete_graph_vector(12), PreconditionError);  // C(12,2) > 64
}

TEST_CASE("copy enumeration matches injection counts") {
    auto k3 = enumerate_copies(complete_graph(3), 4);
    CHECK(k3.size() == 4);
    auto p3 = enumerate_copies(path_graph(3), 4);
    CHECK(p3.size() == 12);
    CHECK(enumerate_copies(single_edge(2), 3).size() == 3);
    CHECK(enumerate_copies(cycle_graph(4), 4).size() == 3);

    // sorted, deduplicated, right weight
    for (size_t i = 0; i < p3.size(); i++) {
        CHECK(__builtin_popcountll(p3[i].bits) == 2);
        if (i) CHECK(p3[i - 1].bits < p3[i].bits);
    }

    CHECK(automorphism_count(complete_graph(3)) == 6);
    CHECK(automorphism_count(path_graph(3)) == 2);
    CHECK(automorphism_count(cycle_graph(4)) == 8);
    CHECK(automorphism_count(star_graph(3)) == 6);
    CHECK(automorphism_count(complete_graph(4)) == 24);
}

TEST_CASE("transform identities on random tables") {
    Rng rng(31337);
    const int n = 4;
    const size_t size = 64;
    for (int trial = 0; trial < 20; trial++) {
        std::vector<double> f(size), g(size);
        for (auto& v : f) v = static_cast<double>(static_cast<long>(rng.below(9)) - 4);
        for (auto& v : g) v = static_cast<double>(static_cast<long>(rng.below(9)) - 4);

        FourierTable fh = wht(n, f);
        FourierTable gh = wht(n, g);

        // Parseval: sum of squared coefficients = mean square of the table
        double lhs = 0, rhs = 0;
        for (size_t i = 0; i < size; i++) {
            lhs += fh.values[i] * fh.values[i];
            rhs += f[i] * f[i];
        }
        rhs /= static_cast<double>(size);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

        // averaged convolution transforms to the pointwise product
        std::vector<double> conv(size, 0.0);
        for (size_t x = 0; x < size; x++) {
            for (size_t y = 0; y < size; y++)
                conv[x] += f[y] * g[x ^ y];
            conv[x] /= static_cast<double>(size);
        }
        FourierTable ch = wht(n, conv);
        for (size_t x = 0; x < size; x++)
            CHECK(ch.values[x] == doctest::Approx(fh.values[x] * gh.values[x]).epsilon(1e-9));

        // unnormalized butterfly applied twice scales by the size
        std::vector<double> twice = f;
        wht_unnormalized(twice);
        wht_unnormalized(twice);
        for (size_t i = 0; i < size; i++)
            CHECK(twice[i] == doctest::Approx(f[i] * static_cast<double>(size)));
    }

    // integer butterfly inverts the same way
    std::vector<std::int64_t> fi(8);
    for (size_t i = 0; i < 8; i++) fi[i] = static_cast<std::int64_t>(i * i) - 20;
    std::vector<std::int64_t> save = fi;
    wht_unnormalized(fi);
    wht_unnormalized(fi);
    for (size_t i = 0; i < 8; i++) CHECK(fi[i] == save[i] * 8);

    std::vector<double> odd(3);
    CHECK_THROWS_AS(wht_unnormalized(odd), PreconditionError);
}

TEST_CASE("exact spectra of copy indicators") {
    auto copies = enumerate_copies(complete_graph(3), 4);
    std::vector<std::int64_t> spec = indicator_spectrum(4, copies);
    REQUIRE(spec.size() == 64);
    // zero character counts the copies
    CHECK(spec[0] == 4);
    // complete graph meets every triangle in 3 edges
    CHECK(spec[63] == -4);
    // Parseval in exact integers: sum of entries squared = |B| * 2^m
    std::int64_t power = 0;
    for (auto v : spec) power += v * v;
    CHECK(power == 4 * 64);

    // entries match the per-point exact rational route
    for (std::uint64_t bits : {std::uint64_t{0}, std::uint64_t{7}, std::uint64_t{63}}) {
        Rat c = fourier_coefficient_exact(copies, GraphVector{4, bits});
        CHECK(c * Rat::pow2(6) == Rat(spec[bits]));
    }
}

TEST_CASE("complete-graph coefficient for triangle codes") {
    for (int n = 4; n <= 6; n++) {
        auto copies = enumerate_copies(complete_graph(3), n);
        long want = static_cast<long>(n) * (n - 1) * (n - 2) / 6;
        CHECK(copies.size() == static_cast<size_t>(want));
        Rat c = fourier_coefficient_exact(copies, complete_graph_vector(n));
        CHECK(c == Rat(-want) / Rat::pow2(n * (n - 1) / 2));
    }
}

TEST_CASE("code density bounds, frozen values") {
    CodeBound k3 = code_density_bound(complete_graph(3), 4);
    CHECK(k3.copy_count == 4);
    CHECK(k3.beta == Rat(1, 16));
    CHECK(k3.gamma == Rat(-1, 16));
    CHECK(k3.bound == Rat(1));  // vacuous at this size, by design
    CHECK(k3.argmin == GraphVector{4, 7});  // lowest-index triangle

    CodeBound p3 = code_density_bound(path_graph(3), 4);
    CHECK(p3.copy_count == 12);
    CHECK(p3.beta == Rat(3, 16));
    CHECK(p3.gamma == Rat(-1, 16));
    CHECK(p3.bound == Rat(1, 3));
    CHECK(p3.argmin == GraphVector{4, 12});  // a perfect matching

    // gamma is never positive and the reported bound satisfies bound*beta = -gamma
    for (int n = 4; n <= 6; n++) {
        CodeBound b = code_density_bound(path_graph(3), n);
        CHECK(b.gamma.sign() <= 0);
        CHECK(b.bound * b.beta == -b.gamma);
    }
}

TEST_CASE("signed kernels from graph vectors") {
    StepKernel w = signed_kernel_from_graph_vector(GraphVector{4, 7});
    CHECK(w.uniformity() == 2);
    CHECK(w.parts() == 4);
    CHECK(w.measures() == std::vector<Rat>(4, Rat(1, 4)));
    CHECK(w.value({0, 1}) == Rat(-1));  // edge of the triangle
    CHECK(w.value({1, 2}) == Rat(-1));
    CHECK(w.value({0, 3}) == Rat(1));   // off the triangle
    CHECK(w.value({0, 0}) == Rat(0));   // diagonal blocks are zero

    // the complete-vector kernel realizes the designed negative densities
    for (int n = 4; n <= 6; n++) {
        StepKernel all = signed_kernel_from_graph_vector(complete_graph_vector(n));
        Rat d = density(complete_graph(3), all);
        // ordered distinct triples carry (-1)^3, everything else 0
        long nn = n;
        CHECK(d == Rat(-nn * (nn - 1) * (nn - 2)) / Rat(nn * nn * nn));
        CHECK(d.sign() < 0);
    }
}

TEST_CASE("positivity refutations fire only past the strict gate") {
    // positive pattern: no x on K_4 beats the threshold
    for (std::uint64_t bits = 0; bits < 64; bits++)
        CHECK_FALSE(
            positivity_refutation_from_fourier(path_graph(3), 4, GraphVector{4, bits})
                .has_value());

    // single edge pattern: coefficient at the complete vector is exactly -beta,
    // threshold is -8 beta / n; strict inequality needs n > 8
    CHECK_FALSE(positivity_refutation_from_fourier(single_edge(2), 8, complete_graph_vector(8))
                    .has_value());  // exactly met, not strictly

    auto hit = positivity_refutation_from_fourier(single_edge(2), 9, complete_graph_vector(9));
    REQUIRE(hit.has_value());
    Rat beta = Rat(36) / Rat::pow2(36);
    CHECK(hit->coefficient == -beta);
    CHECK(hit->threshold == Rat(-8) * beta / Rat(9));
    CHECK(hit->kernel.parts() == 9);
    CHECK(hit->density_value == Rat(-8, 9));
    CHECK(hit->density_value == density(single_edge(2), hit->kernel));
}

TEST_CASE("expectation of a coefficient at kernel-driven random vectors") {
    // all off-diagonal weights -1 on three classes
    std::vector<std::vector<Rat>> w3(3, std::vector<Rat>(3, Rat(-1)));
    for (int i = 0; i < 3; i++) w3[static_cast<size_t>(i)][static_cast<size_t>(i)] = Rat(0);

    ExpectedFourier e1 = expected_fourier_from_kernel(complete_graph(3), w3, 1);
    CHECK(e1.copy_count == 1);
    CHECK(e1.weight_sum == Rat(-1));
    CHECK(e1.beta == Rat(1, 8));
    CHECK(e1.expectation == -e1.beta);

    ExpectedFourier e2 = expected_fourier_from_kernel(complete_graph(3), w3, 2);
    CHECK(e2.copy_count == 20);
    CHECK(e2.weight_sum == Rat(-8));  // only class-rainbow triangles survive
    ExpectedFourier e3 = expected_fourier_from_kernel(complete_graph(3), w3, 3);
    CHECK(e3.copy_count == 84);
    CHECK(e3.weight_sum == Rat(-27));

    // the expectation-to-beta ratio approaches the density in the matching
    // step kernel as the blow-up factor grows
    StepKernel step = StepKernel::from_class_values(
        2, std::vector<Rat>(3, Rat(1, 3)),
        {Rat(0), Rat(-1), Rat(-1), Rat(0), Rat(-1), Rat(0)});
    Rat t = density(complete_graph(3), step);
    CHECK(t == Rat(-2, 9));
    Rat r1 = e1.expectation / e1.beta;
    Rat r2 = e2.expectation / e2.beta;
    Rat r3 = e3.expectation / e3.beta;
    CHECK(r1 == Rat(-1));
    CHECK(r2 == Rat(-2, 5));
    CHECK(r3 == Rat(-9, 28));
    CHECK((r1 - t).abs() > (r2 - t).abs());
    CHECK((r2 - t).abs() > (r3 - t).abs());

    // zero weights mean a uniform x, whose nonzero characters vanish
    std::vector<std::vector<Rat>> zero(2, std::vector<Rat>(2, Rat(0)));
    CHECK(expected_fourier_from_kernel(single_edge(2), zero, 1).expectation == Rat(0));

    std::vector<std::vector<Rat>> bad = {{Rat(1)}};
    CHECK_THROWS_AS(expected_fourier_from_kernel(single_edge(2), bad, 1), PreconditionError);
}

TEST_CASE("maximum codes, both searches") {
    MaxCode small = bruteforce_max_code(single_edge(2), 2);
    CHECK(small.max_size == 1);
    CHECK(small.total == 2);
    CHECK(small.density == Rat(1, 2));

    MaxCode k33 = bruteforce_max_code(complete_graph(3), 3);
    CHECK(k33.max_size == 4);
    CHECK(k33.total == 8);
    CHECK(k33.density == Rat(1, 2));
    CHECK(k33.example.size() == 4);
    CHECK(code_is_valid(k33.example, enumerate_copies(complete_graph(3), 3)));

    // independent exhaustive route agrees wherever its budget allows
    for (auto [h, n] : std::vector<std::pair<Hypergraph, int>>{
             {single_edge(2), 2},
             {single_edge(2), 3},
             {complete_graph(3), 3},
             {complete_graph(3), 4}}) {
        MaxCode a = bruteforce_max_code(h, n);
        MaxCode b = max_code_exhaustive(h, n);
        CHECK(a.max_size == b.max_size);
        CHECK(a.total == b.total);
        CHECK(code_is_valid(a.example, enumerate_copies(h, n)));
        CHECK(code_is_valid(b.example, enumerate_copies(h, n)));
    }

    CHECK(bruteforce_max_code(complete_graph(3), 4).max_size == 32);

    // a pair differing by one copy is flagged
    auto copies = enumerate_copies(complete_graph(3), 3);
    std::vector<GraphVector> clash{GraphVector{3, 0}, GraphVector{3, 7}};
    CHECK_FALSE(code_is_valid(clash, copies));
    CHECK(code_is_valid({GraphVector{3, 0}, GraphVector{3, 1}}, copies));

    // the path pattern spans too wide a space for the per-coset exhaustive cap
    CHECK_THROWS_AS(max_code_exhaustive(path_graph(3), 4), BudgetError);
    CHECK_THROWS_AS(bruteforce_max_code(complete_graph(3), 6), BudgetError);  // 2^10 cap
}
