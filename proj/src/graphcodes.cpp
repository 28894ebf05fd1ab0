#include "poslab/graphcodes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "poslab/errors.hpp"

namespace poslab {

namespace {

int pair_count(int n) { return n * (n - 1) / 2; }

void check_vector_arity(int n) {
    if (n < 2) throw PreconditionError("GraphVector: need n >= 2");
    if (pair_count(n) > 64) throw PreconditionError("GraphVector: C(n,2) above 64 bits");
}

void check_spectrum_arity(int n) {
    check_vector_arity(n);
    if (pair_count(n) > 22) throw BudgetError("dense spectrum: C(n,2) above 22");
}

}  // namespace

int pair_bit_index(int i, int j) {
    if (i == j) throw PreconditionError("pair_bit_index: loop");
    if (i > j) std::swap(i, j);
    if (i < 0) throw PreconditionError("pair_bit_index: negative vertex");
    return j * (j - 1) / 2 + i;
}

GraphVector graph_vector_of(const Hypergraph& g) {
    if (g.uniformity() != 2) throw PreconditionError("graph_vector_of: graphs only");
    check_vector_arity(g.vertex_count());
    GraphVector x{g.vertex_count(), 0};
    for (const auto& e : g.edges())
        x.bits |= std::uint64_t{1} << pair_bit_index(e[0], e[1]);
    return x;
}

Hypergraph graph_of_vector(const GraphVector& x) {
    check_vector_arity(x.n);
    std::vector<std::vector<int>> edges;
    for (int j = 1; j < x.n; j++)
        for (int i = 0; i < j; i++)
            if (x.bits >> pair_bit_index(i, j) & 1) edges.push_back({i, j});
    return Hypergraph(2, x.n, std::move(edges));
}

GraphVector complete_graph_vector(int n) {
    check_vector_arity(n);
    int m = pair_count(n);
    return GraphVector{n, m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1};
}

std::string graph_vector_to_hex(const GraphVector& x) {
    check_vector_arity(x.n);
    const int m = pair_count(x.n);
    const int nibbles = (m + 3) / 4;
    std::string out = "n=" + std::to_string(x.n) + ":";
    for (int t = 0; t < nibbles; t++) {
        int nib = static_cast<int>(x.bits >> (4 * t) & 0xf);
        out += "0123456789abcdef"[nib];
    }
    return out;
}

GraphVector graph_vector_from_hex(const std::string& text) {
    if (text.rfind("n=", 0) != 0) throw IoError("graph vector: want 'n=<n>:<hex>'");
    auto colon = text.find(':');
    if (colon == std::string::npos) throw IoError("graph vector: missing ':'");
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(text.substr(2, colon - 2), &used);
        if (used != colon - 2) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw IoError("graph vector: bad vertex count");
    }
    check_vector_arity(n);
    const int m = pair_count(n);
    const int nibbles = (m + 3) / 4;
    std::string hex = text.substr(colon + 1);
    if (static_cast<int>(hex.size()) != nibbles)
        throw IoError("graph vector: hex length != ceil(C(n,2)/4)");
    std::uint64_t bits = 0;
    for (int t = 0; t < nibbles; t++) {
        char c = hex[static_cast<size_t>(t)];
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else throw IoError("graph vector: bad hex digit");
        bits |= static_cast<std::uint64_t>(v) << (4 * t);
    }
    if (m < 64 && (bits >> m) != 0) throw IoError("graph vector: bits beyond C(n,2)");
    return GraphVector{n, bits};
}

std::vector<GraphVector> enumerate_copies(const Hypergraph& h, int n) {
    if (h.uniformity() != 2) throw PreconditionError("enumerate_copies: graphs only");
    if (h.vertex_count() > 8) throw BudgetError("enumerate_copies: pattern above 8 vertices");
    check_vector_arity(n);
    if (h.vertex_count() > n) throw PreconditionError("enumerate_copies: pattern larger than n");
    if (h.edge_count() == 0)
        throw PreconditionError("enumerate_copies: pattern needs at least one edge");

    const int v = h.vertex_count();
    std::set<std::uint64_t> seen;
    std::vector<int> image(static_cast<size_t>(v), -1);
    std::vector<char> used(static_cast<size_t>(n), 0);
    std::function<void(int)> rec = [&](int u) {
        if (u == v) {
            std::uint64_t bits = 0;
            for (const auto& e : h.edges())
                bits |= std::uint64_t{1} << pair_bit_index(image[static_cast<size_t>(e[0])],
                                                           image[static_cast<size_t>(e[1])]);
            seen.insert(bits);
            if (seen.size() > (1u << 22)) throw BudgetError("enumerate_copies: too many copies");
            return;
        }
        for (int x = 0; x < n; x++) {
            if (used[static_cast<size_t>(x)]) continue;
            used[static_cast<size_t>(x)] = 1;
            image[static_cast<size_t>(u)] = x;
            rec(u + 1);
            used[static_cast<size_t>(x)] = 0;
        }
    };
    rec(0);
    std::vector<GraphVector> out;
    out.reserve(seen.size());
    for (auto bits : seen) out.push_back(GraphVector{n, bits});
    return out;
}

std::uint64_t automorphism_count(const Hypergraph& h) {
    if (h.uniformity() != 2) throw PreconditionError("automorphism_count: graphs only");
    if (h.vertex_count() > 8) throw BudgetError("automorphism_count: above 8 vertices");
    std::vector<int> perm(static_cast<size_t>(h.vertex_count()));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t count = 0;
    do {
        bool ok = true;
        for (const auto& e : h.edges()) {
            std::vector<int> img{perm[static_cast<size_t>(e[0])], perm[static_cast<size_t>(e[1])]};
            std::sort(img.begin(), img.end());
            if (!std::binary_search(h.edges().begin(), h.edges().end(), img)) {
                ok = false;
                break;
            }
        }
        if (ok) count++;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

void wht_unnormalized(std::vector<double>& f) {
    const std::size_t size = f.size();
    if (size == 0 || (size & (size - 1)) != 0)
        throw PreconditionError("wht: table size must be a power of two");
    for (std::size_t h = 1; h < size; h <<= 1)
        for (std::size_t i = 0; i < size; i += h << 1)
            for (std::size_t j = i; j < i + h; j++) {
                double a = f[j], b = f[j + h];
                f[j] = a + b;
                f[j + h] = a - b;
            }
}

void wht_unnormalized(std::vector<std::int64_t>& f) {
    const std::size_t size = f.size();
    if (size == 0 || (size & (size - 1)) != 0)
        throw PreconditionError("wht: table size must be a power of two");
    for (std::size_t h = 1; h < size; h <<= 1)
        for (std::size_t i = 0; i < size; i += h << 1)
            for (std::size_t j = i; j < i + h; j++) {
                std::int64_t a = f[j], b = f[j + h];
                f[j] = a + b;
                f[j + h] = a - b;
            }
}

FourierTable wht(int n, const std::vector<double>& f) {
    check_spectrum_arity(n);
    const std::size_t size = std::size_t{1} << pair_count(n);
    if (f.size() != size) throw PreconditionError("wht: table size != 2^C(n,2)");
    FourierTable out{n, f};
    wht_unnormalized(out.values);
    const double scale = 1.0 / static_cast<double>(size);
    for (auto& v : out.values) v *= scale;
    return out;
}

Rat fourier_coefficient_exact(const std::vector<GraphVector>& copies, const GraphVector& x) {
    long sum = 0;
    for (const auto& y : copies) {
        if (y.n != x.n) throw PreconditionError("fourier coefficient: mixed vertex counts");
        sum += (__builtin_popcountll(x.bits & y.bits) & 1) ? -1 : 1;
    }
    return Rat(sum) * Rat::pow2(-pair_count(x.n));
}

std::vector<std::int64_t> indicator_spectrum(int n, const std::vector<GraphVector>& points) {
    check_spectrum_arity(n);
    std::vector<std::int64_t> f(std::size_t{1} << pair_count(n), 0);
    for (const auto& p : points) {
        if (p.n != n) throw PreconditionError("indicator_spectrum: mixed vertex counts");
        f[p.bits] = 1;
    }
    wht_unnormalized(f);
    return f;
}

CodeBound code_density_bound(const Hypergraph& h, int n) {
    check_spectrum_arity(n);
    auto copies = enumerate_copies(h, n);
    auto spectrum = indicator_spectrum(n, copies);
    std::int64_t min_val = spectrum[0];
    std::size_t argmin = 0;
    for (std::size_t x = 1; x < spectrum.size(); x++)
        if (spectrum[x] < min_val) {
            min_val = spectrum[x];
            argmin = x;
        }
    const int m = pair_count(n);
    CodeBound out;
    out.n = n;
    out.copy_count = copies.size();
    out.beta = Rat(static_cast<long>(copies.size())) * Rat::pow2(-m);
    out.gamma = Rat(min_val) * Rat::pow2(-m);
    out.argmin = GraphVector{n, static_cast<std::uint64_t>(argmin)};
    out.bound = -out.gamma / out.beta;
    return out;
}

StepKernel signed_kernel_from_graph_vector(const GraphVector& x) {
    check_vector_arity(x.n);
    const int k = x.n;
    std::vector<Rat> measures(static_cast<size_t>(k), Rat(1, k));
    std::vector<Rat> values(static_cast<size_t>(k) * static_cast<size_t>(k));
    for (int a = 0; a < k; a++)
        for (int b = 0; b < k; b++) {
            Rat val(0);
            if (a != b)
                val = (x.bits >> pair_bit_index(a, b) & 1) ? Rat(-1) : Rat(1);
            values[static_cast<size_t>(a) * static_cast<size_t>(k) + static_cast<size_t>(b)] = val;
        }
    return StepKernel(2, std::move(measures), std::move(values));
}

std::optional<PositivityRefutation> positivity_refutation_from_fourier(const Hypergraph& h,
                                                                       int n,
                                                                       const GraphVector& x) {
    if (h.uniformity() != 2)
        throw PreconditionError("positivity_refutation_from_fourier: graphs only");
    if (x.n != n) throw PreconditionError("positivity_refutation_from_fourier: x lives on K_n");
    if (h.vertex_count() < 1) throw PreconditionError("positivity_refutation_from_fourier: empty pattern");
    auto copies = enumerate_copies(h, n);
    const int m = pair_count(n);
    Rat beta = Rat(static_cast<long>(copies.size())) * Rat::pow2(-m);
    Rat coefficient = fourier_coefficient_exact(copies, x);
    const unsigned long vh = static_cast<unsigned long>(h.vertex_count());
    Rat threshold = Rat(-2) * Rat(static_cast<long>(vh)).pow(vh) * beta / Rat(n);
    if (!(coefficient < threshold)) return std::nullopt;

    StepKernel kern = signed_kernel_from_graph_vector(x);
    Rat dv = density(h, kern);
    if (dv.sign() >= 0)
        throw std::logic_error("positivity refutation: gate fired but density not negative");
    return PositivityRefutation{coefficient, threshold, std::move(kern), dv};
}

ExpectedFourier expected_fourier_from_kernel(const Hypergraph& h,
                                             const std::vector<std::vector<Rat>>& w, int k) {
    if (h.uniformity() != 2)
        throw PreconditionError("expected_fourier_from_kernel: graphs only");
    if (k < 1) throw PreconditionError("expected_fourier_from_kernel: k must be >= 1");
    const int m = static_cast<int>(w.size());
    if (m < 1) throw PreconditionError("expected_fourier_from_kernel: empty weight matrix");
    for (int a = 0; a < m; a++) {
        if (static_cast<int>(w[static_cast<size_t>(a)].size()) != m)
            throw PreconditionError("expected_fourier_from_kernel: weight matrix not square");
        if (!w[static_cast<size_t>(a)][static_cast<size_t>(a)].is_zero())
            throw PreconditionError("expected_fourier_from_kernel: diagonal must be zero");
        for (int b = 0; b < m; b++)
            if (w[static_cast<size_t>(a)][static_cast<size_t>(b)] !=
                w[static_cast<size_t>(b)][static_cast<size_t>(a)])
                throw PreconditionError("expected_fourier_from_kernel: weight matrix not symmetric");
    }
    const int total = k * m;
    auto copies = enumerate_copies(h, total);

    ExpectedFourier out;
    out.copy_count = copies.size();
    out.weight_sum = Rat(0);
    for (const auto& y : copies) {
        Rat prod(1);
        for (int j = 1; j < total && !prod.is_zero(); j++)
            for (int i = 0; i < j; i++) {
                if (!(y.bits >> pair_bit_index(i, j) & 1)) continue;
                prod *= w[static_cast<size_t>(i / k)][static_cast<size_t>(j / k)];
                if (prod.is_zero()) break;
            }
        out.weight_sum += prod;
    }
    const int bits = pair_count(total);
    out.expectation = out.weight_sum * Rat::pow2(-bits);
    out.beta = Rat(static_cast<long>(copies.size())) * Rat::pow2(-bits);
    return out;
}

namespace {

// Basis of span(B) in reduced form plus the free (non-pivot) bit positions.
struct SpanBasis {
    std::vector<std::uint64_t> basis;  // distinct leading bits
    std::vector<int> pivots;
    std::vector<int> free_bits;
};

SpanBasis span_of(const std::vector<std::uint64_t>& vectors, int m) {
    SpanBasis out;
    for (auto vec : vectors) {
        for (std::size_t i = 0; i < out.basis.size(); i++)
            if (vec >> out.pivots[i] & 1) vec ^= out.basis[i];
        if (vec == 0) continue;
        int lead = 63 - __builtin_clzll(vec);
        out.basis.push_back(vec);
        out.pivots.push_back(lead);
        // keep earlier rows reduced against the new pivot
        for (std::size_t i = 0; i + 1 < out.basis.size(); i++)
            if (out.basis[i] >> lead & 1) out.basis[i] ^= vec;
    }
    std::vector<char> is_pivot(static_cast<size_t>(m), 0);
    for (int p : out.pivots) is_pivot[static_cast<size_t>(p)] = 1;
    for (int b = 0; b < m; b++)
        if (!is_pivot[static_cast<size_t>(b)]) out.free_bits.push_back(b);
    return out;
}

std::vector<std::uint64_t> span_elements(const SpanBasis& sb) {
    std::vector<std::uint64_t> out{0};
    for (auto b : sb.basis) {
        std::size_t sz = out.size();
        for (std::size_t i = 0; i < sz; i++) out.push_back(out[i] ^ b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Max independent set in the conflict graph restricted to span(B),
// vertices = span elements, u ~ w iff u^w in B.
struct CosetSearch {
    std::vector<std::uint64_t> elements;
    std::vector<std::vector<int>> adj;
    std::uint64_t best = 0;
    std::vector<int> best_set;
    std::vector<int> cur;
    std::uint64_t nodes = 0;
    std::uint64_t node_budget = 10000000;

    void rec(std::vector<int> candidates) {
        if (++nodes > node_budget)
            throw BudgetError("bruteforce_max_code: branch-and-bound budget exceeded");
        if (cur.size() + candidates.size() <= best && best > 0) return;
        if (candidates.empty()) {
            if (cur.size() > best) {
                best = cur.size();
                best_set = cur;
            }
            return;
        }
        int v = candidates[0];
        // include v
        std::vector<int> next;
        for (std::size_t i = 1; i < candidates.size(); i++) {
            int u = candidates[i];
            if (!std::binary_search(adj[static_cast<size_t>(v)].begin(),
                                    adj[static_cast<size_t>(v)].end(), u))
                next.push_back(u);
        }
        cur.push_back(v);
        rec(std::move(next));
        cur.pop_back();
        // exclude v
        candidates.erase(candidates.begin());
        rec(std::move(candidates));
    }
};

}  // namespace

MaxCode bruteforce_max_code(const Hypergraph& h, int n) {
    check_vector_arity(n);
    const int m = pair_count(n);
    if (m > 10) throw BudgetError("bruteforce_max_code: 2^C(n,2) above 1024");
    auto copies = enumerate_copies(h, n);
    std::vector<std::uint64_t> b_masks;
    for (const auto& c : copies) b_masks.push_back(c.bits);
    std::sort(b_masks.begin(), b_masks.end());

    auto sb = span_of(b_masks, m);
    const int d = static_cast<int>(sb.basis.size());

    CosetSearch search;
    search.elements = span_elements(sb);
    const int span_size = static_cast<int>(search.elements.size());
    search.adj.resize(static_cast<size_t>(span_size));
    for (int i = 0; i < span_size; i++)
        for (int j = i + 1; j < span_size; j++)
            if (std::binary_search(b_masks.begin(), b_masks.end(),
                                   search.elements[static_cast<size_t>(i)] ^
                                       search.elements[static_cast<size_t>(j)])) {
                search.adj[static_cast<size_t>(i)].push_back(j);
                search.adj[static_cast<size_t>(j)].push_back(i);
            }
    std::vector<int> all(static_cast<size_t>(span_size));
    std::iota(all.begin(), all.end(), 0);
    search.rec(all);

    MaxCode out;
    const int cosets_log = m - d;
    out.total = std::uint64_t{1} << m;
    out.max_size = search.best << cosets_log;
    out.density = Rat(static_cast<long>(search.best)) * Rat::pow2(-d);
    // example: translate the per-coset optimum across all coset representatives
    if (out.max_size <= 4096) {
        for (std::uint64_t f = 0; f < (std::uint64_t{1} << cosets_log); f++) {
            std::uint64_t rep = 0;
            for (int b = 0; b < cosets_log; b++)
                if (f >> b & 1)
                    rep |= std::uint64_t{1} << sb.free_bits[static_cast<size_t>(b)];
            for (int idx : search.best_set)
                out.example.push_back(
                    GraphVector{n, rep ^ search.elements[static_cast<size_t>(idx)]});
        }
        std::sort(out.example.begin(), out.example.end());
    }
    return out;
}

MaxCode max_code_exhaustive(const Hypergraph& h, int n) {
    check_vector_arity(n);
    const int m = pair_count(n);
    if (m > 10) throw BudgetError("max_code_exhaustive: 2^C(n,2) above 1024");
    auto copies = enumerate_copies(h, n);
    std::vector<std::uint64_t> b_masks;
    for (const auto& c : copies) b_masks.push_back(c.bits);
    std::sort(b_masks.begin(), b_masks.end());
    auto conflict = [&](std::uint64_t x, std::uint64_t y) {
        return std::binary_search(b_masks.begin(), b_masks.end(), x ^ y);
    };

    MaxCode out;
    out.total = std::uint64_t{1} << m;

    if (m <= 4) {
        // whole space fits: plain subset enumeration, no algebra shared with
        // the branch-and-bound route
        const int size = 1 << m;
        std::uint64_t best = 0, best_mask = 0;
        for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << size); pick++) {
            std::uint64_t count = static_cast<std::uint64_t>(__builtin_popcountll(pick));
            if (count <= best) continue;
            bool ok = true;
            for (int i = 0; i < size && ok; i++) {
                if (!(pick >> i & 1)) continue;
                for (int j = i + 1; j < size && ok; j++)
                    if ((pick >> j & 1) && conflict(static_cast<std::uint64_t>(i),
                                                    static_cast<std::uint64_t>(j)))
                        ok = false;
            }
            if (ok) { best = count; best_mask = pick; }
        }
        out.max_size = best;
        out.density = Rat(static_cast<long>(best)) * Rat::pow2(-m);
        for (int i = 0; i < size; i++)
            if (best_mask >> i & 1) out.example.push_back(GraphVector{n, static_cast<std::uint64_t>(i)});
        return out;
    }

    auto sb = span_of(b_masks, m);
    const int d = static_cast<int>(sb.basis.size());
    if (d > 4) throw BudgetError("max_code_exhaustive: coset size above 16");
    auto elements = span_elements(sb);
    const int span_size = static_cast<int>(elements.size());
    std::uint64_t best = 0, best_mask = 0;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << span_size); pick++) {
        std::uint64_t count = static_cast<std::uint64_t>(__builtin_popcountll(pick));
        if (count <= best) continue;
        bool ok = true;
        for (int i = 0; i < span_size && ok; i++) {
            if (!(pick >> i & 1)) continue;
            for (int j = i + 1; j < span_size && ok; j++)
                if ((pick >> j & 1) && conflict(elements[static_cast<size_t>(i)],
                                                elements[static_cast<size_t>(j)]))
                    ok = false;
        }
        if (ok) { best = count; best_mask = pick; }
    }
    const int cosets_log = m - d;
    out.max_size = best << cosets_log;
    out.density = Rat(static_cast<long>(best)) * Rat::pow2(-d);
    if (out.max_size <= 4096) {
        for (std::uint64_t f = 0; f < (std::uint64_t{1} << cosets_log); f++) {
            std::uint64_t rep = 0;
            for (int b = 0; b < cosets_log; b++)
                if (f >> b & 1)
                    rep |= std::uint64_t{1} << sb.free_bits[static_cast<size_t>(b)];
            for (int i = 0; i < span_size; i++)
                if (best_mask >> i & 1)
                    out.example.push_back(GraphVector{n, rep ^ elements[static_cast<size_t>(i)]});
        }
        std::sort(out.example.begin(), out.example.end());
    }
    return out;
}

bool code_is_valid(const std::vector<GraphVector>& code, const std::vector<GraphVector>& copies) {
    std::set<std::uint64_t> bad;
    for (const auto& c : copies) bad.insert(c.bits);
    for (std::size_t i = 0; i < code.size(); i++)
        for (std::size_t j = i + 1; j < code.size(); j++) {
            if (code[i].n != code[j].n) return false;
            if (bad.count(code[i].bits ^ code[j].bits)) return false;
        }
    return true;
}

}  // namespace poslab
