#include "poslab/indpoly.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "poslab/errors.hpp"

namespace poslab {

namespace {

std::vector<std::uint64_t> adjacency_masks(const Hypergraph& g) {
    if (g.uniformity() != 2)
        throw PreconditionError("independence polynomial: graphs only");
    std::vector<std::uint64_t> adj(static_cast<size_t>(g.vertex_count()), 0);
    for (const auto& e : g.edges()) {
        adj[static_cast<size_t>(e[0])] |= std::uint64_t{1} << e[1];
        adj[static_cast<size_t>(e[1])] |= std::uint64_t{1} << e[0];
    }
    return adj;
}

Polynomial one_minus_x_power(int t) {
    Polynomial p({Rat(1)});
    Polynomial factor({Rat(1), Rat(-1)});
    for (int i = 0; i < t; i++) p = p * factor;
    return p;
}

long rat_floor_long(const Rat& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.raw().get_num().get_mpz_t(), x.raw().get_den().get_mpz_t());
    return q.get_si();
}

}  // namespace

Polynomial independence_polynomial(const Hypergraph& g) {
    if (g.vertex_count() > 40)
        throw BudgetError("independence_polynomial: more than 40 vertices");
    auto adj = adjacency_masks(g);
    const int v = g.vertex_count();
    std::unordered_map<std::uint64_t, Polynomial> memo;

    std::function<Polynomial(std::uint64_t)> rec = [&](std::uint64_t mask) -> Polynomial {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        // pivot on the densest vertex; isolated remainder closes the recursion
        int pivot = -1, best = 0;
        for (int u = 0; u < v; u++) {
            if (!(mask >> u & 1)) continue;
            int d = static_cast<int>(__builtin_popcountll(adj[static_cast<size_t>(u)] & mask));
            if (d > best) { best = d; pivot = u; }
        }
        Polynomial result;
        if (pivot == -1) {
            result = one_minus_x_power(static_cast<int>(__builtin_popcountll(mask)));
        } else {
            std::uint64_t without = mask & ~(std::uint64_t{1} << pivot);
            std::uint64_t closed = without & ~adj[static_cast<size_t>(pivot)];
            result = rec(without) - rec(closed).times_x();
        }
        memo.emplace(mask, result);
        return result;
    };
    std::uint64_t full = (v == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << v) - 1;
    return rec(full);
}

Polynomial independence_polynomial_enum(const Hypergraph& g) {
    if (g.vertex_count() > 24)
        throw BudgetError("independence_polynomial_enum: more than 24 vertices");
    auto adj = adjacency_masks(g);
    const int v = g.vertex_count();
    const std::size_t total = std::size_t{1} << v;
    std::vector<std::uint8_t> indep(total, 0);
    std::vector<long> counts(static_cast<size_t>(v) + 1, 0);
    indep[0] = 1;
    counts[0] = 1;
    for (std::size_t s = 1; s < total; s++) {
        int u = __builtin_ctzll(s);
        std::size_t rest = s & (s - 1);
        if (indep[rest] && (adj[static_cast<size_t>(u)] & rest) == 0) {
            indep[s] = 1;
            counts[static_cast<size_t>(__builtin_popcountll(s))]++;
        }
    }
    std::vector<Rat> coeffs;
    for (size_t k = 0; k < counts.size(); k++) {
        Rat c(counts[k]);
        if (k % 2 == 1) c = -c;
        coeffs.push_back(c);
    }
    return Polynomial(std::move(coeffs));
}

RootBracket smallest_root_bracket(const Polynomial& p, const Rat& tol) {
    if (tol.sign() <= 0) throw PreconditionError("smallest_root_bracket: tol must be positive");

    Rat lo, hi;
    bool bracketed = false;
    for (long n = 8; n <= (1L << 20) && !bracketed; n *= 2) {
        for (long k = 1; k <= n; k++) {
            Rat x(k, n);
            int s = p.eval(x).sign();
            if (s > 0) continue;
            if (s < 0) {
                lo = Rat(k - 1, n);
                hi = x;
                bracketed = true;
                break;
            }
            // exact root on the grid: nudge the right endpoint past it
            for (long shift = 4 * n; shift <= (n << 22); shift *= 2) {
                Rat cand = x + Rat(1, shift);
                if (cand < Rat(1) && p.eval(cand).sign() < 0) {
                    lo = Rat(k - 1, n);
                    hi = cand;
                    bracketed = true;
                    break;
                }
            }
            if (bracketed) break;
        }
    }
    if (!bracketed)
        throw PreconditionError(
            "smallest_root_bracket: no sign change in (0,1); input is not the "
            "independence polynomial of a connected graph with an edge");

    for (int iter = 0; iter < 400 && (hi - lo > tol || hi >= Rat(1)); iter++) {
        Rat mid = (lo + hi) / Rat(2);
        int s = p.eval(mid).sign();
        if (s > 0) {
            lo = mid;
        } else if (s < 0) {
            hi = mid;
        } else {
            // landed on the root: move hi just past mid, keep it negative
            Rat step = (hi - mid) / Rat(2);
            bool moved = false;
            for (int j = 0; j < 60; j++) {
                Rat cand = mid + step;
                if (p.eval(cand).sign() < 0) {
                    hi = cand;
                    moved = true;
                    break;
                }
                step = step / Rat(2);
            }
            if (!moved) throw PreconditionError("smallest_root_bracket: sign pattern not simple");
        }
    }
    if (hi - lo > tol || lo.sign() <= 0 || hi >= Rat(1))
        throw PreconditionError("smallest_root_bracket: bisection did not converge");
    return RootBracket{lo, hi};
}

StepKernel odd_witness_kernel(const Rat& alpha) {
    if (alpha.sign() <= 0 || alpha >= Rat(1))
        throw PreconditionError("odd_witness_kernel: alpha must lie in (0,1)");
    // index order (0,0),(0,1),(1,0),(1,1)
    return StepKernel(2, {alpha, Rat(1) - alpha}, {Rat(0), Rat(-1), Rat(-1), Rat(1)});
}

WitnessIdentity verify_witness_identity(const Hypergraph& g, const Rat& alpha) {
    if (g.uniformity() != 2)
        throw PreconditionError("verify_witness_identity: graphs only");
    if (!g.all_degrees_odd())
        throw PreconditionError("verify_witness_identity: every degree must be odd");
    WitnessIdentity out;
    out.lhs = density(g, odd_witness_kernel(alpha));
    Rat x = alpha / (Rat(1) - alpha);
    out.rhs = (Rat(1) - alpha).pow(static_cast<unsigned long>(g.vertex_count())) *
              independence_polynomial(g).eval(x);
    out.equal = out.lhs == out.rhs;
    return out;
}

OddWitnessCertificate certify_nonpositive_odd(const Hypergraph& g, const Rat& tol) {
    if (g.uniformity() != 2)
        throw PreconditionError("certify_nonpositive_odd: graphs only");
    if (g.edge_count() < 1)
        throw PreconditionError("certify_nonpositive_odd: need at least one edge");
    if (!g.is_connected())
        throw PreconditionError("certify_nonpositive_odd: graph must be connected");
    if (!g.all_degrees_odd())
        throw PreconditionError("certify_nonpositive_odd: every degree must be odd");

    OddWitnessCertificate cert;
    cert.polynomial = independence_polynomial(g);
    cert.bracket = smallest_root_bracket(cert.polynomial, tol);

    // Candidate x past the root: small denominators first, so the witness
    // alpha = x/(1+x) comes out human-sized. Negativity of I(x) and of the
    // final density are both checked exactly.
    auto try_x = [&](const Rat& x) -> bool {
        if (cert.polynomial.eval(x).sign() >= 0) return false;
        Rat alpha = x / (Rat(1) + x);
        Rat value = density(g, odd_witness_kernel(alpha));
        if (value.sign() >= 0) return false;
        cert.alpha = alpha;
        cert.value = value;
        return true;
    };

    const Rat window_hi = cert.bracket.lo * Rat(3, 2);
    for (long den = 2; den <= 64; den++) {
        long num_lo = rat_floor_long(cert.bracket.lo * Rat(den)) + 1;
        long num_hi = rat_floor_long(window_hi * Rat(den));
        for (long num = num_lo; num <= num_hi; num++) {
            Rat x(num, den);
            if (x <= cert.bracket.lo || x > window_hi) continue;
            if (try_x(x)) return cert;
        }
    }
    if (try_x(cert.bracket.hi)) return cert;
    // Unreachable for real inputs: I(hi) < 0 by the bracket's invariant and
    // the identity forces a negative density for all-odd graphs.
    throw PreconditionError("certify_nonpositive_odd: no witness found past the bracket");
}

LeviWitnessCertificate levi_nonpositivity(const Hypergraph& h, const Rat& tol) {
    if (h.uniformity() % 2 == 0)
        throw PreconditionError("levi_nonpositivity: uniformity must be odd");
    if (h.edge_count() < 1)
        throw PreconditionError("levi_nonpositivity: need at least one edge");
    if (!h.is_connected())
        throw PreconditionError("levi_nonpositivity: hypergraph must be connected");
    if (!h.all_degrees_odd())
        throw PreconditionError("levi_nonpositivity: every degree must be odd");
    LeviWitnessCertificate out{levi_graph(h), OddWitnessCertificate{}};
    out.cert = certify_nonpositive_odd(out.levi, tol);
    return out;
}

std::string odd_certificate_to_json(const OddWitnessCertificate& cert) {
    nlohmann::json j;
    j["alpha"] = cert.alpha.str();
    j["density"] = cert.value.str();
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : cert.polynomial.coefficients()) coeffs.push_back(c.str());
    j["polynomial"] = std::move(coeffs);
    return j.dump();
}

OddWitnessCertificate odd_certificate_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("certificate JSON: ") + e.what());
    }
    OddWitnessCertificate cert;
    try {
        cert.alpha = Rat::from_string(j.at("alpha").get<std::string>());
        cert.value = Rat::from_string(j.at("density").get<std::string>());
        std::vector<Rat> coeffs;
        for (const auto& s : j.at("polynomial")) coeffs.push_back(Rat::from_string(s.get<std::string>()));
        cert.polynomial = Polynomial(std::move(coeffs));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("certificate JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("certificate JSON: ") + e.what());
    }
    return cert;
}

bool validate_odd_certificate(const Hypergraph& g, const OddWitnessCertificate& cert) {
    if (cert.alpha.sign() <= 0 || cert.alpha >= Rat(1)) return false;
    if (cert.value.sign() >= 0) return false;
    if (independence_polynomial(g) != cert.polynomial) return false;
    return density(g, odd_witness_kernel(cert.alpha)) == cert.value;
}

}  // namespace poslab
