#include "poslab/sidorenko.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "poslab/detail/parallel.hpp"
#include "poslab/errors.hpp"
#include "poslab/rng.hpp"

namespace poslab {

namespace {

using nlohmann::json;

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t cap) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < exp; i++) {
        acc *= base;
        if (acc > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(acc);
}

// Float objective and gradients for the optimizer. Works on the non-isolated
// vertices only; the dropped (sum of measures)^isolated factor is constant on
// the simplex and its gradient is a uniform shift, which the softmax chain
// rule annihilates.
struct FloatProblem {
    int r;
    int k;
    int active;                               // non-isolated vertex count
    std::vector<std::vector<int>> edge_pos;   // per edge, active positions
    std::vector<int> flat_to_class;           // k^r table
    std::size_t class_count;
    std::uint64_t cost;  // assignments per evaluation

    FloatProblem(const Hypergraph& h, int k_) : r(h.uniformity()), k(k_) {
        auto act = h.non_isolated_vertices();
        active = static_cast<int>(act.size());
        std::vector<int> pos(static_cast<size_t>(h.vertex_count()), -1);
        for (int i = 0; i < active; i++) pos[static_cast<size_t>(act[static_cast<size_t>(i)])] = i;
        for (const auto& e : h.edges()) {
            std::vector<int> p;
            for (int u : e) p.push_back(pos[static_cast<size_t>(u)]);
            edge_pos.push_back(std::move(p));
        }
        auto classes = value_classes(k, r);
        class_count = classes.size();
        std::map<std::vector<int>, int> index;
        for (std::size_t i = 0; i < classes.size(); i++)
            index[classes[i]] = static_cast<int>(i);
        std::uint64_t size = checked_pow(static_cast<std::uint64_t>(k), r, 1u << 22);
        if (size > (1u << 22)) throw BudgetError("minimize_density: value tensor too large");
        flat_to_class.resize(static_cast<size_t>(size));
        std::vector<int> tuple(static_cast<size_t>(r), 0);
        for (std::uint64_t flat = 0; flat < size; flat++) {
            std::vector<int> sorted_tuple = tuple;
            std::sort(sorted_tuple.begin(), sorted_tuple.end());
            flat_to_class[static_cast<size_t>(flat)] = index.at(sorted_tuple);
            for (int i = r - 1; i >= 0; i--) {
                if (++tuple[static_cast<size_t>(i)] < k) break;
                tuple[static_cast<size_t>(i)] = 0;
            }
        }
        cost = checked_pow(static_cast<std::uint64_t>(k), active, kDefaultTermBudget);
        if (cost > kDefaultTermBudget) throw BudgetError("minimize_density: k^v over budget");
    }

    struct Eval {
        double value = 0.0;
        std::vector<double> vgrad;  // per class
        std::vector<double> mgrad;  // per part
    };

    Eval evaluate(const std::vector<double>& measures, const std::vector<double>& vals) const {
        Eval out;
        out.vgrad.assign(class_count, 0.0);
        out.mgrad.assign(static_cast<size_t>(k), 0.0);
        const std::size_t e = edge_pos.size();
        std::vector<int> a(static_cast<size_t>(active), 0);
        std::vector<int> cls(e, 0);
        std::vector<double> ev(e, 0.0);
        std::vector<double> pref(e + 1, 1.0), suf(e + 1, 1.0);
        for (;;) {
            double prod_m = 1.0;
            for (int u = 0; u < active; u++) prod_m *= measures[static_cast<size_t>(a[static_cast<size_t>(u)])];

            int zero_cnt = 0;
            std::size_t zero_eid = 0;
            for (std::size_t i = 0; i < e; i++) {
                std::uint64_t flat = 0;
                for (int p : edge_pos[i]) flat = flat * static_cast<std::uint64_t>(k) +
                                                 static_cast<std::uint64_t>(a[static_cast<size_t>(p)]);
                cls[i] = flat_to_class[static_cast<size_t>(flat)];
                ev[i] = vals[static_cast<size_t>(cls[i])];
                if (ev[i] == 0.0) {
                    zero_cnt++;
                    zero_eid = i;
                    if (zero_cnt >= 2) break;
                }
            }
            if (zero_cnt == 0) {
                pref[0] = 1.0;
                for (std::size_t i = 0; i < e; i++) pref[i + 1] = pref[i] * ev[i];
                suf[e] = 1.0;
                for (std::size_t i = e; i-- > 0;) suf[i] = suf[i + 1] * ev[i];
                double term = prod_m * pref[e];
                out.value += term;
                for (int u = 0; u < active; u++)
                    out.mgrad[static_cast<size_t>(a[static_cast<size_t>(u)])] +=
                        term / measures[static_cast<size_t>(a[static_cast<size_t>(u)])];
                for (std::size_t i = 0; i < e; i++)
                    out.vgrad[static_cast<size_t>(cls[i])] += prod_m * pref[i] * suf[i + 1];
            } else if (zero_cnt == 1) {
                double others = 1.0;
                for (std::size_t i = 0; i < e; i++)
                    if (i != zero_eid) others *= ev[i];
                out.vgrad[static_cast<size_t>(cls[zero_eid])] += prod_m * others;
            }
            int u = active - 1;
            for (; u >= 0; u--) {
                if (++a[static_cast<size_t>(u)] < k) break;
                a[static_cast<size_t>(u)] = 0;
            }
            if (u < 0) break;
        }
        return out;
    }
};

std::vector<double> softmax(const std::vector<double>& logits) {
    double mx = *std::max_element(logits.begin(), logits.end());
    std::vector<double> m(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); i++) {
        m[i] = std::exp(logits[i] - mx);
        sum += m[i];
    }
    for (auto& x : m) x /= sum;
    return m;
}

struct Candidate {
    bool present = false;
    StepKernel kernel = StepKernel::constant(2, Rat(0));
    Rat value;
};

struct RestartOutcome {
    Candidate best;  // best exact candidate of this restart
    double best_float = 1e18;
    bool exhausted = false;
};

Rat clamp_unit(const Rat& x) {
    if (x < Rat(-1)) return Rat(-1);
    if (x > Rat(1)) return Rat(1);
    return x;
}

// Rational rounding of a float search point; two precisions, both exactly
// re-evaluated by the caller.
struct SnappedPoint {
    std::vector<Rat> measures;
    std::vector<Rat> class_values;
};

SnappedPoint snap_point(int k, const std::vector<double>& measures,
                        const std::vector<double>& vals, bool coarse) {
    SnappedPoint out;
    if (coarse) {
        out.measures.assign(static_cast<size_t>(k), Rat(1, k));
        for (double v : vals) out.class_values.push_back(clamp_unit(Rat(std::lround(v * 2.0), 2)));
        return out;
    }
    const long den = 4096;
    Rat rest(0);
    bool ok = true;
    for (int p = 0; p + 1 < k; p++) {
        Rat m(std::lround(measures[static_cast<size_t>(p)] * static_cast<double>(den)), den);
        if (m.sign() <= 0) ok = false;
        out.measures.push_back(m);
        rest += m;
    }
    Rat last = Rat(1) - rest;
    if (last.sign() <= 0) ok = false;
    out.measures.push_back(last);
    if (!ok) out.measures.assign(static_cast<size_t>(k), Rat(1, k));
    for (double v : vals) out.class_values.push_back(clamp_unit(Rat(std::lround(v * den), den)));
    return out;
}

RestartOutcome run_restart(const Hypergraph& h, const FloatProblem& prob, int k,
                           std::uint64_t budget_slice, std::uint64_t restart_seed,
                           bool cold_start_minus_one) {
    RestartOutcome out;
    Rng rng(restart_seed);
    std::vector<double> vals(prob.class_count);
    std::vector<double> logits(static_cast<size_t>(k), 0.0);
    if (cold_start_minus_one) {
        std::fill(vals.begin(), vals.end(), -1.0);
    } else {
        for (auto& v : vals) v = rng.unit() * 2.0 - 1.0;
        for (auto& t : logits) t = (rng.unit() * 2.0 - 1.0) * 2.0;
    }

    std::vector<double> best_vals = vals, best_logits = logits;
    std::uint64_t used = 0;
    const int iters = 250;
    for (int t = 0; t < iters; t++) {
        if (used + prob.cost > budget_slice) {
            out.exhausted = true;
            break;
        }
        used += prob.cost;
        auto measures = softmax(logits);
        auto ev = prob.evaluate(measures, vals);
        if (ev.value < out.best_float) {
            out.best_float = ev.value;
            best_vals = vals;
            best_logits = logits;
        }
        double eta = 0.4 / (1.0 + static_cast<double>(t) / 25.0);
        for (std::size_t c = 0; c < vals.size(); c++)
            vals[c] = std::clamp(vals[c] - eta * ev.vgrad[c], -1.0, 1.0);
        double dot = 0.0;
        for (int p = 0; p < k; p++) dot += ev.mgrad[static_cast<size_t>(p)] * measures[static_cast<size_t>(p)];
        for (int p = 0; p < k; p++) {
            double g = measures[static_cast<size_t>(p)] * (ev.mgrad[static_cast<size_t>(p)] - dot);
            logits[static_cast<size_t>(p)] = std::clamp(logits[static_cast<size_t>(p)] - eta * g, -8.0, 8.0);
        }
    }

    auto best_measures = softmax(best_logits);
    for (bool coarse : {true, false}) {
        auto sp = snap_point(k, best_measures, best_vals, coarse);
        StepKernel kern = StepKernel::from_class_values(h.uniformity(), sp.measures, sp.class_values);
        Rat value = density(h, kern);
        if (!out.best.present || value < out.best.value) {
            out.best.present = true;
            out.best.kernel = kern;
            out.best.value = value;
        }
    }
    return out;
}

}  // namespace

MinimizeResult minimize_density(const Hypergraph& h, int k, std::uint64_t budget,
                                std::uint64_t seed) {
    if (k < 1) throw PreconditionError("minimize_density: k must be >= 1");
    FloatProblem prob(h, k);

    const int restarts = 6;
    std::uint64_t slice = budget / restarts;
    std::vector<RestartOutcome> outcomes(restarts);

    unsigned workers = std::min<unsigned>(detail::worker_count(), restarts);
    if (workers <= 1) {
        for (int i = 0; i < restarts; i++)
            outcomes[static_cast<size_t>(i)] =
                run_restart(h, prob, k, slice, mix64(seed, static_cast<std::uint64_t>(i)), i == 0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; w++)
            pool.emplace_back([&, w] {
                for (int i = static_cast<int>(w); i < restarts; i += static_cast<int>(workers))
                    outcomes[static_cast<size_t>(i)] =
                        run_restart(h, prob, k, slice, mix64(seed, static_cast<std::uint64_t>(i)), i == 0);
            });
        for (auto& th : pool) th.join();
    }

    MinimizeResult result{StepKernel::constant(h.uniformity(), Rat(0)), Rat(1), false, false, 1e18,
                          static_cast<std::uint64_t>(restarts)};
    bool have = false;
    for (const auto& oc : outcomes) {
        if (oc.exhausted) result.budget_exhausted = true;
        result.best_float = std::min(result.best_float, oc.best_float);
        if (oc.best.present && (!have || oc.best.value < result.value)) {
            have = true;
            result.kernel = oc.best.kernel;
            result.value = oc.best.value;
        }
    }
    if (!have) {
        result.kernel = StepKernel::constant(h.uniformity(), Rat(0));
        result.value = density(h, result.kernel);
    }
    result.negative = result.value.sign() < 0;
    return result;
}

namespace {

std::vector<int> checked_subgraph_indices(const Hypergraph& h, const std::vector<int>& idx) {
    if (idx.empty()) throw PreconditionError("certificate: empty subgraph edge set");
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() != idx.size())
        throw PreconditionError("certificate: duplicate subgraph edge index");
    if (sorted.front() < 0 || sorted.back() >= h.edge_count())
        throw PreconditionError("certificate: subgraph edge index out of range");
    return sorted;
}

}  // namespace

NonSidorenkoCertificate nonsidorenko_certificate(const Hypergraph& h,
                                                 const std::vector<int>& subgraph_edges,
                                                 const std::optional<StepKernel>& w,
                                                 const StepKernel& u, const Rat& eps,
                                                 std::uint64_t term_budget) {
    if (u.uniformity() != h.uniformity())
        throw PreconditionError("certificate: U uniformity mismatch");
    if (w && w->uniformity() != h.uniformity())
        throw PreconditionError("certificate: W uniformity mismatch");
    if (h.edge_count() < 1 || h.edge_count() > 20)
        throw PreconditionError("certificate: need 1 <= e(H) <= 20");
    auto indices = checked_subgraph_indices(h, subgraph_edges);

    NonSidorenkoCertificate cert{h,   indices, w, u, eps, Rat(0), Rat(0), Rat(0),
                                 false};

    Hypergraph g = h.edge_subgraph(indices);
    cert.subgraph_density = w ? density(g, *w, term_budget) : density(g, u, term_budget);

    const int e = h.edge_count();
    Rat lhs(1);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << e); mask++) {
        Hypergraph f = h.edge_subgraph(mask);
        Rat tf = density(f, u, term_budget);
        if (tf.is_zero()) continue;
        if (w) {
            tf *= density(f, *w, term_budget);
            if (tf.is_zero()) continue;
        }
        lhs += tf * eps.pow(static_cast<unsigned long>(__builtin_popcountll(mask)));
    }
    cert.lhs = lhs;

    Hypergraph edge = single_edge(h.uniformity());
    Rat te = density(edge, u, term_budget);
    if (w) te *= density(edge, *w, term_budget);
    cert.rhs = (Rat(1) + eps * te).pow(static_cast<unsigned long>(e));
    cert.valid = cert.lhs < cert.rhs;
    return cert;
}

std::optional<NonSidorenkoCertificate> find_epsilon(const Hypergraph& h,
                                                    const std::vector<int>& subgraph_edges,
                                                    const std::optional<StepKernel>& w,
                                                    const StepKernel& u,
                                                    std::uint64_t term_budget) {
    if (h.edge_count() < 1 || h.edge_count() > 20)
        throw PreconditionError("certificate: need 1 <= e(H) <= 20");
    // subset densities do not depend on eps; collect them once
    const int e = h.edge_count();
    std::vector<std::pair<int, Rat>> terms;  // (e(F), t_F factor product)
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << e); mask++) {
        Hypergraph f = h.edge_subgraph(mask);
        Rat tf = density(f, u, term_budget);
        if (tf.is_zero()) continue;
        if (w) {
            tf *= density(f, *w, term_budget);
            if (tf.is_zero()) continue;
        }
        terms.emplace_back(__builtin_popcountll(mask), tf);
    }
    Hypergraph edge = single_edge(h.uniformity());
    Rat te = density(edge, u, term_budget);
    if (w) te *= density(edge, *w, term_budget);

    for (int b = 1; b <= 20; b++) {
        Rat eps = Rat::pow2(-b);
        Rat lhs(1);
        for (const auto& [ef, tf] : terms)
            lhs += tf * eps.pow(static_cast<unsigned long>(ef));
        Rat rhs = (Rat(1) + eps * te).pow(static_cast<unsigned long>(e));
        if (lhs < rhs) return nonsidorenko_certificate(h, subgraph_edges, w, u, eps, term_budget);
    }
    return std::nullopt;
}

std::string nonsidorenko_certificate_to_json(const NonSidorenkoCertificate& cert) {
    json j;
    j["target"] = to_text(cert.target);
    j["subgraph_edges"] = cert.subgraph_edges;
    if (cert.witness)
        j["witness"] = json::parse(cert.witness->to_json());
    else
        j["witness"] = nullptr;
    j["quasirandom"] = json::parse(cert.quasirandom.to_json());
    j["epsilon"] = cert.epsilon.str();
    j["subgraph_density"] = cert.subgraph_density.str();
    j["lhs"] = cert.lhs.str();
    j["rhs"] = cert.rhs.str();
    j["valid"] = cert.valid;
    return j.dump();
}

NonSidorenkoCertificate nonsidorenko_certificate_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        Hypergraph target = parse_text(j.at("target").get<std::string>());
        std::vector<int> indices = j.at("subgraph_edges").get<std::vector<int>>();
        std::optional<StepKernel> witness;
        if (!j.at("witness").is_null())
            witness = StepKernel::from_json(j.at("witness").dump());
        StepKernel u = StepKernel::from_json(j.at("quasirandom").dump());
        Rat eps = Rat::from_string(j.at("epsilon").get<std::string>());
        NonSidorenkoCertificate cert{std::move(target),
                                     std::move(indices),
                                     std::move(witness),
                                     std::move(u),
                                     eps,
                                     Rat::from_string(j.at("subgraph_density").get<std::string>()),
                                     Rat::from_string(j.at("lhs").get<std::string>()),
                                     Rat::from_string(j.at("rhs").get<std::string>()),
                                     j.at("valid").get<bool>()};
        return cert;
    } catch (const json::exception& err) {
        throw IoError(std::string("certificate json: ") + err.what());
    }
}

bool validate_nonsidorenko_certificate(const NonSidorenkoCertificate& cert) {
    NonSidorenkoCertificate redo = nonsidorenko_certificate(
        cert.target, cert.subgraph_edges, cert.witness, cert.quasirandom, cert.epsilon);
    return redo.lhs == cert.lhs && redo.rhs == cert.rhs &&
           redo.subgraph_density == cert.subgraph_density && redo.valid == cert.valid &&
           cert.valid == (cert.lhs < cert.rhs);
}

CycleDemoReport cycle_demo(int r, int ell, int n, std::uint64_t seed) {
    if (r != 3 && r != 5) throw PreconditionError("cycle_demo: r must be 3 or 5");
    if (ell <= r || ell > 15) throw PreconditionError("cycle_demo: need r < ell <= 15");
    if (n < 4 || n > 16) throw PreconditionError("cycle_demo: need 4 <= n <= 16");

    Hypergraph cycle = tight_cycle(r, ell);
    CycleDemoReport report{r,
                           ell,
                           n,
                           seed,
                           levi_nonpositivity(cycle),
                           tight_cycle_family(r),
                           (std::uint64_t{1} << ell) - 2,
                           0,
                           false,
                           false,
                           CopyProbability{},
                           std::nullopt,
                           Rat::pow2(static_cast<long>(1 - r) * ell),
                           {}};

    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << ell); mask++) {
        Hypergraph f = cycle.edge_subgraph(mask);
        if (q_vanishing(f, report.family)) report.vanishing_count++;
    }
    report.all_proper_vanish = report.vanishing_count == report.proper_subsets;
    report.full_cycle_vanishes = q_vanishing(cycle, report.family).has_value();

    report.copy_prob = copy_probability_exact(cycle);
    if (ell <= 14) report.copy_prob_exhaustive = copy_probability_exhaustive(cycle);

    std::vector<int> sizes;
    for (int m : {4, 8, n})
        if (m <= n && (sizes.empty() || m > sizes.back())) sizes.push_back(m);

    // kernels first, shared across run lengths
    std::vector<StepKernel> kernels;
    const Rat p = Rat::pow2(1 - r);
    for (int m : sizes) {
        Tournament t = sample_tournament(r - 1, m, mix64(seed, static_cast<std::uint64_t>(m)));
        kernels.push_back(kernel_of(build_g(t)).center(p));
    }
    const std::uint64_t per_point_budget = 5'000'000;
    for (int run = 1; run <= 3 && run <= ell - 1; run++) {
        int support = r + run - 1;
        CycleDemoReport::Decay d;
        d.run_length = run;
        for (std::size_t i = 0; i < sizes.size(); i++) {
            int m = sizes[i];
            if (checked_pow(static_cast<std::uint64_t>(m), support, per_point_budget) >
                per_point_budget)
                continue;
            Hypergraph f = cycle.edge_subgraph((std::uint64_t{1} << run) - 1);
            d.sizes.push_back(m);
            d.values.push_back(density(f, kernels[i]));
        }
        if (!d.sizes.empty()) report.decay.push_back(std::move(d));
    }
    return report;
}

namespace {

json copy_prob_json(const CopyProbability& cp) {
    json j;
    j["consistent"] = cp.consistent;
    j["rank"] = cp.rank;
    j["variables"] = cp.variables;
    j["probability"] = cp.probability.str();
    return j;
}

}  // namespace

std::string cycle_demo_to_json(const CycleDemoReport& report) {
    json j;
    j["r"] = report.r;
    j["ell"] = report.ell;
    j["n"] = report.n;
    j["seed"] = report.seed;
    j["levi"] = {{"graph", to_text(report.levi.levi)},
                 {"certificate", json::parse(odd_certificate_to_json(report.levi.cert))}};
    j["family"] = json::parse(report.family.to_json());
    j["proper_subsets"] = report.proper_subsets;
    j["vanishing_count"] = report.vanishing_count;
    j["all_proper_vanish"] = report.all_proper_vanish;
    j["full_cycle_vanishes"] = report.full_cycle_vanishes;
    j["copy_probability"] = copy_prob_json(report.copy_prob);
    if (report.copy_prob_exhaustive)
        j["copy_probability_exhaustive"] = copy_prob_json(*report.copy_prob_exhaustive);
    else
        j["copy_probability_exhaustive"] = nullptr;
    j["random_bound"] = report.random_bound.str();
    json decay = json::array();
    for (const auto& d : report.decay) {
        json item;
        item["run_length"] = d.run_length;
        item["sizes"] = d.sizes;
        json vals = json::array();
        for (const auto& v : d.values) vals.push_back(v.str());
        item["values"] = vals;
        decay.push_back(item);
    }
    j["decay"] = decay;
    return j.dump();
}

std::string cycle_demo_summary(const CycleDemoReport& report) {
    std::ostringstream os;
    os << "tight cycle: r=" << report.r << " ell=" << report.ell << "\n";
    os << "levi graph: " << report.levi.levi.vertex_count() << " vertices, witness alpha="
       << report.levi.cert.alpha.str() << ", density=" << report.levi.cert.value.str() << "\n";
    os << "proper edge subsets vanishing: " << report.vanishing_count << "/"
       << report.proper_subsets << (report.all_proper_vanish ? " (all)" : " (NOT all)") << "\n";
    os << "full cycle vanishes: " << (report.full_cycle_vanishes ? "yes" : "no") << "\n";
    os << "copy probability: " << report.copy_prob.probability.str() << " (rank "
       << report.copy_prob.rank << ", " << report.copy_prob.variables << " variables)"
       << ", random baseline " << report.random_bound.str() << "\n";
    if (report.copy_prob_exhaustive)
        os << "exhaustive check: " << report.copy_prob_exhaustive->probability.str() << "\n";
    for (const auto& d : report.decay) {
        os << "decay, run of " << d.run_length << ":";
        for (std::size_t i = 0; i < d.sizes.size(); i++) {
            os << " n=" << d.sizes[i] << " -> " << d.values[i].str()
               << " (~" << d.values[i].to_double() << ")";
            if (i + 1 < d.sizes.size()) os << ",";
        }
        os << "\n";
    }
    return os.str();
}

GridDemoReport grid_demo(int r, std::uint64_t term_budget) {
    if (r < 2 || r > 6) throw PreconditionError("grid_demo: r must be in [2,6]");
    Hypergraph grid = grid_hypergraph(r);
    StepKernel pk = parity_kernel(r);
    const int e = grid.edge_count();

    GridDemoReport report{r, e, (std::uint64_t{1} << e) - 1, 0, 0, 0, 0, false};
    const std::uint64_t full_mask = (std::uint64_t{1} << e) - 1;
    for (std::uint64_t mask = 1; mask <= full_mask; mask++) {
        Hypergraph f = grid.edge_subgraph(mask);
        auto active = f.non_isolated_vertices();
        if (checked_pow(2, static_cast<int>(active.size()), term_budget) > term_budget) {
            report.skipped++;
            continue;
        }
        report.checked++;
        Rat d = density(f, pk, term_budget);
        auto degs = f.degrees();
        bool all_even = true;
        for (int u : active)
            if (degs[static_cast<size_t>(u)] % 2 != 0) all_even = false;
        Rat expected = all_even ? Rat(1) : Rat(0);
        if (d != expected) report.mismatches++;
        if (d == Rat(1)) {
            report.density_one_count++;
            if (mask == full_mask) report.full_grid_attains_one = true;
        }
    }
    return report;
}

std::string grid_demo_to_json(const GridDemoReport& report) {
    json j;
    j["r"] = report.r;
    j["edge_count"] = report.edge_count;
    j["subsets"] = report.subsets;
    j["checked"] = report.checked;
    j["skipped"] = report.skipped;
    j["mismatches"] = report.mismatches;
    j["density_one_count"] = report.density_one_count;
    j["full_grid_attains_one"] = report.full_grid_attains_one;
    return j.dump();
}

}  // namespace poslab
