#include "poslab/kernel.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "poslab/detail/density_engine.hpp"
#include "poslab/errors.hpp"

namespace poslab {

namespace {

std::size_t checked_tensor_size(int k, int r) {
    unsigned __int128 size = 1;
    for (int i = 0; i < r; i++) {
        size *= static_cast<unsigned>(k);
        if (size > (1ULL << 27))
            throw BudgetError("StepKernel: value tensor larger than 2^27 entries");
    }
    return static_cast<std::size_t>(size);
}

}  // namespace

StepKernel::StepKernel(int r, std::vector<Rat> measures, std::vector<Rat> values)
    : r_(r), k_(static_cast<int>(measures.size())),
      measures_(std::move(measures)), values_(std::move(values)) {
    if (r_ < 2) throw PreconditionError("StepKernel: arity must be >= 2");
    if (k_ < 1) throw PreconditionError("StepKernel: need at least one part");
    Rat sum(0);
    for (const auto& m : measures_) {
        if (m.sign() <= 0) throw PreconditionError("StepKernel: measures must be positive");
        sum += m;
    }
    if (sum != Rat(1)) throw PreconditionError("StepKernel: measures must sum to 1");
    if (values_.size() != checked_tensor_size(k_, r_))
        throw PreconditionError("StepKernel: value tensor has wrong size");

    // Symmetry: every ordered tuple agrees with its sorted representative.
    std::vector<int> tuple(static_cast<size_t>(r_), 0);
    for (std::size_t flat = 0; flat < values_.size(); flat++) {
        std::vector<int> sorted = tuple;
        std::sort(sorted.begin(), sorted.end());
        std::size_t canon = 0;
        for (int t : sorted) canon = canon * static_cast<size_t>(k_) + static_cast<size_t>(t);
        if (values_[flat] != values_[canon])
            throw PreconditionError("StepKernel: value tensor is not symmetric");
        for (int i = r_ - 1; i >= 0; i--) {
            if (++tuple[static_cast<size_t>(i)] < k_) break;
            tuple[static_cast<size_t>(i)] = 0;
        }
    }
}

StepKernel StepKernel::constant(int r, const Rat& value) {
    return StepKernel(r, {Rat(1)}, {value});
}

StepKernel StepKernel::from_class_values(int r, std::vector<Rat> measures,
                                         const std::vector<Rat>& class_values) {
    int k = static_cast<int>(measures.size());
    auto classes = value_classes(k, r);
    if (class_values.size() != classes.size())
        throw PreconditionError("from_class_values: wrong class count");
    std::size_t size = checked_tensor_size(k, r);
    std::vector<Rat> values(size);
    std::map<std::vector<int>, Rat> lookup;
    for (std::size_t i = 0; i < classes.size(); i++) lookup[classes[i]] = class_values[i];
    std::vector<int> tuple(static_cast<size_t>(r), 0);
    for (std::size_t flat = 0; flat < size; flat++) {
        std::vector<int> sorted = tuple;
        std::sort(sorted.begin(), sorted.end());
        values[flat] = lookup.at(sorted);
        for (int i = r - 1; i >= 0; i--) {
            if (++tuple[static_cast<size_t>(i)] < k) break;
            tuple[static_cast<size_t>(i)] = 0;
        }
    }
    return StepKernel(r, std::move(measures), std::move(values));
}

std::size_t StepKernel::flat_index(const std::vector<int>& tuple) const {
    if (static_cast<int>(tuple.size()) != r_)
        throw PreconditionError("StepKernel: tuple arity mismatch");
    std::size_t idx = 0;
    for (int t : tuple) {
        if (t < 0 || t >= k_) throw PreconditionError("StepKernel: part index out of range");
        idx = idx * static_cast<size_t>(k_) + static_cast<size_t>(t);
    }
    return idx;
}

const Rat& StepKernel::value(const std::vector<int>& tuple) const {
    return values_[flat_index(tuple)];
}

bool StepKernel::is_graphon() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rat& v) {
        return v >= Rat(0) && v <= Rat(1);
    });
}

StepKernel StepKernel::perturb(const Rat& eps) const {
    std::vector<Rat> values = values_;
    for (auto& v : values) v = Rat(1) + eps * v;
    return StepKernel(r_, measures_, std::move(values));
}

StepKernel StepKernel::center(const Rat& p) const {
    std::vector<Rat> values = values_;
    for (auto& v : values) v -= p;
    return StepKernel(r_, measures_, std::move(values));
}

StepKernel tensor(const StepKernel& w, const StepKernel& u) {
    if (w.uniformity() != u.uniformity())
        throw PreconditionError("tensor: arity mismatch");
    const int r = w.uniformity();
    const int kw = w.parts(), ku = u.parts();
    const int k = kw * ku;  // part (a,b) -> a*ku + b
    std::vector<Rat> measures(static_cast<size_t>(k));
    for (int a = 0; a < kw; a++)
        for (int b = 0; b < ku; b++)
            measures[static_cast<size_t>(a * ku + b)] =
                w.measures()[static_cast<size_t>(a)] * u.measures()[static_cast<size_t>(b)];

    std::size_t size = 1;
    for (int i = 0; i < r; i++) size *= static_cast<size_t>(k);
    if (size > (1ULL << 27)) throw BudgetError("tensor: value tensor too large");
    std::vector<Rat> values(size);
    std::vector<int> tuple(static_cast<size_t>(r), 0);
    std::vector<int> ta(static_cast<size_t>(r)), tb(static_cast<size_t>(r));
    for (std::size_t flat = 0; flat < size; flat++) {
        for (int i = 0; i < r; i++) {
            ta[static_cast<size_t>(i)] = tuple[static_cast<size_t>(i)] / ku;
            tb[static_cast<size_t>(i)] = tuple[static_cast<size_t>(i)] % ku;
        }
        values[flat] = w.value(ta) * u.value(tb);
        for (int i = r - 1; i >= 0; i--) {
            if (++tuple[static_cast<size_t>(i)] < k) break;
            tuple[static_cast<size_t>(i)] = 0;
        }
    }
    return StepKernel(r, std::move(measures), std::move(values));
}

StepKernel kernel_of(const Hypergraph& g) {
    const int v = g.vertex_count();
    if (v < 1) throw PreconditionError("kernel_of: need at least one vertex");
    const int r = g.uniformity();
    std::size_t size = checked_tensor_size(v, r);
    std::vector<Rat> measures(static_cast<size_t>(v), Rat(1, v));
    std::vector<Rat> values(size, Rat(0));
    std::vector<int> tuple(static_cast<size_t>(r), 0);
    for (std::size_t flat = 0; flat < size; flat++) {
        std::vector<int> sorted = tuple;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
            std::binary_search(g.edges().begin(), g.edges().end(), sorted))
            values[flat] = Rat(1);
        for (int i = r - 1; i >= 0; i--) {
            if (++tuple[static_cast<size_t>(i)] < v) break;
            tuple[static_cast<size_t>(i)] = 0;
        }
    }
    return StepKernel(r, std::move(measures), std::move(values));
}

StepKernel parity_kernel(int r) {
    if (r < 2) throw PreconditionError("parity_kernel: arity must be >= 2");
    // part 0 labelled +1, part 1 labelled -1
    std::size_t size = std::size_t{1} << r;
    std::vector<Rat> values(size);
    for (std::size_t flat = 0; flat < size; flat++) {
        int ones = 0;
        for (int i = 0; i < r; i++) ones += static_cast<int>(flat >> i & 1);
        values[flat] = (ones % 2 == 0) ? Rat(1) : Rat(-1);
    }
    return StepKernel(r, {Rat(1, 2), Rat(1, 2)}, std::move(values));
}

Rat density(const Hypergraph& h, const StepKernel& w, std::uint64_t term_budget) {
    if (h.uniformity() != w.uniformity())
        throw PreconditionError("density: uniformity mismatch");
    auto plan = detail::make_plan(h);
    detail::check_term_budget(w.parts(), plan.depth, term_budget);
    return detail::density_eval(plan, w.parts(), w.measures(), w.values());
}

Rat expansion_density(const Hypergraph& h, const StepKernel& w, const Rat& eps,
                      std::uint64_t term_budget) {
    if (h.uniformity() != w.uniformity())
        throw PreconditionError("expansion_density: uniformity mismatch");
    Rat total(1);
    for_each_edge_subgraph(h, [&](const Hypergraph& f, std::uint64_t mask) {
        int edge_count = 0;
        for (std::uint64_t m = mask; m; m >>= 1) edge_count += static_cast<int>(m & 1);
        total += density(f, w, term_budget) * eps.pow(static_cast<unsigned long>(edge_count));
    });
    return total;
}

std::vector<std::vector<int>> value_classes(int k, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(r), 0);
    for (;;) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[static_cast<size_t>(i)] == k - 1) i--;
        if (i < 0) break;
        int next = cur[static_cast<size_t>(i)] + 1;
        for (int j = i; j < r; j++) cur[static_cast<size_t>(j)] = next;
    }
    return out;
}

std::vector<Rat> density_gradient(const Hypergraph& h, const StepKernel& w,
                                  std::uint64_t term_budget) {
    if (h.uniformity() != w.uniformity())
        throw PreconditionError("density_gradient: uniformity mismatch");
    auto plan = detail::make_plan(h);
    detail::check_term_budget(w.parts(), plan.depth, term_budget);
    auto by_class = detail::gradient_eval(plan, w.parts(), w.measures(), w.values());
    auto classes = value_classes(w.parts(), h.uniformity());
    std::vector<Rat> out;
    out.reserve(classes.size());
    for (const auto& c : classes) {
        auto it = by_class.find(c);
        out.push_back(it == by_class.end() ? Rat(0) : it->second);
    }
    return out;
}

std::string StepKernel::to_json() const {
    nlohmann::json j;
    j["r"] = r_;
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& m : measures_) parts.push_back(m.str());
    j["parts"] = std::move(parts);
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : values_) values.push_back(v.str());
    j["values"] = std::move(values);
    return j.dump();
}

StepKernel StepKernel::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("kernel JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("r") || !j.contains("parts") || !j.contains("values"))
        throw IoError("kernel JSON: want object with r, parts, values");
    try {
        int r = j.at("r").get<int>();
        std::vector<Rat> measures, values;
        for (const auto& s : j.at("parts")) measures.push_back(Rat::from_string(s.get<std::string>()));
        for (const auto& s : j.at("values")) values.push_back(Rat::from_string(s.get<std::string>()));
        return StepKernel(r, std::move(measures), std::move(values));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("kernel JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        // covers Rat parsing and kernel shape violations alike
        throw IoError(std::string("kernel JSON: ") + e.what());
    }
}

}  // namespace poslab
