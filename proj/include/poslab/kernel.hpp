#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poslab/hypergraph.hpp"
#include "poslab/rational.hpp"

namespace poslab {

inline constexpr std::uint64_t kDefaultTermBudget = 1'000'000'000ULL;

// k-part step kernel of arity r: part measures m_1..m_k (positive, summing
// to 1) and a symmetric value tensor stored flat on ordered tuples,
// row-major, first coordinate slowest. Symmetry is enforced at construction.
class StepKernel {
public:
    StepKernel(int r, std::vector<Rat> measures, std::vector<Rat> values);

    static StepKernel constant(int r, const Rat& value);
    // Values given per nondecreasing tuple, in the order of value_classes(k,r).
    static StepKernel from_class_values(int r, std::vector<Rat> measures,
                                        const std::vector<Rat>& class_values);

    int uniformity() const { return r_; }
    int parts() const { return k_; }
    const std::vector<Rat>& measures() const { return measures_; }
    const std::vector<Rat>& values() const { return values_; }
    const Rat& value(const std::vector<int>& tuple) const;
    std::size_t flat_index(const std::vector<int>& tuple) const;

    // Graphon predicate: all values within [0,1].
    bool is_graphon() const;

    StepKernel perturb(const Rat& eps) const;  // w -> 1 + eps*w
    StepKernel center(const Rat& p) const;     // w -> w - p

    std::string to_json() const;
    static StepKernel from_json(const std::string& text);

    friend bool operator==(const StepKernel& a, const StepKernel& b) {
        return a.r_ == b.r_ && a.measures_ == b.measures_ && a.values_ == b.values_;
    }

private:
    int r_;
    int k_;
    std::vector<Rat> measures_;
    std::vector<Rat> values_;
};

StepKernel tensor(const StepKernel& w, const StepKernel& u);

// 0/1 kernel of a hypergraph: v(g) equal parts, value 1 exactly on tuples of
// distinct parts forming an edge.
StepKernel kernel_of(const Hypergraph& g);

// Two parts of measure 1/2 labelled +1/-1; value = product of labels. Its
// density is the all-even-degrees indicator.
StepKernel parity_kernel(int r);

// Exact homomorphism density t_H(W).
Rat density(const Hypergraph& h, const StepKernel& w,
            std::uint64_t term_budget = kDefaultTermBudget);

// 1 + sum over non-empty edge subsets F of t_F(w) * eps^e(F). Must agree
// with density(h, w.perturb(eps)).
Rat expansion_density(const Hypergraph& h, const StepKernel& w, const Rat& eps,
                      std::uint64_t term_budget = kDefaultTermBudget);

// Nondecreasing k-ary tuples of length r in lexicographic order: the
// symmetry classes of the value tensor.
std::vector<std::vector<int>> value_classes(int k, int r);

// Exact partials of density with respect to each symmetry class value,
// aligned with value_classes(w.parts(), r).
std::vector<Rat> density_gradient(const Hypergraph& h, const StepKernel& w,
                                  std::uint64_t term_budget = kDefaultTermBudget);

}  // namespace poslab
