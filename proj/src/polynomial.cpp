#include "poslab/polynomial.hpp"

#include "poslab/errors.hpp"

namespace poslab {

Polynomial::Polynomial(std::vector<Rat> coefficients) : c_(std::move(coefficients)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rat Polynomial::coefficient(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
    return c_[static_cast<size_t>(i)];
}

Rat Polynomial::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    std::vector<Rat> d;
    for (size_t i = 1; i < c_.size(); i++) d.push_back(Rat(static_cast<long>(i)) * c_[i]);
    return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (size_t i = 0; i < o.c_.size(); i++) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (size_t i = 0; i < o.c_.size(); i++) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return Polynomial();
    std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); i++)
        for (size_t j = 0; j < b.c_.size(); j++) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::times_x() const {
    if (c_.empty()) return Polynomial();
    std::vector<Rat> out;
    out.reserve(c_.size() + 1);
    out.push_back(Rat(0));
    out.insert(out.end(), c_.begin(), c_.end());
    return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(const Rat& s) const {
    std::vector<Rat> out = c_;
    for (auto& c : out) c *= s;
    return Polynomial(std::move(out));
}

}  // namespace poslab
