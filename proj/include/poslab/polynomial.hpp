#pragma once

#include <vector>

#include "poslab/rational.hpp"

namespace poslab {

// Univariate polynomial with exact rational coefficients, index = degree.
// Trailing zeros are trimmed; the zero polynomial has degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rat> coefficients);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat>& coefficients() const { return c_; }
    Rat coefficient(int i) const;

    Rat eval(const Rat& x) const;  // Horner
    Polynomial derivative() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial times_x() const;  // multiply by x
    Polynomial scaled(const Rat& s) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<Rat> c_;
};

}  // namespace poslab
