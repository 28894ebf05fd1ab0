#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

namespace poslab {

// Exact arbitrary-precision rational. Invariant: always canonical
// (reduced, positive denominator), so equality is plain value equality.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(long n) : q_(static_cast<long>(n)) {}  // NOLINT: implicit by design
    Rat(long num, long den);
    explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // Accepts "p", "-p", "p/q" (optional sign on p); base 10 only.
    static Rat from_string(const std::string& s);
    // 2^e for any integer e (negative allowed).
    static Rat pow2(long e);

    std::string str() const { return q_.get_str(); }
    double to_double() const { return q_.get_d(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    Rat abs() const;
    Rat pow(unsigned long e) const;
    Rat inv() const;

    const mpq_class& raw() const { return q_; }

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
    friend Rat operator-(const Rat& a) { Rat r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    mpq_class q_;
};

}  // namespace poslab
