#include "poslab/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace poslab {

Rat::Rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat Rat::from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rat: empty string");
    auto slash = s.find('/');
    mpz_class num, den;
    std::string num_part = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den_part = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (num_part.empty() || den_part.empty() ||
        num.set_str(num_part, 10) != 0 || den.set_str(den_part, 10) != 0)
        throw std::invalid_argument("Rat: cannot parse '" + s + "'");
    if (den == 0) throw std::invalid_argument("Rat: zero denominator in '" + s + "'");
    Rat r;
    r.q_ = mpq_class(num) / mpq_class(den);
    r.q_.canonicalize();
    return r;
}

Rat Rat::pow2(long e) {
    mpz_class big = 1;
    mpz_mul_2exp(big.get_mpz_t(), big.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
    Rat r;
    r.q_ = (e < 0) ? mpq_class(1) / mpq_class(big) : mpq_class(big);
    r.q_.canonicalize();
    return r;
}

Rat Rat::abs() const {
    Rat r;
    r.q_ = ::abs(q_);
    return r;
}

Rat Rat::pow(unsigned long e) const {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q_.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q_.get_den().get_mpz_t(), e);
    Rat r;
    r.q_ = mpq_class(num) / mpq_class(den);
    r.q_.canonicalize();
    return r;
}

Rat Rat::inv() const {
    if (is_zero()) throw std::invalid_argument("Rat: inverse of zero");
    Rat r;
    r.q_ = 1 / q_;
    return r;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::invalid_argument("Rat: division by zero");
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.q_; }

}  // namespace poslab
