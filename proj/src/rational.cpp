#include "glt/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace glt {

Rational::Rational(long num, long den) : q_(num, den) {
  if (den == 0) throw std::domain_error("zero denominator");
  q_.canonicalize();
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rational(mpq_class(1 / q_));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  q.canonicalize();
  return Rational(q);
}

ModP::ModP(const Rational& r) {
  mpz_class num = r.value().get_num() % static_cast<unsigned long>(kPrime);
  mpz_class den = r.value().get_den() % static_cast<unsigned long>(kPrime);
  if (num < 0) num += static_cast<unsigned long>(kPrime);
  ModP n(static_cast<long>(num.get_si()));
  ModP d(static_cast<long>(den.get_si()));
  *this = n / d;
}

ModP ModP::inverse() const {
  if (v_ == 0) throw std::domain_error("inverse of zero");
  std::uint64_t result = 1, base = v_, e = kPrime - 2;
  while (e > 0) {
    if (e & 1) result = (result * base) % kPrime;
    base = (base * base) % kPrime;
    e >>= 1;
  }
  ModP out;
  out.v_ = result;
  return out;
}

}  // namespace glt
