#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace glt {

// Exact rational scalar. Thin value wrapper over mpq_class so that every
// arithmetic operator returns a Rational (no GMP expression templates leak
// into Eigen).
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpq_class& q) : q_(q) {}

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  int sign() const { return sgn(q_); }
  Rational inverse() const;
  std::string str() const { return q_.get_str(); }
  double to_double() const { return q_.get_d(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) { q_ /= o.q_; return *this; }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Parses "a" or "a/b".
Rational parse_rational(const std::string& text);

// Prime field Z/pZ with p = 2^31 - 1. Used as an independent elimination
// route in tests; ranks over it bound the rational rank from below.
class ModP {
 public:
  static constexpr std::uint64_t kPrime = 2147483647ULL;

  ModP() = default;
  ModP(long v) : v_(reduce(v)) {}  // NOLINT(google-explicit-constructor)
  ModP(int v) : v_(reduce(v)) {}   // NOLINT(google-explicit-constructor)
  explicit ModP(const Rational& r);

  std::uint64_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  ModP inverse() const;

  ModP& operator+=(const ModP& o) { v_ = (v_ + o.v_) % kPrime; return *this; }
  ModP& operator-=(const ModP& o) { v_ = (v_ + kPrime - o.v_) % kPrime; return *this; }
  ModP& operator*=(const ModP& o) { v_ = (v_ * o.v_) % kPrime; return *this; }
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend ModP operator-(const ModP& a) { return ModP() - a; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }
  friend bool operator!=(const ModP& a, const ModP& b) { return a.v_ != b.v_; }

 private:
  static std::uint64_t reduce(long v) {
    long r = v % static_cast<long>(kPrime);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(kPrime) : r);
  }
  std::uint64_t v_ = 0;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(const ModP& r) { return r.is_zero(); }
inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace glt

namespace Eigen {

template <>
struct NumTraits<glt::Rational> : GenericNumTraits<glt::Rational> {
  typedef glt::Rational Real;
  typedef glt::Rational NonInteger;
  typedef glt::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 10,
    MulCost = 20
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<glt::ModP> : GenericNumTraits<glt::ModP> {
  typedef glt::ModP Real;
  typedef glt::ModP NonInteger;
  typedef glt::ModP Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 1,
    MulCost = 2
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
