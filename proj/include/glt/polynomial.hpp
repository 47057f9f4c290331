#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glt/glgroup.hpp"
#include "glt/rational.hpp"

namespace glt {

struct DegreeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Monomial {
  std::array<int, 4> e{};

  std::uint64_t key() const {
    return static_cast<std::uint64_t>(e[0]) | static_cast<std::uint64_t>(e[1]) << 16 |
           static_cast<std::uint64_t>(e[2]) << 32 | static_cast<std::uint64_t>(e[3]) << 48;
  }
  GLElement degree(const GLContext& ctx) const { return ctx.element({e[0], e[1], e[2], e[3]}, 0); }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    return {{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]}};
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }
  std::string str() const;
};

inline Monomial monomial_power(int var, int exp) {
  Monomial m;
  m.e[var] = exp;
  return m;
}

// Sparse polynomial over the rationals with terms sorted by exponent vector.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(const Monomial& m, const Rational& c = Rational(1));
  static Polynomial constant(const Rational& c) { return Polynomial(Monomial{}, c); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Common L-degree of all terms; nullopt for the zero polynomial.
  std::optional<GLElement> degree(const GLContext& ctx) const;
  bool is_homogeneous(const GLContext& ctx) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string str() const;

  // Builds from unsorted terms, merging duplicates and dropping zeros.
  static Polynomial from_terms(std::vector<Term> terms);

 private:
  std::vector<Term> terms_;
};

// Dense matrix of polynomials (row-major).
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Polynomial& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Polynomial& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  static PolyMatrix identity(int n);
  static PolyMatrix scalar(int n, const Polynomial& p);
  bool is_zero() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a);
  friend PolyMatrix operator*(const Rational& c, const PolyMatrix& a);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

  PolyMatrix transpose() const;
  // Kronecker product a ⊗ b.
  static PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b);
  // [[a, b], [c, d]]
  static PolyMatrix blocks(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c, const PolyMatrix& d);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Polynomial> data_;
};

}  // namespace glt
