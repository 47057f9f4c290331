#include "glt/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace glt {

std::string Monomial::str() const {
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < 4; ++i) {
    if (e[i] == 0) continue;
    if (any) os << '*';
    os << 'X' << (i + 1);
    if (e[i] > 1) os << '^' << e[i];
    any = true;
  }
  if (!any) os << '1';
  return os.str();
}

Polynomial::Polynomial(const Monomial& m, const Rational& c) {
  if (!c.is_zero()) terms_.emplace_back(m, c);
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  Polynomial out;
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().first == t.first) {
      out.terms_.back().second += t.second;
      if (out.terms_.back().second.is_zero()) out.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

std::optional<GLElement> Polynomial::degree(const GLContext& ctx) const {
  if (terms_.empty()) return std::nullopt;
  const GLElement d = terms_.front().first.degree(ctx);
  for (const auto& t : terms_)
    if (t.first.degree(ctx) != d) throw DegreeMismatch("polynomial is not homogeneous: " + str());
  return d;
}

bool Polynomial::is_homogeneous(const GLContext& ctx) const {
  try {
    degree(ctx);
    return true;
  } catch (const DegreeMismatch&) {
    return false;
  }
}

namespace {

std::vector<Polynomial::Term> merge(const std::vector<Polynomial::Term>& a, const std::vector<Polynomial::Term>& b,
                                    bool subtract) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, subtract ? -b[j].second : b[j].second);
      ++j;
    } else {
      Rational c = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!c.is_zero()) out.emplace_back(a[i].first, c);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial out = a;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1 && b.size() == 1) {
    return Polynomial(a.terms_[0].first * b.terms_[0].first, a.terms_[0].second * b.terms_[0].second);
  }
  std::vector<Polynomial::Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) terms.emplace_back(ma * mb, ca * cb);
  return Polynomial::from_terms(std::move(terms));
}

Polynomial operator*(const Rational& c, const Polynomial& a) {
  if (c.is_zero()) return {};
  Polynomial out = a;
  for (auto& t : out.terms_) t.second *= c;
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit_monomial = m == Monomial{};
    if (!mag.is_one() || unit_monomial) {
      os << mag;
      if (!unit_monomial) os << '*';
    }
    if (!unit_monomial) os << m.str();
  }
  return os.str();
}

PolyMatrix PolyMatrix::identity(int n) { return scalar(n, Polynomial::constant(1)); }

PolyMatrix PolyMatrix::scalar(int n, const Polynomial& p) {
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = p;
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("PolyMatrix product shape mismatch");
  PolyMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Polynomial& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
    }
  return out;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("PolyMatrix sum shape mismatch");
  PolyMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) { return a + (-b); }

PolyMatrix operator-(const PolyMatrix& a) {
  PolyMatrix out = a;
  for (auto& p : out.data_) p = -p;
  return out;
}

PolyMatrix operator*(const Rational& c, const PolyMatrix& a) {
  PolyMatrix out = a;
  for (auto& p : out.data_) p = c * p;
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

PolyMatrix PolyMatrix::kron(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

PolyMatrix PolyMatrix::blocks(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c, const PolyMatrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
    throw std::invalid_argument("PolyMatrix block shape mismatch");
  PolyMatrix out(a.rows() + c.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  for (int i = 0; i < c.rows(); ++i) {
    for (int j = 0; j < c.cols(); ++j) out(a.rows() + i, j) = c(i, j);
    for (int j = 0; j < d.cols(); ++j) out(a.rows() + i, c.cols() + j) = d(i, j);
  }
  return out;
}

}  // namespace glt
