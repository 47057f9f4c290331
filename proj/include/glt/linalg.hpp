#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "glt/rational.hpp"

namespace glt {

template <class F>
using Matrix = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
template <class F>
using Vector = Eigen::Matrix<F, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<Rational>;
using MatrixI = Matrix<long long>;

// Sparse vector: (index, value) pairs, strictly increasing index, no zeros.
template <class F>
using SparseVec = std::vector<std::pair<int, F>>;

template <class F>
SparseVec<F> sparse_from_map(const std::map<int, F>& m) {
  SparseVec<F> out;
  out.reserve(m.size());
  for (const auto& [i, v] : m)
    if (!is_zero(v)) out.emplace_back(i, v);
  return out;
}

template <class F>
SparseVec<F> sparse_axpy(const SparseVec<F>& x, const F& a, const SparseVec<F>& y) {
  // x + a*y
  SparseVec<F> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, a * y[j].second);
      ++j;
    } else {
      F v = x[i].second + a * y[j].second;
      if (!is_zero(v)) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

// Incrementally built row-echelon basis of a subspace of F^n. Every stored
// row has leading coefficient 1 at a distinct pivot column. Optionally each
// row carries a tag: its expression in terms of the inserted generators.
template <class F>
class EchelonBasis {
 public:
  explicit EchelonBasis(bool track = false) : track_(track) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  int generators() const { return generators_; }
  const std::vector<SparseVec<F>>& rows() const { return rows_; }

  // Normal form of v: all entries at pivot columns eliminated. Zero iff v
  // lies in the span. If coeffs is given, accumulates v - nf = sum coeffs_k g_k.
  SparseVec<F> normal_form(const SparseVec<F>& v, SparseVec<F>* coeffs = nullptr) const {
    std::map<int, F> work;
    for (const auto& [i, x] : v) work.emplace(i, x);
    std::map<int, F> tag;
    for (auto it = work.begin(); it != work.end();) {
      auto p = pivot_.find(it->first);
      if (p == pivot_.end() || is_zero(it->second)) {
        ++it;
        continue;
      }
      const F f = it->second;
      const int col = it->first;
      const SparseVec<F>& row = rows_[p->second];
      for (std::size_t k = 1; k < row.size(); ++k) work[row[k].first] -= f * row[k].second;
      if (coeffs)
        for (const auto& [g, t] : tags_[p->second]) tag[g] += f * t;
      it = work.erase(work.find(col));
    }
    if (coeffs) *coeffs = sparse_from_map(tag);
    return sparse_from_map(work);
  }

  bool contains(const SparseVec<F>& v) const { return normal_form(v).empty(); }

  // Inserts v as the next generator; returns true if the rank increased.
  bool insert(const SparseVec<F>& v) {
    const int gen = generators_++;
    SparseVec<F> coeffs;
    SparseVec<F> nf = normal_form(v, track_ ? &coeffs : nullptr);
    if (nf.empty()) return false;
    const F inv = nf.front().second.inverse();
    for (auto& e : nf) e.second *= inv;
    pivot_.emplace(nf.front().first, static_cast<int>(rows_.size()));
    rows_.push_back(std::move(nf));
    if (track_) {
      // row = (g - sum coeffs) * inv
      SparseVec<F> tag;
      for (const auto& [g, t] : coeffs) tag.emplace_back(g, -t * inv);
      tag.emplace_back(gen, inv);
      std::sort(tag.begin(), tag.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      tags_.push_back(std::move(tag));
    }
    return true;
  }

  // Coordinates of v in terms of the inserted generators (requires tracking).
  std::optional<SparseVec<F>> solve(const SparseVec<F>& v) const {
    if (!track_) throw std::logic_error("EchelonBasis::solve requires tracking");
    SparseVec<F> coeffs;
    if (!normal_form(v, &coeffs).empty()) return std::nullopt;
    return coeffs;
  }

  bool has_pivot(int col) const { return pivot_.count(col) > 0; }

 private:
  bool track_;
  int generators_ = 0;
  std::vector<SparseVec<F>> rows_;
  std::vector<SparseVec<F>> tags_;
  std::unordered_map<int, int> pivot_;
};

template <class F>
int sparse_rank(const std::vector<SparseVec<F>>& rows) {
  EchelonBasis<F> eb;
  for (const auto& r : rows) eb.insert(r);
  return eb.rank();
}

// Basis of {x in F^ncols : r.x = 0 for all rows r}, one vector per free
// column, in increasing free-column order.
template <class F>
std::vector<SparseVec<F>> sparse_nullspace(const std::vector<SparseVec<F>>& rows, int ncols) {
  EchelonBasis<F> eb;
  for (const auto& r : rows) eb.insert(r);
  std::vector<SparseVec<F>> red = eb.rows();
  std::sort(red.begin(), red.end(), [](const auto& a, const auto& b) { return a.front().first > b.front().first; });
  std::unordered_map<int, int> pivot_row;
  for (std::size_t k = 0; k < red.size(); ++k) {
    SparseVec<F>& r = red[k];
    for (;;) {
      bool changed = false;
      for (std::size_t t = 1; t < r.size(); ++t) {
        auto p = pivot_row.find(r[t].first);
        if (p == pivot_row.end()) continue;
        r = sparse_axpy(r, F(-r[t].second), red[p->second]);
        changed = true;
        break;
      }
      if (!changed) break;
    }
    pivot_row.emplace(r.front().first, static_cast<int>(k));
  }
  std::map<int, std::vector<std::pair<int, F>>> by_free;
  for (const auto& r : red)
    for (std::size_t t = 1; t < r.size(); ++t) by_free[r[t].first].emplace_back(r.front().first, -r[t].second);
  std::vector<SparseVec<F>> basis;
  for (int j = 0; j < ncols; ++j) {
    if (pivot_row.count(j)) continue;
    SparseVec<F> v;
    auto it = by_free.find(j);
    if (it != by_free.end()) v = it->second;
    v.emplace_back(j, F(1));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class Derived>
std::vector<SparseVec<typename Derived::Scalar>> dense_rows(const Eigen::MatrixBase<Derived>& m) {
  using F = typename Derived::Scalar;
  std::vector<SparseVec<F>> rows(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_zero(F(m(i, j)))) rows[i].emplace_back(static_cast<int>(j), m(i, j));
  return rows;
}

template <class Derived>
int rank(const Eigen::MatrixBase<Derived>& m) {
  return sparse_rank(dense_rows(m));
}

// Columns span the right nullspace of m.
template <class Derived>
Matrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
  using F = typename Derived::Scalar;
  auto basis = sparse_nullspace(dense_rows(m), static_cast<int>(m.cols()));
  Matrix<F> out = Matrix<F>::Zero(m.cols(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (const auto& [i, v] : basis[k]) out(i, static_cast<Eigen::Index>(k)) = v;
  return out;
}

// Smith normal form over the integers: returns the diagonal D and unimodular
// P, Q with P * m * Q = D.
struct SmithForm {
  MatrixI d;
  MatrixI p;
  MatrixI q;
};

SmithForm smith_normal_form(const MatrixI& m);

}  // namespace glt
