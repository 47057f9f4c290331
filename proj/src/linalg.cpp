#include <cstdlib>
#include <numeric>

#include "glt/linalg.hpp"

namespace glt {

namespace {

void swap_rows(MatrixI& a, Eigen::Index i, Eigen::Index j) { a.row(i).swap(a.row(j)); }
void swap_cols(MatrixI& a, Eigen::Index i, Eigen::Index j) { a.col(i).swap(a.col(j)); }

}  // namespace

SmithForm smith_normal_form(const MatrixI& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  MatrixI d = m;
  MatrixI p = MatrixI::Identity(rows, rows);
  MatrixI q = MatrixI::Identity(cols, cols);
  const Eigen::Index n = std::min(rows, cols);
  for (Eigen::Index t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the remaining block becomes the pivot.
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j)
          if (d(i, j) != 0 && (pi < 0 || std::llabs(d(i, j)) < std::llabs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) break;
      swap_rows(d, t, pi);
      swap_rows(p, t, pi);
      swap_cols(d, t, pj);
      swap_cols(q, t, pj);
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        const long long k = d(i, t) / d(t, t);
        if (k != 0) {
          d.row(i) -= k * d.row(t);
          p.row(i) -= k * p.row(t);
        }
        if (d(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        const long long k = d(t, j) / d(t, t);
        if (k != 0) {
          d.col(j) -= k * d.col(t);
          q.col(j) -= k * q.col(t);
        }
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide every remaining entry.
      Eigen::Index bad_i = -1;
      for (Eigen::Index i = t + 1; i < rows && bad_i < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_i = i;
            break;
          }
      if (bad_i < 0) break;
      d.row(t) += d.row(bad_i);
      p.row(t) += p.row(bad_i);
    }
    if (d(t, t) < 0) {
      d.row(t) *= -1;
      p.row(t) *= -1;
    }
  }
  return {d, p, q};
}

}  // namespace glt
