#include "glt/graded_ring.hpp"

namespace glt {

int MonomialSpace::index_of(const Monomial& m) const {
  auto it = index.find(m.key());
  if (it == index.end()) throw DegreeMismatch("monomial " + m.str() + " not of degree " + degree.str());
  return it->second;
}

long long binomial(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

GradedRing::GradedRing(const GLContext& ctx) : ctx_(ctx) {
  for (int i = 1; i <= 4; ++i) f_ += x_power(i, ctx.weight(i - 1));
}

const MonomialSpace& GradedRing::space(const GLElement& x) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(x);
  if (it != cache_.end()) return *it->second;
  auto sp = std::make_unique<MonomialSpace>();
  sp->degree = x;
  if (x.l >= 0) {
    const auto& p = ctx_.weights();
    for (int k0 = 0; k0 <= x.l; ++k0)
      for (int k1 = 0; k0 + k1 <= x.l; ++k1)
        for (int k2 = 0; k0 + k1 + k2 <= x.l; ++k2) {
          const int k3 = x.l - k0 - k1 - k2;
          Monomial m{{x.lam[0] + p[0] * k0, x.lam[1] + p[1] * k1, x.lam[2] + p[2] * k2, x.lam[3] + p[3] * k3}};
          sp->index.emplace(m.key(), static_cast<int>(sp->basis.size()));
          sp->basis.push_back(m);
        }
  }
  const MonomialSpace& ref = *sp;
  cache_.emplace(x, std::move(sp));
  return ref;
}

int GradedRing::dim_S(const GLElement& x) const { return x.l < 0 ? 0 : static_cast<int>(binomial(x.l + 3, 3)); }

int GradedRing::dim_R(const GLElement& x) const { return glt::dim_R(x); }

MultMatrix GradedRing::mult_matrix(const Polynomial& g, const GLElement& src_degree) const {
  const auto gdeg = g.degree(ctx_);
  if (!gdeg) throw DegreeMismatch("multiplication by the zero polynomial has no degree");
  const MonomialSpace& src = space(src_degree);
  const MonomialSpace& dst = space(src_degree + *gdeg);
  MatrixQ m = MatrixQ::Zero(dst.dim(), src.dim());
  for (int j = 0; j < src.dim(); ++j)
    for (const auto& [mon, c] : g.terms()) m(dst.index_of(mon * src.basis[j]), j) += c;
  return {&src, &dst, std::move(m)};
}

int GradedRing::mult_rank(const Polynomial& g, const GLElement& src_degree, bool in_R) const {
  const MultMatrix mm = mult_matrix(g, src_degree);
  if (!in_R) return rank(mm.matrix);
  // Image of R_x in R_{x+d}: (g S_x + f S_{x+d-c}) / f S_{x+d-c}.
  const GLElement target = mm.dst->degree;
  const GLElement below = target - ctx_.c();
  std::vector<SparseVec<Rational>> cols;
  EchelonBasis<Rational> fimage;
  if (space(below).dim() > 0) {
    const MultMatrix fm = mult_matrix(f_, below);
    for (Eigen::Index j = 0; j < fm.matrix.cols(); ++j) {
      SparseVec<Rational> v;
      for (Eigen::Index i = 0; i < fm.matrix.rows(); ++i)
        if (!fm.matrix(i, j).is_zero()) v.emplace_back(static_cast<int>(i), fm.matrix(i, j));
      fimage.insert(v);
    }
  }
  const int base = fimage.rank();
  for (Eigen::Index j = 0; j < mm.matrix.cols(); ++j) {
    SparseVec<Rational> v;
    for (Eigen::Index i = 0; i < mm.matrix.rows(); ++i)
      if (!mm.matrix(i, j).is_zero()) v.emplace_back(static_cast<int>(i), mm.matrix(i, j));
    fimage.insert(v);
  }
  return fimage.rank() - base;
}

int dim_R(const GLElement& x) { return x.l < 0 ? 0 : static_cast<int>(binomial(x.l + 2, 2)); }

int line_hom(const GLElement& x, const GLElement& y) { return dim_R(y - x); }

int line_ext1(const GLElement&, const GLElement&) { return 0; }

int line_ext2(const GLContext& ctx, const GLElement& x, const GLElement& y) { return dim_R(x - y + ctx.w()); }

}  // namespace glt
