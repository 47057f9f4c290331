#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "glt/glgroup.hpp"
#include "glt/linalg.hpp"
#include "glt/polynomial.hpp"

namespace glt {

// Monomial basis of the graded piece S_x of S = k[X1..X4].
struct MonomialSpace {
  GLElement degree;
  std::vector<Monomial> basis;
  std::unordered_map<std::uint64_t, int> index;

  int dim() const { return static_cast<int>(basis.size()); }
  int index_of(const Monomial& m) const;
};

// Multiplication by a homogeneous polynomial between graded pieces of S.
struct MultMatrix {
  const MonomialSpace* src;
  const MonomialSpace* dst;
  MatrixQ matrix;  // dim(dst) x dim(src)
};

long long binomial(long long n, long long k);

// The hypersurface R = S/(f), f = X1^2 + X2^2 + X3^p3 + X4^p4 (with general
// weights f = sum X_i^{p_i}), together with cached monomial bases.
class GradedRing {
 public:
  explicit GradedRing(const GLContext& ctx);

  const GLContext& context() const { return ctx_; }
  const Polynomial& f() const { return f_; }
  Polynomial x_power(int i, int e) const { return Polynomial(monomial_power(i - 1, e)); }

  // Cached; references stay valid for the ring's lifetime.
  const MonomialSpace& space(const GLElement& x) const;

  int dim_S(const GLElement& x) const;
  int dim_R(const GLElement& x) const;

  MultMatrix mult_matrix(const Polynomial& g, const GLElement& src_degree) const;
  // Rank of multiplication by g on S_x (in_R = false) or on R_x.
  int mult_rank(const Polynomial& g, const GLElement& src_degree, bool in_R) const;

 private:
  GLContext ctx_;
  Polynomial f_;
  mutable std::mutex mu_;
  mutable std::unordered_map<GLElement, std::unique_ptr<MonomialSpace>, GLElementHash> cache_;
};

// Closed forms for line bundles on the GL projective plane.
int dim_R(const GLElement& x);
int line_hom(const GLElement& x, const GLElement& y);
int line_ext1(const GLElement& x, const GLElement& y);
int line_ext2(const GLContext& ctx, const GLElement& x, const GLElement& y);

}  // namespace glt
