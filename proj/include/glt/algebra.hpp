#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "glt/linalg.hpp"
#include "glt/mfcore.hpp"

namespace glt {

struct NotBasic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Basic finite-dimensional algebra given by structure constants on a basis
// adapted to a complete set of primitive orthogonal idempotents e_0..e_{n-1}:
// basis element b lies in e_src(b) A e_dst(b) and product(a, b) = "a then b".
class FiniteAlgebra {
 public:
  FiniteAlgebra(int vertices, std::vector<int> src, std::vector<int> dst,
                std::vector<std::vector<SparseVec<Rational>>> table);
  static FiniteAlgebra from_end(const EndAlgebra& e);

  int vertices() const { return vertices_; }
  int dim() const { return static_cast<int>(src_.size()); }
  int src(int b) const { return src_[b]; }
  int dst(int b) const { return dst_[b]; }
  SparseVec<Rational> product(const SparseVec<Rational>& x, const SparseVec<Rational>& y) const;

  // Jacobson radical as the kernel of the trace form (char 0).
  const std::vector<SparseVec<Rational>>& radical() const { return radical_; }
  // Throws NotBasic if some e_i A e_i / e_i J e_i has dimension != 1 or two
  // vertices have isomorphic projectives.
  void check_basic() const;

  // [i][j] = dim e_i (J/J^2) e_j, the arrows i -> j.
  std::vector<std::vector<int>> arrows() const;
  // [i][j] = number of minimal relations from i to j (= dim Ext^2(S_i, S_j)).
  std::vector<std::vector<int>> relations() const;

  struct Resolution {
    // terms[k][j] = multiplicity of P_j in the k-th term
    std::vector<std::vector<int>> terms;
    bool complete = false;
  };
  // Minimal projective resolution of the simple top of P_i, up to length cap.
  Resolution resolve_simple(int i, int cap) const;
  // nullopt when some simple is not resolved within cap steps.
  std::optional<int> global_dimension(int cap = 6) const;

 private:
  SparseVec<Rational> basis_product(int a, int b) const;

  int vertices_;
  std::vector<int> src_, dst_;
  std::vector<std::vector<SparseVec<Rational>>> table_;
  std::vector<SparseVec<Rational>> radical_;
};

}  // namespace glt
