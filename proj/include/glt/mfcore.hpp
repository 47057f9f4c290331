#pragma once

#include <json.hpp>
#include <optional>
#include <vector>

#include "glt/graded_ring.hpp"
#include "glt/linalg.hpp"
#include "glt/polynomial.hpp"

namespace glt {

struct NotComposable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CalibrationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidFactorization : std::logic_error {
  using std::logic_error::logic_error;
};

// Graded matrix factorization of a potential W: phi: F1 -> F0 and
// psi: F0 -> F1(c) with phi*psi = W*id and psi*phi = W*id. F0 has generators
// in degrees deg0, F1 in degrees deg1; entry phi(i,j) has degree
// deg1[j] - deg0[i], entry psi(j,i) has degree deg0[i] - deg1[j] + c.
// The represented module is cok(phi).
struct GradedMF {
  std::vector<GLElement> deg0;
  std::vector<GLElement> deg1;
  PolyMatrix phi;
  PolyMatrix psi;
  Polynomial potential;

  int size() const { return static_cast<int>(deg0.size()); }
  // Throws InvalidFactorization on a shape, degree or identity failure.
  void validate(const GLContext& ctx) const;
};

GradedMF koszul_mf(const GLContext& ctx, const Monomial& u, const Monomial& v);
GradedMF tensor(const GLContext& ctx, const GradedMF& a, const GradedMF& b);
GradedMF twist(const GradedMF& m, const GLElement& x);
// [1]: (phi, psi) -> (-psi, -phi) with F0' = F1(c), F1' = F0.
GradedMF suspend(const GLContext& ctx, const GradedMF& m);
GradedMF suspend_n(const GLContext& ctx, const GradedMF& m, int n);
GradedMF direct_sum(const GradedMF& a, const GradedMF& b);
// R(x) as the 1x1 factorization (f | 1) with generator in degree -x.
GradedMF free_mf(const GradedRing& ring, const GLElement& x);

// Tensor of the Koszul factorizations (X_i^{l_i} | X_i^{p_i - l_i}), untwisted.
GradedMF koszul_tensor(const GradedRing& ring, const GLElement& ell);

struct Calibration {
  GLElement twist;
  bool cokernel_of_phi = true;
  int candidates_tested = 0;
  // number of (twist, parity) pairs meeting the targets; all isomorphic
  int matches = 0;
};

// Finds the unique (twist, parity) for which the Koszul tensor reproduces the
// line-bundle data forced by the defining sequence of U^l.
Calibration calibrate_extension_bundle(const GradedRing& ring, const GLElement& ell);
// U^l for s <= l <= s + delta, calibrated (memoized per ring and l).
GradedMF extension_bundle_mf(const GradedRing& ring, const GLElement& ell);

// Degree-preserving morphism: a: F0^M -> F0^N, b: F1^M -> F1^N,
// a*phi_M = phi_N*b.
struct MFMorphism {
  PolyMatrix a;
  PolyMatrix b;
};

MFMorphism identity_morphism(const GradedMF& m);
// "f1 then f2": (a2*a1, b2*b1).
MFMorphism compose(const MFMorphism& f1, const MFMorphism& f2);
bool is_morphism(const GradedMF& src, const GradedMF& dst, const MFMorphism& f);
// Mapping cone: N -> cone -> M[1] completes M -> N to a triangle.
GradedMF cone(const GLContext& ctx, const GradedMF& src, const GradedMF& dst, const MFMorphism& f);

enum class HomLevel { Module, Stable };

// Linear systems for degree-0 morphisms between two factorizations.
class HomSystem {
 public:
  HomSystem(const GradedRing& ring, const GradedMF& src, const GradedMF& dst);

  int unknowns() const { return unknowns_; }
  int a_unknowns() const { return a_unknowns_; }
  int h0_unknowns() const { return h0_unknowns_; }
  int h1_unknowns() const { return h1_unknowns_; }

  // Rows of the equations a*phi_M - phi_N*b = 0 over the unknown coefficients.
  std::vector<SparseVec<Rational>> equations() const;
  // Images of the null-homotopic generators: (phi_N h0, h0 phi_M) and, when
  // stable, (h1 psi_M, psi_N h1).
  std::vector<SparseVec<Rational>> null_generators(HomLevel level) const;

  SparseVec<Rational> pack(const MFMorphism& f) const;
  MFMorphism unpack(const SparseVec<Rational>& v) const;

 private:
  struct Block {
    int rows = 0, cols = 0;
    std::vector<int> offset;
    std::vector<const MonomialSpace*> spaces;
    int entry(int i, int j) const { return i * cols + j; }
  };
  Block make_block(const std::vector<GLElement>& row_deg, const std::vector<GLElement>& col_deg, int base,
                   const GLElement& shift) const;

  const GradedRing* ring_;
  const GradedMF* src_;
  const GradedMF* dst_;
  Block a_, b_, eq_, h0_, h1_;
  int unknowns_ = 0, a_unknowns_ = 0, eq_rows_ = 0, h0_unknowns_ = 0, h1_unknowns_ = 0;
};

int module_hom_dim(const GradedRing& ring, const GradedMF& src, const GradedMF& dst);
int stable_hom_dim(const GradedRing& ring, const GradedMF& src, const GradedMF& dst);
int hom_dim(const GradedRing& ring, const GradedMF& src, const GradedMF& dst, HomLevel level);

enum class FreeDirection { FromFree, ToFree };
// dim Hom(R(x), M) or dim Hom(M, R(x)) by rank counting on the free modules.
int free_hom_dim(const GradedRing& ring, const GLElement& x, const GradedMF& m, FreeDirection dir);

// Degree-0 Hom space with an explicit basis of morphism representatives.
class MFHomSpace {
 public:
  MFHomSpace(const GradedRing& ring, const GradedMF& src, const GradedMF& dst, HomLevel level);
  MFHomSpace(const MFHomSpace&) = delete;
  MFHomSpace& operator=(const MFHomSpace&) = delete;

  HomLevel level() const { return level_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const MFMorphism& basis(int k) const { return basis_[k]; }
  // Coordinates of the class of f; throws if f is not a morphism src -> dst.
  std::vector<Rational> coordinates(const MFMorphism& f) const;
  bool is_zero(const MFMorphism& f) const;

 private:
  GradedMF src_, dst_;
  HomSystem system_;
  HomLevel level_;
  EchelonBasis<Rational> null_;
  EchelonBasis<Rational> quotient_{true};
  std::vector<int> generator_to_basis_;
  std::vector<MFMorphism> basis_;
};

// Finite-dimensional algebra of degree-0 morphisms between summands. Basis
// elements live in blocks Hom(src, dst); product(a, b) is "a then b".
struct EndAlgebra {
  int vertices = 0;
  std::vector<int> src;
  std::vector<int> dst;
  std::vector<std::vector<int>> block_start;  // [i][j] -> first basis index of Hom(i, j)
  std::vector<std::vector<int>> block_dim;
  // table[a][b] for dst[a] == src[b]; empty otherwise.
  std::vector<std::vector<SparseVec<Rational>>> table;
  // identity of summand i in basis coordinates
  std::vector<SparseVec<Rational>> identity;

  int dim() const { return static_cast<int>(src.size()); }
  SparseVec<Rational> multiply(const SparseVec<Rational>& x, const SparseVec<Rational>& y) const;
};

// Isomorphism test for factorizations with local endomorphism rings: some
// composite g*f of basis morphisms has nonzero trace in End(M) (char 0).
bool isomorphic(const GradedRing& ring, const GradedMF& m, const GradedMF& n);

EndAlgebra end_algebra(const GradedRing& ring, const std::vector<GradedMF>& summands, HomLevel level);

nlohmann::json to_json(const GradedMF& m);
GradedMF mf_from_json(const GLContext& ctx, const nlohmann::json& j);

}  // namespace glt
