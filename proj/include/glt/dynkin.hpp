#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "glt/glgroup.hpp"
#include "glt/linalg.hpp"
#include "glt/sheafhom.hpp"

namespace glt {

struct TypeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedWeightType : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct LabelOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class DynkinKind { A, D4 };

// Representation of the Dynkin quiver: a vector space per vertex and a
// matrix per arrow (dims[dst] x dims[src]).
struct QuiverRep {
  std::vector<int> dims;
  std::vector<MatrixQ> maps;
};

// Indecomposable object of D^b(mod kQ): a module (by positive root) in
// cohomological degree -shift.
struct DynkinObject {
  DynkinKind kind = DynkinKind::A;
  int rank = 0;
  std::vector<int> root;
  int shift = 0;

  friend bool operator==(const DynkinObject& a, const DynkinObject& b) {
    return a.kind == b.kind && a.rank == b.rank && a.root == b.root && a.shift == b.shift;
  }
  friend bool operator<(const DynkinObject& a, const DynkinObject& b) {
    if (a.shift != b.shift) return a.shift < b.shift;
    return a.root < b.root;
  }
  std::string str() const;
};

struct TiltingWitness {
  int src = 0;
  int dst = 0;
  int shift = 0;
  int dim = 0;
};

struct TiltingVerdict {
  bool rigid = true;
  bool count_ok = true;
  std::optional<int> gldim;
  std::vector<TiltingWitness> witnesses;
  bool tilting() const { return rigid && count_ok && gldim && *gldim <= 2; }
};

// D^b(mod kQ) for Q linear A_n (arrows v+1 -> v, so P_i has support [0, i])
// or D4 with three arms (vertices 0, 1, 2) pointing into the center 3.
class DynkinModel {
 public:
  static DynkinModel type_a(int n);
  static DynkinModel type_d4();

  DynkinKind kind() const { return kind_; }
  int rank() const { return n_; }
  const std::vector<std::pair<int, int>>& arrows() const { return arrows_; }
  const std::vector<std::vector<int>>& roots() const { return roots_; }
  const QuiverRep& rep(int module) const { return reps_[module]; }
  int module_of(const std::vector<int>& root) const;

  DynkinObject object(int module, int shift = 0) const;
  DynkinObject projective(int v, int shift = 0) const;
  // tau^{-k} P_v for any integer k.
  DynkinObject mesh_object(int k, int v) const;
  // Inverse of mesh_object: (k, v) with x = tau^{-k} P_v.
  std::pair<int, int> mesh_coordinates(const DynkinObject& x) const;

  bool is_projective(int module) const;
  bool is_injective(int module) const;
  int euler_form(const std::vector<int>& x, const std::vector<int>& y) const;
  std::vector<int> coxeter(const std::vector<int>& x) const;
  std::vector<int> coxeter_inverse(const std::vector<int>& x) const;

  int module_hom(int m, int n) const;
  // Basis of Hom(M, N) as per-vertex matrices.
  std::vector<std::vector<MatrixQ>> module_hom_basis(int m, int n) const;
  int module_ext1(int m, int n) const;

  int hom_dim(const DynkinObject& a, const DynkinObject& b) const;
  DynkinObject tau(const DynkinObject& a) const;
  DynkinObject tau_inverse(const DynkinObject& a) const;
  DynkinObject shift1(const DynkinObject& a, int n = 1) const;
  // The (-w) twist: tau^{-1} then [1].
  DynkinObject minus_w(const DynkinObject& a, int k = 1) const;

  // Rigidity over all shift differences, summand count against the rank, and
  // gldim End(V). With all summands in one shift the algebra is composed from
  // the representations; otherwise gldim_provider supplies it.
  TiltingVerdict is_stable_tilting(const std::vector<DynkinObject>& summands,
                                   const std::function<std::optional<int>()>& gldim_provider = {}) const;

  struct HammockCell {
    int k = 0;
    int v = 0;
    DynkinObject object;
    int dim = 0;
  };
  // hom_dim(source, tau^{-k} P_v) for k in [k_min, k_max] and all v.
  std::vector<HammockCell> emit_hammock(const DynkinObject& source, int k_min, int k_max) const;

 private:
  DynkinModel(DynkinKind kind, int n);
  void check(const DynkinObject& a) const;

  DynkinKind kind_;
  int n_;
  std::vector<std::pair<int, int>> arrows_;
  std::vector<std::vector<int>> roots_;
  std::vector<QuiverRep> reps_;
  MatrixI euler_;
  MatrixQ cox_, cox_inv_;
};

// Identification of the stable category of a CM-finite theorem type with
// the Dynkin model: (2,2,2,q) -> A_{q-1}, <i,j> = U^{s+(q-2-i)x4}(j x4) = tau^{-j} P_i;
// (2,2,3,3) -> D4 following the AR-quiver figure, where U^{s+delta} = P_0,
// U^{s+x3} = tau^{-1} P_1, U^{s+x4} = tau^{-1} P_2, G = tau^{-2} P_3 and
// U^s = tau^{-2} P_0.
class LabelMap {
 public:
  explicit LabelMap(const GLContext& ctx);

  const DynkinModel& model() const { return model_; }
  const GLContext& context() const { return ctx_; }

  // U^l(twist)[shift]; twists must lie in Z x4 + Z w (A) or Z w (D4).
  DynkinObject to_dynkin(const SheafSummand& u, int shift = 0) const;
  // <i,j> labels for type A; U names, G and tau-powers for D4.
  std::string label(const DynkinObject& x) const;
  // Every object as (extension bundle, shift) if it is one; G and its
  // translates have no such form.
  std::optional<std::pair<SheafSummand, int>> to_sheaf(const DynkinObject& x) const;
  // The <i,j> object for type A.
  DynkinObject angle(int i, int j) const;

 private:
  GLContext ctx_;
  DynkinModel model_;
  std::vector<GLElement> base_ell_;
  std::vector<DynkinObject> base_obj_;
};

// The D4 quiver figure: arm rows at heights 2, 6, 5 and the center row 4,
// columns x in 4Z + 2 (arms) and 4Z (center).
std::pair<int, int> d4_figure_to_mesh(int x, int row);
std::pair<int, int> d4_mesh_to_figure(int k, int v);

}  // namespace glt
