#include "glt/dynkin.hpp"

#include <Eigen/LU>
#include <cstdlib>
#include <sstream>

#include "glt/algebra.hpp"

namespace glt {

std::string DynkinObject::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < root.size(); ++i) os << (i ? "," : "") << root[i];
  os << "]";
  if (shift) os << "[" << shift << "]";
  return os.str();
}

namespace {

bool positive(const std::vector<int>& x) {
  bool nonzero = false;
  for (int v : x) {
    if (v < 0) return false;
    nonzero |= v > 0;
  }
  return nonzero;
}

std::vector<int> negate(std::vector<int> x) {
  for (int& v : x) v = -v;
  return x;
}

MatrixQ scalar_map(int rows, int cols) {
  MatrixQ m = MatrixQ::Zero(rows, cols);
  for (int i = 0; i < std::min(rows, cols); ++i) m(i, i) = Rational(1);
  return m;
}

MatrixQ to_rational(const MatrixI& m) {
  MatrixQ out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(static_cast<long>(m(i, j)));
  return out;
}

}  // namespace

DynkinModel::DynkinModel(DynkinKind kind, int n) : kind_(kind), n_(n) {}

DynkinModel DynkinModel::type_a(int n) {
  if (n < 1) throw std::invalid_argument("A_n needs n >= 1");
  DynkinModel m(DynkinKind::A, n);
  for (int v = 0; v + 1 < n; ++v) m.arrows_.emplace_back(v + 1, v);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      std::vector<int> root(n, 0);
      for (int v = a; v <= b; ++v) root[v] = 1;
      m.roots_.push_back(root);
    }
  for (const auto& r : m.roots_) {
    QuiverRep rep{r, {}};
    for (const auto& [s, t] : m.arrows_) rep.maps.push_back(scalar_map(r[t], r[s]));
    m.reps_.push_back(rep);
  }
  m.euler_ = MatrixI::Identity(n, n);
  for (const auto& [s, t] : m.arrows_) m.euler_(s, t) -= 1;
  MatrixQ e = to_rational(m.euler_);
  // tau on dimension vectors: <x, y> = -<y, Phi x>
  MatrixQ einv = e.inverse();
  m.cox_ = -(einv * e.transpose());
  m.cox_inv_ = m.cox_.inverse();
  return m;
}

DynkinModel DynkinModel::type_d4() {
  DynkinModel m(DynkinKind::D4, 4);
  m.arrows_ = {{0, 3}, {1, 3}, {2, 3}};
  m.roots_ = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 0, 1},
              {0, 0, 1, 1}, {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 2}};
  for (const auto& r : m.roots_) {
    QuiverRep rep{r, {}};
    for (int arm = 0; arm < 3; ++arm) {
      MatrixQ map = MatrixQ::Zero(r[3], r[arm]);
      if (r[arm] == 1 && r[3] == 1) map(0, 0) = Rational(1);
      if (r[arm] == 1 && r[3] == 2) {
        if (arm != 1) map(0, 0) = Rational(1);
        if (arm != 0) map(1, 0) = Rational(1);
      }
      rep.maps.push_back(map);
    }
    m.reps_.push_back(rep);
  }
  m.euler_ = MatrixI::Identity(4, 4);
  for (const auto& [s, t] : m.arrows_) m.euler_(s, t) -= 1;
  MatrixQ e = to_rational(m.euler_);
  MatrixQ einv = e.inverse();
  m.cox_ = -(einv * e.transpose());
  m.cox_inv_ = m.cox_.inverse();
  return m;
}

int DynkinModel::module_of(const std::vector<int>& root) const {
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i] == root) return static_cast<int>(i);
  throw std::invalid_argument("not a positive root of the Dynkin type");
}

DynkinObject DynkinModel::object(int module, int shift) const { return {kind_, n_, roots_.at(module), shift}; }

DynkinObject DynkinModel::projective(int v, int shift) const {
  // P_v: paths starting at v
  std::vector<int> d(n_, 0);
  d[v] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& [s, t] : arrows_)
      if (d[s] && !d[t]) {
        d[t] = 1;
        grew = true;
      }
  }
  return {kind_, n_, d, shift};
}

std::vector<int> DynkinModel::coxeter(const std::vector<int>& x) const {
  std::vector<int> y(n_, 0);
  for (int i = 0; i < n_; ++i) {
    Rational s;
    for (int j = 0; j < n_; ++j) s += cox_(i, j) * Rational(x[j]);
    y[i] = static_cast<int>(s.value().get_num().get_si());
  }
  return y;
}

std::vector<int> DynkinModel::coxeter_inverse(const std::vector<int>& x) const {
  std::vector<int> y(n_, 0);
  for (int i = 0; i < n_; ++i) {
    Rational s;
    for (int j = 0; j < n_; ++j) s += cox_inv_(i, j) * Rational(x[j]);
    y[i] = static_cast<int>(s.value().get_num().get_si());
  }
  return y;
}

bool DynkinModel::is_projective(int module) const { return !positive(coxeter(roots_[module])); }
bool DynkinModel::is_injective(int module) const { return !positive(coxeter_inverse(roots_[module])); }

int DynkinModel::euler_form(const std::vector<int>& x, const std::vector<int>& y) const {
  long long s = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += static_cast<long long>(x[i]) * euler_(i, j) * y[j];
  return static_cast<int>(s);
}

std::vector<std::vector<MatrixQ>> DynkinModel::module_hom_basis(int m, int n) const {
  const QuiverRep& a = reps_[m];
  const QuiverRep& b = reps_[n];
  std::vector<int> offset(n_ + 1, 0);
  for (int v = 0; v < n_; ++v) offset[v + 1] = offset[v] + b.dims[v] * a.dims[v];
  auto var = [&](int v, int r, int c) { return offset[v] + r * a.dims[v] + c; };
  std::vector<SparseVec<Rational>> eqs;
  for (std::size_t k = 0; k < arrows_.size(); ++k) {
    const auto [s, t] = arrows_[k];
    // b_k f_s - f_t a_k = 0, entries (r, c) with r < b.dims[t], c < a.dims[s]
    for (int r = 0; r < b.dims[t]; ++r)
      for (int c = 0; c < a.dims[s]; ++c) {
        std::map<int, Rational> row;
        for (int j = 0; j < b.dims[s]; ++j) row[var(s, j, c)] += b.maps[k](r, j);
        for (int j = 0; j < a.dims[t]; ++j) row[var(t, r, j)] -= a.maps[k](j, c);
        eqs.push_back(sparse_from_map(row));
      }
  }
  std::vector<std::vector<MatrixQ>> out;
  for (const auto& sol : sparse_nullspace(eqs, offset[n_])) {
    std::vector<MatrixQ> f;
    for (int v = 0; v < n_; ++v) f.push_back(MatrixQ::Zero(b.dims[v], a.dims[v]));
    for (const auto& [idx, val] : sol) {
      int v = 0;
      while (offset[v + 1] <= idx) ++v;
      const int local = idx - offset[v];
      f[v](local / a.dims[v], local % a.dims[v]) = val;
    }
    out.push_back(std::move(f));
  }
  return out;
}

int DynkinModel::module_hom(int m, int n) const { return static_cast<int>(module_hom_basis(m, n).size()); }

int DynkinModel::module_ext1(int m, int n) const {
  if (is_projective(m)) return 0;
  return module_hom(n, module_of(coxeter(roots_[m])));
}

void DynkinModel::check(const DynkinObject& a) const {
  if (a.kind != kind_ || a.rank != n_) throw TypeMismatch("object of another Dynkin type");
}

int DynkinModel::hom_dim(const DynkinObject& a, const DynkinObject& b) const {
  check(a);
  check(b);
  const int d = b.shift - a.shift;
  if (d == 0) return module_hom(module_of(a.root), module_of(b.root));
  if (d == 1) return module_ext1(module_of(a.root), module_of(b.root));
  return 0;
}

DynkinObject DynkinModel::tau(const DynkinObject& a) const {
  check(a);
  const std::vector<int> y = coxeter(a.root);
  if (positive(y)) return {kind_, n_, y, a.shift};
  return {kind_, n_, negate(y), a.shift - 1};
}

DynkinObject DynkinModel::tau_inverse(const DynkinObject& a) const {
  check(a);
  const std::vector<int> y = coxeter_inverse(a.root);
  if (positive(y)) return {kind_, n_, y, a.shift};
  return {kind_, n_, negate(y), a.shift + 1};
}

DynkinObject DynkinModel::shift1(const DynkinObject& a, int n) const {
  check(a);
  DynkinObject out = a;
  out.shift += n;
  return out;
}

DynkinObject DynkinModel::minus_w(const DynkinObject& a, int k) const {
  DynkinObject out = a;
  for (int i = 0; i < k; ++i) out = shift1(tau_inverse(out), 1);
  for (int i = 0; i < -k; ++i) out = tau(shift1(out, -1));
  return out;
}

DynkinObject DynkinModel::mesh_object(int k, int v) const {
  DynkinObject out = projective(v);
  for (int i = 0; i < k; ++i) out = tau_inverse(out);
  for (int i = 0; i < -k; ++i) out = tau(out);
  return out;
}

std::pair<int, int> DynkinModel::mesh_coordinates(const DynkinObject& x) const {
  check(x);
  DynkinObject cur = x;
  int k = 0;
  const int limit = 4 * (n_ + 2) * (std::abs(x.shift) + 2);
  for (int step = 0; step < limit; ++step) {
    if (cur.shift == 0) {
      const int m = module_of(cur.root);
      if (is_projective(m))
        for (int v = 0; v < n_; ++v)
          if (projective(v).root == cur.root) return {k, v};
    }
    if (cur.shift >= 0) {
      cur = tau(cur);
      ++k;
    } else {
      cur = tau_inverse(cur);
      --k;
    }
  }
  throw std::logic_error("mesh coordinates not found");
}

TiltingVerdict DynkinModel::is_stable_tilting(const std::vector<DynkinObject>& summands,
                                              const std::function<std::optional<int>()>& gldim_provider) const {
  TiltingVerdict out;
  const int m = static_cast<int>(summands.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int d0 = summands[j].shift - summands[i].shift;
      for (int n : {-d0, 1 - d0}) {
        if (n == 0) continue;
        const int h = hom_dim(summands[i], shift1(summands[j], n));
        if (h) {
          out.rigid = false;
          out.witnesses.push_back({i, j, n, h});
        }
      }
    }
  out.count_ok = m == n_;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (summands[i] == summands[j]) out.count_ok = false;

  bool one_shift = true;
  for (const auto& s : summands) one_shift &= s.shift == summands.front().shift;
  if (one_shift && m > 0) {
    std::vector<int> mod;
    for (const auto& s : summands) mod.push_back(module_of(s.root));
    std::vector<int> src, dst;
    std::vector<std::vector<MatrixQ>> elems;
    std::vector<std::vector<int>> start(m, std::vector<int>(m, 0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        start[i][j] = static_cast<int>(src.size());
        for (auto& f : module_hom_basis(mod[i], mod[j])) {
          src.push_back(i);
          dst.push_back(j);
          elems.push_back(std::move(f));
        }
      }
    auto flatten = [&](const std::vector<MatrixQ>& f) {
      SparseVec<Rational> v;
      int off = 0;
      for (const auto& mat : f) {
        for (Eigen::Index r = 0; r < mat.rows(); ++r)
          for (Eigen::Index c = 0; c < mat.cols(); ++c)
            if (!mat(r, c).is_zero()) v.emplace_back(off + static_cast<int>(r * mat.cols() + c), mat(r, c));
        off += static_cast<int>(mat.size());
      }
      return v;
    };
    std::vector<std::vector<EchelonBasis<Rational>>> solvers(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        solvers[i].emplace_back(true);
        for (int b = start[i][j]; b < static_cast<int>(src.size()) && src[b] == i && dst[b] == j; ++b)
          solvers[i][j].insert(flatten(elems[b]));
      }
    const int dim = static_cast<int>(src.size());
    std::vector<std::vector<SparseVec<Rational>>> table(dim);
    for (int a = 0; a < dim; ++a) {
      table[a].resize(dim);
      for (int b = 0; b < dim; ++b) {
        if (dst[a] != src[b]) continue;
        std::vector<MatrixQ> comp;
        for (int v = 0; v < n_; ++v) comp.push_back(elems[b][v] * elems[a][v]);
        auto coords = solvers[src[a]][dst[b]].solve(flatten(comp));
        if (!coords) throw std::logic_error("composite outside the Hom space");
        for (auto& [g, val] : *coords) table[a][b].emplace_back(start[src[a]][dst[b]] + g, val);
      }
    }
    out.gldim = FiniteAlgebra(m, src, dst, table).global_dimension(6);
  } else if (gldim_provider) {
    out.gldim = gldim_provider();
  }
  return out;
}

std::vector<DynkinModel::HammockCell> DynkinModel::emit_hammock(const DynkinObject& source, int k_min,
                                                                int k_max) const {
  std::vector<HammockCell> out;
  for (int k = k_min; k <= k_max; ++k)
    for (int v = 0; v < n_; ++v) {
      DynkinObject x = mesh_object(k, v);
      out.push_back({k, v, x, hom_dim(source, x)});
    }
  return out;
}

std::pair<int, int> d4_figure_to_mesh(int x, int row) {
  if (row == 4) return {(x - 20) / 4, 3};
  const int v = row == 2 ? 0 : row == 6 ? 1 : row == 5 ? 2 : -1;
  if (v < 0) throw std::invalid_argument("no such row in the D4 figure");
  return {(x - 22) / 4, v};
}

std::pair<int, int> d4_mesh_to_figure(int k, int v) {
  static const int rows[] = {2, 6, 5, 4};
  return {v == 3 ? 20 + 4 * k : 22 + 4 * k, rows[v]};
}

namespace {

DynkinModel model_for(const GLContext& ctx) {
  const Weights& p = ctx.weights();
  if (p[0] == 2 && p[1] == 2 && p[2] == 2 && p[3] >= 2) return DynkinModel::type_a(p[3] - 1);
  if (p == Weights{2, 2, 3, 3}) return DynkinModel::type_d4();
  throw UnsupportedWeightType("no Dynkin model for weight type " + ctx.weights_str());
}

const char* kD4Names[] = {"U^{s+delta}", "U^{s+x3}", "U^{s+x4}", "U^s", "G"};

}  // namespace

LabelMap::LabelMap(const GLContext& ctx) : ctx_(ctx), model_(model_for(ctx)) {
  if (model_.kind() == DynkinKind::A) {
    const int q = ctx.weight(3);
    for (int i = 0; i <= q - 2; ++i) {
      base_ell_.push_back(ctx.s() + (q - 2 - i) * ctx.x(4));
      base_obj_.push_back(model_.mesh_object(0, i));
    }
  } else {
    base_ell_ = {ctx.s() + ctx.delta(), ctx.s() + ctx.x(3), ctx.s() + ctx.x(4), ctx.s()};
    base_obj_ = {model_.mesh_object(0, 0), model_.mesh_object(1, 1), model_.mesh_object(1, 2),
                 model_.mesh_object(2, 0)};
  }
}

DynkinObject LabelMap::angle(int i, int j) const {
  if (model_.kind() != DynkinKind::A) throw TypeMismatch("<i,j> labels exist for type A only");
  return model_.mesh_object(j, i);
}

DynkinObject LabelMap::to_dynkin(const SheafSummand& u, int shift) const {
  if (u.is_line()) throw LabelOutOfRange("line bundles are zero in the stable category");
  int base = -1;
  for (std::size_t i = 0; i < base_ell_.size(); ++i)
    if (base_ell_[i] == u.ell) base = static_cast<int>(i);
  if (base < 0) throw LabelOutOfRange("no Dynkin label for U^" + u.ell.str());
  // twist = a x4 - k w (A) or -k w (D4); U(-w) = tau^{-1} U [1]
  const int bound = 64;
  for (int mag = 0; mag <= bound; ++mag)
    for (int k : {mag, -mag}) {
      const GLElement y = u.twist + k * ctx_.w();
      if (model_.kind() == DynkinKind::A) {
        if (y.lam[0] || y.lam[1] || y.lam[2]) continue;
        const int a = y.lam[3] + y.l * ctx_.weight(3);
        return model_.shift1(model_.mesh_object(a + k, base), k + shift);
      }
      if (y != ctx_.zero()) continue;
      return model_.shift1(model_.minus_w(base_obj_[base], k), shift);
    }
  throw LabelOutOfRange("twist " + u.twist.str() + " outside the labeled range");
}

std::optional<std::pair<SheafSummand, int>> LabelMap::to_sheaf(const DynkinObject& x) const {
  const auto [k, v] = model_.mesh_coordinates(x);
  if (model_.kind() == DynkinKind::A) return std::make_pair(SheafSummand::ext(base_ell_[v], k * ctx_.x(4)), 0);
  int best = -1, best_m = 0;
  for (std::size_t b = 0; b < base_obj_.size(); ++b) {
    const auto [kb, vb] = model_.mesh_coordinates(base_obj_[b]);
    if (vb != v) continue;
    const int m = k - kb;
    if (best < 0 || std::abs(m) < std::abs(best_m)) {
      best = static_cast<int>(b);
      best_m = m;
    }
  }
  if (best < 0) return std::nullopt;
  // tau^{-m} B = B(-m w)[-m]
  return std::make_pair(SheafSummand::ext(base_ell_[best], (-best_m) * ctx_.w()), -best_m);
}

std::string LabelMap::label(const DynkinObject& x) const {
  const auto [k, v] = model_.mesh_coordinates(x);
  if (model_.kind() == DynkinKind::A) return "<" + std::to_string(v) + "," + std::to_string(k) + ">";
  static const int base_k[] = {0, 1, 1, 2};
  int name = v;
  int kb = base_k[v];
  if (v == 0 && std::abs(k - 2) < std::abs(k)) {
    name = 3;
    kb = 2;
  }
  if (v == 3) name = 4, kb = 2;
  const int m = k - kb;
  std::string s = kD4Names[name];
  return m == 0 ? s : "tau^" + std::to_string(-m) + " " + s;
}

}  // namespace glt
