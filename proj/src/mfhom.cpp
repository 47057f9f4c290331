#include <algorithm>
#include <memory>

#include "glt/mfcore.hpp"

namespace glt {

namespace {

using Entries = std::vector<std::pair<int, Rational>>;

SparseVec<Rational> finish(Entries e) {
  std::sort(e.begin(), e.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec<Rational> out;
  for (auto& [i, v] : e) {
    if (!out.empty() && out.back().first == i) {
      out.back().second += v;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!v.is_zero()) {
      out.emplace_back(i, std::move(v));
    }
  }
  return out;
}

}  // namespace

HomSystem::Block HomSystem::make_block(const std::vector<GLElement>& row_deg, const std::vector<GLElement>& col_deg,
                                       int base, const GLElement& shift) const {
  Block b;
  b.rows = static_cast<int>(row_deg.size());
  b.cols = static_cast<int>(col_deg.size());
  int at = base;
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      const MonomialSpace& sp = ring_->space(col_deg[j] - row_deg[i] + shift);
      b.offset.push_back(at);
      b.spaces.push_back(&sp);
      at += sp.dim();
    }
  b.offset.push_back(at);
  return b;
}

HomSystem::HomSystem(const GradedRing& ring, const GradedMF& src, const GradedMF& dst)
    : ring_(&ring), src_(&src), dst_(&dst) {
  const GLContext& ctx = ring.context();
  if (src.potential != dst.potential) throw NotComposable("factorizations of different potentials");
  a_ = make_block(dst.deg0, src.deg0, 0, ctx.zero());
  a_unknowns_ = a_.offset.back();
  b_ = make_block(dst.deg1, src.deg1, a_unknowns_, ctx.zero());
  unknowns_ = b_.offset.back();
  eq_ = make_block(dst.deg0, src.deg1, 0, ctx.zero());
  eq_rows_ = eq_.offset.back();
  h0_ = make_block(dst.deg1, src.deg0, 0, ctx.zero());
  h0_unknowns_ = h0_.offset.back();
  h1_ = make_block(dst.deg0, src.deg1, 0, -ctx.c());
  h1_unknowns_ = h1_.offset.back();
}

std::vector<SparseVec<Rational>> HomSystem::equations() const {
  const GradedMF& m = *src_;
  const GradedMF& n = *dst_;
  std::vector<Entries> rows(eq_rows_);
  // a * phi_M
  for (int i = 0; i < a_.rows; ++i)
    for (int k = 0; k < a_.cols; ++k) {
      const int e = a_.entry(i, k);
      const MonomialSpace& sp = *a_.spaces[e];
      for (int t = 0; t < sp.dim(); ++t)
        for (int j = 0; j < m.size(); ++j) {
          const int q = eq_.entry(i, j);
          for (const auto& [mu, c] : m.phi(k, j).terms())
            rows[eq_.offset[q] + eq_.spaces[q]->index_of(sp.basis[t] * mu)].emplace_back(a_.offset[e] + t, c);
        }
    }
  // - phi_N * b
  for (int l = 0; l < b_.rows; ++l)
    for (int j = 0; j < b_.cols; ++j) {
      const int e = b_.entry(l, j);
      const MonomialSpace& sp = *b_.spaces[e];
      for (int t = 0; t < sp.dim(); ++t)
        for (int i = 0; i < n.size(); ++i) {
          const int q = eq_.entry(i, j);
          for (const auto& [mu, c] : n.phi(i, l).terms())
            rows[eq_.offset[q] + eq_.spaces[q]->index_of(mu * sp.basis[t])].emplace_back(b_.offset[e] + t, -c);
        }
    }
  std::vector<SparseVec<Rational>> out;
  out.reserve(rows.size());
  for (auto& r : rows) {
    auto v = finish(std::move(r));
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

std::vector<SparseVec<Rational>> HomSystem::null_generators(HomLevel level) const {
  const GradedMF& m = *src_;
  const GradedMF& n = *dst_;
  std::vector<SparseVec<Rational>> out;
  for (int l = 0; l < h0_.rows; ++l)
    for (int k = 0; k < h0_.cols; ++k) {
      const MonomialSpace& sp = *h0_.spaces[h0_.entry(l, k)];
      for (const Monomial& x : sp.basis) {
        Entries e;
        for (int i = 0; i < n.size(); ++i) {
          const int q = a_.entry(i, k);
          for (const auto& [mu, c] : n.phi(i, l).terms()) e.emplace_back(a_.offset[q] + a_.spaces[q]->index_of(mu * x), c);
        }
        for (int j = 0; j < m.size(); ++j) {
          const int q = b_.entry(l, j);
          for (const auto& [mu, c] : m.phi(k, j).terms()) e.emplace_back(b_.offset[q] + b_.spaces[q]->index_of(x * mu), c);
        }
        out.push_back(finish(std::move(e)));
      }
    }
  if (level == HomLevel::Module) return out;
  for (int i = 0; i < h1_.rows; ++i)
    for (int j = 0; j < h1_.cols; ++j) {
      const MonomialSpace& sp = *h1_.spaces[h1_.entry(i, j)];
      for (const Monomial& x : sp.basis) {
        Entries e;
        for (int k = 0; k < m.size(); ++k) {
          const int q = a_.entry(i, k);
          for (const auto& [mu, c] : m.psi(j, k).terms()) e.emplace_back(a_.offset[q] + a_.spaces[q]->index_of(x * mu), c);
        }
        for (int l = 0; l < n.size(); ++l) {
          const int q = b_.entry(l, j);
          for (const auto& [mu, c] : n.psi(l, i).terms()) e.emplace_back(b_.offset[q] + b_.spaces[q]->index_of(mu * x), c);
        }
        out.push_back(finish(std::move(e)));
      }
    }
  return out;
}

SparseVec<Rational> HomSystem::pack(const MFMorphism& f) const {
  if (f.a.rows() != a_.rows || f.a.cols() != a_.cols || f.b.rows() != b_.rows || f.b.cols() != b_.cols)
    throw NotComposable("morphism shape does not match the Hom system");
  Entries e;
  auto add = [&](const Block& blk, const PolyMatrix& mat) {
    for (int i = 0; i < blk.rows; ++i)
      for (int j = 0; j < blk.cols; ++j) {
        const int q = blk.entry(i, j);
        for (const auto& [mu, c] : mat(i, j).terms()) e.emplace_back(blk.offset[q] + blk.spaces[q]->index_of(mu), c);
      }
  };
  add(a_, f.a);
  add(b_, f.b);
  return finish(std::move(e));
}

MFMorphism HomSystem::unpack(const SparseVec<Rational>& v) const {
  MFMorphism f{PolyMatrix(a_.rows, a_.cols), PolyMatrix(b_.rows, b_.cols)};
  auto locate = [](const Block& blk, int col) {
    const auto it = std::upper_bound(blk.offset.begin(), blk.offset.end(), col);
    return static_cast<int>(it - blk.offset.begin()) - 1;
  };
  std::vector<std::vector<Polynomial::Term>> a_terms(a_.rows * a_.cols), b_terms(b_.rows * b_.cols);
  for (const auto& [col, c] : v) {
    if (col < a_unknowns_) {
      const int q = locate(a_, col);
      a_terms[q].emplace_back(a_.spaces[q]->basis[col - a_.offset[q]], c);
    } else {
      const int q = locate(b_, col);
      b_terms[q].emplace_back(b_.spaces[q]->basis[col - b_.offset[q]], c);
    }
  }
  for (int q = 0; q < a_.rows * a_.cols; ++q)
    if (!a_terms[q].empty()) f.a(q / a_.cols, q % a_.cols) = Polynomial::from_terms(std::move(a_terms[q]));
  for (int q = 0; q < b_.rows * b_.cols; ++q)
    if (!b_terms[q].empty()) f.b(q / b_.cols, q % b_.cols) = Polynomial::from_terms(std::move(b_terms[q]));
  return f;
}

int hom_dim(const GradedRing& ring, const GradedMF& src, const GradedMF& dst, HomLevel level) {
  const HomSystem sys(ring, src, dst);
  if (sys.unknowns() == 0) return 0;
  const int cycles = sys.unknowns() - sparse_rank(sys.equations());
  if (cycles == 0) return 0;
  if (level == HomLevel::Module) return cycles - sys.h0_unknowns();
  return cycles - sparse_rank(sys.null_generators(HomLevel::Stable));
}

int module_hom_dim(const GradedRing& ring, const GradedMF& src, const GradedMF& dst) {
  return hom_dim(ring, src, dst, HomLevel::Module);
}

int stable_hom_dim(const GradedRing& ring, const GradedMF& src, const GradedMF& dst) {
  return hom_dim(ring, src, dst, HomLevel::Stable);
}

int free_hom_dim(const GradedRing& ring, const GLElement& x, const GradedMF& m, FreeDirection dir) {
  const GLElement c = ring.context().c();
  int total = 0;
  if (dir == FreeDirection::FromFree) {
    // (cok phi)_{-x}; phi is injective over S
    for (const auto& a : m.deg0) total += ring.dim_S(-x - a);
    for (const auto& b : m.deg1) total -= ring.dim_S(-x - b);
  } else {
    // dual module: cok(phi^T) on the twisted free modules
    for (const auto& b : m.deg1) total += ring.dim_S(x + b - c);
    for (const auto& a : m.deg0) total -= ring.dim_S(x + a - c);
  }
  return total;
}

MFHomSpace::MFHomSpace(const GradedRing& ring, const GradedMF& src, const GradedMF& dst, HomLevel level)
    : src_(src), dst_(dst), system_(ring, src_, dst_), level_(level) {
  const auto eqs = system_.equations();
  for (const auto& g : system_.null_generators(level)) null_.insert(g);
  for (const auto& z : sparse_nullspace(eqs, system_.unknowns())) {
    const bool independent = quotient_.insert(null_.normal_form(z));
    generator_to_basis_.push_back(independent ? static_cast<int>(basis_.size()) : -1);
    if (independent) basis_.push_back(system_.unpack(z));
  }
}

std::vector<Rational> MFHomSpace::coordinates(const MFMorphism& f) const {
  if (!is_morphism(src_, dst_, f)) throw NotComposable("not a morphism between the Hom space's objects");
  const auto sol = quotient_.solve(null_.normal_form(system_.pack(f)));
  if (!sol) throw std::logic_error("morphism outside the computed Hom space");
  std::vector<Rational> out(basis_.size());
  for (const auto& [g, c] : *sol) out[generator_to_basis_.at(g)] = c;
  return out;
}

bool MFHomSpace::is_zero(const MFMorphism& f) const {
  const auto c = coordinates(f);
  return std::all_of(c.begin(), c.end(), [](const Rational& r) { return r.is_zero(); });
}

SparseVec<Rational> EndAlgebra::multiply(const SparseVec<Rational>& x, const SparseVec<Rational>& y) const {
  std::map<int, Rational> acc;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      if (dst[a] != src[b]) continue;
      const Rational s = ca * cb;
      for (const auto& [k, v] : table[a][b]) acc[k] += s * v;
    }
  return sparse_from_map(acc);
}

EndAlgebra end_algebra(const GradedRing& ring, const std::vector<GradedMF>& summands, HomLevel level) {
  const int n = static_cast<int>(summands.size());
  EndAlgebra alg;
  alg.vertices = n;
  alg.block_start.assign(n, std::vector<int>(n, 0));
  alg.block_dim.assign(n, std::vector<int>(n, 0));
  std::vector<std::vector<std::unique_ptr<MFHomSpace>>> spaces(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      spaces[i].push_back(std::make_unique<MFHomSpace>(ring, summands[i], summands[j], level));
      alg.block_start[i][j] = alg.dim();
      alg.block_dim[i][j] = spaces[i][j]->dim();
      for (int k = 0; k < spaces[i][j]->dim(); ++k) {
        alg.src.push_back(i);
        alg.dst.push_back(j);
      }
    }
  const int d = alg.dim();
  alg.table.assign(d, std::vector<SparseVec<Rational>>(d));
  auto globalize = [&](int i, int k, const std::vector<Rational>& coords) {
    SparseVec<Rational> v;
    for (std::size_t t = 0; t < coords.size(); ++t)
      if (!coords[t].is_zero()) v.emplace_back(alg.block_start[i][k] + static_cast<int>(t), coords[t]);
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int x = 0; x < alg.block_dim[i][j]; ++x)
          for (int y = 0; y < alg.block_dim[j][k]; ++y) {
            const MFMorphism prod = compose(spaces[i][j]->basis(x), spaces[j][k]->basis(y));
            alg.table[alg.block_start[i][j] + x][alg.block_start[j][k] + y] =
                globalize(i, k, spaces[i][k]->coordinates(prod));
          }
  for (int i = 0; i < n; ++i)
    alg.identity.push_back(globalize(i, i, spaces[i][i]->coordinates(identity_morphism(summands[i]))));
  return alg;
}

bool isomorphic(const GradedRing& ring, const GradedMF& m, const GradedMF& n) {
  if (m.size() != n.size()) return false;
  const MFHomSpace mn(ring, m, n, HomLevel::Module), nm(ring, n, m, HomLevel::Module);
  if (mn.dim() == 0 || nm.dim() == 0) return false;
  const MFHomSpace end(ring, m, m, HomLevel::Module);
  for (int i = 0; i < mn.dim(); ++i)
    for (int j = 0; j < nm.dim(); ++j) {
      const MFMorphism x = compose(mn.basis(i), nm.basis(j));
      Rational trace = 0;
      for (int k = 0; k < end.dim(); ++k) trace += end.coordinates(compose(end.basis(k), x))[k];
      if (!trace.is_zero()) return true;
    }
  return false;
}

namespace {

nlohmann::json poly_json(const Polynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({m.e[0], m.e[1], m.e[2], m.e[3], c.str()});
  return terms;
}

Polynomial poly_from_json(const nlohmann::json& j) {
  std::vector<Polynomial::Term> terms;
  for (const auto& t : j)
    terms.emplace_back(Monomial{{t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>(), t.at(3).get<int>()}},
                       parse_rational(t.at(4).get<std::string>()));
  return Polynomial::from_terms(std::move(terms));
}

nlohmann::json matrix_json(const PolyMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out.push_back({{"row", i}, {"col", j}, {"terms", poly_json(m(i, j))}});
  return out;
}

PolyMatrix matrix_from_json(const nlohmann::json& j, int rows, int cols) {
  PolyMatrix m(rows, cols);
  for (const auto& e : j) m(e.at("row").get<int>(), e.at("col").get<int>()) = poly_from_json(e.at("terms"));
  return m;
}

}  // namespace

nlohmann::json to_json(const GradedMF& m) {
  nlohmann::json j;
  j["deg0"] = nlohmann::json::array();
  for (const auto& d : m.deg0) j["deg0"].push_back(d.str());
  j["deg1"] = nlohmann::json::array();
  for (const auto& d : m.deg1) j["deg1"].push_back(d.str());
  j["phi"] = matrix_json(m.phi);
  j["psi"] = matrix_json(m.psi);
  j["potential"] = poly_json(m.potential);
  return j;
}

GradedMF mf_from_json(const GLContext& ctx, const nlohmann::json& j) {
  GradedMF m;
  for (const auto& d : j.at("deg0")) m.deg0.push_back(ctx.parse(d.get<std::string>()));
  for (const auto& d : j.at("deg1")) m.deg1.push_back(ctx.parse(d.get<std::string>()));
  const int n0 = static_cast<int>(m.deg0.size()), n1 = static_cast<int>(m.deg1.size());
  m.phi = matrix_from_json(j.at("phi"), n0, n1);
  m.psi = matrix_from_json(j.at("psi"), n1, n0);
  m.potential = poly_from_json(j.at("potential"));
  m.validate(ctx);
  return m;
}

}  // namespace glt
