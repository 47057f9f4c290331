#include "glt/algebra.hpp"

#include <string>

namespace glt {

FiniteAlgebra::FiniteAlgebra(int vertices, std::vector<int> src, std::vector<int> dst,
                             std::vector<std::vector<SparseVec<Rational>>> table)
    : vertices_(vertices), src_(std::move(src)), dst_(std::move(dst)), table_(std::move(table)) {
  const int n = dim();
  std::vector<Rational> tr(n);
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < n; ++k) {
      if (dst_[c] != src_[k]) continue;
      for (const auto& [i, v] : basis_product(c, k))
        if (i == k) tr[c] += v;
    }
  std::vector<SparseVec<Rational>> form(n);
  for (int b = 0; b < n; ++b) {
    std::map<int, Rational> row;
    for (int a = 0; a < n; ++a) {
      if (dst_[a] != src_[b] || dst_[b] != src_[a]) continue;
      Rational s;
      for (const auto& [c, v] : basis_product(a, b)) s += v * tr[c];
      if (!s.is_zero()) row[a] = s;
    }
    form[b] = sparse_from_map(row);
  }
  radical_ = sparse_nullspace(form, n);
}

FiniteAlgebra FiniteAlgebra::from_end(const EndAlgebra& e) { return FiniteAlgebra(e.vertices, e.src, e.dst, e.table); }

SparseVec<Rational> FiniteAlgebra::basis_product(int a, int b) const {
  if (dst_[a] != src_[b] || table_[a].empty()) return {};
  return table_[a][b];
}

SparseVec<Rational> FiniteAlgebra::product(const SparseVec<Rational>& x, const SparseVec<Rational>& y) const {
  std::map<int, Rational> acc;
  for (const auto& [a, u] : x)
    for (const auto& [b, v] : y)
      for (const auto& [c, w] : basis_product(a, b)) acc[c] += u * v * w;
  return sparse_from_map(acc);
}

namespace {

int block_rank(const std::vector<SparseVec<Rational>>& rows, const std::vector<int>& src, const std::vector<int>& dst,
               int i, int j) {
  EchelonBasis<Rational> eb;
  for (const auto& r : rows) {
    SparseVec<Rational> p;
    for (const auto& [k, v] : r)
      if (src[k] == i && dst[k] == j) p.emplace_back(k, v);
    eb.insert(p);
  }
  return eb.rank();
}

}  // namespace

void FiniteAlgebra::check_basic() const {
  for (int i = 0; i < vertices_; ++i)
    for (int j = 0; j < vertices_; ++j) {
      int full = 0;
      for (int b = 0; b < dim(); ++b)
        if (src_[b] == i && dst_[b] == j) ++full;
      const int top = full - block_rank(radical_, src_, dst_, i, j);
      if (i == j && top != 1)
        throw NotBasic("vertex " + std::to_string(i) + " has semisimple part of dimension " + std::to_string(top));
      if (i != j && top != 0)
        throw NotBasic("vertices " + std::to_string(i) + " and " + std::to_string(j) + " are isomorphic");
    }
}

std::vector<std::vector<int>> FiniteAlgebra::arrows() const {
  EchelonBasis<Rational> sq;
  for (const auto& x : radical_)
    for (const auto& y : radical_) sq.insert(product(x, y));
  std::vector<std::vector<int>> out(vertices_, std::vector<int>(vertices_, 0));
  for (int i = 0; i < vertices_; ++i)
    for (int j = 0; j < vertices_; ++j)
      out[i][j] = block_rank(radical_, src_, dst_, i, j) - block_rank(sq.rows(), src_, dst_, i, j);
  return out;
}

std::vector<std::vector<int>> FiniteAlgebra::relations() const {
  std::vector<std::vector<int>> out(vertices_, std::vector<int>(vertices_, 0));
  for (int i = 0; i < vertices_; ++i) {
    const Resolution r = resolve_simple(i, 2);
    if (r.terms.size() > 2) out[i] = r.terms[2];
  }
  return out;
}

FiniteAlgebra::Resolution FiniteAlgebra::resolve_simple(int i, int cap) const {
  // Right modules: P_v = e_v A spanned by basis elements with src v, acted on
  // by post-multiplication. A free module is a list of such slots.
  std::vector<std::vector<int>> out(vertices_);
  std::vector<int> pos(dim());
  for (int b = 0; b < dim(); ++b) {
    pos[b] = static_cast<int>(out[src_[b]].size());
    out[src_[b]].push_back(b);
  }
  struct Layout {
    std::vector<int> slot_vertex, offset;
    std::vector<std::pair<int, int>> coord;  // (slot, basis element)
  };
  auto make_layout = [&](const std::vector<int>& vs) {
    Layout l;
    l.slot_vertex = vs;
    for (std::size_t s = 0; s < vs.size(); ++s) {
      l.offset.push_back(static_cast<int>(l.coord.size()));
      for (int b : out[vs[s]]) l.coord.emplace_back(static_cast<int>(s), b);
    }
    return l;
  };
  auto act = [&](const Layout& l, const SparseVec<Rational>& x, int b) {
    std::map<int, Rational> acc;
    for (const auto& [k, u] : x) {
      const auto [s, a] = l.coord[k];
      for (const auto& [c, w] : basis_product(a, b)) acc[l.offset[s] + pos[c]] += u * w;
    }
    return sparse_from_map(acc);
  };
  Resolution res;
  std::vector<int> unit(vertices_, 0);
  unit[i] = 1;
  res.terms.push_back(unit);
  Layout layout = make_layout({i});
  std::vector<SparseVec<Rational>> module;
  {
    EchelonBasis<Rational> eb;
    for (const auto& r : radical_) {
      SparseVec<Rational> p;
      for (const auto& [k, v] : r)
        if (src_[k] == i) p.emplace_back(pos[k], v);
      eb.insert(p);
    }
    module = eb.rows();
  }
  for (int step = 1; step <= cap; ++step) {
    if (module.empty()) {
      res.complete = true;
      return res;
    }
    EchelonBasis<Rational> nj;
    for (const auto& n : module)
      for (const auto& r : radical_) {
        std::map<int, Rational> acc;
        for (const auto& [b, v] : r)
          for (const auto& [k, w] : act(layout, n, b)) acc[k] += v * w;
        nj.insert(sparse_from_map(acc));
      }
    std::vector<int> mult(vertices_, 0);
    std::vector<std::pair<int, SparseVec<Rational>>> gens;
    for (int v = 0; v < vertices_; ++v) {
      auto project = [&](const SparseVec<Rational>& x) {
        SparseVec<Rational> p;
        for (const auto& [k, u] : x)
          if (dst_[layout.coord[k].second] == v) p.emplace_back(k, u);
        return p;
      };
      EchelonBasis<Rational> eb;
      for (const auto& r : nj.rows()) eb.insert(project(r));
      for (const auto& n : module) {
        SparseVec<Rational> p = project(n);
        if (eb.insert(p)) {
          gens.emplace_back(v, p);
          ++mult[v];
        }
      }
    }
    res.terms.push_back(mult);
    std::vector<int> vs;
    for (const auto& g : gens) vs.push_back(g.first);
    Layout cover = make_layout(vs);
    std::map<int, std::map<int, Rational>> rows;
    for (int col = 0; col < static_cast<int>(cover.coord.size()); ++col) {
      const auto [s, b] = cover.coord[col];
      for (const auto& [k, u] : act(layout, gens[s].second, b)) rows[k][col] += u;
    }
    std::vector<SparseVec<Rational>> eqs;
    for (const auto& [k, row] : rows) eqs.push_back(sparse_from_map(row));
    module = sparse_nullspace(eqs, static_cast<int>(cover.coord.size()));
    layout = std::move(cover);
  }
  res.complete = module.empty();
  return res;
}

std::optional<int> FiniteAlgebra::global_dimension(int cap) const {
  int g = 0;
  for (int i = 0; i < vertices_; ++i) {
    const Resolution r = resolve_simple(i, cap);
    if (!r.complete) return std::nullopt;
    g = std::max(g, static_cast<int>(r.terms.size()) - 1);
  }
  return g;
}

}  // namespace glt
