#include <doctest.h>

#include <set>

#include "glt/dynkin.hpp"
#include "glt/reproduce.hpp"

using namespace glt;

namespace {

std::vector<DynkinObject> objects(const DynkinModel& m, int shift_lo, int shift_hi) {
  std::vector<DynkinObject> out;
  for (int s = shift_lo; s <= shift_hi; ++s)
    for (int i = 0; i < static_cast<int>(m.roots().size()); ++i) out.push_back(m.object(i, s));
  return out;
}

std::vector<int> unit(int n, int i) {
  std::vector<int> e(n, 0);
  e[i] = 1;
  return e;
}

}  // namespace

TEST_SUITE("dynkin") {

TEST_CASE("root systems") {
  for (int n = 1; n <= 5; ++n) CHECK(DynkinModel::type_a(n).roots().size() == static_cast<std::size_t>(n * (n + 1) / 2));
  const DynkinModel d4 = DynkinModel::type_d4();
  CHECK(d4.roots().size() == 12);
  for (int i = 0; i < 12; ++i) CHECK(d4.euler_form(d4.roots()[i], d4.roots()[i]) == 1);
}

TEST_CASE("Euler form matches Hom minus Ext") {
  for (const DynkinModel& m : {DynkinModel::type_a(4), DynkinModel::type_d4()}) {
    const int n = static_cast<int>(m.roots().size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        CHECK(m.euler_form(m.roots()[a], m.roots()[b]) == m.module_hom(a, b) - m.module_ext1(a, b));
    for (int v = 0; v < m.rank(); ++v)
      for (int u = 0; u < m.rank(); ++u)
        CHECK(m.euler_form(m.projective(v).root, unit(m.rank(), u)) == (u == v ? 1 : 0));
  }
}

TEST_CASE("Coxeter transformation") {
  for (const DynkinModel& m : {DynkinModel::type_a(3), DynkinModel::type_d4()})
    for (const auto& r : m.roots()) {
      CHECK(m.coxeter_inverse(m.coxeter(r)) == r);
      CHECK(m.coxeter(m.coxeter_inverse(r)) == r);
    }
}

TEST_CASE("tau and shift") {
  for (const DynkinModel& m : {DynkinModel::type_a(3), DynkinModel::type_d4()})
    for (const auto& x : objects(m, -2, 2)) {
      CHECK(m.tau_inverse(m.tau(x)) == x);
      CHECK(m.tau(m.tau_inverse(x)) == x);
      CHECK(m.shift1(m.shift1(x, 3), -3) == x);
      CHECK(m.hom_dim(x, x) == 1);
      const auto [k, v] = m.mesh_coordinates(x);
      CHECK(m.mesh_object(k, v) == x);
    }
}

TEST_CASE("Serre functor") {
  for (const DynkinModel& m : {DynkinModel::type_a(4), DynkinModel::type_d4()}) {
    const auto obs = objects(m, 0, 1);
    for (const auto& a : obs)
      for (const auto& b : obs) CHECK(m.hom_dim(a, b) == m.hom_dim(b, m.shift1(m.tau(a), 1)));
  }
}

TEST_CASE("hereditary bound") {
  const DynkinModel m = DynkinModel::type_d4();
  for (const auto& a : objects(m, 0, 0))
    for (const auto& b : objects(m, -3, 3))
      if (b.shift != 0 && b.shift != 1) CHECK(m.hom_dim(a, b) == 0);
}

TEST_CASE("mesh relation") {
  for (const DynkinModel& m : {DynkinModel::type_a(4), DynkinModel::type_d4()}) {
    std::vector<std::set<int>> adj(m.rank());
    for (const auto& [u, v] : m.arrows()) {
      adj[u].insert(v);
      adj[v].insert(u);
    }
    const auto tests = objects(m, -1, 2);
    for (int k = -2; k <= 4; ++k)
      for (int v = 0; v < m.rank(); ++v) {
        const DynkinObject x = m.mesh_object(k, v), tx = m.tau(x);
        std::vector<DynkinObject> middle;
        for (int u : adj[v])
          for (int kk : {k - 1, k}) {
            const DynkinObject y = m.mesh_object(kk, u);
            if (m.hom_dim(tx, y) > 0 && m.hom_dim(y, x) > 0) middle.push_back(y);
          }
        CHECK(!middle.empty());
        for (const auto& s : tests) {
          if (s == x || s == m.shift1(x, -1)) continue;
          int sum = m.hom_dim(s, tx) + m.hom_dim(s, x);
          for (const auto& y : middle) sum -= m.hom_dim(s, y);
          CHECK(sum == 0);
        }
      }
  }
}

TEST_CASE("hammock shift equivariance") {
  const DynkinModel m = DynkinModel::type_d4();
  const DynkinObject src = m.mesh_object(1, 1);
  const auto base = m.emit_hammock(src, -2, 8);
  const auto moved = m.emit_hammock(m.shift1(src, 1), -2, 8);
  REQUIRE(base.size() == moved.size());
  for (const auto& cell : base) CHECK(m.hom_dim(m.shift1(src, 1), m.shift1(cell.object, 1)) == cell.dim);
  int total = 0;
  for (const auto& cell : moved) total += cell.dim;
  CHECK(total > 0);
}

TEST_CASE("type A labels") {
  for (int q = 3; q <= 6; ++q) {
    const GLContext ctx({2, 2, 2, q});
    const LabelMap labels(ctx);
    const DynkinModel& m = labels.model();
    CHECK(m.rank() == q - 1);
    for (int i = 0; i <= q - 2; ++i) {
      CHECK(labels.angle(i, 0) == m.projective(i));
      CHECK(labels.label(labels.angle(i, 0)) == "<" + std::to_string(i) + ",0>");
      for (int j = -1; j <= 3; ++j) {
        CHECK(m.minus_w(labels.angle(i, j)) == m.shift1(labels.angle(i, j + 1), 1));
        const SheafSummand u = SheafSummand::ext(ctx.s() + (q - 2 - i) * ctx.x(4), j * ctx.x(4));
        CHECK(labels.to_dynkin(u) == labels.angle(i, j));
        CHECK(labels.to_dynkin(u.twisted(-1 * ctx.w())) == m.minus_w(labels.to_dynkin(u)));
        const auto back = labels.to_sheaf(labels.angle(i, j));
        REQUIRE(back);
        CHECK(labels.to_dynkin(back->first, back->second) == labels.angle(i, j));
      }
    }
    CHECK_THROWS_AS(labels.to_dynkin(SheafSummand::ext(ctx.s(), ctx.x(3))), LabelOutOfRange);
  }
}

TEST_CASE("D4 labels follow the AR-quiver figure") {
  const GLContext ctx({2, 2, 3, 3});
  const LabelMap labels(ctx);
  const DynkinModel& m = labels.model();
  auto u = [&](const GLElement& ell) { return labels.to_dynkin(SheafSummand::ext(ell, ctx.zero())); };
  CHECK(u(ctx.s() + ctx.delta()) == m.projective(0));
  CHECK(u(ctx.s() + ctx.x(3)) == m.mesh_object(1, 1));
  CHECK(u(ctx.s() + ctx.x(4)) == m.mesh_object(1, 2));
  CHECK(u(ctx.s()) == m.mesh_object(2, 0));
  const DynkinObject g = m.mesh_object(2, 3);
  CHECK(labels.label(g) == "G");
  CHECK_FALSE(labels.to_sheaf(g));
  CHECK(m.hom_dim(u(ctx.s() + ctx.x(3)), g) == 1);
  const DynkinObject d = labels.to_dynkin(SheafSummand::ext(ctx.s() + ctx.delta(), -1 * ctx.w()));
  for (int i = -3; i <= 3; ++i) CHECK(m.hom_dim(u(ctx.s() + ctx.x(3)), m.shift1(d, i)) == 0);
  for (int x = 2; x <= 46; x += 2)
    for (int row : {2, 4, 5, 6}) {
      if ((row == 4) != (x % 4 == 0)) continue;
      const auto [k, v] = d4_figure_to_mesh(x, row);
      CHECK(d4_mesh_to_figure(k, v) == std::pair{x, row});
    }
}

TEST_CASE("reference hammocks") {
  const LabelMap labels(GLContext({2, 2, 3, 3}));
  const DynkinModel& m = labels.model();
  for (const auto& h : reference_hammocks()) {
    const auto [k0, v0] = d4_figure_to_mesh(h.source.first, h.source.second);
    const DynkinObject src = m.mesh_object(k0, v0);
    CHECK(m.hom_dim(src, src) == 1);
    const std::set<std::pair<int, int>> ones(h.ones.begin(), h.ones.end());
    for (int x = kHammockXMin; x <= kHammockXMax; x += 2)
      for (int row : {2, 4, 5, 6}) {
        if ((row == 4) != (x % 4 == 0)) continue;
        const auto [k, v] = d4_figure_to_mesh(x, row);
        CHECK(m.hom_dim(src, m.mesh_object(k, v)) == (ones.count({x, row}) ? 1 : 0));
      }
  }
}

TEST_CASE("stable tilting verdicts") {
  const DynkinModel a = DynkinModel::type_a(3);
  const auto tilting = a.is_stable_tilting({a.projective(0), a.projective(1), a.projective(2)});
  CHECK(tilting.tilting());
  CHECK(tilting.gldim == 1);
  const auto short_count = a.is_stable_tilting({a.projective(0), a.projective(1)});
  CHECK_FALSE(short_count.count_ok);
  const DynkinObject p0 = a.projective(0);
  const auto not_rigid = a.is_stable_tilting({p0, a.tau_inverse(p0), a.projective(2)});
  CHECK_FALSE(not_rigid.rigid);
  REQUIRE(!not_rigid.witnesses.empty());
  CHECK(not_rigid.witnesses[0].dim == 1);
  CHECK_THROWS_AS(a.hom_dim(p0, DynkinModel::type_d4().projective(0)), TypeMismatch);
}

}  // TEST_SUITE
