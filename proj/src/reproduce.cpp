#include "glt/reproduce.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace glt {

const std::vector<HammockFixture>& reference_hammocks() {
  static const std::vector<HammockFixture> h = {
      {"hammock (a) from U^{s+x3}", {26, 6}, {{26, 6}, {28, 4}, {30, 5}, {30, 2}, {32, 4}, {34, 6}}},
      {"hammock (b) from U^{s+x4}", {26, 5}, {{26, 5}, {28, 4}, {30, 6}, {30, 2}, {32, 4}, {34, 5}}},
      {"hammock (c) from U^s", {30, 2}, {{30, 2}, {32, 4}, {34, 6}, {34, 5}, {36, 4}, {38, 2}}},
  };
  return h;
}

std::vector<CellMask> expected_stable_failures(const GLContext& ctx) {
  const UpsetGrid grid(ctx);
  const int q = ctx.weight(3);
  std::vector<CellMask> out;
  for (int m = 1; m <= q - 2; ++m) {
    std::vector<std::pair<int, int>> cells;
    for (int b = m; b <= q - 2; ++b) cells.emplace_back(0, b);
    out.push_back(grid.from_members(cells));
  }
  return out;
}

namespace {

void add(std::vector<FixtureResult>& out, std::string name, bool pass, std::string detail = "") {
  out.push_back({std::move(name), pass, std::move(detail)});
}

void bundle_fixture(const HomEngine& eng, std::vector<FixtureResult>& out) {
  const GLContext& ctx = eng.context();
  int bad = 0, total = 0;
  for (CellMask m : enumerate_upsets(ctx)) {
    ++total;
    if (!check_tilting_bundle(eng, build_candidate(ctx, m), true).ok) ++bad;
  }
  add(out, "every upset gives a 2-tilting bundle (" + ctx.weights_str() + ")", bad == 0,
      std::to_string(total - bad) + "/" + std::to_string(total) + " pass");
}

void classification_fixture(const HomEngine& eng, std::vector<FixtureResult>& out) {
  const GLContext& ctx = eng.context();
  const UpsetGrid grid(ctx);
  std::set<CellMask> expected;
  if (ctx.weight(2) == 2) {
    for (CellMask m : expected_stable_failures(ctx)) expected.insert(m);
  } else {
    expected = {grid.from_members({{1, 0}, {1, 1}}), grid.from_members({{0, 1}, {1, 1}})};
  }
  std::set<CellMask> failing;
  int rows = 0;
  for (const auto& r : report_classification(eng)) {
    ++rows;
    if (!r.stable) failing.insert(r.mask);
  }
  std::ostringstream os;
  os << rows << " upsets, " << failing.size() << " stable failures";
  add(out, "stable tilting fails exactly on the predicted upsets (" + ctx.weights_str() + ")", failing == expected,
      os.str());
}

void mutation_at_top(const HomEngine& eng, std::vector<FixtureResult>& out) {
  const GLContext& ctx = eng.context();
  const LabelMap labels(ctx);
  const UpsetGrid grid(ctx);
  const Candidate t = build_candidate(ctx, 0);
  const int top = *grid.index_of(ctx.s() + 2 * ctx.x(4));
  const bool admissible = is_admissible(eng, t, {top}, MutationDirection::Plus);
  add(out, "mutation at <0,0>: Hom(F, <0,0>) = 0", admissible);
  if (!admissible) return;
  const Candidate m = apr_mutate(eng, t, {top}, MutationDirection::Plus);
  std::vector<std::string> names;
  for (const auto& s : summands(ctx, m))
    if (!s.is_line()) names.push_back(labels.label(labels.to_dynkin(s)));
  std::sort(names.begin(), names.end());
  add(out, "mutated bundle M = <1,0> + <2,0> + <2,2> + projectives",
      names == std::vector<std::string>{"<1,0>", "<2,0>", "<2,2>"});
  add(out, "mutated bundle M is a 2-tilting bundle", check_tilting_bundle(eng, m, true).ok);
  const DynkinObject shifted = labels.model().shift1(labels.angle(2, 2), -1);
  add(out, "<2,2>[-1] = <0,1>", shifted == labels.angle(0, 1));
  const StableVerdict sv = check_stable_tilting(eng, m);
  bool witnessed = false;
  for (const auto& w : sv.dynkin.witnesses)
    witnessed |= sv.labels[w.src] == "<1,0>" && sv.labels[w.dst] == "<2,2>" && w.shift == -1 && w.dim == 1;
  const int mf = eng.stable_hom(SheafSummand::ext(ctx.s() + ctx.x(4), ctx.zero()),
                                SheafSummand::ext(ctx.s() + 2 * ctx.x(4), -1 * ctx.w()), -1);
  add(out, "dim Hom(<1,0>, <0,1>) = 1 and M is not stable tilting", !sv.tilting && witnessed && mf == 1,
      "matrix factorization dim " + std::to_string(mf));
}

void hammocks(const HomEngine& eng, std::vector<FixtureResult>& out) {
  const LabelMap labels(eng.context());
  const StableRealizer realizer(eng, labels);
  const DynkinModel& model = labels.model();
  for (const auto& h : reference_hammocks()) {
    const auto [k0, v0] = d4_figure_to_mesh(h.source.first, h.source.second);
    const DynkinObject src = model.mesh_object(k0, v0);
    const std::set<std::pair<int, int>> ones(h.ones.begin(), h.ones.end());
    int cells = 0, dyn_bad = 0, mf_bad = 0;
    for (int x = kHammockXMin; x <= kHammockXMax; x += 2)
      for (int row : {2, 4, 5, 6}) {
        if ((row == 4) != (x % 4 == 0)) continue;
        const auto [k, v] = d4_figure_to_mesh(x, row);
        const DynkinObject y = model.mesh_object(k, v);
        const int want = ones.count({x, row}) ? 1 : 0;
        ++cells;
        dyn_bad += model.hom_dim(src, y) != want;
        mf_bad += realizer.hom_dim(src, y) != want;
      }
    add(out, h.name, dyn_bad == 0 && mf_bad == 0,
        std::to_string(cells) + " cells, Dynkin mismatches " + std::to_string(dyn_bad) + ", MF mismatches " +
            std::to_string(mf_bad));
  }
  const GLContext& ctx = eng.context();
  bool diamonds = true;
  const int xs[] = {14, 26, 38};
  for (int i = -2; i <= 0; ++i) {
    const DynkinObject d = labels.to_dynkin(SheafSummand::ext(ctx.s() + ctx.delta(), -1 * ctx.w()), i);
    const auto [k, v] = model.mesh_coordinates(d);
    diamonds &= d4_mesh_to_figure(k, v) == std::pair{xs[i + 2], 2};
  }
  add(out, "U^{s+delta}(-w)[i] sits at x = 14, 26, 38 for i = -2, -1, 0", diamonds);

  // triangles U^{s+delta}(-w)[-1] -> G -> U^s -> U^{s+delta}(-w) and
  // U^{s+delta} -> U^{s+x3} + U^{s+x4} -> G -> U^{s+delta}[1]
  const DynkinObject g = model.mesh_object(2, 3);
  auto obj = [&](const GLElement& ell, int t, int n) { return labels.to_dynkin(SheafSummand::ext(ell, t * ctx.w()), n); };
  const DynkinObject d_w = obj(ctx.s() + ctx.delta(), -1, 0), us = obj(ctx.s(), 0, 0);
  const DynkinObject d0 = obj(ctx.s() + ctx.delta(), 0, 0), u3 = obj(ctx.s() + ctx.x(3), 0, 0),
                     u4 = obj(ctx.s() + ctx.x(4), 0, 0);
  const std::vector<std::pair<DynkinObject, DynkinObject>> maps = {
      {model.shift1(d_w, -1), g}, {g, us}, {us, d_w}, {d0, u3}, {d0, u4}, {u3, g}, {u4, g}, {g, model.shift1(d0, 1)}};
  int bad = 0;
  for (const auto& [a, b] : maps) bad += realizer.hom_dim(a, b) != 1 || model.hom_dim(a, b) != 1;
  add(out, "both triangles through G have one-dimensional connecting Homs", bad == 0);

  const Candidate c = build_candidate(ctx, UpsetGrid(ctx).from_members({{1, 1}}));
  const EndQuiver q = end_quiver(eng, c, EndPart::Stable);
  // vertices in candidate order: U^s, U^{s+x4}, U^{s+x3}, U^{s+delta}(-w)
  const std::vector<std::vector<int>> arrows = {{0, 0, 0, 1}, {1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}};
  const std::vector<std::vector<int>> relations = {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 1}, {0, 0, 0, 0}};
  add(out, "stable End quiver for J = {s+delta}: 1->3<-2, 3->4 with two zero relations, gldim 2",
      q.arrows == arrows && q.relations == relations && q.gldim == 2);

  const LiftingReport lr = check_lifting_criterion(eng, c);
  const bool stable = check_stable_tilting(eng, c).tilting;
  add(out, "J = {s+delta}: End(W) exceeds stable End(W) while M is stable tilting",
      lr.module_end_dim > lr.stable_end_dim && stable,
      std::to_string(lr.module_end_dim) + " > " + std::to_string(lr.stable_end_dim));
}

}  // namespace

std::vector<FixtureResult> reproduce(const HomEngine& eng) {
  const GLContext& ctx = eng.context();
  if (!ctx.is_theorem_type()) throw UnsupportedWeightType("reproduce needs weight type (2,2,p,q)");
  std::vector<FixtureResult> out;
  bundle_fixture(eng, out);
  const Weights& p = ctx.weights();
  if (p[2] == 2 && p[3] >= 3) classification_fixture(eng, out);
  if (p == Weights{2, 2, 3, 3}) {
    classification_fixture(eng, out);
    hammocks(eng, out);
  }
  if (p == Weights{2, 2, 2, 4}) mutation_at_top(eng, out);
  return out;
}

std::vector<FixtureResult> reproduce_all() {
  std::vector<FixtureResult> out;
  for (const Weights& w : {Weights{2, 2, 2, 4}, Weights{2, 2, 3, 3}}) {
    const HomEngine eng{GLContext(w)};
    for (auto& r : reproduce(eng)) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace glt
