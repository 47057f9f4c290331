#include <doctest.h>

#include <random>

#include "glt/tiltlab.hpp"

using namespace glt;

namespace {

int cell_index(const GLContext& ctx, const GLElement& ell) { return *UpsetGrid(ctx).index_of(ell); }

}  // namespace

TEST_SUITE("tiltlab") {

TEST_CASE("candidates") {
  const GLContext ctx({2, 2, 3, 3});
  const UpsetGrid grid(ctx);
  const Candidate t = build_candidate(ctx, 0);
  CHECK(t.size() == 4 + 24);
  CHECK(ext_count(ctx) == 4);
  for (int tw : t.twists) CHECK(tw == 0);
  const Candidate full = build_candidate(ctx, grid.full());
  for (int i = 0; i < full.size(); ++i) CHECK(full.twists[i] == (i < 4 ? -1 : 0));

  const Candidate m = build_candidate(ctx, grid.from_members({{1, 1}}));
  const auto parts = summands(ctx, m);
  CHECK(parts[cell_index(ctx, ctx.s() + ctx.delta())] == SheafSummand::ext(ctx.s() + ctx.delta(), -1 * ctx.w()));
  CHECK(parts[cell_index(ctx, ctx.s())] == SheafSummand::ext(ctx.s(), ctx.zero()));
  CHECK(summand_id(ctx, m, cell_index(ctx, ctx.s() + ctx.delta())) == "U:1,1,2,2@-1*w");

  CHECK_THROWS_AS(build_candidate(ctx, grid.from_members({{0, 0}})), NotAnUpset);
  CHECK(twisted_candidate(t, 2).twists == std::vector<int>(28, 2));

  const Candidate back = candidate_from_json(nlohmann::json::parse(to_json(ctx, m).dump()));
  CHECK(back == m);
  CHECK(back.upset == m.upset);
}

TEST_CASE("every upset gives a tilting bundle") {
  for (const Weights& p : {Weights{2, 2, 2, 3}, Weights{2, 2, 2, 4}, Weights{2, 2, 3, 3}}) {
    const HomEngine eng{GLContext(p)};
    for (CellMask m : enumerate_upsets(eng.context())) CHECK(check_tilting_bundle(eng, build_candidate(eng.context(), m)).ok);
  }
}

TEST_CASE("corrupted candidate is rejected") {
  const HomEngine eng{GLContext({2, 2, 2, 4})};
  const GLContext& ctx = eng.context();
  Candidate c = build_candidate(ctx, 0);
  c.upset.reset();
  c.twists[cell_index(ctx, ctx.s())] = -1;
  const BundleVerdict v = check_tilting_bundle(eng, c);
  CHECK_FALSE(v.ok);
  REQUIRE(v.witnesses.size() == 2);
  CHECK(v.witnesses[0].kind == "slice");
  CHECK(summand_id(ctx, c, v.witnesses[0].src) == "U:1,1,1,2@0*w");
  CHECK(summand_id(ctx, c, v.witnesses[0].dst) == "U:1,1,1,1@-1*w");
  CHECK(v.witnesses[0].ell == 1);
  CHECK(v.witnesses[0].dim == 1);
  CHECK(summand_id(ctx, c, v.witnesses[1].src) == "U:1,1,1,3@0*w");

  Candidate doubled = build_candidate(ctx, 0);
  doubled.twists.pop_back();
  CHECK_THROWS_AS(check_tilting_bundle(eng, doubled), NotSameOrbitStructure);
}

TEST_CASE("stable classification") {
  const HomEngine a{GLContext({2, 2, 2, 4})};
  const GLContext& ca = a.context();
  const UpsetGrid ga(ca);
  for (CellMask m : enumerate_upsets(ca)) {
    const StableVerdict v = check_stable_tilting(a, build_candidate(ca, m));
    CHECK(v.closed_form == classify_closed_form(ca, m));
    CHECK(v.tilting == classify_closed_form(ca, m));
  }
  CHECK_FALSE(check_stable_tilting(a, build_candidate(ca, ga.from_members({{0, 2}}))).tilting);

  const HomEngine b{GLContext({2, 2, 3, 3})};
  const GLContext& cb = b.context();
  const UpsetGrid gb(cb);
  const StableVerdict bad = check_stable_tilting(b, build_candidate(cb, gb.from_members({{1, 0}, {1, 1}})));
  CHECK_FALSE(bad.tilting);
  CHECK(b.stable_hom(SheafSummand::ext(cb.s() + cb.x(4), cb.zero()), SheafSummand::ext(cb.s() + cb.x(3), -1 * cb.w()),
                     -1) == 1);
  CHECK(check_stable_tilting(b, build_candidate(cb, gb.from_members({{1, 1}}))).tilting);

  const HomEngine c{GLContext({2, 2, 3, 4})};
  CHECK_THROWS_AS(check_stable_tilting(c, build_candidate(c.context(), 0)), UnsupportedWeightType);
}

TEST_CASE("lifting criterion") {
  const HomEngine eng{GLContext({2, 2, 3, 3})};
  const GLContext& ctx = eng.context();
  const UpsetGrid grid(ctx);
  const LiftingReport t = check_lifting_criterion(eng, build_candidate(ctx, 0));
  CHECK(t.equal());
  const LiftingReport m = check_lifting_criterion(eng, build_candidate(ctx, grid.from_members({{1, 1}})));
  CHECK(m.module_end_dim > m.stable_end_dim);
  for (const Weights& p : {Weights{2, 2, 2, 4}, Weights{2, 2, 3, 3}}) {
    const HomEngine e{GLContext(p)};
    for (CellMask mask : enumerate_upsets(e.context())) {
      const Candidate c = build_candidate(e.context(), mask);
      if (check_lifting_criterion(e, c).equal()) CHECK(check_stable_tilting(e, c).tilting);
    }
  }
  const std::vector<SheafSummand> single{SheafSummand::ext(ctx.s(), ctx.zero())};
  CHECK(end_finite_algebra(eng, single, HomLevel::Module).dim() == 1);
  CHECK(end_finite_algebra(eng, single, HomLevel::Stable).dim() == 1);
}

TEST_CASE("mutations") {
  const HomEngine eng{GLContext({2, 2, 2, 4})};
  const GLContext& ctx = eng.context();
  const Candidate t = build_candidate(ctx, 0);
  const int top = cell_index(ctx, ctx.s() + 2 * ctx.x(4));
  REQUIRE(is_admissible(eng, t, {top}, MutationDirection::Plus));
  const Candidate m = apr_mutate(eng, t, {top}, MutationDirection::Plus);
  CHECK(m.twists[top] == -1);
  CHECK(apr_mutate(eng, m, {top}, MutationDirection::Minus) == t);
  CHECK(check_tilting_bundle(eng, m).ok);

  std::vector<int> all(t.size());
  for (int i = 0; i < t.size(); ++i) all[i] = i;
  CHECK(apr_mutate(eng, t, all, MutationDirection::Minus) == twisted_candidate(t, 1));

  const int bottom = cell_index(ctx, ctx.s());
  std::string reason;
  CHECK_FALSE(is_admissible(eng, t, {bottom}, MutationDirection::Plus, &reason));
  CHECK_FALSE(reason.empty());
  CHECK_THROWS_AS(apr_mutate(eng, t, {bottom}, MutationDirection::Plus), NotAdmissible);
}

TEST_CASE("random mutations stay tilting") {
  const HomEngine eng{GLContext({2, 2, 2, 4})};
  std::mt19937_64 rng(2024);
  Candidate c = build_candidate(eng.context(), 0);
  int moved = 0;
  for (int i = 0; i < 100; ++i) {
    const Candidate next = random_mutations(eng, c, 1, rng);
    moved += next != c;
    c = next;
    CHECK(check_tilting_bundle(eng, c, true).ok);
  }
  CHECK(moved == 100);
}

TEST_CASE("mutation walks") {
  const HomEngine eng{GLContext({2, 2, 2, 4})};
  const GLContext& ctx = eng.context();
  const Candidate t = build_candidate(ctx, 0);
  CHECK(mutation_walk(eng, t, t).empty());

  const auto up = mutation_walk(eng, t, twisted_candidate(t, 1), true);
  CHECK(static_cast<int>(up.size()) == t.size());
  CHECK(replay(eng, t, up) == twisted_candidate(t, 1));

  const int top = cell_index(ctx, ctx.s() + 2 * ctx.x(4));
  const Candidate m = apr_mutate(eng, t, {top}, MutationDirection::Plus);
  const auto one = mutation_walk(eng, t, m, true);
  REQUIRE(one.size() == 1);
  CHECK(one[0].summand == top);
  CHECK(one[0].direction == MutationDirection::Plus);
  CHECK(one[0].before == 0);
  CHECK(one[0].after == -1);

  const Candidate full = build_candidate(ctx, UpsetGrid(ctx).full());
  const auto steps = mutation_walk(eng, full, t, true);
  CHECK(replay(eng, full, steps) == t);
  const nlohmann::json j = to_json(ctx, steps, full);
  CHECK(j.size() == steps.size());

  Candidate wrong = t;
  wrong.weights = {2, 2, 2, 3};
  CHECK_THROWS_AS(mutation_walk(eng, t, wrong), NotSameOrbitStructure);
}

TEST_CASE("End quivers") {
  const HomEngine eng{GLContext({2, 2, 3, 3})};
  const GLContext& ctx = eng.context();
  const UpsetGrid grid(ctx);
  const Candidate m = build_candidate(ctx, grid.from_members({{1, 1}}));
  const EndQuiver q = end_quiver(eng, m, EndPart::Stable);
  // U^s, U^{s+x4}, U^{s+x3}, U^{s+delta}(-w)
  CHECK(q.arrows == std::vector<std::vector<int>>{{0, 0, 0, 1}, {1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}});
  CHECK(q.relations == std::vector<std::vector<int>>{{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 1}, {0, 0, 0, 0}});
  CHECK(q.gldim == 2);
  CHECK(q.distance[1][3] == 2);

  const FiniteAlgebra line = end_finite_algebra(eng, {SheafSummand::line(ctx.zero())}, HomLevel::Module);
  CHECK(line.vertices() == 1);
  CHECK(line.arrows() == std::vector<std::vector<int>>{{0}});
  CHECK(line.global_dimension() == 0);

  for (CellMask mask : enumerate_upsets(ctx)) {
    const auto g = gldim_end(eng, build_candidate(ctx, mask), EndPart::Bundle);
    REQUIRE(g);
    CHECK(*g <= 2);
  }
}

TEST_CASE("walk down one twist") {
  const HomEngine eng{GLContext({2, 2, 2, 3})};
  const Candidate t = build_candidate(eng.context(), 0);
  const auto down = mutation_walk(eng, t, twisted_candidate(t, -1), true);
  CHECK(static_cast<int>(down.size()) == t.size());
  for (const auto& s : down) CHECK(s.after == s.before - 1);
}

}  // TEST_SUITE
