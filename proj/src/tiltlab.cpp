#include "glt/tiltlab.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace glt {

namespace {

void require_theorem_type(const GLContext& ctx) {
  if (!ctx.is_theorem_type()) throw UnsupportedWeightType("candidates need weight type (2,2,p,q), got " + ctx.weights_str());
}

std::string twist_str(int k) { return std::to_string(k) + "*w"; }

}  // namespace

int ext_count(const GLContext& ctx) {
  require_theorem_type(ctx);
  return UpsetGrid(ctx).size();
}

std::vector<SheafSummand> base_summands(const GLContext& ctx) {
  require_theorem_type(ctx);
  const UpsetGrid grid(ctx);
  std::vector<SheafSummand> out;
  for (int i = 0; i < grid.size(); ++i) out.push_back(SheafSummand::ext(grid.cell(i), ctx.zero()));
  for (const auto& x : enumerate_S(ctx)) out.push_back(SheafSummand::line(x));
  return out;
}

std::vector<SheafSummand> summands(const GLContext& ctx, const Candidate& cand) {
  std::vector<SheafSummand> base = base_summands(ctx);
  if (static_cast<int>(base.size()) != cand.size())
    throw NotSameOrbitStructure("candidate has " + std::to_string(cand.size()) + " twists for " +
                                std::to_string(base.size()) + " summands");
  for (int i = 0; i < cand.size(); ++i) base[i] = base[i].twisted(cand.twists[i] * ctx.w());
  return base;
}

std::string summand_id(const GLContext& ctx, const Candidate& cand, int i) {
  const SheafSummand b = base_summands(ctx).at(i);
  if (b.is_line()) return "P:" + b.twist.str() + "@" + twist_str(cand.twists[i]);
  const std::string l = b.ell.str();
  return "U:" + l.substr(0, l.find(';')) + "@" + twist_str(cand.twists[i]);
}

Candidate build_candidate(const GLContext& ctx, CellMask upset) {
  require_theorem_type(ctx);
  const UpsetGrid grid(ctx);
  if ((upset & ~grid.full()) != 0 || !grid.is_upset(upset))
    throw NotAnUpset("cells " + grid.describe(upset) + " do not form an upset");
  Candidate c;
  c.weights = ctx.weights();
  c.upset = upset;
  c.twists.assign(grid.size() + enumerate_S(ctx).size(), 0);
  for (int i = 0; i < grid.size(); ++i)
    if (upset >> i & 1) c.twists[i] = -1;
  return c;
}

Candidate twisted_candidate(const Candidate& cand, int k) {
  Candidate out = cand;
  out.upset.reset();
  for (int& t : out.twists) t += k;
  return out;
}

nlohmann::json to_json(const GLContext& ctx, const Candidate& cand) {
  nlohmann::json j;
  j["schema"] = "glt/1";
  j["weights"] = cand.weights;
  if (cand.upset) {
    const UpsetGrid grid(ctx);
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [a, b] : grid.members(*cand.upset)) cells.push_back({a, b});
    j["upset"] = cells;
  } else {
    j["upset"] = nullptr;
  }
  j["twists"] = cand.twists;
  nlohmann::json ids = nlohmann::json::array();
  for (int i = 0; i < cand.size(); ++i) ids.push_back(summand_id(ctx, cand, i));
  j["summands"] = ids;
  return j;
}

Candidate candidate_from_json(const nlohmann::json& j) {
  Candidate c;
  c.weights = j.at("weights").get<Weights>();
  const GLContext ctx(c.weights);
  if (j.contains("upset") && !j["upset"].is_null()) {
    const UpsetGrid grid(ctx);
    std::vector<std::pair<int, int>> cells;
    for (const auto& cell : j["upset"]) cells.emplace_back(cell.at(0).get<int>(), cell.at(1).get<int>());
    c.upset = grid.from_members(cells);
  }
  if (j.contains("twists")) {
    c.twists = j["twists"].get<std::vector<int>>();
  } else {
    c = build_candidate(ctx, c.upset.value_or(0));
  }
  if (static_cast<int>(base_summands(ctx).size()) != c.size())
    throw std::invalid_argument("twist vector length does not match the base bundle");
  return c;
}

BundleVerdict check_tilting_bundle(const HomEngine& eng, const Candidate& cand, bool stop_at_first) {
  const GLContext& ctx = eng.context();
  const std::vector<SheafSummand> m = summands(ctx, cand);
  BundleVerdict out;
  auto fail = [&](BundleWitness w) {
    out.ok = false;
    out.witnesses.push_back(std::move(w));
    return stop_at_first;
  };
  // one summand per w-orbit of the cluster tilting subcategory
  std::set<std::vector<long long>> line_classes;
  std::set<std::string> ext_orbits;
  int lines = 0;
  for (int i = 0; i < cand.size(); ++i) {
    if (m[i].is_line()) {
      ++lines;
      if (!line_classes.insert(quotient_class(ctx, m[i].twist, ctx.w())).second && fail({"orbit", i, -1, 0, 0}))
        return out;
    } else if (!ext_orbits.insert(m[i].ell.str()).second && fail({"orbit", i, -1, 0, 0})) {
      return out;
    }
  }
  if (lines != quotient_order(ctx, ctx.w()) && fail({"orbit", -1, -1, 0, lines})) return out;

  for (int i = 0; i < cand.size(); ++i)
    for (int j = 0; j < cand.size(); ++j) {
      const int bound = eng.vanishing_bound(m[i], m[j]);
      if (bound > 0) {
        for (int l = 1; l <= bound; ++l) {
          const int h = eng.hom_dim(m[i], m[j].twisted(l * ctx.w()));
          if (h > 0) {
            if (fail({"slice", i, j, l, h})) return out;
            break;
          }
        }
      }
      const int e = eng.ext1_dim(m[i], m[j]);
      if (e > 0 && fail({"ext1", i, j, 0, e})) return out;
    }
  return out;
}

bool classify_closed_form(const GLContext& ctx, CellMask upset) {
  const Weights& p = ctx.weights();
  const UpsetGrid grid(ctx);
  if (!grid.is_upset(upset)) throw NotAnUpset("not an upset: " + grid.describe(upset));
  if (p[0] == 2 && p[1] == 2 && p[2] == 2) {
    // upsets of the chain are the tails [s + m x4, s + (q-2) x4]
    return upset == 0 || upset == grid.full();
  }
  if (p == Weights{2, 2, 3, 3}) {
    const CellMask x3_tail = grid.from_members({{1, 0}, {1, 1}});
    const CellMask x4_tail = grid.from_members({{0, 1}, {1, 1}});
    return upset != x3_tail && upset != x4_tail;
  }
  throw UnsupportedWeightType("no closed-form classification for " + ctx.weights_str());
}

FiniteAlgebra end_finite_algebra(const HomEngine& eng, const std::vector<SheafSummand>& parts, HomLevel level) {
  std::vector<GradedMF> mfs;
  for (const auto& p : parts) mfs.push_back(eng.mf(p));
  return FiniteAlgebra::from_end(end_algebra(eng.ring(), mfs, level));
}

StableVerdict check_stable_tilting(const HomEngine& eng, const Candidate& cand) {
  const GLContext& ctx = eng.context();
  const LabelMap labels(ctx);
  const std::vector<SheafSummand> m = summands(ctx, cand);
  std::vector<SheafSummand> w;
  std::vector<int> index;
  std::vector<DynkinObject> objs;
  StableVerdict out;
  for (int i = 0; i < cand.size(); ++i) {
    if (m[i].is_line()) continue;
    w.push_back(m[i]);
    index.push_back(i);
    objs.push_back(labels.to_dynkin(m[i]));
    out.labels.push_back(labels.label(objs.back()));
  }
  out.dynkin = labels.model().is_stable_tilting(
      objs, [&] { return end_finite_algebra(eng, w, HomLevel::Stable).global_dimension(6); });
  out.tilting = out.dynkin.tilting();
  for (const auto& wit : out.dynkin.witnesses)
    out.witness_text.push_back("Hom(" + summand_id(ctx, cand, index[wit.src]) + ", " +
                               summand_id(ctx, cand, index[wit.dst]) + "[" + std::to_string(wit.shift) +
                               "]) = " + std::to_string(wit.dim));
  if (cand.upset) out.closed_form = classify_closed_form(ctx, *cand.upset);
  return out;
}

LiftingReport check_lifting_criterion(const HomEngine& eng, const Candidate& cand) {
  const std::vector<SheafSummand> m = summands(eng.context(), cand);
  LiftingReport r;
  for (const auto& a : m)
    for (const auto& b : m) {
      if (a.is_line() || b.is_line()) continue;
      r.module_end_dim += eng.hom_dim(a, b);
      r.stable_end_dim += eng.stable_hom(a, b, 0);
    }
  return r;
}

bool is_admissible(const HomEngine& eng, const Candidate& cand, const std::vector<int>& part, MutationDirection dir,
                   std::string* reason) {
  const GLContext& ctx = eng.context();
  const std::vector<SheafSummand> m = summands(ctx, cand);
  std::vector<bool> in(cand.size(), false);
  for (int p : part) in.at(p) = true;
  for (int p : part)
    for (int t = 0; t < cand.size(); ++t) {
      if (in[t]) continue;
      const bool plus = dir == MutationDirection::Plus;
      const int h = plus ? eng.hom_dim(m[t], m[p]) : eng.hom_dim(m[p], m[t]);
      if (h > 0) {
        if (reason) {
          const std::string a = summand_id(ctx, cand, plus ? t : p), b = summand_id(ctx, cand, plus ? p : t);
          *reason = "Hom(" + a + ", " + b + ") = " + std::to_string(h);
        }
        return false;
      }
    }
  return true;
}

Candidate apr_mutate(const HomEngine& eng, const Candidate& cand, const std::vector<int>& part,
                     MutationDirection dir) {
  std::string reason;
  if (!is_admissible(eng, cand, part, dir, &reason)) throw NotAdmissible("mutation not admissible: " + reason);
  Candidate out = cand;
  out.upset.reset();
  for (int p : part) out.twists[p] += dir == MutationDirection::Plus ? -1 : 1;
  return out;
}

namespace {

// Summands ordered so that Hom(W_i, W_j) = 0 for i > j, ties by base index.
std::vector<int> topological_order(const HomEngine& eng, const Candidate& cand, const std::vector<int>& subset) {
  const std::vector<SheafSummand> m = summands(eng.context(), cand);
  const int n = static_cast<int>(subset.size());
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && eng.hom_dim(m[subset[a]], m[subset[b]]) > 0) {
        succ[a].push_back(b);
        ++indeg[b];
      }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int a = 0; a < n; ++a)
    if (indeg[a] == 0) ready.push(a);
  std::vector<int> order;
  while (!ready.empty()) {
    const int a = ready.top();
    ready.pop();
    order.push_back(subset[a]);
    for (int b : succ[a])
      if (--indeg[b] == 0) ready.push(b);
  }
  if (static_cast<int>(order.size()) != n) throw CyclicQuiver("the quiver of the bundle has an oriented cycle");
  return order;
}

}  // namespace

std::vector<MutationStep> mutation_walk(const HomEngine& eng, const Candidate& from, const Candidate& to,
                                        bool verify) {
  if (from.weights != to.weights || from.size() != to.size())
    throw NotSameOrbitStructure("candidates are built on different bundles");
  std::vector<MutationStep> steps;
  Candidate cur = from;
  std::vector<int> all(cur.size());
  for (int i = 0; i < cur.size(); ++i) all[i] = i;
  auto apply = [&](int i, MutationDirection dir) {
    const int before = cur.twists[i];
    cur = apr_mutate(eng, cur, {i}, dir);
    steps.push_back({dir, i, before, cur.twists[i]});
    if (verify && !check_tilting_bundle(eng, cur, true).ok)
      throw std::logic_error("intermediate candidate failed the slice check");
  };
  int lift = 0;
  for (int i = 0; i < cur.size(); ++i) lift = std::max(lift, to.twists[i] - cur.twists[i]);
  for (int r = 0; r < lift; ++r) {
    const std::vector<int> order = topological_order(eng, cur, all);
    for (auto it = order.rbegin(); it != order.rend(); ++it) apply(*it, MutationDirection::Minus);
  }
  for (;;) {
    int gap = 0;
    for (int i = 0; i < cur.size(); ++i) gap = std::max(gap, cur.twists[i] - to.twists[i]);
    if (gap == 0) break;
    std::vector<int> top;
    for (int i = 0; i < cur.size(); ++i)
      if (cur.twists[i] - to.twists[i] == gap) top.push_back(i);
    for (int i : topological_order(eng, cur, top)) apply(i, MutationDirection::Plus);
  }
  return steps;
}

Candidate replay(const HomEngine& eng, const Candidate& from, const std::vector<MutationStep>& steps) {
  Candidate cur = from;
  for (const auto& s : steps) {
    if (cur.twists.at(s.summand) != s.before) throw std::invalid_argument("step does not match the candidate");
    cur = apr_mutate(eng, cur, {s.summand}, s.direction);
  }
  return cur;
}

Candidate random_mutations(const HomEngine& eng, const Candidate& cand, int count, std::mt19937_64& rng) {
  Candidate cur = cand;
  std::uniform_int_distribution<int> pick(0, cand.size() - 1);
  std::bernoulli_distribution coin(0.5);
  for (int done = 0, attempts = 0; done < count && attempts < 50 * count; ++attempts) {
    const int i = pick(rng);
    const MutationDirection dir = coin(rng) ? MutationDirection::Plus : MutationDirection::Minus;
    if (!is_admissible(eng, cur, {i}, dir)) continue;
    cur = apr_mutate(eng, cur, {i}, dir);
    ++done;
  }
  return cur;
}

nlohmann::json to_json(const GLContext& ctx, const std::vector<MutationStep>& steps, const Candidate& start) {
  nlohmann::json arr = nlohmann::json::array();
  Candidate cur = start;
  for (const auto& s : steps) {
    const std::string id = summand_id(ctx, cur, s.summand);
    cur.twists[s.summand] = s.after;
    arr.push_back({{"direction", s.direction == MutationDirection::Plus ? "+" : "-"},
                   {"summand", id},
                   {"before", s.before},
                   {"after", s.after}});
  }
  return arr;
}

EndQuiver end_quiver(const HomEngine& eng, const Candidate& cand, EndPart part, int gldim_cap) {
  const GLContext& ctx = eng.context();
  const std::vector<SheafSummand> m = summands(ctx, cand);
  std::vector<SheafSummand> parts;
  EndQuiver q;
  for (int i = 0; i < cand.size(); ++i) {
    if (part == EndPart::Stable && m[i].is_line()) continue;
    parts.push_back(m[i]);
    q.labels.push_back(summand_id(ctx, cand, i));
  }
  const FiniteAlgebra alg = end_finite_algebra(eng, parts, part == EndPart::Stable ? HomLevel::Stable : HomLevel::Module);
  alg.check_basic();
  const int n = alg.vertices();
  q.arrows = alg.arrows();
  q.relations = alg.relations();
  q.hom.assign(n, std::vector<int>(n, 0));
  for (int b = 0; b < alg.dim(); ++b) ++q.hom[alg.src(b)][alg.dst(b)];
  q.distance.assign(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::queue<int> bfs;
    q.distance[s][s] = 0;
    bfs.push(s);
    while (!bfs.empty()) {
      const int a = bfs.front();
      bfs.pop();
      for (int b = 0; b < n; ++b)
        if (q.arrows[a][b] > 0 && q.distance[s][b] < 0) {
          q.distance[s][b] = q.distance[s][a] + 1;
          bfs.push(b);
        }
    }
  }
  q.gldim = alg.global_dimension(gldim_cap);
  return q;
}

std::optional<int> gldim_end(const HomEngine& eng, const Candidate& cand, EndPart part, int cap) {
  const std::vector<SheafSummand> m = summands(eng.context(), cand);
  std::vector<SheafSummand> parts;
  for (const auto& s : m)
    if (part == EndPart::Bundle || !s.is_line()) parts.push_back(s);
  const FiniteAlgebra alg =
      end_finite_algebra(eng, parts, part == EndPart::Stable ? HomLevel::Stable : HomLevel::Module);
  alg.check_basic();
  return alg.global_dimension(cap);
}

namespace {

PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

}  // namespace

StableRealizer::StableRealizer(const HomEngine& eng, const LabelMap& labels) : eng_(&eng), labels_(&labels) {
  if (labels.model().kind() != DynkinKind::D4) return;
  const GLContext& ctx = eng.context();
  // AR triangle U^{s+delta} -> U^{s+x3} ⊕ U^{s+x4} -> G -> U^{s+delta}[1]
  const GradedMF src = eng.mf(SheafSummand::ext(ctx.s() + ctx.delta(), ctx.zero()));
  const GradedMF y3 = eng.mf(SheafSummand::ext(ctx.s() + ctx.x(3), ctx.zero()));
  const GradedMF y4 = eng.mf(SheafSummand::ext(ctx.s() + ctx.x(4), ctx.zero()));
  const MFHomSpace h3(eng.ring(), src, y3, HomLevel::Stable), h4(eng.ring(), src, y4, HomLevel::Stable);
  if (h3.dim() != 1 || h4.dim() != 1) throw InvariantViolation("irreducible maps out of U^{s+delta} not found");
  const MFMorphism f{vstack(h3.basis(0).a, h4.basis(0).a), vstack(h3.basis(0).b, h4.basis(0).b)};
  center_ = cone(ctx, src, direct_sum(y3, y4), f);
  center_->validate(ctx);
}

GradedMF StableRealizer::realize(const DynkinObject& x) const {
  const GLContext& ctx = eng_->context();
  if (auto s = labels_->to_sheaf(x)) return suspend_n(ctx, eng_->mf(s->first), s->second);
  const auto [k, v] = labels_->model().mesh_coordinates(x);
  if (!center_ || v != 3) throw LabelOutOfRange("no realization for " + x.str());
  // tau^{-m} G = G(-m w)[-m], G = tau^{-2} P_3
  const int m = k - 2;
  return suspend_n(ctx, twist(*center_, (-m) * ctx.w()), -m);
}

int StableRealizer::hom_dim(const DynkinObject& a, const DynkinObject& b) const {
  return stable_hom_dim(eng_->ring(), realize(a), realize(b));
}

}  // namespace glt
