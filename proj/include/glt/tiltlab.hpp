#pragma once

#include <json.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "glt/algebra.hpp"
#include "glt/dynkin.hpp"
#include "glt/sheafhom.hpp"

namespace glt {

struct NotAnUpset : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotAdmissible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CyclicQuiver : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSameOrbitStructure : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The base bundle T = (⊕ U^l, l in [s, s+delta]) ⊕ (⊕ O(x), x in S) with one
// w-twist per summand. Extension bundles come first in grid order, then the
// line bundles in S order.
struct Candidate {
  Weights weights{};
  std::optional<CellMask> upset;  // provenance when built from an upset
  std::vector<int> twists;        // U_i(twists[i] w)

  int size() const { return static_cast<int>(twists.size()); }
  friend bool operator==(const Candidate& a, const Candidate& b) {
    return a.weights == b.weights && a.twists == b.twists;
  }
};

// Base summands of T (untwisted), in candidate order.
std::vector<SheafSummand> base_summands(const GLContext& ctx);
// Extension-bundle count: the size of [s, s+delta].
int ext_count(const GLContext& ctx);

std::vector<SheafSummand> summands(const GLContext& ctx, const Candidate& cand);
// "U:1,1,2,1@-1*w" or "P:0,0,1,0;0@0*w"
std::string summand_id(const GLContext& ctx, const Candidate& cand, int i);

Candidate build_candidate(const GLContext& ctx, CellMask upset);
// T itself with every summand twisted by k w.
Candidate twisted_candidate(const Candidate& cand, int k);

nlohmann::json to_json(const GLContext& ctx, const Candidate& cand);
Candidate candidate_from_json(const nlohmann::json& j);

struct BundleWitness {
  std::string kind;  // "orbit", "slice", "ext1"
  int src = -1;
  int dst = -1;
  int ell = 0;  // w-multiple for slice witnesses
  int dim = 0;
};

struct BundleVerdict {
  bool ok = true;
  std::vector<BundleWitness> witnesses;
};

// Slice criterion: one summand per w-orbit, Hom(M, M(l w)) = 0 for
// 1 <= l <= vanishing_bound, and Ext^1(M, M) = 0.
BundleVerdict check_tilting_bundle(const HomEngine& eng, const Candidate& cand, bool stop_at_first = false);

struct StableVerdict {
  bool tilting = false;
  std::optional<bool> closed_form;  // when the candidate carries an upset
  TiltingVerdict dynkin;
  std::vector<std::string> labels;
  std::vector<std::string> witness_text;
};

// Throws UnsupportedWeightType outside (2,2,2,q) and (2,2,3,3).
bool classify_closed_form(const GLContext& ctx, CellMask upset);
StableVerdict check_stable_tilting(const HomEngine& eng, const Candidate& cand);

struct LiftingReport {
  int module_end_dim = 0;
  int stable_end_dim = 0;
  bool equal() const { return module_end_dim == stable_end_dim; }
};
LiftingReport check_lifting_criterion(const HomEngine& eng, const Candidate& cand);

enum class MutationDirection { Plus, Minus };

struct MutationStep {
  MutationDirection direction = MutationDirection::Plus;
  int summand = 0;
  int before = 0;
  int after = 0;
};

nlohmann::json to_json(const GLContext& ctx, const std::vector<MutationStep>& steps, const Candidate& start);

// mu+ twists part by -w (needs Hom(rest, part) = 0); mu- twists part by w
// (needs Hom(part, rest) = 0). Throws NotAdmissible.
Candidate apr_mutate(const HomEngine& eng, const Candidate& cand, const std::vector<int>& part,
                     MutationDirection dir);
bool is_admissible(const HomEngine& eng, const Candidate& cand, const std::vector<int>& part, MutationDirection dir,
                   std::string* reason = nullptr);

// Single-summand mutations from `from` to `to`: global w-shifts first, then
// repeated mu+ on the summands with maximal twist gap, sources first.
std::vector<MutationStep> mutation_walk(const HomEngine& eng, const Candidate& from, const Candidate& to,
                                        bool verify = false);
Candidate replay(const HomEngine& eng, const Candidate& from, const std::vector<MutationStep>& steps);

// Random admissible single-summand mutations.
Candidate random_mutations(const HomEngine& eng, const Candidate& cand, int count, std::mt19937_64& rng);

struct EndQuiver {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> arrows;     // [i][j]: arrows i -> j ("i then j")
  std::vector<std::vector<int>> relations;  // [i][j]: minimal relations from i to j
  std::vector<std::vector<int>> hom;        // [i][j] = dim e_i A e_j
  // shortest path length from i to j in the quiver, -1 if none
  std::vector<std::vector<int>> distance;
  std::optional<int> gldim;
};

enum class EndPart { Bundle, Stable };

FiniteAlgebra end_finite_algebra(const HomEngine& eng, const std::vector<SheafSummand>& parts, HomLevel level);
EndQuiver end_quiver(const HomEngine& eng, const Candidate& cand, EndPart part, int gldim_cap = 6);
std::optional<int> gldim_end(const HomEngine& eng, const Candidate& cand, EndPart part, int cap = 6);

// Matrix factorizations for every object of the Dynkin model, so hammocks can
// be recomputed in the stable category of CM modules.
class StableRealizer {
 public:
  StableRealizer(const HomEngine& eng, const LabelMap& labels);
  GradedMF realize(const DynkinObject& x) const;
  int hom_dim(const DynkinObject& a, const DynkinObject& b) const;

 private:
  const HomEngine* eng_;
  const LabelMap* labels_;
  std::optional<GradedMF> center_;  // G for D4
};

}  // namespace glt
