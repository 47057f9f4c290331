#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "glt/tiltlab.hpp"

namespace glt {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class VertexKind { Projective, CM, StableShift };
std::string to_string(VertexKind k);
VertexKind vertex_kind_from_string(const std::string& s);

struct QuiverVertex {
  std::string id;
  std::string label;
  VertexKind kind = VertexKind::CM;
  int row = 0;     // tau-orbit
  int column = 0;  // translation coordinate
  std::string cluster;  // shared by overlapping projective positions

  friend bool operator==(const QuiverVertex&, const QuiverVertex&) = default;
};

struct QuiverArrow {
  std::string src;
  std::string dst;
  int multiplicity = 1;

  friend bool operator==(const QuiverArrow&, const QuiverArrow&) = default;
};

struct QuiverDoc {
  std::string name;
  Weights weights{};
  std::vector<QuiverVertex> vertices;
  std::vector<QuiverArrow> arrows;

  // Throws std::invalid_argument on duplicate ids, unknown endpoints or
  // multiplicities below 1.
  void validate() const;
  int vertex_index(const std::string& id) const;  // -1 if absent
  friend bool operator==(const QuiverDoc&, const QuiverDoc&) = default;
};

nlohmann::json to_json(const QuiverDoc& q);
QuiverDoc quiver_from_json(const nlohmann::json& j);
std::string to_dot(const QuiverDoc& q);
QuiverDoc quiver_from_dot(const std::string& text);
std::string to_csv(const QuiverDoc& q);

constexpr int kDefaultWindow = 3;

// Stable AR quiver (ZQ over the window of w-twists around the slice) with
// LabelMap labels. Projectives are overlaid as isolated vertices in an extra
// row, one per R(x) with x in S + kw.
QuiverDoc emit_stable_ar(const GLContext& ctx, int window = kDefaultWindow, bool projective_overlay = true);

// Interior vertices x (tau x inside the window) whose mesh fails: the
// predecessors of x must be the successors of tau x with equal multiplicity.
std::vector<std::string> mesh_violations(const QuiverDoc& q);
// Vertices x of a stable AR document with tau x present.
int mesh_count(const QuiverDoc& q);

// Quiver of the cluster tilting subcategory add{T(kw)} in CM: vertices
// U^l(kw) and R(x + kw) for |k| <= window, arrows dim rad/rad^2 inside the
// window's full subcategory.
QuiverDoc emit_ct_quiver(const HomEngine& eng, int window = 1);
// Arrow counts between projective clusters and extension-bundle vertices.
std::vector<QuiverArrow> bundled_arrows(const QuiverDoc& ct);

struct HammockRow {
  std::string id;
  std::string label;
  int k = 0;
  int v = 0;
  int dim = 0;
  std::optional<int> mf_dim;
};
// Hom dims from `source` over mesh columns [k_min, k_max]; with a realizer
// the matrix factorization value is added per cell.
std::vector<HammockRow> emit_hammock_table(const LabelMap& labels, const DynkinObject& source, int k_min, int k_max,
                                           const StableRealizer* realizer = nullptr);
nlohmann::json hammock_json(const std::vector<HammockRow>& rows);
std::string hammock_csv(const std::vector<HammockRow>& rows);

struct ClassificationRow {
  std::string upset;  // sorted cell list
  CellMask mask = 0;
  bool bundle = false;
  bool stable = false;
  std::optional<bool> closed_form;
  std::optional<int> gldim;
  std::string witness;
};

// One row per upset, sorted by the upset's canonical text; upsets are
// checked on `jobs` worker threads.
std::vector<ClassificationRow> report_classification(const HomEngine& eng, int jobs = 1);
nlohmann::json classification_json(const GLContext& ctx, const std::vector<ClassificationRow>& rows);
std::string classification_csv(const std::vector<ClassificationRow>& rows);

// Vertex id for an object of the stable category.
std::string stable_id(const LabelMap& labels, const DynkinObject& x);
std::string twist_text(const GLContext& ctx, const GLElement& x);

}  // namespace glt
