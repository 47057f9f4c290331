#pragma once

#include <functional>
#include <json.hpp>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "glt/mfcore.hpp"

namespace glt {

struct InconsistentSequence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Line bundle O(x), or extension bundle U^l twisted by an element.
struct SheafSummand {
  enum class Kind { Line, Ext };

  Kind kind = Kind::Line;
  GLElement ell;    // Ext only
  GLElement twist;  // x for O(x); the twist of U^l

  static SheafSummand line(const GLElement& x) { return {Kind::Line, x, x}; }
  static SheafSummand ext(const GLElement& ell, const GLElement& twist) { return {Kind::Ext, ell, twist}; }

  bool is_line() const { return kind == Kind::Line; }
  SheafSummand twisted(const GLElement& y) const;
  // "O:λ1,λ2,λ3,λ4;λ" or "U:λ1,λ2,λ3,λ4@λ1,λ2,λ3,λ4;λ"
  std::string label() const;

  friend bool operator==(const SheafSummand& a, const SheafSummand& b) {
    return a.kind == b.kind && a.twist == b.twist && (a.kind == Kind::Line || a.ell == b.ell);
  }
};

// Accepts "O:x", "P:x" and "U:l1,l2,l3,l4[;0][@twist]" where twist is
// "k*w", "k*w+x" or an element.
SheafSummand parse_summand(const GLContext& ctx, const std::string& text);

struct FourTermReport {
  std::array<int, 4> hom{};
  std::array<int, 4> ext2{};
  std::array<int, 4> ext1{};
  int alternating_sum = 0;
  bool holds() const { return alternating_sum == 0; }
};

enum class Side { Covariant, Contravariant };

// Hom/Ext dimensions in coh X between formal summands, with a twist-invariant
// memo table shared across calls (thread-safe).
class HomEngine {
 public:
  explicit HomEngine(const GLContext& ctx);

  const GLContext& context() const { return ring_->context(); }
  const GradedRing& ring() const { return *ring_; }

  GradedMF mf(const SheafSummand& a) const;

  int hom_dim(const SheafSummand& a, const SheafSummand& b) const;
  int ext1_dim(const SheafSummand& a, const SheafSummand& b) const;
  int ext2_dim(const SheafSummand& a, const SheafSummand& b) const;
  int euler(const SheafSummand& a, const SheafSummand& b) const;
  // Module-level (= sheaf) or stable Hom, the latter from a to b[n].
  int module_hom(const SheafSummand& a, const SheafSummand& b) const { return hom_dim(a, b); }
  int stable_hom(const SheafSummand& a, const SheafSummand& b, int n = 0) const;

  // Smallest L0 >= 0 with Hom(a, b(l w)) = 0 for all l > L0; the scan range
  // comes from generator degrees, so no l beyond it can contribute.
  int vanishing_bound(const SheafSummand& a, const SheafSummand& b) const;

  // Alternating identity for 0 -> O -> U^l -> ⊕ O(2c-l+l_i x_i) -> O(3c-l) -> 0.
  FourTermReport four_term_hom_check(const GLElement& ell, const SheafSummand& w, Side side) const;
  // The four terms X_0..X_3 of the sequence (X_2 as its line-bundle summands).
  std::vector<std::vector<SheafSummand>> four_term_sequence(const GLElement& ell) const;

  // Recompute the Ext^1 vanishing between line and extension bundles instead of assuming it.
  void set_debug(bool on) { debug_ = on; }

  nlohmann::json export_cache() const;
  void import_cache(const nlohmann::json& j);
  std::size_t cache_size() const;

 private:
  int cached(const std::string& key, const std::function<int()>& compute) const;
  std::string key(const char* op, const SheafSummand& a, const SheafSummand& b, int n) const;

  std::shared_ptr<GradedRing> ring_;
  bool debug_ = false;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, int> cache_;
};

}  // namespace glt
