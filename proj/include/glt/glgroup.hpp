#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace glt {

using Weights = std::array<int, 4>;

struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct NotFinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of the rank-one group L = <x1..x4, c | p_i x_i = c>, always kept in
// normal form sum lam_i x_i + l c with 0 <= lam_i < p_i.
struct GLElement {
  Weights weights{};
  std::array<int, 4> lam{};
  int l = 0;

  friend bool operator==(const GLElement& a, const GLElement& b) {
    return a.lam == b.lam && a.l == b.l && a.weights == b.weights;
  }
  friend bool operator!=(const GLElement& a, const GLElement& b) { return !(a == b); }

  friend GLElement operator+(const GLElement& a, const GLElement& b);
  friend GLElement operator-(const GLElement& a, const GLElement& b);
  friend GLElement operator-(const GLElement& a);
  friend GLElement operator*(long long k, const GLElement& a);
  GLElement& operator+=(const GLElement& o) { return *this = *this + o; }
  GLElement& operator-=(const GLElement& o) { return *this = *this - o; }

  // "λ1,λ2,λ3,λ4;λ"
  std::string str() const;
  // Rational degree sum lam_i/p_i + l, scaled by lcm(p) to stay integral.
  long long scaled_degree() const;
};

// Storage order for containers; unrelated to the partial order leq.
struct LexLess {
  bool operator()(const GLElement& a, const GLElement& b) const {
    if (a.l != b.l) return a.l < b.l;
    return a.lam < b.lam;
  }
};

struct GLElementHash {
  std::size_t operator()(const GLElement& x) const {
    std::size_t h = static_cast<std::size_t>(x.l) * 1000003u;
    for (int i = 0; i < 4; ++i) h = h * 131 + static_cast<std::size_t>(x.lam[i]) + 7u * static_cast<std::size_t>(x.weights[i]);
    return h;
  }
};

GLElement normalize(const Weights& p, const std::array<long long, 4>& raw, long long l);

enum class Dichotomy { NonNegative, BelowDualizingBound };

class GLContext {
 public:
  static constexpr int kDim = 2;

  explicit GLContext(const Weights& weights);

  const Weights& weights() const { return p_; }
  int weight(int i) const { return p_[i]; }
  int dim() const { return kDim; }
  // True for (2,2,p,q): the setting of the tilting theorem.
  bool is_theorem_type() const { return p_[0] == 2 && p_[1] == 2; }
  // True iff sum 1/p_i > 1, i.e. lambda(l w) -> -infinity.
  bool is_fano() const;

  GLElement zero() const { return element({0, 0, 0, 0}, 0); }
  GLElement x(int i) const;  // i in 1..4
  GLElement c() const { return c_; }
  GLElement w() const { return w_; }
  GLElement s() const { return s_; }
  GLElement delta() const { return delta_; }
  GLElement element(const std::array<long long, 4>& raw, long long l) const { return normalize(p_, raw, l); }
  // x_a - x_b
  GLElement t(int a, int b) const { return x(a) - x(b); }

  // Accepts the canonical "λ1,λ2,λ3,λ4;λ" (";λ" optional, defaults to 0)
  // with arbitrary integer coefficients, normalized on read.
  GLElement parse(const std::string& text) const;
  // "k*w+λ1,λ2,λ3,λ4;λ", "k*w" or a plain element.
  GLElement parse_twist(const std::string& text) const;

  std::string weights_str() const;

 private:
  Weights p_;
  GLElement c_, w_, s_, delta_;
};

bool leq(const GLElement& x, const GLElement& y);
bool is_nonnegative(const GLElement& x);
Dichotomy dichotomy(const GLContext& ctx, const GLElement& x);

// lambda(k w) by the closed form k - sum ceil(k / p_i), k >= 0.
long long lambda_of_w_multiple(const GLContext& ctx, long long k);

// {z : x <= z <= y}, sorted by LexLess.
std::vector<GLElement> interval(const GLContext& ctx, const GLElement& x, const GLElement& y);

bool in_S(const GLContext& ctx, const GLElement& x);
std::vector<GLElement> enumerate_S(const GLContext& ctx);

// Canonical coset representative of x in L / <gen>: residues of the Smith
// coordinates (free coordinates kept as is).
std::vector<long long> quotient_class(const GLContext& ctx, const GLElement& x, const GLElement& gen);
// |L / <gen>|; throws NotFinite when infinite.
long long quotient_order(const GLContext& ctx, const GLElement& gen);

using CellMask = std::uint64_t;

// The interval [s, s+delta] of a theorem type as the grid
// {s + a x3 + b x4 : 0 <= a <= p3-2, 0 <= b <= p4-2}, cell index a*cols + b.
class UpsetGrid {
 public:
  explicit UpsetGrid(const GLContext& ctx);

  const GLContext& context() const { return ctx_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_ * cols_; }
  int index(int a, int b) const { return a * cols_ + b; }
  std::pair<int, int> coords(int index) const { return {index / cols_, index % cols_}; }
  GLElement cell(int a, int b) const;
  GLElement cell(int index) const { auto [a, b] = coords(index); return cell(a, b); }
  std::optional<int> index_of(const GLElement& x) const;
  CellMask full() const { return size() == 64 ? ~CellMask{0} : ((CellMask{1} << size()) - 1); }

  bool is_upset(CellMask m) const;
  // Nonincreasing row thresholds; canonical order (popcount, mask).
  std::vector<CellMask> enumerate() const;
  // Tests every subset against the upset condition (small grids only).
  std::vector<CellMask> enumerate_bruteforce() const;

  std::vector<std::pair<int, int>> members(CellMask m) const;
  CellMask from_members(const std::vector<std::pair<int, int>>& cells) const;
  std::string describe(CellMask m) const;

 private:
  GLContext ctx_;
  int rows_, cols_;
};

// Upsets of [s, s+delta] by the definition (J + L_+) ∩ [s, s+delta] ⊆ J,
// brute force below 20 cells and staircase enumeration otherwise.
std::vector<CellMask> enumerate_upsets(const GLContext& ctx);

}  // namespace glt
