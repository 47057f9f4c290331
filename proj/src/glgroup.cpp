#include "glt/glgroup.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "glt/linalg.hpp"

namespace glt {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void require_same(const GLElement& a, const GLElement& b) {
  if (a.weights != b.weights) throw std::invalid_argument("GL elements from different weight types");
}

std::vector<long long> split_ints(const std::string& text, char sep) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) throw std::invalid_argument("empty coefficient in '" + text + "'");
    std::size_t used = 0;
    long long v = std::stoll(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

GLElement normalize(const Weights& p, const std::array<long long, 4>& raw, long long l) {
  GLElement out;
  out.weights = p;
  long long carry = l;
  for (int i = 0; i < 4; ++i) {
    const long long q = floor_div(raw[i], p[i]);
    out.lam[i] = static_cast<int>(raw[i] - q * p[i]);
    carry += q;
  }
  out.l = static_cast<int>(carry);
  return out;
}

GLElement operator+(const GLElement& a, const GLElement& b) {
  require_same(a, b);
  std::array<long long, 4> raw{};
  for (int i = 0; i < 4; ++i) raw[i] = static_cast<long long>(a.lam[i]) + b.lam[i];
  return normalize(a.weights, raw, static_cast<long long>(a.l) + b.l);
}

GLElement operator-(const GLElement& a) {
  std::array<long long, 4> raw{};
  for (int i = 0; i < 4; ++i) raw[i] = -static_cast<long long>(a.lam[i]);
  return normalize(a.weights, raw, -static_cast<long long>(a.l));
}

GLElement operator-(const GLElement& a, const GLElement& b) { return a + (-b); }

GLElement operator*(long long k, const GLElement& a) {
  std::array<long long, 4> raw{};
  for (int i = 0; i < 4; ++i) raw[i] = k * a.lam[i];
  return normalize(a.weights, raw, k * a.l);
}

std::string GLElement::str() const {
  std::ostringstream os;
  os << lam[0] << ',' << lam[1] << ',' << lam[2] << ',' << lam[3] << ';' << l;
  return os.str();
}

long long GLElement::scaled_degree() const {
  long long L = 1;
  for (int p : weights) L = std::lcm(L, static_cast<long long>(p));
  long long d = L * l;
  for (int i = 0; i < 4; ++i) d += lam[i] * (L / weights[i]);
  return d;
}

GLContext::GLContext(const Weights& weights) : p_(weights) {
  for (int p : p_)
    if (p < 2) throw std::invalid_argument("weights must be >= 2");
  c_ = element({0, 0, 0, 0}, 1);
  s_ = element({1, 1, 1, 1}, 0);
  w_ = c_ - s_;
  delta_ = 2 * c_ + 2 * w_;
}

bool GLContext::is_fano() const {
  // sum 1/p_i > 1  <=>  sum prod_{j != i} p_j > prod p_j
  long long prod = 1, sum = 0;
  for (int p : p_) prod *= p;
  for (int p : p_) sum += prod / p;
  return sum > prod;
}

GLElement GLContext::x(int i) const {
  if (i < 1 || i > 4) throw std::out_of_range("generator index must be 1..4");
  std::array<long long, 4> raw{};
  raw[i - 1] = 1;
  return element(raw, 0);
}

GLElement GLContext::parse(const std::string& text) const {
  std::string lam_part = text, l_part = "0";
  const auto semi = text.find(';');
  if (semi != std::string::npos) {
    lam_part = text.substr(0, semi);
    l_part = text.substr(semi + 1);
  }
  const auto lam = split_ints(lam_part, ',');
  if (lam.size() != 4) throw std::invalid_argument("element needs 4 coefficients: '" + text + "'");
  const auto l = split_ints(l_part, ',');
  if (l.size() != 1) throw std::invalid_argument("bad c-coefficient in '" + text + "'");
  return element({lam[0], lam[1], lam[2], lam[3]}, l[0]);
}

GLElement GLContext::parse_twist(const std::string& text) const {
  const auto star = text.find("*w");
  if (star == std::string::npos) return parse(text);
  const long long k = split_ints(text.substr(0, star), ',').at(0);
  GLElement out = k * w_;
  std::string rest = text.substr(star + 2);
  if (!rest.empty()) {
    if (rest.front() != '+') throw std::invalid_argument("twist must look like k*w+element: '" + text + "'");
    out += parse(rest.substr(1));
  }
  return out;
}

std::string GLContext::weights_str() const {
  std::ostringstream os;
  os << p_[0] << ',' << p_[1] << ',' << p_[2] << ',' << p_[3];
  return os.str();
}

bool is_nonnegative(const GLElement& x) { return x.l >= 0; }

bool leq(const GLElement& x, const GLElement& y) { return is_nonnegative(y - x); }

Dichotomy dichotomy(const GLContext& ctx, const GLElement& x) {
  const bool nonneg = is_nonnegative(x);
  const bool below = leq(x, GLContext::kDim * ctx.c() + ctx.w());
  if (nonneg == below) throw InvariantViolation("dichotomy fails for " + x.str());
  return nonneg ? Dichotomy::NonNegative : Dichotomy::BelowDualizingBound;
}

long long lambda_of_w_multiple(const GLContext& ctx, long long k) {
  long long v = k;
  for (int p : ctx.weights()) v -= (k + p - 1) / p;
  return v;
}

std::vector<GLElement> interval(const GLContext& ctx, const GLElement& x, const GLElement& y) {
  std::vector<GLElement> out;
  const GLElement span = y - x;
  if (span.l < 0) return out;
  const auto& p = ctx.weights();
  for (int k = 0; k <= span.l; ++k)
    for (int a = 0; a < p[0]; ++a)
      for (int b = 0; b < p[1]; ++b)
        for (int c = 0; c < p[2]; ++c)
          for (int d = 0; d < p[3]; ++d) {
            const GLElement z = x + ctx.element({a, b, c, d}, k);
            if (leq(z, y)) out.push_back(z);
          }
  std::sort(out.begin(), out.end(), LexLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool in_S(const GLContext&, const GLElement& x) {
  int positive = 0, small34 = 0;
  for (int i = 0; i < 4; ++i)
    if (x.lam[i] >= 1) ++positive;
  for (int i = 2; i < 4; ++i)
    if (x.lam[i] == 0 || x.lam[i] == 1) ++small34;
  const int mid = 2 * x.l + positive;
  return 0 < mid && mid <= small34;
}

std::vector<GLElement> enumerate_S(const GLContext& ctx) {
  std::vector<GLElement> out;
  const auto& p = ctx.weights();
  for (int l = -1; l <= 1; ++l)
    for (int a = 0; a < p[0]; ++a)
      for (int b = 0; b < p[1]; ++b)
        for (int c = 0; c < p[2]; ++c)
          for (int d = 0; d < p[3]; ++d) {
            const GLElement x = ctx.element({a, b, c, d}, l);
            if (in_S(ctx, x)) out.push_back(x);
          }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

namespace {

struct Presentation {
  SmithForm snf;
};

// Rows: p_i e_i - e_c (i = 1..4) and the generator; columns: x1..x4, c.
SmithForm presentation_snf(const GLContext& ctx, const GLElement& gen) {
  MatrixI m = MatrixI::Zero(5, 5);
  for (int i = 0; i < 4; ++i) {
    m(i, i) = ctx.weight(i);
    m(i, 4) = -1;
  }
  for (int i = 0; i < 4; ++i) m(4, i) = gen.lam[i];
  m(4, 4) = gen.l;
  return smith_normal_form(m);
}

void require_infinite_order(const GLElement& gen) {
  if (gen.scaled_degree() == 0) throw std::invalid_argument("quotient generator must have infinite order");
}

}  // namespace

std::vector<long long> quotient_class(const GLContext& ctx, const GLElement& x, const GLElement& gen) {
  require_infinite_order(gen);
  const SmithForm snf = presentation_snf(ctx, gen);
  Eigen::Matrix<long long, 1, 5> v;
  for (int i = 0; i < 4; ++i) v(i) = x.lam[i];
  v(4) = x.l;
  const Eigen::Matrix<long long, 1, 5> y = v * snf.q;
  std::vector<long long> out(5);
  for (int i = 0; i < 5; ++i) {
    const long long d = snf.d(i, i);
    if (d == 0) {
      out[i] = y(i);
    } else {
      long long r = y(i) % d;
      if (r < 0) r += d;
      out[i] = r;
    }
  }
  return out;
}

long long quotient_order(const GLContext& ctx, const GLElement& gen) {
  require_infinite_order(gen);
  const SmithForm snf = presentation_snf(ctx, gen);
  long long order = 1;
  for (int i = 0; i < 5; ++i) {
    if (snf.d(i, i) == 0) throw NotFinite("quotient L/<" + gen.str() + "> is infinite");
    order *= snf.d(i, i);
  }
  return order;
}

UpsetGrid::UpsetGrid(const GLContext& ctx) : ctx_(ctx), rows_(ctx.weight(2) - 1), cols_(ctx.weight(3) - 1) {
  if (!ctx.is_theorem_type()) throw std::invalid_argument("upset grid requires weight type (2,2,p,q)");
  if (size() > 64) throw std::invalid_argument("upset grid larger than 64 cells");
}

GLElement UpsetGrid::cell(int a, int b) const {
  return ctx_.s() + static_cast<long long>(a) * ctx_.x(3) + static_cast<long long>(b) * ctx_.x(4);
}

std::optional<int> UpsetGrid::index_of(const GLElement& x) const {
  const GLElement d = x - ctx_.s();
  if (d.l != 0 || d.lam[0] != 0 || d.lam[1] != 0) return std::nullopt;
  if (d.lam[2] >= rows_ || d.lam[3] >= cols_) return std::nullopt;
  return index(d.lam[2], d.lam[3]);
}

bool UpsetGrid::is_upset(CellMask m) const {
  for (int i = 0; i < size(); ++i) {
    if (!(m >> i & 1)) continue;
    for (int j = 0; j < size(); ++j)
      if (!(m >> j & 1) && leq(cell(i), cell(j))) return false;
  }
  return true;
}

namespace {

void sort_canonical(std::vector<CellMask>& v) {
  std::sort(v.begin(), v.end(), [](CellMask a, CellMask b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
}

}  // namespace

std::vector<CellMask> UpsetGrid::enumerate() const {
  std::vector<CellMask> out;
  std::vector<int> threshold(rows_, cols_);
  std::function<void(int, int)> rec = [&](int row, int bound) {
    if (row == rows_) {
      CellMask m = 0;
      for (int a = 0; a < rows_; ++a)
        for (int b = threshold[a]; b < cols_; ++b) m |= CellMask{1} << index(a, b);
      out.push_back(m);
      return;
    }
    for (int t = 0; t <= bound; ++t) {
      threshold[row] = t;
      rec(row + 1, t);
    }
  };
  rec(0, cols_);
  sort_canonical(out);
  return out;
}

std::vector<CellMask> UpsetGrid::enumerate_bruteforce() const {
  if (size() > 20) throw std::invalid_argument("brute-force upset enumeration limited to 20 cells");
  std::vector<CellMask> out;
  for (CellMask m = 0; m < (CellMask{1} << size()); ++m)
    if (is_upset(m)) out.push_back(m);
  sort_canonical(out);
  return out;
}

std::vector<std::pair<int, int>> UpsetGrid::members(CellMask m) const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    if (m >> i & 1) out.push_back(coords(i));
  return out;
}

CellMask UpsetGrid::from_members(const std::vector<std::pair<int, int>>& cells) const {
  CellMask m = 0;
  for (auto [a, b] : cells) {
    if (a < 0 || a >= rows_ || b < 0 || b >= cols_) throw std::out_of_range("cell outside [s, s+delta]");
    m |= CellMask{1} << index(a, b);
  }
  return m;
}

std::string UpsetGrid::describe(CellMask m) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [a, b] : members(m)) {
    if (!first) os << ' ';
    first = false;
    os << "s";
    if (a) os << '+' << (a == 1 ? "" : std::to_string(a)) << "x3";
    if (b) os << '+' << (b == 1 ? "" : std::to_string(b)) << "x4";
  }
  os << '}';
  return os.str();
}

std::vector<CellMask> enumerate_upsets(const GLContext& ctx) {
  UpsetGrid grid(ctx);
  return grid.size() < 20 ? grid.enumerate_bruteforce() : grid.enumerate();
}

}  // namespace glt
