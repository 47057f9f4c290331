#pragma once

// Brute-force references that share no code path with the engine beyond the
// GLElement value type.

#include <array>
#include <optional>
#include <vector>

#include "glt/glgroup.hpp"

namespace oracle {

using Raw = std::array<long long, 5>;  // coefficients of x1..x4 and c

// Two raw vectors name the same element iff their difference lies in the span
// of p_i e_i - e_c.
inline bool same_element(const glt::Weights& p, const Raw& a, const Raw& b) {
  long long k_sum = 0;
  for (int i = 0; i < 4; ++i) {
    const long long d = a[i] - b[i];
    if (d % p[i] != 0) return false;
    k_sum += d / p[i];
  }
  return a[4] - b[4] == -k_sum;
}

// The vector with 0 <= lam_i < p_i equal to raw, found by scanning a box.
inline std::optional<Raw> normal_form_by_search(const glt::Weights& p, const Raw& raw, int l_range = 40) {
  Raw v{};
  for (v[0] = 0; v[0] < p[0]; ++v[0])
    for (v[1] = 0; v[1] < p[1]; ++v[1])
      for (v[2] = 0; v[2] < p[2]; ++v[2])
        for (v[3] = 0; v[3] < p[3]; ++v[3])
          for (v[4] = -l_range; v[4] <= l_range; ++v[4])
            if (same_element(p, v, raw)) return v;
  return std::nullopt;
}

inline long long lcm4(const glt::Weights& p) {
  long long l = 1;
  for (int x : p) l = std::lcm(l, static_cast<long long>(x));
  return l;
}

// Number of exponent vectors m with sum m_i x_i = x, by direct enumeration.
inline long long count_monomials(const glt::GLContext& ctx, const glt::GLElement& x) {
  const glt::Weights& p = ctx.weights();
  const long long L = lcm4(p);
  const long long deg = x.scaled_degree();
  if (deg < 0) return 0;
  long long n = 0;
  std::array<int, 4> m{};
  const long long step[4] = {L / p[0], L / p[1], L / p[2], L / p[3]};
  for (m[0] = 0; m[0] * step[0] <= deg; ++m[0])
    for (m[1] = 0; m[0] * step[0] + m[1] * step[1] <= deg; ++m[1])
      for (m[2] = 0; m[0] * step[0] + m[1] * step[1] + m[2] * step[2] <= deg; ++m[2]) {
        const long long rest = deg - m[0] * step[0] - m[1] * step[1] - m[2] * step[2];
        if (rest % step[3] != 0) continue;
        m[3] = static_cast<int>(rest / step[3]);
        if (ctx.element({m[0], m[1], m[2], m[3]}, 0) == x) ++n;
      }
  return n;
}

// dim R_x = dim S_x - dim S_{x-c}, f being a nonzerodivisor of degree c.
inline long long dim_R_by_counting(const glt::GLContext& ctx, const glt::GLElement& x) {
  return count_monomials(ctx, x) - count_monomials(ctx, x - ctx.c());
}

// Definition check: (J + L_+) ∩ [s, s+delta] ⊆ J, i.e. every cell above a
// member is a member.
inline bool is_upset_by_definition(const glt::UpsetGrid& grid, glt::CellMask m) {
  for (int i = 0; i < grid.size(); ++i) {
    if (!(m >> i & 1)) continue;
    for (int j = 0; j < grid.size(); ++j)
      if (glt::leq(grid.cell(i), grid.cell(j)) && !(m >> j & 1)) return false;
  }
  return true;
}

}  // namespace oracle
