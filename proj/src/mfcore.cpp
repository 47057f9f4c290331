#include <algorithm>
#include <map>
#include <mutex>

#include "glt/mfcore.hpp"

namespace glt {

namespace {

void check_entries(const GLContext& ctx, const PolyMatrix& m, const std::vector<GLElement>& row_deg,
                   const std::vector<GLElement>& col_deg, const GLElement& shift, const char* name) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const auto d = m(i, j).degree(ctx);
      if (d && *d != col_deg[j] - row_deg[i] + shift)
        throw InvalidFactorization(std::string(name) + " entry has wrong degree: " + m(i, j).str());
    }
}

}  // namespace

void GradedMF::validate(const GLContext& ctx) const {
  const int n0 = static_cast<int>(deg0.size()), n1 = static_cast<int>(deg1.size());
  if (n0 != n1) throw InvalidFactorization("factorization is not square");
  if (phi.rows() != n0 || phi.cols() != n1 || psi.rows() != n1 || psi.cols() != n0)
    throw InvalidFactorization("matrix shapes do not match generator lists");
  check_entries(ctx, phi, deg0, deg1, ctx.zero(), "phi");
  check_entries(ctx, psi, deg1, deg0, ctx.c(), "psi");
  if (phi * psi != PolyMatrix::scalar(n0, potential) || psi * phi != PolyMatrix::scalar(n1, potential))
    throw InvalidFactorization("phi*psi or psi*phi differs from potential*id");
}

GradedMF koszul_mf(const GLContext& ctx, const Monomial& u, const Monomial& v) {
  if (u.degree(ctx) + v.degree(ctx) != ctx.c()) throw DegreeMismatch("Koszul factors must have degrees summing to c");
  GradedMF m;
  m.deg0 = {ctx.zero()};
  m.deg1 = {u.degree(ctx)};
  m.phi = PolyMatrix(1, 1);
  m.phi(0, 0) = Polynomial(u);
  m.psi = PolyMatrix(1, 1);
  m.psi(0, 0) = Polynomial(v);
  m.potential = Polynomial(u * v);
  return m;
}

GradedMF tensor(const GLContext& ctx, const GradedMF& a, const GradedMF& b) {
  const int na = a.size(), nb = b.size();
  const PolyMatrix ia = PolyMatrix::identity(na), ib = PolyMatrix::identity(nb);
  GradedMF t;
  for (const auto& x : a.deg0)
    for (const auto& y : b.deg0) t.deg0.push_back(x + y);
  for (const auto& x : a.deg1)
    for (const auto& y : b.deg1) t.deg0.push_back(x + y - ctx.c());
  for (const auto& x : a.deg1)
    for (const auto& y : b.deg0) t.deg1.push_back(x + y);
  for (const auto& x : a.deg0)
    for (const auto& y : b.deg1) t.deg1.push_back(x + y);
  t.phi = PolyMatrix::blocks(PolyMatrix::kron(a.phi, ib), -PolyMatrix::kron(ia, b.phi), PolyMatrix::kron(ia, b.psi),
                             PolyMatrix::kron(a.psi, ib));
  t.psi = PolyMatrix::blocks(PolyMatrix::kron(a.psi, ib), PolyMatrix::kron(ia, b.phi), -PolyMatrix::kron(ia, b.psi),
                             PolyMatrix::kron(a.phi, ib));
  t.potential = a.potential + b.potential;
  t.validate(ctx);
  return t;
}

GradedMF twist(const GradedMF& m, const GLElement& x) {
  GradedMF out = m;
  for (auto& d : out.deg0) d -= x;
  for (auto& d : out.deg1) d -= x;
  return out;
}

GradedMF suspend(const GLContext& ctx, const GradedMF& m) {
  GradedMF out;
  for (const auto& d : m.deg1) out.deg0.push_back(d - ctx.c());
  out.deg1 = m.deg0;
  out.phi = -m.psi;
  out.psi = -m.phi;
  out.potential = m.potential;
  return out;
}

GradedMF suspend_n(const GLContext& ctx, const GradedMF& m, int n) {
  // [2] = (c)
  GradedMF out = twist(m, static_cast<long long>(n >= 0 ? n / 2 : -((-n + 1) / 2)) * ctx.c());
  if (n % 2 != 0) out = suspend(ctx, out);
  return out;
}

GradedMF direct_sum(const GradedMF& a, const GradedMF& b) {
  if (a.potential != b.potential) throw std::invalid_argument("direct sum of factorizations of different potentials");
  GradedMF out;
  out.deg0 = a.deg0;
  out.deg0.insert(out.deg0.end(), b.deg0.begin(), b.deg0.end());
  out.deg1 = a.deg1;
  out.deg1.insert(out.deg1.end(), b.deg1.begin(), b.deg1.end());
  out.phi = PolyMatrix::blocks(a.phi, PolyMatrix(a.phi.rows(), b.phi.cols()), PolyMatrix(b.phi.rows(), a.phi.cols()),
                               b.phi);
  out.psi = PolyMatrix::blocks(a.psi, PolyMatrix(a.psi.rows(), b.psi.cols()), PolyMatrix(b.psi.rows(), a.psi.cols()),
                               b.psi);
  out.potential = a.potential;
  return out;
}

GradedMF free_mf(const GradedRing& ring, const GLElement& x) {
  const GLContext& ctx = ring.context();
  GradedMF m;
  m.deg0 = {-x};
  m.deg1 = {ctx.c() - x};
  m.phi = PolyMatrix(1, 1);
  m.phi(0, 0) = ring.f();
  m.psi = PolyMatrix::identity(1);
  m.potential = ring.f();
  return m;
}

GradedMF koszul_tensor(const GradedRing& ring, const GLElement& ell) {
  const GLContext& ctx = ring.context();
  if (!leq(ctx.s(), ell) || !leq(ell, ctx.s() + ctx.delta()))
    throw std::invalid_argument("extension bundle index outside [s, s+delta]: " + ell.str());
  GradedMF out;
  for (int i = 0; i < 4; ++i) {
    const GradedMF k =
        koszul_mf(ctx, monomial_power(i, ell.lam[i]), monomial_power(i, ctx.weight(i) - ell.lam[i]));
    out = i == 0 ? k : tensor(ctx, out, k);
  }
  return out;
}

namespace {

int chi_line(const GLContext& ctx, const GLElement& a, const GLElement& b) {
  return line_hom(a, b) + line_ext2(ctx, a, b);
}

}  // namespace

Calibration calibrate_extension_bundle(const GradedRing& ring, const GLElement& ell) {
  const GLContext& ctx = ring.context();
  const GradedMF base = koszul_tensor(ring, ell);
  const GradedMF shifted = suspend(ctx, base);
  const GLElement head = 3 * ctx.c() - ell;
  std::vector<GLElement> middle;
  for (int i = 0; i < 4; ++i) {
    std::array<long long, 4> raw{};
    raw[i] = ell.lam[i];
    middle.push_back(2 * ctx.c() - ell + ctx.element(raw, 0));
  }
  // Euler characteristic of (O(y), U^l) forced by 0 -> O -> U -> ⊕ O(2c-l+l_i x_i) -> O(3c-l) -> 0.
  std::vector<std::pair<GLElement, int>> targets;
  const auto& p = ctx.weights();
  for (int k = -3; k <= 3; ++k)
    for (int a = 0; a < p[0]; ++a)
      for (int b = 0; b < p[1]; ++b)
        for (int c = 0; c < p[2]; ++c)
          for (int d = 0; d < p[3]; ++d) {
            const GLElement y = ctx.element({a, b, c, d}, k);
            int chi = chi_line(ctx, y, ctx.zero()) - chi_line(ctx, y, head);
            for (const auto& m : middle) chi += chi_line(ctx, y, m);
            targets.emplace_back(y, chi);
          }
  std::vector<Calibration> hits;
  int tested = 0;
  for (int parity = 0; parity < 2; ++parity)
    for (int k = -3; k <= 3; ++k)
      for (int a = 0; a < p[0]; ++a)
        for (int b = 0; b < p[1]; ++b)
          for (int c = 0; c < p[2]; ++c)
            for (int d = 0; d < p[3]; ++d) {
              ++tested;
              const GLElement t = ctx.element({a, b, c, d}, k);
              const GradedMF m = twist(parity == 0 ? base : shifted, t);
              if (free_hom_dim(ring, ctx.zero(), m, FreeDirection::FromFree) != 1) continue;
              if (free_hom_dim(ring, ctx.zero(), m, FreeDirection::ToFree) != 0) continue;
              bool ok = true;
              for (const auto& [y, chi] : targets) {
                const int got = free_hom_dim(ring, y, m, FreeDirection::FromFree) +
                                free_hom_dim(ring, y + ctx.w(), m, FreeDirection::ToFree);
                if (got != chi) {
                  ok = false;
                  break;
                }
              }
              if (ok) hits.push_back({t, parity == 0, 0});
            }
  if (hits.empty()) throw CalibrationFailed("extension bundle " + ell.str() + ": no twist matches the calibration targets");
  // Several hits are acceptable only if they are all isomorphic (e.g. twists
  // by x_a - x_b with p_a = p_b = 2 and l_a = l_b = 1 permute Koszul factors).
  std::sort(hits.begin(), hits.end(), [](const Calibration& x, const Calibration& y) {
    if (x.cokernel_of_phi != y.cokernel_of_phi) return x.cokernel_of_phi;
    const bool xz = x.twist.l == 0 && x.twist.lam == std::array<int, 4>{};
    const bool yz = y.twist.l == 0 && y.twist.lam == std::array<int, 4>{};
    if (xz != yz) return xz;
    return LexLess{}(x.twist, y.twist);
  });
  auto realize = [&](const Calibration& h) { return twist(h.cokernel_of_phi ? base : shifted, h.twist); };
  const GradedMF chosen = realize(hits.front());
  for (std::size_t k = 1; k < hits.size(); ++k)
    if (!isomorphic(ring, chosen, realize(hits[k])))
      throw CalibrationFailed("extension bundle " + ell.str() + ": calibration targets match non-isomorphic twists " +
                              hits.front().twist.str() + " and " + hits[k].twist.str());
  hits.front().candidates_tested = tested;
  hits.front().matches = static_cast<int>(hits.size());
  return hits.front();
}

GradedMF extension_bundle_mf(const GradedRing& ring, const GLElement& ell) {
  static std::mutex mu;
  static std::map<std::pair<Weights, std::array<int, 4>>, GradedMF> cache;
  const auto key = std::make_pair(ring.context().weights(), ell.lam);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end() && ell.l == 0) return it->second;
  }
  const Calibration cal = calibrate_extension_bundle(ring, ell);
  GradedMF base = koszul_tensor(ring, ell);
  if (!cal.cokernel_of_phi) base = suspend(ring.context(), base);
  GradedMF out = twist(base, cal.twist);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, out);
  return out;
}

MFMorphism identity_morphism(const GradedMF& m) {
  return {PolyMatrix::identity(m.size()), PolyMatrix::identity(m.size())};
}

MFMorphism compose(const MFMorphism& f1, const MFMorphism& f2) {
  if (f2.a.cols() != f1.a.rows() || f2.b.cols() != f1.b.rows())
    throw NotComposable("morphism shapes do not compose");
  return {f2.a * f1.a, f2.b * f1.b};
}

bool is_morphism(const GradedMF& src, const GradedMF& dst, const MFMorphism& f) {
  if (f.a.rows() != dst.size() || f.a.cols() != src.size() || f.b.rows() != dst.size() || f.b.cols() != src.size())
    return false;
  return f.a * src.phi == dst.phi * f.b;
}

GradedMF cone(const GLContext& ctx, const GradedMF& src, const GradedMF& dst, const MFMorphism& f) {
  if (!is_morphism(src, dst, f)) throw NotComposable("cone of a non-morphism");
  GradedMF out;
  out.deg0 = dst.deg0;
  for (const auto& d : src.deg1) out.deg0.push_back(d - ctx.c());
  out.deg1 = dst.deg1;
  out.deg1.insert(out.deg1.end(), src.deg0.begin(), src.deg0.end());
  const int n = src.size(), m = dst.size();
  out.phi = PolyMatrix::blocks(dst.phi, f.a, PolyMatrix(n, m), -src.psi);
  out.psi = PolyMatrix::blocks(dst.psi, f.b, PolyMatrix(n, m), -src.phi);
  out.potential = dst.potential;
  return out;
}

}  // namespace glt
