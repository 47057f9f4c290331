#include "glt/sheafhom.hpp"

namespace glt {

SheafSummand SheafSummand::twisted(const GLElement& y) const {
  SheafSummand out = *this;
  out.twist += y;
  if (kind == Kind::Line) out.ell = out.twist;
  return out;
}

std::string SheafSummand::label() const {
  if (kind == Kind::Line) return "O:" + twist.str();
  const std::string l = ell.str();
  return "U:" + l.substr(0, l.find(';')) + "@" + twist.str();
}

SheafSummand parse_summand(const GLContext& ctx, const std::string& text) {
  if (text.size() < 3 || text[1] != ':') throw std::invalid_argument("summand must start with O:, P: or U:");
  const std::string body = text.substr(2);
  if (text[0] == 'O' || text[0] == 'P') return SheafSummand::line(ctx.parse(body));
  if (text[0] != 'U') throw std::invalid_argument("unknown summand kind in '" + text + "'");
  const auto at = body.find('@');
  const GLElement ell = ctx.parse(body.substr(0, at));
  const GLElement tw = at == std::string::npos ? ctx.zero() : ctx.parse_twist(body.substr(at + 1));
  if (!leq(ctx.s(), ell) || !leq(ell, ctx.s() + ctx.delta()))
    throw std::invalid_argument("extension bundle index outside [s, s+delta]: " + ell.str());
  return SheafSummand::ext(ell, tw);
}

HomEngine::HomEngine(const GLContext& ctx) : ring_(std::make_shared<GradedRing>(ctx)) {}

GradedMF HomEngine::mf(const SheafSummand& a) const {
  if (a.is_line()) return free_mf(*ring_, a.twist);
  return twist(extension_bundle_mf(*ring_, a.ell), a.twist);
}

std::string HomEngine::key(const char* op, const SheafSummand& a, const SheafSummand& b, int n) const {
  const GLElement rel = b.twist - a.twist;
  std::string k = op;
  k += a.is_line() ? "|O|" : "|U" + a.ell.str() + "|";
  k += b.is_line() ? "O|" : "U" + b.ell.str() + "|";
  k += rel.str() + "|" + std::to_string(n);
  return k;
}

int HomEngine::cached(const std::string& k, const std::function<int()>& compute) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
  }
  const int v = compute();
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(k, v);
  return v;
}

int HomEngine::hom_dim(const SheafSummand& a, const SheafSummand& b) const {
  if (a.is_line() && b.is_line()) return line_hom(a.twist, b.twist);
  return cached(key("hom", a, b, 0), [&] {
    // anchor a at zero twist so the memo key is twist-invariant
    const SheafSummand a0 = a.twisted(-a.twist), b0 = b.twisted(-a.twist);
    if (a0.is_line()) return free_hom_dim(*ring_, a0.twist, mf(b0), FreeDirection::FromFree);
    if (b0.is_line()) return free_hom_dim(*ring_, b0.twist, mf(a0), FreeDirection::ToFree);
    return module_hom_dim(*ring_, mf(a0), mf(b0));
  });
}

int HomEngine::stable_hom(const SheafSummand& a, const SheafSummand& b, int n) const {
  if (a.is_line() || b.is_line()) return 0;
  return cached(key("stable", a, b, n), [&] {
    const SheafSummand a0 = a.twisted(-a.twist), b0 = b.twisted(-a.twist);
    const GLContext& ctx = context();
    // Serre duality Hom(X, Y[n]) = D Hom(Y, X(w)[2-n]) keeps the shift near 1.
    if (n < 0 || n > 2) {
      const int m = 2 - n;
      if (std::abs(m - 1) < std::abs(n - 1)) return stable_hom(b0, a0.twisted(ctx.w()), m);
    }
    return stable_hom_dim(*ring_, mf(a0), suspend_n(ctx, mf(b0), n));
  });
}

int HomEngine::ext1_dim(const SheafSummand& a, const SheafSummand& b) const {
  if (a.is_line() || b.is_line()) {
    if (debug_ && !(a.is_line() && b.is_line())) {
      const SheafSummand a0 = a.twisted(-a.twist), b0 = b.twisted(-a.twist);
      const int v = stable_hom_dim(*ring_, mf(a0), suspend(context(), mf(b0)));
      if (v != 0) throw InvariantViolation("Ext^1 between a line bundle and an extension bundle is nonzero");
    }
    return 0;
  }
  return stable_hom(a, b, 1);
}

int HomEngine::ext2_dim(const SheafSummand& a, const SheafSummand& b) const {
  return hom_dim(b, a.twisted(context().w()));
}

int HomEngine::euler(const SheafSummand& a, const SheafSummand& b) const {
  return hom_dim(a, b) - ext1_dim(a, b) + ext2_dim(a, b);
}

int HomEngine::vanishing_bound(const SheafSummand& a, const SheafSummand& b) const {
  const GLContext& ctx = context();
  if (!ctx.is_fano()) throw std::invalid_argument("vanishing bound needs sum 1/p_i > 1");
  const long long wdeg = -ctx.w().scaled_degree();
  const GradedMF ma = mf(a), mb = mf(b);
  int bound = 0;
  for (const auto& ga : ma.deg0)
    for (const auto& gb : mb.deg0) {
      const GLElement d = ga - gb;
      const long long top = d.scaled_degree() < 0 ? -1 : d.scaled_degree() / wdeg;
      for (long long l = 1; l <= top; ++l)
        if (is_nonnegative(d + l * ctx.w())) bound = std::max(bound, static_cast<int>(l));
    }
  for (int l = bound; l >= 1; --l)
    if (hom_dim(a, b.twisted(l * ctx.w())) > 0) return l;
  return 0;
}

std::vector<std::vector<SheafSummand>> HomEngine::four_term_sequence(const GLElement& ell) const {
  const GLContext& ctx = context();
  std::vector<std::vector<SheafSummand>> x(4);
  x[0] = {SheafSummand::line(ctx.zero())};
  x[1] = {SheafSummand::ext(ell, ctx.zero())};
  for (int i = 0; i < 4; ++i) {
    std::array<long long, 4> raw{};
    raw[i] = ell.lam[i];
    x[2].push_back(SheafSummand::line(2 * ctx.c() - ell + ctx.element(raw, 0)));
  }
  x[3] = {SheafSummand::line(3 * ctx.c() - ell)};
  return x;
}

FourTermReport HomEngine::four_term_hom_check(const GLElement& ell, const SheafSummand& w, Side side) const {
  const auto x = four_term_sequence(ell);
  FourTermReport r;
  for (int k = 0; k < 4; ++k)
    for (const auto& t : x[k]) {
      if (side == Side::Covariant) {
        r.hom[k] += hom_dim(w, t);
        r.ext1[k] += ext1_dim(w, t);
        r.ext2[k] += ext2_dim(w, t);
      } else {
        r.hom[k] += hom_dim(t, w);
        r.ext1[k] += ext1_dim(t, w);
        r.ext2[k] += ext2_dim(t, w);
      }
    }
  for (int k = 0; k < 4; ++k)
    if (r.ext1[k] != 0) throw std::invalid_argument("Ext^1 hypothesis fails for test object " + w.label());
  for (int k = 0; k < 4; ++k) r.alternating_sum += (k % 2 == 0 ? 1 : -1) * (r.hom[k] + r.ext2[k]);
  if (!r.holds())
    throw InconsistentSequence("alternating sum " + std::to_string(r.alternating_sum) + " for U^" + ell.str() +
                               " against " + w.label());
  return r;
}

nlohmann::json HomEngine::export_cache() const {
  std::lock_guard<std::mutex> lock(mu_);
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [k, v] : cache_) entries[k] = v;
  return {{"weights", context().weights_str()}, {"entries", std::move(entries)}};
}

void HomEngine::import_cache(const nlohmann::json& j) {
  if (!j.is_object() || j.value("weights", "") != context().weights_str() || !j.contains("entries"))
    throw std::invalid_argument("hom cache does not belong to weight type " + context().weights_str());
  const auto& entries = j.at("entries");
  std::lock_guard<std::mutex> lock(mu_);
  for (auto it = entries.begin(); it != entries.end(); ++it) cache_.emplace(it.key(), it.value().get<int>());
}

std::size_t HomEngine::cache_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.size();
}

}  // namespace glt
