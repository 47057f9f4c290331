#include <doctest.h>

#include <random>

#include "glt/mfcore.hpp"
#include "glt/sheafhom.hpp"

using namespace glt;

namespace {

bool same_mf(const GradedMF& a, const GradedMF& b) {
  return a.deg0 == b.deg0 && a.deg1 == b.deg1 && a.phi == b.phi && a.psi == b.psi;
}

}  // namespace

TEST_SUITE("mfcore") {

TEST_CASE("factorization identities") {
  const GLContext ctx({2, 2, 3, 3});
  const GradedRing ring(ctx);
  const GradedMF k = koszul_mf(ctx, monomial_power(2, 1), monomial_power(2, 2));
  CHECK_NOTHROW(k.validate(ctx));
  CHECK(k.phi * k.psi == PolyMatrix::scalar(1, Polynomial(monomial_power(2, 3))));

  for (const GLElement& ell : interval(ctx, ctx.s(), ctx.s() + ctx.delta())) {
    const GradedMF u = extension_bundle_mf(ring, ell);
    CHECK_NOTHROW(u.validate(ctx));
    CHECK(u.size() == 8);
    CHECK(u.phi * u.psi == PolyMatrix::scalar(8, ring.f()));
    CHECK(u.psi * u.phi == PolyMatrix::scalar(8, ring.f()));
  }
  GradedMF broken = extension_bundle_mf(ring, ctx.s());
  broken.phi(0, 0) = broken.phi(0, 0) + broken.phi(0, 0);
  CHECK_THROWS_AS(broken.validate(ctx), InvalidFactorization);
}

TEST_CASE("swapped Koszul factor is the suspension up to sign") {
  const GLContext ctx({2, 2, 2, 4});
  const Monomial u = monomial_power(3, 1), v = monomial_power(3, 3);
  const GradedMF a = koszul_mf(ctx, u, v);
  const GradedMF b = suspend(ctx, koszul_mf(ctx, v, u));
  CHECK(b.phi == -a.phi);
  CHECK(b.psi == -a.psi);
  CHECK(b.deg1[0] - b.deg0[0] == a.deg1[0] - a.deg0[0]);
}

TEST_CASE("twist and suspension") {
  const GLContext ctx({2, 2, 3, 3});
  const GradedRing ring(ctx);
  const GradedMF m = extension_bundle_mf(ring, ctx.s() + ctx.x(3));
  CHECK(same_mf(twist(m, ctx.zero()), m));
  CHECK(same_mf(suspend(ctx, suspend(ctx, m)), twist(m, ctx.c())));
  CHECK(same_mf(suspend_n(ctx, m, 2), twist(m, ctx.c())));
  CHECK(same_mf(suspend_n(ctx, suspend_n(ctx, m, -1), 1), m));
  CHECK(same_mf(suspend_n(ctx, m, 3), suspend(ctx, twist(m, ctx.c()))));
}

TEST_CASE("stable Hom values from the reference hammocks") {
  const GLContext ctx({2, 2, 3, 3});
  const GradedRing ring(ctx);
  const GradedMF u3 = extension_bundle_mf(ring, ctx.s() + ctx.x(3));
  const GradedMF us = extension_bundle_mf(ring, ctx.s());
  CHECK(stable_hom_dim(ring, u3, u3) == 1);
  CHECK(stable_hom_dim(ring, u3, us) == 1);
  CHECK(stable_hom_dim(ring, us, u3) == 0);
  CHECK(module_hom_dim(ring, u3, u3) >= 1);
  CHECK(stable_hom_dim(ring, u3, us) <= module_hom_dim(ring, u3, us));
}

TEST_CASE("Hom with the structure sheaf") {
  const GLContext ctx({2, 2, 3, 3});
  const GradedRing ring(ctx);
  for (const GLElement& ell : interval(ctx, ctx.s(), ctx.s() + ctx.delta())) {
    const GradedMF u = extension_bundle_mf(ring, ell);
    CHECK(free_hom_dim(ring, ctx.zero(), u, FreeDirection::FromFree) >= 1);
    CHECK(free_hom_dim(ring, ctx.zero(), u, FreeDirection::ToFree) == 0);
    CHECK(free_hom_dim(ring, 5 * ctx.c(), u, FreeDirection::FromFree) == 0);
    CHECK(free_hom_dim(ring, ctx.zero(), u, FreeDirection::FromFree) ==
          module_hom_dim(ring, free_mf(ring, ctx.zero()), u));
  }
  const GradedMF u3 = extension_bundle_mf(ring, ctx.s() + ctx.x(3));
  CHECK(free_hom_dim(ring, ctx.x(3), u3, FreeDirection::ToFree) >= 1);
}

TEST_CASE("vanishing between incomparable extension bundles") {
  const GLContext ctx({2, 2, 3, 3});
  const GradedRing ring(ctx);
  const auto cells = interval(ctx, ctx.s(), ctx.s() + ctx.delta());
  for (const GLElement& a : cells)
    for (const GLElement& b : cells)
      if (!leq(b, a))
        CHECK(module_hom_dim(ring, extension_bundle_mf(ring, a), extension_bundle_mf(ring, b)) == 0);
}

TEST_CASE("composition") {
  const GLContext ctx({2, 2, 3, 3});
  const GradedRing ring(ctx);
  const GradedMF u4 = extension_bundle_mf(ring, ctx.s() + ctx.x(4));
  const GradedMF us = extension_bundle_mf(ring, ctx.s());
  const MFHomSpace h(ring, u4, us, HomLevel::Module);
  REQUIRE(h.dim() >= 1);
  const MFMorphism f = h.basis(0);
  const MFMorphism g = compose(identity_morphism(u4), f);
  CHECK(g.a == f.a);
  CHECK(g.b == f.b);
  CHECK(is_morphism(u4, us, compose(f, identity_morphism(us))));
  CHECK_FALSE(h.is_zero(f));
}

TEST_CASE("stable dimension ignores added homotopies") {
  const GLContext ctx({2, 2, 3, 3});
  const GradedRing ring(ctx);
  const GradedMF u3 = extension_bundle_mf(ring, ctx.s() + ctx.x(3));
  const GradedMF us = twist(extension_bundle_mf(ring, ctx.s()), ctx.c());
  const MFHomSpace st(ring, u3, us, HomLevel::Stable);
  const MFHomSpace mod(ring, u3, us, HomLevel::Module);
  const HomSystem sys(ring, u3, us);
  const auto nulls = sys.null_generators(HomLevel::Stable);
  REQUIRE(!nulls.empty());
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> pick(0, nulls.size() - 1);
  REQUIRE(mod.dim() > st.dim());
  for (int k = 0; k < mod.dim(); ++k) {
    const MFMorphism base = mod.basis(k);
    const MFMorphism moved = sys.unpack(sparse_axpy(sys.pack(base), Rational(3), nulls[pick(rng)]));
    CHECK(st.coordinates(moved) == st.coordinates(base));
  }
}

TEST_CASE("composite through free modules survives only at module level") {
  const GLContext ctx({2, 2, 3, 3});
  const GradedRing ring(ctx);
  const GradedMF u3 = extension_bundle_mf(ring, ctx.s() + ctx.x(3));
  const GradedMF target = twist(extension_bundle_mf(ring, ctx.s() + ctx.delta()), -1 * ctx.w());
  const GradedMF r3 = free_mf(ring, ctx.x(3)), r34 = free_mf(ring, ctx.x(3) + ctx.x(4));
  const MFHomSpace h1(ring, u3, r3, HomLevel::Module), h2(ring, r3, r34, HomLevel::Module),
      h3(ring, r34, target, HomLevel::Module);
  REQUIRE(h1.dim() >= 1);
  REQUIRE(h2.dim() >= 1);
  REQUIRE(h3.dim() >= 1);
  const MFHomSpace mod(ring, u3, target, HomLevel::Module), st(ring, u3, target, HomLevel::Stable);
  bool nonzero = false;
  for (int i = 0; i < h1.dim(); ++i)
    for (int j = 0; j < h2.dim(); ++j)
      for (int k = 0; k < h3.dim(); ++k) {
        const MFMorphism f = compose(compose(h1.basis(i), h2.basis(j)), h3.basis(k));
        nonzero |= !mod.is_zero(f);
        CHECK(st.is_zero(f));
      }
  CHECK(nonzero);
  CHECK(st.dim() == 0);
}

TEST_CASE("isomorphism test") {
  const GLContext ctx({2, 2, 2, 4});
  const GradedRing ring(ctx);
  const GradedMF a = extension_bundle_mf(ring, ctx.s());
  CHECK(isomorphic(ring, a, a));
  CHECK_FALSE(isomorphic(ring, a, extension_bundle_mf(ring, ctx.s() + ctx.x(4))));
}

TEST_CASE("end algebra of a single summand") {
  const GLContext ctx({2, 2, 2, 4});
  const GradedRing ring(ctx);
  const EndAlgebra e = end_algebra(ring, {extension_bundle_mf(ring, ctx.s())}, HomLevel::Stable);
  CHECK(e.vertices == 1);
  CHECK(e.dim() == 1);
  CHECK(e.multiply(e.identity[0], e.identity[0]) == e.identity[0]);
}

TEST_CASE("json round trip") {
  const GLContext ctx({2, 2, 3, 3});
  const GradedRing ring(ctx);
  const GradedMF m = extension_bundle_mf(ring, ctx.s() + ctx.delta());
  const GradedMF back = mf_from_json(ctx, nlohmann::json::parse(to_json(m).dump()));
  CHECK(same_mf(back, m));
}

}  // TEST_SUITE
