#include <doctest.h>

#include <random>
#include <set>

#include "glt/glgroup.hpp"
#include "oracles.hpp"

using namespace glt;

namespace {

GLElement random_element(const GLContext& ctx, std::mt19937_64& rng, int range = 6) {
  std::uniform_int_distribution<long long> d(-range, range);
  return ctx.element({d(rng), d(rng), d(rng), d(rng)}, d(rng));
}

oracle::Raw raw_of(const GLElement& x) { return {x.lam[0], x.lam[1], x.lam[2], x.lam[3], x.l}; }

}  // namespace

TEST_SUITE("glgroup") {

TEST_CASE("zero normalizes to zero") {
  const GLContext ctx({2, 2, 2, 4});
  const GLElement z = ctx.element({0, 0, 0, 0}, 0);
  CHECK(z.lam == std::array<int, 4>{0, 0, 0, 0});
  CHECK(z.l == 0);
}

TEST_CASE("w agrees with the search oracle") {
  for (const Weights& p : {Weights{2, 2, 2, 4}, Weights{2, 2, 3, 3}}) {
    const GLContext ctx(p);
    const auto found = oracle::normal_form_by_search(p, {-1, -1, -1, -1, 1});
    REQUIRE(found);
    CHECK(raw_of(ctx.w()) == *found);
  }
  const GLContext a({2, 2, 2, 4});
  CHECK(a.w().lam == std::array<int, 4>{1, 1, 1, 3});
  CHECK(a.w().l == -3);
  const GLContext b({2, 2, 3, 3});
  CHECK(b.w().lam == std::array<int, 4>{1, 1, 2, 2});
  CHECK(b.w().l == -3);
}

TEST_CASE("normal form matches the search oracle on random vectors") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> d(-7, 7);
  for (const Weights& p : {Weights{2, 2, 2, 3}, Weights{2, 2, 3, 4}, Weights{3, 3, 4, 5}}) {
    const GLContext ctx(p);
    for (int i = 0; i < 30; ++i) {
      const oracle::Raw raw{d(rng), d(rng), d(rng), d(rng), d(rng)};
      const auto found = oracle::normal_form_by_search(p, raw, 60);
      REQUIRE(found);
      CHECK(raw_of(ctx.element({raw[0], raw[1], raw[2], raw[3]}, raw[4])) == *found);
    }
  }
}

TEST_CASE("round trips") {
  std::mt19937_64 rng(3);
  const GLContext ctx({2, 2, 3, 5});
  for (int i = 0; i < 200; ++i) {
    const GLElement x = random_element(ctx, rng), y = random_element(ctx, rng);
    CHECK((x + y) - y == x);
    CHECK(ctx.element({x.lam[0], x.lam[1], x.lam[2], x.lam[3]}, x.l) == x);
    CHECK(-(-x) == x);
    CHECK(ctx.parse(x.str()) == x);
  }
}

TEST_CASE("order") {
  const GLContext ctx({2, 2, 3, 3});
  CHECK(leq(ctx.s(), ctx.s() + ctx.delta()));
  CHECK_FALSE(leq(ctx.zero(), ctx.w()));
  CHECK(leq(ctx.zero(), ctx.x(4)));
  CHECK_FALSE(leq(ctx.x(4), 2 * ctx.c() + ctx.w()));

  std::mt19937_64 rng(5);
  int chains = 0;
  for (int i = 0; i < 3000; ++i) {
    const GLElement x = random_element(ctx, rng, 3), y = random_element(ctx, rng, 3), z = random_element(ctx, rng, 3);
    if (leq(x, y) && leq(y, z)) {
      ++chains;
      CHECK(leq(x, z));
    }
    CHECK(leq(x, y) == ((y - x).l >= 0));
  }
  CHECK(chains > 0);
}

TEST_CASE("dichotomy") {
  const GLContext ctx({2, 2, 3, 3});
  CHECK(dichotomy(ctx, ctx.zero()) == Dichotomy::NonNegative);
  CHECK(dichotomy(ctx, ctx.w()) == Dichotomy::BelowDualizingBound);
  CHECK(dichotomy(ctx, ctx.c()) == Dichotomy::NonNegative);
  CHECK(dichotomy(ctx, ctx.x(4)) == Dichotomy::NonNegative);
}

TEST_CASE("intervals") {
  const GLContext a({2, 2, 2, 4});
  const auto ia = interval(a, a.s(), a.s() + a.delta());
  REQUIRE(ia.size() == 3);
  std::set<GLElement, LexLess> want{a.s(), a.s() + a.x(4), a.s() + 2 * a.x(4)};
  CHECK(std::set<GLElement, LexLess>(ia.begin(), ia.end()) == want);
  CHECK(a.delta() == 2 * a.x(4));

  const GLContext b({2, 2, 3, 3});
  CHECK(interval(b, b.s(), b.s() + b.delta()).size() == 4);
  CHECK(interval(b, b.s(), b.s()) == std::vector<GLElement>{b.s()});
  CHECK(interval(b, b.s() + b.x(3), b.s()).empty());
}

TEST_CASE("interval matches the grid") {
  for (const Weights& p : {Weights{2, 2, 3, 5}, Weights{2, 2, 4, 4}}) {
    const GLContext ctx(p);
    const UpsetGrid grid(ctx);
    const auto iv = interval(ctx, ctx.s(), ctx.s() + ctx.delta());
    CHECK(static_cast<int>(iv.size()) == grid.size());
    for (int i = 0; i < grid.size(); ++i) CHECK(std::find(iv.begin(), iv.end(), grid.cell(i)) != iv.end());
  }
}

TEST_CASE("upsets") {
  const GLContext a({2, 2, 2, 4});
  CHECK(enumerate_upsets(a).size() == 4);
  const GLContext b({2, 2, 3, 3});
  const UpsetGrid grid(b);
  const auto ups = enumerate_upsets(b);
  CHECK(ups.size() == 6);
  int by_definition = 0;
  for (CellMask m = 0; m <= grid.full(); ++m) by_definition += oracle::is_upset_by_definition(grid, m);
  CHECK(by_definition == 6);
  for (CellMask m : ups) CHECK(oracle::is_upset_by_definition(grid, m));
  CHECK(std::find(ups.begin(), ups.end(), CellMask{0}) != ups.end());
  CHECK(std::find(ups.begin(), ups.end(), grid.full()) != ups.end());
}

TEST_CASE("staircase enumeration agrees with the definition") {
  for (const Weights& p : {Weights{2, 2, 4, 5}, Weights{2, 2, 3, 6}}) {
    const GLContext ctx(p);
    const UpsetGrid grid(ctx);
    const auto fast = grid.enumerate();
    std::set<CellMask> want;
    for (CellMask m = 0; m <= grid.full(); ++m)
      if (oracle::is_upset_by_definition(grid, m)) want.insert(m);
    CHECK(std::set<CellMask>(fast.begin(), fast.end()) == want);
    CHECK(fast.size() == want.size());
  }
}

TEST_CASE("membership in S") {
  const GLContext ctx({2, 2, 3, 4});
  CHECK_FALSE(in_S(ctx, ctx.zero()));
  CHECK(in_S(ctx, ctx.c()));
  CHECK(in_S(ctx, ctx.s() - ctx.c()));
  CHECK(ctx.s() - ctx.c() == -1 * ctx.w());
  const GLContext a({2, 2, 2, 4});
  CHECK(in_S(a, a.x(3) + a.x(4)));
  CHECK(in_S(a, a.c()));

  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    GLElement x = random_element(ctx, rng);
    if (x.l >= -1 && x.l <= 1) x.l += x.l >= 0 ? 2 : -2;
    CHECK_FALSE(in_S(ctx, x));
  }
}

TEST_CASE("S is a transversal of the w-orbits") {
  for (const Weights& p : {Weights{2, 2, 2, 4}, Weights{2, 2, 3, 3}, Weights{2, 2, 3, 4}}) {
    const GLContext ctx(p);
    const auto s = enumerate_S(ctx);
    const long long wdeg = ctx.w().scaled_degree();
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const GLElement d = s[i] - s[j];
        const bool multiple = d.scaled_degree() % wdeg == 0 && d == (d.scaled_degree() / wdeg) * ctx.w();
        CHECK_FALSE(multiple);
      }
    // |L / Z x| = |torsion| * |deg x| / (1/lcm), torsion of order prod(p)/lcm
    long long prod = 1;
    for (int q : p) prod *= q;
    const long long order = prod / oracle::lcm4(p) * std::abs(wdeg);
    CHECK(quotient_order(ctx, ctx.w()) == order);
    CHECK(static_cast<long long>(s.size()) == order);
  }
  CHECK(enumerate_S(GLContext({2, 2, 3, 3})).size() == 24);
}

TEST_CASE("quotients") {
  const GLContext ctx({2, 2, 3, 5});
  CHECK(quotient_order(ctx, ctx.c()) == 2 * 2 * 3 * 5);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const GLElement x = random_element(ctx, rng);
    CHECK(quotient_class(ctx, x + ctx.w(), ctx.w()) == quotient_class(ctx, x, ctx.w()));
    CHECK(quotient_class(ctx, x - 3 * ctx.c(), ctx.c()) == quotient_class(ctx, x, ctx.c()));
  }
  CHECK_THROWS_AS(quotient_order(ctx, ctx.zero()), std::invalid_argument);
}

TEST_CASE("lambda of w multiples") {
  for (const Weights& p : {Weights{2, 2, 2, 4}, Weights{2, 2, 3, 3}, Weights{2, 3, 5, 7}}) {
    const GLContext ctx(p);
    for (int k = 0; k <= 12; ++k) {
      const auto nf = oracle::normal_form_by_search(p, {-k, -k, -k, -k, k}, 80);
      REQUIRE(nf);
      CHECK(lambda_of_w_multiple(ctx, k) == (*nf)[4]);
      CHECK((k * ctx.w()).l == (*nf)[4]);
    }
  }
  const GLContext fano({2, 2, 2, 4});
  CHECK(fano.is_fano());
  CHECK(lambda_of_w_multiple(fano, 40) < lambda_of_w_multiple(fano, 20));
  CHECK_FALSE(GLContext({4, 4, 4, 4}).is_fano());
}

TEST_CASE("parse") {
  const GLContext ctx({2, 2, 3, 3});
  CHECK(ctx.parse("1,1,2,2;-3") == ctx.w());
  CHECK(ctx.parse("0,0,1,0") == ctx.x(3));
  CHECK(ctx.parse_twist("-1*w") == -1 * ctx.w());
  CHECK(ctx.parse_twist("2*w+0,0,0,1;0") == 2 * ctx.w() + ctx.x(4));
  CHECK_THROWS(ctx.parse("1,2"));
}

}  // TEST_SUITE
