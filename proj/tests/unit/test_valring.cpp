#include <doctest.h>

#include "support.hpp"

using namespace vt;

namespace {

std::vector<std::vector<unsigned>> exps(const MPoly& p) {
  std::vector<std::vector<unsigned>> out;
  for (const auto& t : p.terms()) {
    std::vector<unsigned> e(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) e[i] = MPoly::exp(t.key, i);
    out.push_back(e);
  }
  return out;
}

std::vector<oracle::Vec> weights(const ValuedRing& R) {
  std::vector<oracle::Vec> w;
  for (const auto& g : R.weights()) w.push_back(g.coords());
  return w;
}

}  // namespace

TEST_CASE("values of ring elements") {
  auto f = rank2();
  const ValuedRing& R = f.ring;
  CHECK(R.value_of(Fr(f, "t + t^2 + u")) == G({0, 1}));
  CHECK(R.value_of(Fr(f, "1")) == G({0, 0}));
  CHECK(R.value_of(Fr(f, "0")).is_inf());
  CHECK(R.value_of(Fr(f, "u/t^3")) == G({1, -3}));
  CHECK(R.value_of(Fr(f, "(u + t)/(1 + u)")) == G({0, 1}));
}

TEST_CASE("locality") {
  auto f = rank1();
  const ValuedRing& R = f.ring;
  CHECK(R.is_local(Fr(f, "t/(1 + t)")) == Locality::MAXIMAL_IDEAL);
  CHECK(R.is_local(Fr(f, "(1 + t)/(1 + 2t)")) == Locality::UNIT);
  CHECK(R.is_local(Fr(f, "1/t")) == Locality::NOT_IN_R);
  CHECK(R.is_local(Fr(f, "(t + t^2)/(t + 2t^3)")) == Locality::UNIT);
  CHECK(R.is_local(Fr(f, "0")) == Locality::MAXIMAL_IDEAL);
  auto g = rank2();
  Frac x = Fr(g, "(u + t)/(u + t)");
  CHECK(g.ring.is_local(x) == Locality::UNIT);
  Frac y = Frac(mul(Fr(g, "u + t").num(), Fr(g, "1 + u").num()), mul(Fr(g, "u + t").num(), Fr(g, "t").num()));
  CHECK(g.ring.is_local(y) == Locality::NOT_IN_R);
}

TEST_CASE("initial form equality") {
  auto f = rank2();
  const ValuedRing& R = f.ring;
  CHECK(R.in_eq(Fr(f, "t + t^2"), Fr(f, "t - u t")));
  CHECK_FALSE(R.in_eq(Fr(f, "t"), Fr(f, "2t")));
  CHECK(R.in_eq(Fr(f, "0"), Fr(f, "0")));
  CHECK_FALSE(R.in_eq(Fr(f, "0"), Fr(f, "t")));
  CHECK_FALSE(R.in_eq(Fr(f, "t"), Fr(f, "u")));
}

TEST_CASE("residual reduction") {
  auto f = rank2();
  const ValuedRing& R = f.ring;
  ConvexSubgroup psi{2, 1};
  CHECK(R.residual_reduce(Fr(f, "t + t^2 + u"), psi) == Fr(f, "t + t^2"));
  CHECK(R.residual_reduce(Fr(f, "1 + u + t"), psi) == Fr(f, "1 + t"));
  CHECK(R.residual_reduce(Fr(f, "u"), psi).is_zero());
  CHECK(R.residual_reduce(Fr(f, "(u + t)/(1 + u)"), psi) == Fr(f, "t"));
  CHECK_THROWS_AS(R.residual_reduce(Fr(f, "1/t"), psi), Error);
  CHECK_THROWS_AS(R.residual_reduce(Fr(f, "t"), ConvexSubgroup{2, 2}), Error);
  ValuedRing Q = R.quotient(psi);
  CHECK(Q.rank() == 1);
  CHECK(Q.dead(0));
  CHECK_FALSE(Q.dead(1));
  CHECK(Q.value_of(Fr(f, "t + t^2")) == G({1}));
  CHECK_THROWS_AS(Q.value_of(Fr(f, "u")), Error);
}

TEST_CASE("value split") {
  auto f = rank2();
  const ValuedRing& R = f.ring;
  ConvexSubgroup psi{2, 1};
  auto [h1, t1] = R.value_split(Fr(f, "t + t^2 + u"), psi);
  CHECK(h1 == G({0}));
  REQUIRE(t1);
  CHECK(*t1 == G({1}));
  CHECK(*t1 == R.quotient(psi).value_of(R.residual_reduce(Fr(f, "t + t^2 + u"), psi)));
  auto [h2, t2] = R.value_split(Fr(f, "u"), psi);
  CHECK(h2 == G({1}));
  CHECK_FALSE(t2);
  auto [h3, t3] = R.value_split(Fr(f, "1"), psi);
  CHECK(h3 == G({0}));
  CHECK(*t3 == G({0}));
  CHECK_THROWS_AS(R.value_split(Fr(f, "0"), psi), Error);
}

TEST_CASE("weights are validated") {
  CHECK_THROWS_AS(ValuedRing({"x"}, {G({0})}), Error);
  CHECK_THROWS_AS(ValuedRing({"x", "y"}, {G({1, 0}), G({0, -1})}), Error);
  CHECK_THROWS_AS(ValuedRing({"x", "y"}, {G({1, 0}), G({1})}), Error);
  CHECK_NOTHROW(ValuedRing({"x", "y"}, {G({1, 0}), G({1, -1})}));
  CHECK_THROWS_AS(ValuedRing({"a", "b", "c", "d", "e"}, {G({1}), G({1}), G({1}), G({1}), G({1})}), Error);
}

TEST_CASE("values agree with a brute-force lex minimum") {
  std::mt19937 rng(41);
  std::vector<ValuedRing> rings = {
      ValuedRing::standard({"a", "b", "c"}),
      ValuedRing({"x", "y"}, {G({1, 0}), G({1, -1})}),
      ValuedRing({"x", "y", "z"}, {G({0, 2, 1}), G({1, -3, 0}), G({0, 0, 5})}),
      ValuedRing({"s", "t"}, {G({2}), G({3})}),
  };
  for (const auto& R : rings)
    for (int k = 0; k < 200; ++k) {
      MPoly p = random_poly(rng, R.nvars(), 1 + k % 6, 4);
      if (p.is_zero()) continue;
      CHECK(vec(R.value_of(p)) == oracle::min_weight(exps(p), weights(R)));
    }
}

TEST_CASE("valuation axioms on random fractions") {
  std::mt19937 rng(43);
  std::vector<ValuedRing> rings = {ValuedRing::standard({"a", "b", "c"}),
                                   ValuedRing({"u", "t"}, {G({1, 0}), G({0, 1})}),
                                   ValuedRing({"x", "y"}, {G({1, 0}), G({1, -1})})};
  int n = 0;
  for (const auto& R : rings)
    for (int k = 0; k < 350; ++k) {
      int nv = R.nvars();
      MPoly dx = random_poly(rng, nv, 2, 3), dy = random_poly(rng, nv, 2, 3);
      if (dx.is_zero() || dy.is_zero()) continue;
      Frac x(random_poly(rng, nv, 3, 4), dx);
      Frac y(random_poly(rng, nv, 3, 4), dy);
      if (x.is_zero() || y.is_zero()) continue;
      ++n;
      CHECK(R.value_of(x * y) == R.value_of(x) + R.value_of(y));
      GroupValue vx = R.value_of(x), vy = R.value_of(y), vs = R.value_of(x + y);
      CHECK(vs >= std::min(vx, vy));
      if (vx != vy) CHECK(vs == std::min(vx, vy));
    }
  CHECK(n > 900);
}

TEST_CASE("residual reduction is a ring morphism and carries the tail value") {
  std::mt19937 rng(47);
  ValuedRing R = ValuedRing::standard({"a", "b", "c"});
  for (int level = 1; level <= 2; ++level) {
    ConvexSubgroup psi{3, level};
    ValuedRing Q = R.quotient(psi);
    for (int k = 0; k < 150; ++k) {
      Frac x(random_poly(rng, 3, 3, 3), random_unit(rng, 3, 3, 2));
      Frac y(random_poly(rng, 3, 3, 3), random_unit(rng, 3, 3, 2));
      CHECK(R.residual_reduce(x * y, psi) == R.residual_reduce(x, psi) * R.residual_reduce(y, psi));
      CHECK(R.residual_reduce(x + y, psi) == R.residual_reduce(x, psi) + R.residual_reduce(y, psi));
      if (x.is_zero()) continue;
      GroupValue v = R.value_of(x);
      if (psi.contains(v)) CHECK(v.tail(level) == Q.value_of(R.residual_reduce(x, psi)));
    }
  }
}

TEST_CASE("initial form equality is an equivalence on a value class") {
  auto f = rank2();
  const ValuedRing& R = f.ring;
  std::mt19937 rng(53);
  std::vector<Frac> cls;
  Frac base = Fr(f, "t");
  for (int k = 0; k < 60; ++k) {
    int c = 1 + static_cast<int>(rng() % 2);
    Frac extra(random_poly(rng, 2, 2, 3));
    extra = extra * Fr(f, "t^2");
    cls.push_back(Frac::of_int(2, c) * base + extra);
  }
  for (const auto& a : cls) {
    CHECK(R.in_eq(a, a));
    for (const auto& b : cls) {
      CHECK(R.in_eq(a, b) == R.in_eq(b, a));
      for (size_t k = 0; k < cls.size(); k += 7)
        if (R.in_eq(a, b) && R.in_eq(b, cls[k])) CHECK(R.in_eq(a, cls[k]));
    }
  }
}
