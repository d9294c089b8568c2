#pragma once

#include <random>
#include <string>
#include <vector>

#include "../oracle/brute.hpp"
#include "../oracle/series.hpp"
#include "valq/error.hpp"
#include "valq/extend.hpp"
#include "valq/fixture.hpp"

namespace vt {

using namespace valq;

inline Fixture fx(const std::string& text) { return parse_fixture(text); }

inline Fixture rank1(const std::string& polys = "") {
  return fx("ring rank=1 vars=t weights=(1)\n" + polys);
}

// u then t, u infinitely larger than t
inline Fixture rank2(const std::string& polys = "") {
  return fx("ring rank=2 vars=u,t weights=(1,0);(0,1)\n" + polys);
}

inline UPoly P(const Fixture& f, const std::string& e) { return parse_expr(f, e); }
inline Elem E(const Fixture& f, const std::string& e) {
  UPoly p = parse_expr(f, e);
  return p.is_zero() ? f.K->zero() : p.c[0];
}
inline Frac Fr(const Fixture& f, const std::string& e) { return E(f, e).f; }

inline GroupValue G(std::vector<int64_t> c) { return GroupValue(std::move(c)); }

inline bool same(const Fixture& f, const UPoly& a, const UPoly& b) { return up::eq(*f.K, a, b); }

// univariate integer polynomial as rational coefficients, low to high
inline std::vector<oracle::Q> coeffs(const MPoly& p) {
  std::vector<oracle::Q> c;
  for (const auto& t : p.terms()) {
    unsigned e = MPoly::exp(t.key, 0);
    if (c.size() <= e) c.resize(e + 1);
    c[e] = oracle::Q(t.c);
  }
  return c;
}

inline oracle::Series series(const Frac& x, size_t n) {
  return oracle::ratfun(coeffs(x.num()), coeffs(x.den()), n);
}

inline oracle::SPoly series_poly(const UPoly& f, size_t n) {
  oracle::SPoly s;
  for (const auto& c : f.c) s.push_back(series(c.f, n));
  return s;
}

inline oracle::Vec vec(const GroupValue& g) { return g.coords(); }

// random polynomial in the ring variables with small coefficients
inline MPoly random_poly(std::mt19937& rng, int nv, int terms, unsigned maxdeg, int cmax = 5) {
  std::uniform_int_distribution<int> cd(-cmax, cmax), ed(0, static_cast<int>(maxdeg));
  std::vector<MPoly::Term> ts;
  for (int k = 0; k < terms; ++k) {
    std::vector<unsigned> e(nv);
    for (auto& x : e) x = static_cast<unsigned>(ed(rng));
    int c = cd(rng);
    if (c != 0) ts.push_back({MPoly::make_key(e), c});
  }
  return MPoly::from_terms(nv, std::move(ts));
}

inline MPoly random_unit(std::mt19937& rng, int nv, int terms, unsigned maxdeg) {
  MPoly p = random_poly(rng, nv, terms, maxdeg);
  std::uniform_int_distribution<int> cd(1, 4);
  return p - p.eval_origin() + MPoly::constant(nv, cd(rng));
}

inline std::string fixture_dir() { return VALQ_FIXTURE_DIR; }

}  // namespace vt
