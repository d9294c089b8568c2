#include "valq/nagata.hpp"

#include <algorithm>

#include "valq/error.hpp"

namespace valq {

const char* reject_name(NagataReject r) {
  switch (r) {
    case NagataReject::NONE: return "NONE";
    case NagataReject::NOT_MONIC: return "NOT_MONIC";
    case NagataReject::COEFF_NOT_IN_R: return "COEFF_NOT_IN_R";
    case NagataReject::CONST_NOT_IN_M: return "CONST_NOT_IN_M";
    default: return "LINEAR_NOT_UNIT";
  }
}

NagataCheck is_nagata(const Level& L, const UPoly& f) {
  const Field& K = L.K();
  NagataCheck res;
  if (f.deg() < 1 || !K.is_one(f.lead())) {
    res.reason = NagataReject::NOT_MONIC;
    return res;
  }
  for (const auto& c : f.c)
    if (!L.in_R(c)) {
      res.reason = NagataReject::COEFF_NOT_IN_R;
      return res;
    }
  res.a_n = K.neg(f.c[0]);
  res.a_lin = f.c[1];
  if (!L.in_m(f.c[0])) {
    res.reason = NagataReject::CONST_NOT_IN_M;
    return res;
  }
  if (L.locality(f.c[1]) != Locality::UNIT) {
    res.reason = NagataReject::LINEAR_NOT_UNIT;
    return res;
  }
  res.ok = true;
  res.trivial_hint = K.is_zero(f.c[0]);
  return res;
}

void require_nagata(const Level& L, const UPoly& f) {
  auto c = is_nagata(L, f);
  if (!c.ok) throw Error("NOT_NAGATA", std::string(reject_name(c.reason)) + ": " + L.str(f));
}

UPoly change_of_variable(const Level& L, const UPoly& F, const Elem& alpha) {
  if (!L.in_m(alpha)) throw Error("NOT_IN_M", "shift " + L.str(alpha) + " is not in the maximal ideal");
  require_nagata(L, F);
  UPoly G = up::shift(L.K(), F, L.K().lift(alpha));
  require_nagata(L, G);
  return G;
}

FacSide fac_classify(const Level& L, const UPoly& G, const UPoly& Q) {
  const Field& K = L.K();
  auto chk = is_nagata(L, up::mul(K, G, Q));
  if (!chk.ok)
    throw Error("PRODUCT_NOT_NAGATA", std::string(reject_name(chk.reason)));
  for (const UPoly* p : {&G, &Q}) {
    if (p->deg() < 1 || !K.is_one(p->lead())) throw Error("NOT_MONIC", "factor " + L.str(*p));
    for (const auto& c : p->c)
      if (!L.in_R(c)) throw Error("NOT_IN_R", "factor coefficient " + L.str(c));
  }
  bool gm = L.in_m(G.c[0]), qm = L.in_m(Q.c[0]);
  if (gm == qm) throw Error("INCONSISTENT", "exactly one factor must have constant term in m");
  const UPoly& nag = gm ? G : Q;
  const UPoly& other = gm ? Q : G;
  if (L.locality(other.c[0]) != Locality::UNIT)
    throw Error("INCONSISTENT", "cofactor constant term is not a unit");
  if (L.locality(nag.c.size() > 1 ? nag.c[1] : K.zero()) != Locality::UNIT)
    throw Error("INCONSISTENT", "Nagata factor has non-unit linear coefficient");
  return gm ? FacSide::FIRST_IS_NAGATA : FacSide::SECOND_IS_NAGATA;
}

namespace {

unsigned key_degree(uint64_t key) {
  unsigned d = 0;
  for (int i = 0; i < MPoly::kMaxVars; ++i) d += MPoly::exp(key, i);
  return d;
}

MPoly homogeneous_part(const MPoly& p, unsigned d) {
  std::vector<MPoly::Term> t;
  for (const auto& x : p.terms())
    if (key_degree(x.key) == d) t.push_back(x);
  return MPoly::from_terms(p.nvars(), std::move(t));
}

// monic integer-polynomial coefficients, low to high
using ZUPoly = std::vector<MPoly>;

MPoly zeval(const ZUPoly& G, const MPoly& b) {
  MPoly acc = G.back();
  for (size_t k = G.size() - 1; k-- > 0;) acc = mul(acc, b) + G[k];
  return acc;
}

Int ieval(const std::vector<Int>& g, const Int& c) {
  Int acc = g.back();
  for (size_t k = g.size() - 1; k-- > 0;) acc = acc * c + g[k];
  return acc;
}

// divide monic G by (Y - b)
ZUPoly zdiv_linear(const ZUPoly& G, const MPoly& b) {
  size_t n = G.size() - 1;
  ZUPoly q(n);
  MPoly carry = G[n];
  for (size_t k = n; k-- > 0;) {
    q[k] = carry;
    carry = G[k] + mul(carry, b);
  }
  return q;
}

std::vector<Int> integer_candidates(const std::vector<Int>& g0, bool& complete) {
  std::vector<Int> out;
  size_t j = 0;
  while (j < g0.size() && g0[j] == 0) ++j;
  if (j > 0) out.push_back(0);
  if (j >= g0.size() - 1) return out;
  Int a = abs(g0[j]);
  if (a > Int("1000000000000")) {
    complete = false;
    return out;
  }
  unsigned long n = a.get_ui();
  std::vector<unsigned long> ds;
  for (unsigned long i = 1; i * i <= n; ++i)
    if (n % i == 0) {
      ds.push_back(i);
      if (i != n / i) ds.push_back(n / i);
    }
  std::sort(ds.begin(), ds.end());
  for (auto d : ds) {
    out.push_back(Int(d));
    out.push_back(-Int(d));
  }
  return out;
}

// p(vars + a)
MPoly translate(const MPoly& p, const std::vector<long>& a) {
  int nv = p.nvars();
  MPoly r(nv);
  for (const auto& t : p.terms()) {
    MPoly m = MPoly::constant(nv, t.c);
    for (int i = 0; i < nv; ++i) {
      unsigned e = MPoly::exp(t.key, i);
      if (e) m = mul(m, pow(MPoly::variable(nv, i) + MPoly::constant(nv, a[i]), e));
    }
    r += m;
  }
  return r;
}

// roots are lifted degree by degree from integer roots of the specialization
// at the origin; a multiple root there leaves the search incomplete
std::optional<MPoly> find_root_at_origin(const ZUPoly& G, bool& complete) {
  int nv = G[0].nvars();
  size_t n = G.size() - 1;
  std::vector<Int> g0, d0;
  for (const auto& c : G) g0.push_back(c.constant_term());
  for (size_t k = 1; k <= n; ++k) d0.push_back(g0[k] * static_cast<long>(k));
  unsigned bound = 0;
  for (size_t k = 0; k < n; ++k)
    if (!G[k].is_zero()) bound = std::max<unsigned>(bound, G[k].total_degree() / (n - k));
  for (const Int& c : integer_candidates(g0, complete)) {
    if (ieval(g0, c) != 0) continue;
    MPoly b = MPoly::constant(nv, c);
    Int d = ieval(d0, c);
    if (d == 0) {
      if (zeval(G, b).is_zero()) return b;
      complete = false;  // multiple root of the specialization: lifting is not unique
      continue;
    }
    bool ok = true;
    for (unsigned deg = 1; deg <= bound && ok; ++deg) {
      MPoly part = homogeneous_part(zeval(G, b), deg);
      for (const auto& t : part.terms())
        if (!mpz_divisible_p(t.c.get_mpz_t(), d.get_mpz_t())) ok = false;
      if (ok && !part.is_zero()) b -= part.div_exact_int(d);
    }
    if (ok && zeval(G, b).is_zero()) return b;
  }
  return std::nullopt;
}

// a root of G in Z[vars] (equivalently in the fraction field), or nothing;
// complete is cleared when a root could have been missed. Specializations
// with multiple roots are avoided by translating the variables.
std::optional<MPoly> find_root(const ZUPoly& G, bool& complete) {
  static const std::vector<std::vector<long>> shifts = {
      {0, 0, 0, 0}, {1, 1, 1, 1}, {1, 2, 3, 5}, {-1, 2, -3, 4}, {2, -1, 1, -2}, {3, 5, -2, 7}};
  for (const auto& a : shifts) {
    std::vector<long> na(a.size());
    for (size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
    ZUPoly Ga;
    for (const auto& c : G) Ga.push_back(translate(c, a));
    bool comp = true;
    auto b = find_root_at_origin(Ga, comp);
    if (b) return translate(*b, na);
    if (comp) return std::nullopt;
  }
  complete = false;
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<UPoly>> builtin_factor(const Field& K, const UPoly& f0) {
  if (f0.is_zero()) throw Error("ZERO_POLY", "factor of zero");
  UPoly f = up::monic(K, f0);
  if (f.deg() == 0) return std::vector<UPoly>{};
  if (f.deg() == 1) return std::vector<UPoly>{f};
  if (K.level() != 0) return std::nullopt;
  int nv = K.nvars();
  size_t n = static_cast<size_t>(f.deg());
  MPoly D = MPoly::constant(nv, 1);
  for (const auto& c : f.c) {
    const MPoly& den = c.f.den();
    if (den.is_one()) continue;
    D = *exact_div(mul(D, den), gcd(D, den));
  }
  // G(Y) = D^n f(Y/D) is monic with polynomial coefficients
  ZUPoly G(n + 1);
  MPoly Dp = MPoly::constant(nv, 1);
  for (size_t k = n + 1; k-- > 0;) {
    const Frac& c = f.c[k].f;
    G[k] = mul(mul(c.num(), *exact_div(D, c.den())), Dp);
    Dp = mul(Dp, D);
  }
  // back to X: P(Y) monic of degree m gives P(D X)/D^m
  auto back = [&](const ZUPoly& P) {
    UPoly r;
    size_t m = P.size() - 1;
    for (size_t k = 0; k <= m; ++k) {
      Frac c(P[k], pow(D, static_cast<unsigned>(m - k)));
      r.c.push_back(K.of_frac(c));
    }
    up::trim(K, r);
    return r;
  };

  std::vector<UPoly> out;
  bool complete = true;
  while (G.size() > 2) {
    auto b = find_root(G, complete);
    if (!b) break;
    out.push_back(back({-*b, MPoly::constant(nv, 1)}));
    G = zdiv_linear(G, *b);
  }
  size_t d = G.size() - 1;
  if (d == 1) {
    out.push_back(back(G));
  } else if (d == 2) {
    MPoly disc = mul(G[1], G[1]) - G[0].scaled(4);
    auto s = sqrt_exact(disc);
    if (s) {
      MPoly r1 = (-G[1] + *s).div_exact_int(2), r2 = (-G[1] - *s).div_exact_int(2);
      out.push_back(back({-r1, MPoly::constant(nv, 1)}));
      out.push_back(back({-r2, MPoly::constant(nv, 1)}));
    } else {
      out.push_back(back(G));
    }
  } else if (d == 3) {
    if (!complete) return std::nullopt;
    out.push_back(back(G));
  } else if (d >= 4) {
    return std::nullopt;
  }
  return out;
}

void FactorSource::add_list(const Field& K, const UPoly& product, std::vector<UPoly> factors) {
  if (factors.empty()) throw Error("BAD_FACTORS", "empty factor list");
  UPoly p = up::constant(K.one());
  for (auto& g : factors) {
    if (g.deg() < 1) throw Error("BAD_FACTORS", "constant factor");
    g = up::monic(K, g);
    p = up::mul(K, p, g);
  }
  if (!up::eq(K, p, up::monic(K, product)))
    throw Error("BAD_FACTORS", "factors do not multiply back to the polynomial");
  lists_.push_back({up::monic(K, product), std::move(factors)});
}

std::optional<Factorization> FactorSource::factor(const Level& L, const UPoly& f) const {
  const Field& K = L.K();
  UPoly m = up::monic(K, f);
  if (K.level() == 0) {
    for (const auto& e : lists_)
      if (up::eq(K, e.product, m))
        return Factorization{e.factors, e.factors.size() == 1 ? "declared" : "list"};
  }
  if (!builtin_ && m.deg() > 1) return std::nullopt;
  auto b = builtin_factor(K, m);
  if (!b) return std::nullopt;
  return Factorization{*b, "builtin"};
}

FStar fstar(const Level& L, const UPoly& F, const FactorSource& oracle) {
  require_nagata(L, F);
  const Field& K = L.K();
  auto fac = oracle.factor(L, F);
  FStar res;
  if (!fac) {
    if (L.index() == 0) throw Error("ORACLE_MISSING", "no factorization for " + L.str(F));
    // values are read off the Newton sequence of F itself, which converges
    // to the same root; only stationary answers are ever reported
    res.f = F;
    res.factors = {F};
    res.source = "unfactored";
    return res;
  }
  res.factors = fac->factors;
  res.source = fac->source;
  int found = -1;
  for (size_t i = 0; i < res.factors.size(); ++i) {
    const UPoly& g = res.factors[i];
    if (L.in_m(g.c[0])) {
      if (found >= 0 && !up::eq(K, res.factors[found], g))
        throw Error("NON_UNIQUE", "two factors with constant term in m");
      if (found >= 0) throw Error("NON_UNIQUE", "repeated factor with constant term in m");
      found = static_cast<int>(i);
    } else if (L.locality(g.c[0]) != Locality::UNIT) {
      throw Error("NOT_IN_R", "factor constant term outside R: " + L.str(g));
    }
  }
  if (found < 0) throw Error("NON_UNIQUE", "no factor with constant term in m");
  res.index = static_cast<size_t>(found);
  res.f = res.factors[found];
  for (const auto& c : res.f.c)
    if (!L.in_R(c)) throw Error("NOT_IN_R", "F* coefficient " + L.str(c));
  return res;
}

}  // namespace valq
