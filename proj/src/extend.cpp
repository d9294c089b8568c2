#include "valq/extend.hpp"

#include <sstream>

#include "valq/error.hpp"

namespace valq {

ResidualCheck residually_irreducible(const Level& L, const UPoly& F, const ConvexSubgroup& psi,
                                     const FactorSource& oracle) {
  if (psi.full()) throw Error("BAD_LEVEL", "residual irreducibility needs a proper subgroup");
  ResidualCheck res;
  res.reduction = L.residual_reduce(F, psi);
  if (res.reduction.deg() <= 1) {
    res.irreducible = true;
    res.factors = {res.reduction};
    res.source = "linear";
    return res;
  }
  auto fac = oracle.factor(L, res.reduction);
  if (!fac) throw Error("ORACLE_MISSING", "cannot factor the reduction " + L.str(res.reduction));
  res.factors = fac->factors;
  res.source = fac->source;
  res.irreducible = res.factors.size() == 1;
  return res;
}

GoodVariable good_variable(const Level& L, const UPoly& F, const Budgets& b,
                           const FactorSource& oracle) {
  const Field& K = L.K();
  GoodVariable gv;
  gv.alpha = K.zero();
  gv.F_alpha = F;
  for (int iter = 0; iter <= L.rank(); ++iter) {
    gv.psi = psi_F(L, gv.F_alpha, b.B);
    if (gv.psi.psi.full()) break;
    UPoly red = L.residual_reduce(gv.F_alpha, gv.psi.psi);
    std::optional<Factorization> fac;
    if (red.deg() <= 1)
      fac = Factorization{{red}, "linear"};
    else
      fac = oracle.factor(L, red);
    if (!fac)
      throw Error("ROOT_SEARCH_FAILED", "cannot decide roots of the reduction " + L.str(red));
    std::optional<Elem> root;
    for (const auto& g : fac->factors)
      if (g.deg() == 1 && L.in_m(g.c[0])) {
        root = K.neg(g.c[0]);
        break;
      }
    if (!root) break;
    if (K.is_zero(*root)) break;
    gv.alpha = K.add(gv.alpha, *root);
    gv.F_alpha = change_of_variable(L, gv.F_alpha, *root);
    gv.log.push_back("reduction " + L.str(red) + " has the root " + L.str(*root) + "; shift");
  }
  // absorb a partial sum so that delta_0 already generates the hull
  const auto& hl = gv.psi.hulls;
  size_t i0 = 0;
  while (i0 < hl.size() && hl[i0] < gv.psi.psi.level) ++i0;
  if (i0 > 0) {
    NewtonTrace& T = L.trace(gv.F_alpha);
    Elem s = T.sigma[i0];
    gv.alpha = K.add(gv.alpha, s);
    gv.F_alpha = change_of_variable(L, gv.F_alpha, s);
    gv.partial_shift = i0;
    gv.psi = psi_F(L, gv.F_alpha, b.B);
    gv.log.push_back("absorbed sigma_" + std::to_string(i0));
  }
  return gv;
}

namespace {

ExtendResult ext(const LevelPtr& L, const UPoly& F, const UPoly& h, const Budgets& b,
                 const FactorSource& oracle);

void common_den(const Elem& e, MPoly& D) {
  if (e.level == 0) {
    const MPoly& d = e.f.den();
    if (!d.is_constant()) D = mul(D, *exact_div(d, gcd(D, d)));
    return;
  }
  for (const auto& x : e.c) common_den(x, D);
}

void reduce_leaves(Elem& e) {
  if (e.level == 0) e.f = e.f.reduced();
  for (auto& x : e.c) reduce_leaves(x);
}

// coefficients of g live in the fraction field; clear denominators into R first
GroupValue level_value(const LevelPtr& parent, const UPoly& Q, const UPoly& g, const Budgets& b,
                       const FactorSource& oracle) {
  MPoly D = MPoly::constant(parent->ring().nvars(), 1);
  for (const auto& x : g.c) common_den(x, D);
  UPoly gd = g;
  if (!D.is_constant()) {
    const Field& K = parent->K();
    gd = up::scale(K, g, K.lift(Elem{0, Frac(D), {}}));
    for (auto& x : gd.c) reduce_leaves(x);
  }
  // elements built from deep iterates of the level above need a longer trace of Q
  Budgets bb = b;
  for (;;) {
    try {
      return ext(parent, Q, gd, bb, oracle).value - parent->ring().value_of(Frac(D));
    } catch (const Error& e) {
      if (e.code() != "INCONCLUSIVE" || bb.B >= 2 * b.B) throw;
      bb.B += 2;
    }
  }
}

void fill_witness(const Level& L, ExtendResult& r) {
  const ValuedRing& R = L.ring();
  int nv = R.nvars();
  if (r.value.is_inf()) {
    r.witness = Frac(nv);
    return;
  }
  auto e = lattice_solve(R.weights(), r.value);
  if (!e) throw Error("NOT_IN_LATTICE", "value " + r.value.str() + " outside the value group");
  r.witness_exps = *e;
  std::vector<unsigned> pos(nv, 0), neg(nv, 0);
  for (int i = 0; i < nv; ++i) ((*e)[i] >= 0 ? pos[i] : neg[i]) = static_cast<unsigned>(std::abs((*e)[i]));
  r.witness = Frac(MPoly::monomial(nv, pos, 1), MPoly::monomial(nv, neg, 1));
}

ExtendResult ext(const LevelPtr& Lp, const UPoly& F, const UPoly& h0, const Budgets& b,
                 const FactorSource& oracle) {
  const Level& L = *Lp;
  const Field& K = L.K();
  ExtendResult r;
  std::string tag = "[level " + std::to_string(L.index()) + "] ";
  if (h0.is_zero()) throw Error("ZERO_POLY", "extend_value of zero");
  FStar fs = fstar(L, F, oracle);
  r.log.push_back(tag + "F* = " + L.str(fs.f) + " (" + fs.source + ")");
  UPoly h = h0;
  if (h.deg() >= fs.f.deg()) {
    h = up::rem(K, h, fs.f);
    r.log.push_back(tag + "h reduced mod F*: " + L.str(h));
  }
  if (h.is_zero()) {
    r.value = GroupValue::inf(L.rank());
    r.log.push_back(tag + "h vanishes at the root");
    return r;
  }
  if (fs.f.deg() == 1) {
    Elem a = K.neg(fs.f.c[0]);
    r.value = value_at(L, h, a);
    r.log.push_back(tag + "linear F*: root " + L.str(a) + ", value " + r.value.str());
    return r;
  }
  GoodVariable gv = good_variable(L, fs.f, b, oracle);
  for (const auto& s : gv.log) r.log.push_back(tag + s);
  UPoly Fa = gv.F_alpha;
  UPoly ha = up::shift(K, h, gv.alpha);
  const ConvexSubgroup& psi = gv.psi.psi;
  r.log.push_back(tag + "good variable alpha = " + L.str(gv.alpha) + ", psi level " +
                  std::to_string(psi.level));
  if (psi.full()) {
    auto c = classify(L, Fa, ha, b.B, b.W);
    r.log.push_back(tag + "classify: " + c.str());
    if (c.kind != ClassKind::STATIONARY) throw Error("INCONCLUSIVE", c.str());
    r.value = c.phi;
    return r;
  }
  auto rc = residually_irreducible(L, Fa, psi, oracle);
  if (rc.irreducible) {
    size_t t = 0;
    GroupValue best = GroupValue::inf(L.rank());
    for (size_t k = 0; k < ha.c.size(); ++k) {
      if (K.is_zero(ha.c[k])) continue;
      GroupValue v = L.value(ha.c[k]);
      if (v < best) {
        best = v;
        t = k;
      }
    }
    UPoly H = up::scale(K, ha, K.inv(ha.c[t]));
    auto c = classify(L, Fa, H, b.B, b.W);
    r.log.push_back(tag + "residually irreducible; h_t = coefficient of X^" + std::to_string(t) +
                    " value " + best.str() + "; classify H: " + c.str());
    if (c.kind != ClassKind::STATIONARY) throw Error("INCONCLUSIVE", c.str());
    r.value = best + c.phi;
    return r;
  }
  std::optional<UPoly> Qbar;
  for (const auto& g : rc.factors)
    if (L.in_m(g.c[0])) Qbar = g;
  if (!Qbar) throw Error("INCONSISTENT", "reduction has no Nagata factor");
  if (Qbar->deg() == 1) throw Error("INTERNAL", "linear Nagata factor survived the good variable");
  LevelPtr L1 = tower_push(Lp, *Qbar, b, oracle);
  const Field& K1 = L1->K();
  Elem Y = K1.gen();
  UPoly F1 = up::shift(K1, up::lift(K1, Fa), Y);
  UPoly h1 = up::shift(K1, up::lift(K1, ha), Y);
  GroupValue d0 = L1->value(F1.c[0]) - L1->value(F1.c[1]);
  r.log.push_back(tag + "pushed " + L1->K().gen_name() + " with Q = " + L.str(*Qbar, "Y") +
                  "; nu(delta_0) of the shifted F = " + d0.str());
  if (psi.contains(d0))
    throw Error("PSI_CHAIN", "new delta_0 value " + d0.str() + " stays inside the previous subgroup");
  ExtendResult sub = ext(L1, F1, h1, b, oracle);
  r.log.insert(r.log.end(), sub.log.begin(), sub.log.end());
  r.value = sub.value;
  r.depth = sub.depth + 1;
  return r;
}

}  // namespace

LevelPtr tower_push(const LevelPtr& L, const UPoly& Qbar, const Budgets& b,
                    const FactorSource& oracle) {
  int limit = b.D < 0 ? L->rank() : std::min(b.D, L->rank());
  if (L->index() + 1 > limit)
    throw Error("DEPTH", "tower depth would exceed " + std::to_string(limit));
  if (Qbar.deg() < 2) throw Error("TOWER_INTEGRITY", "linear levels are shifts, not extensions");
  require_nagata(*L, Qbar);
  FactorSource o = oracle;
  if (L->index() == 0) o.add_list(L->K(), Qbar, {Qbar});
  std::string gen = "Y" + std::to_string(L->index() + 1);
  return Level::push(L, Qbar, gen, [o, b](const LevelPtr& parent, const UPoly& Q, const UPoly& g) {
    return level_value(parent, Q, g, b, o);
  });
}

std::string ExtendResult::witness_str(const std::vector<std::string>& names) const {
  if (value.is_inf()) return "0";
  std::string out;
  for (size_t i = 0; i < witness_exps.size(); ++i) {
    int64_t e = witness_exps[i];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

ExtendResult extend_value(const LevelPtr& L, const UPoly& F, const UPoly& h, const Budgets& b,
                          const FactorSource& oracle) {
  if (h.is_zero()) throw Error("ZERO_POLY", "extend_value of zero");
  if (L->index() == 0)
    for (const auto& c : h.c)
      if (!L->in_R(c)) throw Error("NOT_IN_R", "coefficient " + L->str(c));
  ExtendResult r = ext(L, F, h, b, oracle);
  fill_witness(*L, r);
  if (!r.value.is_inf() && L->ring().value_of(r.witness) != r.value)
    throw Error("INTERNAL", "witness value mismatch");
  return r;
}

ApproxProfile approx_profile(const LevelPtr& Lp, const UPoly& F, const UPoly& h, const UPoly& q,
                             const std::vector<std::pair<std::string, Elem>>& cs,
                             const Budgets& b, const FactorSource& oracle) {
  const Level& L = *Lp;
  const Field& K = L.K();
  ApproxProfile prof;
  NewtonTrace& T = L.trace(F);
  T.run_to(static_cast<size_t>(b.B));
  if (T.exact_root()) throw Error("TRIVIAL_EXTENSION", "F has a root in the ring");
  GroupValue vq = extend_value(Lp, F, q, b, oracle).value;
  if (vq.is_inf()) throw Error("DIV_BY_ZERO", "q vanishes at the root");
  int n = b.B - b.W;
  for (int i = 0; i < n; ++i) {
    const Elem& s = T.sigma[i];
    Elem qs = up::eval(K, q, s), hs = up::eval(K, h, s);
    if (K.is_zero(qs)) throw Error("DIV_BY_ZERO", "q vanishes at an approximant");
    UPoly g = up::sub(K, up::scale(K, h, qs), up::scale(K, q, hs));
    GroupValue v = g.is_zero() ? GroupValue::inf(L.rank()) : extend_value(Lp, F, g, b, oracle).value;
    prof.d.push_back(v - vq - L.value(qs));
  }
  prof.psi = psi_F(L, F, b.B).psi;
  size_t m = prof.d.size();
  if (m >= static_cast<size_t>(b.W) + 1) {
    prof.certified = true;
    int64_t k = 0;
    bool have = false;
    for (size_t i = m - 1 - b.W; i + 1 < m && prof.certified; ++i) {
      GroupValue dd = prof.d[i + 1] - prof.d[i];
      GroupValue dn = T.nu_delta[i + 1] - T.nu_delta[i];
      int c = 0;
      while (c < dn.rank() && dn[c] == 0) ++c;
      if (c == dn.rank() || dd[c] % dn[c] != 0) {
        prof.certified = false;
        break;
      }
      int64_t kk = dd[c] / dn[c];
      if (!have) {
        k = kk;
        have = true;
      }
      prof.certified = kk == k && dd == dn * k;
    }
    if (prof.certified) {
      prof.k = k;
      prof.phi = prof.d[m - 1] - T.nu_delta[m - 1] * k;
    }
  }
  for (const auto& [label, c] : cs) {
    UPoly g = up::sub(K, h, up::scale(K, q, K.lift(c)));
    ApproxPoint pt;
    pt.label = label;
    GroupValue v = g.is_zero() ? GroupValue::inf(L.rank()) : extend_value(Lp, F, g, b, oracle).value;
    pt.value = v.is_inf() ? v : v - vq;
    for (const auto& d : prof.d)
      if (pt.value < d) pt.below = true;
    prof.points.push_back(pt);
  }
  return prof;
}

}  // namespace valq
