#include "valq/newton.hpp"

#include <sstream>

#include "valq/error.hpp"

namespace valq {

namespace {

// integer numerators over a common denominator D: P = (sum P_k X^k) / D
void integer_form(const UPoly& P, std::vector<MPoly>& out, MPoly& D, int nv) {
  D = MPoly::constant(nv, 1);
  std::vector<Frac> fs;
  for (const auto& c : P.c) fs.push_back(c.f.reduced());
  for (const auto& f : fs) {
    const MPoly& den = f.den();
    if (den.is_one() || den == D) continue;
    D = *exact_div(mul(D, den), gcd(D, den));
  }
  out.clear();
  for (const auto& f : fs) {
    out.push_back(f.den() == D ? f.num() : mul(f.num(), *exact_div(D, f.den())));
  }
}

// sum_k P_k p^k q^(s-k) with qp[j] = q^j
MPoly hom_horner(const std::vector<MPoly>& P, const MPoly& p, const std::vector<MPoly>& qp) {
  size_t s = P.size() - 1;
  MPoly acc = P[s];
  for (size_t k = s; k-- > 0;) {
    acc = p.is_zero() ? MPoly(p.nvars()) : mul(acc, p);
    if (!P[k].is_zero()) acc += mul(P[k], qp[s - k]);
  }
  return acc;
}

}  // namespace

NewtonTrace::NewtonTrace(const Level& L, UPoly F) : L_(&L), F_(std::move(F)) {
  require_nagata(L, F_);
  const Field& K = L.K();
  sigma.push_back(K.zero());
  nu_sigma.push_back(GroupValue::inf(L.rank()));
  if (K.level() == 0) {
    UPoly dF = up::deriv(K, F_);
    UPoly g = up::gcd(K, F_, dF);
    if (g.deg() == 0 || L.locality(g.c[0]) == Locality::UNIT) {
      int nv = K.nvars();
      integer_form(up::quo(K, F_, g), A_, DA_, nv);
      integer_form(up::quo(K, dF, g), Bp_, DB_, nv);
      hom_ = true;
    }
  }
}

bool NewtonTrace::all_checks_pass() const {
  for (const auto& c : checks)
    if (!c.doubling || !c.value_eq || !c.nagata) return false;
  return divisible_an2 && value_an2 && congruence;
}

void NewtonTrace::run_to(size_t n) {
  while (delta.size() < n && status == TraceStatus::RUNNING) {
    step();
    if (!first_step_checked && !delta.empty()) first_step_checks();
  }
}

void NewtonTrace::step() {
  if (hom_)
    step_hom();
  else
    step_generic();
  if (status != TraceStatus::RUNNING) return;
  size_t i = delta.size() - 1;
  StepCheck& c = checks.back();
  if (i >= 1) {
    c.doubling = nu_delta[i] >= nu_delta[i - 1] * 2;
    c.value_eq = nu_delta[i] == nu_F[i];
  }
}

void NewtonTrace::step_hom() {
  const Field& K = L_->K();
  const ValuedRing& R = L_->ring();
  const Frac& s = sigma.back().f;
  const MPoly& p = s.num();
  const MPoly& q = s.den();
  size_t sa = A_.size() - 1, sb = Bp_.size() - 1;
  std::vector<MPoly> qp{MPoly::constant(q.nvars(), 1)};
  for (size_t k = 1; k <= std::max(sa, sb); ++k) qp.push_back(q.is_one() ? q : mul(qp.back(), q));
  MPoly At = hom_horner(A_, p, qp);
  if (At.is_zero()) {
    status = TraceStatus::EXACT_ROOT;
    root_index = delta.size();
    return;
  }
  MPoly Bt = hom_horner(Bp_, p, qp);
  GroupValue vq = R.value_of(q);
  GroupValue vF = R.value_of(At) - R.value_of(DA_) - vq * static_cast<int64_t>(sa);
  GroupValue vFp = R.value_of(Bt) - R.value_of(DB_) - vq * static_cast<int64_t>(sb);
  // delta = -A(s)/Bp(s) = -At DB q^sb / (DA q^sa Bt), sa = sb + 1
  MPoly den = mul(q, Bt);
  if (!DA_.is_one()) den = mul(den, DA_);
  for (size_t k = sb + 1; k < sa; ++k) den = mul(den, q);
  MPoly num = DB_.is_one() ? -At : -mul(At, DB_);
  Elem d, sn;
  d.f = Frac(num, den);
  MPoly pnum = mul(p, DA_.is_one() ? Bt : mul(DA_, Bt));
  for (size_t k = sb + 1; k < sa; ++k) pnum = mul(pnum, q);
  sn.f = Frac(pnum + num, den);
  StepCheck c;
  GroupValue zero = GroupValue::zero(L_->rank());
  c.nagata = q.constant_term() != 0 && vF > zero && vFp == zero;
  nu_F.push_back(vF);
  delta.push_back(std::move(d));
  nu_delta.push_back(vF - vFp);
  sigma.push_back(std::move(sn));
  nu_sigma.push_back(R.value_of(sigma.back().f));
  checks.push_back(c);
  (void)K;
}

void NewtonTrace::step_generic() {
  const Field& K = L_->K();
  const Elem& s = sigma.back();
  Elem Fs = up::eval(K, F_, s);
  if (K.is_zero(Fs)) {
    status = TraceStatus::EXACT_ROOT;
    root_index = delta.size();
    return;
  }
  Elem Fps = up::eval(K, up::deriv(K, F_), s);
  GroupValue vF = L_->value(Fs), vFp = L_->value(Fps);
  Elem d = K.neg(K.div(Fs, Fps));
  GroupValue vd = vF - vFp;
  Elem sn = K.add(s, d);
  GroupValue vs;
  size_t i = delta.size();
  if (i == 0)
    vs = vd;
  else if (vd > nu_sigma[i])
    vs = nu_sigma[i];
  else
    vs = L_->value(sn);
  GroupValue zero = GroupValue::zero(L_->rank());
  StepCheck c;
  c.nagata = vF > zero && vFp == zero;
  nu_F.push_back(vF);
  delta.push_back(std::move(d));
  nu_delta.push_back(vd);
  sigma.push_back(std::move(sn));
  nu_sigma.push_back(vs);
  checks.push_back(c);
}

void NewtonTrace::first_step_checks() {
  first_step_checked = true;
  const Field& K = L_->K();
  F1 = up::shift(K, F_, delta[0]);
  Elem an = K.neg(F_.c[0]);
  if (!K.is_zero(an)) {
    Elem an2 = K.mul(an, an);
    divisible_an2 = L_->in_R(K.div(F1.c[0], an2));
    value_an2 = L_->value(F1.c[0]) >= L_->value(an) * 2;
  }
  congruence = true;
  for (size_t k = 0; k < F1.c.size(); ++k) {
    Elem diff = K.sub(F1.c[k], k < F_.c.size() ? F_.c[k] : K.zero());
    if (K.is_zero(diff)) continue;
    if (!L_->in_R(K.div(diff, delta[0]))) congruence = false;
  }
}

GroupValue value_at(const Level& L, const UPoly& h, const Elem& x, bool* is_zero) {
  const Field& K = L.K();
  if (is_zero) *is_zero = false;
  if (h.is_zero()) {
    if (is_zero) *is_zero = true;
    return GroupValue::inf(L.rank());
  }
  if (K.level() == 0) {
    const ValuedRing& R = L.ring();
    std::vector<MPoly> H;
    MPoly D;
    integer_form(h, H, D, K.nvars());
    const MPoly& q = x.f.den();
    std::vector<MPoly> qp{MPoly::constant(q.nvars(), 1)};
    for (size_t k = 1; k < H.size(); ++k) qp.push_back(mul(qp.back(), q));
    MPoly t = hom_horner(H, x.f.num(), qp);
    if (t.is_zero()) {
      if (is_zero) *is_zero = true;
      return GroupValue::inf(L.rank());
    }
    return R.value_of(t) - R.value_of(D) - R.value_of(q) * static_cast<int64_t>(h.deg());
  }
  Elem v = up::eval(K, h, K.lift(x));
  if (K.is_zero(v)) {
    if (is_zero) *is_zero = true;
    return GroupValue::inf(L.rank());
  }
  return L.value(v);
}

const char* kind_name(ClassKind k) {
  switch (k) {
    case ClassKind::STATIONARY: return "STATIONARY";
    case ClassKind::INCREASING: return "INCREASING";
    default: return "INCONCLUSIVE";
  }
}

std::string Classification::str() const {
  std::ostringstream os;
  os << kind_name(kind);
  if (kind == ClassKind::STATIONARY) os << " phi=" << phi.str() << " since=" << since;
  if (kind == ClassKind::INCREASING) os << " e=" << e << " since=" << since;
  os << " window=" << window;
  if (!note.empty()) os << " (" << note << ")";
  return os.str();
}

Classification classify(const Level& L, const UPoly& F, const UPoly& h, int B, int W) {
  if (h.is_zero()) throw Error("ZERO_POLY", "classify of zero");
  if (W < 1 || B < W + 2) throw Error("BUDGET", "need B >= W + 2 and W >= 1");
  // H = h / h_t may leave R but stays in the valuation ring
  for (const auto& c : h.c)
    if (!L.K().is_zero(c) && L.value(c) < GroupValue::zero(L.rank()))
      throw Error("NOT_IN_R", "coefficient of negative value " + L.str(c));
  NewtonTrace& T = L.trace(F);
  size_t b = static_cast<size_t>(B), w = static_cast<size_t>(W);
  T.run_to(b);
  Classification c;
  c.window = W;
  auto sig = [&](size_t i) -> const Elem& {
    return T.sigma[T.exact_root() ? std::min(i, T.root_index) : i];
  };
  // the trace already holds nu(F(sigma_i))
  bool is_F = up::eq(L.K(), h, F);
  auto fill = [&](size_t upto) {
    if (is_F && !T.exact_root()) T.run_to(upto + 1);
    for (size_t i = 1; i <= upto; ++i) {
      bool z = false;
      if (is_F && i < T.nu_F.size()) {
        c.values.push_back(T.nu_F[i]);
      } else {
        c.values.push_back(value_at(L, h, sig(i), &z));
      }
      if (z) c.zeros.push_back(i);
    }
  };
  auto exact = [&](size_t k) {
    c.kind = ClassKind::STATIONARY;
    c.phi = value_at(L, h, T.sigma[k]);
    c.since = std::max<size_t>(k, 1);
    c.note = "exact root at step " + std::to_string(k);
  };
  if (T.exact_root()) {
    fill(b);
    exact(T.root_index);
    return c;
  }
  fill(b);
  if (c.zeros.size() > static_cast<size_t>(h.deg()))
    throw Error("CLASSIFY_ZEROS", "h vanishes at more than deg h terms of the sequence");
  size_t start = c.zeros.empty() ? 1 : c.zeros.back() + 1;
  auto v = [&](size_t i) -> const GroupValue& { return c.values[i - 1]; };
  if (b < w + start) {
    c.note = "window does not fit after zeros of h";
    return c;
  }
  bool stat = true;
  for (size_t i = b - w; i < b; ++i) stat = stat && v(i) == v(b);
  if (stat) {
    c.kind = ClassKind::STATIONARY;
    c.phi = v(b);
    size_t i = b - w;
    while (i > start && v(i - 1) == c.phi) --i;
    c.since = i;
    return c;
  }
  T.run_to(b + 1);
  if (T.exact_root()) {
    exact(T.root_index);
    return c;
  }
  auto law = [&](size_t i, int& e) {
    GroupValue dv = v(i + 1) - v(i);
    GroupValue dd = T.nu_delta[i + 1] - T.nu_delta[i];
    int k = 0;
    while (k < dd.rank() && dd[k] == 0) ++k;
    if (k == dd.rank() || dv[k] % dd[k] != 0) return false;
    int64_t q = dv[k] / dd[k];
    if (e == 0) {
      if (q < 1 || q > h.deg()) return false;
      e = static_cast<int>(q);
    }
    return q == e && dv == dd * e;
  };
  int e = 0;
  bool inc = true;
  for (size_t i = b - w; i < b && inc; ++i) inc = law(i, e);
  if (inc) {
    c.kind = ClassKind::INCREASING;
    c.e = e;
    size_t i = b - w;
    while (i > start && law(i - 1, e)) --i;
    c.since = i;
  }
  return c;
}

PsiResult psi_F(const Level& L, const UPoly& F, int B) {
  NewtonTrace& T = L.trace(F);
  T.run_to(static_cast<size_t>(B));
  if (T.exact_root()) throw Error("TRIVIAL_EXTENSION", "F has a root in the ring: " + L.str(T.sigma[T.root_index]));
  PsiResult res;
  std::vector<GroupValue> pre;
  for (size_t i = 0; i < static_cast<size_t>(B); ++i) {
    pre.push_back(T.nu_delta[i]);
    int lv = hull_of_set(pre).level;
    if (!res.hulls.empty() && lv < res.hulls.back()) res.monotone = false;
    res.hulls.push_back(lv);
  }
  res.psi = ConvexSubgroup{L.rank(), res.hulls.back()};
  res.exact = res.psi.full();
  size_t i = res.hulls.size() - 1;
  while (i > 0 && res.hulls[i - 1] == res.psi.level) --i;
  res.stabilized_at = i;
  return res;
}

SequenceReport sequence_checks(const Level& L, const std::vector<Elem>& ys,
                               const std::optional<Elem>& y) {
  if (ys.size() < 3) throw Error("TOO_FEW", "sequence_checks needs at least 3 terms");
  const Field& K = L.K();
  SequenceReport rep;
  for (size_t k = 0; k + 1 < ys.size(); ++k) rep.diffs.push_back(L.value(K.sub(ys[k + 1], ys[k])));
  rep.pseudo_convergent = true;
  for (size_t k = 0; k < rep.diffs.size(); ++k) {
    bool ok = !rep.diffs[k].is_inf() && (k == 0 || rep.diffs[k] > rep.diffs[k - 1]);
    if (!ok) {
      rep.pseudo_convergent = false;
      rep.first_failure = k;
      break;
    }
  }
  if (y) {
    rep.limit = true;
    for (size_t k = 0; k < rep.diffs.size(); ++k)
      if (L.value(K.sub(K.lift(*y), ys[k])) < rep.diffs[k]) {
        rep.limit = false;
        rep.first_failure = k;
        break;
      }
  }
  return rep;
}

EtaleCertificate etale_certificate(const Level& L, const std::vector<Elem>& ys, const UPoly& h,
                                   int W) {
  auto rep = sequence_checks(L, ys);
  if (!rep.pseudo_convergent) throw Error("NOT_PSEUDO_CONVERGENT", "sequence is not pseudo-convergent");
  EtaleCertificate cert;
  size_t m = rep.diffs.size();
  if (W < 1 || static_cast<size_t>(W) > m) throw Error("BUDGET", "window longer than the sequence");
  cert.certified = true;
  for (size_t k = m - W; k < m; ++k) {
    cert.indices.push_back(k);
    cert.lhs.push_back(h.is_zero() ? GroupValue::inf(L.rank()) : value_at(L, h, ys[k]));
    cert.rhs.push_back(rep.diffs[k]);
    if (cert.lhs.back() != cert.rhs.back()) {
      cert.certified = false;
      if (cert.reason.empty())
        cert.reason = "nu(h(y_" + std::to_string(k) + ")) = " + cert.lhs.back().str() +
                      " differs from " + cert.rhs.back().str();
    }
  }
  if (cert.certified) {
    const Field& K = L.K();
    cert.nagata = L.locality(h.lead()) == Locality::UNIT && is_nagata(L, up::monic(K, h)).ok;
  }
  return cert;
}

Witness nonhenselian_witness(const Level& L, const UPoly& F, int B, int W) {
  NewtonTrace& T = L.trace(F);
  T.run_to(static_cast<size_t>(B));
  if (T.exact_root())
    throw Error("EXACT_ROOT", "F has the root " + L.str(T.sigma[T.root_index]) + " in the ring");
  Witness w;
  for (size_t i = 1; i <= static_cast<size_t>(B); ++i) w.sigmas.push_back(T.sigma[i]);
  w.cert = etale_certificate(L, w.sigmas, F, W);
  w.bound = T.nu_delta[B - 1];
  std::ostringstream os;
  os << "sigma_1..sigma_" << B << " is pseudo-convergent and of etale type with h = F"
     << (w.cert.certified ? "" : " (NOT certified)") << "; a limit y in m_R would need nu(F(y)) >= "
     << w.bound.str() << " while F has no root found in R";
  w.report = os.str();
  return w;
}

}  // namespace valq
