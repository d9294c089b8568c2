#include <algorithm>
#include <map>
#include <sstream>

#include "valq/error.hpp"
#include "valq/exactalg.hpp"

namespace valq {

namespace {

void check_nv(int a, int b) {
  if (a != b) throw Error("VAR_MISMATCH", "polynomials over different variable sets");
}

}  // namespace

MPoly::MPoly(int nvars) : nv_(nvars) {
  if (nvars < 0 || nvars > kMaxVars)
    throw Error("TOO_MANY_VARS", "at most " + std::to_string(kMaxVars) + " variables supported");
}

MPoly MPoly::constant(int nvars, const Int& c) {
  MPoly p(nvars);
  if (c != 0) p.t_.push_back({0, c});
  return p;
}

MPoly MPoly::variable(int nvars, int i, unsigned e) {
  std::vector<unsigned> ex(nvars, 0);
  ex[i] = e;
  return monomial(nvars, ex, 1);
}

uint64_t MPoly::make_key(const std::vector<unsigned>& e) {
  uint64_t k = 0;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] > kMaxExp) throw Error("OVERFLOW", "exponent too large");
    k |= static_cast<uint64_t>(e[i]) << shift(static_cast<int>(i));
  }
  return k;
}

MPoly MPoly::monomial(int nvars, const std::vector<unsigned>& e, const Int& c) {
  MPoly p(nvars);
  if (c != 0) p.t_.push_back({make_key(e), c});
  return p;
}

MPoly MPoly::from_terms(int nvars, std::vector<Term> terms) {
  MPoly p(nvars);
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.key < b.key; });
  for (auto& t : terms) {
    if (!p.t_.empty() && p.t_.back().key == t.key)
      p.t_.back().c += t.c;
    else
      p.t_.push_back(std::move(t));
    if (p.t_.back().c == 0) p.t_.pop_back();
  }
  return p;
}

Int MPoly::constant_term() const {
  if (!t_.empty() && t_[0].key == 0) return t_[0].c;
  return 0;
}

std::vector<unsigned> MPoly::max_degrees() const {
  std::vector<unsigned> d(nv_, 0);
  for (const auto& t : t_)
    for (int i = 0; i < nv_; ++i) d[i] = std::max(d[i], exp(t.key, i));
  return d;
}

std::vector<unsigned> MPoly::min_degrees() const {
  std::vector<unsigned> d(nv_, t_.empty() ? 0 : kMaxExp);
  for (const auto& t : t_)
    for (int i = 0; i < nv_; ++i) d[i] = std::min(d[i], exp(t.key, i));
  return d;
}

unsigned MPoly::total_degree() const {
  unsigned best = 0;
  for (const auto& t : t_) {
    unsigned s = 0;
    for (int i = 0; i < nv_; ++i) s += exp(t.key, i);
    best = std::max(best, s);
  }
  return best;
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_nv(nv_, o.nv_);
  MPoly r(nv_);
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && t_[i].key < o.t_[j].key)) {
      r.t_.push_back(t_[i++]);
    } else if (i == t_.size() || o.t_[j].key < t_[i].key) {
      r.t_.push_back(o.t_[j++]);
    } else {
      Int c = t_[i].c + o.t_[j].c;
      if (c != 0) r.t_.push_back({t_[i].key, std::move(c)});
      ++i, ++j;
    }
  }
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.t_) t.c = -t.c;
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
  check_nv(nv_, o.nv_);
  MPoly r(nv_);
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && t_[i].key < o.t_[j].key)) {
      r.t_.push_back(t_[i++]);
    } else if (i == t_.size() || o.t_[j].key < t_[i].key) {
      r.t_.push_back({o.t_[j].key, -o.t_[j].c});
      ++j;
    } else {
      Int c = t_[i].c - o.t_[j].c;
      if (c != 0) r.t_.push_back({t_[i].key, std::move(c)});
      ++i, ++j;
    }
  }
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const { return mul(*this, o); }

MPoly MPoly::scaled(const Int& c) const {
  if (c == 0) return MPoly(nv_);
  MPoly r = *this;
  for (auto& t : r.t_) t.c *= c;
  return r;
}

MPoly MPoly::times_monomial(uint64_t key, const Int& c) const {
  if (c == 0) return MPoly(nv_);
  auto md = max_degrees();
  for (int i = 0; i < nv_; ++i)
    if (md[i] + exp(key, i) > kMaxExp) throw Error("OVERFLOW", "exponent too large");
  MPoly r = *this;
  for (auto& t : r.t_) {
    t.key += key;
    t.c *= c;
  }
  return r;
}

MPoly MPoly::div_monomial(uint64_t key) const {
  MPoly r = *this;
  for (auto& t : r.t_) {
    for (int i = 0; i < nv_; ++i)
      if (exp(t.key, i) < exp(key, i)) throw Error("INEXACT", "monomial division");
    t.key -= key;
  }
  return r;
}

MPoly MPoly::div_exact_int(const Int& c) const {
  MPoly r = *this;
  for (auto& t : r.t_) {
    if (!mpz_divisible_p(t.c.get_mpz_t(), c.get_mpz_t()))
      throw Error("INEXACT", "integer division");
    mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
  }
  return r;
}

bool MPoly::operator==(const MPoly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (t_[i].key != o.t_[i].key || t_[i].c != o.t_[i].c) return false;
  return true;
}

Int MPoly::content() const {
  Int g = 0;
  for (const auto& t : t_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

MPoly MPoly::kill_vars(const std::vector<bool>& kill) const {
  uint64_t mask = 0;
  for (int i = 0; i < nv_; ++i)
    if (kill[i]) mask |= static_cast<uint64_t>(kMaxExp) << shift(i);
  MPoly r(nv_);
  for (const auto& t : t_)
    if ((t.key & mask) == 0) r.t_.push_back(t);
  return r;
}

bool MPoly::uses_var(int i) const {
  for (const auto& t : t_)
    if (exp(t.key, i)) return true;
  return false;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : t_) {
    Int c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool any = false;
    if (c != 1 || t.key == 0) {
      os << c.get_str();
      any = true;
    }
    for (int i = 0; i < nv_; ++i) {
      unsigned e = exp(t.key, i);
      if (!e) continue;
      if (any) os << '*';
      os << names[i];
      if (e > 1) os << '^' << e;
      any = true;
    }
  }
  return os.str();
}

MPoly pow(const MPoly& a, unsigned e) {
  MPoly r = MPoly::constant(a.nvars(), 1);
  MPoly b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

std::optional<MPoly> exact_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw Error("DIV_BY_ZERO", "polynomial division");
  check_nv(a.nvars(), b.nvars());
  int nv = a.nvars();
  if (a.is_zero()) return MPoly(nv);
  if (b.is_monomial()) {
    const auto& lb = b.leading();
    auto mn = a.min_degrees();
    for (int i = 0; i < nv; ++i)
      if (mn[i] < MPoly::exp(lb.key, i)) return std::nullopt;
    for (const auto& t : a.terms())
      if (!mpz_divisible_p(t.c.get_mpz_t(), lb.c.get_mpz_t())) return std::nullopt;
    return a.div_monomial(lb.key).div_exact_int(lb.c);
  }
  std::vector<MPoly::Term> q;
  MPoly r = a;
  const auto& lb = b.leading();
  while (!r.is_zero()) {
    const auto& lr = r.leading();
    for (int i = 0; i < nv; ++i)
      if (MPoly::exp(lr.key, i) < MPoly::exp(lb.key, i)) return std::nullopt;
    if (!mpz_divisible_p(lr.c.get_mpz_t(), lb.c.get_mpz_t())) return std::nullopt;
    uint64_t k = lr.key - lb.key;
    Int c;
    mpz_divexact(c.get_mpz_t(), lr.c.get_mpz_t(), lb.c.get_mpz_t());
    q.push_back({k, c});
    r = r - b.times_monomial(k, c);
  }
  return MPoly::from_terms(nv, std::move(q));
}

namespace {

// coefficients of p as a polynomial in variable v, low to high
std::vector<MPoly> to_univ(const MPoly& p, int v) {
  std::vector<std::vector<MPoly::Term>> buckets;
  for (const auto& t : p.terms()) {
    unsigned e = MPoly::exp(t.key, v);
    if (buckets.size() <= e) buckets.resize(e + 1);
    buckets[e].push_back({t.key - (static_cast<uint64_t>(e) << MPoly::shift(v)), t.c});
  }
  std::vector<MPoly> out;
  for (auto& b : buckets) out.push_back(MPoly::from_terms(p.nvars(), std::move(b)));
  return out;
}

MPoly from_univ(const std::vector<MPoly>& c, int v) {
  if (c.empty()) return MPoly();
  int nv = c[0].nvars();
  MPoly r(nv);
  for (size_t e = 0; e < c.size(); ++e)
    r += c[e].times_monomial(static_cast<uint64_t>(e) << MPoly::shift(v), 1);
  return r;
}

void trim(std::vector<MPoly>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

MPoly normal_sign(const MPoly& p) {
  if (!p.is_zero() && p.leading().c < 0) return -p;
  return p;
}

MPoly content_in(const MPoly& p, int v) {
  auto c = to_univ(p, v);
  MPoly g(p.nvars());
  for (const auto& x : c) {
    if (x.is_zero()) continue;
    g = gcd(g, x);
    if (g.is_one()) break;
  }
  return g;
}

MPoly primpart_in(const MPoly& p, int v) {
  if (p.is_zero()) return p;
  MPoly c = content_in(p, v);
  auto q = exact_div(p, c);
  if (!q) throw Error("INTERNAL", "content does not divide");
  return normal_sign(*q);
}

std::vector<MPoly> prem(std::vector<MPoly> a, const std::vector<MPoly>& b) {
  const MPoly& lc = b.back();
  size_t db = b.size() - 1;
  while (!a.empty() && a.size() - 1 >= db) {
    size_t da = a.size() - 1;
    MPoly la = a.back();
    for (auto& x : a) x = mul(x, lc);
    for (size_t k = 0; k <= db; ++k) a[da - db + k] -= mul(la, b[k]);
    trim(a);
  }
  return a;
}

Int max_norm(const MPoly& p) {
  Int m = 0;
  for (const auto& t : p.terms())
    if (abs(t.c) > m) m = abs(t.c);
  return m;
}

MPoly eval_var(const MPoly& p, int v, const Int& x) {
  std::vector<Int> pw{Int(1)};
  std::vector<MPoly::Term> ts;
  ts.reserve(p.size());
  for (const auto& t : p.terms()) {
    unsigned e = MPoly::exp(t.key, v);
    while (pw.size() <= e) pw.push_back(pw.back() * x);
    ts.push_back({t.key - (static_cast<uint64_t>(e) << MPoly::shift(v)), t.c * pw[e]});
  }
  return MPoly::from_terms(p.nvars(), std::move(ts));
}

// symmetric x-adic digits of the coefficients become the powers of variable v
MPoly interp(MPoly h, int v, const Int& x) {
  std::vector<MPoly::Term> out;
  Int half = x / 2;
  for (uint64_t i = 0; !h.is_zero(); ++i) {
    std::vector<MPoly::Term> g;
    for (const auto& t : h.terms()) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), t.c.get_mpz_t(), x.get_mpz_t());
      if (r > half) r -= x;
      if (r != 0) g.push_back({t.key, r});
    }
    MPoly gp = MPoly::from_terms(h.nvars(), g);
    for (auto& t : g) out.push_back({t.key + (i << MPoly::shift(v)), t.c});
    h = (h - gp).div_exact_int(x);
  }
  return MPoly::from_terms(h.nvars(), std::move(out));
}

MPoly primitive(const MPoly& p) { return normal_sign(p.div_exact_int(p.content())); }

// evaluation at a large integer, gcd of the images, x-adic reconstruction, trial division
std::optional<MPoly> heu_gcd(const MPoly& f, const MPoly& g) {
  int nv = f.nvars(), v = -1;
  for (int i = nv - 1; i >= 0 && v < 0; --i)
    if (f.uses_var(i) || g.uses_var(i)) v = i;
  Int cf = f.content(), cg = g.content(), gc;
  mpz_gcd(gc.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  if (v < 0 || f.is_constant() || g.is_constant()) return MPoly::constant(nv, gc);
  MPoly F = f.div_exact_int(gc), G = g.div_exact_int(gc);
  Int fn = max_norm(F), gn = max_norm(G);
  Int B = 2 * std::min(fn, gn) + 29, sq;
  mpz_sqrt(sq.get_mpz_t(), B.get_mpz_t());
  Int x = std::max<Int>(std::min<Int>(B, 99 * sq),
                        2 * std::min<Int>(fn / abs(F.leading().c), gn / abs(G.leading().c)) + 4);
  for (int it = 0; it < 6; ++it) {
    MPoly ff = eval_var(F, v, x), gg = eval_var(G, v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      auto h = heu_gcd(ff, gg);
      if (!h) return std::nullopt;
      MPoly H = primitive(interp(*h, v, x));
      if (!H.is_zero() && exact_div(F, H) && exact_div(G, H)) return H.scaled(gc);
      for (const MPoly* side : {&ff, &gg}) {
        auto co = exact_div(*side, *h);
        if (!co) continue;
        MPoly C = interp(*co, v, x);
        if (C.is_zero()) continue;
        auto q = exact_div(side == &ff ? F : G, C);
        if (q && !q->is_zero() && exact_div(side == &ff ? G : F, *q)) return normal_sign(q->scaled(gc));
      }
    }
    Int r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    mpz_sqrt(r.get_mpz_t(), r.get_mpz_t());
    x = 73794 * x * r / 27011;
  }
  return std::nullopt;
}

MPoly gcd_prs(const MPoly& a, const MPoly& b);

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  check_nv(a.nvars(), b.nvars());
  if (a.is_zero()) return normal_sign(b);
  if (b.is_zero()) return normal_sign(a);
  if (auto h = heu_gcd(a, b)) return *h;
  return gcd_prs(a, b);
}

namespace {

MPoly gcd_prs(const MPoly& a, const MPoly& b) {
  int nv = a.nvars();
  if (a.is_zero()) return normal_sign(b);
  if (b.is_zero()) return normal_sign(a);
  int v = -1;
  for (int i = 0; i < nv && v < 0; ++i)
    if (a.uses_var(i) || b.uses_var(i)) v = i;
  if (v < 0) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.constant_term().get_mpz_t(), b.constant_term().get_mpz_t());
    return MPoly::constant(nv, g);
  }
  if (!a.uses_var(v)) return gcd(a, content_in(b, v));
  if (!b.uses_var(v)) return gcd(content_in(a, v), b);
  MPoly ca = content_in(a, v), cb = content_in(b, v);
  MPoly c = gcd(ca, cb);
  auto pa = to_univ(*exact_div(a, ca), v);
  auto pb = to_univ(*exact_div(b, cb), v);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  while (!pb.empty() && pb.size() > 1) {
    auto r = prem(pa, pb);
    pa = std::move(pb);
    if (r.empty()) {
      pb.clear();
    } else {
      pb = to_univ(primpart_in(from_univ(r, v), v), v);
    }
  }
  if (!pb.empty()) return normal_sign(c);  // remainder free of v: coprime parts
  return normal_sign(mul(primpart_in(from_univ(pa, v), v), c));
}

}  // namespace

std::optional<MPoly> sqrt_exact(const MPoly& p) {
  int nv = p.nvars();
  if (p.is_zero()) return p;
  if (p.leading().c < 0) return std::nullopt;
  auto md = p.max_degrees();
  auto lead_root = [&](const MPoly::Term& t) -> std::optional<MPoly::Term> {
    std::vector<unsigned> e(nv);
    for (int i = 0; i < nv; ++i) {
      unsigned x = MPoly::exp(t.key, i);
      if (x % 2) return std::nullopt;
      e[i] = x / 2;
    }
    if (!mpz_perfect_square_p(t.c.get_mpz_t())) return std::nullopt;
    Int r;
    mpz_sqrt(r.get_mpz_t(), t.c.get_mpz_t());
    return MPoly::Term{MPoly::make_key(e), r};
  };
  auto lt = lead_root(p.leading());
  if (!lt) return std::nullopt;
  MPoly s = MPoly::from_terms(nv, {*lt});
  MPoly rest = p - mul(s, s);
  Int two_c = lt->c * 2;
  while (!rest.is_zero()) {
    const auto& lr = rest.leading();
    std::vector<unsigned> e(nv);
    for (int i = 0; i < nv; ++i) {
      unsigned a = MPoly::exp(lr.key, i), b = MPoly::exp(lt->key, i);
      if (a < b) return std::nullopt;
      e[i] = a - b;
      if (2 * e[i] > md[i]) return std::nullopt;
    }
    if (!mpz_divisible_p(lr.c.get_mpz_t(), two_c.get_mpz_t())) return std::nullopt;
    Int c;
    mpz_divexact(c.get_mpz_t(), lr.c.get_mpz_t(), two_c.get_mpz_t());
    MPoly m = MPoly::monomial(nv, e, c);
    rest = rest - mul(m, s.scaled(2) + m);
    s += m;
  }
  return s;
}

}  // namespace valq
