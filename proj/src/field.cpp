#include "valq/field.hpp"

#include "valq/error.hpp"

namespace valq {

FieldPtr Field::base(int nvars) {
  auto f = std::shared_ptr<Field>(new Field());
  f->level_ = 0;
  f->nvars_ = nvars;
  (void)MPoly(nvars);
  return f;
}

FieldPtr Field::extension(FieldPtr parent, UPoly Q, std::string gen_name) {
  if (Q.deg() < 2) throw Error("TOWER_INTEGRITY", "extension modulus must have degree >= 2");
  if (!parent->is_one(Q.lead())) throw Error("TOWER_INTEGRITY", "extension modulus not monic");
  for (const auto& e : Q.c)
    if (e.level != parent->level()) throw Error("TOWER_INTEGRITY", "modulus over wrong level");
  auto f = std::shared_ptr<Field>(new Field());
  f->level_ = parent->level() + 1;
  f->nvars_ = parent->nvars();
  f->parent_ = std::move(parent);
  f->Q_ = std::move(Q);
  f->gen_ = gen_name.empty() ? "Y" + std::to_string(f->level_) : std::move(gen_name);
  return f;
}

const Field& Field::at(int level) const {
  const Field* f = this;
  while (f->level_ > level) f = f->parent_.get();
  if (f->level_ != level) throw Error("TOWER_INTEGRITY", "no such level");
  return *f;
}

Elem Field::zero() const {
  Elem e;
  e.level = level_;
  if (level_ == 0) e.f = Frac(nvars_);
  return e;
}

Elem Field::one() const { return of_int(1); }

Elem Field::of_int(long v) const { return of_frac(Frac::of_int(nvars_, v)); }

Elem Field::of_frac(const Frac& f) const {
  Elem e;
  e.f = f;
  return lift(e);
}

Elem Field::lift(const Elem& lower) const {
  if (lower.level == level_) return lower;
  if (lower.level > level_) throw Error("TOWER_INTEGRITY", "cannot lower an element");
  Elem inner = parent_->lift(lower);
  Elem e;
  e.level = level_;
  if (!parent_->is_zero(inner)) e.c.push_back(std::move(inner));
  return e;
}

Elem Field::gen() const {
  if (level_ == 0) throw Error("TOWER_INTEGRITY", "base level has no generator");
  Elem e;
  e.level = level_;
  e.c = {parent_->zero(), parent_->one()};
  return e;
}

bool Field::is_base_frac(const Elem& a) const {
  if (a.level == 0) return true;
  if (a.c.size() > 1) return false;
  if (a.c.empty()) return true;
  return at(a.level - 1).is_base_frac(a.c[0]);
}

void Field::trim(Elem& a) const {
  while (!a.c.empty() && parent_->is_zero(a.c.back())) a.c.pop_back();
}

bool Field::is_zero(const Elem& a) const {
  if (a.level != level_) return at(a.level).is_zero(a);
  if (level_ == 0) return a.f.is_zero();
  return a.c.empty();
}

bool Field::is_one(const Elem& a) const {
  if (level_ == 0) return a.f.is_one();
  return a.c.size() == 1 && parent_->is_one(a.c[0]);
}

Elem Field::add(const Elem& a, const Elem& b) const {
  if (level_ == 0) {
    Elem e;
    e.f = a.f + b.f;
    return e;
  }
  Elem r;
  r.level = level_;
  size_t n = std::max(a.c.size(), b.c.size());
  r.c.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (i >= a.c.size())
      r.c.push_back(b.c[i]);
    else if (i >= b.c.size())
      r.c.push_back(a.c[i]);
    else
      r.c.push_back(parent_->add(a.c[i], b.c[i]));
  }
  trim(r);
  return r;
}

Elem Field::neg(const Elem& a) const {
  if (level_ == 0) {
    Elem e;
    e.f = -a.f;
    return e;
  }
  Elem r = a;
  for (auto& x : r.c) x = parent_->neg(x);
  return r;
}

Elem Field::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Field::reduce(const Elem& a) const {
  if (level_ == 0) return a;
  Elem r = a;
  size_t n = static_cast<size_t>(Q_.deg());
  while (r.c.size() > n) {
    Elem top = r.c.back();
    r.c.pop_back();
    size_t base = r.c.size() - n;
    if (!parent_->is_zero(top))
      for (size_t i = 0; i < n; ++i)
        if (!parent_->is_zero(Q_.c[i]))
          r.c[base + i] = parent_->sub(r.c[base + i], parent_->mul(top, Q_.c[i]));
  }
  if (level_ == 1)
    for (auto& x : r.c) x.f = x.f.reduced();
  trim(r);
  return r;
}

Elem Field::mul(const Elem& a, const Elem& b) const {
  if (level_ == 0) {
    Elem e;
    e.f = a.f * b.f;
    return e;
  }
  Elem r;
  r.level = level_;
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, parent_->zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (parent_->is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      if (!parent_->is_zero(b.c[j]))
        r.c[i + j] = parent_->add(r.c[i + j], parent_->mul(a.c[i], b.c[j]));
  }
  return reduce(r);
}

Elem Field::inv(const Elem& a) const {
  if (is_zero(a)) throw Error("DIV_BY_ZERO", "inverse of zero");
  if (level_ == 0) {
    Elem e;
    e.f = a.f.inv();
    return e;
  }
  const Field& K = *parent_;
  if (Q_.deg() == 2 && a.c.size() == 2) {
    // conjugate: Y' = -q1 - Y, N = a0^2 - q1 a0 a1 + q0 a1^2
    const Elem &a0 = a.c[0], &a1 = a.c[1], &q0 = Q_.c[0], &q1 = Q_.c[1];
    Elem n = K.add(K.sub(K.mul(a0, a0), K.mul(q1, K.mul(a0, a1))), K.mul(q0, K.mul(a1, a1)));
    if (K.is_zero(n))
      throw Error("TOWER_INTEGRITY", "non-invertible element: level modulus is reducible");
    Elem ni = K.inv(n);
    Elem res;
    res.level = level_;
    res.c = {K.mul(K.sub(a0, K.mul(q1, a1)), ni), K.neg(K.mul(a1, ni))};
    return reduce(res);
  }
  // extended Euclid in K[Y]: s*a + t*Q = g
  UPoly r0 = Q_, r1;
  r1.c = a.c;
  UPoly s0 = up::zero(), s1 = up::constant(K.one());
  while (!r1.is_zero()) {
    UPoly q, r;
    up::divmod(K, r0, r1, q, r);
    UPoly s = up::sub(K, s0, up::mul(K, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.deg() != 0)
    throw Error("TOWER_INTEGRITY", "non-invertible element: level modulus is reducible");
  Elem g = K.inv(r0.c[0]);
  Elem res;
  res.level = level_;
  for (const auto& x : s0.c) res.c.push_back(K.mul(x, g));
  return reduce(res);
}

Elem Field::pow(const Elem& a, unsigned e) const {
  Elem r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

bool Field::eq(const Elem& a, const Elem& b) const {
  if (level_ == 0) return a.f == b.f;
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!parent_->eq(a.c[i], b.c[i])) return false;
  return true;
}

std::string Field::str(const Elem& a, const std::vector<std::string>& names) const {
  if (level_ == 0) return a.f.str(names);
  if (a.c.empty()) return "0";
  std::string out;
  for (size_t k = a.c.size(); k-- > 0;) {
    const Elem& e = a.c[k];
    if (parent_->is_zero(e)) continue;
    std::string cs = parent_->str(e, names);
    bool simple = parent_->level() == 0 && e.f.is_poly() && e.f.num().size() == 1;
    bool neg = simple && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (!out.empty())
      out += neg ? " - " : " + ";
    else if (neg)
      out += "-";
    if (!simple) cs = "(" + cs + ")";
    if (k == 0) {
      out += cs;
    } else {
      if (cs != "1") out += cs + "*";
      out += gen_;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

namespace up {

UPoly zero() { return UPoly{}; }

UPoly constant(const Elem& a) {
  UPoly p;
  p.c.push_back(a);
  return p;
}

UPoly x(const Field& K) {
  UPoly p;
  p.c = {K.zero(), K.one()};
  return p;
}

UPoly monic_linear(const Field& K, const Elem& root) {
  UPoly p;
  p.c = {K.neg(root), K.one()};
  return p;
}

void trim(const Field& K, UPoly& p) {
  while (!p.c.empty() && K.is_zero(p.c.back())) p.c.pop_back();
}

UPoly add(const Field& K, const UPoly& a, const UPoly& b) {
  UPoly r;
  size_t n = std::max(a.c.size(), b.c.size());
  for (size_t i = 0; i < n; ++i) {
    if (i >= a.c.size())
      r.c.push_back(b.c[i]);
    else if (i >= b.c.size())
      r.c.push_back(a.c[i]);
    else
      r.c.push_back(K.add(a.c[i], b.c[i]));
  }
  trim(K, r);
  return r;
}

UPoly sub(const Field& K, const UPoly& a, const UPoly& b) {
  UPoly nb = b;
  for (auto& e : nb.c) e = K.neg(e);
  return add(K, a, nb);
}

UPoly mul(const Field& K, const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return zero();
  UPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, K.zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (K.is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      if (!K.is_zero(b.c[j])) r.c[i + j] = K.add(r.c[i + j], K.mul(a.c[i], b.c[j]));
  }
  trim(K, r);
  return r;
}

UPoly scale(const Field& K, const UPoly& a, const Elem& s) {
  UPoly r = a;
  for (auto& e : r.c) e = K.mul(e, s);
  trim(K, r);
  return r;
}

UPoly pow(const Field& K, const UPoly& a, unsigned e) {
  UPoly r = constant(K.one()), b = a;
  while (e) {
    if (e & 1) r = mul(K, r, b);
    e >>= 1;
    if (e) b = mul(K, b, b);
  }
  return r;
}

void divmod(const Field& K, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw Error("DIV_BY_ZERO", "polynomial division");
  r = a;
  q = zero();
  if (a.deg() < b.deg()) return;
  q.c.assign(a.deg() - b.deg() + 1, K.zero());
  bool monic_b = K.is_one(b.lead());
  Elem li = monic_b ? K.one() : K.inv(b.lead());
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int k = r.deg() - b.deg();
    Elem coef = monic_b ? r.lead() : K.mul(r.lead(), li);
    q.c[k] = coef;
    for (int i = 0; i <= b.deg(); ++i)
      if (!K.is_zero(b.c[i])) r.c[k + i] = K.sub(r.c[k + i], K.mul(coef, b.c[i]));
    r.c.pop_back();
    trim(K, r);
  }
  trim(K, q);
}

UPoly rem(const Field& K, const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(K, a, b, q, r);
  return r;
}

UPoly quo(const Field& K, const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(K, a, b, q, r);
  return q;
}

UPoly monic(const Field& K, const UPoly& a) {
  if (a.is_zero() || K.is_one(a.lead())) return a;
  return scale(K, a, K.inv(a.lead()));
}

UPoly gcd(const Field& K, const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = rem(K, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  UPoly g = monic(K, x);
  if (K.level() == 0)
    for (auto& c : g.c) c.f = c.f.reduced();
  return g;
}

UPoly deriv(const Field& K, const UPoly& a) {
  UPoly r;
  for (int i = 1; i <= a.deg(); ++i) r.c.push_back(K.mul(K.of_int(i), a.c[i]));
  trim(K, r);
  return r;
}

Elem eval(const Field& K, const UPoly& a, const Elem& x) {
  if (a.is_zero()) return K.zero();
  Elem acc = a.lead();
  for (int i = a.deg() - 1; i >= 0; --i) acc = K.add(K.mul(acc, x), a.c[i]);
  return acc;
}

bool eq(const Field& K, const UPoly& a, const UPoly& b) {
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!K.eq(a.c[i], b.c[i])) return false;
  return true;
}

std::vector<UPoly> taylor_shift(const Field& K, const UPoly& h, const Elem&) {
  if (h.is_zero()) throw Error("ZERO_POLY", "taylor_shift of zero");
  // h_m has coefficients binom(j+m, m) h_{j+m}; independent of the shift point
  std::vector<UPoly> out;
  int n = h.deg();
  for (int m = 0; m <= n; ++m) {
    UPoly hm;
    Int binom = 1;  // binom(j+m, m) starting at j = 0
    for (int j = 0; j + m <= n; ++j) {
      if (j > 0) {
        binom *= (j + m);
        binom /= j;
      }
      hm.c.push_back(K.mul(K.of_frac(Frac(MPoly::constant(K.nvars(), binom))), h.c[j + m]));
    }
    trim(K, hm);
    out.push_back(std::move(hm));
  }
  return out;
}

UPoly shift(const Field& K, const UPoly& h, const Elem& a) {
  UPoly r = h;
  int n = r.deg();
  if (K.is_zero(a)) return r;
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) r.c[j] = K.add(r.c[j], K.mul(a, r.c[j + 1]));
  trim(K, r);
  return r;
}

UPoly lift(const Field& K, const UPoly& lower) {
  UPoly r;
  for (const auto& e : lower.c) r.c.push_back(K.lift(e));
  return r;
}

std::string str(const Field& K, const UPoly& a, const std::vector<std::string>& names,
                const std::string& var) {
  if (a.is_zero()) return "0";
  std::string out;
  for (int k = a.deg(); k >= 0; --k) {
    const Elem& e = a.c[k];
    if (K.is_zero(e)) continue;
    std::string cs = K.str(e, names);
    bool neg = false;
    bool simple = K.level() == 0 && e.f.is_poly() && e.f.num().size() == 1;
    if (simple && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    if (!out.empty())
      out += neg ? " - " : " + ";
    else if (neg)
      out += "-";
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (k == 0) {
      out += simple ? cs : "(" + cs + ")";
    } else if (cs == "1") {
      out += mono;
    } else {
      out += (simple ? cs : "(" + cs + ")") + "*" + mono;
    }
  }
  return out;
}

}  // namespace up

}  // namespace valq
