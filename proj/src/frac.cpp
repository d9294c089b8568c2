#include "valq/error.hpp"
#include "valq/exactalg.hpp"

namespace valq {

Frac::Frac(int nvars) : num_(nvars), den_(MPoly::constant(nvars, 1)) {}

Frac::Frac(MPoly num) : num_(std::move(num)), den_(MPoly::constant(num_.nvars(), 1)) {}

Frac::Frac(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error("DIV_BY_ZERO", "fraction with zero denominator");
  if (num_.nvars() != den_.nvars()) throw Error("VAR_MISMATCH", "fraction");
  normalize();
}

Frac Frac::of_int(int nvars, long v) { return Frac(MPoly::constant(nvars, v)); }

Frac Frac::of_rat(int nvars, const Rat& q) {
  return Frac(MPoly::constant(nvars, q.get_num()), MPoly::constant(nvars, q.get_den()));
}

bool Frac::is_constant() const { return num_.is_constant() && den_.is_constant(); }

// integer content and common monomial factor cancelled, den leading coefficient positive
void Frac::normalize() {
  int nv = num_.nvars();
  if (num_.is_zero()) {
    den_ = MPoly::constant(nv, 1);
    return;
  }
  if (den_.is_one()) return;
  Int g = den_.content();
  Int gn = num_.content();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gn.get_mpz_t());
  if (den_.leading().c < 0) g = -g;
  if (g != 1) {
    num_ = num_.div_exact_int(g);
    den_ = den_.div_exact_int(g);
  }
  auto mn = num_.min_degrees(), md = den_.min_degrees();
  std::vector<unsigned> common(nv);
  bool any = false;
  for (int i = 0; i < nv; ++i) {
    common[i] = std::min(mn[i], md[i]);
    any |= common[i] > 0;
  }
  if (any) {
    uint64_t k = MPoly::make_key(common);
    num_ = num_.div_monomial(k);
    den_ = den_.div_monomial(k);
  }
}

Frac Frac::operator+(const Frac& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return Frac(num_ + o.num_, den_);
  if (o.den_.is_one()) return Frac(num_ + mul(o.num_, den_), den_);
  if (den_.is_one()) return Frac(mul(num_, o.den_) + o.num_, o.den_);
  return Frac(mul(num_, o.den_) + mul(o.num_, den_), mul(den_, o.den_));
}

Frac Frac::operator-() const {
  Frac r = *this;
  r.num_ = -r.num_;
  return r;
}

Frac Frac::operator-(const Frac& o) const { return *this + (-o); }

Frac Frac::operator*(const Frac& o) const {
  if (is_zero() || o.is_zero()) return Frac(nvars());
  // cross cancellation of identical factors is free and common in Newton steps
  if (num_ == o.den_) return Frac(o.num_, den_);
  if (den_ == o.num_) return Frac(num_, o.den_);
  return Frac(mul(num_, o.num_), mul(den_, o.den_));
}

Frac Frac::inv() const {
  if (is_zero()) throw Error("DIV_BY_ZERO", "inverse of zero");
  return Frac(den_, num_);
}

Frac Frac::operator/(const Frac& o) const { return *this * o.inv(); }

bool Frac::operator==(const Frac& o) const {
  if (den_ == o.den_) return num_ == o.num_;
  return mul(num_, o.den_) == mul(o.num_, den_);
}

Frac Frac::reduced() const {
  if (num_.is_zero() || den_.is_constant()) return *this;
  MPoly g = gcd(num_, den_);
  if (g.is_constant()) return *this;
  return Frac(*exact_div(num_, g), *exact_div(den_, g));
}

std::string Frac::str(const std::vector<std::string>& names) const {
  if (den_.is_one()) return num_.str(names);
  auto wrap = [&](const MPoly& p) {
    std::string s = p.str(names);
    if (p.size() > 1 || (p.size() == 1 && !p.is_monomial())) return "(" + s + ")";
    bool plain = p.size() == 1 && (p.leading().c == 1 || p.leading().key == 0);
    return plain ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

}  // namespace valq
