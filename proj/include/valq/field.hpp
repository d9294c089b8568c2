#pragma once

#include <memory>
#include <string>
#include <vector>

#include "valq/exactalg.hpp"

namespace valq {

// element of K_j = K[Y_1..Y_j]/(Q_1..Q_j); level 0 is a Frac, level j a
// polynomial in Y_j of degree < deg Q_j over level j-1
struct Elem {
  int level = 0;
  Frac f;
  std::vector<Elem> c;
};

// dense univariate polynomial in X, coefficients low to high
struct UPoly {
  std::vector<Elem> c;
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Elem& lead() const { return c.back(); }
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr base(int nvars);
  // K_j = parent[Y]/(Q); Q monic of degree >= 2 over parent
  static FieldPtr extension(FieldPtr parent, UPoly Q, std::string gen_name = "");

  int level() const { return level_; }
  int nvars() const { return nvars_; }
  const FieldPtr& parent() const { return parent_; }
  const UPoly& modulus() const { return Q_; }
  int degree() const { return Q_.deg(); }
  const std::string& gen_name() const { return gen_; }
  const Field& at(int level) const;

  Elem zero() const;
  Elem one() const;
  Elem of_int(long v) const;
  Elem of_frac(const Frac& f) const;
  Elem lift(const Elem& lower) const;  // embed from any lower level
  Elem gen() const;                    // Y_j
  bool is_base_frac(const Elem& a) const;  // lies in level 0 subfield

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, unsigned e) const;
  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const;
  bool eq(const Elem& a, const Elem& b) const;
  Elem reduce(const Elem& a) const;  // normal form modulo Q_j (idempotent)

  std::string str(const Elem& a, const std::vector<std::string>& names) const;

 private:
  Field() = default;
  int level_ = 0;
  int nvars_ = 0;
  FieldPtr parent_;
  UPoly Q_;
  std::string gen_;
  void trim(Elem& a) const;
};

// polynomial arithmetic over a field level
namespace up {
UPoly zero();
UPoly constant(const Elem& a);
UPoly x(const Field& K);  // the polynomial X
UPoly monic_linear(const Field& K, const Elem& root);  // X - root
void trim(const Field& K, UPoly& p);
UPoly add(const Field& K, const UPoly& a, const UPoly& b);
UPoly sub(const Field& K, const UPoly& a, const UPoly& b);
UPoly mul(const Field& K, const UPoly& a, const UPoly& b);
UPoly scale(const Field& K, const UPoly& a, const Elem& s);
UPoly pow(const Field& K, const UPoly& a, unsigned e);
void divmod(const Field& K, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly rem(const Field& K, const UPoly& a, const UPoly& b);
UPoly quo(const Field& K, const UPoly& a, const UPoly& b);
UPoly monic(const Field& K, const UPoly& a);
UPoly gcd(const Field& K, const UPoly& a, const UPoly& b);
UPoly deriv(const Field& K, const UPoly& a);
Elem eval(const Field& K, const UPoly& a, const Elem& x);
bool eq(const Field& K, const UPoly& a, const UPoly& b);
// h(X + a) = sum_m h_m(X) a^m, returns h_0..h_deg
std::vector<UPoly> taylor_shift(const Field& K, const UPoly& h, const Elem& a);
// coefficients of h(X + a)
UPoly shift(const Field& K, const UPoly& h, const Elem& a);
UPoly lift(const Field& K, const UPoly& lower);
std::string str(const Field& K, const UPoly& a, const std::vector<std::string>& names,
                const std::string& var = "X");
}  // namespace up

}  // namespace valq
