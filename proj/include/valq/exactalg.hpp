#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace valq {

using Int = mpz_class;
using Rat = mpq_class;

// sparse polynomial over Z in at most 4 variables; exponents packed 16 bits each,
// variable 0 in the most significant slot so key order is lex order
class MPoly {
 public:
  static constexpr int kMaxVars = 4;
  static constexpr int kBits = 16;
  static constexpr unsigned kMaxExp = (1u << kBits) - 1;

  struct Term {
    uint64_t key;
    Int c;
  };

  MPoly() = default;
  explicit MPoly(int nvars);
  static MPoly constant(int nvars, const Int& c);
  static MPoly variable(int nvars, int i, unsigned e = 1);
  static MPoly monomial(int nvars, const std::vector<unsigned>& e, const Int& c);
  // terms need not be sorted or combined
  static MPoly from_terms(int nvars, std::vector<Term> terms);

  int nvars() const { return nv_; }
  size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].key == 0); }
  bool is_one() const { return t_.size() == 1 && t_[0].key == 0 && t_[0].c == 1; }
  bool is_monomial() const { return t_.size() == 1; }
  const std::vector<Term>& terms() const { return t_; }
  Int constant_term() const;
  const Term& leading() const { return t_.back(); }

  static unsigned exp(uint64_t key, int i) {
    return static_cast<unsigned>((key >> shift(i)) & kMaxExp);
  }
  static uint64_t make_key(const std::vector<unsigned>& e);
  static constexpr int shift(int i) { return (kMaxVars - 1 - i) * kBits; }
  std::vector<unsigned> max_degrees() const;
  std::vector<unsigned> min_degrees() const;
  unsigned total_degree() const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator-() const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly scaled(const Int& c) const;
  MPoly times_monomial(uint64_t key, const Int& c) const;
  MPoly div_monomial(uint64_t key) const;  // exact: every term divisible
  MPoly div_exact_int(const Int& c) const;
  bool operator==(const MPoly& o) const;

  Int content() const;  // positive gcd of coefficients, 0 for zero
  // substitute 0 for every variable with kill[i] set
  MPoly kill_vars(const std::vector<bool>& kill) const;
  MPoly eval_origin() const { return constant(nv_, constant_term()); }
  bool uses_var(int i) const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  int nv_ = 0;
  std::vector<Term> t_;  // ascending key, nonzero coefficients
  friend struct MPolyAccess;
};

// product kernels: dispatching default, dense schoolbook, Kronecker, OpenMP, plain reference
MPoly mul(const MPoly& a, const MPoly& b);
MPoly mul_reference(const MPoly& a, const MPoly& b);
MPoly mul_dense_serial(const MPoly& a, const MPoly& b);
MPoly mul_dense_parallel(const MPoly& a, const MPoly& b);
MPoly mul_kronecker(const MPoly& a, const MPoly& b);
MPoly mul_sparse(const MPoly& a, const MPoly& b);
void set_parallel_kernels(bool on);
bool parallel_kernels();

std::optional<MPoly> exact_div(const MPoly& a, const MPoly& b);
MPoly gcd(const MPoly& a, const MPoly& b);
std::optional<MPoly> sqrt_exact(const MPoly& p);
MPoly pow(const MPoly& a, unsigned e);

// element of Q(vars) as num/den over Z; lightweight normal form only
class Frac {
 public:
  Frac() = default;
  explicit Frac(int nvars);
  explicit Frac(MPoly num);
  Frac(MPoly num, MPoly den);
  static Frac of_int(int nvars, long v);
  static Frac of_rat(int nvars, const Rat& q);

  int nvars() const { return num_.nvars(); }
  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_poly() const { return den_.is_one(); }
  bool is_constant() const;

  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator-() const;
  Frac operator*(const Frac& o) const;
  Frac operator/(const Frac& o) const;
  Frac inv() const;
  bool operator==(const Frac& o) const;

  // cancels the full gcd of num and den
  Frac reduced() const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  void normalize();
  MPoly num_, den_;
};

}  // namespace valq
