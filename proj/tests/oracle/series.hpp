#pragma once

// truncated power series in one variable over Q, used as an independent
// reference for Newton iterates and root expansions at rank 1

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace oracle {

using Q = mpq_class;

// coefficients c[0..N-1] of a series mod t^N
struct Series {
  std::vector<Q> c;
  explicit Series(size_t n = 0) : c(n) {}
  size_t prec() const { return c.size(); }
  static Series poly(const std::vector<Q>& p, size_t n) {
    Series s(n);
    for (size_t i = 0; i < p.size() && i < n; ++i) s.c[i] = p[i];
    return s;
  }
  // index of the first nonzero coefficient, prec() when all vanish
  size_t order() const {
    for (size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) return i;
    return c.size();
  }
  bool operator==(const Series& o) const { return c == o.c; }
};

inline Series operator+(const Series& a, const Series& b) {
  Series r(a.prec());
  for (size_t i = 0; i < r.prec(); ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

inline Series operator-(const Series& a, const Series& b) {
  Series r(a.prec());
  for (size_t i = 0; i < r.prec(); ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

inline Series operator*(const Series& a, const Series& b) {
  size_t n = a.prec();
  Series r(n);
  for (size_t i = 0; i < n; ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; i + j < n; ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

inline Series inverse(const Series& a) {
  if (a.c.empty() || a.c[0] == 0) throw std::domain_error("series not invertible");
  size_t n = a.prec();
  Series r(n);
  r.c[0] = 1 / a.c[0];
  for (size_t k = 1; k < n; ++k) {
    Q s = 0;
    for (size_t j = 1; j <= k; ++j) s += a.c[j] * r.c[k - j];
    r.c[k] = -s / a.c[0];
  }
  return r;
}

// expansion of num/den; den(0) must be nonzero
inline Series ratfun(const std::vector<Q>& num, const std::vector<Q>& den, size_t n) {
  return Series::poly(num, n) * inverse(Series::poly(den, n));
}

// polynomial in X with series coefficients (low to high)
using SPoly = std::vector<Series>;

inline Series eval(const SPoly& f, const Series& x) {
  Series acc(x.prec());
  for (size_t k = f.size(); k-- > 0;) acc = acc * x + f[k];
  return acc;
}

inline SPoly derivative(const SPoly& f) {
  SPoly d;
  for (size_t k = 1; k < f.size(); ++k) {
    Series s = f[k];
    for (auto& x : s.c) x *= static_cast<long>(k);
    d.push_back(s);
  }
  return d;
}

// k-th Hasse derivative: coefficients C(j, k) f_j of X^(j-k)
inline SPoly hasse(const SPoly& f, size_t k) {
  SPoly d;
  for (size_t j = k; j < f.size(); ++j) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), j, k);
    Series s = f[j];
    for (auto& x : s.c) x *= b;
    d.push_back(s);
  }
  return d;
}

struct NewtonRun {
  std::vector<Series> delta, sigma;  // sigma[0] = 0, sigma[i+1] = sigma[i] + delta[i]
};

// x <- x - f(x)/f'(x) from x = 0, computed entirely in series arithmetic
inline NewtonRun newton(const SPoly& f, size_t steps, size_t n) {
  NewtonRun r;
  SPoly df = derivative(f);
  r.sigma.push_back(Series(n));
  for (size_t i = 0; i < steps; ++i) {
    const Series& s = r.sigma.back();
    Series d = Series(n) - eval(f, s) * inverse(eval(df, s));
    r.delta.push_back(d);
    r.sigma.push_back(s + d);
  }
  return r;
}

// the root in t*Q[[t]] of a Nagata polynomial, to precision n
inline Series root(const SPoly& f, size_t n) {
  size_t steps = 1;
  while ((size_t{1} << steps) < n + 1) ++steps;
  return newton(f, steps + 1, n).sigma.back();
}

}  // namespace oracle
