#pragma once

// brute-force references: stabilization scans, lex-min monomial values and
// dense polynomial products over std::map

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace oracle {

using Vec = std::vector<int64_t>;

inline int lex_cmp(const Vec& a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

struct Stable {
  size_t iota = 0;           // 1-based
  std::vector<size_t> rank;  // rank[k] = position of term k in the chain
};

// values beta_k + t_k * gamma_tau; returns nullopt if some pair ties at the last tau
inline std::optional<Stable> ok_scan(const std::vector<Vec>& beta, const std::vector<int64_t>& t,
                                     const std::vector<Vec>& gamma) {
  size_t s = beta.size(), n = gamma.size();
  auto val = [&](size_t k, size_t tau) {
    Vec v = beta[k];
    for (size_t i = 0; i < v.size(); ++i) v[i] += t[k] * gamma[tau][i];
    return v;
  };
  // pairwise sign matrix at tau, 0 marks a tie
  auto signs = [&](size_t tau) {
    std::vector<int> m(s * s);
    for (size_t a = 0; a < s; ++a)
      for (size_t b = 0; b < s; ++b) m[a * s + b] = lex_cmp(val(a, tau), val(b, tau));
    return m;
  };
  auto last = signs(n - 1);
  for (size_t a = 0; a < s; ++a)
    for (size_t b = 0; b < s; ++b)
      if (a != b && last[a * s + b] == 0) return std::nullopt;
  size_t first = n - 1;
  while (first > 0 && signs(first - 1) == last) --first;
  Stable st;
  st.iota = first + 1;
  st.rank.assign(s, 0);
  for (size_t a = 0; a < s; ++a)
    for (size_t b = 0; b < s; ++b)
      if (last[a * s + b] > 0) ++st.rank[a];
  return st;
}

// lex minimum of sum_j e_j w_j over the given exponent vectors
inline Vec min_weight(const std::vector<std::vector<unsigned>>& exps, const std::vector<Vec>& w) {
  std::optional<Vec> best;
  for (const auto& e : exps) {
    Vec v(w[0].size(), 0);
    for (size_t j = 0; j < e.size(); ++j)
      for (size_t i = 0; i < v.size(); ++i) v[i] += static_cast<int64_t>(e[j]) * w[j][i];
    if (!best || lex_cmp(v, *best) < 0) best = v;
  }
  return *best;
}

using Dense = std::map<std::vector<unsigned>, mpz_class>;

inline Dense product(const Dense& a, const Dense& b) {
  Dense r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<unsigned> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r[e] += ca * cb;
    }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

}  // namespace oracle
