#include "valq/ordgroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "valq/error.hpp"

namespace valq {

namespace {

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("OVERFLOW", "group value addition");
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("OVERFLOW", "group value scaling");
  return r;
}

void same_rank(const GroupValue& a, const GroupValue& b) {
  if (a.is_inf() || b.is_inf()) return;
  if (a.rank() != b.rank())
    throw Error("RANK_MISMATCH", a.str() + " vs " + b.str());
}

}  // namespace

GroupValue::GroupValue(std::vector<int64_t> coords)
    : rank_(static_cast<int>(coords.size())), c_(std::move(coords)) {}

GroupValue GroupValue::zero(int rank) { return GroupValue(std::vector<int64_t>(rank, 0)); }

GroupValue GroupValue::inf(int rank) {
  GroupValue g;
  g.rank_ = rank;
  g.inf_ = true;
  return g;
}

GroupValue GroupValue::unit(int rank, int i) {
  std::vector<int64_t> c(rank, 0);
  c[i] = 1;
  return GroupValue(std::move(c));
}

bool GroupValue::is_zero() const {
  return !inf_ && std::all_of(c_.begin(), c_.end(), [](int64_t x) { return x == 0; });
}

GroupValue GroupValue::operator+(const GroupValue& o) const {
  same_rank(*this, o);
  if (inf_ || o.inf_) return inf(std::max(rank_, o.rank_));
  std::vector<int64_t> r(rank_);
  for (int i = 0; i < rank_; ++i) r[i] = checked_add(c_[i], o.c_[i]);
  return GroupValue(std::move(r));
}

GroupValue GroupValue::operator-(const GroupValue& o) const {
  if (o.inf_) throw Error("INF_ARITH", "subtracting INF");
  return *this + (-o);
}

GroupValue GroupValue::operator-() const {
  if (inf_) throw Error("INF_ARITH", "negating INF");
  std::vector<int64_t> r(rank_);
  for (int i = 0; i < rank_; ++i) r[i] = checked_mul(c_[i], -1);
  return GroupValue(std::move(r));
}

GroupValue GroupValue::operator*(int64_t k) const {
  if (inf_) {
    if (k <= 0) throw Error("INF_ARITH", "scaling INF by non-positive");
    return *this;
  }
  std::vector<int64_t> r(rank_);
  for (int i = 0; i < rank_; ++i) r[i] = checked_mul(c_[i], k);
  return GroupValue(std::move(r));
}

std::strong_ordering GroupValue::operator<=>(const GroupValue& o) const {
  if (inf_ || o.inf_) {
    if (inf_ && o.inf_) return std::strong_ordering::equal;
    return inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  same_rank(*this, o);
  for (int i = 0; i < rank_; ++i)
    if (c_[i] != o.c_[i]) return c_[i] <=> o.c_[i];
  return std::strong_ordering::equal;
}

bool GroupValue::operator==(const GroupValue& o) const { return (*this <=> o) == 0; }

GroupValue GroupValue::head(int k) const {
  if (inf_) return inf(k);
  return GroupValue(std::vector<int64_t>(c_.begin(), c_.begin() + k));
}

GroupValue GroupValue::tail(int k) const {
  if (inf_) return inf(k);
  return GroupValue(std::vector<int64_t>(c_.end() - k, c_.end()));
}

std::string GroupValue::str() const {
  if (inf_) return "inf";
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < rank_; ++i) os << (i ? "," : "") << c_[i];
  os << ')';
  return os.str();
}

GroupValue GroupValue::parse(const std::string& s0) {
  std::string s;
  for (char ch : s0)
    if (!isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "inf" || s == "INF") return inf(0);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw Error("SYNTAX", "group value '" + s0 + "'");
  std::vector<int64_t> c;
  std::string body = s.substr(1, s.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (...) {
      throw Error("SYNTAX", "group value '" + s0 + "'");
    }
    if (pos != item.size()) throw Error("SYNTAX", "group value '" + s0 + "'");
    c.push_back(v);
  }
  if (c.empty() || body.back() == ',') throw Error("SYNTAX", "group value '" + s0 + "'");
  return GroupValue(std::move(c));
}

Ordering lex_compare(const GroupValue& a, const GroupValue& b) {
  if (!a.is_inf() && !b.is_inf() && a.rank() != b.rank())
    throw Error("RANK_MISMATCH", a.str() + " vs " + b.str());
  auto c = a <=> b;
  if (c < 0) return Ordering::LT;
  if (c > 0) return Ordering::GT;
  return Ordering::EQ;
}

bool ConvexSubgroup::contains(const GroupValue& g) const {
  if (g.is_inf()) return false;
  for (int i = 0; i < rank - level; ++i)
    if (g[i] != 0) return false;
  return true;
}

ConvexSubgroup hull(const GroupValue& g) {
  if (g.is_inf() || g.is_zero()) throw Error("HULL_DOMAIN", "hull of " + g.str());
  int j = 0;
  while (g[j] == 0) ++j;
  return ConvexSubgroup{g.rank(), g.rank() - j};
}

ConvexSubgroup hull_of_set(const std::vector<GroupValue>& gs) {
  if (gs.empty()) throw Error("HULL_DOMAIN", "empty set");
  ConvexSubgroup best = hull(gs[0]);
  for (const auto& g : gs) {
    auto h = hull(g);
    if (h.rank != best.rank) throw Error("RANK_MISMATCH", "hull_of_set");
    if (h.level > best.level) best = h;
  }
  return best;
}

OkResult ok_stabilize(const std::vector<OkTerm>& terms, const std::vector<GroupValue>& gamma) {
  if (terms.empty()) throw Error("OK_DOMAIN", "no terms");
  if (gamma.empty()) throw Error("OK_DOMAIN", "empty gamma");
  for (size_t a = 0; a < terms.size(); ++a)
    for (size_t b = a + 1; b < terms.size(); ++b)
      if (terms[a].t == terms[b].t) throw Error("OK_DOMAIN", "duplicate t value");
  for (size_t i = 1; i < gamma.size(); ++i)
    if (!(gamma[i - 1] < gamma[i])) throw Error("OK_DOMAIN", "gamma not strictly increasing");

  // permutation at position tau, empty when two terms tie
  auto order_at = [&](size_t tau) {
    std::vector<GroupValue> vals;
    for (const auto& tm : terms) vals.push_back(tm.beta + gamma[tau] * tm.t);
    std::vector<size_t> idx(terms.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
      auto c = vals[a] <=> vals[b];
      return c != 0 ? c < 0 : a < b;
    });
    for (size_t k = 1; k < idx.size(); ++k)
      if (vals[idx[k - 1]] == vals[idx[k]]) return std::vector<size_t>{};
    return idx;
  };

  OkResult res;
  size_t last = gamma.size() - 1;
  auto perm = order_at(last);
  if (perm.empty()) {
    res.inconclusive = true;
    return res;
  }
  size_t iota = last;
  while (iota > 0 && order_at(iota - 1) == perm) --iota;
  res.iota = iota + 1;
  res.order = perm;
  return res;
}

std::optional<std::vector<int64_t>> lattice_solve(const std::vector<GroupValue>& gens,
                                                  const GroupValue& target) {
  int r = target.rank();
  int m = static_cast<int>(gens.size());
  std::vector<std::vector<int64_t>> H(r, std::vector<int64_t>(m));
  for (int j = 0; j < m; ++j) {
    if (gens[j].rank() != r) throw Error("RANK_MISMATCH", "lattice_solve");
    for (int i = 0; i < r; ++i) H[i][j] = gens[j][i];
  }
  std::vector<std::vector<int64_t>> U(m, std::vector<int64_t>(m, 0));
  for (int j = 0; j < m; ++j) U[j][j] = 1;

  auto col_axpy = [&](int dst, int src, int64_t q) {
    for (int i = 0; i < r; ++i) H[i][dst] = checked_add(H[i][dst], checked_mul(-q, H[i][src]));
    for (int i = 0; i < m; ++i) U[i][dst] = checked_add(U[i][dst], checked_mul(-q, U[i][src]));
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < r; ++i) std::swap(H[i][a], H[i][b]);
    for (int i = 0; i < m; ++i) std::swap(U[i][a], U[i][b]);
  };

  std::vector<int> pivot_col(r, -1);
  int p = 0;
  for (int i = 0; i < r && p < m; ++i) {
    for (int j = p + 1; j < m; ++j) {
      while (H[i][j] != 0) {
        col_axpy(p, j, H[i][p] / H[i][j]);
        col_swap(p, j);
      }
    }
    if (H[i][p] != 0) pivot_col[i] = p++;
  }

  std::vector<int64_t> y(m, 0);
  for (int i = 0; i < r; ++i) {
    if (target.is_inf()) return std::nullopt;
    int64_t s = 0;
    for (int k = 0; k < m; ++k) s = checked_add(s, checked_mul(H[i][k], y[k]));
    int64_t rest = target[i] - s;
    if (pivot_col[i] < 0) {
      if (rest != 0) return std::nullopt;
      continue;
    }
    int64_t d = H[i][pivot_col[i]];
    if (rest % d != 0) return std::nullopt;
    y[pivot_col[i]] = rest / d;
  }
  std::vector<int64_t> e(m, 0);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) e[j] = checked_add(e[j], checked_mul(U[j][k], y[k]));
  return e;
}

}  // namespace valq
