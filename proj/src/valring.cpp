#include "valq/valring.hpp"

#include "valq/error.hpp"

namespace valq {

const char* locality_name(Locality l) {
  switch (l) {
    case Locality::UNIT: return "UNIT";
    case Locality::MAXIMAL_IDEAL: return "MAXIMAL_IDEAL";
    default: return "NOT_IN_R";
  }
}

ValuedRing::ValuedRing(std::vector<std::string> names, std::vector<GroupValue> weights)
    : names_(std::move(names)), w_(std::move(weights)) {
  if (names_.empty() || names_.size() > static_cast<size_t>(MPoly::kMaxVars))
    throw Error("BAD_RING", "between 1 and 4 variables supported");
  if (w_.size() != names_.size()) throw Error("BAD_RING", "one weight per variable required");
  rank_ = w_[0].rank();
  if (rank_ < 1) throw Error("BAD_RING", "rank must be positive");
  for (size_t i = 0; i < w_.size(); ++i) {
    if (w_[i].rank() != rank_ || w_[i].is_inf()) throw Error("BAD_RING", "weight rank mismatch");
    if (!(w_[i] > GroupValue::zero(rank_)))
      throw Error("BAD_WEIGHTS", "weight of " + names_[i] + " is not lex-positive: " + w_[i].str());
  }
  dead_.assign(names_.size(), false);
}

ValuedRing ValuedRing::standard(std::vector<std::string> names) {
  int r = static_cast<int>(names.size());
  std::vector<GroupValue> w;
  for (int i = 0; i < r; ++i) w.push_back(GroupValue::unit(r, i));
  return ValuedRing(std::move(names), std::move(w));
}

GroupValue ValuedRing::monomial_value(uint64_t key) const {
  std::vector<int64_t> v(rank_, 0);
  for (int i = 0; i < nvars(); ++i) {
    unsigned e = MPoly::exp(key, i);
    if (!e) continue;
    if (dead_[i]) throw Error("DEAD_VAR", names_[i] + " is zero in this quotient ring");
    for (int k = 0; k < rank_; ++k) v[k] += static_cast<int64_t>(e) * w_[i][k];
  }
  return GroupValue(std::move(v));
}

GroupValue ValuedRing::value_of(const MPoly& p) const {
  if (p.is_zero()) return GroupValue::inf(rank_);
  if (p.nvars() != nvars()) throw Error("VAR_MISMATCH", "value_of");
  // weights matrix rows per variable; evaluate each term without allocating
  std::vector<int64_t> best, cur(rank_);
  for (const auto& t : p.terms()) {
    std::fill(cur.begin(), cur.end(), 0);
    for (int i = 0; i < nvars(); ++i) {
      unsigned e = MPoly::exp(t.key, i);
      if (!e) continue;
      if (dead_[i]) throw Error("DEAD_VAR", names_[i] + " is zero in this quotient ring");
      for (int k = 0; k < rank_; ++k) cur[k] += static_cast<int64_t>(e) * w_[i][k];
    }
    if (best.empty() || cur < best) best = cur;
  }
  return GroupValue(std::move(best));
}

GroupValue ValuedRing::value_of(const Frac& x) const {
  if (x.is_zero()) return GroupValue::inf(rank_);
  return value_of(x.num()) - value_of(x.den());
}

Locality ValuedRing::is_local(const Frac& x) const {
  if (x.is_zero()) return Locality::MAXIMAL_IDEAL;
  Frac y = x;
  if (y.den().constant_term() == 0) {
    y = x.reduced();
    if (y.den().constant_term() == 0) return Locality::NOT_IN_R;
  }
  return y.num().constant_term() != 0 ? Locality::UNIT : Locality::MAXIMAL_IDEAL;
}

bool ValuedRing::in_eq(const Frac& x, const Frac& y) const {
  if (x.is_zero() && y.is_zero()) return true;
  if (x.is_zero() || y.is_zero()) return false;
  GroupValue vx = value_of(x);
  if (vx != value_of(y)) return false;
  return value_of(x - y) > vx;
}

std::vector<bool> ValuedRing::killed(int level) const {
  if (level < 0 || level > rank_) throw Error("BAD_LEVEL", "convex subgroup level out of range");
  std::vector<bool> k(nvars(), false);
  ConvexSubgroup psi{rank_, level};
  for (int i = 0; i < nvars(); ++i) k[i] = dead_[i] || !psi.contains(w_[i]);
  return k;
}

Frac ValuedRing::residual_reduce(const Frac& x, const ConvexSubgroup& psi) const {
  if (psi.rank != rank_) throw Error("RANK_MISMATCH", "residual_reduce");
  if (psi.level >= rank_) throw Error("BAD_LEVEL", "residual reduction by the full group");
  Frac y = x;
  if (y.den().constant_term() == 0) {
    y = x.reduced();
    if (y.den().constant_term() == 0) throw Error("NOT_IN_R", "residual_reduce of a non-local element");
  }
  auto k = killed(psi.level);
  return Frac(y.num().kill_vars(k), y.den().kill_vars(k));
}

ValuedRing ValuedRing::quotient(const ConvexSubgroup& psi) const {
  if (psi.level >= rank_ || psi.level < 1)
    throw Error("BAD_LEVEL", "quotient needs 1 <= level < rank");
  auto k = killed(psi.level);
  ValuedRing q;
  q.rank_ = psi.level;
  q.names_ = names_;
  q.dead_ = k;
  for (int i = 0; i < nvars(); ++i) {
    // dead variables keep a placeholder weight that is never read
    q.w_.push_back(k[i] ? GroupValue::unit(psi.level, 0) : w_[i].tail(psi.level));
  }
  return q;
}

std::pair<GroupValue, std::optional<GroupValue>> ValuedRing::value_split(
    const Frac& x, const ConvexSubgroup& psi) const {
  if (x.is_zero()) throw Error("ZERO", "value_split of zero");
  GroupValue v = value_of(x);
  int hk = rank_ - psi.level;
  GroupValue head = v.head(hk);
  if (!head.is_zero()) return {head, std::nullopt};
  return {head, v.tail(psi.level)};
}

GroupValue embed_tail(const GroupValue& tail, int rank) {
  if (tail.is_inf()) return GroupValue::inf(rank);
  std::vector<int64_t> c(rank - tail.rank(), 0);
  c.insert(c.end(), tail.coords().begin(), tail.coords().end());
  return GroupValue(std::move(c));
}

}  // namespace valq
