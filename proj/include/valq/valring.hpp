#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valq/exactalg.hpp"
#include "valq/ordgroup.hpp"

namespace valq {

enum class Locality { UNIT, MAXIMAL_IDEAL, NOT_IN_R };
const char* locality_name(Locality l);

// Q[vars] localized at the origin with the monomial valuation given by
// lex-positive weights; dead variables (after a residual reduction) must not occur
class ValuedRing {
 public:
  ValuedRing() = default;
  ValuedRing(std::vector<std::string> names, std::vector<GroupValue> weights);
  static ValuedRing standard(std::vector<std::string> names);

  int rank() const { return rank_; }
  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<GroupValue>& weights() const { return w_; }
  bool dead(int i) const { return dead_[i]; }

  GroupValue monomial_value(uint64_t key) const;
  GroupValue value_of(const MPoly& p) const;
  GroupValue value_of(const Frac& x) const;
  Locality is_local(const Frac& x) const;
  bool in_eq(const Frac& x, const Frac& y) const;

  // variables whose weight leaves the suffix subgroup of the given level
  std::vector<bool> killed(int level) const;
  Frac residual_reduce(const Frac& x, const ConvexSubgroup& psi) const;
  // R/p_psi: rank level, suffix weights, killed variables marked dead
  ValuedRing quotient(const ConvexSubgroup& psi) const;
  std::pair<GroupValue, std::optional<GroupValue>> value_split(const Frac& x,
                                                               const ConvexSubgroup& psi) const;


 private:
  int rank_ = 0;
  std::vector<std::string> names_;
  std::vector<GroupValue> w_;
  std::vector<bool> dead_;
};

// pad a value of a quotient ring back into rank r with leading zeros
GroupValue embed_tail(const GroupValue& tail, int rank);

}  // namespace valq
