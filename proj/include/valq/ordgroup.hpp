#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace valq {

// element of Z^r with lex order, or INF
class GroupValue {
 public:
  GroupValue() = default;
  explicit GroupValue(std::vector<int64_t> coords);
  static GroupValue zero(int rank);
  static GroupValue inf(int rank);
  static GroupValue unit(int rank, int i);  // standard basis vector e_i

  int rank() const { return rank_; }
  bool is_inf() const { return inf_; }
  bool is_zero() const;
  const std::vector<int64_t>& coords() const { return c_; }
  int64_t operator[](int i) const { return c_[i]; }

  GroupValue operator+(const GroupValue& o) const;
  GroupValue operator-(const GroupValue& o) const;
  GroupValue operator-() const;
  GroupValue operator*(int64_t k) const;
  GroupValue& operator+=(const GroupValue& o) { return *this = *this + o; }

  std::strong_ordering operator<=>(const GroupValue& o) const;
  bool operator==(const GroupValue& o) const;

  // first k coordinates / last k coordinates
  GroupValue head(int k) const;
  GroupValue tail(int k) const;

  std::string str() const;
  static GroupValue parse(const std::string& s);

 private:
  int rank_ = 0;
  bool inf_ = false;
  std::vector<int64_t> c_;
};

enum class Ordering { LT, EQ, GT };
Ordering lex_compare(const GroupValue& a, const GroupValue& b);

// convex subgroups of Z^r are the suffix groups {0}^(r-l) x Z^l
struct ConvexSubgroup {
  int rank = 0;
  int level = 0;
  bool contains(const GroupValue& g) const;
  bool full() const { return level == rank; }
  bool operator==(const ConvexSubgroup&) const = default;
};

ConvexSubgroup hull(const GroupValue& g);
ConvexSubgroup hull_of_set(const std::vector<GroupValue>& gs);

struct OkTerm {
  GroupValue beta;
  int64_t t = 0;
};

struct OkResult {
  bool inconclusive = false;
  size_t iota = 0;             // 1-based position in gamma
  std::vector<size_t> order;   // indices into terms, increasing value
};

OkResult ok_stabilize(const std::vector<OkTerm>& terms, const std::vector<GroupValue>& gamma);

// integer solution e of sum_j e_j * gens[j] = target, if one exists
std::optional<std::vector<int64_t>> lattice_solve(const std::vector<GroupValue>& gens,
                                                  const GroupValue& target);

}  // namespace valq
