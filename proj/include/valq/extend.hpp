#pragma once

#include <string>
#include <vector>

#include "valq/newton.hpp"

namespace valq {

struct Budgets {
  int B = 8;
  int W = 3;
  int D = -1;  // maximal tower depth, -1 means the rank
};

struct ResidualCheck {
  bool irreducible = false;
  UPoly reduction;
  std::vector<UPoly> factors;
  std::string source;
};

ResidualCheck residually_irreducible(const Level& L, const UPoly& F, const ConvexSubgroup& psi,
                                     const FactorSource& oracle);

struct GoodVariable {
  Elem alpha;
  UPoly F_alpha;
  PsiResult psi;
  size_t partial_shift = 0;  // index of the partial sum absorbed for the hull condition
  std::vector<std::string> log;
};

GoodVariable good_variable(const Level& L, const UPoly& F, const Budgets& b,
                           const FactorSource& oracle);

// new level K[Y]/(Q) for the lifted Nagata factor Q of a residual reduction
LevelPtr tower_push(const LevelPtr& L, const UPoly& Qbar, const Budgets& b,
                    const FactorSource& oracle);

struct ExtendResult {
  GroupValue value;
  int depth = 0;
  std::vector<int64_t> witness_exps;  // Laurent monomial in the ring variables
  Frac witness;
  std::vector<std::string> log;
  std::string witness_str(const std::vector<std::string>& names) const;
};

ExtendResult extend_value(const LevelPtr& L, const UPoly& F, const UPoly& h, const Budgets& b,
                          const FactorSource& oracle);

struct ApproxPoint {
  std::string label;
  GroupValue value;
  bool below = false;  // strictly below some observed d_i
};

struct ApproxProfile {
  std::vector<GroupValue> d;
  bool certified = false;
  int64_t k = 0;
  GroupValue phi;
  ConvexSubgroup psi;
  std::vector<ApproxPoint> points;
};

// z = h(sigma_inf)/q(sigma_inf); approximants z_i = h(sigma_i)/q(sigma_i)
ApproxProfile approx_profile(const LevelPtr& L, const UPoly& F, const UPoly& h, const UPoly& q,
                             const std::vector<std::pair<std::string, Elem>>& cs,
                             const Budgets& b, const FactorSource& oracle);

}  // namespace valq
