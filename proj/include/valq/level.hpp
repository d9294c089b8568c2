#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "valq/field.hpp"
#include "valq/valring.hpp"

namespace valq {

class NewtonTrace;
class Level;
using LevelPtr = std::shared_ptr<Level>;

// one floor of a tower: the field K_j together with the extended valuation.
// level 0 is the valued ring itself; level j values elements through Q_j
// (the valuer is installed by whoever pushes the level). Caches are not
// synchronized: one Level per thread.
class Level {
 public:
  using Valuer = std::function<GroupValue(const LevelPtr& parent, const UPoly& Q, const UPoly& g)>;

  static LevelPtr base(const ValuedRing& R);
  static LevelPtr push(LevelPtr parent, UPoly Q, const std::string& gen, Valuer v);
  ~Level();

  int index() const { return K_->level(); }
  int rank() const { return R_.rank(); }
  const ValuedRing& ring() const { return R_; }
  const Field& K() const { return *K_; }
  FieldPtr field() const { return K_; }
  const LevelPtr& parent() const { return parent_; }
  const UPoly& modulus() const { return K_->modulus(); }
  const std::vector<std::string>& names() const { return R_.names(); }

  GroupValue value(const Elem& e) const;
  Locality locality(const Elem& e) const;
  bool in_R(const Elem& e) const { return locality(e) != Locality::NOT_IN_R; }
  bool in_m(const Elem& e) const;

  // substitutes 0 for the variables whose weight leaves psi, in every leaf
  Elem residual_reduce(const Elem& e, const ConvexSubgroup& psi) const;
  UPoly residual_reduce(const UPoly& f, const ConvexSubgroup& psi) const;

  std::string str(const Elem& e) const { return K_->str(e, R_.names()); }
  std::string str(const UPoly& f, const std::string& var = "X") const {
    return up::str(*K_, f, R_.names(), var);
  }

  NewtonTrace& trace(const UPoly& F) const;

 private:
  Level() = default;
  ValuedRing R_;
  FieldPtr K_;
  LevelPtr parent_;
  Valuer valuer_;
  mutable std::map<std::string, std::unique_ptr<NewtonTrace>> traces_;
  mutable std::map<std::string, GroupValue> values_;
  const Level& at(int j) const;
};

}  // namespace valq
