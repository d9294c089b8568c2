#include "valq/level.hpp"

#include "valq/error.hpp"
#include "valq/newton.hpp"

namespace valq {

LevelPtr Level::base(const ValuedRing& R) {
  auto L = LevelPtr(new Level());
  L->R_ = R;
  L->K_ = Field::base(R.nvars());
  return L;
}

LevelPtr Level::push(LevelPtr parent, UPoly Q, const std::string& gen, Valuer v) {
  auto L = LevelPtr(new Level());
  L->R_ = parent->R_;
  L->K_ = Field::extension(parent->K_, std::move(Q), gen);
  L->parent_ = std::move(parent);
  L->valuer_ = std::move(v);
  return L;
}

Level::~Level() = default;

const Level& Level::at(int j) const {
  const Level* L = this;
  while (L->index() > j) L = L->parent_.get();
  return *L;
}

GroupValue Level::value(const Elem& e) const {
  if (e.level != index()) return at(e.level).value(e);
  if (index() == 0) return R_.value_of(e.f);
  if (e.c.empty()) return GroupValue::inf(rank());
  if (e.c.size() == 1) return parent_->value(e.c[0]);
  std::string key = str(e);
  auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  UPoly g;
  g.c = e.c;
  GroupValue v = valuer_(parent_, modulus(), g);
  values_.emplace(std::move(key), v);
  return v;
}

Locality Level::locality(const Elem& e) const {
  if (e.level != index()) return at(e.level).locality(e);
  if (index() == 0) return R_.is_local(e.f);
  if (e.c.size() <= 1) return e.c.empty() ? Locality::MAXIMAL_IDEAL : parent_->locality(e.c[0]);
  GroupValue v = value(e);
  GroupValue z = GroupValue::zero(rank());
  if (v < z) return Locality::NOT_IN_R;
  return v == z ? Locality::UNIT : Locality::MAXIMAL_IDEAL;
}

bool Level::in_m(const Elem& e) const { return locality(e) == Locality::MAXIMAL_IDEAL; }

Elem Level::residual_reduce(const Elem& e, const ConvexSubgroup& psi) const {
  if (e.level == 0) {
    Elem r;
    r.f = R_.residual_reduce(e.f, psi);
    return r;
  }
  const Field& F = K_->at(e.level);
  Elem r;
  r.level = e.level;
  for (const auto& x : e.c) r.c.push_back(residual_reduce(x, psi));
  // the moduli keep surviving variables only, so killing is a ring map
  return F.reduce(r);
}

UPoly Level::residual_reduce(const UPoly& f, const ConvexSubgroup& psi) const {
  UPoly r;
  for (const auto& x : f.c) r.c.push_back(residual_reduce(x, psi));
  up::trim(*K_, r);
  return r;
}

NewtonTrace& Level::trace(const UPoly& F) const {
  std::string key = str(F);
  auto it = traces_.find(key);
  if (it != traces_.end()) return *it->second;
  auto t = std::make_unique<NewtonTrace>(*this, F);
  auto& ref = *t;
  traces_.emplace(std::move(key), std::move(t));
  return ref;
}

}  // namespace valq
