#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valq/level.hpp"

namespace valq {

enum class NagataReject { NONE, NOT_MONIC, COEFF_NOT_IN_R, CONST_NOT_IN_M, LINEAR_NOT_UNIT };
const char* reject_name(NagataReject r);

struct NagataCheck {
  bool ok = false;
  NagataReject reason = NagataReject::NONE;
  bool trivial_hint = false;  // constant term is exactly zero
  Elem a_n;                   // negated constant term
  Elem a_lin;                 // linear coefficient
};

NagataCheck is_nagata(const Level& L, const UPoly& f);
// throws NOT_NAGATA with the reason
void require_nagata(const Level& L, const UPoly& f);

// F(X + alpha), alpha in the maximal ideal
UPoly change_of_variable(const Level& L, const UPoly& F, const Elem& alpha);

enum class FacSide { FIRST_IS_NAGATA, SECOND_IS_NAGATA };
FacSide fac_classify(const Level& L, const UPoly& G, const UPoly& Q);

struct Factorization {
  std::vector<UPoly> factors;  // monic, irreducible, with repetition
  std::string source;          // builtin | list | declared
};

// exact factorization of a monic polynomial over the base field when the
// rational-root and discriminant methods decide it completely
std::optional<std::vector<UPoly>> builtin_factor(const Field& K, const UPoly& f);

class FactorSource {
 public:
  // level-0 factor list for a product; one factor means declared irreducible
  void add_list(const Field& K, const UPoly& product, std::vector<UPoly> factors);
  void set_builtin(bool on) { builtin_ = on; }
  std::optional<Factorization> factor(const Level& L, const UPoly& f) const;

 private:
  struct Entry {
    UPoly product;
    std::vector<UPoly> factors;
  };
  std::vector<Entry> lists_;
  bool builtin_ = true;
};

struct FStar {
  UPoly f;
  std::vector<UPoly> factors;
  size_t index = 0;
  std::string source;  // unfactored when a tower level has no factorization
};

FStar fstar(const Level& L, const UPoly& F, const FactorSource& oracle);

}  // namespace valq
