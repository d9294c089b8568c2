#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valq/level.hpp"
#include "valq/nagata.hpp"

namespace valq {

enum class TraceStatus { RUNNING, EXACT_ROOT };

struct StepCheck {
  bool doubling = true;  // nu(delta_i) >= 2 nu(delta_{i-1})
  bool value_eq = true;  // nu(delta_i) = nu(F(sigma_i))
  bool nagata = true;    // F^(i) is again Nagata
};

// Newton sequence of a Nagata polynomial: delta_i, sigma_i = delta_0 + ... + delta_{i-1}.
// Resumable: run_to(n) makes delta_0..delta_{n-1} available unless a root stops it.
class NewtonTrace {
 public:
  NewtonTrace(const Level& L, UPoly F);

  void run_to(size_t n);
  size_t steps() const { return delta.size(); }
  bool exact_root() const { return status == TraceStatus::EXACT_ROOT; }
  const Level& level() const { return *L_; }
  const UPoly& poly() const { return F_; }

  std::vector<Elem> delta, sigma;  // sigma.size() == delta.size() + 1
  std::vector<GroupValue> nu_delta, nu_sigma, nu_F;
  std::vector<StepCheck> checks;
  TraceStatus status = TraceStatus::RUNNING;
  size_t root_index = 0;  // sigma[root_index] is a root when EXACT_ROOT

  // checks made once the first step exists
  bool first_step_checked = false;
  bool divisible_an2 = true;  // F^(1)(0) in a_n^2 R
  bool value_an2 = true;      // nu(F^(1)(0)) >= 2 nu(a_n)
  bool congruence = true;     // F^(1) = F mod delta_0 R, coefficientwise
  UPoly F1;

  bool all_checks_pass() const;

 private:
  const Level* L_;
  UPoly F_;
  // level-0 data: F = g A with A squarefree part, F' = g Bp; integer forms
  bool hom_ = false;
  std::vector<MPoly> A_, Bp_;
  MPoly DA_, DB_;
  void step();
  void step_hom();
  void step_generic();
  void first_step_checks();
};

// value of h at an element; at level 0 uses a denominator-free Horner scheme
GroupValue value_at(const Level& L, const UPoly& h, const Elem& x, bool* is_zero = nullptr);

enum class ClassKind { STATIONARY, INCREASING, INCONCLUSIVE };
const char* kind_name(ClassKind k);

struct Classification {
  ClassKind kind = ClassKind::INCONCLUSIVE;
  GroupValue phi;
  int e = 0;
  size_t since = 0;
  int window = 0;
  std::vector<GroupValue> values;  // nu(h(sigma_i)), i = 1..B (INF for zeros)
  std::vector<size_t> zeros;
  std::string note;
  std::string str() const;
};

Classification classify(const Level& L, const UPoly& F, const UPoly& h, int B, int W);

struct PsiResult {
  ConvexSubgroup psi;
  bool exact = false;        // full group, cannot grow
  size_t stabilized_at = 0;  // first step with the final hull
  std::vector<int> hulls;    // hull level after each step
  bool monotone = true;
};

PsiResult psi_F(const Level& L, const UPoly& F, int B);

struct SequenceReport {
  bool pseudo_convergent = false;
  std::vector<GroupValue> diffs;  // nu(y_{k+1} - y_k)
  std::optional<bool> limit;
  size_t first_failure = 0;
};

SequenceReport sequence_checks(const Level& L, const std::vector<Elem>& ys,
                               const std::optional<Elem>& y = std::nullopt);

struct EtaleCertificate {
  bool certified = false;
  std::vector<size_t> indices;  // positions in ys checked
  std::vector<GroupValue> lhs, rhs;
  bool nagata = false;  // h is a unit times a Nagata polynomial
  std::string reason;
};

EtaleCertificate etale_certificate(const Level& L, const std::vector<Elem>& ys, const UPoly& h,
                                   int W);

struct Witness {
  std::vector<Elem> sigmas;  // sigma_1..sigma_B
  EtaleCertificate cert;
  GroupValue bound;          // any limit y in m_R would have nu(F(y)) >= bound
  std::string report;
};

Witness nonhenselian_witness(const Level& L, const UPoly& F, int B, int W);

}  // namespace valq
