#pragma once

#include <map>
#include <string>
#include <vector>

#include "valq/nagata.hpp"
#include "valq/valring.hpp"

namespace valq {

struct Expect {
  std::string tag, name, value;
  int line = 0;
};

struct FactorList {
  std::string name;
  std::vector<UPoly> factors;
};

struct Fixture {
  ValuedRing ring;
  bool explicit_weights = false;
  FieldPtr K;
  std::vector<std::string> order;  // poly names in declaration order
  std::map<std::string, UPoly> polys;
  std::vector<FactorList> factors;
  std::vector<Expect> expects;

  bool has(const std::string& name) const { return polys.count(name) > 0; }
  const UPoly& poly(const std::string& name) const;
  Elem elem(const std::string& name) const;  // X-free polynomial as a ring element
  FactorSource oracle() const;
  std::string str(const UPoly& f) const { return up::str(*K, f, ring.names()); }
};

Fixture parse_fixture(const std::string& text);
Fixture load_fixture(const std::string& path);
std::string serialize(const Fixture& fx);

// parse a single expression against a fixture's ring and polynomials
UPoly parse_expr(const Fixture& fx, const std::string& text);

}  // namespace valq
