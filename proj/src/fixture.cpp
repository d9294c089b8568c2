#include "valq/fixture.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "valq/error.hpp"

namespace valq {

namespace {

[[noreturn]] void syntax(int line, size_t col, const std::string& msg) {
  throw Error("SYNTAX", "line " + std::to_string(line) + " col " + std::to_string(col + 1) + ": " + msg);
}

class ExprParser {
 public:
  ExprParser(const Fixture& fx, const std::string& s, int line, size_t col0)
      : fx_(fx), K_(*fx.K), s_(s), line_(line), col0_(col0) {}

  UPoly parse() {
    UPoly v = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  const Fixture& fx_;
  const Field& K_;
  const std::string& s_;
  int line_;
  size_t col0_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& m) { syntax(line_, col0_ + pos_, m); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool starts_atom() {
    char c = peek();
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  UPoly expr() {
    UPoly v = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        v = up::add(K_, v, term());
      } else if (c == '-') {
        ++pos_;
        v = up::sub(K_, v, term());
      } else {
        return v;
      }
    }
  }

  UPoly term() {
    UPoly v = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        v = up::mul(K_, v, unary());
      } else if (c == '/') {
        ++pos_;
        size_t at = pos_;
        UPoly d = unary();
        if (d.is_zero()) syntax(line_, col0_ + at, "division by zero");
        if (d.deg() > 0) syntax(line_, col0_ + at, "division by a polynomial in X");
        v = up::scale(K_, v, K_.inv(d.c[0]));
      } else if (starts_atom()) {
        v = up::mul(K_, v, power());
      } else {
        return v;
      }
    }
  }

  UPoly unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      UPoly v = unary();
      for (auto& e : v.c) e = K_.neg(e);
      return v;
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  UPoly power() {
    UPoly b = atom();
    if (peek() == '^') {
      ++pos_;
      skip();
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail("expected a nonnegative integer exponent");
      unsigned long e = std::stoul(s_.substr(st, pos_ - st));
      if (e > 4096) fail("exponent too large");
      return up::pow(K_, b, static_cast<unsigned>(e));
    }
    return b;
  }

  UPoly atom() {
    char c = peek();
    int nv = K_.nvars();
    if (c == '(') {
      ++pos_;
      UPoly v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Int n(s_.substr(st, pos_ - st));
      UPoly v;
      if (n != 0) v.c.push_back(K_.of_frac(Frac(MPoly::constant(nv, n))));
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t st = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string id = s_.substr(st, pos_ - st);
      if (id == "X") return up::x(K_);
      const auto& names = fx_.ring.names();
      for (int i = 0; i < nv; ++i)
        if (names[i] == id) return up::constant(K_.of_frac(Frac(MPoly::variable(nv, i))));
      auto it = fx_.polys.find(id);
      if (it != fx_.polys.end()) return it->second;
      syntax(line_, col0_ + st, "unknown name '" + id + "'");
    }
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool valid_name(const std::string& n) {
  if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) return false;
  for (char c : n)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::vector<int64_t> parse_int_tuple(const std::string& s, int line, size_t col) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') syntax(line, col, "malformed weight '" + s + "'");
  std::vector<int64_t> out;
  std::string body = s.substr(1, s.size() - 2);
  std::stringstream ss(body);
  std::string item;
  size_t off = 1;
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    size_t used = 0;
    try {
      out.push_back(std::stoll(t, &used));
    } catch (...) {
      syntax(line, col + off, "malformed weight '" + s + "'");
    }
    if (used != t.size()) syntax(line, col + off, "malformed weight '" + s + "'");
    off += item.size() + 1;
  }
  if (out.empty() || body.empty() || body.back() == ',') syntax(line, col, "malformed weight '" + s + "'");
  return out;
}

void parse_ring(Fixture& fx, const std::string& rest, int line, size_t col) {
  std::stringstream ss(rest);
  std::string tok;
  int rank = -1;
  std::vector<std::string> vars;
  std::vector<GroupValue> weights;
  bool have_w = false;
  size_t ring_col = col;
  while (ss >> tok) {
    auto end = ss.tellg();
    col = ring_col + (end < 0 ? rest.size() : static_cast<size_t>(end)) - tok.size();
    size_t eq = tok.find('=');
    if (eq == std::string::npos) syntax(line, col, "expected key=value, got '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "rank") {
      try {
        rank = std::stoi(val);
      } catch (...) {
        syntax(line, col, "bad rank");
      }
    } else if (key == "vars") {
      std::stringstream vs(val);
      std::string v;
      while (std::getline(vs, v, ',')) {
        if (!valid_name(v) || v == "X") syntax(line, col, "bad variable name '" + v + "'");
        vars.push_back(v);
      }
    } else if (key == "weights") {
      have_w = true;
      std::stringstream ws(val);
      std::string w;
      size_t off = eq + 1;
      while (std::getline(ws, w, ';')) {
        weights.emplace_back(parse_int_tuple(w, line, col + off));
        off += w.size() + 1;
      }
    } else {
      syntax(line, col, "unknown ring key '" + key + "'");
    }
  }
  col = ring_col;
  if (rank < 1) syntax(line, col, "ring needs rank=<r>");
  if (vars.empty()) syntax(line, col, "ring needs vars=");
  if (!have_w) {
    if (static_cast<int>(vars.size()) != rank)
      syntax(line, col, "default weights need as many variables as the rank");
    for (int i = 0; i < rank; ++i) weights.push_back(GroupValue::unit(rank, i));
  }
  for (const auto& w : weights)
    if (w.rank() != rank) syntax(line, col, "weight " + w.str() + " does not have rank " + std::to_string(rank));
  fx.ring = ValuedRing(vars, weights);
  fx.explicit_weights = have_w;
  fx.K = Field::base(static_cast<int>(vars.size()));
}

}  // namespace

const UPoly& Fixture::poly(const std::string& name) const {
  auto it = polys.find(name);
  if (it == polys.end()) throw Error("MISSING_POLY", "no polynomial named " + name);
  return it->second;
}

Elem Fixture::elem(const std::string& name) const {
  const UPoly& p = poly(name);
  if (p.deg() > 0) throw Error("NOT_CONSTANT", name + " involves X");
  return p.is_zero() ? K->zero() : p.c[0];
}

FactorSource Fixture::oracle() const {
  FactorSource o;
  for (const auto& fl : factors) o.add_list(*K, poly(fl.name), fl.factors);
  return o;
}

UPoly parse_expr(const Fixture& fx, const std::string& text) {
  return ExprParser(fx, text, 0, 0).parse();
}

Fixture parse_fixture(const std::string& text) {
  Fixture fx;
  std::stringstream in(text);
  std::string raw;
  int line = 0;
  bool have_ring = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    if (trim(s).empty()) continue;
    size_t c0 = s.find_first_not_of(" \t");
    size_t sp = s.find_first_of(" \t", c0);
    std::string kw = s.substr(c0, sp == std::string::npos ? std::string::npos : sp - c0);
    std::string rest = sp == std::string::npos ? "" : s.substr(sp);
    size_t rest_col = sp == std::string::npos ? s.size() : sp;
    if (kw == "ring") {
      if (have_ring) syntax(line, c0, "duplicate ring declaration");
      try {
        parse_ring(fx, rest, line, rest_col);
      } catch (const Error& e) {
        if (e.code() == "SYNTAX") throw;
        throw Error(e.code(), "line " + std::to_string(line) + ": " + e.what());
      }
      have_ring = true;
      continue;
    }
    if (!have_ring) syntax(line, c0, "the ring must be declared first");
    if (kw != "poly" && kw != "factors" && kw != "expect") syntax(line, c0, "unknown key '" + kw + "'");
    size_t eq = s.find('=', rest_col);
    if (eq == std::string::npos) syntax(line, rest_col, "expected '='");
    std::stringstream hs(s.substr(rest_col, eq - rest_col));
    std::vector<std::string> head;
    std::string w;
    while (hs >> w) head.push_back(w);
    std::string body = s.substr(eq + 1);
    size_t body_col = eq + 1;
    if (kw == "expect") {
      if (head.size() != 2) syntax(line, rest_col, "expected 'expect <tag> <NAME> = <value>'");
      fx.expects.push_back({head[0], head[1], trim(body), line});
      continue;
    }
    if (head.size() != 1 || !valid_name(head[0]) || head[0] == "X")
      syntax(line, rest_col, "expected a single name before '='");
    const std::string& name = head[0];
    if (kw == "poly") {
      if (fx.has(name)) syntax(line, rest_col, "duplicate polynomial " + name);
      for (const auto& v : fx.ring.names())
        if (v == name) syntax(line, rest_col, name + " is a ring variable");
      fx.polys[name] = ExprParser(fx, body, line, body_col).parse();
      fx.order.push_back(name);
      continue;
    }
    // factors NAME = (..)(..)
    if (!fx.has(name)) syntax(line, rest_col, "factors for undeclared polynomial " + name);
    FactorList fl{name, {}};
    size_t i = 0;
    while (i < body.size()) {
      if (std::isspace(static_cast<unsigned char>(body[i]))) {
        ++i;
        continue;
      }
      if (body[i] != '(') syntax(line, body_col + i, "expected '(' starting a factor");
      int depth = 0;
      size_t j = i;
      for (; j < body.size(); ++j) {
        if (body[j] == '(') ++depth;
        if (body[j] == ')' && --depth == 0) break;
      }
      if (j >= body.size()) syntax(line, body_col + i, "unbalanced parentheses");
      fl.factors.push_back(ExprParser(fx, body.substr(i + 1, j - i - 1), line, body_col + i + 1).parse());
      i = j + 1;
    }
    if (fl.factors.empty()) syntax(line, body_col, "empty factor list");
    try {
      FactorSource probe;
      probe.add_list(*fx.K, fx.poly(name), fl.factors);
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line) + ": " + e.what());
    }
    fx.factors.push_back(std::move(fl));
  }
  if (!have_ring) throw Error("SYNTAX", "no ring declaration");
  return fx;
}

Fixture load_fixture(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("IO", "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_fixture(ss.str());
}

std::string serialize(const Fixture& fx) {
  std::ostringstream os;
  const auto& R = fx.ring;
  os << "ring rank=" << R.rank() << " vars=";
  for (int i = 0; i < R.nvars(); ++i) os << (i ? "," : "") << R.names()[i];
  if (fx.explicit_weights) {
    os << " weights=";
    for (int i = 0; i < R.nvars(); ++i) os << (i ? ";" : "") << R.weights()[i].str();
  }
  os << "\n";
  for (const auto& n : fx.order) os << "poly " << n << " = " << fx.str(fx.polys.at(n)) << "\n";
  for (const auto& fl : fx.factors) {
    os << "factors " << fl.name << " = ";
    for (const auto& g : fl.factors) os << "(" << fx.str(g) << ")";
    os << "\n";
  }
  for (const auto& e : fx.expects) os << "expect " << e.tag << " " << e.name << " = " << e.value << "\n";
  return os.str();
}

}  // namespace valq
