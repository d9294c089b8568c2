#include "valq/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <sstream>

#include "valq/error.hpp"
#include "valq/extend.hpp"
#include "valq/fixture.hpp"

namespace valq {

namespace {

struct Opts {
  std::string command, fixture;
  std::string poly = "F", h = "h", points, format = "text";
  int steps = 8, window = 3, depth = -1;
  bool elements = false;
};

const std::vector<std::string> kCommands = {"newton", "classify", "psi",    "fstar", "goodvar",
                                            "extend", "approx",   "ok",     "check"};

std::string flag_str(const StepCheck& c) {
  std::string s;
  s += c.doubling ? "doubling" : "DOUBLING_FAIL";
  s += c.value_eq ? ",value_eq" : ",VALUE_EQ_FAIL";
  s += c.nagata ? ",nagata" : ",NAGATA_FAIL";
  return s;
}

Budgets budgets(const Opts& o) {
  Budgets b;
  b.B = o.steps;
  b.W = o.window;
  b.D = o.depth;
  return b;
}

int cmd_newton(const Opts& o, const Fixture& fx, const LevelPtr& L, std::ostream& out) {
  const UPoly& F = fx.poly(o.poly);
  NewtonTrace& T = L->trace(F);
  T.run_to(static_cast<size_t>(o.steps));
  bool tsv = o.format == "tsv";
  if (tsv) out << "step\tnu_delta\tnu_sigma\tflags\n";
  for (size_t i = 0; i < T.steps(); ++i) {
    if (tsv) {
      out << i << '\t' << T.nu_delta[i].str() << '\t' << T.nu_sigma[i].str() << '\t'
          << flag_str(T.checks[i]) << '\n';
      continue;
    }
    out << "step " << i << "  nu(delta)=" << T.nu_delta[i].str() << "  nu(sigma)=" << T.nu_sigma[i].str()
        << "  " << flag_str(T.checks[i]) << '\n';
    if (o.elements) {
      out << "  delta_" << i << " = " << L->str(T.delta[i]) << '\n';
      out << "  sigma_" << i + 1 << " = " << L->str(T.sigma[i + 1]) << '\n';
    }
  }
  if (T.exact_root())
    out << (tsv ? "# " : "") << "EXACT_ROOT at step " << T.root_index << ": sigma = "
        << L->str(T.sigma[T.root_index]) << '\n';
  return 0;
}

std::string values_str(const std::vector<GroupValue>& vs) {
  std::string s;
  for (size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + vs[i].str();
  return s;
}

int cmd_classify(const Opts& o, const Fixture& fx, const LevelPtr& L, std::ostream& out) {
  auto c = classify(*L, fx.poly(o.poly), fx.poly(o.h), o.steps, o.window);
  out << c.str() << '\n';
  out << "values " << values_str(c.values) << '\n';
  return c.kind == ClassKind::INCONCLUSIVE ? 2 : 0;
}

int cmd_psi(const Opts& o, const Fixture& fx, const LevelPtr& L, std::ostream& out) {
  auto p = psi_F(*L, fx.poly(o.poly), o.steps);
  out << "level=" << p.psi.level << " certainty=" << (p.exact ? "EXACT" : "OBSERVED")
      << " stabilized_at=" << p.stabilized_at << " monotone=" << (p.monotone ? "yes" : "no") << '\n';
  out << "hulls";
  for (int h : p.hulls) out << ' ' << h;
  out << '\n';
  return 0;
}

int cmd_fstar(const Opts& o, const Fixture& fx, const LevelPtr& L, std::ostream& out) {
  auto fs = fstar(*L, fx.poly(o.poly), fx.oracle());
  out << "F* = " << L->str(fs.f) << '\n';
  out << "source=" << fs.source << " factors=";
  for (size_t i = 0; i < fs.factors.size(); ++i) out << "(" << L->str(fs.factors[i]) << ")";
  out << '\n';
  return 0;
}

int cmd_goodvar(const Opts& o, const Fixture& fx, const LevelPtr& L, std::ostream& out) {
  auto gv = good_variable(*L, fx.poly(o.poly), budgets(o), fx.oracle());
  out << "alpha=" << L->str(gv.alpha) << '\n';
  out << "F_alpha=" << L->str(gv.F_alpha) << '\n';
  out << "psi=" << gv.psi.psi.level << (gv.psi.exact ? " EXACT" : " OBSERVED") << '\n';
  for (const auto& s : gv.log) out << "  " << s << '\n';
  return 0;
}

int cmd_extend(const Opts& o, const Fixture& fx, const LevelPtr& L, std::ostream& out) {
  auto r = extend_value(L, fx.poly(o.poly), fx.poly(o.h), budgets(o), fx.oracle());
  out << "value=" << r.value.str() << " depth=" << r.depth
      << " witness=" << r.witness_str(fx.ring.names()) << '\n';
  for (const auto& s : r.log) out << "  " << s << '\n';
  return 0;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_approx(const Opts& o, const Fixture& fx, const LevelPtr& L, std::ostream& out) {
  std::vector<std::pair<std::string, Elem>> cs;
  for (const auto& n : split(o.points, ',')) cs.emplace_back(n, fx.elem(n));
  UPoly h = fx.has(o.h) && o.h != "h" ? fx.poly(o.h) : up::x(*fx.K);
  auto p = approx_profile(L, fx.poly(o.poly), h, up::constant(fx.K->one()), cs, budgets(o),
                          fx.oracle());
  out << "d " << values_str(p.d) << '\n';
  if (p.certified)
    out << "coset certified k=" << p.k << " phi=" << p.phi.str() << " psi=" << p.psi.level << '\n';
  else
    out << "coset INCONCLUSIVE psi=" << p.psi.level << '\n';
  for (const auto& pt : p.points)
    out << "point " << pt.label << " value=" << pt.value.str() << (pt.below ? " below" : " NOT_BELOW")
        << '\n';
  return p.certified ? 0 : 2;
}

int cmd_ok(const Opts& o, const Fixture& fx, const LevelPtr& L, std::ostream& out) {
  const UPoly& F = fx.poly(o.poly);
  const UPoly& h = fx.poly(o.h);
  auto hm = up::taylor_shift(L->K(), h, L->K().zero());
  std::vector<OkTerm> terms;
  for (size_t m = 1; m < hm.size(); ++m) {
    if (hm[m].is_zero()) continue;
    auto r = extend_value(L, F, hm[m], budgets(o), fx.oracle());
    terms.push_back({r.value, static_cast<int64_t>(m)});
    out << "beta_" << m << "=" << r.value.str() << '\n';
  }
  if (terms.empty()) throw Error("ZERO_POLY", "h is constant");
  NewtonTrace& T = L->trace(F);
  T.run_to(static_cast<size_t>(o.steps));
  std::vector<GroupValue> gamma(T.nu_delta.begin(), T.nu_delta.end());
  auto res = ok_stabilize(terms, gamma);
  if (res.inconclusive) {
    out << "INCONCLUSIVE\n";
    return 2;
  }
  out << "iota=" << res.iota << " order=";
  for (size_t i = 0; i < res.order.size(); ++i) out << (i ? "," : "") << "m" << terms[res.order[i]].t;
  out << '\n';
  return 0;
}

int cmd_check(const Opts& o, const Fixture& fx, const LevelPtr& L, std::ostream& out) {
  const UPoly& F = fx.poly(o.poly);
  std::vector<std::pair<std::string, bool>> rows;
  auto nc = is_nagata(*L, F);
  rows.emplace_back("nagata_input", nc.ok);
  if (!nc.ok) {
    for (const auto& [n, ok] : rows) out << n << '\t' << (ok ? "PASS" : "FAIL") << '\n';
    return 1;
  }
  NewtonTrace& T = L->trace(F);
  T.run_to(static_cast<size_t>(o.steps));
  bool dbl = true, veq = true, nag = true;
  for (const auto& c : T.checks) {
    dbl = dbl && c.doubling;
    veq = veq && c.value_eq;
    nag = nag && c.nagata;
  }
  rows.emplace_back("doubling", dbl);
  rows.emplace_back("value_eq", veq);
  rows.emplace_back("nagata_steps", nag);
  rows.emplace_back("an2_divisibility", T.divisible_an2);
  rows.emplace_back("an2_value", T.value_an2);
  rows.emplace_back("congruence_mod_delta0", T.congruence);
  if (!T.exact_root() && T.sigma.size() >= 3) {
    auto rep = sequence_checks(*L, T.sigma);
    rows.emplace_back("pseudo_convergence", rep.pseudo_convergent);
    rows.emplace_back("psi_monotone", psi_F(*L, F, o.steps).monotone);
  }
  auto fresh = Level::base(fx.ring);
  NewtonTrace& T2 = fresh->trace(F);
  T2.run_to(static_cast<size_t>(o.steps));
  bool same = T2.steps() == T.steps();
  for (size_t i = 0; same && i < T.steps(); ++i)
    same = L->str(T.delta[i]) == fresh->str(T2.delta[i]) && T.nu_delta[i] == T2.nu_delta[i];
  rows.emplace_back("determinism", same);
  bool all = true;
  for (const auto& [n, ok] : rows) {
    out << n << '\t' << (ok ? "PASS" : "FAIL") << '\n';
    all = all && ok;
  }
  return all ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"valq: extended values of valuations through Nagata extensions"};
  app.set_help_flag("--help", "print help");
  Opts o;
  app.add_option("command", o.command, "newton|classify|psi|fstar|goodvar|extend|approx|ok|check")
      ->required();
  app.add_option("fixture", o.fixture, "fixture file")->required();
  app.add_option("--poly", o.poly, "Nagata polynomial name");
  app.add_option("--h", o.h, "polynomial h name");
  app.add_option("--steps,--budget", o.steps, "Newton budget B")->check(CLI::PositiveNumber);
  app.add_option("--window", o.window, "certification window W")->check(CLI::PositiveNumber);
  app.add_option("--max-depth", o.depth, "maximal tower depth (default rank)");
  app.add_option("--points", o.points, "comma separated X-free polynomial names");
  app.add_option("--format", o.format, "text|tsv")->check(CLI::IsMember({"text", "tsv"}));
  app.add_flag("--elements", o.elements, "print delta and sigma in newton output");
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (std::find(kCommands.begin(), kCommands.end(), o.command) == kCommands.end()) {
    err << "error: unknown command " << o.command << '\n';
    return 1;
  }
  try {
    Fixture fx = load_fixture(o.fixture);
    auto L = Level::base(fx.ring);
    const std::string& c = o.command;
    if (c == "newton") return cmd_newton(o, fx, L, out);
    if (c == "classify") return cmd_classify(o, fx, L, out);
    if (c == "psi") return cmd_psi(o, fx, L, out);
    if (c == "fstar") return cmd_fstar(o, fx, L, out);
    if (c == "goodvar") return cmd_goodvar(o, fx, L, out);
    if (c == "extend") return cmd_extend(o, fx, L, out);
    if (c == "approx") return cmd_approx(o, fx, L, out);
    if (c == "ok") return cmd_ok(o, fx, L, out);
    return cmd_check(o, fx, L, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == "INCONCLUSIVE" ? 2 : 1;
  }
}

}  // namespace valq
