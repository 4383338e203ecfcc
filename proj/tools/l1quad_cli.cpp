// Command-line front end: integrate, bound, verify, means, convergence.
//
// Exit codes: 0 success, 1 verification found violations, 2 usage or domain error.
// Reports are JSON on stdout; errors are a JSON object on stderr.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "l1quad/l1quad.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace l1quad;

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json base_report(const std::string& command, Json inputs) {
  Json r;
  r["command"] = command;
  r["inputs"] = std::move(inputs);
  r["outputs"] = Json::object();
  r["meta"] = {{"seed", nullptr}, {"version", kVersion}, {"wallTimeSeconds", 0.0}};
  return r;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number in list: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw UsageError("bad number in list: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

Json interval_table(const std::vector<IntervalReport>& parts) {
  Json rows = Json::array();
  for (const IntervalReport& p : parts) {
    rows.push_back({{"left", p.left},
                    {"right", p.right},
                    {"xi", p.xi},
                    {"estimate", p.estimate},
                    {"bound", p.bound},
                    {"l1", p.l1}});
  }
  return rows;
}

// ---------------------------------------------------------------------------

struct IntegrateArgs {
  std::string expr;
  double a = 0.0, b = 1.0;
  std::size_t n = 0;
  std::string breakpoints;
  double delta = 0.0;
  std::string xi = "mid";
  std::string bound_mode = "tight";
  bool oracle = false;
  bool csv = false;
  bool adaptive = false;
  double eps = 1e-6;
  std::size_t max_intervals = kDefaultIntervalCap;
};

int cmd_integrate(const IntegrateArgs& args, Json& report, std::ostream& out) {
  const Expr e = parse(args.expr);
  const DifferentiableFunction fn = to_differentiable(e);

  RuleConfig cfg;
  cfg.delta = args.delta;
  if (args.xi == "mid") cfg.xi = XiStrategy::midpoint;
  else if (args.xi == "left") cfg.xi = XiStrategy::left_admissible;
  else cfg.xi = XiStrategy::right_admissible;
  cfg.bound_mode = args.bound_mode == "paper" ? BoundMode::paper_aggregate : BoundMode::per_interval_norms;

  CompositeResult res;
  double a = args.a, b = args.b;
  if (args.adaptive) {
    res = adaptive_integrate(fn, a, b, args.eps, cfg, args.max_intervals);
  } else {
    std::optional<Partition> p;
    if (!args.breakpoints.empty()) {
      if (args.n != 0) throw UsageError("--n and --breakpoints are mutually exclusive");
      p.emplace(parse_list(args.breakpoints));
      a = p->a();
      b = p->b();
    } else {
      p.emplace(Partition::uniform(a, b, args.n == 0 ? 1 : args.n));
    }
    res = composite_rule(fn, *p, cfg);
  }

  report["inputs"] = {{"expr", args.expr},
                      {"a", a},
                      {"b", b},
                      {"n", args.adaptive ? Json(nullptr) : Json(res.per_interval.size())},
                      {"delta", cfg.delta},
                      {"xi", args.xi},
                      {"boundMode", args.bound_mode},
                      {"adaptive", args.adaptive},
                      {"eps", args.adaptive ? Json(args.eps) : Json(nullptr)}};
  Json& o = report["outputs"];
  o["estimate"] = res.estimate;
  o["certifiedBound"] = res.certified_bound;
  o["perIntervalBound"] = res.per_interval_bound;
  o["aggregateBound"] = res.aggregate_bound;
  o["globalL1"] = res.global_l1;
  o["intervals"] = res.per_interval.size();
  if (args.adaptive) o["capReached"] = res.cap_reached;
  if (args.oracle) {
    const double ref = reference_integrate(fn.f, a, b, kReferenceTolerance);
    o["reference"] = ref;
    o["actualError"] = std::abs(ref - res.estimate);
  }
  o["perInterval"] = interval_table(res.per_interval);

  if (args.csv) {
    out << "left,right,xi,estimate,bound,l1\n";
    for (const IntervalReport& p : res.per_interval) {
      out << csv_number(p.left) << ',' << csv_number(p.right) << ',' << csv_number(p.xi) << ','
          << csv_number(p.estimate) << ',' << csv_number(p.bound) << ',' << csv_number(p.l1) << '\n';
    }
    return 0;
  }
  return -1;  // caller prints JSON
}

// ---------------------------------------------------------------------------

struct BoundArgs {
  std::string expr;
  double a = 0.0, b = 1.0, h = 0.0;
  std::optional<double> x;
  std::string form = "tight";
  bool oracle = false;
};

int cmd_bound(const BoundArgs& args, Json& report) {
  if (!(args.h >= 0.0 && args.h <= 1.0)) throw DomainError("h must lie in [0,1]");
  if (!(args.a < args.b)) throw DomainError("bound needs a < b");
  const DifferentiableFunction fn = to_differentiable(parse(args.expr));
  const double a = args.a, b = args.b, h = args.h;
  const double mid = 0.5 * (a + b);
  const double x = args.x.value_or(mid);
  const std::string& form = args.form;

  auto l1_second = [&] { return l1_norm(fn.d2f, a, b).value; };
  BoundReport bound;
  double rule = 0.0;
  std::string norm_kind = "l1OfSecond";
  if (form == "tight" || form == "tight-as-printed" || form == "coarse" || form == "paper-coarse") {
    const RulePoint rp(a, b, h, x);
    const double l1 = l1_second();
    rule = single_rule(fn, rp);
    if (form == "tight") bound = tight_bound(rp, l1);
    else if (form == "tight-as-printed") bound = tight_bound_as_printed(rp, l1);
    else bound = coarse_bound(a, b, h, l1, form == "coarse" ? CoarseForm::corrected : CoarseForm::paper);
    bound.inputs.x = rp.x();
  } else if (form == "midpoint" || form == "midpoint-as-printed") {
    const double l1 = l1_second();
    rule = single_rule(fn, RulePoint(a, b, h, mid));
    bound = form == "midpoint" ? midpoint_bound(a, b, h, l1) : midpoint_bound_as_printed(a, b, h, l1);
  } else if (form == "trapezoid-h1") {
    rule = single_rule(fn, RulePoint(a, b, 1.0, mid));
    bound = trapezoid_special_bound(a, b, l1_second());
  } else if (form == "averaged-endpoint") {
    rule = averaged_endpoint_rule(fn, a, b, h);
    bound = averaged_endpoint_bound(a, b, h, l1_second());
  } else if (form == "as-printed-eq13") {
    rule = averaged_endpoint_rule(fn, a, b, 0.0);
    norm_kind = "supOfSecond";
    bound = perturbed_trapezoid_as_printed_eq13(a, b, sup_norm(fn.d2f, a, b, NormKind::sup_of_second).value);
  } else if (form == "barnett") {
    rule = single_rule(fn, RulePoint(a, b, 0.0, x));
    bound = classical_bound(ClassicalKind::barnett_l1, a, b, x, l1_second());
  } else if (form == "ostrowski") {
    if (!(x >= a && x <= b)) throw DomainError("x must lie in [a,b]");
    rule = (b - a) * fn.f(x);
    norm_kind = "supOfFirst";
    bound = classical_bound(ClassicalKind::ostrowski_sup, a, b, x, sup_norm(fn.df, a, b).value);
  } else if (form == "dragomir-wang") {
    if (!(x >= a && x <= b)) throw DomainError("x must lie in [a,b]");
    rule = (b - a) * fn.f(x);
    norm_kind = "l1OfFirst";
    bound = classical_bound(ClassicalKind::dragomir_wang_l1, a, b, x,
                            l1_norm(fn.df, a, b, kDefaultNormTolerance, NormKind::l1_of_first).value);
  } else {
    throw UsageError("unknown --form " + form);
  }

  report["inputs"] = {{"expr", args.expr}, {"a", a}, {"b", b}, {"h", h}, {"x", x}, {"form", form}};
  Json& o = report["outputs"];
  o["bound"] = bound.value;
  o["formula"] = std::string(formula_name(bound.formula));
  o["norm"] = bound.inputs.norm;
  o["normKind"] = norm_kind;
  o["ruleValue"] = rule;
  o["effectiveX"] = number(bound.inputs.x);
  if (args.oracle) {
    const double ref = reference_integrate(fn.f, a, b, kReferenceTolerance);
    o["reference"] = ref;
    o["residual"] = std::abs(ref - rule);
    o["holds"] = std::abs(ref - rule) <= bound.value + kBoundSlack * (1.0 + bound.value);
  }
  return -1;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::uint64_t seed = 42;
  std::size_t samples = 200;
  std::string corpus = "builtin";
};

int cmd_verify(const VerifyArgs& args, Json& report) {
  std::vector<CorpusEntry> corpus;
  if (args.corpus == "builtin") {
    corpus = builtin_corpus();
  } else if (args.corpus.rfind("file:", 0) == 0) {
    corpus = load_corpus(args.corpus.substr(5));
  } else {
    throw UsageError("--corpus must be 'builtin' or 'file:<path>'");
  }
  const VerificationReport vr = run_verification(corpus, args.seed, args.samples);

  Json functions = Json::array();
  for (const CorpusEntry& c : corpus) functions.push_back({{"expr", c.expr}, {"lo", c.lo}, {"hi", c.hi}});
  report["inputs"] = {{"seed", args.seed}, {"samples", args.samples}, {"corpus", args.corpus},
                      {"functions", functions}};
  report["meta"]["seed"] = args.seed;

  auto tallies = [](const std::map<std::string, CheckTally>& m) {
    Json j = Json::object();
    for (const auto& [name, t] : m) {
      j[name] = {{"draws", t.draws}, {"violations", t.violations}, {"worstRatio", t.worst_ratio}};
    }
    return j;
  };
  Json violations = Json::array();
  for (const Violation& v : vr.violations) {
    Json in = Json::object();
    for (const auto& [k, val] : v.inputs) in[k] = val;
    violations.push_back({{"check", v.check},
                          {"function", v.function},
                          {"inputs", in},
                          {"observed", v.observed},
                          {"limit", v.limit}});
  }
  Json& o = report["outputs"];
  o["violationCount"] = vr.violation_count();
  o["checks"] = tallies(vr.checks);
  o["informational"] = tallies(vr.informational);
  o["violations"] = violations;
  return vr.violation_count() == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct MeansArgs {
  double a = 1.0, b = 2.0;
  bool table = false;
  std::string family;
  double r = 2.0;
  double h = 0.0;
  std::optional<double> x;
  std::optional<double> p;
};

Json means_report_json(const MeansInequalityReport& m) {
  return {{"family", std::string(family_name(m.family))},
          {"a", m.a},
          {"b", m.b},
          {"h", m.h},
          {"x", m.x},
          {"r", number(m.r)},
          {"lhs", m.lhs},
          {"rhs", m.rhs},
          {"holds", m.holds},
          {"normFactor", m.norm_factor},
          {"rhsAsPrinted", m.rhs_as_printed},
          {"printedNormFactor", m.printed_norm_factor},
          {"holdsAsPrinted", m.lhs <= m.rhs_as_printed + 1e-12 * (1.0 + m.rhs_as_printed)}};
}

int cmd_means(const MeansArgs& args, Json& report) {
  if (!(args.a > 0.0)) throw DomainError("means need a > 0");
  if (!(args.a < args.b)) throw DomainError("means need a < b");
  if (!args.table && args.family.empty()) throw UsageError("means needs --table or --family");
  const double am = 0.5 * (args.a + args.b);
  const double x = args.x.value_or(am);

  Json inputs = {{"a", args.a}, {"b", args.b}, {"table", args.table}};
  Json& o = report["outputs"];
  if (args.table) {
    Json t = Json::object();
    for (MeanKind k : {MeanKind::arithmetic, MeanKind::geometric, MeanKind::harmonic,
                       MeanKind::logarithmic, MeanKind::identric}) {
      t[std::string(mean_name(k))] = special_mean(k, args.a, args.b).value;
    }
    if (args.p) {
      inputs["p"] = *args.p;
      t["L_p"] = special_mean(MeanKind::generalized_log, args.a, args.b, *args.p).value;
    }
    o["means"] = t;
  }
  if (!args.family.empty()) {
    inputs["family"] = args.family;
    inputs["h"] = args.h;
    inputs["x"] = x;
    MeansInequalityReport m;
    if (args.family == "power") {
      inputs["r"] = args.r;
      m = power_mean_inequality(args.a, args.b, args.r, args.h, x);
    } else if (args.family == "reciprocal") {
      m = reciprocal_inequality(args.a, args.b, args.h, x);
    } else if (args.family == "log") {
      m = log_mean_inequality(args.a, args.b, args.h, x);
      const IdentricRatioBound ir = identric_ratio_bound(args.a, args.b);
      o["identricRatio"] = {{"logAOverI", ir.log_ratio}, {"bound", ir.bound}, {"holds", ir.holds}};
    } else {
      throw UsageError("unknown --family " + args.family);
    }
    o["inequality"] = means_report_json(m);
  }
  report["inputs"] = inputs;
  return -1;
}

// ---------------------------------------------------------------------------

struct ConvergenceArgs {
  std::string expr;
  double a = 0.0, b = 1.0;
  std::string rule = "midpoint";
  int levels = 6;
  double delta = 0.5;
  bool csv = false;
};

int cmd_convergence(const ConvergenceArgs& args, Json& report, std::ostream& out) {
  if (args.levels < 1 || args.levels > 30) throw UsageError("--levels must lie in [1,30]");
  const DifferentiableFunction fn = to_differentiable(parse(args.expr));
  const double ref = reference_integrate(fn.f, args.a, args.b, kReferenceTolerance);

  Json rows = Json::array();
  if (args.csv) out << "n,estimate,actual_error,certified_bound,bound_ratio\n";
  Partition p = Partition::uniform(args.a, args.b, 1);
  double previous = std::nan("");
  for (int level = 0; level < args.levels; ++level) {
    CompositeResult res;
    if (args.rule == "midpoint") {
      res = perturbed_midpoint(fn, p);
    } else if (args.rule == "trapezoid") {
      res = perturbed_trapezoid(fn, p);
    } else {
      RuleConfig cfg;
      cfg.delta = args.delta;
      res = composite_rule(fn, p, cfg);
    }
    const double err = std::abs(ref - res.estimate);
    const double ratio = previous / res.certified_bound;
    rows.push_back({{"n", p.intervals()},
                    {"estimate", res.estimate},
                    {"actualError", err},
                    {"certifiedBound", res.certified_bound},
                    {"boundRatio", number(ratio)}});
    if (args.csv) {
      out << p.intervals() << ',' << csv_number(res.estimate) << ',' << csv_number(err) << ','
          << csv_number(res.certified_bound) << ',' << csv_number(ratio) << '\n';
    }
    previous = res.certified_bound;
    if (level + 1 < args.levels) p = p.refined();
  }
  report["inputs"] = {{"expr", args.expr}, {"a", args.a},         {"b", args.b},
                      {"rule", args.rule}, {"levels", args.levels}, {"delta", args.delta}};
  report["outputs"]["reference"] = ref;
  report["outputs"]["rows"] = rows;
  return args.csv ? 0 : -1;
}

void print_error(const std::string& type, const std::string& message,
                 std::optional<std::size_t> offset = std::nullopt) {
  Json err = {{"type", type}, {"message", message}};
  if (offset) err["offset"] = *offset;
  std::cerr << Json{{"error", err}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified quadrature with L1 second-derivative error bounds"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  IntegrateArgs ia;
  auto* integrate = app.add_subcommand("integrate", "Composite perturbed rule with certificate");
  integrate->add_option("--expr", ia.expr, "f(x)")->required();
  integrate->add_option("--a", ia.a, "left end");
  integrate->add_option("--b", ia.b, "right end");
  integrate->add_option("--n", ia.n, "uniform partition size");
  integrate->add_option("--breakpoints", ia.breakpoints, "comma-separated x0,...,xn");
  integrate->add_option("--delta", ia.delta, "perturbation parameter in [0,1]");
  integrate->add_option("--xi", ia.xi, "intermediate points")->check(CLI::IsMember({"mid", "left", "right"}));
  integrate->add_option("--bound-mode", ia.bound_mode, "tight: per-interval norms; paper: global norm")
      ->check(CLI::IsMember({"tight", "paper"}));
  integrate->add_flag("--oracle", ia.oracle, "also compute the reference integral");
  integrate->add_flag("--json", "JSON output (default)");
  integrate->add_flag("--csv", ia.csv, "per-interval CSV instead of JSON");
  integrate->add_flag("--adaptive", ia.adaptive, "refine until the certificate is below --eps");
  integrate->add_option("--eps", ia.eps, "target certified bound for --adaptive");
  integrate->add_option("--max-intervals", ia.max_intervals, "interval cap for --adaptive");

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Single-interval error bound");
  bound->add_option("--expr", ba.expr, "f(x)")->required();
  bound->add_option("--a", ba.a);
  bound->add_option("--b", ba.b);
  bound->add_option("--h", ba.h, "perturbation parameter in [0,1]");
  bound->add_option("--x", ba.x, "evaluation point (default midpoint)");
  bound->add_option("--form", ba.form)
      ->check(CLI::IsMember({"tight", "coarse", "paper-coarse", "midpoint", "trapezoid-h1", "barnett",
                             "ostrowski", "dragomir-wang", "tight-as-printed", "midpoint-as-printed",
                             "averaged-endpoint", "as-printed-eq13"}));
  bound->add_flag("--oracle", ba.oracle, "also compute the actual residual");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Randomised check of every certificate");
  verify->add_option("--seed", va.seed);
  verify->add_option("--samples", va.samples, "draws per function and check");
  verify->add_option("--corpus", va.corpus, "builtin or file:<path>");

  MeansArgs ma;
  auto* means = app.add_subcommand("means", "Special means and their inequalities");
  means->add_option("--a", ma.a);
  means->add_option("--b", ma.b);
  means->add_flag("--table", ma.table, "print A, G, H, L, I (and L_p with --p)");
  means->add_option("--family", ma.family)->check(CLI::IsMember({"power", "reciprocal", "log"}));
  means->add_option("--r", ma.r, "exponent for the power family");
  means->add_option("--h", ma.h);
  means->add_option("--x", ma.x, "evaluation point (default A)");
  means->add_option("--p", ma.p, "exponent of the generalized logarithmic mean");

  ConvergenceArgs ca;
  auto* convergence = app.add_subcommand("convergence", "Error and certificate under uniform refinement");
  convergence->add_option("--expr", ca.expr, "f(x)")->required();
  convergence->add_option("--a", ca.a);
  convergence->add_option("--b", ca.b);
  convergence->add_option("--rule", ca.rule)->check(CLI::IsMember({"midpoint", "trapezoid", "composite"}));
  convergence->add_option("--levels", ca.levels, "n = 1, 2, ..., 2^(levels-1)");
  convergence->add_option("--delta", ca.delta, "delta for --rule composite");
  convergence->add_flag("--csv", ca.csv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Json report;
  int code = 0;
  try {
    if (*integrate) {
      report = base_report("integrate", {});
      code = cmd_integrate(ia, report, std::cout);
    } else if (*bound) {
      report = base_report("bound", {});
      code = cmd_bound(ba, report);
    } else if (*verify) {
      report = base_report("verify", {});
      code = cmd_verify(va, report);
    } else if (*means) {
      report = base_report("means", {});
      code = cmd_means(ma, report);
    } else {
      report = base_report("convergence", {});
      code = cmd_convergence(ca, report, std::cout);
    }
  } catch (const ParseError& e) {
    print_error("parse", e.what(), e.offset());
    return 2;
  } catch (const DomainError& e) {
    print_error("domain", e.what());
    return 2;
  } catch (const ConvergenceError& e) {
    print_error("convergence", e.what());
    return 2;
  } catch (const UsageError& e) {
    print_error("usage", e.what());
    return 2;
  }

  if (code == -1 || *verify) {
    report["meta"]["wallTimeSeconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << report.dump(2) << '\n';
  }
  return code < 0 ? 0 : code;
}
