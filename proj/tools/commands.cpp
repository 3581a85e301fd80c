#include "commands.hpp"

#include <algorithm>
#include <sstream>

#include "nonarch/critical.hpp"
#include "nonarch/errors.hpp"
#include "nonarch/expr.hpp"
#include "nonarch/fibration.hpp"
#include "nonarch/quantum.hpp"
#include "nonarch/selftest.hpp"

namespace cli {

using nlohmann::ordered_json;
using namespace nonarch;

namespace {

std::string fmt(const RunConfig& cfg, const char* fallback) { return cfg.format.empty() ? fallback : cfg.format; }

ordered_json report(const RunConfig& cfg, ordered_json inputs, ordered_json results, ordered_json residuals,
                    const std::string& status) {
  ordered_json j;
  j["config"] = config_json(cfg);
  j["inputs"] = std::move(inputs);
  j["results"] = std::move(results);
  j["residuals"] = std::move(residuals);
  j["status"] = status;
  return j;
}

std::string render_json(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json scalars(const std::vector<NovikovScalar>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

int code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownName:
    case ErrorCode::InvalidArgument:
      return kUsage;
    case ErrorCode::PrecisionLoss:
    case ErrorCode::TruncatedZero:
    case ErrorCode::NoConvergenceAtOrder:
    case ErrorCode::DivergenceAtCutoff:
    case ErrorCode::RamificationDepthExceeded:
      return kPrecision;
    default:
      return kVerification;
  }
}

// lowest known residual term over all coordinates, or "none"
std::string residual_bound(const std::vector<NovikovScalar>& r) {
  RatInf lo = RatInf::infinity();
  for (const auto& x : r)
    if (x.has_terms()) lo = std::min(lo, x.valuation());
  return lo.is_inf() ? "none" : lo.str();
}

}  // namespace

ordered_json config_json(const RunConfig& cfg) {
  ordered_json c;
  c["order"] = cfg.order.str();
  c["tau_c"] = cfg.tau_c;
  c["ramification_depth"] = cfg.depth;
  c["seed"] = cfg.seed;
  return c;
}

Outcome error_outcome(const RunConfig& cfg, const char* default_format, const std::string& command,
                      const ordered_json& inputs, const std::exception& e) {
  Outcome o;
  const auto* err = dynamic_cast<const Error*>(&e);
  o.code = err ? code_for(*err) : kVerification;
  const std::string f = fmt(cfg, default_format);
  if (f == "json") {
    ordered_json res;
    res["command"] = command;
    res["error"] = e.what();
    if (err) res["code"] = error_name(err->code());
    o.text = render_json(report(cfg, inputs, res, ordered_json::object(), "error"));
  } else {
    o.text = std::string("error: ") + e.what() + "\n";
    o.to_stderr = true;
  }
  return o;
}

Outcome cmd_folklore(const RunConfig& cfg, const FolkloreArgs& a) {
  ordered_json inputs;
  inputs["space"] = a.space;
  std::string name;
  std::vector<std::string> names;  // x1 is eliminated in the two charts
  std::vector<Rational> params;
  Rational emax;
  QuantumRing ring = qh_projective(1, Rational(1));
  try {
    if (a.space == "cp2") {
      name = "cp2_chart";
      names = {"x0", "y"};
      params = {a.energy};
      inputs["energy"] = a.energy.str();
      ring = qh_projective(2, a.energy);
      emax = a.energy;
    } else if (a.space == "p1xp1") {
      name = "p1xp1_chart";
      names = {"x0", "y"};
      params = {a.e1, a.e2};
      inputs["e1"] = a.e1.str();
      inputs["e2"] = a.e2.str();
      ring = qh_tensor(qh_projective(1, a.e1), qh_projective(1, a.e2));
      emax = std::max(a.e1, a.e2);
    } else if (a.space == "cpn") {
      name = "clifford_cpn";
      params = {Rational(a.n), a.energy};
      inputs["n"] = a.n;
      inputs["energy"] = a.energy.str();
      ring = qh_projective(a.n, a.energy);
      emax = a.energy;
    } else {
      throw Error(ErrorCode::UnknownName, "no space " + a.space);
    }
    // built-in potentials are polynomials; the cutoff only has to clear their terms
    LaurentSeries W = builtin_potential(name, params, cfg.order + emax + Rational(2));
    CriticalSystem sys(W);
    std::vector<TorusPoint> pts;
    for (const auto& s : builtin_seeds(name, params)) pts.push_back(newton_lift(sys, s, cfg.order));
    auto values = critical_values(W, pts, cfg.order);
    auto eig = c1_eigenvalues(ring, cfg.order);
    for (const auto* set : {&values, &eig})
      for (const auto& v : *set)
        if (!v.has_terms() && !v.order().is_inf())
          throw Error(ErrorCode::PrecisionLoss, "order " + cfg.order.str() + " truncates a value to " + v.str_with_order());
    FolkloreReport m = folklore_match(values, eig, cfg.tau_c);

    ordered_json points = ordered_json::array(), pres = ordered_json::array(), pairs = ordered_json::array();
    for (const auto& y : pts) {
      points.push_back(scalars(y.coords));
      pres.push_back(residual_bound(critical_residual(sys, y, cfg.order)));
    }
    double worst = 0;
    for (const auto& p : m.pairs) {
      pairs.push_back({{"critical", p.critical}, {"eigenvalue", p.eigenvalue}, {"distance", p.distance}});
      worst = std::max(worst, p.distance);
    }
    ordered_json results;
    results["potential"] = W.str(names);
    results["critical_points"] = points;
    results["critical_values"] = scalars(values);
    results["eigenvalues"] = scalars(eig);
    results["pairs"] = pairs;
    results["unmatched"] = m.unmatched;
    ordered_json residuals;
    residuals["critical_residual_lowest_term"] = pres;
    residuals["max_pair_distance"] = worst;
    const std::string status = m.success() ? "match" : "mismatch";

    Outcome o;
    o.code = m.success() ? kOk : kVerification;
    const std::string f = fmt(cfg, "json");
    if (f == "json") {
      o.text = render_json(report(cfg, inputs, results, residuals, status));
    } else if (f == "csv") {
      std::ostringstream s;
      s << "critical_value,eigenvalue,distance\n";
      for (const auto& p : m.pairs) s << values[p.critical].str() << "," << eig[p.eigenvalue].str() << "," << p.distance << "\n";
      for (int u : m.unmatched) s << values[u].str() << ",,\n";
      o.text = s.str();
    } else {
      std::ostringstream s;
      s << "W = " << W.str(names) << "\n";
      s << "critical values:\n";
      for (const auto& v : values) s << "  " << v.str() << "\n";
      s << "eigenvalues of c1:\n";
      for (const auto& v : eig) s << "  " << v.str() << "\n";
      for (const auto& p : m.pairs) s << "  " << values[p.critical].str() << "  <->  " << eig[p.eigenvalue].str() << "\n";
      for (int u : m.unmatched) s << "  unmatched: " << values[u].str() << "\n";
      s << status << "\n";
      o.text = s.str();
    }
    return o;
  } catch (const std::exception& e) {
    return error_outcome(cfg, "json", "folklore", inputs, e);
  }
}

Outcome cmd_selftest(const RunConfig& cfg, const SelftestArgs& a) {
  ordered_json inputs;
  inputs["suite"] = a.suite;
  inputs["cutoff"] = a.cutoff.str();
  inputs["trials"] = a.trials;
  try {
    std::vector<std::string> names = a.suite == "all" ? selftest_suites() : std::vector<std::string>{a.suite};
    std::vector<SuiteReport> reps;
    for (const auto& n : names) reps.push_back(run_selftest(n, cfg.seed, a.cutoff, a.trials));
    bool ok = std::all_of(reps.begin(), reps.end(), [](const SuiteReport& r) { return r.ok(); });

    Outcome o;
    o.code = ok ? kOk : kVerification;
    const std::string f = fmt(cfg, "json");
    if (f == "json") {
      ordered_json results = ordered_json::array(), residuals;
      int failures = 0;
      for (const auto& r : reps) {
        ordered_json checks = ordered_json::array();
        for (const auto& c : r.checks) {
          ordered_json cj{{"identity", c.identity}, {"trials", c.trials}, {"failures", c.failures}, {"pass", c.ok()}};
          if (!c.counterexample.empty()) cj["counterexample"] = c.counterexample;
          checks.push_back(cj);
          failures += c.failures;
        }
        results.push_back({{"suite", r.suite}, {"pass", r.ok()}, {"checks", checks}});
      }
      residuals["failed_trials"] = failures;
      o.text = render_json(report(cfg, inputs, results, residuals, ok ? "pass" : "fail"));
    } else if (f == "csv") {
      std::ostringstream s;
      s << "suite,identity,trials,failures\n";
      for (const auto& r : reps)
        for (const auto& c : r.checks) s << r.suite << ",\"" << c.identity << "\"," << c.trials << "," << c.failures << "\n";
      o.text = s.str();
    } else {
      std::ostringstream s;
      for (const auto& r : reps) {
        for (const auto& c : r.checks) {
          s << (c.ok() ? "PASS " : "FAIL ") << r.suite << ": " << c.identity << " (" << c.trials << " trials)\n";
          if (!c.ok() && !c.counterexample.empty()) s << "    counterexample: " << c.counterexample << "\n";
        }
      }
      s << (ok ? "pass" : "fail") << "\n";
      o.text = s.str();
    }
    return o;
  } catch (const std::exception& e) {
    return error_outcome(cfg, "json", "selftest", inputs, e);
  }
}

Outcome cmd_eval(const RunConfig& cfg, const EvalArgs& a) {
  ordered_json inputs;
  inputs["expr"] = a.expr;
  if (!a.at.empty()) inputs["at"] = a.at;
  try {
    Expr e = parse_expression(a.expr);
    auto bindings = a.at.empty() ? std::map<std::string, NovikovScalar>{} : parse_bindings(a.at, cfg.order);
    std::vector<std::string> vars;
    for (const auto& v : expression_variables(e))
      if (!bindings.count(v)) vars.push_back(v);
    LaurentSeries s = evaluate_expression(e, vars, cfg.order, bindings);
    std::string value;
    if (vars.empty()) {
      value = s.coeff(Exponent{}).str();
    } else {
      value = s.str(vars);
    }
    Outcome o;
    const std::string f = fmt(cfg, "text");
    if (f == "json") {
      ordered_json results;
      results["value"] = value;
      results["variables"] = vars;
      ordered_json residuals;
      residuals["truncation"] = cfg.order.str();
      o.text = render_json(report(cfg, inputs, results, residuals, "ok"));
    } else {
      o.text = value + "\n";
    }
    return o;
  } catch (const std::exception& e) {
    return error_outcome(cfg, "text", "eval", inputs, e);
  }
}

Outcome cmd_fibration_sample(const RunConfig& cfg, const SampleArgs& a) {
  ordered_json inputs;
  inputs["count"] = a.count;
  try {
    if (a.count < 1) throw Error(ErrorCode::InvalidArgument, "count must be positive");
    auto samples = fibration_sample(default_psi(), a.count, cfg.seed);
    double worst = 0;
    bool identity = true;
    for (const auto& s : samples) {
      worst = std::max(worst, s.residual);
      identity = identity && s.valuation_identity;
    }
    const bool ok = identity && worst <= 1e-9;
    Outcome o;
    o.code = ok ? kOk : kVerification;
    const std::string f = fmt(cfg, "csv");
    if (f == "json") {
      ordered_json rows = ordered_json::array();
      for (const auto& s : samples)
        rows.push_back({{"val_x0", s.val_x0.str()}, {"val_x1", s.val_x1.str()}, {"val_y", s.val_y.str()},
                        {"q", {s.q[0], s.q[1]}}, {"residual", s.residual}});
      ordered_json residuals;
      residuals["max_residual"] = worst;
      residuals["valuation_identity"] = identity;
      o.text = render_json(report(cfg, inputs, {{"samples", rows}}, residuals, ok ? "pass" : "fail"));
    } else {
      o.text = fibration_csv(samples);
    }
    return o;
  } catch (const std::exception& e) {
    return error_outcome(cfg, "csv", "fibration sample", inputs, e);
  }
}

}  // namespace cli
