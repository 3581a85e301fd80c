#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "nonarch/errors.hpp"
#include "nonarch/novikov.hpp"

using nonarch::Rational;

namespace {

Rational parse_rational(const std::string& flag, const std::string& s) {
  try {
    return Rational::parse(s);
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "expected a rational such as 3/2, got " + s);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Novikov-field computations for Lagrangian Floer mirrors"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::RunConfig cfg;
  std::string order = "4", out_file;
  app.add_option("--order", order, "truncation order E_max (exclusive)")->capture_default_str();
  app.add_option("--tau", cfg.tau_c, "coefficient tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth, "Puiseux ramification depth")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", cfg.seed, "random seed (NONARCH_SEED overrides)")->capture_default_str();
  app.add_option("--out", out_file, "write the report here instead of stdout");

  cli::FolkloreArgs fa;
  std::string energy = "1", e1 = "1", e2 = "1";
  auto* folklore = app.add_subcommand("folklore", "match critical values of W with eigenvalues of c1");
  folklore->add_option("--space", fa.space, "cp2, p1xp1 or cpn")->required()->check(CLI::IsMember({"cp2", "p1xp1", "cpn"}));
  folklore->add_option("--energy", energy, "disk energy E")->capture_default_str();
  folklore->add_option("--e1", e1, "first P1 energy")->capture_default_str();
  folklore->add_option("--e2", e2, "second P1 energy")->capture_default_str();
  folklore->add_option("--n", fa.n, "dimension of CP^n")->capture_default_str()->check(CLI::Range(1, 32));

  cli::SelftestArgs sa;
  std::string cutoff = "2";
  auto* selftest = app.add_subcommand("selftest", "randomized identity checks");
  selftest->add_option("--suite", sa.suite, "ainf, series, novikov, floer, wallcross or all")
      ->required()
      ->check(CLI::IsMember({"ainf", "series", "novikov", "floer", "wallcross", "all"}));
  selftest->add_option("--cutoff", cutoff, "energy cutoff of the random data")->capture_default_str();
  selftest->add_option("--trials", sa.trials, "trials per identity")->capture_default_str()->check(CLI::PositiveNumber);

  cli::EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate an expression over the Novikov field");
  eval->add_option("expr", ea.expr, "expression")->required();
  eval->add_option("--at", ea.at, "bindings such as \"Y1=T^(1/2), Y2=1\"");

  cli::SampleArgs fs;
  auto* fibration = app.add_subcommand("fibration", "the dual fibration example");
  fibration->require_subcommand(1);
  auto* sample = fibration->add_subcommand("sample", "sample mirror points and check j(f(p)) = F(p)");
  sample->add_option("--count", fs.count, "number of points")->capture_default_str();

  try {
    app.parse(argc, argv);
    cfg.order = parse_rational("--order", order);
    if (cfg.order.sign() <= 0) throw CLI::ValidationError("--order", "must be positive");
    fa.energy = parse_rational("--energy", energy);
    fa.e1 = parse_rational("--e1", e1);
    fa.e2 = parse_rational("--e2", e2);
    sa.cutoff = parse_rational("--cutoff", cutoff);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return cli::kUsage;
  }
  if (const char* s = std::getenv("NONARCH_SEED"); s && *s) {
    try {
      cfg.seed = std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "NONARCH_SEED is not an unsigned integer: " << s << "\n";
      return cli::kUsage;
    }
  }
  nonarch::numeric_config().tau_c = cfg.tau_c;
  nonarch::numeric_config().ramification_depth = cfg.depth;

  cli::Outcome o;
  if (*folklore)
    o = cli::cmd_folklore(cfg, fa);
  else if (*selftest)
    o = cli::cmd_selftest(cfg, sa);
  else if (*eval)
    o = cli::cmd_eval(cfg, ea);
  else
    o = cli::cmd_fibration_sample(cfg, fs);

  if (o.to_stderr) {
    std::cerr << o.text;
  } else if (out_file.empty()) {
    std::cout << o.text;
  } else {
    std::ofstream f(out_file, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out_file << "\n";
      return cli::kUsage;
    }
    f << o.text;
  }
  return o.code;
}
