// cloning-cli: runs one experiment and writes a JSON report.
//
//   cloning-cli verify-axioms --system V --n 4 --exhaustive
//   cloning-cli report --config run.json --experiment conjugates
//
// Exit codes: 0 pass, 1 checked property violated, 2 usage or I/O error.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cloning/runner.hpp"

namespace {

struct Flags {
  std::string config;
  cloning::RunConfig cfg;
};

void add_common(CLI::App* sub, Flags& f) {
  auto& c = f.cfg;
  sub->add_option("--config", f.config, "JSON config file; flags override its keys");
  sub->add_option("--system", c.system, "Registry key: F, T, V, Vhat (optionally :d), prod:<G>:<monos>, psi:<G>:<monos>")
      ->capture_default_str();
  sub->add_option("--n", c.n, "Level n (1..12)")->capture_default_str();
  sub->add_option("--radius", c.radius, "Ball radius L in carets (0..6)")->capture_default_str();
  sub->add_option("--m", c.m, "Exponent bound m (1..20)")->capture_default_str();
  sub->add_option("--depth", c.depth, "Fallback word depth for automaton comparison (1..30)")->capture_default_str();
  sub->add_option("--budget", c.budget, "Sample budget (1..1000000)")->capture_default_str();
  sub->add_option("--seed", c.seed, "Seed; defaults to $CLONING_SEED or 1");
  sub->add_option("--out", c.out, "Report path; stdout when absent");
  sub->add_flag("--exhaustive", c.exhaustive, "Enumerate finite groups instead of sampling");
  sub->add_option("--element", c.element, "Element \"[T ; g ; U]\"; sampled outside F_d when absent");
  sub->add_option("--property", c.property, "probe: pure, slightly-pure, fully-compatible, uniform");
  sub->add_flag("--one-sided", c.one_sided, "normalizer: test x^-1 f x only");
  sub->add_flag("--timing", c.timing, "Record wall time in runtime_ms (otherwise 0)");
}

// Re-applies flags given on the command line on top of the config file.
void overlay(const CLI::App* sub, const cloning::RunConfig& flags, cloning::RunConfig& out) {
  auto given = [&](const char* name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--system")) out.system = flags.system;
  if (given("--experiment")) out.experiment = flags.experiment;
  if (given("--n")) out.n = flags.n;
  if (given("--radius")) out.radius = flags.radius;
  if (given("--m")) out.m = flags.m;
  if (given("--depth")) out.depth = flags.depth;
  if (given("--budget")) out.budget = flags.budget;
  if (given("--seed")) out.seed = flags.seed;
  if (given("--out")) out.out = flags.out;
  if (given("--exhaustive")) out.exhaustive = flags.exhaustive;
  if (given("--element")) out.element = flags.element;
  if (given("--property")) out.property = flags.property;
  if (given("--one-sided")) out.one_sided = flags.one_sided;
  if (given("--timing")) out.timing = flags.timing;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cloning systems and Thompson-like groups: finite-scale experiments"};
  app.require_subcommand(1);

  Flags flags;
  try {
    flags.cfg.seed = cloning::default_seed();
  } catch (const cloning::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify-axioms", "Check C1-C3 up to level n"},
      {"probe", "Test pure, slightly-pure, fully-compatible or uniform at level n"},
      {"diversity", "Search the intersection of cloning images at level n"},
      {"conjugates", "Count conjugates by F_d balls of radius 1..L"},
      {"normalizer", "Test whether an element normalizes the F_d ball of radius L"},
      {"wahp-orbit", "Count cosets (f x) F_d over balls of radius 1..L"},
      {"mixing", "Build the commuting pair for sampled g in G_d"},
      {"fpf", "Fixed-point-free product system suite, system prod:<G>:id,<phi>"},
      {"cantor-crosscheck", "Compare tree-pair algebra with prefix-exchange maps"},
      {"report", "Run the experiment named by --experiment"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, flags);
    if (name == "report") sub->add_option("--experiment", flags.cfg.experiment, "Experiment name");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cloning::RunConfig cfg = flags.cfg;
  cfg.command = sub->get_name();
  if (!flags.config.empty()) {
    cfg = cloning::RunConfig{};
    cfg.seed = flags.cfg.seed;
    try {
      cloning::load_config_file(flags.config, cfg);
    } catch (const cloning::ConfigError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    overlay(sub, flags.cfg, cfg);
    cfg.command = sub->get_name();
  }
  return cloning::run_and_emit(cfg);
}
