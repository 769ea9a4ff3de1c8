#include "cloning/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

#include "json.hpp"

namespace cloning {
namespace {

using json = nlohmann::ordered_json;

const std::set<std::string> kExperiments = {"verify-axioms", "probe",  "diversity", "conjugates",       "normalizer",
                                            "wahp-orbit",    "mixing", "fpf",       "cantor-crosscheck"};

void require_range(const std::string& name, long long value, long long lo, long long hi) {
  if (value < lo || value > hi) {
    throw ConfigError("--" + name + " must lie in " + std::to_string(lo) + ".." + std::to_string(hi) + ", got " +
                      std::to_string(value));
  }
}

SystemPtr system_or_throw(const std::string& key) {
  try {
    return make_system(key);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

// (group, phi) from a key of the form prod:<G>:id,<phi>.
std::pair<std::string, std::string> fpf_parts(const std::string& key) {
  const auto parts = split(key, ':');
  if (parts.size() == 3 && parts[0] == "prod") {
    const auto monos = split(parts[2], ',');
    if (monos.size() == 2 && monos[0] == "id") return {parts[1], monos[1]};
  }
  throw ConfigError("fpf needs a system of the form prod:<G>:id,<phi>, got '" + key + "'");
}

std::string experiment_of(const RunConfig& cfg) { return cfg.command == "report" ? cfg.experiment : cfg.command; }

bool strictly_increasing(const std::vector<long long>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) return false;
  }
  return true;
}

Element subject_element(const RunConfig& cfg, const SystemPtr& sys, Rng& rng) {
  if (!cfg.element.empty()) return parse_element(sys, cfg.element);
  return sample_non_fd(sys, 2, rng);
}

void run_verify_axioms(const RunConfig& cfg, const SystemPtr& sys, Rng& rng, ExperimentReport& r) {
  const AxiomReport a = verify_axioms(*sys, cfg.n, cfg.exhaustive, cfg.budget, rng);
  r.series["checks"] = {a.checks};
  r.series["failures"] = {static_cast<long long>(a.failures.size())};
  r.witnesses = a.failures;
  r.pass = a.ok();
  if (a.exhaustive) r.label = "exhaustive-proof";
}

void run_probe(const RunConfig& cfg, const SystemPtr& sys, Rng& rng, ExperimentReport& r) {
  const ProbeResult p = probe_property(*sys, parse_property(cfg.property), cfg.n, cfg.budget, rng);
  r.series["checked"] = {p.checked};
  r.notes.push_back(to_string(parse_property(cfg.property)) + ": " + to_string(p.status));
  if (p.status == ProbeStatus::Counterexample) r.witnesses.push_back(p.counterexample);
  r.pass = p.status != ProbeStatus::Counterexample;
  if (p.status != ProbeStatus::HoldsOnSamples) r.label = "exhaustive-proof";
}

void run_diversity(const RunConfig& cfg, const SystemPtr& sys, Rng& rng, ExperimentReport& r) {
  const DiversityResult d = diversity_witness(*sys, cfg.n, cfg.budget, rng);
  r.series["checked"] = {d.checked};
  r.pass = !d.witness;
  if (d.witness) {
    r.witnesses.push_back(sys->group().format(*d.witness));
    r.notes.push_back("nontrivial element in every image at n=" + std::to_string(cfg.n));
  } else {
    r.notes.push_back(std::string("no witness at n=") + std::to_string(cfg.n) +
                      (d.exhaustive ? " (exhaustive)" : " (search only)"));
  }
  if (d.exhaustive || d.witness) r.label = "exhaustive-proof";
}

void note_truncation(const FdBall& ball, ExperimentReport& r) {
  if (ball.truncated) r.notes.push_back("ball of radius " + std::to_string(ball.radius) + " truncated by caps");
}

void run_conjugates(const RunConfig& cfg, const SystemPtr& sys, Rng& rng, ExperimentReport& r) {
  const Element x = subject_element(cfg, sys, rng);
  r.witnesses.push_back(x.str());
  auto& counts = r.series["conjugates"];
  auto& sizes = r.series["ball_size"];
  for (int l = 1; l <= cfg.radius; ++l) {
    const FdBall ball = enumerate_fd_ball(sys, l);
    note_truncation(ball, r);
    sizes.push_back(static_cast<long long>(ball.elements.size()));
    counts.push_back(static_cast<long long>(conjugate_count(x, ball)));
  }
  r.pass = strictly_increasing(counts);
}

void run_normalizer(const RunConfig& cfg, const SystemPtr& sys, Rng& rng, ExperimentReport& r) {
  const Element x = subject_element(cfg, sys, rng);
  r.witnesses.push_back(x.str());
  const FdBall ball = enumerate_fd_ball(sys, cfg.radius);
  note_truncation(ball, r);
  const NormalizerVerdict v = normalizes_up_to(x, ball, cfg.one_sided);
  r.series["ball_size"] = {static_cast<long long>(ball.elements.size())};
  r.series["normalizes"] = {v.normalizes ? 1 : 0};
  if (v.witness) {
    r.witnesses.push_back(v.witness->str());
    r.notes.push_back(v.side + " leaves F_d");
  }
  // A trivial normalizer means only elements of F_d pass.
  r.pass = v.normalizes == in_Fd(x);
}

void run_wahp(const RunConfig& cfg, const SystemPtr& sys, Rng& rng, ExperimentReport& r) {
  const Element x = subject_element(cfg, sys, rng);
  r.witnesses.push_back(x.str());
  auto& counts = r.series["cosets"];
  for (int l = 1; l <= cfg.radius; ++l) {
    const FdBall ball = enumerate_fd_ball(sys, l);
    note_truncation(ball, r);
    counts.push_back(static_cast<long long>(coset_orbit_count(x, ball)));
  }
  if (in_Fd(x)) {
    r.pass = std::all_of(counts.begin(), counts.end(), [](long long c) { return c == 1; });
  } else {
    r.pass = strictly_increasing(counts);
  }
}

void run_mixing(const RunConfig& cfg, const SystemPtr& sys, Rng& rng, ExperimentReport& r) {
  const int d = sys->arity();
  const Tree caret = Tree::caret(d);
  const Tree first = d == 2 ? Tree::parse("(.(..))", 2) : caret.expand_at(1);
  const Tree second = d == 2 ? Tree::parse("((..).)", 2) : caret.expand_at(d);
  long commuting = 0;
  const long trials = std::min<long>(cfg.budget, 50);
  for (long t = 0; t < trials; ++t) {
    GroupElement g = sys->group().sample(d, rng);
    for (int tries = 0; sys->group().is_identity(g); ++tries) {
      if (tries == 100) throw ConfigError("mixing needs a nontrivial G_d");
      g = sys->group().sample(d, rng);
    }
    const MixingWitness w = mixing_witness(sys, caret, "1", g, first, second);
    if (w.commutes && w.f_nontrivial) {
      ++commuting;
      if (r.witnesses.empty()) {
        r.witnesses.push_back(w.x.str());
        r.witnesses.push_back(w.f.str());
      }
    } else if (r.pass) {
      r.pass = false;
      r.notes.push_back("commutation fails for x = " + w.x.str() + " and f = " + w.f.str());
    }
  }
  r.series["commuting"] = {commuting};
  r.series["trials"] = {trials};
}

void run_fpf(const RunConfig& cfg, ExperimentReport& r) {
  const auto [group, phi] = fpf_parts(cfg.system);
  FpfBounds bounds;
  bounds.max_n = cfg.n;
  bounds.max_m = cfg.m;
  bounds.samples = std::min<long>(cfg.budget, 50);
  r = fpf_suite(group, phi, bounds, cfg.seed);
}

void run_crosscheck(const RunConfig& cfg, const SystemPtr& sys, Rng& rng, ExperimentReport& r) {
  const std::vector<Element> ball = enumerate_system_ball(sys, cfg.radius);
  std::vector<PrefixMap> maps;
  for (const auto& x : ball) maps.push_back(from_tree_pair(x));
  long long mismatches = 0;
  long long order_mismatches = 0;
  long long pairs = 0;
  auto fail = [&](const std::string& what) {
    ++mismatches;
    if (r.witnesses.size() < 10) r.witnesses.push_back(what);
  };

  if (!is_identity_map(from_tree_pair(Element::identity(sys)), cfg.depth)) fail("identity");
  auto check_one = [&](const Element& x, const PrefixMap& fx) {
    if (is_order_preserving(fx) != in_Fd(x)) {
      ++order_mismatches;
      if (r.witnesses.size() < 10) r.witnesses.push_back("order " + x.str());
    }
    if (!equivalent(from_tree_pair(inv(x)), invert(fx), cfg.depth)) fail("inverse " + x.str());
  };
  auto check_pair = [&](const Element& x, const PrefixMap& fx, const Element& y, const PrefixMap& fy) {
    ++pairs;
    const PrefixMap lhs = from_tree_pair(mul(x, y));
    const PrefixMap rhs = compose(fx, fy);
    if (!equivalent(lhs, rhs, cfg.depth) || normalize(lhs).rules() != normalize(rhs).rules()) {
      fail("product " + x.str() + " * " + y.str());
    }
  };

  for (std::size_t i = 0; i < ball.size(); ++i) {
    check_one(ball[i], maps[i]);
    for (std::size_t j = 0; j < ball.size(); ++j) check_pair(ball[i], maps[i], ball[j], maps[j]);
  }
  const auto words = eventually_periodic_words(sys->arity(), 2, 2);
  for (long s = 0; s < cfg.budget; ++s) {
    const Element x = random_element(sys, 4, rng);
    const Element y = random_element(sys, 4, rng);
    const PrefixMap fx = from_tree_pair(x);
    const PrefixMap fy = from_tree_pair(y);
    check_one(x, fx);
    check_pair(x, fx, y, fy);
    const CantorWord& w = words[static_cast<std::size_t>(s) % words.size()];
    if (!(compose(fx, fy).apply(w) == fx.apply(fy.apply(w)))) fail("apply " + w.str());
  }
  r.series["ball_size"] = {static_cast<long long>(ball.size())};
  r.series["pairs_checked"] = {pairs};
  r.series["mismatches"] = {mismatches};
  r.series["order_mismatches"] = {order_mismatches};
  r.pass = mismatches == 0 && order_mismatches == 0;
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* s = std::getenv("CLONING_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ConfigError("CLONING_SEED must be a non-negative integer");
    }
  }
  return 1;
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    in >> j;
    if (j.contains("system")) cfg.system = j.at("system").get<std::string>();
    if (j.contains("experiment")) cfg.experiment = j.at("experiment").get<std::string>();
    if (j.contains("n")) cfg.n = j.at("n").get<int>();
    if (j.contains("radius")) cfg.radius = j.at("radius").get<int>();
    if (j.contains("m")) cfg.m = j.at("m").get<int>();
    if (j.contains("depth")) cfg.depth = j.at("depth").get<int>();
    if (j.contains("budget")) cfg.budget = j.at("budget").get<long>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("exhaustive")) cfg.exhaustive = j.at("exhaustive").get<bool>();
    if (j.contains("element")) cfg.element = j.at("element").get<std::string>();
    if (j.contains("property")) cfg.property = j.at("property").get<std::string>();
    if (j.contains("one_sided")) cfg.one_sided = j.at("one_sided").get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError("bad config file " + path + ": " + e.what());
  }
}

void validate(const RunConfig& cfg) {
  const std::string exp = experiment_of(cfg);
  if (cfg.command == "report" && exp.empty()) throw ConfigError("report needs --experiment");
  if (!kExperiments.count(exp)) throw ConfigError("unknown experiment '" + exp + "'");
  require_range("n", cfg.n, 1, 12);
  require_range("radius", cfg.radius, 0, 6);
  require_range("m", cfg.m, 1, 20);
  require_range("depth", cfg.depth, 1, 30);
  require_range("budget", cfg.budget, 1, 1000000);
  if (exp == "fpf") {
    fpf_parts(cfg.system);
    system_or_throw(cfg.system);
    return;
  }
  const SystemPtr sys = system_or_throw(cfg.system);
  if (exp == "probe") {
    if (cfg.property.empty()) throw ConfigError("probe needs --property");
    try {
      parse_property(cfg.property);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (exp == "cantor-crosscheck") {
    if (!sys->acts_by_leaf_permutation()) {
      throw ConfigError("cantor-crosscheck needs one of the F, T, V, Vhat systems");
    }
    if (!sys->group().is_finite()) throw ConfigError("cantor-crosscheck needs a finite group family");
  }
  if (!cfg.element.empty()) {
    try {
      parse_element(sys, cfg.element);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad --element: ") + e.what());
    }
  }
}

ExperimentReport run(const RunConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const std::string exp = experiment_of(cfg);
  ExperimentReport r;
  if (exp == "fpf") {
    run_fpf(cfg, r);
  } else {
    r.experiment = exp;
    r.system = cfg.system;
    r.seed = cfg.seed;
    r.params = {{"n", std::to_string(cfg.n)},
                {"radius", std::to_string(cfg.radius)},
                {"m", std::to_string(cfg.m)},
                {"depth", std::to_string(cfg.depth)},
                {"budget", std::to_string(cfg.budget)},
                {"exhaustive", cfg.exhaustive ? "true" : "false"},
                {"one_sided", cfg.one_sided ? "true" : "false"}};
    if (!cfg.element.empty()) r.params["element"] = cfg.element;
    if (!cfg.property.empty()) r.params["property"] = cfg.property;
    const SystemPtr sys = make_system(cfg.system);
    Rng rng(cfg.seed);
    if (exp == "verify-axioms") run_verify_axioms(cfg, sys, rng, r);
    else if (exp == "probe") run_probe(cfg, sys, rng, r);
    else if (exp == "diversity") run_diversity(cfg, sys, rng, r);
    else if (exp == "conjugates") run_conjugates(cfg, sys, rng, r);
    else if (exp == "normalizer") run_normalizer(cfg, sys, rng, r);
    else if (exp == "wahp-orbit") run_wahp(cfg, sys, rng, r);
    else if (exp == "mixing") run_mixing(cfg, sys, rng, r);
    else if (exp == "cantor-crosscheck") run_crosscheck(cfg, sys, rng, r);
  }
  if (cfg.timing) {
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                       .count();
  }
  return r;
}

std::string emit_report(const ExperimentReport& report) {
  json j;
  j["schema_version"] = 1;
  j["experiment"] = report.experiment;
  j["system"] = report.system;
  j["params"] = json::object();
  for (const auto& [k, v] : report.params) j["params"][k] = v;
  j["seed"] = report.seed;
  j["series"] = json::object();
  for (const auto& [k, v] : report.series) j["series"][k] = v;
  j["witnesses"] = report.witnesses;
  j["verdict"] = report.pass ? "pass" : "fail";
  j["label"] = report.label;
  j["notes"] = report.notes;
  j["runtime_ms"] = report.runtime_ms;
  return j.dump(2) + "\n";
}

ExperimentReport parse_report(const std::string& text) {
  ExperimentReport r;
  try {
    const json j = json::parse(text);
    if (j.at("schema_version").get<int>() != 1) throw ConfigError("unsupported report schema");
    r.experiment = j.at("experiment").get<std::string>();
    r.system = j.at("system").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("series").items()) r.series[k] = v.get<std::vector<long long>>();
    r.witnesses = j.at("witnesses").get<std::vector<std::string>>();
    r.pass = j.at("verdict").get<std::string>() == "pass";
    r.label = j.at("label").get<std::string>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.runtime_ms = j.at("runtime_ms").get<long long>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad report: ") + e.what());
  }
  return r;
}

int run_and_emit(const RunConfig& cfg) {
  ExperimentReport report;
  try {
    report = run(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string text = emit_report(report);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out);
    if (!(out << text)) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
  }
  return report.pass ? 0 : 1;
}

}  // namespace cloning
