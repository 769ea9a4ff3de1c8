#include <algorithm>
#include <cstdio>
#include <fstream>

#include "cloning/runner.hpp"
#include "doctest.h"

using namespace cloning;

TEST_CASE("reports round-trip") {
  ExperimentReport empty;
  empty.experiment = "probe";
  empty.system = "V";
  const ExperimentReport back = parse_report(emit_report(empty));
  CHECK(back.pass);
  CHECK(back.series.empty());
  CHECK(emit_report(back) == emit_report(empty));
  CHECK(emit_report(empty).find("\"label\": \"consistent-with-theorem\"") != std::string::npos);
  CHECK_THROWS_AS(parse_report("{}"), ConfigError);
}

TEST_CASE("runs are deterministic and witnesses parse back") {
  RunConfig cfg;
  cfg.command = "conjugates";
  cfg.system = "V";
  cfg.radius = 3;
  cfg.seed = 9;
  const std::string a = emit_report(run(cfg));
  CHECK(a == emit_report(run(cfg)));
  const ExperimentReport r = parse_report(a);
  CHECK(r.pass);
  REQUIRE_FALSE(r.witnesses.empty());
  const Element x = parse_element(make_system("V"), r.witnesses.front());
  CHECK(x.str() == r.witnesses.front());
}

TEST_CASE("verdicts and labels") {
  RunConfig cfg;
  cfg.command = "verify-axioms";
  cfg.n = 4;
  cfg.exhaustive = true;
  ExperimentReport r = run(cfg);
  CHECK(r.pass);
  CHECK(r.label == "exhaustive-proof");

  cfg = RunConfig{};
  cfg.command = "diversity";
  cfg.system = "prod:Z3:id,id";
  cfg.n = 3;
  r = run(cfg);
  CHECK_FALSE(r.pass);
  REQUIRE(r.witnesses.size() == 1);
  const std::string w = r.witnesses.front();
  CHECK(std::count(w.begin(), w.end(), ',') == 3);

  cfg = RunConfig{};
  cfg.command = "report";
  cfg.experiment = "normalizer";
  cfg.system = "prod:Z3:id,id";
  cfg.element = "[(..) ; (1,1) ; (..)]";
  r = run(cfg);
  CHECK(r.experiment == "normalizer");
  CHECK_FALSE(r.pass);
}

TEST_CASE("validation") {
  RunConfig cfg;
  cfg.command = "conjugates";
  cfg.radius = 9;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.radius = 2;
  cfg.system = "nope";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.system = "V";
  cfg.element = "[(..) ; [3,1] ; (..)]";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.element.clear();
  cfg.command = "report";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.experiment = "probe";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.property = "pure";
  CHECK_NOTHROW(validate(cfg));
  cfg.command = "fpf";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.system = "prod:Z3:id,inv";
  CHECK_NOTHROW(validate(cfg));
  cfg.command = "cantor-crosscheck";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("config files") {
  const std::string path = "runner_test_config.json";
  {
    std::ofstream out(path);
    out << R"({"system": "T", "radius": 2, "seed": 5, "exhaustive": true})";
  }
  RunConfig cfg;
  load_config_file(path, cfg);
  CHECK(cfg.system == "T");
  CHECK(cfg.radius == 2);
  CHECK(cfg.seed == 5);
  CHECK(cfg.exhaustive);
  {
    std::ofstream out(path);
    out << R"({"radius": "two"})";
  }
  CHECK_THROWS_AS(load_config_file(path, cfg), ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config_file("does/not/exist.json", cfg), ConfigError);
}
