#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "slitpot/cache.hpp"
#include "slitpot/experiments.hpp"

using namespace slitpot;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("slitpot_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("cache key tracks every input") {
  const IntervalSet E({{-1.0, 1.0}});
  const RandomWalkConfig rc = resolve_config(E, {});
  const std::string k = cache_key(E, cplx{0.0, 1.0}, rc);
  CHECK(k == cache_key(E, cplx{0.0, 1.0}, rc));
  CHECK(k != cache_key(IntervalSet({{-1.0, 1.0 + 1e-12}}), cplx{0.0, 1.0}, rc));
  CHECK(k != cache_key(E, cplx{0.0, 1.0 + 1e-12}, rc));
  CHECK(k != cache_key(E, cplx{0.0, 1.0}, rc, 1));
  RandomWalkConfig r2 = rc;
  r2.seed = 2;
  CHECK(k != cache_key(E, cplx{0.0, 1.0}, r2));
  r2 = rc;
  r2.eps_shell *= 2.0;
  CHECK(k != cache_key(E, cplx{0.0, 1.0}, r2));
  CHECK(parse_cache_policy("refresh") == CachePolicy::refresh);
  CHECK(cache_policy_name(CachePolicy::off) == "off");
  CHECK_THROWS(parse_cache_policy("sometimes"));
}

TEST_CASE("cached samples round trip bit for bit") {
  const fs::path dir = scratch_dir("cache");
  const IntervalSet E({{-1.0, 0.0}, {0.5, 2.0}});
  RandomWalkConfig cfg;
  cfg.seed = 17;
  const CachedDraw a = draw_cached(E, cplx{0.1, 0.7}, 3000, cfg, 4, CachePolicy::use, dir.string());
  CHECK_FALSE(a.from_cache);
  const CachedDraw b = draw_cached(E, cplx{0.1, 0.7}, 3000, cfg, 4, CachePolicy::use, dir.string());
  CHECK(b.from_cache);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].outcome == b.samples[i].outcome);
    CHECK(a.samples[i].component == b.samples[i].component);
    CHECK(a.samples[i].steps == b.samples[i].steps);
    CHECK(std::memcmp(&a.samples[i].hit_point, &b.samples[i].hit_point, sizeof(double)) == 0);
  }
  const CachedDraw c = draw_cached(E, cplx{0.1, 0.7}, 3000, cfg, 4, CachePolicy::refresh, dir.string());
  CHECK_FALSE(c.from_cache);
  const CachedDraw d = draw_cached(E, cplx{0.1, 0.7}, 3000, cfg, 4, CachePolicy::off, dir.string());
  CHECK(d.path.empty());

  // A truncated file is redrawn.
  {
    std::string text = slurp(a.path);
    text.resize(text.size() / 2);
    std::ofstream(a.path) << text;
  }
  CHECK_FALSE(load_samples(a.path, a.key, 3000).has_value());
  const CachedDraw e = draw_cached(E, cplx{0.1, 0.7}, 3000, cfg, 4, CachePolicy::use, dir.string());
  CHECK_FALSE(e.from_cache);
  CHECK(load_samples(a.path, a.key, 3000).has_value());
  CHECK_FALSE(load_samples(a.path, "0000000000000000", 3000).has_value());
  fs::remove_all(dir);
}

TEST_CASE("scenario parameters are checked") {
  ScenarioConfig cfg;
  cfg.scenario = "hardy";
  CHECK_NOTHROW(resolve_params(cfg));
  cfg.params["rho"] = "0.7";
  CHECK_THROWS_AS(resolve_params(cfg), std::invalid_argument);
  cfg.params = {{"bogus", "1"}};
  CHECK_THROWS_AS(resolve_params(cfg), std::invalid_argument);
  cfg.scenario = "nothing";
  cfg.params.clear();
  CHECK_THROWS_AS(resolve_params(cfg), std::invalid_argument);
  CHECK(scenario_names().size() == 13);
  CHECK(scenario_defaults("prop_a").count("degrees") == 1);
}

TEST_CASE("scenario config text") {
  const ScenarioConfig c = parse_scenario_config(
      "# comment\nscenario=lemma6 seed=42\nout=/tmp/x cache=off\nsamples=2000  # trailing\n");
  CHECK(c.scenario == "lemma6");
  CHECK(c.seed == 42);
  CHECK(c.out_dir == "/tmp/x");
  CHECK(c.cache == CachePolicy::off);
  CHECK(c.params.at("samples") == "2000");
  CHECK_THROWS(parse_scenario_config("seed=1"));
}

TEST_CASE("scenario runs are reproducible") {
  const fs::path d1 = scratch_dir("run1"), d2 = scratch_dir("run2");
  ScenarioConfig cfg;
  cfg.scenario = "square_lemma";
  cfg.seed = 5;
  cfg.cache = CachePolicy::off;
  cfg.params = {{"samples", "2000"}, {"points", "4"}};
  cfg.out_dir = d1.string();
  const ScenarioReport r1 = run_scenario(cfg);
  cfg.out_dir = d2.string();
  const ScenarioReport r2 = run_scenario(cfg);
  CHECK(slurp(d1 / "square_lemma.csv") == slurp(d2 / "square_lemma.csv"));
  CHECK(r1.checks.size() == r2.checks.size());
  const auto j = nlohmann::json::parse(slurp(d1 / "square_lemma_report.json"));
  CHECK(j.at("scenario") == "square_lemma");
  CHECK(j.at("seed") == 5);
  CHECK(j.at("config").at("samples") == "2000");
  CHECK(j.at("checks").is_array());
  // The CSV starts with the configuration header.
  CHECK(slurp(d1 / "square_lemma.csv").rfind("#", 0) == 0);
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("a failing sub-check does not stop the others") {
  const fs::path d = scratch_dir("fail");
  ScenarioConfig cfg;
  cfg.scenario = "hardy";
  cfg.out_dir = d.string();
  cfg.params = {{"band", "1e-12"}};
  const ScenarioReport r = run_scenario(cfg);
  CHECK_FALSE(r.all_pass());
  REQUIRE(r.find("closed_form_half") != nullptr);
  CHECK(r.find("closed_form_half")->pass);
  fs::remove_all(d);
}
