// Prints one PASS/FAIL line per acceptance criterion; exit code 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "lp_oracle.hpp"
#include "slitpot/experiments.hpp"
#include "slitpot/extremal.hpp"
#include "slitpot/harmonic.hpp"
#include "slitpot/slit_oracle.hpp"
#include "slitpot/text.hpp"

using namespace slitpot;

namespace {

const cplx kI{0.0, 1.0};
std::string g_out = "acceptance_out";

struct Result {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScenarioReport scenario(const std::string& name, std::map<std::string, std::string> params = {}) {
  ScenarioConfig cfg;
  cfg.scenario = name;
  cfg.seed = 1;
  cfg.out_dir = g_out + "/" + name;
  cfg.cache = CachePolicy::off;
  cfg.params = std::move(params);
  return run_scenario(cfg);
}

/// Every listed check present and passing.
Result checks_pass(const ScenarioReport& r, const std::vector<std::string>& names) {
  Result o{true, ""};
  for (const std::string& n : names) {
    const CheckResult* c = r.find(n);
    if (!c) {
      o.pass = false;
      o.detail += n + " missing; ";
      continue;
    }
    o.pass = o.pass && c->pass;
    o.detail += n + "=" + fmt_short(c->value) + (c->pass ? " ok; " : " FAILED; ");
  }
  return o;
}

std::vector<HitSample> walks(const IntervalSet& E, long N, std::uint64_t seed) {
  RandomWalkConfig cfg;
  cfg.seed = seed;
  std::vector<HitSample> s;
  SamplingOptions o;
  o.keep = &s;
  estimate_harmonic_measure(E, kI, N, cfg, o);
  return s;
}

Result mass_conservation() {
  const IntervalSet E({{-1.0, 1.0}});
  const long N = 100000;
  RandomWalkConfig cfg;
  cfg.seed = 1;
  const auto h = estimate_harmonic_measure(E, kI, N, cfg);
  const double t = h.total_mass();
  const double se = std::sqrt(std::max(t * (1.0 - t), 0.0) / N);
  const bool ok = std::abs(t - 1.0) <= 4.0 * se && h.nonterminated_fraction < 1e-3;
  return {ok, "total mass " + fmt_real(t) + ", nonterminated fraction " +
                  fmt_short(h.nonterminated_fraction)};
}

Result symmetry() {
  const long N = 100000;
  const auto s = walks(IntervalSet({{-1.0, 1.0}}), N, 2);
  long right = 0;
  for (const HitSample& h : s) right += h.outcome == Outcome::hit_set && h.hit_point >= 0.0;
  const double m = static_cast<double>(right) / N;
  const double se = std::sqrt(m * (1.0 - m) / N);
  RandomWalkConfig cfg;
  cfg.seed = 3;
  const auto two = estimate_harmonic_measure(IntervalSet({{-3.0, -1.0}, {1.0, 3.0}}), kI, N, cfg);
  const bool ok = std::abs(m - 0.5) <= 3.0 * se && std::abs(two.masses[0] - 0.5) <= 3.0 * two.stderrs[0] &&
                  std::abs(two.masses[1] - 0.5) <= 3.0 * two.stderrs[1];
  return {ok, "mass([0,1]) " + fmt_short(m) + " +- " + fmt_short(se) + ", two components " +
                  fmt_short(two.masses[0]) + " / " + fmt_short(two.masses[1])};
}

Result slit_oracle() {
  const long N = 1000000;
  const int bins = 32;
  RandomWalkConfig cfg;
  cfg.seed = 4;
  SamplingOptions opt;
  opt.bins = bins;
  const auto h = estimate_harmonic_measure(IntervalSet({{-1.0, 1.0}}), kI, N, cfg, opt);
  const auto ref = single_slit_bin_masses(-1.0, 1.0, kI, bins);
  int tested = 0, bad = 0;
  double worst = 0.0;
  for (int j = 0; j < bins; ++j) {
    if (h.bin_counts[0][static_cast<std::size_t>(j)] < 100) continue;
    ++tested;
    const double m = h.bin_mass(0, j);
    const double z = std::abs(m - ref[j]) / std::sqrt(m * (1.0 - m) / N);
    worst = std::max(worst, z);
    bad += z > 3.0;
  }
  return {bad == 0 && tested > 0,
          std::to_string(tested) + " bins tested, largest deviation " + fmt_short(worst) + " stderr"};
}

Result extremal_oracle() {
  std::mt19937_64 gen(20);
  int bad = 0;
  double worst_rel = 0.0, worst_viol = 0.0;
  bool mono = true, above_one = true;
  for (int k = 0; k < 20; ++k) {
    const testing::OracleCase c = testing::random_case(gen);
    const ExtremalWitness w = hall_majorant_n(c.W, cplx{c.z0, 0.0}, c.n);
    const double ref = testing::oracle_value(c);
    const double rel = std::abs(w.value - ref) / ref;
    worst_rel = std::max(worst_rel, rel);
    worst_viol = std::max(worst_viol, w.grid_violation);
    bad += rel > 5e-3 || w.grid_violation > 1e-8;
    above_one = above_one && w.value >= 1.0;
    // Degree monotonicity on the same program.
    ExtremalSolver lower(c.W, std::max(c.n - 1, 0));
    mono = mono && lower.solve(cplx{c.z0, 0.0}).value <= w.value * (1.0 + 1e-9);
  }
  return {bad == 0 && mono && above_one,
          "20 cases, worst relative gap " + fmt_short(worst_rel) + ", worst grid violation " +
              fmt_short(worst_viol) + (mono ? ", monotone" : ", NOT monotone") +
              (above_one ? ", M >= 1" : ", M < 1 seen")};
}

Result growth_trend() {
  const double L = std::exp(4.0);
  const Weight W = Weight::power_law(IntervalSet({{-L, L}}), 0.3);
  const GrowthTable t = growth_ratio_check(W, {10, 20, 40}, {std::exp(2.0), std::exp(3.0)});
  std::string d;
  for (const GrowthRow& r : t.rows)
    d += "n=" + std::to_string(r.degree) + " x=" + fmt_short(r.x) + ": " + fmt_short(r.ratio) + "; ";
  return {t.bounded && t.nondecreasing && t.final_min_ratio >= 0.8, d};
}

Result martin() {
  const ScenarioReport line = scenario("martin_sigma", {{"set", "line"}, {"x", "0"}, {"samples", "1000000"}});
  const ScenarioReport slit = scenario("martin_sigma", {{"set", "interval"}, {"samples", "200000"}});
  const Result a = checks_pass(line, {"oracle_5pct", "monotone_in_y"});
  const Result b = checks_pass(slit, {"oracle_5pct", "monotone_in_y"});
  return {a.pass && b.pass, "line: " + a.detail + "interval: " + b.detail};
}

Result propositions() {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioReport a = scenario("prop_a");
  const ScenarioReport b = scenario("prop_b");
  const double secs = seconds_since(t0);
  const Result oa = checks_pass(a, {"verdict", "omega_integral_plateau", "omega_integral_bounded"});
  const Result ob = checks_pass(b, {"verdict", "debranges_summable"});
  return {oa.pass && ob.pass && secs <= 1200.0,
          "prop_a: " + oa.detail + "prop_b: " + ob.detail + fmt_short(secs) + " s"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_out = argv[1];
  std::filesystem::create_directories(g_out);
  struct Criterion {
    const char* name;
    double budget_s;  // 0: none
    std::function<Result()> run;
  };
  const std::vector<Criterion> list = {
      {"mass conservation", 30, mass_conservation},
      {"symmetry", 0, symmetry},
      {"single-slit oracle", 300, slit_oracle},
      {"square lemma", 0, [] { return checks_pass(scenario("square_lemma"), {"holds_centre_slit", "holds_two_slits", "holds_crossing_slit"}); }},
      {"power-gap density band", 900, [] { return checks_pass(scenario("lemma5"), {"band_ratio"}); }},
      {"unit-interval slope", 900, [] { return checks_pass(scenario("lemma6"), {"slope_above_minus_one"}); }},
      {"Krein identity", 1, [] { return checks_pass(scenario("krein_identity"), {"max_residual"}); }},
      {"Hardy flatness", 60, [] { return checks_pass(scenario("hardy"), {"tail_flatness", "closed_form_half"}); }},
      {"extremal solver oracle", 0, extremal_oracle},
      {"growth ratio trend", 300, growth_trend},
      {"Martin estimator", 0, martin},
      {"decay ratio", 0, [] { return checks_pass(scenario("lemma1"), {"decreasing_end"}); }},
      {"proposition scenarios", 1200, propositions},
  };
  int failed = 0;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Result o;
    try {
      o = list[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    if (list[k].budget_s > 0.0 && secs > list[k].budget_s) {
      o.pass = false;
      o.detail += " over the time budget";
    }
    failed += !o.pass;
    std::printf("%s %2zu %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", k + 1, list[k].name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, list.size());
  return failed ? 1 : 0;
}
