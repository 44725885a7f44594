#include "slitpot/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "scenario_context.hpp"
#include "slitpot/text.hpp"

namespace slitpot {

namespace {

enum class Kind { real, integer, count, reals, ints, choice };

struct ParamSpec {
  std::string name;
  std::string def;
  Kind kind = Kind::real;
  double lo = -INFINITY, hi = INFINITY;
  bool lo_open = false, hi_open = false;
  std::vector<std::string> choices{};
};

struct Entry {
  std::string name;
  std::vector<ParamSpec> params;
  void (*run)(scenario::Context&);
};

ParamSpec real_p(std::string n, std::string d, double lo, double hi, bool lo_open = false,
                 bool hi_open = false) {
  return {std::move(n), std::move(d), Kind::real, lo, hi, lo_open, hi_open};
}
ParamSpec int_p(std::string n, std::string d, double lo, double hi) {
  return {std::move(n), std::move(d), Kind::integer, lo, hi};
}
ParamSpec count_p(std::string n, std::string d, double lo = 1000, double hi = 1e9) {
  return {std::move(n), std::move(d), Kind::count, lo, hi};
}
ParamSpec reals_p(std::string n, std::string d, double lo, double hi, bool lo_open = false) {
  return {std::move(n), std::move(d), Kind::reals, lo, hi, lo_open};
}
ParamSpec ints_p(std::string n, std::string d, double lo, double hi) {
  return {std::move(n), std::move(d), Kind::ints, lo, hi};
}
ParamSpec choice_p(std::string n, std::string d, std::vector<std::string> c) {
  return {std::move(n), std::move(d), Kind::choice, -INFINITY, INFINITY, false, false, std::move(c)};
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {"lemma5",
       {real_p("p", "2", 1.0, 10.0, true), real_p("delta", "0.25", 0.0, 0.5, true, true),
        int_p("n-max", "5", 0, 40), count_p("samples", "1000000"), int_p("bins", "32", 4, 1024),
        real_p("central", "0.8", 0.0, 1.0, true), real_p("band-max", "10", 1.0, INFINITY, true)},
       scenario::lemma5},
      {"lemma6",
       {int_p("n-max", "5", 2, 12), count_p("samples", "1000000"),
        real_p("length", "1", 0.0, 1.0, true), real_p("confidence", "0.95", 0.5, 1.0, false, true)},
       scenario::lemma6},
      {"square_lemma",
       {count_p("samples", "20000"), int_p("points", "10", 1, 1000),
        real_p("half", "1", 0.0, 1e6, true)},
       scenario::square_lemma},
      {"lemma1",
       {real_p("inner", "1", 0.0, 1e6, true), real_p("outer", "2", 0.0, 1e6, true),
        int_p("marked", "0", 0, 1), reals_p("y", "1,2,4,8", 1.0, 1e6), count_p("samples", "20000")},
       scenario::lemma1},
      {"martin_sigma",
       {choice_p("set", "interval", {"interval", "line", "benedicks"}),
        reals_p("y", "1,2,4,8", 0.0, 1e6, true), reals_p("x", "0,0.35,-0.8,1.5,2.5", -1e6, 1e6),
        count_p("samples", "20000"), real_p("window", "10000", 1.0, 1e12),
        real_p("radius", "0", 0.0, 1e12)},
       scenario::martin_sigma},
      {"al_classify",
       {real_p("p", "2", 1.0, 10.0, true), real_p("delta", "0.25", 0.0, 0.5, true, true),
        real_p("T", "100", 4.0, 1e6), real_p("extent", "2", 1.0, 1e4), count_p("samples", "10000"), int_p("gap-points", "4", 1, 32),
        int_p("beta-points", "6", 1, 64)},
       scenario::al_classify},
      {"moment65",
       {choice_p("set", "interval", {"interval", "benedicks"}), real_p("lambda", "0", -1e6, 1e6),
        real_p("d", "0.25", 0.0, 1.0, true, true), count_p("samples", "100000")},
       scenario::moment65},
      {"krein_identity",
       {real_p("q", "2", 2.0, 1e6), real_p("x1", "0", 0.0, 1e12), int_p("K", "30", 1, 60),
        int_p("probes", "10", 1, 1000), real_p("tol", "1e-8", 0.0, 1.0, true)},
       scenario::krein_identity},
      {"hardy",
       {real_p("rho", "0.3", 0.0, 0.5, true, true), count_p("N", "10000", 100, 1e7),
        int_p("tail", "2", 0, 2), ints_p("n", "25,50,100,200", 1, 1e6),
        real_p("band", "0.05", 0.0, 1.0, true)},
       scenario::hardy},
      {"prop_a",
       {int_p("n-max", "4", 2, 8), count_p("samples", "20000", 100), real_p("floor", "0.01", 0.0, 1.0, true, true),
        ints_p("degrees", "4,8,12,16,24", 1, 200), count_p("omega-samples", "20000")},
       scenario::prop_a},
      {"prop_b",
       {real_p("rho", "0.3", 0.0, 0.5, true, true), int_p("n-max", "4", 1, 8),
        real_p("halfwidth", "0.05", 0.0, 0.5, true, true), count_p("pairs", "1000", 10, 1e6),
        real_p("shift", "-3", -100, 100), ints_p("degrees", "4,8,12,16,24", 1, 200),
        count_p("samples", "20000"), int_p("sweep-max", "5", 2, 8)},
       scenario::prop_b},
      {"theorem3",
       {real_p("p", "2", 1.0, 10.0, true), real_p("delta", "0.25", 0.0, 0.5, true, true),
        int_p("n-max", "5", 1, 30), real_p("rho", "0.3", 0.0, 0.5, true, true),
        ints_p("degrees", "2,4,8,12,16", 1, 200), count_p("samples", "20000")},
       scenario::theorem3},
      {"theoremF",
       {real_p("p", "2", 1.0, 10.0, true), real_p("delta", "0.25", 0.0, 0.5, true, true),
        int_p("n-max", "5", 1, 30), real_p("rho", "0.3", 0.0, 0.5, true, true),
        ints_p("degrees", "2,4,8,12,16", 1, 200), count_p("samples", "20000"),
        real_p("band-max", "10", 1.0, INFINITY, true)},
       scenario::theorem_f},
  };
  return r;
}

const Entry& find_entry(const std::string& name) {
  for (const Entry& e : registry())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i <= s.size()) {
    const std::size_t j = std::min(s.find(',', i), s.size());
    out.push_back(trim(s.substr(i, j - i)));
    i = j + 1;
  }
  return out;
}

double parse_count(const std::string& s) {
  const double v = parse_real(s);
  if (v != std::floor(v)) throw std::invalid_argument("not a whole number: '" + s + "'");
  return v;
}

void check_range(const ParamSpec& ps, double v) {
  const bool lo_ok = ps.lo_open ? v > ps.lo : v >= ps.lo;
  const bool hi_ok = ps.hi_open ? v < ps.hi : v <= ps.hi;
  if (!std::isfinite(v) || !lo_ok || !hi_ok) {
    std::string range = std::string(ps.lo_open ? "(" : "[") + fmt_short(ps.lo) + ", " +
                        fmt_short(ps.hi) + (ps.hi_open ? ")" : "]");
    throw std::invalid_argument("parameter " + ps.name + " = " + fmt_short(v) + " outside " + range);
  }
}

void validate_value(const ParamSpec& ps, const std::string& value) {
  try {
    switch (ps.kind) {
      case Kind::real: check_range(ps, parse_real(value)); break;
      case Kind::integer: check_range(ps, static_cast<double>(parse_int(value))); break;
      case Kind::count: check_range(ps, parse_count(value)); break;
      case Kind::reals:
        for (const auto& t : split_list(value)) check_range(ps, parse_real(t));
        break;
      case Kind::ints:
        for (const auto& t : split_list(value)) check_range(ps, static_cast<double>(parse_int(t)));
        break;
      case Kind::choice:
        if (std::find(ps.choices.begin(), ps.choices.end(), value) == ps.choices.end())
          throw std::invalid_argument("parameter " + ps.name + " must be one of " +
                                      scenario::join(ps.choices, ", "));
        break;
    }
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    if (msg.rfind("parameter ", 0) == 0) throw;
    throw std::invalid_argument("parameter " + ps.name + ": " + msg);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const Entry& e : registry()) n.push_back(e.name);
    return n;
  }();
  return names;
}

std::map<std::string, std::string> scenario_defaults(const std::string& scenario) {
  std::map<std::string, std::string> out;
  for (const ParamSpec& ps : find_entry(scenario).params) out[ps.name] = ps.def;
  return out;
}

std::map<std::string, std::string> resolve_params(const ScenarioConfig& cfg) {
  const Entry& e = find_entry(cfg.scenario);
  std::map<std::string, std::string> out;
  for (const ParamSpec& ps : e.params) out[ps.name] = ps.def;
  for (const auto& [k, v] : cfg.params) {
    auto it = std::find_if(e.params.begin(), e.params.end(), [&](const ParamSpec& ps) { return ps.name == k; });
    if (it == e.params.end())
      throw std::invalid_argument("scenario " + cfg.scenario + " has no parameter '" + k + "'");
    out[k] = v;
  }
  for (const ParamSpec& ps : e.params) validate_value(ps, out[ps.name]);
  return out;
}

bool ScenarioReport::all_pass() const {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* ScenarioReport::find(const std::string& name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string ScenarioReport::to_json() const {
  nlohmann::json j;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["config"] = config;
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"value", number_or_null(c.value)},
                           {"threshold", number_or_null(c.threshold)},
                           {"detail", c.detail}});
  j["all_pass"] = all_pass();
  j["outputs"] = outputs;
  j["notes"] = notes;
  j["wall_seconds"] = wall_seconds;
  return j.dump(2) + "\n";
}

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Entry& e = find_entry(cfg.scenario);
  ScenarioReport report;
  report.scenario = cfg.scenario;
  report.seed = cfg.seed;
  report.config = resolve_params(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  {
    scenario::Context ctx(cfg, report);
    ctx.guarded("scenario", [&] { e.run(ctx); });
  }
  // The catch-all check only matters when it failed.
  if (const CheckResult* s = report.find("scenario"); s && s->pass)
    report.checks.erase(std::find_if(report.checks.begin(), report.checks.end(),
                                     [](const CheckResult& c) { return c.name == "scenario"; }));
  std::stable_sort(report.checks.begin(), report.checks.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string path =
      (std::filesystem::path(cfg.out_dir) / (cfg.scenario + "_report.json")).string();
  report.outputs.push_back(path);
  std::ofstream(path) << report.to_json();
  return report;
}

ScenarioConfig parse_scenario_config(const std::string& text) {
  std::string flat;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    flat += line + " ";
  }
  auto kv = parse_key_values(flat);
  ScenarioConfig cfg;
  cfg.scenario = require_key(kv, "scenario");
  cfg.seed = parse_u64(require_key(kv, "seed"));
  kv.erase("scenario");
  kv.erase("seed");
  if (auto it = kv.find("out"); it != kv.end()) {
    cfg.out_dir = it->second;
    kv.erase(it);
  }
  if (auto it = kv.find("cache"); it != kv.end()) {
    cfg.cache = parse_cache_policy(it->second);
    kv.erase(it);
  }
  cfg.params = std::move(kv);
  resolve_params(cfg);
  return cfg;
}

// ---------------------------------------------------------------------------

namespace scenario {

double Params::real(const std::string& k) const { return parse_real(str(k)); }
long Params::integer(const std::string& k) const { return parse_int(str(k)); }
long Params::count(const std::string& k) const { return static_cast<long>(parse_count(str(k))); }

std::vector<double> Params::reals(const std::string& k) const {
  std::vector<double> out;
  for (const auto& t : split_list(str(k))) out.push_back(parse_real(t));
  return out;
}

std::vector<int> Params::ints(const std::string& k) const {
  std::vector<int> out;
  for (const auto& t : split_list(str(k))) out.push_back(static_cast<int>(parse_int(t)));
  return out;
}

const std::string& Params::str(const std::string& k) const {
  auto it = v_.find(k);
  if (it == v_.end()) throw std::logic_error("scenario reads undeclared parameter " + k);
  return it->second;
}

Context::Context(const ScenarioConfig& c, ScenarioReport& r) : cfg(c), p(r.config), report(r) {
  header_ = "# scenario=" + c.scenario + "\n# seed=" + std::to_string(c.seed) + "\n";
  for (const auto& [k, v] : r.config) header_ += "# " + k + "=" + v + "\n";
}

void Context::check(const std::string& name, bool pass, double value, double threshold,
                    const std::string& detail) {
  report.checks.push_back({name, pass, value, threshold, detail});
}

void Context::guarded(const std::string& name, const std::function<void()>& fn) {
  try {
    fn();
    if (name == "scenario") check(name, true, 0.0, 0.0);
  } catch (const std::exception& e) {
    check(name, false, NAN, NAN, std::string("error: ") + e.what());
  }
}

void Context::write_table(const std::string& file, const std::string& body) {
  const std::string path = (std::filesystem::path(cfg.out_dir) / file).string();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << header_ << body;
  report.outputs.push_back(path);
}

RandomWalkConfig Context::walk_config() const {
  RandomWalkConfig rc;
  rc.seed = cfg.seed;
  return rc;
}

std::vector<HitSample> Context::hits(const IntervalSet& E, cplx z0, long N, std::uint64_t stream) {
  const std::string dir = cache_dir((std::filesystem::path(cfg.out_dir) / "cache").string());
  CachedDraw d = draw_cached(E, z0, N, walk_config(), stream, cfg.cache, dir);
  const long bad = std::count_if(d.samples.begin(), d.samples.end(),
                                 [](const HitSample& s) { return !s.terminated(); });
  if (bad * 100 > N)
    throw SamplerFailure(std::to_string(bad) + " of " + std::to_string(N) +
                         " walks did not terminate");
  if (d.from_cache) note("hit samples loaded from " + d.path);
  return std::move(d.samples);
}

LineFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<double>& sigma) {
  if (x.size() < 2 || x.size() != y.size() || y.size() != sigma.size())
    throw std::invalid_argument("line fit needs matching inputs with at least two points");
  double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(sigma[i] > 0.0)) throw std::invalid_argument("line fit needs positive errors");
    const double w = 1.0 / (sigma[i] * sigma[i]);
    S += w;
    Sx += w * x[i];
    Sy += w * y[i];
    Sxx += w * x[i] * x[i];
    Sxy += w * x[i] * y[i];
  }
  const double D = S * Sxx - Sx * Sx;
  LineFit f;
  f.slope = (S * Sxy - Sx * Sy) / D;
  f.intercept = (Sxx * Sy - Sx * Sxy) / D;
  f.slope_se = std::sqrt(S / D);
  f.intercept_se = std::sqrt(Sxx / D);
  return f;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace scenario
}  // namespace slitpot
