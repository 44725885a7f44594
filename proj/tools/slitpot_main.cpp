// slitpot: run experiment scenarios and validate config files.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slitpot/entire.hpp"
#include "slitpot/experiments.hpp"
#include "slitpot/interval_set.hpp"
#include "slitpot/text.hpp"
#include "slitpot/weight.hpp"

using namespace slitpot;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// `--key value` and `--key=value` pairs left over after the fixed options.
std::map<std::string, std::string> scenario_params(const std::vector<std::string>& extras) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::string k = extras[i];
    if (k.rfind("--", 0) != 0) throw std::invalid_argument("unexpected argument '" + k + "'");
    k = k.substr(2);
    std::string v;
    if (const auto eq = k.find('='); eq != std::string::npos) {
      v = k.substr(eq + 1);
      k = k.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw std::invalid_argument("--" + k + " needs a value");
      v = extras[++i];
    }
    out[k] = v;
  }
  return out;
}

int print_report(const ScenarioReport& r) {
  for (const CheckResult& c : r.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << fmt_short(c.value)
              << " threshold=" << fmt_short(c.threshold)
              << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
  for (const std::string& n : r.notes) std::cout << "note: " << n << '\n';
  for (const std::string& o : r.outputs) std::cout << "wrote " << o << '\n';
  std::cout << r.scenario << ": " << (r.all_pass() ? "all checks passed" : "some checks failed")
            << " in " << fmt_short(r.wall_seconds) << " s\n";
  return r.all_pass() ? 0 : 1;
}

/// Stripped of comments and blank lines.
std::string content_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto h = line.find('#');
    const std::string t = trim(h == std::string::npos ? line : line.substr(0, h));
    if (!t.empty()) out += t + '\n';
  }
  return out;
}

int validate(const std::string& path, const std::string& support) {
  const std::string text = read_file(path);
  const std::string body = content_lines(text);
  if (body.find("scenario=") != std::string::npos) {
    ScenarioConfig cfg = parse_scenario_config(text);
    const auto resolved = resolve_params(cfg);
    std::cout << "scenario config: " << cfg.scenario << " seed=" << cfg.seed << '\n';
    for (const auto& [k, v] : resolved) std::cout << "  " << k << " = " << v << '\n';
    return 0;
  }
  if (body.find("model=") != std::string::npos) {
    const auto kv = parse_key_values(trim(body));
    const std::string& m = require_key(kv, "model");
    if (m == "power_law" || m == "double_exp" || m == "const" || m == "grid") {
      const IntervalSet E = support.empty() ? IntervalSet({Interval{-1.0, 1.0}})
                                            : parse_interval_set(read_file(support));
      const std::string dir = path.find('/') == std::string::npos
                                  ? "."
                                  : path.substr(0, path.rfind('/'));
      const Weight W = parse_weight(body, E, dir);
      std::cout << "weight: " << format_weight(W) << '\n';
      return 0;
    }
    const CanonicalProductSpec P = parse_product_spec(body);
    std::cout << "product: " << format_product_spec(P) << '\n';
    return 0;
  }
  if (body.find("p=") != std::string::npos || body.find("delta=") != std::string::npos) {
    const BenedicksSetSpec s = parse_benedicks_spec(body);
    const IntervalSet E = make_benedicks_set(s);
    std::cout << "benedicks set: " << format_benedicks_spec(s) << ", " << E.size()
              << " intervals\n";
    return 0;
  }
  const IntervalSet E = parse_interval_set(text);
  std::cout << "interval set: " << E.size() << " intervals\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic measure and weighted approximation experiments"};
  app.require_subcommand(1);

  ScenarioConfig cfg;
  std::string cache = "use";
  auto* run = app.add_subcommand("run", "run a scenario; extra --name value pairs set parameters");
  run->add_option("scenario", cfg.scenario, "scenario name")->required();
  run->add_option("--seed", cfg.seed, "random seed")->required();
  run->add_option("--out", cfg.out_dir, "output directory")->required();
  run->add_option("--cache", cache, "hit-sample cache policy")
      ->check(CLI::IsMember({"use", "refresh", "off"}));
  run->allow_extras();

  std::string config_path, support;
  auto* val = app.add_subcommand("validate", "check a config file");
  val->add_option("config-file", config_path)->required()->check(CLI::ExistingFile);
  val->add_option("--support", support, "interval set file used when validating a weight")
      ->check(CLI::ExistingFile);

  app.add_subcommand("list", "list scenarios with their default parameters");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      cfg.cache = parse_cache_policy(cache);
      cfg.params = scenario_params(run->remaining());
      return print_report(run_scenario(cfg));
    }
    if (*val) return validate(config_path, support);
    for (const std::string& s : scenario_names()) {
      std::cout << s << '\n';
      for (const auto& [k, v] : scenario_defaults(s)) std::cout << "  --" << k << ' ' << v << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
