#pragma once

// Shared plumbing for the scenario implementations.

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "slitpot/experiments.hpp"
#include "slitpot/harmonic.hpp"

namespace slitpot::scenario {

class Params {
 public:
  explicit Params(std::map<std::string, std::string> v) : v_(std::move(v)) {}
  double real(const std::string& k) const;
  long integer(const std::string& k) const;
  /// Counts accept forms such as 1e6.
  long count(const std::string& k) const;
  std::vector<double> reals(const std::string& k) const;
  std::vector<int> ints(const std::string& k) const;
  const std::string& str(const std::string& k) const;

 private:
  std::map<std::string, std::string> v_;
};

class Context {
 public:
  Context(const ScenarioConfig& cfg, ScenarioReport& report);

  const ScenarioConfig& cfg;
  Params p;
  ScenarioReport& report;

  void check(const std::string& name, bool pass, double value, double threshold,
             const std::string& detail = {});
  /// Runs fn; an exception becomes a failed check called `name`.
  void guarded(const std::string& name, const std::function<void()>& fn);
  void note(const std::string& s) { report.notes.push_back(s); }

  /// Writes the `#` config header followed by `body` (a column header line
  /// and rows) to out_dir/file and records the path.
  void write_table(const std::string& file, const std::string& body);

  RandomWalkConfig walk_config() const;
  /// N walks from z0 through the hit-sample cache; fails when more than 1%
  /// of them did not end on E.
  std::vector<HitSample> hits(const IntervalSet& E, cplx z0, long N, std::uint64_t stream);

 private:
  std::string header_;
};

/// Weighted least squares line y = a + b x with standard errors.
struct LineFit {
  double intercept = 0.0, slope = 0.0;
  double intercept_se = 0.0, slope_se = 0.0;
};
LineFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<double>& sigma);

std::string join(const std::vector<std::string>& parts, const std::string& sep);

void lemma5(Context& c);
void lemma6(Context& c);
void square_lemma(Context& c);
void lemma1(Context& c);
void martin_sigma(Context& c);
void al_classify(Context& c);
void moment65(Context& c);
void krein_identity(Context& c);
void hardy(Context& c);
void prop_a(Context& c);
void prop_b(Context& c);
void theorem3(Context& c);
void theorem_f(Context& c);

}  // namespace slitpot::scenario
