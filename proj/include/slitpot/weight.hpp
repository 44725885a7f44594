#pragma once

#include <string>
#include <vector>

#include "slitpot/interval_set.hpp"

namespace slitpot {

/// A weight W >= 1 on E, +inf off E. Values are handled as log W throughout.
class Weight {
 public:
  enum class Model {
    grid,          // table (x_j, W(x_j)), log W linear between nodes of a component
    per_interval,  // W constant on each component
    power_law      // log W(x) = pi cot(pi rho) |x|^(2 rho)
  };

  /// Table weight. Nodes must lie in E and every component needs at least one.
  static Weight grid(IntervalSet E, std::vector<double> x, std::vector<double> log_w);
  static Weight per_interval(IntervalSet E, std::vector<double> log_w);
  static Weight constant(IntervalSet E, double log_w);
  /// W|I_k = exp exp(k + 1) on the k-th component (counting from 0).
  static Weight double_exponential(IntervalSet E);
  static Weight power_law(IntervalSet E, double rho);

  /// W_r(x) = W(x) (1 + |x|)^r. The W >= 1 invariant refers to r = 0.
  Weight shifted(double r) const;

  Model model() const { return model_; }
  const IntervalSet& support() const { return E_; }
  double rho() const { return rho_; }
  double shift() const { return r_; }
  const std::vector<double>& table_x() const { return x_; }
  const std::vector<double>& table_log_w() const { return log_w_; }

  /// +inf off E.
  double log_weight(double x) const;
  /// Same, for a point already known to lie in component k.
  double log_weight_in(std::size_t k, double x) const;

 private:
  Weight() = default;
  void check_base() const;

  IntervalSet E_;
  Model model_ = Model::per_interval;
  std::vector<double> x_, log_w_;  // grid nodes, or one value per component
  std::vector<std::size_t> first_;  // grid: first node index of each component
  double rho_ = 0.0;
  double r_ = 0.0;
};

/// `model=power_law rho=0.3 [r=-3]`, `model=double_exp [r=..]`,
/// `model=const logw=1`, `model=grid file=<path>` (rows `x W`).
/// The support is supplied separately; grid files are read relative to `base_dir`.
Weight parse_weight(const std::string& text, const IntervalSet& E,
                    const std::string& base_dir = ".");
std::string format_weight(const Weight& W);

}  // namespace slitpot
