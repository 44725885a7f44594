#include "slitpot/weight.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "slitpot/text.hpp"

namespace slitpot {

Weight Weight::grid(IntervalSet E, std::vector<double> x, std::vector<double> log_w) {
  if (x.size() != log_w.size()) throw std::invalid_argument("weight table size mismatch");
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return x[i] < x[j]; });
  Weight W;
  W.E_ = std::move(E);
  W.model_ = Model::grid;
  for (auto i : order) {
    if (!W.x_.empty() && x[i] == W.x_.back()) throw std::invalid_argument("duplicate weight node");
    W.x_.push_back(x[i]);
    W.log_w_.push_back(log_w[i]);
  }
  W.first_.assign(W.E_.size() + 1, 0);
  std::vector<std::size_t> count(W.E_.size(), 0);
  for (double t : W.x_) {
    const Location loc = locate(W.E_, t);
    if (loc.kind != Location::Kind::component)
      throw std::invalid_argument("weight node " + fmt_short(t) + " outside E");
    ++count[loc.index];
  }
  for (std::size_t k = 0; k < W.E_.size(); ++k) {
    if (count[k] == 0) throw std::invalid_argument("component without weight nodes");
    W.first_[k + 1] = W.first_[k] + count[k];
  }
  W.check_base();
  return W;
}

Weight Weight::per_interval(IntervalSet E, std::vector<double> log_w) {
  if (log_w.size() != E.size()) throw std::invalid_argument("one weight value per component");
  Weight W;
  W.E_ = std::move(E);
  W.model_ = Model::per_interval;
  W.log_w_ = std::move(log_w);
  W.check_base();
  return W;
}

Weight Weight::constant(IntervalSet E, double log_w) {
  const std::size_t n = E.size();
  return per_interval(std::move(E), std::vector<double>(n, log_w));
}

Weight Weight::double_exponential(IntervalSet E) {
  std::vector<double> v(E.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::exp(static_cast<double>(k + 1));
  return per_interval(std::move(E), std::move(v));
}

Weight Weight::power_law(IntervalSet E, double rho) {
  if (!(rho > 0.0 && rho < 0.5)) throw std::invalid_argument("power-law weight needs 0 < rho < 1/2");
  Weight W;
  W.E_ = std::move(E);
  W.model_ = Model::power_law;
  W.rho_ = rho;
  return W;
}

Weight Weight::shifted(double r) const {
  if (!std::isfinite(r)) throw std::invalid_argument("shift must be finite");
  Weight W = *this;
  W.r_ = r;
  return W;
}

void Weight::check_base() const {
  if (E_.empty()) throw std::invalid_argument("weight support is empty");
  for (double v : log_w_)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("weight must be finite and >= 1 on E");
}

double Weight::log_weight_in(std::size_t k, double x) const {
  double v = 0.0;
  switch (model_) {
    case Model::per_interval:
      v = log_w_[k];
      break;
    case Model::power_law:
      v = std::numbers::pi / std::tan(std::numbers::pi * rho_) * std::pow(std::abs(x), 2.0 * rho_);
      break;
    case Model::grid: {
      const std::size_t lo = first_[k], hi = first_[k + 1];
      if (x <= x_[lo]) { v = log_w_[lo]; break; }
      if (x >= x_[hi - 1]) { v = log_w_[hi - 1]; break; }
      const auto it = std::upper_bound(x_.begin() + static_cast<long>(lo),
                                       x_.begin() + static_cast<long>(hi), x);
      const std::size_t j = static_cast<std::size_t>(it - x_.begin());
      const double s = (x - x_[j - 1]) / (x_[j] - x_[j - 1]);
      v = (1.0 - s) * log_w_[j - 1] + s * log_w_[j];
      break;
    }
  }
  if (r_ != 0.0) v += r_ * std::log1p(std::abs(x));
  return v;
}

double Weight::log_weight(double x) const {
  const Location loc = locate(E_, x);
  if (loc.kind != Location::Kind::component) return INFINITY;
  return log_weight_in(loc.index, x);
}

// ---------------------------------------------------------------------------

Weight parse_weight(const std::string& text, const IntervalSet& E, const std::string& base_dir) {
  const auto kv = parse_key_values(text);
  const std::string& model = require_key(kv, "model");
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : kv) {
      bool ok = k == "model" || k == "r";
      for (const char* a : keys) ok = ok || k == a;
      if (!ok) throw std::invalid_argument("unknown weight key '" + k + "'");
    }
  };
  Weight W = [&] {
    if (model == "power_law") {
      allow({"rho"});
      return Weight::power_law(E, parse_real(require_key(kv, "rho")));
    }
    if (model == "double_exp") {
      allow({});
      return Weight::double_exponential(E);
    }
    if (model == "const") {
      allow({"logw"});
      return Weight::constant(E, parse_real(require_key(kv, "logw")));
    }
    if (model == "grid") {
      allow({"file"});
      std::filesystem::path path = require_key(kv, "file");
      if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
      std::ifstream in(path);
      if (!in) throw std::invalid_argument("cannot open weight table " + path.string());
      std::vector<double> xs, lw;
      std::string line;
      while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream row(t);
        std::string xs_s, ws_s, extra;
        if (!(row >> xs_s >> ws_s) || (row >> extra))
          throw std::invalid_argument("weight table rows are `x W`");
        const double w = parse_real(ws_s);
        if (!(w >= 1.0)) throw std::invalid_argument("weight table value below 1");
        xs.push_back(parse_real(xs_s));
        lw.push_back(std::log(w));
      }
      return Weight::grid(E, std::move(xs), std::move(lw));
    }
    throw std::invalid_argument("unknown weight model '" + model + "'");
  }();
  if (kv.count("r")) W = W.shifted(parse_real(kv.at("r")));
  return W;
}

std::string format_weight(const Weight& W) {
  std::string out;
  switch (W.model()) {
    case Weight::Model::power_law:
      out = "model=power_law rho=" + fmt_real(W.rho());
      break;
    case Weight::Model::per_interval: {
      const auto& v = W.table_log_w();
      bool all_equal = std::all_of(v.begin(), v.end(), [&](double t) { return t == v.front(); });
      bool dexp = true;
      for (std::size_t k = 0; k < v.size(); ++k)
        dexp = dexp && v[k] == std::exp(static_cast<double>(k + 1));
      if (dexp) out = "model=double_exp";
      else if (all_equal) out = "model=const logw=" + fmt_real(v.front());
      else throw std::invalid_argument("per-interval weight has no text form");
      break;
    }
    case Weight::Model::grid:
      throw std::invalid_argument("grid weights are written as a table file");
  }
  if (W.shift() != 0.0) out += " r=" + fmt_real(W.shift());
  return out;
}

}  // namespace slitpot
