#include "slitpot/harmonic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numeric>

#include "slitpot/parallel.hpp"
#include "slitpot/text.hpp"

namespace slitpot {

namespace {

void require_off_set(const IntervalSet& E, cplx z, const char* what) {
  if (z.imag() == 0.0 && E.contains(z.real()))
    throw std::invalid_argument(std::string(what) + " lies on E");
}

void require_samples(long N) {
  if (N < 1000) throw std::invalid_argument("need at least 1000 samples");
}

void check_termination(long nonterminated, long N, const std::string& what) {
  if (static_cast<double>(nonterminated) > 0.01 * static_cast<double>(N))
    throw SamplerFailure(what + ": " + std::to_string(nonterminated) + " of " +
                         std::to_string(N) + " walks exhausted their step budget");
}

// Sample moments of a per-walk statistic, reduced in block order.
struct Moments {
  long n = 0;
  long nonterminated = 0;
  double sum = 0.0;
  double sumsq = 0.0;

  void add(const Moments& o) {
    n += o.n;
    nonterminated += o.nonterminated;
    sum += o.sum;
    sumsq += o.sumsq;
  }
  double mean() const { return n > 0 ? sum / static_cast<double>(n) : NAN; }
  double stderr_of_mean() const {
    if (n < 2) return NAN;
    const double m = mean();
    const double var = std::max(0.0, (sumsq - static_cast<double>(n) * m * m) /
                                          static_cast<double>(n - 1));
    return std::sqrt(var / static_cast<double>(n));
  }
};

// Runs N walks from z0 and reduces stat(sample) over the terminated ones.
template <class Stat>
Moments walk_moments(const Walker& walker, cplx z0, long N, std::uint64_t stream, Stat stat) {
  const std::uint64_t seed = walker.config().seed;
  auto blocks = map_blocks<Moments>(
      static_cast<std::size_t>(N), walker.config().workers,
      [&](std::size_t lo, std::size_t hi) {
        Moments m;
        for (std::size_t i = lo; i < hi; ++i) {
          SplitMix64 rng(sample_seed(seed, stream, i));
          const HitSample s = walker.walk(z0, rng);
          if (!s.terminated()) {
            ++m.nonterminated;
            continue;
          }
          const double v = stat(s);
          ++m.n;
          m.sum += v;
          m.sumsq += v * v;
        }
        return m;
      });
  Moments total;
  for (const Moments& b : blocks) total.add(b);
  return total;
}

// Proportion estimate with binomial standard error.
Estimate proportion(long hits, long n) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

int theta_bin(const Interval& I, double x, int bins) {
  const double s = std::clamp((x - I.mid()) / I.half(), -1.0, 1.0);
  const int b = static_cast<int>(std::acos(s) / M_PI * bins);
  return std::min(b, bins - 1);
}

// Reference point inside E for the Green identity: the midpoint of the
// component closest to `near`.
double reference_point(const IntervalSet& E, cplx near) {
  return E[E.nearest(near).component].mid();
}

}  // namespace

double HarmonicMeasureEstimate::total_mass() const {
  return std::accumulate(masses.begin(), masses.end(), 0.0);
}

std::vector<HitSample> draw_samples(const Walker& walker, cplx z0, long N,
                                    std::uint64_t stream) {
  std::vector<HitSample> out(static_cast<std::size_t>(N));
  const std::uint64_t seed = walker.config().seed;
  map_blocks<char>(static_cast<std::size_t>(N), walker.config().workers,
                   [&](std::size_t lo, std::size_t hi) {
                     for (std::size_t i = lo; i < hi; ++i) {
                       SplitMix64 rng(sample_seed(seed, stream, i));
                       out[i] = walker.walk(z0, rng);
                     }
                     return char{0};
                   });
  return out;
}

HarmonicMeasureEstimate summarize_samples(const IntervalSet& E, cplx z0,
                                          const std::vector<HitSample>& samples,
                                          const RandomWalkConfig& cfg, int bins) {
  HarmonicMeasureEstimate est;
  est.source = z0;
  est.config = cfg;
  est.n_samples = static_cast<long>(samples.size());
  est.bins_per_component = bins;
  est.counts.assign(E.size(), 0);
  est.bin_counts.assign(E.size(), std::vector<long>(static_cast<std::size_t>(bins), 0));
  long long steps = 0;
  for (const HitSample& s : samples) {
    steps += s.steps;
    if (s.outcome != Outcome::hit_set) {
      ++est.nonterminated;
      continue;
    }
    const auto k = static_cast<std::size_t>(s.component);
    ++est.counts[k];
    ++est.bin_counts[k][static_cast<std::size_t>(theta_bin(E[k], s.hit_point, bins))];
  }
  const double n = static_cast<double>(est.n_samples);
  for (long c : est.counts) {
    const double m = static_cast<double>(c) / n;
    est.masses.push_back(m);
    est.stderrs.push_back(std::sqrt(m * (1.0 - m) / n));
  }
  est.nonterminated_fraction = static_cast<double>(est.nonterminated) / n;
  est.mean_steps = static_cast<double>(steps) / n;
  return est;
}

HarmonicMeasureEstimate estimate_harmonic_measure(const IntervalSet& E, cplx z0, long N,
                                                  const RandomWalkConfig& cfg,
                                                  const SamplingOptions& opt) {
  require_off_set(E, z0, "source");
  require_samples(N);
  if (E.empty()) throw std::invalid_argument("harmonic measure needs a nonempty E");
  if (opt.bins <= 0) throw std::invalid_argument("bins must be positive");
  const RandomWalkConfig rc = resolve_config(E, cfg);
  const Walker walker(E, rc);

  HarmonicMeasureEstimate est;
  if (opt.keep) {
    *opt.keep = draw_samples(walker, z0, N, opt.stream);
    est = summarize_samples(E, z0, *opt.keep, rc, opt.bins);
  } else {
    // Integer tallies commute, so a shared accumulator keeps memory flat
    // without affecting reproducibility.
    est.source = z0;
    est.config = rc;
    est.n_samples = N;
    est.bins_per_component = opt.bins;
    est.counts.assign(E.size(), 0);
    est.bin_counts.assign(E.size(), std::vector<long>(static_cast<std::size_t>(opt.bins), 0));
    long long steps = 0;
    std::mutex mu;
    map_blocks<char>(static_cast<std::size_t>(N), rc.workers,
                     [&](std::size_t lo, std::size_t hi) {
                       std::vector<std::pair<int, int>> hits;
                       hits.reserve(hi - lo);
                       long nonterm = 0;
                       long long st = 0;
                       for (std::size_t i = lo; i < hi; ++i) {
                         SplitMix64 rng(sample_seed(rc.seed, opt.stream, i));
                         const HitSample s = walker.walk(z0, rng);
                         st += s.steps;
                         if (s.outcome != Outcome::hit_set) {
                           ++nonterm;
                           continue;
                         }
                         const auto k = static_cast<std::size_t>(s.component);
                         hits.emplace_back(s.component, theta_bin(E[k], s.hit_point, opt.bins));
                       }
                       std::lock_guard<std::mutex> lk(mu);
                       for (auto [k, b] : hits) {
                         ++est.counts[static_cast<std::size_t>(k)];
                         ++est.bin_counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)];
                       }
                       est.nonterminated += nonterm;
                       steps += st;
                       return char{0};
                     });
    const double n = static_cast<double>(N);
    for (long c : est.counts) {
      const double m = static_cast<double>(c) / n;
      est.masses.push_back(m);
      est.stderrs.push_back(std::sqrt(m * (1.0 - m) / n));
    }
    est.nonterminated_fraction = static_cast<double>(est.nonterminated) / n;
    est.mean_steps = static_cast<double>(steps) / n;
  }
  check_termination(est.nonterminated, N, "harmonic measure");
  return est;
}

Estimate green_at(const IntervalSet& E, cplx z, cplx pole, long N,
                  const RandomWalkConfig& cfg, std::uint64_t stream) {
  require_off_set(E, z, "evaluation point");
  require_off_set(E, pole, "pole");
  require_samples(N);
  if (E.empty()) throw std::invalid_argument("Green function needs a nonempty E");
  if (z == pole) throw std::invalid_argument("evaluation point equals the pole");
  const RandomWalkConfig rc = resolve_config(E, cfg);
  const Walker walker(E, rc);
  const double t0 = reference_point(E, pole);
  const Moments m = walk_moments(walker, z, N, stream, [&](const HitSample& s) {
    return std::log(std::abs((s.hit_point - pole) / (s.hit_point - t0)));
  });
  check_termination(m.nonterminated, N, "green_at");
  return {m.mean() - std::log(std::abs((z - pole) / (z - t0))), m.stderr_of_mean()};
}

Estimate green_infinity_at(const IntervalSet& E, cplx z, long N,
                           const RandomWalkConfig& cfg, std::uint64_t stream) {
  require_off_set(E, z, "evaluation point");
  require_samples(N);
  if (E.empty()) throw std::invalid_argument("Green function needs a nonempty E");
  const RandomWalkConfig rc = resolve_config(E, cfg);
  const Walker walker(E, rc);
  const double t0 = reference_point(E, z);
  const Moments m = walk_moments(walker, z, N, stream, [&](const HitSample& s) {
    return std::log(std::abs(s.hit_point - t0));
  });
  check_termination(m.nonterminated, N, "green_infinity_at");
  return {std::log(std::abs(z - t0)) - m.mean(), m.stderr_of_mean()};
}

namespace {

// P_z(reach the circle before E) with binomial standard error.
Estimate escape_probability(const Walker& walker, cplx z, long N, std::uint64_t stream) {
  const Moments m = walk_moments(walker, z, N, stream, [](const HitSample& s) {
    return s.outcome == Outcome::hit_outer ? 1.0 : 0.0;
  });
  check_termination(m.nonterminated, N, "escape probability");
  return proportion(static_cast<long>(std::llround(m.sum)), N);
}

Estimate ratio_estimate(const Estimate& num, const Estimate& den) {
  if (den.value <= 0.0) return {NAN, NAN};
  const double v = num.value / den.value;
  if (num.value <= 0.0) return {0.0, num.stderr_ / den.value};
  const double rel = std::hypot(num.stderr_ / num.value, den.stderr_ / den.value);
  return {v, v * rel};
}

}  // namespace

MartinEstimate martin_ratio(const IntervalSet& E, const std::vector<cplx>& queries, double R,
                            long N, const RandomWalkConfig& cfg) {
  require_samples(N);
  double scale = 1.0;  // the normalization point i
  for (const cplx& q : queries) {
    require_off_set(E, q, "query point");
    scale = std::max(scale, std::abs(q));
  }
  for (const Interval& I : E.components())
    for (double e : {I.a, I.b})
      if (std::abs(e) < R) scale = std::max(scale, std::abs(e));
  if (!(R > 10.0 * scale))
    throw std::invalid_argument("outer radius " + fmt_short(R) + " must exceed " +
                                fmt_short(10.0 * scale));
  const RandomWalkConfig rc = resolve_config(E, cfg);
  const cplx I{0.0, 1.0};

  MartinEstimate out;
  out.queries = queries;
  out.R = R;
  for (int level = 0; level < 2; ++level) {
    const double radius = level == 0 ? R : 2.0 * R;
    const Walker walker(E, rc, OuterBoundary::circle(radius));
    const std::uint64_t base = 0x4d000000ull + static_cast<std::uint64_t>(level) * 0x10000ull;
    const Estimate pi = escape_probability(walker, I, N, base);
    (level == 0 ? out.escape_i_R : out.escape_i_2R) = pi;
    auto& esc = level == 0 ? out.escape_R : out.escape_2R;
    auto& val = level == 0 ? out.values_R : out.values;
    for (std::size_t k = 0; k < queries.size(); ++k) {
      if (queries[k] == I) {
        esc.push_back(pi);
        val.push_back({1.0, 0.0});
        continue;
      }
      const Estimate p = escape_probability(walker, queries[k], N, base + 1 + k);
      esc.push_back(p);
      val.push_back(ratio_estimate(p, pi));
    }
  }
  double ymax = 0.0;
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const double a = out.values[k].value, b = out.values_R[k].value;
    if (a > 0.0) out.discrepancy = std::max(out.discrepancy, std::abs(a - b) / a);
    if (queries[k].real() == 0.0 && queries[k].imag() > ymax) {
      ymax = queries[k].imag();
      out.sigma_hat = a / ymax;
    }
  }
  out.converged = out.discrepancy <= 0.10;
  return out;
}

BetaSample beta_at(const IntervalSet& E, double t, long N, const RandomWalkConfig& cfg,
                   std::uint64_t stream) {
  if (!(t > 0.0)) throw std::invalid_argument("beta_at needs t > 0");
  BetaSample out;
  out.t = t;
  if (E.contains(t)) return out;  // the source is already on the slit
  require_samples(N);
  const RandomWalkConfig rc = resolve_config(E, cfg);
  const Walker walker(E, rc, OuterBoundary::square({t, 0.0}, t / 2.0));
  const Moments m = walk_moments(walker, {t, 0.0}, N, stream, [](const HitSample& s) {
    return s.outcome == Outcome::hit_outer ? 1.0 : 0.0;
  });
  check_termination(m.nonterminated, N, "beta_at");
  const Estimate p = proportion(static_cast<long>(std::llround(m.sum)), N);
  out.beta_hat = p.value;
  out.stderr_ = p.stderr_;
  out.n_samples = N;
  return out;
}

std::vector<SquarePointResult> square_lemma_check(const IntervalSet& E, double x, double t,
                                                  const std::vector<cplx>& points, long N,
                                                  const RandomWalkConfig& cfg) {
  require_samples(N);
  if (!(t > 0.0)) throw std::invalid_argument("square half size must be positive");
  const RandomWalkConfig rc = resolve_config(E, cfg);
  const OuterBoundary sq = OuterBoundary::square({x, 0.0}, t);
  const Walker walker(E, rc, sq);
  std::vector<SquarePointResult> out;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const cplx z = points[k];
    if (!sq.contains(z)) throw std::invalid_argument("point outside the square");
    require_off_set(E, z, "point");
    // Encode the outcome as 1 (horizontal), -1 (vertical), 0 (slit).
    long nh = 0, nv = 0, nonterm = 0;
    const auto blocks = map_blocks<std::array<long, 3>>(
        static_cast<std::size_t>(N), rc.workers, [&](std::size_t lo, std::size_t hi) {
          std::array<long, 3> c{0, 0, 0};
          for (std::size_t i = lo; i < hi; ++i) {
            SplitMix64 rng(sample_seed(rc.seed, 0x5a000000ull + k, i));
            const HitSample s = walker.walk(z, rng);
            if (!s.terminated()) ++c[2];
            else if (s.outcome == Outcome::hit_outer) ++c[sq.on_horizontal_side(s.exit) ? 0 : 1];
          }
          return c;
        });
    for (const auto& c : blocks) {
      nh += c[0];
      nv += c[1];
      nonterm += c[2];
    }
    check_termination(nonterm, N, "square_lemma_check");
    SquarePointResult r;
    r.point = z;
    r.omega_H = proportion(nh, N);
    r.omega_V = proportion(nv, N);
    r.holds = r.omega_H.value >= r.omega_V.value - 3.0 * (r.omega_H.stderr_ + r.omega_V.stderr_);
    out.push_back(r);
  }
  return out;
}

DecayTable lemma1_decay_check(const IntervalSet& E, std::size_t marked,
                              const std::vector<double>& y_grid, long N,
                              const RandomWalkConfig& cfg) {
  if (E.size() < 2) throw std::invalid_argument("decay check needs at least two components");
  if (marked >= E.size()) throw std::invalid_argument("marked component out of range");
  if (y_grid.empty()) throw std::invalid_argument("empty y grid");
  for (std::size_t k = 0; k < y_grid.size(); ++k) {
    if (!(y_grid[k] >= 1.0)) throw std::invalid_argument("y grid values must be >= 1");
    if (k > 0 && !(y_grid[k] > y_grid[k - 1]))
      throw std::invalid_argument("y grid must be increasing");
  }
  double scale = std::max(1.0, y_grid.back());
  for (const Interval& I : E.components())
    scale = std::max({scale, std::abs(I.a), std::abs(I.b)});
  DecayTable tab;
  tab.R = 12.5 * scale;
  std::vector<cplx> queries;
  for (double y : y_grid) queries.emplace_back(0.0, y);
  const MartinEstimate M = martin_ratio(E, queries, tab.R, N, cfg);
  tab.martin_converged = M.converged;
  for (std::size_t k = 0; k < y_grid.size(); ++k) {
    SamplingOptions opt;
    opt.bins = 1;
    opt.stream = 0x1e000000ull + k;
    const HarmonicMeasureEstimate h = estimate_harmonic_measure(E, queries[k], N, cfg, opt);
    DecayRow row;
    row.y = y_grid[k];
    row.h = {h.masses[marked], h.stderrs[marked]};
    row.martin = M.values[k];
    row.ratio = row.h.value / row.martin.value;
    row.ratio_stderr =
        row.ratio * std::hypot(row.h.stderr_ / row.h.value, row.martin.stderr_ / row.martin.value);
    tab.rows.push_back(row);
  }
  tab.decreasing_end = tab.rows.back().ratio < tab.rows.front().ratio;
  tab.monotone_smoothed = true;
  for (std::size_t k = 1; k < tab.rows.size(); ++k) {
    const DecayRow& a = tab.rows[k - 1];
    const DecayRow& b = tab.rows[k];
    if (b.ratio > a.ratio + 3.0 * std::hypot(a.ratio_stderr, b.ratio_stderr))
      tab.monotone_smoothed = false;
  }
  return tab;
}

Estimate harmonic_moment(const IntervalSet& E, double lambda, double d, long N,
                         const RandomWalkConfig& cfg) {
  if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("moment order must lie in (0, 1)");
  const Location loc = locate(E, lambda);
  if (loc.kind != Location::Kind::component) throw std::invalid_argument("lambda must lie in E");
  require_samples(N);
  const std::size_t k = loc.index;
  const RandomWalkConfig rc = resolve_config(E, cfg);
  const Walker walker(E, rc);
  const cplx I{0.0, 1.0};
  auto f = [&](double x) {
    const double r = std::abs(x - lambda);
    return r > 0.0 ? std::pow(r, -d) : 0.0;  // a hit exactly at lambda has probability zero
  };

  // Unconditional part: split the statistic by membership in component k.
  const long Nu = N - N / 5;
  struct Split { Moments out, in; };
  auto blocks = map_blocks<Split>(static_cast<std::size_t>(Nu), rc.workers,
                                  [&](std::size_t lo, std::size_t hi) {
    Split s;
    for (std::size_t i = lo; i < hi; ++i) {
      SplitMix64 rng(sample_seed(rc.seed, 0x6d000000ull, i));
      const HitSample h = walker.walk(I, rng);
      if (!h.terminated()) {
        ++s.out.nonterminated;
        continue;
      }
      Moments& m = static_cast<std::size_t>(h.component) == k ? s.in : s.out;
      const double v = f(h.hit_point);
      ++m.n;
      m.sum += v;
      m.sumsq += v * v;
    }
    return s;
  });
  Split u;
  for (const Split& b : blocks) {
    u.out.add(b.out);
    u.in.add(b.in);
  }
  check_termination(u.out.nonterminated, Nu, "harmonic_moment");

  // Conditional part: walks whose hits fall elsewhere are discarded.
  const long Nc = N / 5;
  const long max_attempts = 100 * std::max(Nc, 1L);
  Moments cond;
  long attempts = 0;
  long nonterm = 0;
  while (cond.n < Nc && attempts < max_attempts) {
    const long chunk = std::min<long>(max_attempts - attempts, std::max<long>(4096, 2 * (Nc - cond.n)));
    const std::uint64_t offset = static_cast<std::uint64_t>(attempts);
    auto cb = map_blocks<Moments>(static_cast<std::size_t>(chunk), rc.workers,
                                  [&](std::size_t lo, std::size_t hi) {
      Moments m;
      for (std::size_t i = lo; i < hi; ++i) {
        SplitMix64 rng(sample_seed(rc.seed, 0x6e000000ull, offset + i));
        const HitSample h = walker.walk(I, rng);
        if (!h.terminated()) {
          ++m.nonterminated;
          continue;
        }
        if (static_cast<std::size_t>(h.component) != k) continue;
        const double v = f(h.hit_point);
        ++m.n;
        m.sum += v;
        m.sumsq += v * v;
      }
      return m;
    });
    for (const Moments& b : cb) cond.add(b);
    attempts += chunk;
  }
  nonterm += cond.nonterminated;
  check_termination(nonterm, std::max(attempts, 1L), "harmonic_moment");

  Moments pooled = u.in;
  pooled.add(cond);
  const double n_u = static_cast<double>(Nu);
  const double mass_k = static_cast<double>(u.in.n) / n_u;
  const double mu_k = pooled.n > 0 ? pooled.mean() : 0.0;
  const double value = u.out.sum / n_u + mass_k * mu_k;

  // Variance of the unconditional statistic with the component-k term
  // replaced by its conditional mean, plus the conditional-mean error.
  const double y_mean = u.out.sum / n_u + mass_k * mu_k;
  const double y2 = (u.out.sumsq + static_cast<double>(u.in.n) * mu_k * mu_k) / n_u;
  const double var_y = std::max(0.0, y2 - y_mean * y_mean);
  const double se_mu = pooled.n > 1 ? pooled.stderr_of_mean() : 0.0;
  const double se = std::sqrt(var_y / n_u + mass_k * mass_k * se_mu * se_mu);
  return {value, se};
}

}  // namespace slitpot
