#include "slitpot/walk.hpp"

#include <algorithm>
#include <cmath>

#include "slitpot/text.hpp"

namespace slitpot {

RandomWalkConfig resolve_config(const IntervalSet& E, RandomWalkConfig cfg,
                                long min_steps) {
  if (cfg.eps_shell == 0.0 && !E.empty()) cfg.eps_shell = 1e-6 * E.min_length();
  if (cfg.eps_shell == 0.0) cfg.eps_shell = 1e-6;
  if (cfg.escape_radius == 0.0) cfg.escape_radius = std::max(2.0 * E.hull_radius(), 4.0);
  if (!(cfg.eps_shell > 0.0) || !(cfg.step_cap > 0.0) || !(cfg.escape_radius > 0.0))
    throw std::invalid_argument("walk parameters must be positive");
  if (!E.empty() && !(cfg.eps_shell < E.min_length() / 4.0))
    throw std::invalid_argument("eps_shell must be below a quarter of the shortest component");
  if (cfg.max_steps < std::max(1L, min_steps))
    throw std::invalid_argument("max_steps must be at least " +
                                std::to_string(std::max(1L, min_steps)));
  if (!E.empty() && !(cfg.escape_radius > E.hull_radius()))
    throw std::invalid_argument("escape radius must enclose E");
  return cfg;
}

bool OuterBoundary::contains(cplx z) const {
  switch (kind) {
    case Kind::none: return true;
    case Kind::circle: return std::abs(z - center) < size;
    case Kind::square: {
      const cplx d = z - center;
      return std::abs(d.real()) < size && std::abs(d.imag()) < size;
    }
  }
  return true;
}

bool OuterBoundary::on_horizontal_side(cplx exit) const {
  const cplx d = exit - center;
  return size - std::abs(d.imag()) <= size - std::abs(d.real());
}

Walker::Walker(const IntervalSet& E, const RandomWalkConfig& resolved, OuterBoundary outer)
    : E_(E), cfg_(resolved), outer_(outer) {
  if (E_.empty() && outer_.kind == OuterBoundary::Kind::none)
    throw std::invalid_argument("a walk needs E or an outer boundary to stop on");
}

namespace {

// Uniform direction on the unit circle without trigonometric calls: the
// squared (normalized) point of the unit disk has a uniform argument.
inline cplx random_direction(SplitMix64& rng) {
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s <= 1.0) return {(u * u - v * v) / s, 2.0 * u * v / s};
  }
}

// First hitting point of the circle |w| = R for a Brownian path started at
// z with |z| > R. Kelvin inversion turns this into the interior problem from
// R^2 / conj(z), whose hitting law is the image of the uniform law under the
// disk automorphism sending 0 to that point.
inline cplx far_field_return(cplx z, double R, SplitMix64& rng) {
  const cplx a = R / std::conj(z);  // (R^2 / conj z) / R
  const cplx u = random_direction(rng);
  return R * (u + a) / (1.0 + std::conj(a) * u);
}

}  // namespace

HitSample Walker::walk(cplx z, SplitMix64& rng) const {
  HitSample s;
  const bool has_set = !E_.empty();
  const bool free_far_field = outer_.kind == OuterBoundary::Kind::none;
  const double eps = cfg_.eps_shell;
  const double Re = cfg_.escape_radius;
  for (long step = 0; step < cfg_.max_steps; ++step) {
    double r = cfg_.step_cap;
    if (has_set) {
      const Nearest nb = E_.nearest(z);
      if (nb.distance < eps) {
        s.outcome = Outcome::hit_set;
        s.hit_point = nb.point;
        s.component = static_cast<int>(nb.component);
        s.steps = step;
        s.exit = {nb.point, 0.0};
        return s;
      }
      r = std::min(r, nb.distance);
    }
    switch (outer_.kind) {
      case OuterBoundary::Kind::none:
        break;
      case OuterBoundary::Kind::circle: {
        const cplx d = z - outer_.center;
        const double m = std::abs(d);
        const double dout = outer_.size - m;
        if (dout < eps) {
          s.outcome = Outcome::hit_outer;
          s.steps = step;
          s.exit = outer_.center + (m > 0 ? d * (outer_.size / m) : cplx(outer_.size, 0));
          return s;
        }
        r = std::min(r, dout);
        break;
      }
      case OuterBoundary::Kind::square: {
        const cplx d = z - outer_.center;
        const double dx = outer_.size - std::abs(d.real());
        const double dy = outer_.size - std::abs(d.imag());
        const double dout = std::min(dx, dy);
        if (dout < eps) {
          s.outcome = Outcome::hit_outer;
          s.steps = step;
          // Snap to the nearer side.
          cplx e = d;
          if (dy <= dx)
            e.imag(std::copysign(outer_.size, d.imag()));
          else
            e.real(std::copysign(outer_.size, d.real()));
          s.exit = outer_.center + e;
          return s;
        }
        r = std::min(r, dout);
        break;
      }
    }
    if (free_far_field && std::norm(z) > Re * Re) {
      z = far_field_return(z, Re, rng);
      continue;
    }
    z += r * random_direction(rng);
  }
  s.outcome = Outcome::unterminated;
  s.steps = cfg_.max_steps;
  s.exit = z;
  return s;
}

HitSample sample_hit(const IntervalSet& E, cplx z0, const RandomWalkConfig& cfg,
                     SplitMix64& rng) {
  if (z0.imag() == 0.0 && E.contains(z0.real()))
    throw std::invalid_argument("source point " + fmt_real(z0.real()) + " lies on E");
  const RandomWalkConfig r = resolve_config(E, cfg, 1);
  return Walker(E, r).walk(z0, rng);
}

}  // namespace slitpot
