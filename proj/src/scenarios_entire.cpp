// Scenarios on canonical products.

#include <cmath>
#include <numbers>
#include <sstream>

#include "scenario_context.hpp"
#include "slitpot/entire.hpp"
#include "slitpot/text.hpp"

namespace slitpot::scenario {

void krein_identity(Context& c) {
  const double q = c.p.real("q");
  const double x1 = c.p.real("x1") > 0.0 ? c.p.real("x1") : q;
  const long K = c.p.integer("K");
  const CanonicalProductSpec spec = CanonicalProductSpec::geometric(x1, q);
  const KreinFunction F = krein_from_product(spec, K);

  // Probe points: -1 and points spread over annuli, kept off the zeros.
  std::vector<cplx> probes{{-1.0, 0.0}};
  SplitMix64 rng(sample_seed(c.cfg.seed, 0x4b, 0));
  while (static_cast<long>(probes.size()) < c.p.integer("probes")) {
    const double r = 0.5 * std::pow(40.0 * x1, rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const cplx z = std::polar(r, phi);
    bool near = false;
    for (double l : F.zeros) near = near || std::abs(z - l) < 1e-3 * l;
    if (!near) probes.push_back(z);
  }
  std::ostringstream tab;
  tab << "re,im,residual\n";
  double worst = 0.0;
  for (const cplx& z : probes) {
    const double r = krein_identity_residual(spec, F, z);
    worst = std::max(worst, r);
    tab << fmt_real(z.real()) << ',' << fmt_real(z.imag()) << ',' << fmt_real(r) << '\n';
  }
  c.write_table("krein_identity.csv", tab.str());
  const double tol = c.p.real("tol");
  c.check("max_residual", worst < tol, worst, tol,
          "relative |1/B - sum| over " + std::to_string(probes.size()) + " points, " +
              std::to_string(K) + " terms");
}

void hardy(Context& c) {
  const double rho = c.p.real("rho");
  std::vector<long> ns;
  for (int n : c.p.ints("n")) ns.push_back(n);
  const long N = c.p.count("N");
  const int tail = static_cast<int>(c.p.integer("tail"));
  const auto rows = hardy_ratio(rho, ns, N, tail);
  const auto half = hardy_ratio(0.5, ns, N, tail);

  std::ostringstream tab;
  tab << "n,lambda,deriv,ratio,log_abs_deriv,rho\n";
  for (const auto* set : {&rows, &half})
    for (const HardyRow& r : *set)
      tab << r.n << ',' << fmt_real(r.lambda) << ',' << fmt_real(r.deriv.value()) << ','
          << fmt_real(r.ratio) << ',' << fmt_real(r.deriv.log_abs) << ','
          << (set == &rows ? c.p.str("rho") : "0.5") << '\n';
  c.write_table("hardy.csv", tab.str());

  if (rows.size() >= 2) {
    const HardyRow& a = rows[rows.size() - 2];
    const HardyRow& b = rows.back();
    const double q = std::exp(b.log_ratio - a.log_ratio);
    const double band = c.p.real("band");
    c.check("tail_flatness", std::abs(q - 1.0) <= band, q, 1.0 + band,
            "r(" + std::to_string(b.n) + ") / r(" + std::to_string(a.n) + ")");
  }
  double dev = 0.0;
  for (const HardyRow& r : half) dev = std::max(dev, std::abs(r.ratio - 0.5));
  c.check("closed_form_half", dev <= 1e-10, dev, 1e-10, "max |r(n) - 1/2| at rho = 1/2");
}

}  // namespace slitpot::scenario
