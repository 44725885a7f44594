#include "slitpot/cache.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <stdexcept>

#include "slitpot/text.hpp"

namespace slitpot {

CachePolicy parse_cache_policy(const std::string& s) {
  if (s == "use") return CachePolicy::use;
  if (s == "refresh") return CachePolicy::refresh;
  if (s == "off") return CachePolicy::off;
  throw std::invalid_argument("cache policy must be use, refresh or off");
}

std::string cache_policy_name(CachePolicy p) {
  switch (p) {
    case CachePolicy::use: return "use";
    case CachePolicy::refresh: return "refresh";
    case CachePolicy::off: return "off";
  }
  return "use";
}

std::string cache_key(const IntervalSet& E, cplx z0, const RandomWalkConfig& resolved,
                      std::uint64_t stream) {
  std::string s = format_interval_set(E);
  s += "z0=" + fmt_real(z0.real()) + "," + fmt_real(z0.imag());
  s += " eps=" + fmt_real(resolved.eps_shell);
  s += " step_cap=" + fmt_real(resolved.step_cap);
  s += " max_steps=" + std::to_string(resolved.max_steps);
  s += " escape=" + fmt_real(resolved.escape_radius);
  s += " seed=" + std::to_string(resolved.seed);
  s += " stream=" + std::to_string(stream);
  return hex64(fnv1a64(s));
}

std::string cache_dir(const std::string& fallback) {
  if (const char* env = std::getenv("SLITPOT_CACHE_DIR"); env && *env) return env;
  return fallback;
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

void store_samples(const std::string& path, const std::string& key, const IntervalSet& E,
                   cplx z0, const RandomWalkConfig& resolved,
                   const std::vector<HitSample>& samples) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  const std::string tmp = path + ".tmp";
  {
    File f(std::fopen(tmp.c_str(), "w"));
    if (!f) throw std::runtime_error("cannot write cache file " + tmp);
    std::fprintf(f.get(), "# key=%s\n", key.c_str());
    std::fprintf(f.get(), "# E-hash=%s z0=%s,%s eps=%s seed=%llu N=%zu\n",
                 hex64(fnv1a64(format_interval_set(E))).c_str(), fmt_real(z0.real()).c_str(),
                 fmt_real(z0.imag()).c_str(), fmt_real(resolved.eps_shell).c_str(),
                 static_cast<unsigned long long>(resolved.seed), samples.size());
    std::fprintf(f.get(), "hit_point,component,steps\n");
    for (const HitSample& s : samples) {
      if (s.outcome == Outcome::hit_set)
        std::fprintf(f.get(), "%.17g,%d,%ld\n", s.hit_point, s.component, s.steps);
      else
        std::fprintf(f.get(), "nan,-1,%ld\n", s.steps);
    }
    if (std::ferror(f.get())) throw std::runtime_error("write error on " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<std::vector<HitSample>> load_samples(const std::string& path, const std::string& key,
                                                   long N) {
  File f(std::fopen(path.c_str(), "r"));
  if (!f) return std::nullopt;
  char line[256];
  if (!std::fgets(line, sizeof line, f.get())) return std::nullopt;
  if (trim(line) != "# key=" + key) return std::nullopt;
  std::vector<HitSample> out;
  out.reserve(static_cast<std::size_t>(N));
  bool header_done = false;
  while (std::fgets(line, sizeof line, f.get())) {
    if (line[0] == '#') continue;
    if (!header_done) {
      if (trim(line) != "hit_point,component,steps") return std::nullopt;
      header_done = true;
      continue;
    }
    if (static_cast<long>(out.size()) >= N) return std::nullopt;
    char* end = nullptr;
    HitSample s;
    const double x = std::strtod(line, &end);
    if (*end != ',') return std::nullopt;
    const long comp = std::strtol(end + 1, &end, 10);
    if (*end != ',') return std::nullopt;
    s.steps = std::strtol(end + 1, &end, 10);
    if (*end != '\n' && *end != '\0') return std::nullopt;
    if (comp >= 0) {
      if (!std::isfinite(x)) return std::nullopt;
      s.outcome = Outcome::hit_set;
      s.component = static_cast<int>(comp);
      s.hit_point = x;
      s.exit = {x, 0.0};
    }
    out.push_back(s);
  }
  if (!header_done || static_cast<long>(out.size()) != N) return std::nullopt;
  return out;
}

CachedDraw draw_cached(const IntervalSet& E, cplx z0, long N, const RandomWalkConfig& cfg,
                       std::uint64_t stream, CachePolicy policy, const std::string& dir) {
  const RandomWalkConfig rc = resolve_config(E, cfg);
  CachedDraw out;
  out.key = cache_key(E, z0, rc, stream);
  if (policy != CachePolicy::off) {
    out.path = (std::filesystem::path(dir) / ("hits_" + out.key + "_" + std::to_string(N) + ".csv"))
                   .string();
    if (policy == CachePolicy::use) {
      if (auto s = load_samples(out.path, out.key, N)) {
        out.samples = std::move(*s);
        out.from_cache = true;
        return out;
      }
    }
  }
  out.samples = draw_samples(Walker(E, rc), z0, N, stream);
  if (policy != CachePolicy::off) store_samples(out.path, out.key, E, z0, rc, out.samples);
  return out;
}

}  // namespace slitpot
