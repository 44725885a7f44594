#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slitpot/harmonic.hpp"

namespace slitpot {

enum class CachePolicy { use, refresh, off };

CachePolicy parse_cache_policy(const std::string& s);
std::string cache_policy_name(CachePolicy p);

/// Stable digest of the serialized set, source, walk parameters, seed and
/// stream. `resolved` must come from resolve_config.
std::string cache_key(const IntervalSet& E, cplx z0, const RandomWalkConfig& resolved,
                      std::uint64_t stream = 0);

/// Cache directory: SLITPOT_CACHE_DIR if set, else `fallback`.
std::string cache_dir(const std::string& fallback);

/// CSV file with a `#` header carrying the key and the configuration, then
/// rows `hit_point,component,steps` (component -1 for walks that did not end
/// on E).
void store_samples(const std::string& path, const std::string& key, const IntervalSet& E,
                   cplx z0, const RandomWalkConfig& resolved,
                   const std::vector<HitSample>& samples);

/// nullopt when the file is missing, carries another key, or does not hold
/// exactly N well-formed rows.
std::optional<std::vector<HitSample>> load_samples(const std::string& path, const std::string& key,
                                                   long N);

struct CachedDraw {
  std::vector<HitSample> samples;
  std::string key;
  std::string path;  // empty under CachePolicy::off
  bool from_cache = false;
};

/// N walks from z0 through the cache in `dir`. A corrupted or mismatched file
/// is redrawn and rewritten.
CachedDraw draw_cached(const IntervalSet& E, cplx z0, long N, const RandomWalkConfig& cfg,
                       std::uint64_t stream, CachePolicy policy, const std::string& dir);

}  // namespace slitpot
