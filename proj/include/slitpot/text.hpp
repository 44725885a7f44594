#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace slitpot {

/// Round-trip decimal form of a double (%.17g).
std::string fmt_real(double x);
/// Short human form (%.6g), for reports.
std::string fmt_short(double x);

std::string trim(std::string_view s);

/// Parses whitespace separated `key=value` tokens. Duplicate keys are rejected.
std::map<std::string, std::string> parse_key_values(std::string_view s);
const std::string& require_key(const std::map<std::string, std::string>& kv,
                               const std::string& key);

double parse_real(const std::string& s);
long parse_int(const std::string& s);
std::uint64_t parse_u64(const std::string& s);

/// FNV-1a over the bytes of s.
std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t h);

}  // namespace slitpot
