// Run-time configuration, read from a JSON file named by ZAGIER_CONFIG.
#pragma once

#include <gmpxx.h>

#include <string>

namespace zagier {

struct Config {
  std::string seed_dir;        // default: the repository's data/seeds
  std::string cache_dir;       // empty: no disk cache
  long default_trunc = 64;     // >= 64
  unsigned precision_bits = 256;  // >= 64
  mpq_class tolerance{1, 100000};  // > 0

  // Throws std::invalid_argument on broken invariants.
  void validate() const;
};

inline constexpr const char* kConfigEnv = "ZAGIER_CONFIG";

// Defaults overridden by the keys present in the JSON object; unknown keys
// are rejected. tolerance is a rational string such as "1/100000".
Config parse_config(const std::string& json_text);
Config load_config_file(const std::string& path);
// load_config_file($ZAGIER_CONFIG) when the variable is set, else defaults.
Config load_config_from_env();

// Points the basis-family machinery at the configured seed and cache
// directories.
void apply_config(const Config& cfg);

}  // namespace zagier
