#include "zagier/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "zagier/spaces.hpp"

namespace zagier {

void Config::validate() const {
  if (precision_bits < 64) throw std::invalid_argument("config: precision_bits must be at least 64");
  if (default_trunc < 64) throw std::invalid_argument("config: default_trunc must be at least 64");
  if (tolerance <= 0) throw std::invalid_argument("config: tolerance must be positive");
  if (seed_dir.empty()) throw std::invalid_argument("config: seed_dir must not be empty");
}

Config parse_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  Config cfg;
  cfg.seed_dir = ZAGIER_DEFAULT_SEED_DIR;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed_dir") cfg.seed_dir = value.get<std::string>();
      else if (key == "cache_dir") cfg.cache_dir = value.get<std::string>();
      else if (key == "default_trunc") cfg.default_trunc = value.get<long>();
      else if (key == "precision_bits") {
        const long bits = value.get<long>();
        if (bits < 0) throw std::invalid_argument("config: precision_bits must be at least 64");
        cfg.precision_bits = static_cast<unsigned>(bits);
      } else if (key == "tolerance") {
        mpq_class t;
        if (t.set_str(value.get<std::string>(), 10) != 0) {
          throw std::invalid_argument("config: tolerance must be a rational string such as \"1/100000\"");
        }
        t.canonicalize();
        cfg.tolerance = t;
      } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: wrong value type: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Config load_config_from_env() {
  const char* path = std::getenv(kConfigEnv);
  if (path && *path) return load_config_file(path);
  Config cfg;
  cfg.seed_dir = ZAGIER_DEFAULT_SEED_DIR;
  cfg.validate();
  return cfg;
}

void apply_config(const Config& cfg) {
  cfg.validate();
  set_spaces_config(SpacesConfig{cfg.seed_dir, cfg.cache_dir});
}

}  // namespace zagier
