// robustbf - robust hybrid beamforming for mmWave MIMO under beam misalignment
// Copyright (C) 2026 The robustbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "robustbf/sim_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace robustbf {

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::r_hyb: return "R-HYB";
    case Scheme::nr_hyb: return "NR-HYB";
    case Scheme::r_db: return "R-DB";
    case Scheme::nr_db: return "NR-DB";
  }
  throw std::logic_error("scheme_name: unhandled scheme");
}

Scheme parse_scheme(const std::string& token) {
  std::string lower(token);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "r-hyb") return Scheme::r_hyb;
  if (lower == "nr-hyb") return Scheme::nr_hyb;
  if (lower == "r-db") return Scheme::r_db;
  if (lower == "nr-db") return Scheme::nr_db;
  throw std::invalid_argument(
      "unknown scheme '" + token +
      "' (expected one of r-hyb, nr-hyb, r-db, nr-db)");
}

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "m_t",         "m_r",          "n_s",        "n_rf_t",
    "n_rf_r",      "num_paths",    "delta_std_deg", "snr_db_list",
    "n_rf_list",   "trials",       "seed",       "total_power",
    "gain_variance", "schemes"};

template <typename T>
void read_if_present(const json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

}  // namespace

SystemConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument("config: top level must be a JSON object");

  for (const auto& item : doc.items())
    if (kKnownKeys.find(item.key()) == kKnownKeys.end())
      throw std::invalid_argument("config: unknown key '" + item.key() + "'");

  SystemConfig config;
  try {
    read_if_present(doc, "m_t", config.m_t);
    read_if_present(doc, "m_r", config.m_r);
    read_if_present(doc, "n_s", config.n_s);
    read_if_present(doc, "n_rf_t", config.n_rf_t);
    read_if_present(doc, "n_rf_r", config.n_rf_r);
    read_if_present(doc, "num_paths", config.num_paths);
    read_if_present(doc, "delta_std_deg", config.delta_std_deg);
    read_if_present(doc, "snr_db_list", config.snr_db_list);
    read_if_present(doc, "n_rf_list", config.n_rf_list);
    read_if_present(doc, "trials", config.trials);
    read_if_present(doc, "seed", config.seed);
    read_if_present(doc, "total_power", config.total_power);
    read_if_present(doc, "gain_variance", config.gain_variance);
    if (doc.contains("schemes")) {
      config.schemes.clear();
      for (const auto& token : doc.at("schemes"))
        config.schemes.push_back(parse_scheme(token.get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: bad value type: ") +
                                e.what());
  }
  return config;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file)
    throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str());
}

void validate(const SystemConfig& config) {
  const auto fail = [](const std::string& message) {
    throw std::invalid_argument("config: " + message);
  };

  if (config.m_t < 1) fail("m_t must be >= 1");
  if (config.m_r < 1) fail("m_r must be >= 1");
  if (config.n_s < 1) fail("n_s must be >= 1");
  if (config.n_s > config.n_rf_t || config.n_rf_t > config.m_t)
    fail("need n_s <= n_rf_t <= m_t (got n_s=" + std::to_string(config.n_s) +
         ", n_rf_t=" + std::to_string(config.n_rf_t) +
         ", m_t=" + std::to_string(config.m_t) + ")");
  if (config.n_s > config.n_rf_r || config.n_rf_r > config.m_r)
    fail("need n_s <= n_rf_r <= m_r (got n_s=" + std::to_string(config.n_s) +
         ", n_rf_r=" + std::to_string(config.n_rf_r) +
         ", m_r=" + std::to_string(config.m_r) + ")");
  if (config.num_paths < 1) fail("num_paths must be >= 1");
  if (!(config.delta_std_deg >= 0.0)) fail("delta_std_deg must be >= 0");
  if (config.trials < 1) fail("trials must be >= 1");
  if (!(config.total_power > 0.0)) fail("total_power must be > 0");
  if (!(config.gain_variance > 0.0)) fail("gain_variance must be > 0");
  if (config.snr_db_list.empty()) fail("snr_db_list must not be empty");
  if (config.schemes.empty()) fail("schemes must not be empty");
  if (config.snr_db_list.size() > 1 && config.n_rf_list.size() > 1)
    fail("only one of snr_db_list / n_rf_list may have more than one entry");
  for (int n_rf : config.n_rf_list) {
    if (n_rf < config.n_s)
      fail("n_rf_list entry " + std::to_string(n_rf) + " is below n_s");
    if (n_rf > config.m_t || n_rf > config.m_r)
      fail("n_rf_list entry " + std::to_string(n_rf) +
           " exceeds an antenna count");
  }

  // mainlobe sanity check: error bound beyond the approximate null-to-null
  // half-width 2/(M * d/lambda) * 1/2 means misalignment is really
  // alignment failure; warn, do not reject
  const double bound_rad =
      std::sqrt(3.0) * config.delta_std_deg * 3.1415926535897932 / 180.0;
  const double spacing = 0.5;
  const int worst_elements = std::max(config.m_t, config.m_r);
  const double half_width = 1.0 / (worst_elements * spacing);
  if (bound_rad > half_width)
    std::cerr << "warning: error bound " << bound_rad
              << " rad exceeds the approximate mainlobe half-width "
              << half_width << " rad of the " << worst_elements
              << "-element array; large deviations act as alignment failures\n";
}

}  // namespace robustbf
