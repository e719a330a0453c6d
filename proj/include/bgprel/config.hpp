#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bgprel/path.hpp"
#include "bgprel/types.hpp"

namespace bgprel {

struct RunConfig {
  std::vector<std::string> corpus_paths;
  std::string dictionary_path;
  std::vector<std::string> rs_dump_paths;
  std::string output_path;

  std::string rejected_asns = "23456,56320-65535";
  uint32_t min_votes = 1;
  uint32_t backup_max_run_days = 5;
  uint32_t prepend_threshold = 2;
  double dominance_ratio = 4.0;
  double proximity_abs = 10.0;
  double proximity_pct = 5.0;
  double sanity_contradiction_fraction = 0.5;
  uint32_t sanity_min_links = 10;
  uint32_t workers = 1;
  uint64_t seed = 42;

  RejectedAsnSet rejected_asn_set() const {
    RejectedAsnSet s;
    std::istringstream in(rejected_asns);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) continue;
      auto dash = tok.find('-');
      if (dash == std::string::npos) {
        s.add(static_cast<uint32_t>(std::stoull(tok)));
      } else {
        s.add_range(static_cast<uint32_t>(std::stoull(tok.substr(0, dash))),
                    static_cast<uint32_t>(std::stoull(tok.substr(dash + 1))));
      }
    }
    return s;
  }

  // Threshold keys only: the hash identifies the inference configuration, so
  // worker count and I/O paths stay out of it.
  std::string config_hash() const {
    std::ostringstream s;
    s << rejected_asns << "|" << min_votes << "|" << backup_max_run_days << "|"
      << prepend_threshold << "|" << dominance_ratio << "|" << proximity_abs
      << "|" << proximity_pct << "|" << sanity_contradiction_fraction << "|"
      << sanity_min_links;
    uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (char c : s.str()) {
      h ^= static_cast<uint8_t>(c);
      h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
  }

  void apply(const std::string& key, const std::string& value) {
    if (key == "rejected-asns")
      rejected_asns = value;
    else if (key == "min-votes")
      min_votes = static_cast<uint32_t>(std::stoull(value));
    else if (key == "backup-max-run-days")
      backup_max_run_days = static_cast<uint32_t>(std::stoull(value));
    else if (key == "prepend-threshold")
      prepend_threshold = static_cast<uint32_t>(std::stoull(value));
    else if (key == "dominance-ratio")
      dominance_ratio = std::stod(value);
    else if (key == "proximity-abs")
      proximity_abs = std::stod(value);
    else if (key == "proximity-pct")
      proximity_pct = std::stod(value);
    else if (key == "sanity-contradiction-fraction")
      sanity_contradiction_fraction = std::stod(value);
    else if (key == "sanity-min-links")
      sanity_min_links = static_cast<uint32_t>(std::stoull(value));
    else if (key == "workers")
      workers = static_cast<uint32_t>(std::stoull(value));
    else if (key == "seed")
      seed = std::stoull(value);
    else if (key == "dictionary")
      dictionary_path = value;
    else if (key == "output")
      output_path = value;
    else if (key == "corpus")
      corpus_paths.push_back(value);
    else if (key == "rs-dump")
      rs_dump_paths.push_back(value);
    else
      throw DataError("unknown config key: " + key);
  }

  // Flat key=value file, '#' comments.
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config: " + path);
    std::string line;
    size_t row = 0;
    while (std::getline(in, line)) {
      row++;
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw DataError("config line " + std::to_string(row) + ": expected key=value");
      apply(line.substr(0, eq), line.substr(eq + 1));
    }
  }
};

}  // namespace bgprel
