#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bgprel/config.hpp"
#include "bgprel/corpus.hpp"
#include "bgprel/dictionary.hpp"
#include "bgprel/engine.hpp"
#include "bgprel/fusion.hpp"
#include "bgprel/locprf.hpp"
#include "bgprel/path.hpp"
#include "bgprel/types.hpp"

namespace bgprel {

struct PipelineResult {
  CorpusStats corpus_stats;
  std::map<PathReject, uint64_t> rejected_paths;
  EvidenceMap evidence;
  EngineOutput engine;
  std::vector<RelInference> locprf;
  std::map<uint32_t, LocPrfProfile> profiles;  // per observer
  std::map<uint32_t, DefaultMapping> mappings;
  RelationshipDb db;
  SanityReport sanity;
};

namespace pipeline_detail {

struct ShardResult {
  EvidenceMap evidence;
  CorpusStats stats;
  std::map<PathReject, uint64_t> rejected;
};

inline ShardResult process_files(std::vector<CorpusFile> files,
                                 const Dictionary& dict,
                                 const RejectedAsnSet& rejected_asns) {
  ShardResult out;
  CorpusScanner scanner(std::move(files));
  while (auto rec = scanner.next()) {
    auto cleaned = sanitize(rec->raw_as_path, rejected_asns);
    if (auto* reject = std::get_if<PathReject>(&cleaned)) {
      out.rejected[*reject]++;
      continue;
    }
    const CleanPath& path = std::get<CleanPath>(cleaned);
    auto tags = classify_message_tags(path, *rec, dict);
    accumulate(out.evidence, *rec, path, tags);
  }
  out.stats = scanner.stats();
  return out;
}

}  // namespace pipeline_detail

// Ingest + hygiene + tagging + evidence accumulation, sharded over files.
// Shard merge is associative and commutative, so the result does not depend
// on the worker count.
inline void run_ingest(PipelineResult& result, const RunConfig& cfg,
                       const Dictionary& dict) {
  RejectedAsnSet rejected = cfg.rejected_asn_set();
  std::vector<CorpusFile> all_files;
  for (const std::string& root : cfg.corpus_paths) {
    CorpusScanner lister(root);
    all_files.insert(all_files.end(), lister.files().begin(), lister.files().end());
  }
  size_t workers = std::max<uint32_t>(1, cfg.workers);
  workers = std::min(workers, std::max<size_t>(1, all_files.size()));

  std::vector<std::vector<CorpusFile>> shards(workers);
  for (size_t i = 0; i < all_files.size(); i++)
    shards[i % workers].push_back(all_files[i]);

  std::vector<pipeline_detail::ShardResult> partials(workers);
  if (workers == 1) {
    partials[0] = pipeline_detail::process_files(shards[0], dict, rejected);
  } else {
    std::vector<std::thread> threads;
    for (size_t w = 0; w < workers; w++)
      threads.emplace_back([&, w] {
        partials[w] = pipeline_detail::process_files(shards[w], dict, rejected);
      });
    for (auto& t : threads) t.join();
  }
  for (auto& p : partials) {
    result.evidence.merge(p.evidence);
    result.corpus_stats.merge(p.stats);
    for (auto [r, n] : p.rejected) result.rejected_paths[r] += n;
  }
}

inline std::map<uint32_t, RouteCategory> neighbor_labels_for(
    uint32_t observer, const std::map<Link, RelInference>& communities) {
  std::map<uint32_t, RouteCategory> labels;
  for (const auto& [link, inf] : communities) {
    if (!link.has(observer)) continue;
    uint32_t neighbor = link.other(observer);
    switch (inf.base.kind) {
      case BaseRel::Kind::P2C:
        labels[neighbor] = inf.base.provider == observer
                               ? RouteCategory::CustomerRoute
                               : RouteCategory::ProviderRoute;
        break;
      case BaseRel::Kind::P2P:
        labels[neighbor] = RouteCategory::PeerRoute;
        break;
      default:
        break;  // hybrids and siblings do not anchor LocPrf values
    }
  }
  return labels;
}

inline void run_locprf(PipelineResult& result, const RunConfig& cfg) {
  RejectedAsnSet rejected = cfg.rejected_asn_set();
  std::map<uint32_t, std::vector<LocPrfObservation>> by_observer;
  for (const std::string& path : cfg.rs_dump_paths) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(path)) {
      for (const auto& e : std::filesystem::recursive_directory_iterator(path))
        if (e.is_regular_file()) files.push_back(e.path());
      std::sort(files.begin(), files.end());
    } else {
      files.push_back(path);
    }
    for (const auto& f : files) {
      std::ifstream in(f);
      if (!in) throw DataError("cannot open route-server dump: " + f.string());
      RsDump dump = parse_rs_dump(in, rejected);
      auto& bucket = by_observer[dump.observer_asn];
      bucket.insert(bucket.end(), dump.observations.begin(), dump.observations.end());
    }
  }
  for (const auto& [observer, obs] : by_observer) {
    LocPrfProfile profile = build_profile(obs);
    auto defaults = select_defaults(profile, cfg.dominance_ratio);
    result.profiles[observer] = profile;
    if (std::holds_alternative<NoDefaults>(defaults)) continue;
    auto labels = neighbor_labels_for(observer, result.engine.inferred);
    DefaultMapping mapping =
        map_defaults(profile, std::get<std::vector<uint32_t>>(defaults), labels);
    extend_near_defaults(profile, mapping, labels, cfg.proximity_abs,
                         cfg.proximity_pct);
    result.mappings[observer] = mapping;
    auto inferred = infer_from_locprf(obs, mapping);
    result.locprf.insert(result.locprf.end(), inferred.begin(), inferred.end());
  }
}

// Full inference: corpus -> communities verdicts, optional route-server dumps
// -> LocPrf verdicts, fused under the agreement rule and sanity-checked.
inline PipelineResult run_infer(const RunConfig& cfg, const Dictionary& dict) {
  PipelineResult result;
  run_ingest(result, cfg, dict);
  EngineConfig ecfg{cfg.min_votes, cfg.prepend_threshold, cfg.backup_max_run_days};
  result.engine = run_engine(result.evidence, ecfg);
  if (!cfg.rs_dump_paths.empty()) run_locprf(result, cfg);
  result.db = fuse(result.engine.inferred, result.locprf,
                   result.engine.indirect_pairs);
  SanityConfig scfg{cfg.sanity_contradiction_fraction, cfg.sanity_min_links};
  result.sanity = sanity_check(result.db, result.evidence, result.locprf, scfg);
  return result;
}

inline std::string corpus_dates_note(const EvidenceMap& evidence,
                                     const RunConfig& cfg) {
  std::ostringstream note;
  if (!evidence.corpus_days.empty()) {
    auto fmt = [](uint32_t day) {
      time_t t = static_cast<time_t>(day) * 86400;
      std::tm tm{};
      gmtime_r(&t, &tm);
      char buf[16];
      strftime(buf, sizeof(buf), "%Y%m%d", &tm);
      return std::string(buf);
    };
    note << "corpus " << fmt(*evidence.corpus_days.begin()) << ".."
         << fmt(*evidence.corpus_days.rbegin()) << " ";
  }
  note << "config " << cfg.config_hash();
  return note.str();
}

inline void write_export(const PipelineResult& result, const RunConfig& cfg,
                         std::ostream& out) {
  export_db(result.db, out, corpus_dates_note(result.evidence, cfg));
}

// Checks every accepted corpus path against the valley-free rule using the
// relationships in `db`. Paths containing links without a decided single
// relationship are skipped.
struct ValleyStats {
  uint64_t paths = 0;
  uint64_t checked = 0;
  uint64_t valid = 0;
  uint64_t violations = 0;
  uint64_t skipped_unknown = 0;
};

inline ValleyStats validate_paths(const RunConfig& cfg, const RelationshipDb& db) {
  RejectedAsnSet rejected = cfg.rejected_asn_set();
  ValleyStats out;
  for (const std::string& root : cfg.corpus_paths) {
    CorpusScanner scanner(root);
    while (auto rec = scanner.next()) {
      auto cleaned = sanitize(rec->raw_as_path, rejected);
      if (std::holds_alternative<PathReject>(cleaned)) continue;
      const CleanPath& path = std::get<CleanPath>(cleaned);
      out.paths++;
      std::vector<RelStep> steps;
      bool unknown = false;
      for (const OrientedLink& ol : extract_links(path)) {
        auto it = db.entries.find(ol.link);
        if (it == db.entries.end()) {
          unknown = true;
          break;
        }
        switch (it->second.base.kind) {
          case BaseRel::Kind::P2P: steps.push_back(RelStep::P2P); break;
          case BaseRel::Kind::S2S: steps.push_back(RelStep::S2S); break;
          case BaseRel::Kind::P2C:
            steps.push_back(it->second.base.provider == ol.observer_side
                                ? RelStep::P2C
                                : RelStep::C2P);
            break;
          case BaseRel::Kind::Hybrid: unknown = true; break;
        }
        if (unknown) break;
      }
      if (unknown) {
        out.skipped_unknown++;
        continue;
      }
      out.checked++;
      if (check_valley_free(steps).valid)
        out.valid++;
      else
        out.violations++;
    }
  }
  return out;
}

}  // namespace bgprel
