// bgprel: AS relationship inference from BGP communities and LocPrf data.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bgprel/config.hpp"
#include "bgprel/dictionary.hpp"
#include "bgprel/fusion.hpp"
#include "bgprel/locprf.hpp"
#include "bgprel/pipeline.hpp"
#include "bgprel/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

using bgprel::RunConfig;

// Removes a partially written output on error.
class OutputFile {
 public:
  explicit OutputFile(const std::string& path) : path_(path) {
    if (!path_.empty()) {
      file_.open(path_);
      if (!file_) throw bgprel::DataError("cannot open output: " + path_);
    }
  }
  ~OutputFile() {
    if (!committed_ && !path_.empty()) {
      file_.close();
      std::error_code ec;
      std::filesystem::remove(path_, ec);
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void commit() { committed_ = true; }

 private:
  std::string path_;
  std::ofstream file_;
  bool committed_ = false;
};

struct CommonOpts {
  std::string config_file;
  std::vector<std::string> overrides;  // key=value
  std::vector<std::string> corpus;
  std::string dictionary;
  std::vector<std::string> rs_dumps;
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_file,
                  "key=value config file (or $BGPREL_CONFIG)");
  cmd->add_option("--set", opts.overrides, "override a config key (key=value)");
  cmd->add_option("--corpus", opts.corpus, "corpus directory or file");
  cmd->add_option("--dictionary", opts.dictionary, "communities dictionary TSV");
  cmd->add_option("--rs-dump", opts.rs_dumps, "route-server dump file/directory");
  cmd->add_option("--output", opts.output, "output file (default stdout)");
}

RunConfig build_config(const CommonOpts& opts) {
  RunConfig cfg;
  std::string config_file = opts.config_file;
  if (config_file.empty())
    if (const char* env = std::getenv("BGPREL_CONFIG")) config_file = env;
  if (!config_file.empty()) cfg.load_file(config_file);
  for (const std::string& kv : opts.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw bgprel::DataError("--set expects key=value, got: " + kv);
    cfg.apply(kv.substr(0, eq), kv.substr(eq + 1));
  }
  for (const std::string& c : opts.corpus) cfg.corpus_paths.push_back(c);
  if (!opts.dictionary.empty()) cfg.dictionary_path = opts.dictionary;
  for (const std::string& r : opts.rs_dumps) cfg.rs_dump_paths.push_back(r);
  if (!opts.output.empty()) cfg.output_path = opts.output;
  return cfg;
}

bgprel::Dictionary load_dictionary(const RunConfig& cfg) {
  if (cfg.dictionary_path.empty())
    throw bgprel::DataError("no dictionary configured");
  return bgprel::Dictionary::load_file(cfg.dictionary_path);
}

void print_stats(const bgprel::StatsSummary& s, std::ostream& out) {
  out << "paths=" << s.paths << "\n"
      << "observed-links=" << s.observed_links << "\n"
      << "observed-ases=" << s.observed_ases << "\n"
      << "inferred-links=" << s.inferred_links << "\n"
      << "inferred-ases=" << s.inferred_ases << "\n"
      << "transit=" << s.transit << "\n"
      << "peering=" << s.peering << "\n"
      << "sibling=" << s.sibling << "\n"
      << "hybrid=" << s.hybrid << "\n"
      << "partial-transit=" << s.partial_transit << "\n"
      << "backup=" << s.backup << "\n"
      << "indirect-peering-links=" << s.indirect_peering_links << "\n"
      << "indirect-peering-pairs=" << s.indirect_peering_pairs << "\n"
      << "from-communities=" << s.from_communities << "\n"
      << "from-locprf=" << s.from_locprf << "\n";
}

int cmd_ingest_stats(const RunConfig& cfg) {
  if (cfg.corpus_paths.empty()) throw bgprel::DataError("no corpus configured");
  bgprel::CorpusStats stats;
  uint64_t paths = 0;
  std::map<bgprel::PathReject, uint64_t> rejected;
  bgprel::RejectedAsnSet rejset = cfg.rejected_asn_set();
  for (const std::string& root : cfg.corpus_paths) {
    bgprel::CorpusScanner scanner(root);
    while (auto rec = scanner.next()) {
      auto cleaned = bgprel::sanitize(rec->raw_as_path, rejset);
      if (auto* rej = std::get_if<bgprel::PathReject>(&cleaned))
        rejected[*rej]++;
      else
        paths++;
    }
    stats.merge(scanner.stats());
  }
  OutputFile out(cfg.output_path);
  out.stream() << "files=" << stats.files << "\n"
               << "unreadable-files=" << stats.unreadable_files << "\n"
               << "records=" << stats.records << "\n"
               << "skipped-frames=" << stats.skipped << "\n"
               << "malformed=" << stats.malformed << "\n"
               << "decode-errors=" << stats.decode_errors << "\n"
               << "clean-paths=" << paths << "\n";
  for (auto [r, n] : rejected)
    out.stream() << "rejected-" << bgprel::path_reject_name(r) << "=" << n << "\n";
  out.commit();
  return kExitOk;
}

int cmd_infer(const RunConfig& cfg) {
  if (cfg.corpus_paths.empty()) throw bgprel::DataError("no corpus configured");
  auto dict = load_dictionary(cfg);
  bgprel::PipelineResult result = bgprel::run_infer(cfg, dict);
  OutputFile out(cfg.output_path);
  bgprel::write_export(result, cfg, out.stream());
  out.commit();
  for (const auto& f : result.db.excluded)
    std::cerr << "conflict: " << f.link.to_string() << ": " << f.reason << "\n";
  for (uint32_t owner : result.sanity.flagged_owners)
    std::cerr << "flagged-owner: " << owner << "\n";
  for (const bgprel::Link& l : result.sanity.excluded)
    std::cerr << "sanity-excluded: " << l.to_string() << "\n";
  return kExitOk;
}

int cmd_profile_locprf(const RunConfig& cfg) {
  if (cfg.rs_dump_paths.empty())
    throw bgprel::DataError("no route-server dumps configured");
  bgprel::PipelineResult result;
  if (!cfg.corpus_paths.empty()) {
    auto dict = load_dictionary(cfg);
    bgprel::run_ingest(result, cfg, dict);
    result.engine = bgprel::run_engine(
        result.evidence,
        {cfg.min_votes, cfg.prepend_threshold, cfg.backup_max_run_days});
  }
  bgprel::run_locprf(result, cfg);
  OutputFile out(cfg.output_path);
  for (const auto& [observer, profile] : result.profiles) {
    out.stream() << "observer " << observer << "\n";
    for (const auto& [value, neighbors] : profile.value_neighbors)
      out.stream() << "  value " << value << " links=" << neighbors.size()
                   << " paths=" << profile.path_count.at(value) << "\n";
    auto mit = result.mappings.find(observer);
    if (mit == result.mappings.end()) {
      out.stream() << "  defaults none\n";
      continue;
    }
    for (const auto& [value, cat] : mit->second.defaults)
      out.stream() << "  map " << value << " -> "
                   << bgprel::route_category_name(cat) << "\n";
    for (const auto& [value, cat] : mit->second.extended)
      out.stream() << "  map " << value << " -> "
                   << bgprel::route_category_name(cat) << " (near-default)\n";
    for (const std::string& e : mit->second.exceptions)
      out.stream() << "  exception " << e << "\n";
  }
  for (const bgprel::RelInference& inf : result.locprf) {
    bgprel::RelationshipDb db;
    db.entries[inf.link] = inf;
    bgprel::export_db(db, out.stream());
  }
  out.commit();
  return kExitOk;
}

int cmd_fuse(const RunConfig& cfg, const std::string& communities_path,
             const std::string& locprf_path) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bgprel::DataError("cannot open db: " + path);
    return bgprel::parse_db(in);
  };
  bgprel::RelationshipDb communities = load(communities_path);
  std::vector<bgprel::RelInference> locprf;
  if (!locprf_path.empty()) {
    bgprel::RelationshipDb lp = load(locprf_path);
    for (auto& [link, inf] : lp.entries) {
      inf.provenance = bgprel::Provenance::LocPrf;
      locprf.push_back(inf);
    }
  }
  bgprel::RelationshipDb fused =
      bgprel::fuse(communities.entries, locprf, communities.indirect_pairs);
  OutputFile out(cfg.output_path);
  bgprel::export_db(fused, out.stream(), "config " + cfg.config_hash());
  out.commit();
  for (const auto& f : fused.excluded)
    std::cerr << "conflict: " << f.link.to_string() << ": " << f.reason << "\n";
  return kExitOk;
}

int cmd_validate_paths(const RunConfig& cfg, const std::string& db_path) {
  if (cfg.corpus_paths.empty()) throw bgprel::DataError("no corpus configured");
  std::ifstream in(db_path);
  if (!in) throw bgprel::DataError("cannot open db: " + db_path);
  bgprel::RelationshipDb db = bgprel::parse_db(in);
  bgprel::ValleyStats stats = bgprel::validate_paths(cfg, db);
  OutputFile out(cfg.output_path);
  out.stream() << "paths=" << stats.paths << "\n"
               << "checked=" << stats.checked << "\n"
               << "valid=" << stats.valid << "\n"
               << "violations=" << stats.violations << "\n"
               << "skipped-unknown=" << stats.skipped_unknown << "\n";
  out.commit();
  return kExitOk;
}

int cmd_stats(const RunConfig& cfg, const std::string& db_path) {
  std::ifstream in(db_path);
  if (!in) throw bgprel::DataError("cannot open db: " + db_path);
  bgprel::RelationshipDb db = bgprel::parse_db(in);
  OutputFile out(cfg.output_path);
  print_stats(bgprel::compute_stats(db), out.stream());
  out.commit();
  return kExitOk;
}

int cmd_export(const RunConfig& cfg, const std::string& db_path) {
  std::ifstream in(db_path);
  if (!in) throw bgprel::DataError("cannot open db: " + db_path);
  bgprel::RelationshipDb db = bgprel::parse_db(in);
  OutputFile out(cfg.output_path);
  bgprel::export_db(db, out.stream(), "config " + cfg.config_hash());
  out.commit();
  return kExitOk;
}

int cmd_synth(const RunConfig& cfg, const std::string& outdir,
              const bgprel::synth::SynthParams& params) {
  bgprel::synth::GroundTruth truth = bgprel::synth::generate(params);
  bgprel::synth::EmittedCorpus corpus = bgprel::synth::emit_corpus(truth);
  std::filesystem::create_directories(outdir);
  bgprel::synth::write_corpus(corpus, outdir);
  std::ofstream(std::filesystem::path(outdir) / "truth.db") << truth.serialize();
  std::cerr << "synth: " << truth.links.size() << " links, " << corpus.messages
            << " messages\n";
  return kExitOk;
}

int cmd_score(const RunConfig& cfg, const std::string& db_path,
              const std::string& truth_dir) {
  std::ifstream in(db_path);
  if (!in) throw bgprel::DataError("cannot open db: " + db_path);
  bgprel::RelationshipDb db = bgprel::parse_db(in);

  // Rebuild the ground truth from the synth output directory; indirect pairs
  // come back via the ixp-indirect flags.
  std::filesystem::path dir(truth_dir);
  std::ifstream tin(dir / "truth.db");
  if (!tin) throw bgprel::DataError("cannot open truth: " + truth_dir);
  bgprel::RelationshipDb truth_db = bgprel::parse_db(tin);
  bgprel::synth::GroundTruth truth;
  truth.indirect_pairs = truth_db.indirect_pairs;
  for (const auto& [link, inf] : truth_db.entries) {
    bgprel::synth::TruthLink tl;
    tl.link = link;
    tl.base = inf.base;
    tl.partial_transit = inf.partial_transit;
    tl.backup_prepend = inf.backup_prepend;
    tl.backup_noexport = inf.backup_noexport;
    truth.links[link] = tl;
  }

  bgprel::synth::ScoreReport report = bgprel::synth::score(db, truth);
  OutputFile out(cfg.output_path);
  for (const auto& [name, s] : report.categories)
    out.stream() << name << " truth=" << s.truth_n << " emitted=" << s.emitted
                 << " correct=" << s.correct << " precision=" << s.precision()
                 << " recall=" << s.recall() << "\n";
  for (const std::string& c : report.confusions)
    out.stream() << "confusion: " << c << "\n";
  out.commit();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AS relationship inference from BGP routing policy data"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string db_path, locprf_db_path, communities_db_path, truth_dir, outdir;
  bgprel::synth::SynthParams synth_params;

  auto* ingest = app.add_subcommand("ingest-stats", "decode corpus, report counts");
  add_common(ingest, opts);
  auto* infer = app.add_subcommand("infer", "run the full inference pipeline");
  add_common(infer, opts);
  auto* profile = app.add_subcommand("profile-locprf", "profile route-server dumps");
  add_common(profile, opts);
  auto* fuse = app.add_subcommand("fuse", "fuse communities and locprf dbs");
  add_common(fuse, opts);
  fuse->add_option("--communities-db", communities_db_path)->required();
  fuse->add_option("--locprf-db", locprf_db_path);
  auto* validate = app.add_subcommand("validate-paths", "valley-free check a corpus");
  add_common(validate, opts);
  validate->add_option("--db", db_path)->required();
  auto* stats = app.add_subcommand("stats", "summarize a relationship db");
  add_common(stats, opts);
  stats->add_option("--db", db_path)->required();
  auto* exp = app.add_subcommand("export", "re-emit a db in canonical form");
  add_common(exp, opts);
  exp->add_option("--db", db_path)->required();
  auto* synth = app.add_subcommand("synth", "generate a synthetic labelled corpus");
  add_common(synth, opts);
  synth->add_option("--out-dir", outdir)->required();
  synth->add_option("--seed", synth_params.seed);
  synth->add_option("--as-count", synth_params.as_count);
  synth->add_option("--hybrids", synth_params.hybrid_quota);
  synth->add_option("--noise", synth_params.dual_meaning_noise);
  auto* score = app.add_subcommand("score", "score a db against synth ground truth");
  add_common(score, opts);
  score->add_option("--db", db_path)->required();
  score->add_option("--truth-dir", truth_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    RunConfig cfg = build_config(opts);
    if (ingest->parsed()) return cmd_ingest_stats(cfg);
    if (infer->parsed()) return cmd_infer(cfg);
    if (profile->parsed()) return cmd_profile_locprf(cfg);
    if (fuse->parsed()) return cmd_fuse(cfg, communities_db_path, locprf_db_path);
    if (validate->parsed()) return cmd_validate_paths(cfg, db_path);
    if (stats->parsed()) return cmd_stats(cfg, db_path);
    if (exp->parsed()) return cmd_export(cfg, db_path);
    if (synth->parsed()) return cmd_synth(cfg, outdir, synth_params);
    if (score->parsed()) return cmd_score(cfg, db_path, truth_dir);
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const bgprel::DataError& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kExitInternal;
  }
}
