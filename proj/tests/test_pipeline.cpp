#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bgprel/pipeline.hpp"
#include "bgprel/synth.hpp"

using namespace bgprel;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("bgprel-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream(p) << content;
}

const char* kFig1Block =
    "TYPE: TABLE_DUMP_V2/IPV4_UNICAST\n"
    "PREFIX: 1.22.73.0/24\n"
    "FROM: 206.223.115.10 AS4589\n"
    "ORIGIN: IGP\n"
    "ASPATH: 4589 15412 18101 45528\n"
    "NEXT_HOP: 206.223.115.10\n"
    "COMMUNITY: 4589:2 4589:410 4589:612 4589:14413 15412:604 15412:614 "
    "15412:621 15412:705 15412:1431 18101:1344 18101:50120 18101:50420\n";

const char* kFig1Dict =
    "4589\t4589:612\tREL_PEER\tOWNER\tLINX peer\tIRR\n"
    "15412\t15412:705\tREL_CUSTOMER\tOWNER\t\tIRR\n";

}  // namespace

TEST_CASE("worked table-dump example end to end") {
  TempDir tmp;
  write_file(tmp.path / "rv1.20100801.txt", kFig1Block);
  std::istringstream din(kFig1Dict);
  Dictionary dict = Dictionary::load(din);

  RunConfig cfg;
  cfg.corpus_paths = {tmp.path.string()};
  PipelineResult result = run_infer(cfg, dict);

  REQUIRE(result.db.entries.size() == 2);
  const RelInference& peer = result.db.entries.at(Link(4589, 15412));
  CHECK(peer.base.kind == BaseRel::Kind::P2P);
  CHECK(peer.provenance == Provenance::Communities);
  const RelInference& transit = result.db.entries.at(Link(15412, 18101));
  CHECK(transit.base.kind == BaseRel::Kind::P2C);
  CHECK(transit.base.provider == 15412);
  CHECK(result.db.entries.count(Link(18101, 45528)) == 0);
  // The unresolved 18101:* values are counted, not fatal.
  CHECK(result.evidence.links.count(Link(18101, 45528)) == 1);
}

TEST_CASE("synthetic corpus round trips through the full pipeline") {
  synth::SynthParams params;
  params.as_count = 60;
  params.seed = 7;
  synth::GroundTruth truth = synth::generate(params);
  synth::EmittedCorpus corpus = synth::emit_corpus(truth);

  TempDir tmp;
  synth::write_corpus(corpus, tmp.path);

  RunConfig cfg;
  cfg.corpus_paths = {(tmp.path / "corpus").string()};
  cfg.rs_dump_paths = {(tmp.path / "rs").string()};
  Dictionary dict = Dictionary::load_file((tmp.path / "dictionary.tsv").string());
  PipelineResult result = run_infer(cfg, dict);

  synth::ScoreReport report = synth::score(result.db, truth);
  for (const std::string& c : report.confusions) MESSAGE(c);
  CHECK(report.perfect());
  // Route-server agreement upgraded at least some links to BOTH.
  bool any_both = false;
  for (const auto& [l, inf] : result.db.entries)
    if (inf.provenance == Provenance::Both) any_both = true;
  CHECK(any_both);
}

TEST_CASE("export is byte-identical across worker counts") {
  synth::GroundTruth truth = synth::generate(synth::SynthParams{});
  synth::EmittedCorpus corpus = synth::emit_corpus(truth);
  TempDir tmp;
  synth::write_corpus(corpus, tmp.path);
  Dictionary dict = Dictionary::load_file((tmp.path / "dictionary.tsv").string());

  auto run_with = [&](uint32_t workers) {
    RunConfig cfg;
    cfg.corpus_paths = {(tmp.path / "corpus").string()};
    cfg.rs_dump_paths = {(tmp.path / "rs").string()};
    cfg.workers = workers;
    PipelineResult result = run_infer(cfg, dict);
    std::ostringstream out;
    write_export(result, cfg, out);
    return out.str();
  };
  CHECK(run_with(1) == run_with(8));
}

TEST_CASE("scan totals are additive across files") {
  TempDir tmp;
  std::string two_blocks = std::string(kFig1Block) + "\n" + kFig1Block;
  write_file(tmp.path / "a.20100801.txt", two_blocks);
  write_file(tmp.path / "b.20100802.txt", kFig1Block);

  CorpusScanner whole(tmp.path);
  uint64_t total = 0;
  while (whole.next()) total++;

  uint64_t per_file = 0;
  for (const auto& entry : fs::directory_iterator(tmp.path)) {
    CorpusScanner one(std::vector<CorpusFile>{corpus_detail::classify(entry.path())});
    while (one.next()) per_file++;
  }
  CHECK(total == 3);
  CHECK(per_file == total);
}

TEST_CASE("date filter can exclude everything") {
  TempDir tmp;
  write_file(tmp.path / "a.20100801.txt", kFig1Block);
  DateRange range;
  range.begin_epoch = 0;
  range.end_epoch = 1;  // long before the file's date
  CorpusScanner scanner(tmp.path, range);
  CHECK(!scanner.next().has_value());
}

TEST_CASE("path validation separates valley-free from leak paths") {
  synth::SynthParams params;
  params.as_count = 80;
  params.non_valley_free_paths = 3;
  synth::GroundTruth truth = synth::generate(params);
  synth::EmittedCorpus corpus = synth::emit_corpus(truth);
  TempDir tmp;
  synth::write_corpus(corpus, tmp.path);
  Dictionary dict = Dictionary::load_file((tmp.path / "dictionary.tsv").string());

  RunConfig cfg;
  cfg.corpus_paths = {(tmp.path / "corpus").string()};
  PipelineResult result = run_infer(cfg, dict);
  ValleyStats stats = validate_paths(cfg, result.db);
  CHECK(stats.checked > 0);
  // The emitted leak paths (provider - multihomed stub - provider) violate.
  CHECK(stats.violations >= params.non_valley_free_paths);
  CHECK(stats.valid + stats.violations == stats.checked);
  CHECK(stats.checked + stats.skipped_unknown == stats.paths);
}

TEST_CASE("infer without route-server input yields communities-only provenance") {
  synth::GroundTruth truth = synth::generate(synth::SynthParams{});
  synth::EmittedCorpus corpus = synth::emit_corpus(truth);
  TempDir tmp;
  synth::write_corpus(corpus, tmp.path);
  Dictionary dict = Dictionary::load_file((tmp.path / "dictionary.tsv").string());

  RunConfig cfg;
  cfg.corpus_paths = {(tmp.path / "corpus").string()};
  PipelineResult result = run_infer(cfg, dict);
  CHECK(!result.db.entries.empty());
  for (const auto& [l, inf] : result.db.entries)
    CHECK(inf.provenance == Provenance::Communities);
}
