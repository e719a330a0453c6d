#pragma once

#include <sys/stat.h>

#include <algorithm>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bgprel/gzip.hpp"
#include "bgprel/mrt.hpp"
#include "bgprel/text_format.hpp"
#include "bgprel/types.hpp"

namespace bgprel {

struct CorpusFile {
  std::filesystem::path path;
  std::string collector;     // filename up to the first dot, or whole name
  uint64_t date_epoch = 0;   // midnight UTC of the embedded date
  bool is_mrt = false;
  bool gzipped = false;
};

struct CorpusStats {
  uint64_t files = 0;
  uint64_t unreadable_files = 0;
  uint64_t records = 0;
  uint64_t skipped = 0;      // unsupported MRT frames
  uint64_t malformed = 0;    // malformed MRT frames / rejected text blocks
  uint64_t decode_errors = 0;  // files aborted by a framing error

  void merge(const CorpusStats& o) {
    files += o.files;
    unreadable_files += o.unreadable_files;
    records += o.records;
    skipped += o.skipped;
    malformed += o.malformed;
    decode_errors += o.decode_errors;
  }
};

struct DateRange {
  uint64_t begin_epoch = 0;                      // inclusive
  uint64_t end_epoch = UINT64_MAX;               // exclusive
  bool contains(uint64_t t) const { return t >= begin_epoch && t < end_epoch; }
};

namespace corpus_detail {

inline std::optional<uint64_t> parse_yyyymmdd(const std::string& s,
                                              const std::string& hhmm = "") {
  if (s.size() != 8 || !std::all_of(s.begin(), s.end(), ::isdigit))
    return std::nullopt;
  std::tm tm{};
  tm.tm_year = std::stoi(s.substr(0, 4)) - 1900;
  tm.tm_mon = std::stoi(s.substr(4, 2)) - 1;
  tm.tm_mday = std::stoi(s.substr(6, 2));
  if (tm.tm_mon < 0 || tm.tm_mon > 11 || tm.tm_mday < 1 || tm.tm_mday > 31)
    return std::nullopt;
  if (hhmm.size() == 4 && std::all_of(hhmm.begin(), hhmm.end(), ::isdigit)) {
    tm.tm_hour = std::stoi(hhmm.substr(0, 2));
    tm.tm_min = std::stoi(hhmm.substr(2, 2));
  }
  time_t t = timegm(&tm);
  if (t < 0) return std::nullopt;
  return static_cast<uint64_t>(t);
}

// `<collector>.<YYYYMMDD>[.<HHMM>].<ext>`; nonconforming names fall back to
// monitor_id = filename and the file's mtime.
inline CorpusFile classify(const std::filesystem::path& p) {
  CorpusFile f;
  f.path = p;
  std::string name = p.filename().string();
  f.gzipped = name.ends_with(".gz");
  std::string base = f.gzipped ? name.substr(0, name.size() - 3) : name;
  f.is_mrt = base.ends_with(".mrt");

  std::vector<std::string> parts;
  {
    std::string cur;
    for (char c : base) {
      if (c == '.') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
  }
  // parts = collector, date[, hhmm], ext
  if (parts.size() >= 3) {
    auto t = parse_yyyymmdd(parts[1], parts.size() >= 4 ? parts[2] : "");
    if (t) {
      f.collector = parts[0];
      f.date_epoch = *t;
      return f;
    }
  }
  f.collector = name;
  struct stat st{};
  if (::stat(p.c_str(), &st) == 0 && st.st_mtime > 0)
    f.date_epoch = static_cast<uint64_t>(st.st_mtime);
  return f;
}

inline std::optional<std::vector<uint8_t>> read_file(
    const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  if (in.bad()) return std::nullopt;
  return data;
}

}  // namespace corpus_detail

// Lazy record stream over a directory tree of .mrt[.gz] and .txt[.gz] files.
// Files are visited in filename order; records inherit the file's collector
// and date. Statistics accumulate as the scan advances.
class CorpusScanner {
 public:
  explicit CorpusScanner(std::vector<CorpusFile> files) : files_(std::move(files)) {}

  CorpusScanner(const std::filesystem::path& root, DateRange range = {})
      : range_(range) {
    std::error_code ec;
    for (auto it = std::filesystem::recursive_directory_iterator(root, ec);
         !ec && it != std::filesystem::recursive_directory_iterator(); ++it) {
      if (!it->is_regular_file()) continue;
      std::string name = it->path().filename().string();
      if (name.ends_with(".mrt") || name.ends_with(".mrt.gz") ||
          name.ends_with(".txt") || name.ends_with(".txt.gz"))
        files_.push_back(corpus_detail::classify(it->path()));
    }
    std::sort(files_.begin(), files_.end(),
              [](const CorpusFile& a, const CorpusFile& b) {
                return a.path.filename().string() < b.path.filename().string();
              });
    std::erase_if(files_, [&](const CorpusFile& f) {
      return !range_.contains(f.date_epoch);
    });
  }

  const std::vector<CorpusFile>& files() const { return files_; }
  const CorpusStats& stats() const { return stats_; }

  std::optional<BgpRecord> next() {
    for (;;) {
      if (mrt_) {
        try {
          if (auto rec = mrt_->next()) {
            stats_.records++;
            return rec;
          }
        } catch (const DecodeError&) {
          stats_.decode_errors++;
        }
        stats_.skipped += mrt_->stats().skipped_type;
        stats_.malformed += mrt_->stats().skipped_malformed;
        mrt_.reset();
        mrt_data_.clear();
      }
      while (text_next_ < text_records_.size()) {
        stats_.records++;
        return text_records_[text_next_++];
      }
      if (file_index_ >= files_.size()) return std::nullopt;
      open_file(files_[file_index_++]);
    }
  }

 private:
  void open_file(const CorpusFile& f) {
    stats_.files++;
    auto data = corpus_detail::read_file(f.path);
    if (!data) {
      stats_.unreadable_files++;
      return;
    }
    if (f.gzipped) {
      try {
        *data = gunzip(*data);
      } catch (const DataError&) {
        stats_.unreadable_files++;
        return;
      }
    }
    if (f.is_mrt) {
      mrt_data_ = std::move(*data);
      mrt_ = std::make_unique<mrt::Decoder>(
          std::span<const uint8_t>(mrt_data_), f.collector);
    } else {
      load_text(f, *data);
    }
  }

  void load_text(const CorpusFile& f, const std::vector<uint8_t>& data) {
    text_records_.clear();
    text_next_ = 0;
    std::string content(data.begin(), data.end());
    std::vector<std::string> block;
    size_t line_no = 0, block_start = 1;
    auto flush = [&] {
      if (block.empty()) return;
      auto result = parse_text_record(block, block_start);
      if (auto* rec = std::get_if<BgpRecord>(&result)) {
        if (!f.collector.empty() && f.collector != f.path.filename().string())
          rec->monitor_id = f.collector + ":" + rec->monitor_id;
        if (rec->timestamp == 0) rec->timestamp = f.date_epoch;
        text_records_.push_back(std::move(*rec));
      } else {
        stats_.malformed++;
      }
      block.clear();
    };
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
      line_no++;
      if (line.empty() || line[0] == '#') {
        flush();
        block_start = line_no + 1;
      } else {
        if (block.empty()) block_start = line_no;
        block.push_back(line);
      }
    }
    flush();
  }

  DateRange range_;
  std::vector<CorpusFile> files_;
  size_t file_index_ = 0;
  std::unique_ptr<mrt::Decoder> mrt_;
  std::vector<uint8_t> mrt_data_;
  std::vector<BgpRecord> text_records_;
  size_t text_next_ = 0;
  CorpusStats stats_;
};

}  // namespace bgprel
