#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "comogphog/config.hpp"
#include "comogphog/features.hpp"
#include "comogphog/structure_io.hpp"

namespace comogphog {

inline constexpr std::uint32_t kStoreVersion = 1;
inline constexpr std::string_view kStoreMagic = "CMGP";

/// In-memory feature database. Ids are unique and every vector has
/// kFeatureLength entries.
class FeatureStore {
public:
  std::uint32_t version = kStoreVersion;

  const std::vector<FeatureVector>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Throws Error{InvalidArgument} on duplicate ids or wrong vector length.
  void add(FeatureVector fv);
  const FeatureVector* find(std::string_view id) const;

  bool operator==(const FeatureStore& other) const {
    return version == other.version && entries_ == other.entries_;
  }

private:
  std::vector<FeatureVector> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Binary layout, all integers and floats little-endian:
///   "CMGP" | u32 version | u32 count |
///   count x ( u16 id_len | id bytes | 1024 x f64 )
std::string encode_store(const FeatureStore& store);
FeatureStore decode_store(std::string_view bytes);

void save_store(const FeatureStore& store, const std::filesystem::path& path);
FeatureStore load_store(const std::filesystem::path& path);

/// True when the file starts with the store magic.
bool looks_like_store(const std::filesystem::path& path);

/// One line per entry: id followed by its values with 17 significant digits.
std::string export_csv(const FeatureStore& store);

struct SkippedFile {
  std::filesystem::path path;
  std::string reason;
};

struct IngestResult {
  FeatureStore store;
  std::vector<SkippedFile> skipped;
};

struct IngestOptions {
  Config config;
  /// When set, structures without a label are skipped.
  const LabelTable* labels = nullptr;
  unsigned jobs = 1;
  /// Called once per candidate file, in sorted order, after extraction.
  /// `error` is empty for successes.
  std::function<void(const std::filesystem::path&, const std::string& error)> on_file;
};

/// Extracts every regular, non-hidden file in `dir` (non-recursive). Files
/// that fail to parse are reported and skipped. Entries are ordered by id, so
/// the result does not depend on directory enumeration order or job count.
/// Throws Error{Io} when the directory is unreadable and Error{EmptyCorpus}
/// when nothing could be extracted.
IngestResult ingest_dir(const std::filesystem::path& dir, const IngestOptions& options = {});

}  // namespace comogphog
