#include "comogphog/featuredb.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <set>
#include <thread>

#include "comogphog/error.hpp"
#include "text_util.hpp"

namespace comogphog {

namespace {

static_assert(sizeof(double) == 8 && std::numeric_limits<double>::is_iec559);

template <typename T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
}

class Reader {
public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  bool has(std::size_t n) const { return bytes_.size() - pos_ >= n; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  template <typename T>
  T get_le() {
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
      value |= static_cast<T>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += sizeof(T);
    return value;
  }

  std::string_view take(std::size_t n) {
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

void FeatureStore::add(FeatureVector fv) {
  if (fv.values.size() != kFeatureLength) {
    throw Error(ErrorCode::InvalidArgument, "store entries need " + std::to_string(kFeatureLength) +
                                                " values, '" + fv.id + "' has " +
                                                std::to_string(fv.values.size()));
  }
  if (fv.id.size() > 0xFFFF)
    throw Error(ErrorCode::InvalidArgument, "id longer than 65535 bytes");
  if (!index_.emplace(fv.id, entries_.size()).second)
    throw Error(ErrorCode::InvalidArgument, "duplicate id '" + fv.id + "'");
  entries_.push_back(std::move(fv));
}

const FeatureVector* FeatureStore::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::string encode_store(const FeatureStore& store) {
  std::string out(kStoreMagic);
  put_le<std::uint32_t>(out, store.version);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(store.size()));
  for (const FeatureVector& fv : store.entries()) {
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(fv.id.size()));
    out += fv.id;
    for (double v : fv.values)
      put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

FeatureStore decode_store(std::string_view bytes) {
  Reader in(bytes);
  if (!in.has(kStoreMagic.size()) || in.take(kStoreMagic.size()) != kStoreMagic)
    throw Error(ErrorCode::BadMagic, "not a feature store (expected magic 'CMGP')");
  if (!in.has(8))
    throw Error(ErrorCode::CorruptEntry, "truncated header");
  const auto version = in.get_le<std::uint32_t>();
  if (version != kStoreVersion)
    throw Error(ErrorCode::UnsupportedVersion, "store version " + std::to_string(version));
  const auto count = in.get_le<std::uint32_t>();

  FeatureStore store;
  store.version = version;
  for (std::uint32_t e = 0; e < count; ++e) {
    const std::string where = "entry " + std::to_string(e);
    if (!in.has(2))
      throw Error(ErrorCode::CorruptEntry, where + ": truncated id length");
    const auto id_len = in.get_le<std::uint16_t>();
    if (!in.has(id_len + kFeatureLength * 8))
      throw Error(ErrorCode::CorruptEntry, where + ": truncated record");
    FeatureVector fv{std::string(in.take(id_len)), std::vector<double>(kFeatureLength)};
    for (double& v : fv.values)
      v = std::bit_cast<double>(in.get_le<std::uint64_t>());
    try {
      store.add(std::move(fv));
    } catch (const Error& err) {
      throw Error(ErrorCode::CorruptEntry, where + ": " + err.what());
    }
  }
  if (in.remaining() != 0)
    throw Error(ErrorCode::CorruptEntry, std::to_string(in.remaining()) + " trailing bytes");
  return store;
}

void save_store(const FeatureStore& store, const std::filesystem::path& path) {
  detail::write_file(path, encode_store(store));
}

FeatureStore load_store(const std::filesystem::path& path) {
  return decode_store(detail::read_file(path));
}

bool looks_like_store(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  return in.read(magic, sizeof magic) && std::string_view(magic, sizeof magic) == kStoreMagic;
}

std::string export_csv(const FeatureStore& store) {
  std::string out;
  for (const FeatureVector& fv : store.entries()) {
    out += fv.id;
    for (double v : fv.values) {
      out += ',';
      out += detail::format_general(v, 17);
    }
    out += '\n';
  }
  return out;
}

IngestResult ingest_dir(const std::filesystem::path& dir, const IngestOptions& options) {
  namespace fs = std::filesystem;
  options.config.validate();
  if (options.config.feature_length() != kFeatureLength) {
    throw Error(ErrorCode::InvalidArgument,
                "stores hold " + std::to_string(kFeatureLength) + "-value descriptors; config yields " +
                    std::to_string(options.config.feature_length()));
  }

  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw Error(ErrorCode::Io, "'" + dir.string() + "' is not a readable directory");

  std::vector<fs::path> files;
  fs::directory_iterator it(dir, ec);
  if (ec)
    throw Error(ErrorCode::Io, "cannot list '" + dir.string() + "': " + ec.message());
  for (const auto& entry : it) {
    const std::string name = entry.path().filename().string();
    if (!name.empty() && name.front() != '.' && entry.is_regular_file())
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    const auto ia = structure_id_from_path(a);
    const auto ib = structure_id_from_path(b);
    return ia != ib ? ia < ib : a.filename() < b.filename();
  });

  struct Outcome {
    std::optional<FeatureVector> features;
    std::string error;
  };
  std::vector<Outcome> outcomes(files.size());
  auto process = [&](std::size_t i) {
    try {
      const CaTrace trace = read_structure_file(files[i]);
      if (options.labels != nullptr && !options.labels->contains(trace.id))
        throw Error(ErrorCode::MissingLabel, "no label for '" + trace.id + "'");
      outcomes[i].features = extract_features(trace, options.config);
    } catch (const std::exception& err) {
      outcomes[i].error = err.what();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(files.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < files.size(); ++i)
      process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < files.size(); i = next++)
          process(i);
      });
  }

  IngestResult result;
  for (std::size_t i = 0; i < files.size(); ++i) {
    Outcome& o = outcomes[i];
    if (o.features) {
      if (result.store.find(o.features->id) != nullptr)
        o.error = "duplicate id '" + o.features->id + "'";
      else
        result.store.add(std::move(*o.features));
    }
    if (!o.error.empty())
      result.skipped.push_back({files[i], o.error});
    if (options.on_file)
      options.on_file(files[i], o.error);
  }
  if (result.store.empty()) {
    throw Error(ErrorCode::EmptyCorpus, "no structures extracted from '" + dir.string() + "' (" +
                                            std::to_string(files.size()) + " candidate files)");
  }
  return result;
}

}  // namespace comogphog
