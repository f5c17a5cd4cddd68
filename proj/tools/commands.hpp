#pragma once

// Subcommand implementations behind the `comogphog` executable. Each returns
// the process exit code and writes results to `out`, diagnostics to `err`.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "comogphog/config.hpp"
#include "comogphog/evalstats.hpp"

namespace comogphog::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kEmptyCorpus = 2;
inline constexpr int kMissingLabels = 3;
inline constexpr int kUndefinedMetric = 4;
}  // namespace exit_code

/// Reads a JSON object whose keys override Config fields.
Config load_config(const std::filesystem::path& path);

struct ExtractArgs {
  std::filesystem::path dir;
  std::filesystem::path out_store;
  std::optional<std::filesystem::path> labels;
  std::optional<std::filesystem::path> csv;
  unsigned jobs = 1;
  Config config;
};
int cmd_extract(const ExtractArgs& args, std::ostream& out, std::ostream& err);

struct ScoreArgs {
  std::filesystem::path file_a;
  std::filesystem::path file_b;
  Config config;
};
int cmd_score(const ScoreArgs& args, std::ostream& out, std::ostream& err);

struct SearchArgs {
  std::filesystem::path store;
  std::filesystem::path query;
  std::size_t k = 10;
  unsigned jobs = 1;
  Config config;
};
int cmd_search(const SearchArgs& args, std::ostream& out, std::ostream& err);

struct EvaluateArgs {
  std::filesystem::path input;  // feature store or id_a,id_b,score file
  std::filesystem::path labels;
  std::filesystem::path out_dir;
  std::optional<Polarity> polarity;
  MatchLevel level = MatchLevel::Family;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  Config config;
};
int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);

// CSV renderings shared with tests.
std::string render_mcc_csv(std::span<const CurvePoint> curve, Polarity pol);
std::string render_pvalue_csv(std::span<const PValueBin> bins, Polarity pol);
std::string render_roc_csv(std::span<const RocPoint> curve, Polarity pol);
std::string format_score_line(double d);

}  // namespace comogphog::cli
