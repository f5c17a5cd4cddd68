#pragma once

// Evaluation of a pairwise score as a binary same-family classifier.

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "comogphog/featuredb.hpp"
#include "comogphog/structure_io.hpp"

namespace comogphog {

enum class Polarity {
  LowerIsSimilar,   // distances such as the descriptor score
  HigherIsSimilar,  // similarity scores such as TM-score
};

std::string_view to_string(Polarity p);
Polarity parse_polarity(std::string_view text);  // "lower" | "higher"

enum class MatchLevel { Family, Superfamily };

struct ScoredPair {
  std::string id_a;
  std::string id_b;
  double score = 0.0;
  bool is_match = false;
};

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

/// Predicts a match when score <= t (LowerIsSimilar) or score >= t
/// (HigherIsSimilar) and tallies predictions against the labels.
ConfusionCounts confusion_at_threshold(std::span<const ScoredPair> pairs, double t, Polarity pol);

/// Matthews correlation coefficient; 0 when any marginal is empty.
double mcc(const ConfusionCounts& c);

struct CurvePoint {
  double x = 0.0;
  double value = 0.0;
  std::uint64_t count = 0;  // predicted positives
};

/// `count` equally spaced thresholds spanning [min score, max score].
std::vector<double> threshold_grid(std::span<const ScoredPair> pairs, std::size_t count);

/// MCC at each threshold. Uses one sort plus binary searches, so it scales to
/// tens of millions of pairs.
std::vector<CurvePoint> mcc_curve(std::span<const ScoredPair> pairs, Polarity pol,
                                  std::span<const double> thresholds);

struct PeakMcc {
  double threshold = 0.0;
  double mcc = 0.0;
  ConfusionCounts counts;
};

/// Best MCC over every distinct score used as a threshold. Ties keep the
/// threshold that predicts fewer positives.
PeakMcc peak_mcc(std::span<const ScoredPair> pairs, Polarity pol);

struct PValueBin {
  double center = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t count = 0;
  std::uint64_t matches = 0;
  /// matches / count; empty for bins without pairs.
  std::optional<double> posterior;
};

/// Empirical P(match | score bin) over equal-width bins spanning the score
/// range. Throws Error{DegenerateRange} when every score is equal.
std::vector<PValueBin> pvalue_curve(std::span<const ScoredPair> pairs, Polarity pol, std::size_t num_bins);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;
};

/// Staircase from (0,0) to (1,1) sweeping every distinct score from most to
/// least similar. Throws Error{SingleClass} without both labels present.
std::vector<RocPoint> roc_curve(std::span<const ScoredPair> pairs, Polarity pol);

/// Trapezoid-rule area under a ROC curve.
double auc(std::span<const RocPoint> curve);

/// (tp / (tp + fn), tn / (tn + fp)). Throws Error{UndefinedRate}.
std::pair<double, double> sensitivity_specificity(const ConfusionCounts& c);

// Pair generation ----------------------------------------------------------

/// All n(n-1)/2 unordered pairs of store entries in (i < j) order. Throws
/// Error{MissingLabel} if an entry has no label.
std::vector<ScoredPair> score_all_pairs(const FeatureStore& store, const LabelTable& labels,
                                        MatchLevel level = MatchLevel::Family, unsigned jobs = 1);

/// `count` distinct unordered pairs drawn with a seeded 64-bit Mersenne
/// Twister, emitted in (i < j) order. Returns all pairs when count covers them.
std::vector<ScoredPair> score_sampled_pairs(const FeatureStore& store, const LabelTable& labels,
                                            std::size_t count, std::uint64_t seed,
                                            MatchLevel level = MatchLevel::Family, unsigned jobs = 1);

/// Reads `id_a,id_b,score` lines (optional header) and labels each pair.
std::vector<ScoredPair> parse_score_file(std::string_view text, const LabelTable& labels,
                                         MatchLevel level = MatchLevel::Family);
std::vector<ScoredPair> read_score_file(const std::filesystem::path& path, const LabelTable& labels,
                                        MatchLevel level = MatchLevel::Family);

}  // namespace comogphog
