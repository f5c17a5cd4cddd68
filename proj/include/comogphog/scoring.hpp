#pragma once

#include <span>
#include <string>
#include <vector>

#include "comogphog/features.hpp"

namespace comogphog {

struct ScoreResult {
  std::string query_id;
  std::string target_id;
  double distance = 0.0;

  bool operator==(const ScoreResult&) const = default;
};

/// Euclidean distance between two descriptors. Throws Error{LengthMismatch}.
double score(std::span<const double> a, std::span<const double> b);
double score(const FeatureVector& a, const FeatureVector& b);

/// Ranking order: ascending distance, then target id.
bool ranks_before(const ScoreResult& a, const ScoreResult& b);

/// Linear scan returning the min(k, |db|) nearest entries. With jobs > 1 the
/// database is split into contiguous shards whose partial top-k lists are
/// merged; the result is identical to the sequential scan.
std::vector<ScoreResult> search(std::span<const FeatureVector> db, const FeatureVector& query,
                                std::size_t k, unsigned jobs = 1);

}  // namespace comogphog
