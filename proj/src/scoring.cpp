#include "comogphog/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "comogphog/error.hpp"

namespace comogphog {

namespace {

std::vector<ScoreResult> top_k(std::span<const FeatureVector> shard, const FeatureVector& query,
                               std::size_t k) {
  std::vector<ScoreResult> results;
  results.reserve(shard.size());
  for (const FeatureVector& target : shard)
    results.push_back({query.id, target.id, score(query, target)});
  const std::size_t keep = std::min(k, results.size());
  std::partial_sort(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(keep),
                    results.end(), ranks_before);
  results.resize(keep);
  return results;
}

}  // namespace

double score(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "feature lengths differ: " + std::to_string(a.size()) +
                                               " vs " + std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double score(const FeatureVector& a, const FeatureVector& b) { return score(a.values, b.values); }

bool ranks_before(const ScoreResult& a, const ScoreResult& b) {
  if (a.distance != b.distance)
    return a.distance < b.distance;
  return a.target_id < b.target_id;
}

std::vector<ScoreResult> search(std::span<const FeatureVector> db, const FeatureVector& query,
                                std::size_t k, unsigned jobs) {
  if (db.empty())
    throw Error(ErrorCode::InvalidArgument, "search database is empty");
  if (k == 0)
    throw Error(ErrorCode::InvalidArgument, "k must be at least 1");

  const std::size_t shards = std::clamp<std::size_t>(jobs, 1, db.size());
  if (shards == 1)
    return top_k(db, query, k);

  std::vector<std::vector<ScoreResult>> partial(shards);
  {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (db.size() + shards - 1) / shards;
    for (std::size_t s = 0; s < shards; ++s) {
      const std::size_t begin = std::min(db.size(), s * chunk);
      const std::size_t end = std::min(db.size(), begin + chunk);
      workers.emplace_back([&, s, begin, end] { partial[s] = top_k(db.subspan(begin, end - begin), query, k); });
    }
  }

  std::vector<ScoreResult> merged;
  for (auto& p : partial)
    merged.insert(merged.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  const std::size_t keep = std::min(k, merged.size());
  std::partial_sort(merged.begin(), merged.begin() + static_cast<std::ptrdiff_t>(keep), merged.end(),
                    ranks_before);
  merged.resize(keep);
  return merged;
}

}  // namespace comogphog
