#include <doctest.h>

#include <algorithm>
#include <random>

#include "comogphog/error.hpp"
#include "comogphog/scoring.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace comogphog;

namespace {

FeatureVector random_vector(std::mt19937_64& rng, std::string id, std::size_t n = kFeatureLength) {
  FeatureVector fv{std::move(id), std::vector<double>(n)};
  for (double& v : fv.values)
    v = testsupport::uniform(rng, 0, 1) / 64.0;
  return fv;
}

std::vector<ScoreResult> brute_force(const std::vector<FeatureVector>& db, const FeatureVector& q) {
  std::vector<ScoreResult> all;
  for (const auto& t : db)
    all.push_back({q.id, t.id, oracle::euclidean(q.values, t.values)});
  std::sort(all.begin(), all.end(), [](const ScoreResult& a, const ScoreResult& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.target_id < b.target_id;
  });
  return all;
}

}  // namespace

TEST_SUITE("scoring") {

TEST_CASE("identity and unit displacement") {
  std::mt19937_64 rng(1);
  const FeatureVector a = random_vector(rng, "a");
  CHECK(score(a, a) == 0.0);
  FeatureVector b = a;
  b.values[17] += 1.0;
  CHECK(score(a, b) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("matches direct sum of squares") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 20; ++rep) {
    const FeatureVector a = random_vector(rng, "a");
    const FeatureVector b = random_vector(rng, "b");
    const double want = oracle::euclidean(a.values, b.values);
    CHECK(std::abs(score(a, b) - want) <= 1e-12 * want);
  }
}

TEST_CASE("length mismatch") {
  std::mt19937_64 rng(3);
  try {
    score(random_vector(rng, "a"), random_vector(rng, "b", 1021));
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
}

TEST_CASE("metric axioms") {
  std::mt19937_64 rng(4);
  std::vector<FeatureVector> v;
  for (int i = 0; i < 30; ++i)
    v.push_back(random_vector(rng, std::to_string(i)));
  for (const auto& a : v)
    for (const auto& b : v) {
      CHECK(score(a, b) == score(b, a));
      for (int k = 0; k < 3; ++k) {
        const auto& c = v[static_cast<std::size_t>(k)];
        CHECK(score(a, c) <= score(a, b) + score(b, c) + 1e-9);
      }
    }
}

TEST_CASE("search ranks like a full sort") {
  std::mt19937_64 rng(5);
  std::vector<FeatureVector> db;
  for (int i = 0; i < 50; ++i)
    db.push_back(random_vector(rng, "t" + std::to_string(i)));
  const FeatureVector q = random_vector(rng, "q");
  const auto full = brute_force(db, q);
  for (std::size_t k : {1, 5, 50, 80}) {
    const auto got = search(db, q, k);
    REQUIRE(got.size() == std::min<std::size_t>(k, db.size()));
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].target_id == full[i].target_id);
      CHECK(got[i].distance == doctest::Approx(full[i].distance).epsilon(1e-12));
    }
    for (unsigned jobs : {2u, 3u, 8u, 64u})
      CHECK(search(db, q, k, jobs) == got);
  }
}

TEST_CASE("query in the database ranks itself first") {
  std::mt19937_64 rng(6);
  std::vector<FeatureVector> db;
  for (int i = 0; i < 10; ++i)
    db.push_back(random_vector(rng, "t" + std::to_string(i)));
  const auto got = search(db, db[4], 3);
  CHECK(got.front().target_id == "t4");
  CHECK(got.front().distance == 0.0);
}

TEST_CASE("ties break by target id") {
  std::vector<FeatureVector> db{{"b", std::vector<double>(4, 0.5)},
                                {"a", std::vector<double>(4, 0.5)},
                                {"c", std::vector<double>(4, 0.0)}};
  const auto got = search(db, FeatureVector{"q", std::vector<double>(4, 0.5)}, 3);
  CHECK(got[0].target_id == "a");
  CHECK(got[1].target_id == "b");
  CHECK(got[2].target_id == "c");
}

TEST_CASE("empty database and zero k are rejected") {
  const FeatureVector q{"q", std::vector<double>(4)};
  CHECK_THROWS_AS(search({}, q, 1), Error);
  std::vector<FeatureVector> db{q};
  CHECK_THROWS_AS(search(db, q, 0), Error);
}

}  // TEST_SUITE
