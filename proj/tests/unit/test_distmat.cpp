#include <doctest.h>

#include <random>

#include "comogphog/distmat.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace comogphog;

TEST_SUITE("distmat") {

TEST_CASE("3-4-5 triangle") {
  const DistanceMatrix d = distance_matrix(CaTrace{"t", {{0, 0, 0}, {3, 4, 0}}});
  CHECK(d.n() == 2);
  CHECK(d(0, 0) == 0.0);
  CHECK(d(0, 1) == 5.0);
  CHECK(d(1, 0) == 5.0);
  CHECK(d(1, 1) == 0.0);
}

TEST_CASE("matches a brute-force double loop") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    CaTrace t{"r", {}};
    for (int i = 0; i < 4 + rep; ++i)
      t.coords.push_back({testsupport::uniform(rng, -20, 20), testsupport::uniform(rng, -20, 20),
                          testsupport::uniform(rng, -20, 20)});
    const DistanceMatrix d = distance_matrix(t);
    const auto expected = oracle::pairwise_distances(t);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t.size(); ++j) {
        CHECK(d(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-14));
        CHECK(d(i, j) == d(j, i));
      }
  }
}

TEST_CASE("rigid motions leave distances unchanged") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const CaTrace t = testsupport::random_trace(50, rng);
    const CaTrace moved = testsupport::rigid_transform(t, testsupport::random_rotation(rng), {12.5, -40, 3});
    const DistanceMatrix a = distance_matrix(t);
    const DistanceMatrix b = distance_matrix(moved);
    for (std::size_t k = 0; k < a.values.size(); ++k)
      CHECK(std::abs(a.values.values()[k] - b.values.values()[k]) <= 1e-9);
  }
}

TEST_CASE("gray mapping divides by the maximum") {
  DistanceMatrix d{Grid<double>(2, 2, 0.0)};
  d.values(0, 1) = d.values(1, 0) = 5.0;
  const GrayImage g = to_gray(d);
  CHECK(g(0, 0) == 0.0);
  CHECK(g(0, 1) == 1.0);
  CHECK(g(1, 0) == 1.0);

  DistanceMatrix d3{Grid<double>(3, 3, 0.0)};
  const double v[3][3] = {{0, 2, 4}, {2, 0, 2}, {4, 2, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      d3.values(i, j) = v[i][j];
  const GrayImage g3 = to_gray(d3);
  const double want[3][3] = {{0, 0.5, 1}, {0.5, 0, 0.5}, {1, 0.5, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(g3(i, j) == want[i][j]);
}

TEST_CASE("coincident points give an all-zero image") {
  const GrayImage g = to_gray(distance_matrix(CaTrace{"z", {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}}));
  for (double p : g.pixels.values())
    CHECK(p == 0.0);
}

TEST_CASE("gray image is full range and scale invariant") {
  std::mt19937_64 rng(9);
  const CaTrace t = testsupport::random_trace(30, rng);
  const DistanceMatrix d = distance_matrix(t);
  const GrayImage g = to_gray(d);
  const auto px = g.pixels.values();
  CHECK(*std::min_element(px.begin(), px.end()) >= 0.0);
  CHECK(*std::max_element(px.begin(), px.end()) == 1.0);

  for (double k : {0.25, 3.0, 1024.0}) {
    DistanceMatrix scaled = d;
    for (double& v : scaled.values.values())
      v *= k;
    const GrayImage gs = to_gray(scaled);
    for (std::size_t i = 0; i < px.size(); ++i)
      CHECK(gs.pixels.values()[i] == doctest::Approx(px[i]).epsilon(1e-15));
  }
}

TEST_CASE("PGM encoding") {
  GrayImage img(1, 3);
  img(0, 0) = 0.0;
  img(0, 1) = 0.5;
  img(0, 2) = 1.0;
  const std::string pgm = encode_pgm(img);
  const std::string header = "P5\n3 1\n255\n";
  REQUIRE(pgm.size() == header.size() + 3);
  CHECK(pgm.substr(0, header.size()) == header);
  CHECK(static_cast<unsigned char>(pgm[header.size()]) == 0);
  CHECK(static_cast<unsigned char>(pgm[header.size() + 1]) == 128);
  CHECK(static_cast<unsigned char>(pgm[header.size() + 2]) == 255);
}

}  // TEST_SUITE
