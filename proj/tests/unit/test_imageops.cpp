#include <doctest.h>

#include <random>

#include "comogphog/error.hpp"
#include "comogphog/imageops.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace comogphog;

namespace {

GrayImage random_image(std::size_t h, std::size_t w, std::mt19937_64& rng) {
  GrayImage img(h, w);
  for (double& v : img.pixels.values())
    v = testsupport::uniform(rng, 0, 1);
  return img;
}

}  // namespace

TEST_SUITE("imageops") {

TEST_CASE("kernel values") {
  CHECK(cubic_kernel(0.0) == 1.0);
  CHECK(cubic_kernel(1.0) == 0.0);
  CHECK(cubic_kernel(-1.0) == 0.0);
  CHECK(cubic_kernel(2.0) == 0.0);
  CHECK(cubic_kernel(0.5) == 0.5625);
  CHECK(cubic_kernel(1.5) == -0.0625);
  for (double f = 0; f < 1; f += 0.0625)
    CHECK(cubic_kernel(f + 1) + cubic_kernel(f) + cubic_kernel(f - 1) + cubic_kernel(f - 2) ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("identity resize is exact") {
  std::mt19937_64 rng(1);
  const GrayImage img = random_image(7, 5, rng);
  CHECK(bicubic_resize(img, 7, 5) == img);
}

TEST_CASE("constant image stays constant") {
  const GrayImage img(6, 6, 0.7);
  for (auto [h, w] : {std::pair<std::size_t, std::size_t>{13, 13}, {128, 128}, {3, 9}, {1, 1}})
  {
    const GrayImage out = bicubic_resize(img, h, w);
    for (double v : out.pixels.values())
      CHECK(v == doctest::Approx(0.7).epsilon(1e-14));
  }
}

TEST_CASE("4x4 ramp upsampled to 8x8 matches the per-pixel kernel evaluator") {
  GrayImage ramp(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      ramp(r, c) = (static_cast<double>(r) + static_cast<double>(c)) / 6.0;
  const GrayImage out = bicubic_resize(ramp, 8, 8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      CHECK(out(r, c) == doctest::Approx(std::clamp(oracle::cubic_sample(ramp.pixels, 8, 8, r, c), 0.0, 1.0))
                             .epsilon(1e-12));
}

TEST_CASE("resize is linear in intensity before clamping") {
  std::mt19937_64 rng(2);
  const GrayImage img = random_image(9, 9, rng);
  const Grid<double> base = cubic_convolve(img.pixels, 20, 20);
  for (double k : {0.1, 0.5, 1.0}) {
    Grid<double> scaled = img.pixels;
    for (double& v : scaled.values())
      v *= k;
    const Grid<double> out = cubic_convolve(scaled, 20, 20);
    for (std::size_t i = 0; i < out.size(); ++i)
      CHECK(out.values()[i] == doctest::Approx(k * base.values()[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("bicubic output is clamped to the unit interval") {
  GrayImage step(4, 4, 0.0);
  for (std::size_t r = 0; r < 4; ++r)
    step(r, 2) = step(r, 3) = 1.0;
  const Grid<double> raw = cubic_convolve(step.pixels, 4, 16);
  CHECK(*std::max_element(raw.values().begin(), raw.values().end()) > 1.0);
  const GrayImage clamped = bicubic_resize(step, 4, 16);
  for (double v : clamped.pixels.values()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("Haar step is the 2x2 block mean") {
  GrayImage block(2, 2);
  block(0, 0) = 0.2;
  block(0, 1) = 0.4;
  block(1, 0) = 0.6;
  block(1, 1) = 0.8;
  const GrayImage one = haar_downsample(block);
  REQUIRE(one.height() == 1);
  CHECK(one(0, 0) == doctest::Approx(0.5).epsilon(1e-15));

  const GrayImage c = haar_downsample(GrayImage(8, 6, 0.3));
  CHECK(c.height() == 4);
  CHECK(c.width() == 3);
  for (double v : c.pixels.values())
    CHECK(v == doctest::Approx(0.3).epsilon(1e-15));

  std::mt19937_64 rng(3);
  const GrayImage img = random_image(4, 4, rng);
  const Grid<double> expected = oracle::block_means(img.pixels);
  const GrayImage got = haar_downsample(img);
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(got.pixels.values()[i] == doctest::Approx(expected.values()[i]).epsilon(1e-15));
}

TEST_CASE("Haar step preserves the mean") {
  std::mt19937_64 rng(4);
  const GrayImage img = random_image(64, 32, rng);
  auto mean = [](const GrayImage& g) {
    double s = 0;
    for (double v : g.pixels.values())
      s += v;
    return s / static_cast<double>(g.pixels.size());
  };
  CHECK(mean(haar_downsample(img)) == doctest::Approx(mean(img)).epsilon(1e-14));
}

TEST_CASE("Haar step rejects odd dimensions") {
  try {
    haar_downsample(GrayImage(3, 4));
    FAIL("expected OddDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddDimension);
  }
}

TEST_CASE("normalize_size") {
  std::mt19937_64 rng(5);
  SUBCASE("128 is a fixed point") {
    const GrayImage img = random_image(128, 128, rng);
    CHECK(normalize_size(img) == img);
  }
  SUBCASE("200 goes through 256 and one Haar level") {
    const GrayImage img = random_image(200, 200, rng);
    const GrayImage expected = haar_downsample(bicubic_resize(img, 256, 256));
    CHECK(normalize_size(img) == expected);
  }
  SUBCASE("90 is resized directly") {
    const GrayImage img = random_image(90, 90, rng);
    CHECK(normalize_size(img) == bicubic_resize(img, 128, 128));
  }
  SUBCASE("every size lands on 128x128") {
    for (std::size_t n : {2, 3, 64, 127, 129, 255, 256, 257, 600}) {
      const GrayImage out = normalize_size(random_image(n, n, rng));
      CHECK(out.height() == 128);
      CHECK(out.width() == 128);
    }
  }
}

TEST_CASE("next power of two") {
  CHECK(next_power_of_two(1) == 1);
  CHECK(next_power_of_two(128) == 128);
  CHECK(next_power_of_two(129) == 256);
  CHECK(next_power_of_two(1000) == 1024);
}

TEST_CASE("symmetrize gives exact symmetry") {
  std::mt19937_64 rng(6);
  const GrayImage s = symmetrize(random_image(17, 17, rng));
  for (std::size_t r = 0; r < 17; ++r)
    for (std::size_t c = 0; c < 17; ++c)
      CHECK(s(r, c) == s(c, r));
}

TEST_CASE("gradient of constant and ramp images") {
  const GradientField flat = gradient_field(GrayImage(8, 8, 0.4));
  for (double m : flat.magnitude.values())
    CHECK(m == 0.0);

  GrayImage xramp(8, 8), yramp(8, 8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) {
      xramp(r, c) = static_cast<double>(c) * 0.01;
      yramp(r, c) = static_cast<double>(r) * 0.01;
    }
  const GradientField gx = gradient_field(xramp);
  const GradientField gy = gradient_field(yramp);
  for (std::size_t r = 1; r < 7; ++r)
    for (std::size_t c = 1; c < 7; ++c) {
      CHECK(gx.orientation(r, c) == doctest::Approx(0.0));
      CHECK(gx.magnitude(r, c) == doctest::Approx(0.01).epsilon(1e-12));
      CHECK(gy.orientation(r, c) == doctest::Approx(90.0).epsilon(1e-12));
      CHECK(gy.magnitude(r, c) == doctest::Approx(0.01).epsilon(1e-12));
    }
}

TEST_CASE("inverted image flips orientation by 180 degrees") {
  std::mt19937_64 rng(7);
  const GrayImage img = random_image(32, 32, rng);
  GrayImage inv = img;
  for (double& v : inv.pixels.values())
    v = 1.0 - v;
  const GradientField a = gradient_field(img);
  const GradientField b = gradient_field(inv);
  for (std::size_t i = 0; i < a.magnitude.size(); ++i) {
    const double oa = a.orientation.values()[i];
    const double ob = b.orientation.values()[i];
    CHECK(ob >= 0.0);
    CHECK(ob < 360.0);
    if (a.magnitude.values()[i] > 1e-9) {
      const double diff = std::fmod(ob - oa + 720.0, 360.0);
      CHECK(diff == doctest::Approx(180.0).epsilon(1e-9));
    }
  }
}

}  // TEST_SUITE
