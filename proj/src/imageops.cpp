#include "comogphog/imageops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "comogphog/error.hpp"

namespace comogphog {

namespace {

constexpr double kCubicA = -0.5;

struct Taps {
  std::array<std::size_t, 4> index;
  std::array<double, 4> weight;
};

// Four source taps for every output coordinate along one axis.
std::vector<Taps> axis_taps(std::size_t in, std::size_t out) {
  std::vector<Taps> taps(out);
  const double scale = static_cast<double>(in) / static_cast<double>(out);
  const auto last = static_cast<std::ptrdiff_t>(in) - 1;
  for (std::size_t o = 0; o < out; ++o) {
    const double src = (static_cast<double>(o) + 0.5) * scale - 0.5;
    const double base = std::floor(src);
    const double frac = src - base;
    for (int k = 0; k < 4; ++k) {
      const auto i = static_cast<std::ptrdiff_t>(base) - 1 + k;
      taps[o].index[k] = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, last));
      taps[o].weight[k] = cubic_kernel(frac - static_cast<double>(k - 1));
    }
  }
  return taps;
}

}  // namespace

double cubic_kernel(double x) {
  const double t = std::abs(x);
  if (t <= 1.0)
    return ((kCubicA + 2.0) * t - (kCubicA + 3.0)) * t * t + 1.0;
  if (t < 2.0)
    return ((kCubicA * t - 5.0 * kCubicA) * t + 8.0 * kCubicA) * t - 4.0 * kCubicA;
  return 0.0;
}

Grid<double> cubic_convolve(const Grid<double>& src, std::size_t out_h, std::size_t out_w) {
  if (src.empty() || out_h == 0 || out_w == 0)
    throw Error(ErrorCode::InvalidArgument, "resize dimensions must be positive");

  const auto col_taps = axis_taps(src.cols(), out_w);
  const auto row_taps = axis_taps(src.rows(), out_h);

  Grid<double> horizontal(src.rows(), out_w);
  for (std::size_t r = 0; r < src.rows(); ++r) {
    const auto in = src.row(r);
    auto out = horizontal.row(r);
    for (std::size_t c = 0; c < out_w; ++c) {
      const Taps& t = col_taps[c];
      out[c] = t.weight[0] * in[t.index[0]] + t.weight[1] * in[t.index[1]] +
               t.weight[2] * in[t.index[2]] + t.weight[3] * in[t.index[3]];
    }
  }

  Grid<double> result(out_h, out_w);
  for (std::size_t r = 0; r < out_h; ++r) {
    const Taps& t = row_taps[r];
    auto out = result.row(r);
    for (std::size_t c = 0; c < out_w; ++c) {
      out[c] = t.weight[0] * horizontal(t.index[0], c) + t.weight[1] * horizontal(t.index[1], c) +
               t.weight[2] * horizontal(t.index[2], c) + t.weight[3] * horizontal(t.index[3], c);
    }
  }
  return result;
}

GrayImage bicubic_resize(const GrayImage& img, std::size_t out_h, std::size_t out_w) {
  GrayImage out(cubic_convolve(img.pixels, out_h, out_w));
  for (double& v : out.pixels.values())
    v = std::clamp(v, 0.0, 1.0);
  return out;
}

GrayImage haar_downsample(const GrayImage& img) {
  if (img.height() % 2 != 0 || img.width() % 2 != 0 || img.height() == 0) {
    throw Error(ErrorCode::OddDimension, "Haar step needs even dimensions, got " +
                                             std::to_string(img.height()) + "x" +
                                             std::to_string(img.width()));
  }
  GrayImage out(img.height() / 2, img.width() / 2);
  for (std::size_t r = 0; r < out.height(); ++r) {
    for (std::size_t c = 0; c < out.width(); ++c) {
      const double a = img(2 * r, 2 * c);
      const double b = img(2 * r, 2 * c + 1);
      const double d = img(2 * r + 1, 2 * c);
      const double e = img(2 * r + 1, 2 * c + 1);
      out(r, c) = (a + b + d + e) * 0.25;
    }
  }
  return out;
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n)
    p <<= 1;
  return p;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

GrayImage normalize_size(const GrayImage& img, std::size_t target) {
  if (img.height() != img.width())
    throw Error(ErrorCode::InvalidArgument, "normalize_size expects a square image");
  if (img.height() < 2)
    throw Error(ErrorCode::InvalidArgument, "normalize_size expects at least 2x2");
  if (!is_power_of_two(target))
    throw Error(ErrorCode::InvalidArgument, "target size must be a power of two");

  const std::size_t n = img.height();
  if (n < target)
    return bicubic_resize(img, target, target);

  const std::size_t p = next_power_of_two(n);
  GrayImage out = p == n ? img : bicubic_resize(img, p, p);
  while (out.height() > target)
    out = haar_downsample(out);
  return out;
}

GrayImage symmetrize(const GrayImage& img) {
  if (img.height() != img.width())
    throw Error(ErrorCode::InvalidArgument, "symmetrize expects a square image");
  GrayImage out(img.height(), img.width());
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c)
      out(r, c) = (img(r, c) + img(c, r)) * 0.5;
  return out;
}

GradientField gradient_field(const GrayImage& img) {
  const std::size_t h = img.height();
  const std::size_t w = img.width();
  if (h < 2 || w < 2)
    throw Error(ErrorCode::InvalidArgument, "gradient needs at least 2x2 pixels");

  GradientField g{Grid<double>(h, w), Grid<double>(h, w)};
  constexpr double kDegrees = 180.0 / std::numbers::pi;
  for (std::size_t r = 0; r < h; ++r) {
    const std::size_t up = r == 0 ? 0 : r - 1;
    const std::size_t down = r + 1 == h ? r : r + 1;
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t left = c == 0 ? 0 : c - 1;
      const std::size_t right = c + 1 == w ? c : c + 1;
      const double gx = (img(r, right) - img(r, left)) * 0.5;
      const double gy = (img(down, c) - img(up, c)) * 0.5;
      g.magnitude(r, c) = std::sqrt(gx * gx + gy * gy);
      double angle = std::atan2(gy, gx) * kDegrees;
      if (angle < 0.0)
        angle += 360.0;
      if (angle >= 360.0)
        angle = 0.0;
      g.orientation(r, c) = angle;
    }
  }
  return g;
}

}  // namespace comogphog
