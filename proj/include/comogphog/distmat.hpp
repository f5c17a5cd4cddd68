#pragma once

#include <filesystem>
#include <string>

#include "comogphog/grid.hpp"
#include "comogphog/structure_io.hpp"

namespace comogphog {

/// Pairwise CA distances (Angstrom). Symmetric with a zero diagonal.
struct DistanceMatrix {
  Grid<double> values;

  std::size_t n() const noexcept { return values.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return values(i, j); }
};

/// Intensity image with pixels in [0, 1].
struct GrayImage {
  Grid<double> pixels;

  GrayImage() = default;
  explicit GrayImage(Grid<double> p) : pixels(std::move(p)) {}
  GrayImage(std::size_t height, std::size_t width, double fill = 0.0) : pixels(height, width, fill) {}

  std::size_t height() const noexcept { return pixels.rows(); }
  std::size_t width() const noexcept { return pixels.cols(); }
  double operator()(std::size_t r, std::size_t c) const { return pixels(r, c); }
  double& operator()(std::size_t r, std::size_t c) { return pixels(r, c); }

  bool operator==(const GrayImage&) const = default;
};

DistanceMatrix distance_matrix(const CaTrace& trace);

/// Scales distances by the matrix maximum so that 0 maps to black and the
/// largest distance to 1. An all-zero matrix gives an all-zero image.
GrayImage to_gray(const DistanceMatrix& d);

/// Binary PGM (P5, maxval 255); each pixel is round(intensity * 255).
std::string encode_pgm(const GrayImage& img);
void write_pgm(const GrayImage& img, const std::filesystem::path& path);

}  // namespace comogphog
