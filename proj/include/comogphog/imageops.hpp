#pragma once

#include <cstddef>

#include "comogphog/distmat.hpp"
#include "comogphog/grid.hpp"

namespace comogphog {

/// Per-pixel gradient. Orientation is in degrees, in [0, 360).
struct GradientField {
  Grid<double> magnitude;
  Grid<double> orientation;

  std::size_t height() const noexcept { return magnitude.rows(); }
  std::size_t width() const noexcept { return magnitude.cols(); }
};

/// Catmull-Rom cubic convolution kernel (a = -0.5).
double cubic_kernel(double x);

/// Separable cubic convolution onto an out_h x out_w grid using pixel-center
/// alignment and replicated borders. Values are not clamped.
Grid<double> cubic_convolve(const Grid<double>& src, std::size_t out_h, std::size_t out_w);

/// cubic_convolve followed by clamping to [0, 1].
GrayImage bicubic_resize(const GrayImage& img, std::size_t out_h, std::size_t out_w);

/// Haar LL subband: mean of each 2x2 block. Throws Error{OddDimension}.
GrayImage haar_downsample(const GrayImage& img);

/// Brings a square image to target x target. Inputs smaller than the target
/// are resized directly; larger ones are resized up to the next power of two
/// and then Haar-downsampled.
GrayImage normalize_size(const GrayImage& img, std::size_t target = 128);

/// Replaces a square image by (img + img^T) / 2. Resampling a symmetric
/// distance image breaks bitwise symmetry; this restores it so that mirrored
/// pixels get mirrored gradients exactly.
GrayImage symmetrize(const GrayImage& img);

/// Central differences with replicated borders.
GradientField gradient_field(const GrayImage& img);

std::size_t next_power_of_two(std::size_t n);
bool is_power_of_two(std::size_t n);

}  // namespace comogphog
