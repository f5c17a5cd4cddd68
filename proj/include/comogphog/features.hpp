#pragma once

#include <string>
#include <vector>

#include "comogphog/config.hpp"
#include "comogphog/grid.hpp"
#include "comogphog/imageops.hpp"
#include "comogphog/structure_io.hpp"

namespace comogphog {

/// Gradients at or below this magnitude carry no orientation.
inline constexpr double kMagnitudeEpsilon = 1e-12;

struct QuantizedOrientations {
  Grid<int> bin;
  Grid<unsigned char> valid;
  std::size_t bins = 0;

  std::size_t height() const noexcept { return bin.rows(); }
  std::size_t width() const noexcept { return bin.cols(); }
};

/// Descriptor of one structure: co-occurrence block followed by the pyramid
/// histogram block, zero-padded to Config::feature_length(). Both blocks are
/// L1-normalized (or all zero).
struct FeatureVector {
  std::string id;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  bool operator==(const FeatureVector&) const = default;
};

/// bin = floor(orientation / (360 / bins)); valid = magnitude > epsilon.
QuantizedOrientations quantize_orientations(const GradientField& g, std::size_t bins);

/// Co-occurrence of orientation bins over right (0,+1) and down (+1,0)
/// neighbor pairs of valid pixels, normalized to sum 1 and flattened
/// row-major. Length bins^2.
std::vector<double> comograd(const QuantizedOrientations& q);

/// Unnormalized magnitude-weighted histograms, one per quad-tree cell,
/// level 0 first and row-major within a level.
std::vector<std::vector<double>> phog_histograms(const GradientField& g, std::size_t bins = 9,
                                                 std::size_t levels = 3);

/// Concatenated pyramid histograms normalized to sum 1. Length
/// bins * (1 + 4 + ... + 4^levels).
std::vector<double> phog(const GradientField& g, std::size_t bins = 9, std::size_t levels = 3);

/// Intermediate stages of the extraction pipeline, useful for debugging.
struct PipelineStages {
  GrayImage gray;
  GrayImage resized;
  GradientField gradient;
};

PipelineStages run_image_pipeline(const CaTrace& trace, const Config& config = {});

FeatureVector extract_features(const CaTrace& trace, const Config& config = {});

}  // namespace comogphog
