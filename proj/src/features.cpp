#include "comogphog/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "comogphog/distmat.hpp"
#include "comogphog/error.hpp"

namespace comogphog {

namespace {

void normalize_l1(std::vector<double>& v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (total <= 0.0)
    return;
  for (double& x : v)
    x /= total;
}

}  // namespace

QuantizedOrientations quantize_orientations(const GradientField& g, std::size_t bins) {
  if (bins == 0 || bins > 360)
    throw Error(ErrorCode::InvalidArgument, "bin count must be in [1, 360], got " + std::to_string(bins));

  const double width = 360.0 / static_cast<double>(bins);
  const int last_bin = static_cast<int>(bins) - 1;
  QuantizedOrientations q{Grid<int>(g.height(), g.width()), Grid<unsigned char>(g.height(), g.width()), bins};
  for (std::size_t r = 0; r < g.height(); ++r) {
    for (std::size_t c = 0; c < g.width(); ++c) {
      const int bin = static_cast<int>(std::floor(g.orientation(r, c) / width));
      q.bin(r, c) = std::clamp(bin, 0, last_bin);
      q.valid(r, c) = g.magnitude(r, c) > kMagnitudeEpsilon ? 1 : 0;
    }
  }
  return q;
}

std::vector<double> comograd(const QuantizedOrientations& q) {
  const std::size_t bins = q.bins;
  std::vector<double> counts(bins * bins, 0.0);
  const std::size_t h = q.height();
  const std::size_t w = q.width();
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      if (!q.valid(r, c))
        continue;
      const auto from = static_cast<std::size_t>(q.bin(r, c)) * bins;
      if (c + 1 < w && q.valid(r, c + 1))
        counts[from + static_cast<std::size_t>(q.bin(r, c + 1))] += 1.0;
      if (r + 1 < h && q.valid(r + 1, c))
        counts[from + static_cast<std::size_t>(q.bin(r + 1, c))] += 1.0;
    }
  }
  normalize_l1(counts);
  return counts;
}

std::vector<std::vector<double>> phog_histograms(const GradientField& g, std::size_t bins,
                                                 std::size_t levels) {
  const std::size_t divisions = std::size_t{1} << levels;
  if (g.height() % divisions != 0 || g.width() % divisions != 0)
    throw Error(ErrorCode::InvalidArgument, "image size not divisible by the pyramid grid");

  const QuantizedOrientations q = quantize_orientations(g, bins);
  std::vector<std::vector<double>> cells;
  for (std::size_t level = 0; level <= levels; ++level) {
    const std::size_t side = std::size_t{1} << level;
    const std::size_t cell_h = g.height() / side;
    const std::size_t cell_w = g.width() / side;
    for (std::size_t cy = 0; cy < side; ++cy) {
      for (std::size_t cx = 0; cx < side; ++cx) {
        std::vector<double> hist(bins, 0.0);
        for (std::size_t r = cy * cell_h; r < (cy + 1) * cell_h; ++r)
          for (std::size_t c = cx * cell_w; c < (cx + 1) * cell_w; ++c)
            if (q.valid(r, c))
              hist[static_cast<std::size_t>(q.bin(r, c))] += g.magnitude(r, c);
        cells.push_back(std::move(hist));
      }
    }
  }
  return cells;
}

std::vector<double> phog(const GradientField& g, std::size_t bins, std::size_t levels) {
  std::vector<double> out;
  for (const auto& hist : phog_histograms(g, bins, levels))
    out.insert(out.end(), hist.begin(), hist.end());
  normalize_l1(out);
  return out;
}

PipelineStages run_image_pipeline(const CaTrace& trace, const Config& config) {
  config.validate();
  PipelineStages stages;
  stages.gray = to_gray(distance_matrix(trace));
  stages.resized = symmetrize(normalize_size(stages.gray, config.image_size));
  stages.gradient = gradient_field(stages.resized);
  return stages;
}

FeatureVector extract_features(const CaTrace& trace, const Config& config) {
  const PipelineStages stages = run_image_pipeline(trace, config);
  FeatureVector fv{trace.id, comograd(quantize_orientations(stages.gradient, config.bins_comograd))};
  const auto pyramid = phog(stages.gradient, config.bins_phog, config.phog_levels);
  fv.values.insert(fv.values.end(), pyramid.begin(), pyramid.end());
  fv.values.resize(config.feature_length(), 0.0);
  return fv;
}

}  // namespace comogphog
