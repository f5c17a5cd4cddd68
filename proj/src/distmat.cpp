#include "comogphog/distmat.hpp"

#include <algorithm>
#include <cmath>

#include "comogphog/error.hpp"
#include "text_util.hpp"

namespace comogphog {

DistanceMatrix distance_matrix(const CaTrace& trace) {
  const std::size_t n = trace.size();
  if (n < 2)
    throw Error(ErrorCode::NoCaAtoms, "distance matrix needs at least 2 CA atoms");

  // Upper triangle computed once and mirrored, so symmetry is exact.
  Grid<double> d(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& a = trace.coords[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3& b = trace.coords[j];
      const double dx = a[0] - b[0];
      const double dy = a[1] - b[1];
      const double dz = a[2] - b[2];
      const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return DistanceMatrix{std::move(d)};
}

GrayImage to_gray(const DistanceMatrix& d) {
  GrayImage img(d.n(), d.n(), 0.0);
  const auto src = d.values.values();
  const double max_value = src.empty() ? 0.0 : *std::max_element(src.begin(), src.end());
  if (max_value <= 0.0)
    return img;
  auto dst = img.pixels.values();
  std::transform(src.begin(), src.end(), dst.begin(), [max_value](double v) { return v / max_value; });
  return img;
}

std::string encode_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  out.reserve(out.size() + img.pixels.size());
  for (double v : img.pixels.values()) {
    const double level = std::round(std::clamp(v, 0.0, 1.0) * 255.0);
    out.push_back(static_cast<char>(static_cast<unsigned char>(level)));
  }
  return out;
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
  detail::write_file(path, encode_pgm(img));
}

}  // namespace comogphog
