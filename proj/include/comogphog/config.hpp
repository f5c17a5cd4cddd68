#pragma once

#include <cstddef>
#include <string>

namespace comogphog {

/// Extraction and evaluation parameters. Defaults give a 16x16 co-occurrence
/// block (256 values) and an 85-cell x 9-bin pyramid (765 values).
struct Config {
  std::size_t bins_comograd = 16;
  std::size_t bins_phog = 9;
  std::size_t phog_levels = 3;
  std::size_t image_size = 128;
  std::size_t eval_bins = 200;

  /// Throws Error{InvalidArgument} describing the first violated constraint.
  void validate() const;

  std::size_t comograd_length() const { return bins_comograd * bins_comograd; }
  std::size_t phog_cells() const;
  std::size_t phog_length() const { return phog_cells() * bins_phog; }
  /// Computed values: co-occurrence block followed by the pyramid block.
  std::size_t descriptor_length() const { return comograd_length() + phog_length(); }
  /// Record width: descriptor_length() zero-padded to a multiple of 8. The
  /// default 1021 computed values occupy a 1024-slot record; the padding
  /// slots are always zero and do not change Euclidean distances.
  std::size_t feature_length() const { return (descriptor_length() + 7) / 8 * 8; }

  std::string describe() const;
  bool operator==(const Config&) const = default;
};

inline constexpr std::size_t kFeatureLength = 1024;
inline constexpr std::size_t kComogradLength = 256;
/// Pyramid values computed with the defaults (85 cells x 9 bins).
inline constexpr std::size_t kPhogValues = 765;
/// Slots 256..1023 of a record: the pyramid values plus 3 zero slots.
inline constexpr std::size_t kPhogBlockLength = kFeatureLength - kComogradLength;

}  // namespace comogphog
