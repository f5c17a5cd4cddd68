#include "comogphog/config.hpp"

#include "comogphog/error.hpp"
#include "comogphog/imageops.hpp"

namespace comogphog {

void Config::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (bins_comograd == 0 || bins_comograd > 360)
    fail("bins_comograd must be in [1, 360], got " + std::to_string(bins_comograd));
  if (bins_phog == 0 || bins_phog > 360)
    fail("bins_phog must be in [1, 360], got " + std::to_string(bins_phog));
  if (phog_levels > 10)
    fail("phog_levels too large: " + std::to_string(phog_levels));
  if (!is_power_of_two(image_size) || image_size < 2)
    fail("image_size must be a power of two >= 2, got " + std::to_string(image_size));
  if (image_size % (std::size_t{1} << phog_levels) != 0)
    fail("image_size must be divisible by 2^phog_levels");
  if (eval_bins < 2)
    fail("eval_bins must be at least 2");
}

std::size_t Config::phog_cells() const {
  std::size_t cells = 0;
  for (std::size_t level = 0; level <= phog_levels; ++level)
    cells += std::size_t{1} << (2 * level);
  return cells;
}

std::string Config::describe() const {
  return "bins_comograd=" + std::to_string(bins_comograd) + " bins_phog=" + std::to_string(bins_phog) +
         " phog_levels=" + std::to_string(phog_levels) + " image_size=" + std::to_string(image_size) +
         " eval_bins=" + std::to_string(eval_bins);
}

}  // namespace comogphog
