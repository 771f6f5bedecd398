#pragma once

#include <cstdint>
#include <string>

#include "gop/manifest.hpp"

namespace gop {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  std::string hex() const;
  bool operator==(const Rgb&) const = default;
};

// Value ramp anchors: red at 0, yellow at 0.5, green at 1.
inline constexpr Rgb kRampRed{0xd7, 0x30, 0x27};
inline constexpr Rgb kRampYellow{0xff, 0xff, 0xbf};
inline constexpr Rgb kRampGreen{0x1a, 0x98, 0x50};

// Piecewise-linear red -> yellow -> green; `position` is clamped to [0,1].
Rgb value_color(double position);

// Family hue with a lightness ramp over the levels that share the family:
// fuchsia for stoplists, green for stemmers, and for models light blue
// (vector space), dark blue (probabilistic) or purple (language model).
Rgb component_color(const CollectionManifest& manifest, Axis axis,
                    std::size_t level);

}  // namespace gop
