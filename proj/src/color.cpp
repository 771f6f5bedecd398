#include "gop/color.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gop {

namespace {

struct Family {
  double hue;  // degrees
  double saturation;
  double light_lo;
  double light_hi;
};

constexpr Family kStoplistFamily{300.0, 0.75, 0.35, 0.75};   // fuchsia
constexpr Family kStemmerFamily{125.0, 0.55, 0.25, 0.65};    // green
constexpr Family kVectorSpaceFamily{195.0, 0.80, 0.55, 0.80};  // light blue
constexpr Family kProbabilisticFamily{225.0, 0.75, 0.18, 0.45};  // dark blue
constexpr Family kLanguageModelFamily{280.0, 0.55, 0.35, 0.65};  // purple

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

Rgb hsl(double hue, double s, double l) {
  const double c = (1.0 - std::abs(2.0 * l - 1.0)) * s;
  const double hp = hue / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) { r = c; g = x; }
  else if (hp < 2) { r = x; g = c; }
  else if (hp < 3) { g = c; b = x; }
  else if (hp < 4) { g = x; b = c; }
  else if (hp < 5) { r = x; b = c; }
  else { r = c; b = x; }
  const double m = l - c / 2.0;
  return {to_byte(r + m), to_byte(g + m), to_byte(b + m)};
}

std::uint8_t lerp(std::uint8_t a, std::uint8_t b, double t) {
  return static_cast<std::uint8_t>(std::lround(a + (b - a) * t));
}

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
  return {lerp(a.r, b.r, t), lerp(a.g, b.g, t), lerp(a.b, b.b, t)};
}

}  // namespace

std::string Rgb::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

Rgb value_color(double position) {
  const double t = std::clamp(std::isnan(position) ? 0.0 : position, 0.0, 1.0);
  if (t == 0.5) return kRampYellow;
  if (t < 0.5) return lerp(kRampRed, kRampYellow, t * 2.0);
  return lerp(kRampYellow, kRampGreen, (t - 0.5) * 2.0);
}

Rgb component_color(const CollectionManifest& manifest, Axis axis,
                    std::size_t level) {
  Family family = kStoplistFamily;
  std::size_t rank = level;
  std::size_t members = manifest.level_count(axis);
  if (axis == Axis::kStemmer) {
    family = kStemmerFamily;
  } else if (axis == Axis::kModel) {
    const ModelFamily sub = manifest.model_family(level);
    switch (sub) {
      case ModelFamily::kVectorSpace: family = kVectorSpaceFamily; break;
      case ModelFamily::kProbabilistic: family = kProbabilisticFamily; break;
      case ModelFamily::kLanguageModel: family = kLanguageModelFamily; break;
    }
    rank = 0;
    members = 0;
    for (std::size_t i = 0; i < manifest.level_count(axis); ++i) {
      if (manifest.model_family(i) != sub) continue;
      if (i < level) ++rank;
      ++members;
    }
  }
  const double t = members <= 1 ? 0.5
                                : static_cast<double>(rank) /
                                      static_cast<double>(members - 1);
  return hsl(family.hue, family.saturation,
             family.light_lo + (family.light_hi - family.light_lo) * t);
}

}  // namespace gop
