#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "idus/core/error.hpp"
#include "idus/core/types.hpp"

namespace idus {

// Area-weighted downsampling to a square target. Each output pixel averages
// the (possibly fractional) source box it covers, so constant regions stay
// constant and no aliasing is introduced for the usual shrink factors.
inline RawImage downsample(const RawImage& img, int target_side) {
  const int h = img.pixels.height(), w = img.pixels.width();
  require_dim(target_side >= 1, "downsample: target must be positive");
  require_dim(target_side <= std::min(h, w), "downsample: target exceeds input dimension");

  RawImage out;
  out.source_id = img.source_id;
  out.pixels = GridF(target_side, target_side);
  const double sy = static_cast<double>(h) / target_side;
  const double sx = static_cast<double>(w) / target_side;
  for (int oy = 0; oy < target_side; ++oy) {
    const double y0 = oy * sy, y1 = (oy + 1) * sy;
    const int iy0 = static_cast<int>(std::floor(y0));
    const int iy1 = std::min(h, static_cast<int>(std::ceil(y1)));
    for (int ox = 0; ox < target_side; ++ox) {
      const double x0 = ox * sx, x1 = (ox + 1) * sx;
      const int ix0 = static_cast<int>(std::floor(x0));
      const int ix1 = std::min(w, static_cast<int>(std::ceil(x1)));
      double acc = 0.0, area = 0.0;
      for (int y = iy0; y < iy1; ++y) {
        const double wy = std::min<double>(y + 1, y1) - std::max<double>(y, y0);
        for (int x = ix0; x < ix1; ++x) {
          const double wx = std::min<double>(x + 1, x1) - std::max<double>(x, x0);
          acc += wy * wx * img.pixels(y, x);
          area += wy * wx;
        }
      }
      out.pixels(oy, ox) = static_cast<float>(acc / area);
    }
  }
  return out;
}

namespace detail {

inline double schlick_mean(const GridF& px, float maxv, double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double xn = px[i] / maxv;
    sum += p * xn / ((p - 1.0) * xn + 1.0);
  }
  return sum / static_cast<double>(px.size());
}

}  // namespace detail

// Rational dynamic-range compression x -> p*x' / ((p-1)*x' + 1) on x' = x/max.
// The map is strictly monotone for p > 1 and fixes 0 -> 0, max -> 1. The free
// parameter is solved by bisection over (1, 1e6] so the output mean lands on
// target_brightness (within 1e-3 when the target is reachable, i.e. at least
// the normalized input mean).
inline GridF schlick_tonemap(const RawImage& img, double target_brightness) {
  const auto& px = img.pixels;
  require_arg(!px.empty(), "schlick_tonemap: empty image");
  float maxv = 0.f;
  for (std::size_t i = 0; i < px.size(); ++i) {
    require_arg(std::isfinite(px[i]) && px[i] >= 0.f, "schlick_tonemap: negative or non-finite pixel");
    maxv = std::max(maxv, px[i]);
  }
  if (maxv <= 0.f) throw DegenerateInputError("schlick_tonemap: all-zero image");

  double lo = 1.0, hi = 1e6;
  double p = hi;
  if (detail::schlick_mean(px, maxv, hi) < target_brightness) {
    p = hi;  // saturated: even the brightest admissible map undershoots
  } else {
    for (int it = 0; it < 200; ++it) {
      p = 0.5 * (lo + hi);
      const double m = detail::schlick_mean(px, maxv, p);
      if (std::abs(m - target_brightness) < 1e-3) break;
      (m < target_brightness ? lo : hi) = p;
    }
  }

  GridF out(px.height(), px.width());
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double xn = px[i] / maxv;
    out[i] = static_cast<float>(p * xn / ((p - 1.0) * xn + 1.0));
  }
  return out;
}

// 256-level histogram equalization on [0,1] data, with the usual 8-bit
// cumulative-distribution remap. A single-level image is returned unchanged.
inline GridF equalize_hist(const GridF& img01) {
  require_arg(!img01.empty(), "equalize_hist: empty image");
  const int levels = 256;
  std::array<std::int64_t, 256> hist{};
  std::vector<std::uint8_t> q(img01.size());
  for (std::size_t i = 0; i < img01.size(); ++i) {
    const float v = img01[i];
    require_arg(v >= 0.f && v <= 1.f, "equalize_hist: value outside [0,1]");
    const int level = std::min(levels - 1, static_cast<int>(v * levels));
    q[i] = static_cast<std::uint8_t>(level);
    ++hist[level];
  }

  int first = 0;
  while (first < levels && hist[first] == 0) ++first;
  const std::int64_t total = static_cast<std::int64_t>(img01.size());
  if (total == hist[first]) return img01;  // constant image

  std::array<float, 256> lut{};
  const double scale = (levels - 1.0) / static_cast<double>(total - hist[first]);
  std::int64_t cum = 0;
  for (int i = first; i < levels; ++i) {
    cum += hist[i];
    lut[i] = static_cast<float>(std::lround((cum - hist[first]) * scale) / 255.0);
  }

  GridF out(img01.height(), img01.width());
  for (std::size_t i = 0; i < img01.size(); ++i) out[i] = lut[q[i]];
  return out;
}

// Zero mean, unit standard deviation (population std).
inline GridF normalize(const GridF& img) {
  require_arg(!img.empty(), "normalize: empty image");
  double mean = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) mean += img[i];
  mean /= static_cast<double>(img.size());
  double var = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double d = img[i] - mean;
    var += d * d;
  }
  var /= static_cast<double>(img.size());
  if (var <= 0.0) throw DegenerateInputError("normalize: zero variance");
  const double inv = 1.0 / std::sqrt(var);
  GridF out(img.height(), img.width());
  for (std::size_t i = 0; i < img.size(); ++i)
    out[i] = static_cast<float>((img[i] - mean) * inv);
  return out;
}

struct PreprocessOptions {
  int target_side = 0;             // 0: keep size
  double target_brightness = 0.5;
};

// Full conditioning pipeline: optional downsample, tone map, equalize,
// normalize. Statistics are per image.
inline ImageRecord preprocess(const RawImage& raw, const PreprocessOptions& opt = {}) {
  RawImage work = raw;
  if (opt.target_side > 0 &&
      (raw.pixels.height() != opt.target_side || raw.pixels.width() != opt.target_side)) {
    work = downsample(raw, opt.target_side);
  }
  ImageRecord rec;
  rec.source_id = raw.source_id;
  rec.pixels = normalize(equalize_hist(schlick_tonemap(work, opt.target_brightness)));
  return rec;
}

}  // namespace idus
