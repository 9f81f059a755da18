#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "idus/core/rng.hpp"
#include "idus/core/types.hpp"
#include "idus/preprocess/preprocess.hpp"

namespace idus {

// One texture family per class: oriented sinusoidal ripples, near-constant
// sand, or granular bright-point speckle.
struct TextureSpec {
  enum class Kind { Ripple, Smooth, Speckle };
  Kind kind = Kind::Smooth;
  double wavelength = 16.0;       // Ripple
  double orientation_deg = 0.0;   // Ripple
  double noise_std = 0.05;        // Smooth
  double density = 0.10;          // Speckle

  static TextureSpec ripple(double wavelength, double orientation_deg) {
    TextureSpec t;
    t.kind = Kind::Ripple;
    t.wavelength = wavelength;
    t.orientation_deg = orientation_deg;
    return t;
  }
  static TextureSpec smooth(double noise_std) {
    TextureSpec t;
    t.kind = Kind::Smooth;
    t.noise_std = noise_std;
    return t;
  }
  static TextureSpec speckle(double density) {
    TextureSpec t;
    t.kind = Kind::Speckle;
    t.density = density;
    return t;
  }
};

struct SynthConfig {
  int n_images = 20;
  int side = 64;
  int n_classes = 4;
  std::vector<TextureSpec> textures = {
      TextureSpec::ripple(16.0, 0.0),
      TextureSpec::ripple(6.0, 60.0),
      TextureSpec::smooth(0.05),
      TextureSpec::speckle(0.10),
  };
  double label_fraction = 1.0;
  std::uint64_t seed = 0;

  void validate() const {
    require_arg(n_images >= 1, "SynthConfig: n_images must be positive");
    require_arg(side >= 32, "SynthConfig: side must be at least 32");
    require_arg(n_classes >= 1, "SynthConfig: n_classes must be positive");
    require_arg(n_classes <= static_cast<int>(textures.size()),
                "SynthConfig: more classes than texture specs");
    require_arg(label_fraction >= 0.0 && label_fraction <= 1.0,
                "SynthConfig: label_fraction outside [0,1]");
  }
};

struct SynthImage {
  RawImage raw;
  GridI truth;    // full class map
  GridI labels;   // truth with (1 - label_fraction) of pixels masked out
};

struct SynthDataset {
  std::vector<SynthImage> images;
  std::vector<double> class_proportions;  // over all true pixels
};

namespace detail {

inline float texture_value(const TextureSpec& t, int y, int x, double phase, Rng& rng) {
  switch (t.kind) {
    case TextureSpec::Kind::Ripple: {
      const double th = t.orientation_deg * M_PI / 180.0;
      const double u = x * std::cos(th) + y * std::sin(th);
      const double profile =
          0.35 + 0.45 * 0.5 * (1.0 + std::sin(2.0 * M_PI * u / t.wavelength + phase));
      const double v = profile * (1.0 + 0.15 * rng.normal());
      return static_cast<float>(std::max(0.01, v));
    }
    case TextureSpec::Kind::Smooth: {
      const double v = 0.55 * (1.0 + t.noise_std * rng.normal());
      return static_cast<float>(std::max(0.01, v));
    }
    case TextureSpec::Kind::Speckle: {
      if (rng.uniform() < t.density) {
        return static_cast<float>(1.0 + 0.8 * rng.uniform());
      }
      return static_cast<float>(std::max(0.01, 0.12 * (1.0 + 0.4 * rng.normal())));
    }
  }
  return 0.f;
}

}  // namespace detail

// Deterministic mosaic generator. Each image is a Voronoi partition seeded on
// a jittered grid (cells stay at least ~side/4 across) with one texture per
// cell; every class appears in every image when cell count allows.
inline SynthDataset generate_synthetic_raw(const SynthConfig& cfg) {
  cfg.validate();
  SynthDataset ds;
  ds.images.resize(cfg.n_images);
  std::vector<std::int64_t> counts(cfg.n_classes, 0);

  const int grid = std::max(2, std::min(4, cfg.side / 32));
  const int block = cfg.side / grid;

  for (int n = 0; n < cfg.n_images; ++n) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(n)));
    auto& im = ds.images[n];
    im.raw.source_id = "syn=" + std::to_string(cfg.seed) + ":" + std::to_string(n);
    im.raw.pixels = GridF(cfg.side, cfg.side);
    im.truth = GridI(cfg.side, cfg.side);

    // Jittered-grid Voronoi sites and their class assignments.
    const int n_cells = grid * grid;
    std::vector<double> sy(n_cells), sx(n_cells);
    for (int gy = 0; gy < grid; ++gy)
      for (int gx = 0; gx < grid; ++gx) {
        const int c = gy * grid + gx;
        sy[c] = gy * block + block * (0.3 + 0.4 * rng.uniform());
        sx[c] = gx * block + block * (0.3 + 0.4 * rng.uniform());
      }
    std::vector<int> cell_class(n_cells);
    std::vector<int> order(cfg.n_classes);
    for (int c = 0; c < cfg.n_classes; ++c) order[c] = c;
    rng.shuffle(order.begin(), order.end());
    for (int c = 0; c < n_cells; ++c) {
      cell_class[c] = (c < cfg.n_classes)
                          ? order[c]
                          : static_cast<int>(rng.uniform_int(cfg.n_classes));
    }
    std::vector<double> phase(cfg.n_classes);
    for (int c = 0; c < cfg.n_classes; ++c) phase[c] = rng.uniform(0.0, 2.0 * M_PI);

    for (int y = 0; y < cfg.side; ++y) {
      for (int x = 0; x < cfg.side; ++x) {
        int best = 0;
        double best_d = 1e30;
        for (int c = 0; c < n_cells; ++c) {
          const double dy = y - sy[c], dx = x - sx[c];
          const double d = dy * dy + dx * dx;
          if (d < best_d) {
            best_d = d;
            best = c;
          }
        }
        const int cls = cell_class[best];
        im.truth(y, x) = cls;
        im.raw.pixels(y, x) = detail::texture_value(cfg.textures[cls], y, x, phase[cls], rng);
        ++counts[cls];
      }
    }

    // Mask down to exactly floor(label_fraction * pixels) labeled pixels.
    im.labels = im.truth;
    const std::size_t total = im.labels.size();
    const auto keep = static_cast<std::size_t>(std::floor(cfg.label_fraction * total));
    if (keep < total) {
      Rng mask_rng(derive_seed(cfg.seed, 0x10000u + static_cast<std::uint64_t>(n)));
      auto kept = mask_rng.sample_indices(total, keep);
      GridI masked(cfg.side, cfg.side, kUnlabeled);
      for (auto idx : kept) masked[idx] = im.labels[idx];
      im.labels = masked;
    }
  }

  std::int64_t total_px = 0;
  for (auto c : counts) total_px += c;
  ds.class_proportions.resize(cfg.n_classes);
  for (int c = 0; c < cfg.n_classes; ++c)
    ds.class_proportions[c] = static_cast<double>(counts[c]) / static_cast<double>(total_px);
  return ds;
}

// Raw mosaic plus the conditioning pipeline, as consumed by training code.
inline std::vector<ImageRecord> generate_synthetic(const SynthConfig& cfg) {
  const SynthDataset ds = generate_synthetic_raw(cfg);
  std::vector<ImageRecord> out;
  out.reserve(ds.images.size());
  for (const auto& im : ds.images) {
    ImageRecord rec = preprocess(im.raw);
    rec.labels = im.labels;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace idus
