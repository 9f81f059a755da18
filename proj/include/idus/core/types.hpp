#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "idus/core/error.hpp"

namespace idus {

// Label code for pixels excluded from losses and metrics. Matches the 8-bit
// on-disk label encoding.
inline constexpr std::int32_t kUnlabeled = 255;

template <typename T>
class Grid {
 public:
  Grid() : h_(0), w_(0) {}
  Grid(int h, int w, T fill = T{}) : h_(h), w_(w), data_(static_cast<std::size_t>(h) * w, fill) {
    require_arg(h >= 0 && w >= 0, "Grid: negative dimensions");
  }

  int height() const { return h_; }
  int width() const { return w_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int y, int x) { return data_[static_cast<std::size_t>(y) * w_ + x]; }
  const T& operator()(int y, int x) const { return data_[static_cast<std::size_t>(y) * w_ + x]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  bool same_shape(const Grid& o) const { return h_ == o.h_ && w_ == o.w_; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.h_ == b.h_ && a.w_ == b.w_ && a.data_ == b.data_;
  }

 private:
  int h_, w_;
  std::vector<T> data_;
};

using GridF = Grid<float>;
using GridI = Grid<std::int32_t>;

// Per-pixel feature array, height x width x depth, stored channel-last so a
// pixel's feature vector is contiguous.
class FeatureMap {
 public:
  FeatureMap() : h_(0), w_(0), d_(0) {}
  FeatureMap(int h, int w, int d, float fill = 0.f)
      : h_(h), w_(w), d_(d), data_(static_cast<std::size_t>(h) * w * d, fill) {
    require_arg(h >= 0 && w >= 0 && d >= 1, "FeatureMap: bad dimensions");
  }

  int height() const { return h_; }
  int width() const { return w_; }
  int depth() const { return d_; }
  std::size_t pixels() const { return static_cast<std::size_t>(h_) * w_; }
  std::size_t size() const { return data_.size(); }

  float* at(int y, int x) { return data_.data() + (static_cast<std::size_t>(y) * w_ + x) * d_; }
  const float* at(int y, int x) const {
    return data_.data() + (static_cast<std::size_t>(y) * w_ + x) * d_;
  }
  float* at(std::size_t pixel) { return data_.data() + pixel * d_; }
  const float* at(std::size_t pixel) const { return data_.data() + pixel * d_; }

  float& value(int y, int x, int c) { return at(y, x)[c]; }
  float value(int y, int x, int c) const { return at(y, x)[c]; }

  float* data() { return data_.data(); }
  const float* data() const { return data_.data(); }

  bool finite() const {
    for (float v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

 private:
  int h_, w_, d_;
  std::vector<float> data_;
};

// Per-pixel superpixel index in [0, K). Construction sites are responsible
// for the invariants: all K indices occur, each region 4-connected.
struct SegmentMap {
  GridI indices;
  int K = 0;

  int height() const { return indices.height(); }
  int width() const { return indices.width(); }
};

// Region-level features, one row per superpixel.
struct RegionFeatures {
  int K = 0;
  int depth = 0;
  std::vector<float> z;  // K x depth, row-major

  float* row(int k) { return z.data() + static_cast<std::size_t>(k) * depth; }
  const float* row(int k) const { return z.data() + static_cast<std::size_t>(k) * depth; }
};

// Nonnegative magnitude image straight from a sensor or generator.
struct RawImage {
  GridF pixels;
  std::string source_id;
};

// Preprocessed image plus optional partial ground truth. Label codes are in
// {0..C-1} or kUnlabeled.
struct ImageRecord {
  GridF pixels;
  std::optional<GridI> labels;
  std::string source_id;
};

}  // namespace idus
