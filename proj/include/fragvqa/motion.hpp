#pragma once

#include <vector>

#include "fragvqa/media.hpp"

namespace fragvqa {

/// Per-pixel, per-channel non-negative real map (frame differences, flow
/// magnitudes). Same memory layout as `Frame`.
struct ResidualMap {
  int width = 0;
  int height = 0;
  int channels = 1;
  int bit_depth = 8;
  std::vector<float> values;

  ResidualMap() = default;
  ResidualMap(int w, int h, int c, int depth = 8)
      : width(w), height(h), channels(c), bit_depth(depth),
        values(static_cast<std::size_t>(w) * h * c, 0.0f) {}

  [[nodiscard]] float at(int x, int y, int c = 0) const noexcept {
    return values[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
};

/// Dense displacement field: `u` horizontal, `v` vertical, both in pixels,
/// row-major.
struct FlowField {
  int width = 0;
  int height = 0;
  std::vector<float> u;
  std::vector<float> v;

  FlowField() = default;
  FlowField(int w, int h)
      : width(w), height(h), u(static_cast<std::size_t>(w) * h, 0.0f), v(static_cast<std::size_t>(w) * h, 0.0f) {}
};

struct FlowParams {
  double pyramid_scale = 0.5;
  int levels = 3;
  int window_size = 15;
  int iterations = 3;
  int poly_n = 5;
  double poly_sigma = 1.2;

  void validate() const;
};

/// |F_{t+1} - F_t| per pixel and channel.
ResidualMap frame_difference(const Frame& f_t, const Frame& f_t1);

/// Polynomial-expansion dense flow over an image pyramid. The result
/// satisfies luma_t(x, y) ~ luma_t1(x + u, y + v).
FlowField estimate_flow(const Frame& luma_t, const Frame& luma_t1, const FlowParams& params = {});

/// HSV encoding of the field: hue from direction, full saturation, value from
/// magnitude relative to the field maximum.
Frame flow_to_rgb(const FlowField& field, int bit_depth = 8);

ResidualMap flow_magnitude(const FlowField& field);

}  // namespace fragvqa
