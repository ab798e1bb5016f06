#pragma once

#include <string>
#include <vector>

#include "fragvqa/media.hpp"
#include "fragvqa/motion.hpp"

namespace fragvqa {

/// Sum of residual energy per p x p cell of a non-overlapping grid.
struct ScoreGrid {
  int rows = 0;
  int cols = 0;
  int patch_size = 0;
  std::vector<double> scores;  // row-major

  [[nodiscard]] double at(int r, int c) const { return scores[static_cast<std::size_t>(r) * cols + c]; }
  [[nodiscard]] int cells() const noexcept { return rows * cols; }
};

struct GridCell {
  int y = 0;  // grid row
  int x = 0;  // grid column
  friend bool operator==(const GridCell&, const GridCell&) = default;
  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

/// Selected cells in row-major raster order.
struct PatchPositions {
  std::vector<GridCell> cells;
  int patch_size = 0;
  int source_width = 0;
  int source_height = 0;

  [[nodiscard]] std::size_t size() const noexcept { return cells.size(); }
};

enum class FragmentKind { residual_diff, residual_flow, merged, spatial, resized_frame };

std::string to_string(FragmentKind kind);

struct Fragment {
  Frame image;  // n x n, 8-bit
  PatchPositions positions;
  FragmentKind kind = FragmentKind::residual_diff;
};

/// Default geometry: 16 px patches tiled into a 224 x 224 mosaic (14 x 14 = 196 cells).
struct FragmentGeometry {
  int patch_size = 16;
  int target_size = 224;

  [[nodiscard]] int cells_per_side() const noexcept { return target_size / patch_size; }
  [[nodiscard]] int capacity() const noexcept { return cells_per_side() * cells_per_side(); }
  void validate() const;
};

ScoreGrid patch_scores(const ResidualMap& map, int patch_size);

/// The k highest-scoring cells (ties go to the smaller row-major index),
/// returned in raster order.
PatchPositions select_top_patches(const ScoreGrid& grid, int k);

/// Rounds a residual map to an 8-bit image (values clamped to the 8-bit range
/// after bit-depth scaling).
Frame residual_to_frame(const ResidualMap& map);

/// Copies the selected patches into a zero-initialized n x n mosaic, the
/// idx-th position landing in cell (idx / (n/p), idx % (n/p)).
Fragment assemble_fragment(const Frame& source, const PatchPositions& positions, int n,
                           FragmentKind kind = FragmentKind::residual_diff);
Fragment assemble_fragment(const ResidualMap& source, const PatchPositions& positions, int n,
                           FragmentKind kind = FragmentKind::residual_diff);

/// alpha * rf_diff + (1 - alpha) * rf_flow, rounded half up.
Fragment merge_fragments(const Fragment& rf_diff, const Fragment& rf_flow, double alpha = 0.5);

/// Patches of the decoded frame at the frame-difference positions.
Fragment spatial_fragment(const Frame& frame, const PatchPositions& diff_positions, int n);

/// All images derived from one frame pair. `merged`, `spatial` and
/// `resized_frame` are the default feature streams; the rest serve the
/// single-stream ablations.
struct FragmentBundle {
  Fragment residual_diff;
  Fragment residual_flow;
  Fragment merged;
  Fragment spatial;
  Fragment resized_frame;
  Frame diff_frame;  // whole frame difference resized to n x n
  Frame flow_frame;  // whole flow visualization resized to n x n
  ScoreGrid diff_scores;
  ScoreGrid flow_scores;
};

FragmentBundle build_fragment_bundle(const FramePair& pair, const FlowParams& flow_params,
                                     const FragmentGeometry& geometry = {}, double alpha = 0.5);

/// Plain-text dump of positions and scores for one bundle.
std::string describe_bundle(const FragmentBundle& bundle);

}  // namespace fragvqa
