#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fragvqa {

/// Row-major, channel-interleaved image with integer intensities in
/// [0, 2^bit_depth - 1].
struct Frame {
  int width = 0;
  int height = 0;
  int channels = 1;
  int bit_depth = 8;
  std::vector<std::uint16_t> data;

  Frame() = default;
  Frame(int w, int h, int c, int depth = 8);

  [[nodiscard]] std::size_t size() const noexcept { return data.size(); }
  [[nodiscard]] int max_value() const noexcept { return (1 << bit_depth) - 1; }
  [[nodiscard]] std::size_t index(int x, int y, int c = 0) const noexcept {
    return (static_cast<std::size_t>(y) * width + x) * channels + c;
  }
  [[nodiscard]] std::uint16_t at(int x, int y, int c = 0) const noexcept { return data[index(x, y, c)]; }
  [[nodiscard]] std::uint16_t& at(int x, int y, int c = 0) noexcept { return data[index(x, y, c)]; }
  [[nodiscard]] bool same_shape(const Frame& other) const noexcept {
    return width == other.width && height == other.height && channels == other.channels &&
           bit_depth == other.bit_depth;
  }

  /// Throws `format` if the data length or any intensity violates the invariants.
  void validate() const;

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct FrameSequence {
  std::vector<Frame> frames;
  double fps = 0.0;
  std::string source_id;

  void validate() const;
};

struct FramePair {
  Frame first;
  Frame second;
  double time_s = 0.0;
  int index = 0;
};

enum class SourceFormat { raw_planar, image_directory, piped_decoder };

SourceFormat parse_source_format(const std::string& name);
std::string to_string(SourceFormat format);

/// Geometry and rate of a raw stream. Raw planar files carry this in a
/// `<file>.meta` sidecar; image directories carry `fps` in `frames.meta`.
struct StreamInfo {
  int width = 0;
  int height = 0;
  int channels = 3;
  double fps = 0.0;
};

/// Everything the loaders may need beyond the source path.
struct SourceOptions {
  /// Used when no sidecar is present (piped decoder, or raw without sidecar).
  std::optional<StreamInfo> fallback_info;
  /// Shell command; `{path}` is replaced by the quoted source path. The
  /// command must write 8-bit channel-interleaved frames to stdout.
  std::string decoder_command;
};

std::filesystem::path sidecar_path(const std::filesystem::path& source, SourceFormat format);
StreamInfo read_sidecar(const std::filesystem::path& path);
void write_sidecar(const std::filesystem::path& path, const StreamInfo& info);

/// Picks a format from what exists on disk: directories are image
/// directories, files with a `.meta` sidecar are raw planar, anything else
/// goes through the decoder command.
SourceFormat detect_format(const std::filesystem::path& source, const SourceOptions& options);

FrameSequence load_frame_sequence(const std::filesystem::path& source, SourceFormat format,
                                  const SourceOptions& options = {});

/// Writes frames as 8-bit frame-major, channel-planar bytes plus the sidecar.
void save_raw_planar(const std::filesystem::path& path, const FrameSequence& seq);

/// Start indices i_k = round(k * interval_s * fps) with i_k + 1 < frame_count.
std::vector<int> pair_start_indices(int frame_count, double fps, double interval_s = 0.5);

std::vector<FramePair> sample_frame_pairs(const FrameSequence& seq, double interval_s = 0.5);

/// Loads only the frames that participate in sampled pairs. Equivalent to
/// `sample_frame_pairs(load_frame_sequence(...))` without holding the whole
/// video in memory.
std::vector<FramePair> load_frame_pairs(const std::filesystem::path& source, SourceFormat format,
                                        const SourceOptions& options, double interval_s = 0.5,
                                        double* fps_out = nullptr);

/// Rec.601 luma, rounded to nearest. Single-channel frames pass through.
Frame to_luma(const Frame& frame);

/// Replicates a single-channel frame into three channels.
Frame to_rgb(const Frame& frame);

/// Rescales intensities to 8 bits; identity for 8-bit frames.
Frame to_8bit(const Frame& frame);

/// Bilinear resampling with half-pixel centers and edge clamping.
Frame resize_bilinear(const Frame& frame, int out_w, int out_h);

/// Image I/O for fragment dumps and image-directory sources (PNG, JPEG, ...).
Frame read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const Frame& frame);

}  // namespace fragvqa
