#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fragvqa/aggregate.hpp"
#include "fragvqa/backbone.hpp"
#include "fragvqa/eval.hpp"
#include "fragvqa/fragmenter.hpp"
#include "fragvqa/head.hpp"
#include "fragvqa/media.hpp"
#include "fragvqa/motion.hpp"

namespace fragvqa {

/// Everything a run needs. Loaded from an INI-style file:
///
///   [sampling]   interval_s, format, decoder_command, width, height, channels, fps
///   [fragments]  patch_size, target_size, alpha
///   [flow]       pyramid_scale, levels, window_size, iterations, poly_n, poly_sigma
///   [features]   streams, branches, cache_dir
///   [backbone_conv] / [backbone_transformer]
///                preset, weights, stage_names, stage_channels, tap, embedding_dim,
///                num_patches, class_token, input_size, activation, zero_bias, patch_size
///   [train]      lr, weight_decay, batch_size, epochs, swa, swa_lr, swa_start_fraction,
///                patience, l1_w, rank_w, selection, seed, batch_norm, dropout, hidden, cv_folds
///   [eval]       iterations, train_fraction, val_fraction, seed, logistic, jobs
///   [extract]    jobs
struct PipelineConfig {
  double interval_s = 0.5;
  std::string source_format = "auto";
  SourceOptions source;
  FragmentGeometry geometry;
  double alpha = 0.5;
  FlowParams flow;
  AblationMode mode = AblationMode::parse("merged,spatial,resized_frame", "conv_stack,transformer_pool");
  std::optional<BackboneSpec> conv = BackboneSpec::resnet50("models/resnet50.onnx");
  std::optional<BackboneSpec> transformer = BackboneSpec::vit_b16("models/vit_b16.onnx");
  std::filesystem::path cache_dir = "features";
  TrainConfig train;
  int cv_folds = 0;
  ProtocolConfig protocol;
  int extract_jobs = 1;

  /// Unknown sections or keys are config errors. Relative paths resolve
  /// against the file's directory.
  static PipelineConfig load(const std::filesystem::path& path);
  static PipelineConfig parse(const std::string& text, const std::filesystem::path& base_dir = {});

  void validate() const;
  /// Patch count per fragment: (n/p)^2.
  [[nodiscard]] int patches_per_fragment() const { return geometry.capacity(); }

  /// Canonical text of the fields that determine extracted features.
  [[nodiscard]] std::string extraction_canonical() const;
  [[nodiscard]] std::string canonical() const;
  /// Hash embedded in feature caches.
  [[nodiscard]] std::string extraction_hash() const;
  /// Hash of every semantically meaningful field.
  [[nodiscard]] std::string full_hash() const;
  [[nodiscard]] std::vector<Segment> layout() const;
};

struct ManifestRow {
  std::string video_id;
  std::filesystem::path path;
  std::optional<double> mos;
  std::string split;  // train | val | test | empty
};

/// CSV with a header naming at least video_id and path; mos and split are
/// optional. Relative paths resolve against the manifest's directory.
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows);

std::filesystem::path feature_path(const std::filesystem::path& cache_dir, const std::string& video_id);

/// Holds the loaded backbones for one configuration.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  [[nodiscard]] const PipelineConfig& config() const noexcept { return config_; }
  [[nodiscard]] const Extractors& extractors() const noexcept { return extractors_; }
  [[nodiscard]] const std::string& extraction_hash() const noexcept { return extraction_hash_; }
  [[nodiscard]] const std::string& backbone_hash() const noexcept { return backbone_hash_; }

  /// Full per-video extraction. With `dump_dir`, fragment images and a
  /// positions report are written there.
  [[nodiscard]] FeatureFile extract_video(const std::filesystem::path& source, const std::string& video_id,
                                          const std::filesystem::path* dump_dir = nullptr) const;

 private:
  PipelineConfig config_;
  Extractors extractors_;
  std::string extraction_hash_;
  std::string backbone_hash_;
};

struct ExtractSummary {
  int computed = 0;
  int cached = 0;
  std::vector<std::pair<std::string, std::string>> failures;  // video_id, message
};

/// One cache file per row. Rows whose cache carries the current hash are
/// skipped; failures are recorded per row and do not stop the run.
ExtractSummary extract_manifest(const Pipeline& pipeline, const std::vector<ManifestRow>& rows,
                                const std::filesystem::path& cache_dir, int jobs, bool dump_fragments,
                                std::ostream* log = nullptr);

/// Reads cached features for every row. Missing files name the video;
/// a foreign config hash is a config error; a layout differing from
/// `expected` is a layout error. Rows without a MOS get NaN labels.
Dataset load_feature_dataset(const std::vector<ManifestRow>& rows, const std::filesystem::path& cache_dir,
                             const std::string& expected_hash, const std::vector<Segment>& expected);

/// Train/val rows from the manifest's split column, or a seeded split when
/// the column is empty.
SplitIndices manifest_split(const std::vector<ManifestRow>& rows, const ProtocolConfig& protocol, std::uint64_t seed);

}  // namespace fragvqa
