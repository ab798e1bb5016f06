#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fragvqa/media.hpp"

namespace fragvqa {

/// Normalized CHW float image fed to an extractor.
struct ImageTensor {
  int channels = 3;
  int height = 0;
  int width = 0;
  std::vector<float> values;
};

/// Scales 8-bit RGB to [0, 1] and applies the ImageNet per-channel mean/std.
ImageTensor preprocess(const Frame& image);

/// C x H x W activations of one tapped stage.
struct FeatureMap {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<float> values;  // CHW
};

/// N x D patch tokens with the class token removed.
struct PatchEmbeddings {
  int num_patches = 0;
  int dim = 0;
  std::vector<float> values;  // row-major N x D
};

enum class BackboneKind { conv_stages, patch_transformer, toy_conv };

std::string to_string(BackboneKind kind);
BackboneKind parse_backbone_kind(const std::string& name);

struct BackboneSpec {
  BackboneKind kind = BackboneKind::toy_conv;
  std::string name;
  /// Tap points: ONNX node-output names. Informational for builtin kinds.
  std::vector<std::string> stage_names;
  std::vector<int> stage_channels;
  int embedding_dim = 0;
  /// Expected token count for transformers; 0 skips the check.
  int num_patches = 0;
  /// Transformer taps whose first row is a class token.
  bool class_token = true;
  /// ONNX file path, or "builtin:<seed>" for the in-repo toy networks.
  std::string weights_source = "builtin:7";
  int input_size = 224;
  // Toy network options.
  std::string activation = "relu";  // relu | identity
  bool zero_bias = false;
  int patch_size = 16;

  [[nodiscard]] bool is_builtin() const;
  [[nodiscard]] std::uint64_t builtin_seed() const;
  [[nodiscard]] bool is_conv() const { return kind != BackboneKind::patch_transformer; }
  /// Canonical text used for hashing and cache headers.
  [[nodiscard]] std::string canonical() const;
  void validate() const;

  /// Declared ResNet-50 taps: stem plus four residual stages.
  static BackboneSpec resnet50(std::string onnx_path = {});
  /// Declared ViT-B/16 token output (768-dim, 196 patches + class token).
  static BackboneSpec vit_b16(std::string onnx_path = {});
  /// 3-stage strided convolution network, channels 4/8/16.
  static BackboneSpec toy_conv(std::uint64_t seed = 7);
  /// Linear patch embedding with tanh, 16 px patches.
  static BackboneSpec toy_patch(std::uint64_t seed = 11, int dim = 32);
};

/// Immutable after construction; safe to call from several threads.
class FeatureExtractor {
 public:
  explicit FeatureExtractor(BackboneSpec spec) : spec_(std::move(spec)) {}
  virtual ~FeatureExtractor() = default;
  FeatureExtractor(const FeatureExtractor&) = delete;
  FeatureExtractor& operator=(const FeatureExtractor&) = delete;

  [[nodiscard]] const BackboneSpec& spec() const noexcept { return spec_; }

  /// One map per declared stage, in network order.
  [[nodiscard]] virtual std::vector<FeatureMap> stage_maps(const ImageTensor& input) const;
  [[nodiscard]] virtual PatchEmbeddings patch_embeddings(const ImageTensor& input) const;

 private:
  BackboneSpec spec_;
};

/// Builtin specs give the toy networks; anything else loads an ONNX file.
std::shared_ptr<const FeatureExtractor> load_external_backbone(const BackboneSpec& spec);

std::vector<FeatureMap> extract_stage_maps(const FeatureExtractor& extractor, const Frame& image);
PatchEmbeddings extract_patch_embeddings(const FeatureExtractor& extractor, const Frame& image);

/// Per-channel spatial means of every map, concatenated in order.
std::vector<float> layer_stack_features(std::span<const FeatureMap> maps);

/// The vector followed by its mean, max and population standard deviation.
std::vector<float> global_pool_conv(std::span<const float> avg_pool);

/// Per-dimension mean, max and population std over patches: [mu | max | sigma].
std::vector<float> patch_embedding_pool(const PatchEmbeddings& emb);

/// Channel means of the last stage (the global average pool output).
std::vector<float> average_pool(const FeatureMap& last_stage);

std::size_t conv_stack_length(const BackboneSpec& spec);
std::size_t conv_pool_length(const BackboneSpec& spec);
std::size_t transformer_pool_length(const BackboneSpec& spec);

}  // namespace fragvqa
