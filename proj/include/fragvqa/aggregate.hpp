#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fragvqa/backbone.hpp"
#include "fragvqa/fragmenter.hpp"

namespace fragvqa {

/// Image streams a frame pair can contribute, in canonical order.
enum class Stream { merged, spatial, resized_frame, residual_diff, residual_flow, diff_frame, flow_frame };
/// Backbone branches, in canonical order.
enum class Branch { conv_stack, conv_pool, transformer_pool };

std::string to_string(Stream s);
std::string to_string(Branch b);
Stream parse_stream(const std::string& name);
Branch parse_branch(const std::string& name);

struct Segment {
  Stream stream = Stream::merged;
  Branch branch = Branch::conv_stack;
  std::size_t offset = 0;
  std::size_t length = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct FeatureVector {
  std::vector<float> values;
  std::vector<Segment> layout;

  /// Throws `layout` if segments do not tile the values or a value is not finite.
  void validate() const;
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Which streams and branches make up a feature vector. Lists are kept
/// sorted and de-duplicated so equal modes hash equally.
struct AblationMode {
  std::vector<Stream> streams{Stream::merged, Stream::spatial, Stream::resized_frame};
  std::vector<Branch> branches{Branch::conv_stack};

  /// Comma-separated names, e.g. "merged,spatial" and "conv_stack,transformer_pool".
  static AblationMode parse(const std::string& streams, const std::string& branches);
  void canonicalize();
  [[nodiscard]] bool needs_conv() const;
  [[nodiscard]] bool needs_transformer() const;
  [[nodiscard]] std::string canonical() const;
};

struct Extractors {
  std::shared_ptr<const FeatureExtractor> conv;
  std::shared_ptr<const FeatureExtractor> transformer;
};

/// Layout implied by the mode and the declared backbone sizes.
std::vector<Segment> expected_layout(const AblationMode& mode, const BackboneSpec* conv, const BackboneSpec* transformer);

const Frame& stream_image(const FragmentBundle& bundle, Stream stream);

FeatureVector frame_pair_feature(const FragmentBundle& bundle, const Extractors& extractors, const AblationMode& mode);

/// Element-wise mean over frame pairs. Each coordinate is summed in sorted
/// order with pairwise summation, so the result does not depend on the
/// order of `per_pair`.
FeatureVector video_feature(std::span<const FeatureVector> per_pair);

/// On-disk per-video feature cache: text header, then little-endian float32.
struct FeatureFile {
  std::string video_id;
  std::string config_hash;
  std::string backbone_hash;
  int n_pairs = 0;
  FeatureVector feature;
};

void write_feature_file(const std::filesystem::path& path, const FeatureFile& file);
FeatureFile read_feature_file(const std::filesystem::path& path);
/// Reads only the header's config hash; empty if the file is missing or unreadable.
std::string peek_feature_hash(const std::filesystem::path& path);

std::string describe_layout(const std::vector<Segment>& layout);

/// Little-endian float32 helpers shared by the binary file formats.
void write_f32_le(std::ostream& out, std::span<const float> values);
std::vector<float> read_f32_le(std::istream& in, std::size_t count);

}  // namespace fragvqa
