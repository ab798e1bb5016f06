#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fragvqa/media.hpp"
#include "fragvqa/pipeline.hpp"

namespace fragvqa {

/// Procedural corpus: panning sinusoid textures degraded by Gaussian blur
/// and additive noise, both proportional to a per-clip degradation d in
/// [0, 1]. The label is mos = mos_max - (mos_max - mos_min) * d.
struct SynthConfig {
  int videos = 50;
  int width = 128;
  int height = 96;
  int frames = 12;
  double fps = 8.0;
  std::uint64_t seed = 1;
  double max_blur_sigma = 1.0;
  double max_noise_sigma = 30.0;
  double mos_min = 1.0;
  double mos_max = 5.0;

  void validate() const;
};

struct SynthClip {
  std::string video_id;
  double degradation = 0;
  double mos = 0;
  FrameSequence sequence;
};

/// Degradation of clip `index`: evenly spaced over [0, 1].
double synth_degradation(int index, int count);

SynthClip make_synth_clip(const SynthConfig& config, int index);

/// Smooth texture translated by (dx, dy) pixels per frame; used for flow tests too.
FrameSequence panning_texture(int width, int height, int frames, double fps, double dx, double dy, std::uint64_t seed,
                              int channels = 3);

/// Applies blur (sigma in px, 0 = none) then Gaussian noise to every frame.
void degrade(FrameSequence& seq, double blur_sigma, double noise_sigma, std::uint64_t seed);

FrameSequence solid_clip(int width, int height, int frames, double fps, std::array<int, 3> rgb);

/// Writes every clip as raw planar video plus `manifest.csv` into `dir`.
std::vector<ManifestRow> write_synth_corpus(const SynthConfig& config, const std::filesystem::path& dir);

}  // namespace fragvqa
