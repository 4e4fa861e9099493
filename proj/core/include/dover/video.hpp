#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "dover/tensor.hpp"

namespace dover {

/// Decoded video: (T x H x W x C) frame tensor with values in [0,1].
/// Immutable by convention after construction; all pipeline operations take
/// it by const reference and return fresh copies, so sharing one Video
/// across parallel workers is safe.
struct Video {
  Tensor4 frames;
  double fps = 30.0;
  std::string id;

  // Ground truth attached by synth_video; absent for loaded footage.
  std::optional<double> aesthetic_gt;
  std::optional<double> technical_gt;

  int t() const { return frames.t; }
  int h() const { return frames.h; }
  int w() const { return frames.w; }
  int c() const { return frames.c; }

  /// Throws InvalidArgument unless T,H,W >= 1, C in {1,3} and every value is
  /// finite and in [0,1].
  void validate() const;
};

enum class BasePattern { gradient, checkerboard, thirds_composition, random_texture };

/// Recipe for a synthetic clip with controllable aesthetic and technical
/// ground truth. Identical (spec, seed) pairs produce bit-identical videos.
struct SynthSpec {
  BasePattern base_pattern = BasePattern::thirds_composition;
  double aesthetic_level = 0.5;  // in [0,1]; composition regularity
  double blur_sigma = 0.0;       // px, >= 0
  double noise_sigma = 0.0;      // channel value units, >= 0
  int jitter_px = 0;             // per-frame circular shift amplitude
  int t = 8, h = 64, w = 64, c = 3;
  std::uint64_t seed = 0;
  std::string id = "synth";

  void validate() const;
};

// Full-scale degradation levels: the level at which each knob alone counts
// as total technical quality loss in normalized_degradation().
inline constexpr double kBlurFullScale = 4.0;    // px
inline constexpr double kNoiseFullScale = 0.25;  // value units
inline constexpr double kJitterFullScale = 8.0;  // px

/// Degradation severity in [0,1]: max of the per-knob levels, each clipped
/// to its full-scale constant. Technical ground truth is 1 minus this.
double normalized_degradation(double blur_sigma, double noise_sigma,
                              int jitter_px);

/// Renders a synthetic video: base pattern, then Gaussian blur, then
/// additive Gaussian noise, then per-frame integer circular-shift jitter.
/// aesthetic_gt = spec.aesthetic_level, technical_gt = 1 - normalized
/// degradation of the three knobs.
Video synth_video(const SynthSpec& spec);

enum class Degradation { blur, noise, jitter, blockiness };

/// Degraded copy of v. level = 0 returns a bit-identical copy. Deterministic
/// in (v.id, kind, level).
///   blur:       Gaussian blur with sigma = level px
///   noise:      additive Gaussian, sigma = level, clipped to [0,1]
///   jitter:     per-frame circular shift, distance = round(level * 8) px
///   blockiness: blend toward the 8x8 block-mean image, weight = level
Video apply_degradation(const Video& v, Degradation kind, double level);

/// Reads a video from a directory holding manifest.json and either PNG
/// frames or one raw planar uint8 file. Channel values are scaled to [0,1].
Video load_video(const std::filesystem::path& dir);

/// Writes manifest.json plus one 8-bit PNG per frame (frame_0000.png, ...).
/// Values are quantized as round(v * 255).
void save_video(const Video& v, const std::filesystem::path& dir);

}  // namespace dover
