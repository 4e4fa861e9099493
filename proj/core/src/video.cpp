#include "dover/video.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "dover/error.hpp"
#include "dover/rng.hpp"

namespace dover {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

int reflect101(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n - 2;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - m;
}

std::vector<double> gaussian_kernel(double sigma, int* radius_out) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    k[i + radius] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  *radius_out = radius;
  return k;
}

// Separable Gaussian blur, reflect-101 borders, per frame and channel.
void blur_frames(Tensor4& f, double sigma) {
  if (sigma <= 0.0) return;
  int radius = 0;
  const std::vector<double> k = gaussian_kernel(sigma, &radius);
  std::vector<double> tmp(static_cast<std::size_t>(f.h) * f.w);
  std::vector<double> tmp2(tmp.size());
  for (int fr = 0; fr < f.t; ++fr) {
    for (int ch = 0; ch < f.c; ++ch) {
      for (int y = 0; y < f.h; ++y)
        for (int x = 0; x < f.w; ++x)
          tmp[static_cast<std::size_t>(y) * f.w + x] = f.at(fr, y, x, ch);
      // horizontal
      for (int y = 0; y < f.h; ++y) {
        for (int x = 0; x < f.w; ++x) {
          double acc = 0.0;
          for (int i = -radius; i <= radius; ++i)
            acc += k[i + radius] * tmp[static_cast<std::size_t>(y) * f.w + reflect101(x + i, f.w)];
          tmp2[static_cast<std::size_t>(y) * f.w + x] = acc;
        }
      }
      // vertical
      for (int y = 0; y < f.h; ++y) {
        for (int x = 0; x < f.w; ++x) {
          double acc = 0.0;
          for (int i = -radius; i <= radius; ++i)
            acc += k[i + radius] * tmp2[static_cast<std::size_t>(reflect101(y + i, f.h)) * f.w + x];
          f.at(fr, y, x, ch) = acc;
        }
      }
    }
  }
}

// Additive Gaussian noise clipped to [0,1]; one generator per frame so the
// result is independent of any outer processing order.
void add_noise(Tensor4& f, double sigma, const Rng& base) {
  if (sigma <= 0.0) return;
  for (int fr = 0; fr < f.t; ++fr) {
    Rng rng = base.child("noise_frame", static_cast<std::uint64_t>(fr));
    const std::size_t frame_elems = static_cast<std::size_t>(f.h) * f.w * f.c;
    double* p = f.data.data() + static_cast<std::size_t>(fr) * frame_elems;
    for (std::size_t i = 0; i < frame_elems; ++i)
      p[i] = std::clamp(p[i] + sigma * rng.normal(), 0.0, 1.0);
  }
}

// Circular shift of each frame by distance pixels in a per-frame random
// direction. Directions are keyed by frame index only, so larger distances
// reuse the same direction rather than redrawing it.
void jitter_frames(Tensor4& f, double distance, const Rng& base) {
  if (distance <= 0.0) return;
  Tensor4 src = f;
  for (int fr = 0; fr < f.t; ++fr) {
    Rng rng = base.child("jitter_dir", static_cast<std::uint64_t>(fr));
    const double theta = 2.0 * kPi * rng.next_double();
    const int dy = static_cast<int>(std::lround(distance * std::sin(theta)));
    const int dx = static_cast<int>(std::lround(distance * std::cos(theta)));
    for (int y = 0; y < f.h; ++y) {
      const int sy = ((y - dy) % f.h + f.h) % f.h;
      for (int x = 0; x < f.w; ++x) {
        const int sx = ((x - dx) % f.w + f.w) % f.w;
        for (int ch = 0; ch < f.c; ++ch)
          f.at(fr, y, x, ch) = src.at(fr, sy, sx, ch);
      }
    }
  }
}

// Blend toward the 8x8 block-mean image (partial border blocks use their
// actual extent). weight is clamped to [0,1].
void blockiness_frames(Tensor4& f, double level) {
  if (level <= 0.0) return;
  const double wgt = std::min(level, 1.0);
  constexpr int kBlock = 8;
  for (int fr = 0; fr < f.t; ++fr) {
    for (int by = 0; by < f.h; by += kBlock) {
      const int y1 = std::min(by + kBlock, f.h);
      for (int bx = 0; bx < f.w; bx += kBlock) {
        const int x1 = std::min(bx + kBlock, f.w);
        for (int ch = 0; ch < f.c; ++ch) {
          double sum = 0.0;
          for (int y = by; y < y1; ++y)
            for (int x = bx; x < x1; ++x) sum += f.at(fr, y, x, ch);
          const double mean = sum / (static_cast<double>(y1 - by) * (x1 - bx));
          for (int y = by; y < y1; ++y)
            for (int x = bx; x < x1; ++x) {
              double& v = f.at(fr, y, x, ch);
              v = (1.0 - wgt) * v + wgt * mean;
            }
        }
      }
    }
  }
}

void fill_gray(Tensor4& f, int fr, int y, int x, double v) {
  for (int ch = 0; ch < f.c; ++ch) f.at(fr, y, x, ch) = v;
}

void add_blob(std::vector<double>& img, int h, int w, double cy, double cx,
              double sigma, double amplitude) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (int y = 0; y < h; ++y) {
    const double dy = y - cy;
    for (int x = 0; x < w; ++x) {
      const double dx = x - cx;
      img[static_cast<std::size_t>(y) * w + x] +=
          amplitude * std::exp(-(dy * dy + dx * dx) * inv);
    }
  }
}

// Renders one base frame (gray values); every clean frame is identical.
std::vector<double> render_base_frame(const SynthSpec& spec) {
  const int h = spec.h, w = spec.w;
  std::vector<double> img(static_cast<std::size_t>(h) * w, 0.5);
  Rng rng = Rng(spec.seed).child("pattern");
  const double a = spec.aesthetic_level;

  switch (spec.base_pattern) {
    case BasePattern::gradient: {
      // Ramp over [0.25, 0.75]; regularity pulls the direction horizontal.
      const double theta = (1.0 - a) * 2.0 * kPi * rng.next_double();
      const double cx = std::cos(theta), sy = std::sin(theta);
      double pmin = 1e300, pmax = -1e300;
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const double p = x * cx + y * sy;
          pmin = std::min(pmin, p);
          pmax = std::max(pmax, p);
        }
      const double span = std::max(pmax - pmin, 1e-12);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
          img[static_cast<std::size_t>(y) * w + x] =
              0.25 + 0.5 * ((x * cx + y * sy) - pmin) / span;
      break;
    }
    case BasePattern::checkerboard: {
      const int tile = 4 << rng.next_below(3);  // 4, 8 or 16 px
      // Regularity aligns the board with the frame origin.
      const int offy = static_cast<int>((1.0 - a) * static_cast<double>(rng.next_below(tile)));
      const int offx = static_cast<int>((1.0 - a) * static_cast<double>(rng.next_below(tile)));
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const bool on = (((y + offy) / tile) + ((x + offx) / tile)) % 2 == 0;
          img[static_cast<std::size_t>(y) * w + x] = on ? 0.7 : 0.3;
        }
      break;
    }
    case BasePattern::thirds_composition: {
      // Background ramp 0.35..0.55 in a seeded direction.
      const double theta = 2.0 * kPi * rng.next_double();
      const double cx = std::cos(theta), sy = std::sin(theta);
      double pmin = 1e300, pmax = -1e300;
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const double p = x * cx + y * sy;
          pmin = std::min(pmin, p);
          pmax = std::max(pmax, p);
        }
      const double span = std::max(pmax - pmin, 1e-12);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
          img[static_cast<std::size_t>(y) * w + x] =
              0.35 + 0.20 * ((x * cx + y * sy) - pmin) / span;

      // Subject blob: placement slides from a random spot to the nearest
      // rule-of-thirds point as the aesthetic level rises; size grows too.
      const double ry = 0.2 + 0.6 * rng.next_double();
      const double rx = 0.2 + 0.6 * rng.next_double();
      const double ty = (rng.next_below(2) == 0) ? 1.0 / 3.0 : 2.0 / 3.0;
      const double tx = (rng.next_below(2) == 0) ? 1.0 / 3.0 : 2.0 / 3.0;
      const double scy = ((1.0 - a) * ry + a * ty) * h;
      const double scx = ((1.0 - a) * rx + a * tx) * w;
      const double ssigma = (0.07 + 0.05 * a) * std::min(h, w);
      add_blob(img, h, w, scy, scx, ssigma, 0.35);

      // Clutter: eight smooth blobs whose amplitude fades with regularity.
      const double clutter_amp = 0.30 * (1.0 - a);
      for (int b = 0; b < 8; ++b) {
        const double bcy = (0.05 + 0.9 * rng.next_double()) * h;
        const double bcx = (0.05 + 0.9 * rng.next_double()) * w;
        const double bsigma = (0.03 + 0.03 * rng.next_double()) * std::min(h, w);
        const double amp = (b % 2 == 0 ? 1.0 : -1.0) * clutter_amp;
        add_blob(img, h, w, bcy, bcx, bsigma, amp);
      }
      for (double& v : img) v = std::clamp(v, 0.02, 0.98);
      break;
    }
    case BasePattern::random_texture: {
      for (double& v : img) {
        v = 0.25 + 0.5 * rng.next_double();
        (void)v;
      }
      break;
    }
  }

  if (spec.base_pattern == BasePattern::random_texture && a > 0.0) {
    // Regularity smooths the texture.
    Tensor4 one(1, h, w, 1);
    one.data = img;
    blur_frames(one, 2.0 * a);
    img = one.data;
  }
  return img;
}

}  // namespace

void Video::validate() const {
  if (frames.t < 1 || frames.h < 1 || frames.w < 1)
    throw InvalidArgument("Video: T, H, W must all be >= 1");
  if (frames.c != 1 && frames.c != 3)
    throw InvalidArgument("Video: channel count must be 1 or 3");
  for (double v : frames.data)
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
      throw InvalidArgument("Video: values must be finite and in [0,1]");
}

void SynthSpec::validate() const {
  if (aesthetic_level < 0.0 || aesthetic_level > 1.0)
    throw InvalidArgument("SynthSpec: aesthetic_level must be in [0,1]");
  if (blur_sigma < 0.0 || noise_sigma < 0.0 || jitter_px < 0)
    throw InvalidArgument("SynthSpec: degradation levels must be >= 0");
  if (t < 1 || h < 1 || w < 1 || (c != 1 && c != 3))
    throw InvalidArgument("SynthSpec: bad dimensions");
}

double normalized_degradation(double blur_sigma, double noise_sigma,
                              int jitter_px) {
  const double db = std::min(1.0, blur_sigma / kBlurFullScale);
  const double dn = std::min(1.0, noise_sigma / kNoiseFullScale);
  const double dj = std::min(1.0, jitter_px / kJitterFullScale);
  return std::max({db, dn, dj});
}

Video synth_video(const SynthSpec& spec) {
  spec.validate();
  const std::vector<double> base = render_base_frame(spec);

  Video v;
  v.frames = Tensor4(spec.t, spec.h, spec.w, spec.c);
  v.id = spec.id;
  v.aesthetic_gt = spec.aesthetic_level;
  v.technical_gt = 1.0 - normalized_degradation(spec.blur_sigma,
                                                spec.noise_sigma, spec.jitter_px);
  for (int fr = 0; fr < spec.t; ++fr)
    for (int y = 0; y < spec.h; ++y)
      for (int x = 0; x < spec.w; ++x)
        fill_gray(v.frames, fr, y, x, base[static_cast<std::size_t>(y) * spec.w + x]);

  const Rng root(spec.seed);
  blur_frames(v.frames, spec.blur_sigma);
  add_noise(v.frames, spec.noise_sigma, root);
  jitter_frames(v.frames, spec.jitter_px, root);
  return v;
}

Video apply_degradation(const Video& v, Degradation kind, double level) {
  if (level < 0.0) throw InvalidArgument("apply_degradation: level must be >= 0");
  Video out = v;
  if (level == 0.0) return out;
  const Rng key(Rng::derive(Rng::hash_str(v.id), "degrade"));
  switch (kind) {
    case Degradation::blur:
      blur_frames(out.frames, level);
      break;
    case Degradation::noise:
      add_noise(out.frames, level, key);
      break;
    case Degradation::jitter:
      jitter_frames(out.frames, level * kJitterFullScale, key);
      break;
    case Degradation::blockiness:
      blockiness_frames(out.frames, level);
      break;
    default:
      throw InvalidArgument("apply_degradation: unknown kind");
  }
  return out;
}

// ---------------------------------------------------------------------------
// PNG + manifest I/O
// ---------------------------------------------------------------------------

namespace {

struct PngImage {
  int h = 0, w = 0, c = 0;
  std::vector<unsigned char> bytes;  // h*w*c, row-major
};

PngImage read_png(const std::filesystem::path& path) {
  std::FILE* fp = std::fopen(path.string().c_str(), "rb");
  if (!fp) throw IoError("undecodable frame (cannot open): " + path.string());
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw IoError("undecodable frame (libpng init): " + path.string());
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw IoError("undecodable frame: " + path.string());
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  png_set_strip_16(png);
  png_set_packing(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY &&
      png_get_bit_depth(png, info) < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  PngImage img;
  img.w = static_cast<int>(png_get_image_width(png, info));
  img.h = static_cast<int>(png_get_image_height(png, info));
  img.c = static_cast<int>(png_get_channels(png, info));
  img.bytes.resize(static_cast<std::size_t>(img.h) * img.w * img.c);
  std::vector<png_bytep> rows(img.h);
  for (int y = 0; y < img.h; ++y)
    rows[y] = img.bytes.data() + static_cast<std::size_t>(y) * img.w * img.c;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  return img;
}

void write_png(const std::filesystem::path& path, int h, int w, int c,
               const unsigned char* bytes) {
  std::FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (!fp) throw IoError("cannot write frame: " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw IoError("cannot write frame (libpng init): " + path.string());
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw IoError("cannot write frame: " + path.string());
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8,
               c == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_bytep> rows(h);
  for (int y = 0; y < h; ++y)
    rows[y] = const_cast<png_bytep>(bytes + static_cast<std::size_t>(y) * w * c);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace

Video load_video(const std::filesystem::path& dir) {
  const std::filesystem::path manifest_path = dir / "manifest.json";
  if (!std::filesystem::exists(manifest_path))
    throw IoError("no manifest: " + manifest_path.string());

  nlohmann::json m;
  try {
    std::ifstream in(manifest_path);
    in >> m;
  } catch (const std::exception& e) {
    throw IoError("unreadable manifest " + manifest_path.string() + ": " + e.what());
  }

  Video v;
  const int height = m.at("height").get<int>();
  const int width = m.at("width").get<int>();
  const int channels = m.at("channels").get<int>();
  v.fps = m.value("fps", 30.0);
  v.id = m.value("id", dir.filename().string());

  if (m.contains("raw")) {
    // Single planar uint8 file: layout [frame][channel][row][col].
    const std::filesystem::path raw = dir / m.at("raw").get<std::string>();
    const int t = m.at("frame_count").get<int>();
    std::ifstream in(raw, std::ios::binary);
    if (!in) throw IoError("missing raw file: " + raw.string());
    const std::size_t expect =
        static_cast<std::size_t>(t) * channels * height * width;
    std::vector<unsigned char> buf(expect);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(expect));
    if (static_cast<std::size_t>(in.gcount()) != expect)
      throw IoError("raw file size mismatch: " + raw.string());
    v.frames = Tensor4(t, height, width, channels);
    std::size_t i = 0;
    for (int fr = 0; fr < t; ++fr)
      for (int ch = 0; ch < channels; ++ch)
        for (int y = 0; y < height; ++y)
          for (int x = 0; x < width; ++x)
            v.frames.at(fr, y, x, ch) = buf[i++] / 255.0;
    v.validate();
    return v;
  }

  if (!m.contains("frames")) throw IoError("manifest lists no frames: " + manifest_path.string());
  const auto frame_names = m.at("frames").get<std::vector<std::string>>();
  if (frame_names.empty()) throw IoError("no frames: " + dir.string());

  v.frames = Tensor4(static_cast<int>(frame_names.size()), height, width, channels);
  for (std::size_t fr = 0; fr < frame_names.size(); ++fr) {
    const std::filesystem::path fp = dir / frame_names[fr];
    if (!std::filesystem::exists(fp))
      throw IoError("frame count mismatch: manifest lists " +
                    std::to_string(frame_names.size()) + " frames but " +
                    fp.string() + " is missing");
    const PngImage img = read_png(fp);
    if (img.h != height || img.w != width || img.c != channels)
      throw IoError("frame dimension mismatch: " + fp.string());
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        for (int ch = 0; ch < channels; ++ch)
          v.frames.at(static_cast<int>(fr), y, x, ch) =
              img.bytes[(static_cast<std::size_t>(y) * width + x) * channels + ch] / 255.0;
  }
  v.validate();
  return v;
}

void save_video(const Video& v, const std::filesystem::path& dir) {
  v.validate();
  std::filesystem::create_directories(dir);
  std::vector<std::string> names;
  names.reserve(v.t());
  std::vector<unsigned char> bytes(static_cast<std::size_t>(v.h()) * v.w() * v.c());
  for (int fr = 0; fr < v.t(); ++fr) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04d.png", fr);
    names.emplace_back(name);
    for (int y = 0; y < v.h(); ++y)
      for (int x = 0; x < v.w(); ++x)
        for (int ch = 0; ch < v.c(); ++ch)
          bytes[(static_cast<std::size_t>(y) * v.w() + x) * v.c() + ch] =
              static_cast<unsigned char>(std::lround(v.frames.at(fr, y, x, ch) * 255.0));
    write_png(dir / name, v.h(), v.w(), v.c(), bytes.data());
  }
  nlohmann::json m{{"id", v.id},         {"fps", v.fps},
                   {"frames", names},    {"height", v.h()},
                   {"width", v.w()},     {"channels", v.c()}};
  std::ofstream out(dir / "manifest.json");
  out << m.dump(2) << "\n";
  if (!out) throw IoError("cannot write manifest: " + (dir / "manifest.json").string());
}

}  // namespace dover
