#include "llenhance/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

namespace llenhance {

namespace {

namespace fs = std::filesystem;

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::vector<unsigned char> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "unreadable file: cannot open " + path.string());
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(ErrorKind::Io, "unreadable file: read error on " + path.string());
  }
  return bytes;
}

AnyImage from_interleaved(int width, int height, int channels, const unsigned char* px) {
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (channels == 1) {
    std::vector<double> data(n);
    for (std::size_t i = 0; i < n; ++i) data[i] = px[i];
    return GrayImage(width, height, std::move(data));
  }
  std::vector<double> r(n), g(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = px[3 * i];
    g[i] = px[3 * i + 1];
    b[i] = px[3 * i + 2];
  }
  return RgbImage(GrayImage(width, height, std::move(r)), GrayImage(width, height, std::move(g)),
                  GrayImage(width, height, std::move(b)));
}

// --- PNG -----------------------------------------------------------------

AnyImage decode_png(const std::vector<unsigned char>& bytes, const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorKind::Io, "unreadable file: " + path.string() + ": " + msg);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw Error(ErrorKind::Format, "unsupported format: 16-bit PNG " + path.string());
  }
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw Error(ErrorKind::Dimension, "zero-dimension image: " + path.string());
  }
  const bool gray = (image.format & PNG_FORMAT_FLAG_COLOR) == 0;
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  const int channels = gray ? 1 : 3;
  std::vector<unsigned char> px(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, px.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorKind::Io, "unreadable file: " + path.string() + ": " + msg);
  }
  return from_interleaved(static_cast<int>(image.width), static_cast<int>(image.height), channels,
                          px.data());
}

void encode_png(const fs::path& path, int width, int height, int channels,
                const std::vector<unsigned char>& px) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, px.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorKind::Io, "unwritable path: " + path.string() + ": " + msg);
  }
}

// --- PNM -----------------------------------------------------------------

class PnmHeaderReader {
 public:
  PnmHeaderReader(const std::vector<unsigned char>& bytes, const fs::path& path)
      : bytes_(bytes), path_(path) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorKind::Io, "unreadable file: malformed PNM header in " + path_.string());
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > (1L << 30)) {
        throw Error(ErrorKind::Io, "unreadable file: PNM header value too large");
      }
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorKind::Io, "unreadable file: malformed PNM header in " + path_.string());
    }
    return pos_ + 1;
  }

  void seek(std::size_t pos) { pos_ = pos; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

AnyImage decode_pnm(const std::vector<unsigned char>& bytes, const fs::path& path) {
  const int channels = bytes[1] == '5' ? 1 : 3;
  PnmHeaderReader reader(bytes, path);
  reader.seek(2);
  const long width = reader.next_int();
  const long height = reader.next_int();
  const long maxval = reader.next_int();
  if (width == 0 || height == 0) {
    throw Error(ErrorKind::Dimension, "zero-dimension image: " + path.string());
  }
  if (maxval != 255) {
    throw Error(ErrorKind::Format,
                "unsupported format: PNM maxval " + std::to_string(maxval) + " (only 255)");
  }
  const std::size_t offset = reader.raster_offset();
  const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                           static_cast<std::size_t>(channels);
  if (bytes.size() < offset + need) {
    throw Error(ErrorKind::Io, "unreadable file: truncated raster in " + path.string());
  }
  return from_interleaved(static_cast<int>(width), static_cast<int>(height), channels,
                          bytes.data() + offset);
}

void encode_pnm(const fs::path& path, int width, int height, int channels,
                const std::vector<unsigned char>& px) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::Io, "unwritable path: " + path.string());
  }
  out << (channels == 1 ? "P5" : "P6") << '\n' << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (!out) {
    throw Error(ErrorKind::Io, "unwritable path: write failed on " + path.string());
  }
}

enum class OutFormat { Png, Pgm, Ppm };

OutFormat format_for(const fs::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") return OutFormat::Png;
  if (ext == ".pgm") return OutFormat::Pgm;
  if (ext == ".ppm" || ext == ".pnm") return OutFormat::Ppm;
  throw Error(ErrorKind::Format, "unsupported extension '" + ext + "' for " + path.string());
}

void write_bytes(const fs::path& path, OutFormat fmt, int width, int height, int channels,
                 const std::vector<unsigned char>& px) {
  if (fmt == OutFormat::Png) {
    encode_png(path, width, height, channels, px);
  } else {
    encode_pnm(path, width, height, channels, px);
  }
}

}  // namespace

unsigned char to_byte(double v, const IntensityRange& range) {
  double c = range.clamp(v);
  if (!range.is_standard()) {
    c = (c - range.r_min) / (range.r_max - range.r_min) * 255.0;
  }
  return static_cast<unsigned char>(std::clamp(std::round(c), 0.0, 255.0));
}

AnyImage load_image(const fs::path& path) {
  const std::vector<unsigned char> bytes = read_file(path);
  static constexpr std::array<unsigned char, 8> kPngSignature = {0x89, 'P', 'N', 'G',
                                                                 '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= kPngSignature.size() &&
      std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
    return decode_png(bytes, path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
    return decode_pnm(bytes, path);
  }
  if (bytes.empty()) {
    throw Error(ErrorKind::Io, "unreadable file: " + path.string() + " is empty");
  }
  throw Error(ErrorKind::Format, "unsupported format: " + path.string());
}

void save_image(const GrayImage& img, const fs::path& path, const IntensityRange& range) {
  range.validate();
  const OutFormat fmt = format_for(path);
  const auto data = img.data();
  const int channels = fmt == OutFormat::Ppm ? 3 : 1;
  std::vector<unsigned char> px(data.size() * static_cast<std::size_t>(channels));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const unsigned char b = to_byte(data[i], range);
    for (int c = 0; c < channels; ++c) px[i * channels + c] = b;
  }
  write_bytes(path, fmt, img.width(), img.height(), channels, px);
}

void save_image(const RgbImage& img, const fs::path& path, const IntensityRange& range) {
  range.validate();
  const OutFormat fmt = format_for(path);
  if (fmt == OutFormat::Pgm) {
    throw Error(ErrorKind::Format, "unsupported extension: cannot store an RGB image as PGM");
  }
  const auto r = img.red().data();
  const auto g = img.green().data();
  const auto b = img.blue().data();
  std::vector<unsigned char> px(r.size() * 3);
  for (std::size_t i = 0; i < r.size(); ++i) {
    px[3 * i] = to_byte(r[i], range);
    px[3 * i + 1] = to_byte(g[i], range);
    px[3 * i + 2] = to_byte(b[i], range);
  }
  write_bytes(path, fmt, img.width(), img.height(), 3, px);
}

void save_image(const AnyImage& img, const fs::path& path, const IntensityRange& range) {
  std::visit([&](const auto& im) { save_image(im, path, range); }, img);
}

GrayImage quantize(const GrayImage& img, const IntensityRange& range) {
  range.validate();
  GrayImage out = img;
  for (double& v : out.data()) v = std::round(range.clamp(v));
  return out;
}

RgbImage quantize(const RgbImage& img, const IntensityRange& range) {
  return RgbImage(quantize(img.red(), range), quantize(img.green(), range),
                  quantize(img.blue(), range));
}

}  // namespace llenhance
