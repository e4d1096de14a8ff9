#include "mapseg/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace mapseg {

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

struct NetpbmHeader {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t maxval = 0;
  std::size_t raster_offset = 0;
};

class HeaderReader {
 public:
  HeaderReader(std::span<const std::uint8_t> bytes, const char* format)
      : bytes_(bytes), format_(format) {}

  void skip_whitespace_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t read_number(const char* field) {
    skip_whitespace_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw ImageIoError(std::string(format_) + " header: missing or invalid " + field);
    }
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (1U << 24)) {
        throw ImageIoError(std::string(format_) + " header: " + field + " is too large");
      }
      ++pos_;
    }
    return value;
  }

  void expect_single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw ImageIoError(std::string(format_) +
                         " header: expected one whitespace byte after maxval");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t k) { pos_ += k; }

 private:
  std::span<const std::uint8_t> bytes_;
  const char* format_;
  std::size_t pos_ = 0;
};

NetpbmHeader parse_header(std::span<const std::uint8_t> bytes, char kind, const char* format,
                          std::size_t channels) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != static_cast<std::uint8_t>(kind)) {
    throw ImageIoError(std::string(format) + ": bad magic number, expected P" + kind);
  }
  HeaderReader r(bytes, format);
  r.advance(2);
  NetpbmHeader h;
  h.width = r.read_number("width");
  h.height = r.read_number("height");
  h.maxval = r.read_number("maxval");
  if (h.width == 0 || h.height == 0) {
    throw ImageIoError(std::string(format) + " header: width and height must be positive");
  }
  if (h.maxval != 255) {
    throw ImageIoError(std::string(format) + " header: unsupported maxval " +
                       std::to_string(h.maxval) + " (only 8-bit maxval 255 is supported)");
  }
  r.expect_single_whitespace();
  h.raster_offset = r.pos();

  const std::size_t expected = h.width * h.height * channels;
  const std::size_t actual = bytes.size() - h.raster_offset;
  if (actual < expected) {
    throw ImageIoError(std::string(format) + " body truncated: expected " +
                       std::to_string(expected) + " bytes, got " + std::to_string(actual));
  }
  return h;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open " + path.string() + " for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw ImageIoError("error reading " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ImageIoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageIoError("error writing " + path.string());
}

bool has_png_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png";
}

bool is_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= sizeof kPngSignature &&
         std::memcmp(bytes.data(), kPngSignature, sizeof kPngSignature) == 0;
}

RgbImage decode_png(std::span<const std::uint8_t> bytes, const std::string& name) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw ImageIoError("PNG " + name + ": " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw ImageIoError("PNG " + name + ": unsupported bit depth 16 (only 8-bit is supported)");
  }
  image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr)) {
    throw ImageIoError("PNG " + name + ": " + image.message);
  }
  std::vector<Rgb> px(static_cast<std::size_t>(image.width) * image.height);
  for (std::size_t k = 0; k < px.size(); ++k) {
    px[k] = Rgb{rgba[4 * k], rgba[4 * k + 1], rgba[4 * k + 2]};
  }
  return RgbImage(image.width, image.height, std::move(px));
}

void write_png(const std::filesystem::path& path, std::size_t width, std::size_t height,
               std::uint32_t format, const std::uint8_t* data) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr)) {
    throw ImageIoError("cannot write PNG " + path.string() + ": " + image.message);
  }
}

std::vector<std::uint8_t> mask_bytes(const LabelField& labels) {
  std::vector<std::uint8_t> grey(labels.size());
  for (std::size_t k = 0; k < grey.size(); ++k) grey[k] = labels[k] == Label::fore ? 255 : 0;
  return grey;
}

}  // namespace

RgbImage parse_ppm(std::span<const std::uint8_t> bytes) {
  const NetpbmHeader h = parse_header(bytes, '6', "PPM", 3);
  std::vector<Rgb> px(h.width * h.height);
  const std::uint8_t* raster = bytes.data() + h.raster_offset;
  for (std::size_t k = 0; k < px.size(); ++k) {
    px[k] = Rgb{raster[3 * k], raster[3 * k + 1], raster[3 * k + 2]};
  }
  return RgbImage(h.width, h.height, std::move(px));
}

RgbImage parse_pgm(std::span<const std::uint8_t> bytes) {
  const NetpbmHeader h = parse_header(bytes, '5', "PGM", 1);
  std::vector<Rgb> px(h.width * h.height);
  const std::uint8_t* raster = bytes.data() + h.raster_offset;
  for (std::size_t k = 0; k < px.size(); ++k) px[k] = Rgb{raster[k], raster[k], raster[k]};
  return RgbImage(h.width, h.height, std::move(px));
}

std::vector<std::uint8_t> serialize_ppm(const RgbImage& img) {
  const std::string header =
      "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + 3 * img.size());
  for (const Rgb& c : img.pixels()) {
    out.push_back(c.r);
    out.push_back(c.g);
    out.push_back(c.b);
  }
  return out;
}

std::vector<std::uint8_t> serialize_mask_pgm(const LabelField& labels) {
  const std::string header =
      "P5\n" + std::to_string(labels.width()) + " " + std::to_string(labels.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const std::vector<std::uint8_t> grey = mask_bytes(labels);
  out.insert(out.end(), grey.begin(), grey.end());
  return out;
}

RgbImage decode_image(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  if (is_png(bytes)) return decode_png(bytes, path.string());
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') return parse_ppm(bytes);
  throw ImageIoError(path.string() + ": unrecognised image format (expected P6 PPM or PNG)");
}

void encode_image(const RgbImage& img, const std::filesystem::path& path) {
  if (has_png_extension(path)) {
    std::vector<std::uint8_t> rgb;
    rgb.reserve(3 * img.size());
    for (const Rgb& c : img.pixels()) {
      rgb.push_back(c.r);
      rgb.push_back(c.g);
      rgb.push_back(c.b);
    }
    write_png(path, img.width(), img.height(), PNG_FORMAT_RGB, rgb.data());
    return;
  }
  write_file(path, serialize_ppm(img));
}

void encode_mask(const LabelField& labels, const std::filesystem::path& path) {
  if (has_png_extension(path)) {
    const std::vector<std::uint8_t> grey = mask_bytes(labels);
    write_png(path, labels.width(), labels.height(), PNG_FORMAT_GRAY, grey.data());
    return;
  }
  write_file(path, serialize_mask_pgm(labels));
}

LabelField decode_mask(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  const RgbImage grey = is_png(bytes) ? decode_png(bytes, path.string()) : parse_pgm(bytes);
  std::vector<Label> labels(grey.size());
  for (std::size_t k = 0; k < labels.size(); ++k) {
    labels[k] = grey[k].r >= 128 ? Label::fore : Label::back;
  }
  return LabelField(grey.width(), grey.height(), std::move(labels));
}

RgbImage make_overlay(const RgbImage& img, const LabelField& labels) {
  if (img.width() != labels.width() || img.height() != labels.height()) {
    throw std::invalid_argument("make_overlay: image and labels differ in size");
  }
  const auto darken = [](std::uint8_t c) {
    return static_cast<std::uint8_t>((static_cast<unsigned>(c) * 3 + 5) / 10);
  };
  std::vector<Rgb> px(img.pixels().begin(), img.pixels().end());
  for (std::size_t k = 0; k < px.size(); ++k) {
    if (labels[k] == Label::back) px[k] = Rgb{darken(px[k].r), darken(px[k].g), darken(px[k].b)};
  }
  const Adjacency four{Connectivity::four};
  std::vector<bool> boundary(px.size(), false);
  four.for_each_edge(img.width(), img.height(), [&](std::size_t p, std::size_t q) {
    if (labels[p] != labels[q]) boundary[p] = boundary[q] = true;
  });
  for (std::size_t k = 0; k < px.size(); ++k) {
    if (boundary[k]) px[k] = Rgb{255, 0, 0};
  }
  return RgbImage(img.width(), img.height(), std::move(px));
}

void encode_overlay(const RgbImage& img, const LabelField& labels,
                    const std::filesystem::path& path) {
  encode_image(make_overlay(img, labels), path);
}

}  // namespace mapseg
