#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "mapseg/image_model.hpp"

namespace mapseg {

/// Any failure reading or writing an image file, including malformed or
/// unsupported content.
class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses binary PPM (P6, maxval 255).
RgbImage parse_ppm(std::span<const std::uint8_t> bytes);
/// Parses binary PGM (P5, maxval 255) into a grey image (r = g = b).
RgbImage parse_pgm(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize_ppm(const RgbImage& img);
/// P5 bytes, fore = 255 and back = 0.
std::vector<std::uint8_t> serialize_mask_pgm(const LabelField& labels);

/// Reads P6 or PNG (8-bit, alpha ignored), chosen by the file signature.
RgbImage decode_image(const std::filesystem::path& path);

/// Writes PNG for a `.png` extension, otherwise P6.
void encode_image(const RgbImage& img, const std::filesystem::path& path);

/// Writes the label field as a grey mask: PNG for a `.png` extension,
/// otherwise P5.
void encode_mask(const LabelField& labels, const std::filesystem::path& path);

/// Reads a mask written by `encode_mask`: grey values >= 128 are fore.
LabelField decode_mask(const std::filesystem::path& path);

/// Fore pixels keep their colour, back pixels are scaled to 30 %, and any
/// pixel with a four-neighbour of the other label is painted (255, 0, 0).
RgbImage make_overlay(const RgbImage& img, const LabelField& labels);

void encode_overlay(const RgbImage& img, const LabelField& labels,
                    const std::filesystem::path& path);

}  // namespace mapseg
