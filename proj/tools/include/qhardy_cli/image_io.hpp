/**
 * @file image_io.hpp
 * @brief 8-bit grayscale image files: binary PGM (P5) and PNG
 */

#pragma once

#include "qhardy/scalar_field.hpp"

#include <stdexcept>
#include <string>

namespace qhardy::cli {

/// Unreadable, truncated or unsupported image file. The message names the path.
class ImageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Loads P5 PGM (maxval <= 65535, rescaled to [0, 255]) or PNG. Colour PNGs are converted
/// with BT.601 luma 0.299 R + 0.587 G + 0.114 B; alpha is dropped.
ScalarField load_image(const std::string& path);

/// Writes an 8-bit grayscale PGM or PNG, chosen by extension (.pgm / .png).
/// Values are clamped to [0, 255] and rounded half to even.
void save_image(const ScalarField& field, const std::string& path);

/// Clamp to [0, 255] and round half to even.
unsigned char to_byte(double v);

}  // namespace qhardy::cli
