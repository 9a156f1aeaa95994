/**
 * @file postprocess.hpp
 * @brief Non-maximum suppression and hysteresis thresholding of gradient maps
 */

#pragma once

#include "qhardy/detectors.hpp"

#include <cstdint>
#include <vector>

namespace qhardy {

struct EdgeMap {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> data;  ///< 0 = background, 1 = edge

    EdgeMap() = default;
    EdgeMap(int h, int w) : height(h), width(w), data(static_cast<std::size_t>(h) * w, 0) {}

    std::uint8_t& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
    std::uint8_t at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }
    std::size_t count() const;

    /// {0, 255} grayscale rendering.
    ScalarField to_field() const;

    bool operator==(const EdgeMap&) const = default;
};

/// Bilinear sample of `f` at fractional (row, col), coordinates clamped to the grid.
double bilinear(const ScalarField& f, double row, double col);

/// Keeps a pixel's magnitude only if it is strictly greater (relative tie tolerance 1e-12)
/// than the bilinear magnitudes at +-radius along its gradient orientation.
/// Throws std::invalid_argument for radius < 1.
ScalarField non_max_suppress(const GradientMap& gm, double radius = 1.5);
/// Same, with an explicit magnitude field and orientation field.
ScalarField non_max_suppress(const ScalarField& magnitude, const ScalarField& orientation,
                             double radius = 1.5);

/// Pixels >= high seed edges; pixels >= low 8-connected to a seed join them.
/// Throws std::invalid_argument unless 0 <= low <= high.
EdgeMap hysteresis(const ScalarField& nms, double low, double high);

/// Linear rescale so the maximum becomes 100 (all-zero fields stay zero).
ScalarField normalize_to_100(const ScalarField& f);

}  // namespace qhardy
