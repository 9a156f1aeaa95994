/**
 * @file fixtures.hpp
 * @brief Synthetic images shared by the CLI, tests and benchmarks
 */

#pragma once

#include "qhardy/postprocess.hpp"
#include "qhardy/scalar_field.hpp"

#include <cstdint>
#include <string>

namespace qhardy::cli {

/// 64 x 64: 0 for col < 32, 255 for col >= 32.
ScalarField step_fixture(int size = 64);
/// Edge pixels of step_fixture: column size / 2.
EdgeMap step_ground_truth(int size = 64);

/// 64 x 64: 255 on rows/cols [size/4, 3 size/4), 0 elsewhere.
ScalarField square_fixture(int size = 64);
/// Square pixels on the boundary ring.
EdgeMap square_ground_truth(int size = 64);

/// 255 exp(-|t - c|^2 / (2 sigma^2)) over a 64 x 64 physical domain sampled at `spacing`,
/// centre (31.7, 32.3) off the grid.
ScalarField gaussian_blob(double spacing = 1.0, double sigma = 8.0);

/// Uniform [0, 255] noise field from RandomStream(seed).
ScalarField random_field(int height, int width, std::uint64_t seed);

/// By name: step, square, blob. Throws std::invalid_argument otherwise.
ScalarField fixture_by_name(const std::string& name);

struct LocalizationReport {
    std::size_t edge_pixels = 0;
    std::size_t far_edges = 0;        ///< edge pixels with no ground-truth pixel within 1 px
    std::size_t missed_truth = 0;     ///< ground-truth pixels with no edge pixel within 1 px
    bool ok() const { return edge_pixels > 0 && far_edges == 0 && missed_truth == 0; }
};

/// Chebyshev-distance-1 agreement between an edge map and a ground-truth map.
LocalizationReport localization(const EdgeMap& edges, const EdgeMap& truth);

}  // namespace qhardy::cli
