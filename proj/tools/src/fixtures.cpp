#include "qhardy_cli/fixtures.hpp"

#include "qhardy/random.hpp"

#include <cmath>
#include <stdexcept>

namespace qhardy::cli {

namespace {

bool any_within_one(const EdgeMap& map, int r, int c) {
    for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
            const int rr = r + dr;
            const int cc = c + dc;
            if (rr >= 0 && cc >= 0 && rr < map.height && cc < map.width && map.at(rr, cc)) return true;
        }
    }
    return false;
}

}  // namespace

ScalarField step_fixture(int size) {
    ScalarField img(size, size);
    for (int r = 0; r < size; ++r) {
        for (int c = size / 2; c < size; ++c) img.at(r, c) = 255.0;
    }
    return img;
}

EdgeMap step_ground_truth(int size) {
    EdgeMap gt(size, size);
    for (int r = 0; r < size; ++r) gt.at(r, size / 2) = 1;
    return gt;
}

ScalarField square_fixture(int size) {
    ScalarField img(size, size);
    for (int r = size / 4; r < 3 * size / 4; ++r) {
        for (int c = size / 4; c < 3 * size / 4; ++c) img.at(r, c) = 255.0;
    }
    return img;
}

EdgeMap square_ground_truth(int size) {
    EdgeMap gt(size, size);
    const int lo = size / 4;
    const int hi = 3 * size / 4 - 1;
    for (int r = lo; r <= hi; ++r) {
        for (int c = lo; c <= hi; ++c) {
            if (r == lo || r == hi || c == lo || c == hi) gt.at(r, c) = 1;
        }
    }
    return gt;
}

ScalarField gaussian_blob(double spacing, double sigma) {
    const int n = static_cast<int>(std::lround(64.0 / spacing));
    return ScalarField::from_function(n, n, spacing, [sigma](double t1, double t2) {
        const double d1 = t1 - 31.7;
        const double d2 = t2 - 32.3;
        return 255.0 * std::exp(-(d1 * d1 + d2 * d2) / (2.0 * sigma * sigma));
    });
}

ScalarField random_field(int height, int width, std::uint64_t seed) {
    RandomStream rng(seed);
    ScalarField out(height, width);
    for (double& v : out.values()) v = 255.0 * rng.uniform();
    return out;
}

ScalarField fixture_by_name(const std::string& name) {
    if (name == "step") return step_fixture();
    if (name == "square") return square_fixture();
    if (name == "blob") return gaussian_blob();
    throw std::invalid_argument("unknown fixture '" + name + "' (expected step|square|blob)");
}

LocalizationReport localization(const EdgeMap& edges, const EdgeMap& truth) {
    if (edges.height != truth.height || edges.width != truth.width) {
        throw std::invalid_argument("localization: shape mismatch");
    }
    LocalizationReport rep;
    for (int r = 0; r < edges.height; ++r) {
        for (int c = 0; c < edges.width; ++c) {
            if (edges.at(r, c)) {
                ++rep.edge_pixels;
                if (!any_within_one(truth, r, c)) ++rep.far_edges;
            }
            if (truth.at(r, c) && !any_within_one(edges, r, c)) ++rep.missed_truth;
        }
    }
    return rep;
}

}  // namespace qhardy::cli
