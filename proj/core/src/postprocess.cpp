#include "qhardy/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace qhardy {

std::size_t EdgeMap::count() const {
    return static_cast<std::size_t>(std::count(data.begin(), data.end(), std::uint8_t{1}));
}

ScalarField EdgeMap::to_field() const {
    ScalarField out(height, width);
    for (std::size_t i = 0; i < data.size(); ++i) out.values()[i] = data[i] ? 255.0 : 0.0;
    return out;
}

double bilinear(const ScalarField& f, double row, double col) {
    row = std::clamp(row, 0.0, static_cast<double>(f.height() - 1));
    col = std::clamp(col, 0.0, static_cast<double>(f.width() - 1));
    const int r0 = static_cast<int>(std::floor(row));
    const int c0 = static_cast<int>(std::floor(col));
    const int r1 = std::min(r0 + 1, f.height() - 1);
    const int c1 = std::min(c0 + 1, f.width() - 1);
    const double fr = row - r0;
    const double fc = col - c0;
    const double top = (1.0 - fc) * f.at(r0, c0) + fc * f.at(r0, c1);
    const double bottom = (1.0 - fc) * f.at(r1, c0) + fc * f.at(r1, c1);
    return (1.0 - fr) * top + fr * bottom;
}

ScalarField non_max_suppress(const ScalarField& magnitude, const ScalarField& orientation,
                             double radius) {
    if (!(radius >= 1.0)) throw std::invalid_argument("non_max_suppress: radius must be >= 1");
    require_same_shape(magnitude, orientation, "non_max_suppress");
    ScalarField out(magnitude.height(), magnitude.width(), magnitude.spacing());
    for (int r = 0; r < magnitude.height(); ++r) {
        for (int c = 0; c < magnitude.width(); ++c) {
            const double m = magnitude.at(r, c);
            if (!(m > 0.0)) continue;
            const double th = orientation.at(r, c);
            // g1 runs along columns (t1), g2 along rows (t2).
            const double dc = radius * std::cos(th);
            const double dr = radius * std::sin(th);
            const double a = bilinear(magnitude, r + dr, c + dc);
            const double b = bilinear(magnitude, r - dr, c - dc);
            const double tol = 1e-12 * m;
            if (m > a + tol && m > b + tol) out.at(r, c) = m;
        }
    }
    return out;
}

ScalarField non_max_suppress(const GradientMap& gm, double radius) {
    return non_max_suppress(gm.magnitude, gm.orientation, radius);
}

EdgeMap hysteresis(const ScalarField& nms, double low, double high) {
    if (!(low >= 0.0) || !(high >= low)) {
        throw std::invalid_argument("hysteresis: thresholds must satisfy 0 <= low <= high");
    }
    EdgeMap edges(nms.height(), nms.width());
    std::deque<std::pair<int, int>> frontier;
    for (int r = 0; r < nms.height(); ++r) {
        for (int c = 0; c < nms.width(); ++c) {
            if (nms.at(r, c) >= high && nms.at(r, c) > 0.0) {
                edges.at(r, c) = 1;
                frontier.emplace_back(r, c);
            }
        }
    }
    while (!frontier.empty()) {
        const auto [r, c] = frontier.front();
        frontier.pop_front();
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                const int rr = r + dr;
                const int cc = c + dc;
                if (rr < 0 || cc < 0 || rr >= nms.height() || cc >= nms.width()) continue;
                if (edges.at(rr, cc) || !(nms.at(rr, cc) >= low) || !(nms.at(rr, cc) > 0.0)) continue;
                edges.at(rr, cc) = 1;
                frontier.emplace_back(rr, cc);
            }
        }
    }
    return edges;
}

ScalarField normalize_to_100(const ScalarField& f) {
    ScalarField out = f;
    const double peak = f.max_abs();
    if (peak > 0.0) out *= 100.0 / peak;
    return out;
}

}  // namespace qhardy
