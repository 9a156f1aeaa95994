#include "qhardy/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qhardy {

ScalarField::ScalarField(int height, int width, double spacing)
    : height_(height), width_(width), spacing_(spacing) {
    if (height < 0 || width < 0) {
        throw std::invalid_argument("ScalarField: negative dimensions");
    }
    if (!(spacing > 0.0)) {
        throw std::invalid_argument("ScalarField: spacing must be positive");
    }
    data_.assign(static_cast<std::size_t>(height) * width, 0.0);
}

ScalarField::ScalarField(int height, int width, std::vector<double> data, double spacing)
    : ScalarField(height, width, spacing) {
    if (data.size() != data_.size()) {
        throw std::invalid_argument("ScalarField: data length " + std::to_string(data.size()) +
                                    " != height*width " + std::to_string(data_.size()));
    }
    data_ = std::move(data);
}

ScalarField ScalarField::from_function(int height, int width, double spacing,
                                       const std::function<double(double, double)>& fn) {
    ScalarField f(height, width, spacing);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            f.at(r, c) = fn(c * spacing, r * spacing);
        }
    }
    return f;
}

double ScalarField::clamped(int row, int col) const {
    row = std::clamp(row, 0, height_ - 1);
    col = std::clamp(col, 0, width_ - 1);
    return at(row, col);
}

double ScalarField::max_value() const {
    return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

double ScalarField::min_value() const {
    return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

ScalarField& ScalarField::operator+=(double c) {
    for (double& v : data_) v += c;
    return *this;
}

ScalarField ScalarField::rotated90() const {
    ScalarField out(width_, height_, spacing_);
    for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < out.width(); ++c) {
            out.at(r, c) = at(c, width_ - 1 - r);
        }
    }
    return out;
}

ScalarField ScalarField::transposed() const {
    ScalarField out(width_, height_, spacing_);
    for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < out.width(); ++c) {
            out.at(r, c) = at(c, r);
        }
    }
    return out;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a.height()) + "x" + std::to_string(a.width()) +
                                    " vs " + std::to_string(b.height()) + "x" +
                                    std::to_string(b.width()) + ")");
    }
}

double interior_max_abs_diff(const ScalarField& a, const ScalarField& b, int margin) {
    require_same_shape(a, b, "interior_max_abs_diff");
    double m = 0.0;
    for (int r = margin; r < a.height() - margin; ++r) {
        for (int c = margin; c < a.width() - margin; ++c) {
            m = std::max(m, std::abs(a.at(r, c) - b.at(r, c)));
        }
    }
    return m;
}

double interior_max_abs(const ScalarField& a, int margin) {
    double m = 0.0;
    for (int r = margin; r < a.height() - margin; ++r) {
        for (int c = margin; c < a.width() - margin; ++c) {
            m = std::max(m, std::abs(a.at(r, c)));
        }
    }
    return m;
}

ScalarField diff_t1(const ScalarField& f) {
    ScalarField out(f.height(), f.width(), f.spacing());
    const int w = f.width();
    if (w < 2) return out;
    const double h = f.spacing();
    for (int r = 0; r < f.height(); ++r) {
        out.at(r, 0) = (f.at(r, 1) - f.at(r, 0)) / h;
        for (int c = 1; c < w - 1; ++c) {
            out.at(r, c) = (f.at(r, c + 1) - f.at(r, c - 1)) / (2.0 * h);
        }
        out.at(r, w - 1) = (f.at(r, w - 1) - f.at(r, w - 2)) / h;
    }
    return out;
}

ScalarField diff_t2(const ScalarField& f) {
    ScalarField out(f.height(), f.width(), f.spacing());
    const int ht = f.height();
    if (ht < 2) return out;
    const double h = f.spacing();
    for (int c = 0; c < f.width(); ++c) {
        out.at(0, c) = (f.at(1, c) - f.at(0, c)) / h;
        out.at(ht - 1, c) = (f.at(ht - 1, c) - f.at(ht - 2, c)) / h;
    }
    for (int r = 1; r < ht - 1; ++r) {
        for (int c = 0; c < f.width(); ++c) {
            out.at(r, c) = (f.at(r + 1, c) - f.at(r - 1, c)) / (2.0 * h);
        }
    }
    return out;
}

}  // namespace qhardy
