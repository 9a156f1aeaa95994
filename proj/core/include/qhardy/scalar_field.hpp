/**
 * @file scalar_field.hpp
 * @brief Real-valued H x W grid with a uniform grid spacing
 *
 * Axis convention used throughout the library: t1 runs along columns
 * (x, index in [0, width)), t2 runs along rows (y, index in [0, height)).
 * Storage is row-major: value(row, col) = data[row * width + col].
 */

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qhardy {

class ScalarField {
public:
    ScalarField() = default;
    /// Zero-filled field. Throws std::invalid_argument on negative sizes or spacing <= 0.
    ScalarField(int height, int width, double spacing = 1.0);
    ScalarField(int height, int width, std::vector<double> data, double spacing = 1.0);

    /// Field with value fn(t1, t2) at each sample, t = index * spacing.
    static ScalarField from_function(int height, int width, double spacing,
                                     const std::function<double(double, double)>& fn);

    int height() const { return height_; }
    int width() const { return width_; }
    double spacing() const { return spacing_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& at(int row, int col) { return data_[static_cast<std::size_t>(row) * width_ + col]; }
    double at(int row, int col) const { return data_[static_cast<std::size_t>(row) * width_ + col]; }

    /// Replicate (clamp-to-edge) access.
    double clamped(int row, int col) const;

    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const ScalarField& other) const {
        return height_ == other.height_ && width_ == other.width_;
    }

    double max_value() const;
    double min_value() const;
    double max_abs() const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s);
    ScalarField& operator+=(double c);

    /// 90 degree counter-clockwise rotation in the (t1, t2) image plane
    /// as displayed (rows downward): out(row, col) = in(col, W-1-row).
    ScalarField rotated90() const;
    ScalarField transposed() const;

private:
    int height_ = 0;
    int width_ = 0;
    double spacing_ = 1.0;
    std::vector<double> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(double s, ScalarField a);

/// Throws std::invalid_argument when the two fields differ in shape.
void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what);

/// Max |a - b| over pixels at least `margin` samples from every border.
double interior_max_abs_diff(const ScalarField& a, const ScalarField& b, int margin);
/// Max |a| over pixels at least `margin` samples from every border.
double interior_max_abs(const ScalarField& a, int margin);

/// Central difference along t1 (columns), one-sided at the borders, divided by spacing.
ScalarField diff_t1(const ScalarField& f);
/// Central difference along t2 (rows), one-sided at the borders, divided by spacing.
ScalarField diff_t2(const ScalarField& f);

}  // namespace qhardy
