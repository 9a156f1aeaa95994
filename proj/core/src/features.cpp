#include "qhardy/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qhardy {

namespace {

struct PixelFrame {
    double r;
    double m[3];
};

PixelFrame pixel(const HardyFrame& f, std::size_t idx) {
    return {f.r.values()[idx], {f.m1.values()[idx], f.m2.values()[idx], f.m3.values()[idx]}};
}

const ScalarField& component(const HardyFrame& f, int k) {
    switch (k) {
        case 1: return f.m1;
        case 2: return f.m2;
        case 3: return f.m3;
        default: throw std::out_of_range("component index must be 1, 2 or 3");
    }
}

Quaternion as_quaternion(const PixelFrame& p) { return {p.r, p.m[0], p.m[1], p.m[2]}; }

ResidualChannel make_channel(ScalarField field, int margin, const std::vector<char>& valid) {
    ResidualChannel ch;
    double m = 0.0;
    for (int r = margin; r < field.height() - margin; ++r) {
        for (int c = margin; c < field.width() - margin; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * field.width() + c;
            if (valid[idx]) m = std::max(m, std::abs(field.values()[idx]));
        }
    }
    ch.field = std::move(field);
    ch.max_interior = m;
    return ch;
}

// Unit direction n = m/|m| and its derivative along one variable (quotient rule).
struct Direction {
    Quaternion n;
    Quaternion dn;
    double mag;
    double dmag;
};

Direction direction(const PixelFrame& p, const PixelFrame& d) {
    const double mag = std::sqrt(p.m[0] * p.m[0] + p.m[1] * p.m[1] + p.m[2] * p.m[2]);
    const double dmag = (p.m[0] * d.m[0] + p.m[1] * d.m[1] + p.m[2] * d.m[2]) / mag;
    Direction out{};
    out.mag = mag;
    out.dmag = dmag;
    out.n = Quaternion::pure(p.m[0] / mag, p.m[1] / mag, p.m[2] / mag);
    const double inv2 = 1.0 / (mag * mag);
    out.dn = Quaternion::pure((d.m[0] * mag - p.m[0] * dmag) * inv2,
                              (d.m[1] * mag - p.m[1] * dmag) * inv2,
                              (d.m[2] * mag - p.m[2] * dmag) * inv2);
    return out;
}

// Vec_k of the bracketed phase expression dp - theta dn + sin cos dn - sin^2 (order) .
Quaternion corollary_term(const PixelFrame& p, const PixelFrame& d, bool n_first) {
    const double a2 = p.r * p.r + p.m[0] * p.m[0] + p.m[1] * p.m[1] + p.m[2] * p.m[2];
    const Direction dir = direction(p, d);
    const double theta = std::atan2(dir.mag, p.r);
    const double dtheta = (p.r * dir.dmag - dir.mag * d.r) / a2;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const Quaternion dp = dir.dn * theta + dir.n * dtheta;
    const Quaternion prod = n_first ? dir.n * dir.dn : dir.dn * dir.n;
    return dp - dir.dn * theta + dir.dn * (s * c) - prod * (s * s);
}

}  // namespace

double default_eps(const HardyFrame& frame) {
    double max_a = 0.0;
    for (std::size_t i = 0; i < frame.r.size(); ++i) {
        max_a = std::max(max_a, modulus(as_quaternion(pixel(frame, i))));
    }
    return max_a > 0.0 ? 1e-9 * max_a : 1e-300;
}

FeatureField local_features(const HardyFrame& frame, std::optional<double> eps_opt) {
    const double eps = eps_opt ? *eps_opt : default_eps(frame);
    if (!(eps > 0.0)) throw std::invalid_argument("local_features: eps must be positive");
    FeatureField ff;
    const ScalarField blank(frame.height(), frame.width(), frame.spacing());
    ff.amplitude = blank;
    ff.attenuation = blank;
    ff.theta = blank;
    ff.p1 = blank;
    ff.p2 = blank;
    ff.p3 = blank;
    ff.y1 = frame.y1;
    ff.y2 = frame.y2;
    for (std::size_t i = 0; i < frame.r.size(); ++i) {
        const PixelFrame p = pixel(frame, i);
        const double mag = std::sqrt(p.m[0] * p.m[0] + p.m[1] * p.m[1] + p.m[2] * p.m[2]);
        const double amp = std::hypot(p.r, mag);
        const double theta = std::atan2(mag, p.r);
        ff.amplitude.values()[i] = amp;
        ff.attenuation.values()[i] = std::log(std::max(amp, eps));
        ff.theta.values()[i] = theta;
        if (mag >= eps) {
            const double s = theta / mag;
            ff.p1.values()[i] = p.m[0] * s;
            ff.p2.values()[i] = p.m[1] * s;
            ff.p3.values()[i] = p.m[2] * s;
        }
    }
    return ff;
}

HardyFrame reconstruct(const FeatureField& ff, double eps) {
    HardyFrame out;
    const ScalarField blank(ff.amplitude.height(), ff.amplitude.width(), ff.amplitude.spacing());
    out.r = blank;
    out.m1 = blank;
    out.m2 = blank;
    out.m3 = blank;
    out.y1 = ff.y1;
    out.y2 = ff.y2;
    for (std::size_t i = 0; i < blank.size(); ++i) {
        const double amp = ff.amplitude.values()[i];
        const double theta = ff.theta.values()[i];
        out.r.values()[i] = amp * std::cos(theta);
        if (theta > eps) {
            const double s = amp * std::sin(theta) / theta;
            out.m1.values()[i] = s * ff.p1.values()[i];
            out.m2.values()[i] = s * ff.p2.values()[i];
            out.m3.values()[i] = s * ff.p3.values()[i];
        }
    }
    return out;
}

HardyFrame frame_diff_t1(const HardyFrame& frame) {
    HardyFrame d;
    d.r = diff_t1(frame.r);
    d.m1 = diff_t1(frame.m1);
    d.m2 = diff_t1(frame.m2);
    d.m3 = diff_t1(frame.m3);
    d.y1 = frame.y1;
    d.y2 = frame.y2;
    return d;
}

HardyFrame frame_diff_t2(const HardyFrame& frame) {
    HardyFrame d;
    d.r = diff_t2(frame.r);
    d.m1 = diff_t2(frame.m1);
    d.m2 = diff_t2(frame.m2);
    d.m3 = diff_t2(frame.m3);
    d.y1 = frame.y1;
    d.y2 = frame.y2;
    return d;
}

ScalarField phase_bracket(const HardyFrame& frame, const HardyFrame& deriv, int main,
                          std::array<int, 2> cross, double eps) {
    const ScalarField& mk = component(frame, main);
    const ScalarField& dmk = component(deriv, main);
    const int ia = cross[0] - 1;
    const int ib = cross[1] - 1;
    ScalarField out(frame.height(), frame.width(), frame.spacing());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const PixelFrame p = pixel(frame, i);
        const PixelFrame d = pixel(deriv, i);
        const double mag2 = p.m[0] * p.m[0] + p.m[1] * p.m[1] + p.m[2] * p.m[2];
        const double a2 = p.r * p.r + mag2;
        if (a2 <= eps * eps) continue;
        double v = (p.r * dmk.values()[i] - mk.values()[i] * d.r) / a2;
        if (mag2 >= eps * eps) {
            const Direction dir = direction(p, d);
            const double sin2 = mag2 / a2;
            const double n[3] = {dir.n.q1, dir.n.q2, dir.n.q3};
            const double dn[3] = {dir.dn.q1, dir.dn.q2, dir.dn.q3};
            v += -sin2 * dn[ia] * n[ib] + sin2 * dn[ib] * n[ia];
        }
        out.values()[i] = v;
    }
    return out;
}

ScalarField attenuation_derivative(const HardyFrame& frame, const HardyFrame& deriv, double eps) {
    ScalarField out(frame.height(), frame.width(), frame.spacing());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const PixelFrame p = pixel(frame, i);
        const PixelFrame d = pixel(deriv, i);
        const double a2 = p.r * p.r + p.m[0] * p.m[0] + p.m[1] * p.m[1] + p.m[2] * p.m[2];
        if (a2 <= eps * eps) continue;
        out.values()[i] = (p.r * d.r + p.m[0] * d.m[0] + p.m[1] * d.m[1] + p.m[2] * d.m[2]) / a2;
    }
    return out;
}

CRResidualReport cr_residuals(const HardyFrame& frame, const HardyDerivs& derivs, int margin,
                              double eps) {
    const HardyFrame dt1 = frame_diff_t1(frame);
    const HardyFrame dt2 = frame_diff_t2(frame);

    ScalarField res_t1 = attenuation_derivative(frame, dt1, eps);
    res_t1 -= phase_bracket(frame, derivs.d_y1, 1, {2, 3}, eps);
    ScalarField res_y1 = attenuation_derivative(frame, derivs.d_y1, eps);
    res_y1 += phase_bracket(frame, dt1, 1, {2, 3}, eps);
    ScalarField res_t2 = attenuation_derivative(frame, dt2, eps);
    res_t2 -= phase_bracket(frame, derivs.d_y2, 2, {1, 3}, eps);
    ScalarField res_y2 = attenuation_derivative(frame, derivs.d_y2, eps);
    res_y2 += phase_bracket(frame, dt2, 2, {1, 3}, eps);

    const ScalarField blank(frame.height(), frame.width(), frame.spacing());
    ScalarField vj1 = blank;
    ScalarField vk1 = blank;
    ScalarField vi2 = blank;
    ScalarField vk2 = blank;
    std::vector<char> valid(blank.size(), 1);
    CRResidualReport report;
    for (std::size_t i = 0; i < blank.size(); ++i) {
        const Quaternion f = as_quaternion(pixel(frame, i));
        const double a2 = norm_squared(f);
        if (a2 <= eps * eps) {
            valid[i] = 0;
            continue;
        }
        const Quaternion fc = conjugate(f);
        // (d e^p) e^-p = Vec[df conj(f)] / A^2 and e^-p d e^p = Vec[conj(f) df] / A^2
        const Quaternion y_t1 = vector_part(as_quaternion(pixel(dt1, i)) * fc) * (1.0 / a2);
        const Quaternion x_y1 = vector_part(as_quaternion(pixel(derivs.d_y1, i)) * fc) * (1.0 / a2);
        const Quaternion w_t2 = vector_part(fc * as_quaternion(pixel(dt2, i))) * (1.0 / a2);
        const Quaternion z_y2 = vector_part(fc * as_quaternion(pixel(derivs.d_y2, i))) * (1.0 / a2);
        const Quaternion left = y_t1 + Quaternion::unit_i() * x_y1;
        const Quaternion right = w_t2 + z_y2 * Quaternion::unit_j();
        vj1.values()[i] = left.q2;
        vk1.values()[i] = left.q3;
        vi2.values()[i] = right.q1;
        vk2.values()[i] = right.q3;
    }
    for (int r = margin; r < blank.height() - margin; ++r) {
        for (int c = margin; c < blank.width() - margin; ++c) {
            if (!valid[static_cast<std::size_t>(r) * blank.width() + c]) ++report.degenerate_count;
        }
    }
    report.margin = margin;
    report.res_t1 = make_channel(std::move(res_t1), margin, valid);
    report.res_y1 = make_channel(std::move(res_y1), margin, valid);
    report.res_t2 = make_channel(std::move(res_t2), margin, valid);
    report.res_y2 = make_channel(std::move(res_y2), margin, valid);
    report.vec_j_1 = make_channel(std::move(vj1), margin, valid);
    report.vec_k_1 = make_channel(std::move(vk1), margin, valid);
    report.vec_i_2 = make_channel(std::move(vi2), margin, valid);
    report.vec_k_2 = make_channel(std::move(vk2), margin, valid);
    return report;
}

CRResidualReport cr_residuals(const ScalarField& img, double y1, double y2,
                              const CROptions& options) {
    const LiftOptions lift = options.lift ? *options.lift : LiftOptions::untruncated();
    const HardyFrame frame = hardy_lift(img, y1, y2, lift);
    const HardyDerivs derivs = hardy_lift_derivs(img, y1, y2, lift);
    const double border = options.border ? *options.border : 2.0 * std::max(y1, y2);
    const int margin = static_cast<int>(std::ceil(border / img.spacing() - 1e-9));
    const double eps = options.eps ? *options.eps : default_eps(frame);
    return cr_residuals(frame, derivs, margin, eps);
}

CorollaryResiduals corollary_residuals(const HardyFrame& frame, const HardyDerivs& derivs,
                                       double eps) {
    const HardyFrame dt1 = frame_diff_t1(frame);
    const HardyFrame dt2 = frame_diff_t2(frame);
    const ScalarField a_t1 = attenuation_derivative(frame, dt1, eps);
    const ScalarField a_t2 = attenuation_derivative(frame, dt2, eps);
    const ScalarField a_y1 = attenuation_derivative(frame, derivs.d_y1, eps);
    const ScalarField a_y2 = attenuation_derivative(frame, derivs.d_y2, eps);
    CorollaryResiduals out;
    const ScalarField blank(frame.height(), frame.width(), frame.spacing());
    out.c1 = blank;
    out.c2 = blank;
    out.c3 = blank;
    out.c4 = blank;
    for (std::size_t i = 0; i < blank.size(); ++i) {
        const PixelFrame p = pixel(frame, i);
        const double mag = std::sqrt(p.m[0] * p.m[0] + p.m[1] * p.m[1] + p.m[2] * p.m[2]);
        if (mag < eps) continue;
        out.c1.values()[i] =
            a_t1.values()[i] - corollary_term(p, pixel(derivs.d_y1, i), false).q1;
        out.c2.values()[i] = a_t2.values()[i] - corollary_term(p, pixel(derivs.d_y2, i), true).q2;
        out.c3.values()[i] = a_y1.values()[i] + corollary_term(p, pixel(dt1, i), false).q1;
        out.c4.values()[i] = a_y2.values()[i] + corollary_term(p, pixel(dt2, i), true).q2;
    }
    return out;
}

Quaternion cauchy_kernel_eval(double t1, double y1, double t2, double y2) {
    const double n1 = t1 * t1 + y1 * y1;
    const double n2 = t2 * t2 + y2 * y2;
    if (!(n1 > 0.0) || !(n2 > 0.0)) {
        throw std::domain_error("cauchy_kernel_eval: zero argument");
    }
    const Quaternion s1c{t1, -y1, 0.0, 0.0};
    const Quaternion s2c{t2, 0.0, -y2, 0.0};
    return (s1c * s2c) * (1.0 / (n1 * n2));
}

Quaternion cauchy_log_features(double t1, double y1, double t2, double y2) {
    const double n1 = t1 * t1 + y1 * y1;
    const double n2 = t2 * t2 + y2 * y2;
    if (!(n1 > 0.0) || !(n2 > 0.0)) {
        throw std::domain_error("cauchy_log_features: zero argument");
    }
    const double a = 0.5 * std::log(n1) + 0.5 * std::log(n2);
    const Quaternion v = Quaternion::pure(-t2 * y1, -t1 * y2, y1 * y2);
    const double vm = modulus(v);
    if (vm == 0.0) return Quaternion::real(a);
    const double theta = std::atan2(vm, t1 * t2);
    return Quaternion::real(a) + v * (theta / vm);
}

CauchyCRResult cauchy_log_cr(double t1, double y1, double t2, double y2, double h) {
    const auto g = [](double a, double b, double c, double d) {
        return cauchy_log_features(a, b, c, d);
    };
    const double inv = 1.0 / (2.0 * h);
    const Quaternion d_t1 = (g(t1 + h, y1, t2, y2) - g(t1 - h, y1, t2, y2)) * inv;
    const Quaternion d_y1 = (g(t1, y1 + h, t2, y2) - g(t1, y1 - h, t2, y2)) * inv;
    const Quaternion d_t2 = (g(t1, y1, t2 + h, y2) - g(t1, y1, t2 - h, y2)) * inv;
    const Quaternion d_y2 = (g(t1, y1, t2, y2 + h) - g(t1, y1, t2, y2 - h)) * inv;
    return {d_t1 + Quaternion::unit_i() * d_y1, d_t2 + d_y2 * Quaternion::unit_j()};
}

}  // namespace qhardy
