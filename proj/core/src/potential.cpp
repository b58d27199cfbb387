#include "loopgas/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace loopgas {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_radii(double r, double R) {
    if (!(r > 0.0) || !(R > r) || !std::isfinite(R))
        throw std::invalid_argument("PotentialModel: need 0 < core_r < range_R < inf");
}

// Natural cubic spline second derivatives (tridiagonal solve).
std::vector<double> spline_second_derivatives(const std::vector<double>& x,
                                              const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n < 3) return m;
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x[i] - x[i - 1];
        const double h1 = x[i + 1] - x[i];
        a[i] = h0;
        b[i] = 2.0 * (h0 + h1);
        c[i] = h1;
        d[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    }
    // Thomas algorithm on rows 1..n-2; natural boundary m[0] = m[n-1] = 0.
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m[i] = (d[i] - c[i] * (i + 2 < n ? m[i + 1] : 0.0)) / b[i];
        if (i == 1) break;
    }
    return m;
}
}  // namespace

PotentialModel PotentialModel::hard_core(double core_r, double range_R) {
    check_radii(core_r, range_R);
    PotentialModel V;
    V.family_ = Family::hard_core;
    V.r_ = core_r;
    V.R_ = range_R;
    return V;
}

PotentialModel PotentialModel::smooth_well(double core_r, double range_R, double depth) {
    check_radii(core_r, range_R);
    if (!std::isfinite(depth))
        throw std::invalid_argument("PotentialModel: well depth must be finite");
    PotentialModel V;
    V.family_ = Family::smooth_well;
    V.r_ = core_r;
    V.R_ = range_R;
    V.depth_ = depth;
    return V;
}

PotentialModel PotentialModel::tabulated(double core_r, double range_R,
                                         std::vector<double> s, std::vector<double> v) {
    check_radii(core_r, range_R);
    if (s.size() != v.size() || s.size() < 2)
        throw std::invalid_argument("PotentialModel: table needs >= 2 matching rows");
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (!(s[i] < s[i + 1]))
            throw std::invalid_argument("PotentialModel: table abscissae must increase");
    if (std::abs(s.front() - core_r) > 1e-12 || std::abs(s.back() - range_R) > 1e-12)
        throw std::invalid_argument("PotentialModel: table must span [core_r, range_R]");
    for (double val : v)
        if (!std::isfinite(val))
            throw std::invalid_argument("PotentialModel: table values must be finite");
    PotentialModel V;
    V.family_ = Family::tabulated;
    V.r_ = core_r;
    V.R_ = range_R;
    V.tab_s_ = std::move(s);
    V.tab_v_ = std::move(v);
    V.spline_m_ = spline_second_derivatives(V.tab_s_, V.tab_v_);
    return V;
}

double PotentialModel::profile(double s) const {
    switch (family_) {
        case Family::hard_core:
            return 0.0;
        case Family::smooth_well: {
            const double u = (s - r_) / (R_ - r_);
            if (u <= 0.0 || u >= 1.0) return 0.0;
            const double p = u * (1.0 - u);
            return -depth_ * 64.0 * p * p * p;
        }
        case Family::tabulated: {
            const double x = std::clamp(s, tab_s_.front(), tab_s_.back());
            const auto it = std::upper_bound(tab_s_.begin(), tab_s_.end(), x);
            std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                1, it - tab_s_.begin()));
            if (i >= tab_s_.size()) i = tab_s_.size() - 1;
            const double h = tab_s_[i] - tab_s_[i - 1];
            const double A = (tab_s_[i] - x) / h;
            const double B = 1.0 - A;
            return A * tab_v_[i - 1] + B * tab_v_[i] +
                   ((A * A * A - A) * spline_m_[i - 1] + (B * B * B - B) * spline_m_[i]) *
                       h * h / 6.0;
        }
    }
    return 0.0;
}

double PotentialModel::profile_derivative(double s) const {
    switch (family_) {
        case Family::hard_core:
            return 0.0;
        case Family::smooth_well: {
            const double w = R_ - r_;
            const double u = (s - r_) / w;
            if (u <= 0.0 || u >= 1.0) return 0.0;
            const double p = u * (1.0 - u);
            return -depth_ * 64.0 * 3.0 * p * p * (1.0 - 2.0 * u) / w;
        }
        case Family::tabulated: {
            const double x = std::clamp(s, tab_s_.front(), tab_s_.back());
            const auto it = std::upper_bound(tab_s_.begin(), tab_s_.end(), x);
            std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                1, it - tab_s_.begin()));
            if (i >= tab_s_.size()) i = tab_s_.size() - 1;
            const double h = tab_s_[i] - tab_s_[i - 1];
            const double A = (tab_s_[i] - x) / h;
            const double B = 1.0 - A;
            return (tab_v_[i] - tab_v_[i - 1]) / h -
                   (3.0 * A * A - 1.0) / 6.0 * h * spline_m_[i - 1] +
                   (3.0 * B * B - 1.0) / 6.0 * h * spline_m_[i];
        }
    }
    return 0.0;
}

double PotentialModel::operator()(double dist) const {
    if (dist < r_) return kInf;
    if (dist >= R_) return 0.0;
    return profile(dist);
}

PotentialConstants constants(const PotentialModel& V, double z, double beta, int dim,
                             int n_samples) {
    if (!(z > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("constants: need z > 0 and beta > 0");
    double vmin = 0.0;
    double dmax = 0.0;
    const double r = V.core_r(), R = V.range_R();
    for (int i = 0; i < n_samples; ++i) {
        const double s = r + (R - r) * static_cast<double>(i) / (n_samples - 1);
        const double val = V.profile(s);
        if (!std::isfinite(val))
            throw std::invalid_argument("constants: profile not finite on [r, R]");
        vmin = std::min(vmin, val);
        dmax = std::max(dmax, std::abs(V.profile_derivative(s)));
    }
    PotentialConstants c;
    c.v_bar = std::max(0.0, -vmin);
    c.v_bar1 = dmax;
    c.rho_bar = z * std::exp(beta * c.v_bar * std::pow(R / r, dim));
    c.stable = c.rho_bar < 1.0;
    return c;
}

double pair_energy(const ClassicalConfig& cc, const PotentialModel& V) {
    const std::size_t n = cc.points.size();
    const double R2 = V.range_R() * V.range_R();
    const double r2 = V.core_r() * V.core_r();
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d2 = sq_distance(cc.points[i], cc.points[j]);
            if (d2 < r2) return kInf;
            if (d2 < R2) e += V.profile(std::sqrt(d2));
        }
    return e;
}

double cross_energy(const ClassicalConfig& a, const ClassicalConfig& b,
                    const PotentialModel& V) {
    const double R2 = V.range_R() * V.range_R();
    const double r2 = V.core_r() * V.core_r();
    double e = 0.0;
    for (const Vec& p : a.points)
        for (const Vec& q : b.points) {
            const double d2 = sq_distance(p, q);
            if (d2 < r2) return kInf;
            if (d2 < R2) e += V.profile(std::sqrt(d2));
        }
    return e;
}

}  // namespace loopgas
