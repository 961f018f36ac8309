#include "kreinwave/quadrature.hpp"

#include <cmath>

namespace kreinwave {

std::vector<double> composite_weights(std::size_t n) {
    std::vector<double> w(n + 1, 0.0);
    if (n == 0) return w;
    if (n == 1) {
        w[0] = w[1] = 0.5;
        return w;
    }
    std::size_t simpson_end = n;
    if (n % 2 != 0) simpson_end = n - 3; // leave three intervals for the 3/8 rule
    for (std::size_t j = 0; j + 2 <= simpson_end; j += 2) {
        w[j] += 1.0 / 3.0;
        w[j + 1] += 4.0 / 3.0;
        w[j + 2] += 1.0 / 3.0;
    }
    if (n % 2 != 0) {
        w[n - 3] += 3.0 / 8.0;
        w[n - 2] += 9.0 / 8.0;
        w[n - 1] += 9.0 / 8.0;
        w[n] += 3.0 / 8.0;
    }
    return w;
}

namespace {

template <typename T>
T weighted_sum(std::span<const T> values, double step) {
    if (values.size() < 2) return T{};
    const auto w = composite_weights(values.size() - 1);
    T acc{};
    for (std::size_t j = 0; j < values.size(); ++j) acc += w[j] * values[j];
    return acc * step;
}

} // namespace

cplx integrate_nodes(std::span<const cplx> values, double step) {
    return weighted_sum(values, step);
}

double integrate_nodes(std::span<const double> values, double step) {
    return weighted_sum(values, step);
}

void cumulative_quad(std::span<const cplx> values, double step,
                     std::span<cplx> out) {
    const std::size_t n = values.size();
    if (out.size() != n) throw ShapeError("cumulative_quad: output size mismatch");
    if (n == 0) return;
    out[0] = cplx(0.0, 0.0);
    if (n == 1) return;
    // even prefixes by pairwise Simpson; odd prefixes close with the 3/8 rule.
    // The first interval uses the cubic through the leading four nodes so that
    // every prefix is fourth-order (trapezoid when only two nodes exist).
    for (std::size_t j = 2; j < n; j += 2)
        out[j] = out[j - 2] +
                 step / 3.0 * (values[j - 2] + 4.0 * values[j - 1] + values[j]);
    if (n >= 4)
        out[1] = step / 24.0 * (9.0 * values[0] + 19.0 * values[1] -
                                5.0 * values[2] + values[3]);
    else
        out[1] = step * 0.5 * (values[0] + values[1]);
    for (std::size_t j = 3; j < n; j += 2)
        out[j] = out[j - 3] + step * 3.0 / 8.0 *
                                  (values[j - 3] + 3.0 * values[j - 2] +
                                   3.0 * values[j - 1] + values[j]);
}

cplx quad_radial(const SampledProfile& p, double a, double b) {
    const double h = p.grid.step;
    const double len = p.grid.length();
    const double slack = 1e-9 * h;
    if (!(a >= -slack) || !(b >= a - slack) || !(b <= len + slack))
        throw RangeError("quad_radial: interval outside grid");
    a = std::min(std::max(a, 0.0), len);
    b = std::min(std::max(b, a), len);
    if (b - a <= 0.0) return cplx(0.0, 0.0);

    auto snap = [&](double pos) {
        const double r = std::round(pos);
        return (std::abs(pos - r) < 1e-9) ? r : pos;
    };
    const double pa = snap(a / h);
    const double pb = snap(b / h);
    const auto j_lo = static_cast<std::size_t>(std::ceil(pa));
    const auto j_hi = static_cast<std::size_t>(std::floor(pb));

    if (j_lo > j_hi) {
        // both endpoints inside one cell
        return (b - a) * 0.5 * (p.interp(a) + p.interp(b));
    }
    cplx total(0.0, 0.0);
    if (j_hi > j_lo) {
        const auto w = composite_weights(j_hi - j_lo);
        cplx acc(0.0, 0.0);
        for (std::size_t j = j_lo; j <= j_hi; ++j) acc += w[j - j_lo] * p.values[j];
        total += acc * h;
    }
    const double left = p.grid.node(j_lo) - a;
    if (left > 1e-12 * h)
        total += left * 0.5 * (p.interp(a) + p.values[j_lo]);
    const double right = b - p.grid.node(j_hi);
    if (right > 1e-12 * h)
        total += right * 0.5 * (p.values[j_hi] + p.interp(b));
    return total;
}

namespace {

double measure_weighted_sq(const SpectralFunction& F, const SpectralMeasure& m,
                           std::size_t i_lo, std::size_t i_hi,
                           const std::function<double(double)>& kappa_inv) {
    double acc = 0.0;
    if (i_hi > i_lo) {
        const auto w = composite_weights(i_hi - i_lo);
        for (std::size_t i = i_lo; i <= i_hi; ++i) {
            const double k = m.grid.node(i);
            const double kw = kappa_inv ? kappa_inv(k) : 1.0;
            acc += w[i - i_lo] * std::norm(F.values[i]) * m.density[i] * kw;
        }
        acc *= m.grid.step;
    }
    return acc;
}

} // namespace

double norm_L2_sigma(const SpectralFunction& F, const SpectralMeasure& m,
                     const std::function<double(double)>& kappa_inv) {
    if (!(F.grid == m.grid))
        throw ShapeError("norm_L2_sigma: function and measure grids differ");
    double acc = measure_weighted_sq(F, m, 0, m.grid.size() - 1, kappa_inv);
    for (const auto& pm : m.point_masses) {
        const double kw = kappa_inv ? kappa_inv(pm.location) : 1.0;
        acc += std::norm(F.interp(pm.location)) * kw * pm.weight;
    }
    return std::sqrt(acc);
}

double norm_L2_sigma_window(const SpectralFunction& F, const SpectralMeasure& m,
                            double lo, double hi,
                            const std::function<double(double)>& kappa_inv) {
    if (!(F.grid == m.grid))
        throw ShapeError("norm_L2_sigma_window: function and measure grids differ");
    if (!(lo < hi)) throw DomainError("norm_L2_sigma_window: empty window");
    const double kmax = m.grid.half_width();
    lo = std::max(lo, -kmax);
    hi = std::min(hi, kmax);
    if (!(lo < hi)) throw DomainError("norm_L2_sigma_window: window outside grid");
    const auto i_lo = static_cast<std::size_t>(
        std::ceil((lo + kmax) / m.grid.step - 1e-9));
    const auto i_hi = static_cast<std::size_t>(
        std::floor((hi + kmax) / m.grid.step + 1e-9));
    if (i_hi <= i_lo) throw DomainError("norm_L2_sigma_window: window has no nodes");
    double acc = measure_weighted_sq(F, m, i_lo, i_hi, kappa_inv);
    for (const auto& pm : m.point_masses) {
        if (pm.location < lo || pm.location > hi) continue;
        const double kw = kappa_inv ? kappa_inv(pm.location) : 1.0;
        acc += std::norm(F.interp(pm.location)) * kw * pm.weight;
    }
    return std::sqrt(acc);
}

double log_weight_functional(const SampledProfile& f) {
    std::vector<cplx> weighted(f.values.size());
    for (std::size_t j = 0; j < weighted.size(); ++j) {
        const double lg = std::log(2.0 + f.grid.node(j));
        weighted[j] = std::norm(f.values[j]) * lg * lg;
    }
    const SampledProfile p(f.grid, std::move(weighted));
    return quad_radial(p, 0.0, f.grid.length()).real();
}

double profile_l2_norm(const SampledProfile& f) {
    std::vector<cplx> sq(f.values.size());
    for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = std::norm(f.values[j]);
    const SampledProfile p(f.grid, std::move(sq));
    return std::sqrt(quad_radial(p, 0.0, f.grid.length()).real());
}

} // namespace kreinwave
