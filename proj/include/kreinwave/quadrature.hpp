#pragma once

#include <span>
#include <vector>

#include "kreinwave/grid.hpp"

namespace kreinwave {

/// Composite quadrature weights for n_intervals uniform intervals: Simpson
/// for an even count, Simpson + 3/8 tail for an odd count >= 3, trapezoid
/// for a single interval. Multiply the weighted sum by the step.
std::vector<double> composite_weights(std::size_t n_intervals);

/// Weighted sum step * sum_j w_j y_j over a full node range.
cplx integrate_nodes(std::span<const cplx> values, double step);
double integrate_nodes(std::span<const double> values, double step);

/// Running integrals: out[j] ~ integral over [0, r_j], consistent with
/// composite_weights on every prefix (Simpson at even j, 3/8 tail at odd j).
void cumulative_quad(std::span<const cplx> values, double step,
                     std::span<cplx> out);

/// Composite quadrature of p over [a, b]. Endpoint fractions are handled by
/// linear interpolation onto the nearest nodes.
cplx quad_radial(const SampledProfile& p, double a, double b);

/// Weighted L2 norm against m: with kappa_inv absent the plain ||.||_{2,sigma},
/// otherwise (sum |F|^2 w kappa^{-1} dk + masses)^{1/2}. Point-mass locations
/// are interpolated linearly from F.
double norm_L2_sigma(const SpectralFunction& F, const SpectralMeasure& m,
                     const std::function<double(double)>& kappa_inv = {});

/// Same norm restricted to the window [lo, hi] (snapped to nodes).
double norm_L2_sigma_window(const SpectralFunction& F, const SpectralMeasure& m,
                            double lo, double hi,
                            const std::function<double(double)>& kappa_inv = {});

/// L = integral of |f(r)|^2 log^2(2+r) dr over the grid.
double log_weight_functional(const SampledProfile& f);

/// L2(R+) norm of a profile over its grid.
double profile_l2_norm(const SampledProfile& f);

} // namespace kreinwave
