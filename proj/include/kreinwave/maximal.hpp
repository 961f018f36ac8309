#pragma once

#include <cstdint>

#include "kreinwave/krein.hpp"

namespace kreinwave {

/// Dyadic blocks P_j(k) = integral_{2^{j-1}}^{2^j} f P dr, j = 1..depth,
/// plus the head block over [0, 1].
struct DyadicDecomposition {
    SpectralFunction head;
    std::vector<SpectralFunction> blocks;
    std::size_t depth = 0;
};

DyadicDecomposition decompose_dyadic(const SampledProfile& f,
                                     const KreinSolution& sol, std::size_t J);

enum class MaximalVariant { integer_endpoints, continuous, tail };

struct MaximalReport {
    SpectralGrid grid;
    std::vector<double> M; // pointwise nonnegative maximal values
    MaximalVariant variant = MaximalVariant::integer_endpoints;
    bool weighted = false; // 1/(1+k^2) spectral weight applied to the norm
    double L = 0.0;        // ratio denominator (see each operation)
    double norm_M_sq = 0.0;
    double ratio = 0.0;
    double rho = 0.0; // tail variant only
};

/// M(k) = sup_{1<=n<=N_max} |int_0^n f P dr| over integer endpoints;
/// ratio = ||M||^2_{2,sigma} / L with L the log-weighted functional of f.
MaximalReport maximal_integer(const SampledProfile& f, const KreinSolution& sol,
                              const SpectralMeasure& m, std::size_t N_max);

/// Supremum over every grid node; with kappa_weight the norm carries
/// 1/(1+k^2) and the ratio denominator becomes (1 + K) L, K the
/// normalization constant of the system.
MaximalReport maximal_continuous(const SampledProfile& f,
                                 const KreinSolution& sol,
                                 const SpectralMeasure& m, bool kappa_weight);

/// M(k) = sup_{rho < r1 < r2} |P*(r2,k) - P*(r1,k)|, the diameter of the
/// trajectory past rho; norm weighted by 1/(1+k^2); ratio against
/// (1 + ||A||_2^2) * integral_rho^inf |A|^2 log^2(2+r) dr.
MaximalReport tail_oscillation(const KreinSolution& sol,
                               const SpectralMeasure& m, double rho);

/// Exact diameter of a planar point set (convex hull + rotating calipers).
double point_set_diameter(std::span<const cplx> points);

/// Seeded piecewise-linear profile with knots at the integers of [0, 2^J],
/// normalized so the log-weighted functional L equals 1.
SampledProfile random_log_profile(const RadialGrid& grid, std::uint64_t seed,
                                  std::size_t J);

} // namespace kreinwave
