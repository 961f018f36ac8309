#pragma once

#include <vector>

#include "kreinwave/grid.hpp"

namespace kreinwave {

/// Asymptotic expansion data for H(x) = int_x^inf e^{it^2} dt:
/// H(x) ~ e^{ix^2} sum_j c_j x^{-1-2j} with c_0 = i/2.
struct FresnelExpansion {
    std::size_t order = 3;
    std::vector<cplx> coefficients;
    double crossover = 16.0; // series branch for x >= crossover

    static FresnelExpansion make(std::size_t order, double crossover = 16.0);
};

/// c_0 = i/2, c_{j+1} = c_j * (-i) (2j+1)/2 (integration by parts on
/// int_{x^2}^inf e^{iu} u^{-j-1/2} du); exact dyadic rationals times i-powers.
std::vector<cplx> fresnel_coeffs(std::size_t n);

struct FresnelOptions {
    double crossover = 16.0;
    std::size_t order = 3;
    double quad_tolerance = 1e-12;
    double series_tolerance = 1e-8; // flagged if the remainder bound exceeds it
};

/// H(x) for x >= 0: adaptive quadrature of H(0) - int_0^x below the
/// crossover, asymptotic series above it.
cplx fresnel_H(double x, const FresnelOptions& opts = {});

/// int_{x1}^{x2} e^{iu^2} du via H differences.
cplx fresnel_segment(double x1, double x2, const FresnelOptions& opts = {});

struct StationaryPhaseReport {
    cplx integral;
    double ratio = 0.0; // |integral| / eps
    double eps = 0.0;
    double a = 0.0;
};

/// int_0^a e^{iu^2} g(u eps) du for smooth g with g(0) = 0, sampled on
/// [0, nu]. Evaluated segment-exactly for the piecewise-linear interpolant
/// of g via Fresnel kernels; requires |a eps| <= nu.
StationaryPhaseReport stationary_phase_check(const SampledProfile& g,
                                             double eps, double a, double nu);

/// Whole-line uniform grid x_j = x_min + j*step.
struct LineGrid {
    double x_min = 0.0;
    double step = 0.0;
    std::size_t count = 0; // last index
    std::size_t size() const { return count + 1; }
    double node(std::size_t j) const { return x_min + step * j; }
    double x_max() const { return node(count); }
};

struct LineProfile {
    LineGrid grid;
    std::vector<cplx> values;
};

LineProfile sample_line(const LineGrid& g,
                        const std::function<cplx(double)>& fn);

double line_l2_norm(const LineProfile& h);

/// e^{it d^2/dx^2} h via the Fourier multiplier e^{-it xi^2}; dense
/// transform on an internally chosen alias-free frequency grid. Pass a
/// positive xi_max to cap the band when h is known to be band-limited,
/// otherwise the full Nyquist band is used.
LineProfile free_evolution_line(const LineProfile& h, double t,
                                double xi_max = 0.0);

/// || e^{it dxx} h - (1+i)^{-1} t^{-1/2} e^{ix^2/4t} h_hat(x/2t) ||_{L2(R)}.
double free_asymptotic_defect(const LineProfile& h, double t,
                              double xi_max = 0.0);

struct UniformBoundReport {
    std::vector<double> t_values;
    std::vector<double> sup_per_t; // sup_k of the windowed integral modulus
    double global_sup = 0.0;
    double flatness = 0.0; // (max - min)/min over t
};

/// sup_k | int_{alpha t}^{beta t} t^{-1/2} e^{ix^2/4t} h_hat(x/2t) e^{ixk} dx |
/// on a k grid for each t.
UniformBoundReport uniform_bound_check(const LineProfile& h,
                                       const std::vector<double>& t_values,
                                       double alpha, double beta,
                                       double k_max = 8.0, double k_step = 0.25,
                                       double xi_max = 0.0);

} // namespace kreinwave
