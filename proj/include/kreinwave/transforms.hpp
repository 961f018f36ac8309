#pragma once

#include <optional>

#include "kreinwave/krein.hpp"

namespace kreinwave {

/// Odd extension of real half-line data split by frequency sign:
/// f_hat_plus vanishes for xi <= 0, f_hat_minus for xi >= 0, and
/// f_hat_odd = f_hat_plus + f_hat_minus with the xi = 0 bin zeroed.
struct SplitData {
    SpectralGrid xi_grid;
    SpectralFunction f_hat_odd;
    SpectralFunction f_hat_plus;
    SpectralFunction f_hat_minus;
};

/// F(k) = integral_0^a f(r) P(r,k) dr per spectral column.
SpectralFunction forward_P(const SampledProfile& f, const KreinSolution& sol,
                           double a);

/// | ||forward_P(f)||^2_{2,sigma} - int_0^a |f|^2 | / int_0^a |f|^2.
double plancherel_defect(const SampledProfile& f, const KreinSolution& sol,
                         const SpectralMeasure& m, double a);

/// Dense transforms against the Dirac eigenfunctions (desk-scale grids).
SpectralFunction forward_psi(const SampledProfile& f,
                             const DiracEigenfunctions& eig,
                             const SpectralMeasure& m2);
SampledProfile inverse_psi(const SpectralFunction& F,
                           const DiracEigenfunctions& eig,
                           const SpectralMeasure& m2);
SpectralFunction forward_E(const SampledProfile& f,
                           const DiracEigenfunctions& eig,
                           const SpectralMeasure& m);

/// Same transforms evaluated directly against the Krein solution, with the
/// closed-form continuation past the coefficient support. Trapezoid sums,
/// O(N_x + N_k) memory; this is the path large scattering runs take.
SpectralFunction forward_psi_structured(const SampledProfile& f,
                                        const KreinSolution& sol);
SampledProfile inverse_psi_structured(const SpectralFunction& F,
                                      const KreinSolution& sol,
                                      const SpectralMeasure& m2);

/// E(x,k) = P(2x,k) e^{-ixk} for one spectral column, tail included.
void column_E(const KreinSolution& sol, std::size_t i, std::span<cplx> out);

/// x grid of the Dirac picture: radial grid halved.
RadialGrid dirac_x_grid(const KreinSolution& sol);

/// Fourier transform of the odd extension with the (2pi)^{-1/2} convention,
/// split by frequency sign. The default grid spans the Nyquist band of f's
/// grid; pass `xi_grid` to override.
SplitData split_odd_extension(const SampledProfile& f,
                              std::optional<SpectralGrid> xi_grid = std::nullopt);

/// Plain L2(dxi) norm of a spectral function (trapezoid).
double spectral_l2_norm(const SpectralFunction& F);

} // namespace kreinwave
