#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kreinwave/grid.hpp"

namespace kreinwave {

/// Coefficient A of the Krein system. `is_real` pins b = 2 Im A(2x) to zero;
/// `support_bound` declares an R0 beyond which A vanishes exactly.
struct Coefficient {
    SampledProfile profile;
    bool is_real = true;
    std::optional<double> support_bound;

    Coefficient() = default;
    explicit Coefficient(SampledProfile p, bool real_flag = true);
};

struct SolverSettings {
    double osc_factor = 0.1; // substep rule h <= osc_factor/(1+|k|)
};

/// Solution matrices of the Krein system on an (r, k) grid.
///
/// Rows are stored up to the first node at or beyond the coefficient support;
/// past that point P*' = 0, so P*(r,k) equals the Szego value and
/// P(r,k) = e^{irk} conj(P*) exactly. Column accessors reconstruct the tail.
class KreinSolution {
public:
    KreinSolution(RadialGrid r_grid, SpectralGrid k_grid, Coefficient coeff,
                  SolverSettings settings, std::size_t stored_rows,
                  std::vector<cplx> p_cols, std::vector<cplx> pstar_cols);

    const RadialGrid& r_grid() const { return r_grid_; }
    const SpectralGrid& k_grid() const { return k_grid_; }
    const Coefficient& coefficient() const { return coeff_; }
    const SolverSettings& settings() const { return settings_; }

    std::size_t stored_rows() const { return stored_rows_; }
    bool has_tail() const { return stored_rows_ < r_grid_.size(); }

    cplx p_stored(std::size_t j, std::size_t i) const {
        return p_cols_[i * stored_rows_ + j];
    }
    cplx pstar_stored(std::size_t j, std::size_t i) const {
        return pstar_cols_[i * stored_rows_ + j];
    }
    /// P*(r_last_stored, k_i); equal to the Szego value when a tail exists.
    cplx pstar_last(std::size_t i) const {
        return pstar_stored(stored_rows_ - 1, i);
    }

    /// Values at arbitrary nodes (tail rows reconstructed in closed form).
    cplx p(std::size_t j, std::size_t i) const;
    cplx pstar(std::size_t j, std::size_t i) const;

    /// Materialize full columns, tail included.
    void column_p(std::size_t i, std::span<cplx> out) const;
    void column_pstar(std::size_t i, std::span<cplx> out) const;

private:
    RadialGrid r_grid_;
    SpectralGrid k_grid_;
    Coefficient coeff_;
    SolverSettings settings_;
    std::size_t stored_rows_;
    std::vector<cplx> p_cols_;     // column-major [k][r], stored_rows_ per column
    std::vector<cplx> pstar_cols_;
};

/// Szego function: the large-r limit of P*(r, k) on the spectral grid.
struct SzegoFunction {
    SpectralGrid grid;
    std::vector<cplx> values;
    double min_modulus = 0.0;
    /// |P*(r_N,k) - P*(r_{N-1},k)| per k when no support bound was available.
    std::vector<double> tail_diff;
};

/// Classical RK4 on the 2x2 system, one column per k. Internal substeps obey
/// h <= r_step and h <= osc_factor/(1+|k|); node steps on which the sampled
/// coefficient vanishes identically advance P by the exact phase factor.
KreinSolution integrate_krein(const Coefficient& A, const RadialGrid& r_grid,
                              const SpectralGrid& k_grid,
                              double osc_factor = 0.1);

/// max_{j,i} |P*(r_j,k_i) - 1 + integral_0^{r_j} A P dr| over stored rows.
double residual_integral_identity(const KreinSolution& sol);

/// max_{j,i} |P(r_j,k_i) - e^{i r_j k_i} conj(P*(r_j,k_i))| over stored rows.
double residual_conjugation_identity(const KreinSolution& sol);

/// Pi(k) = P*(R0, k) for compactly supported coefficients; otherwise the
/// last-node value, requiring the per-k tail difference to stay below
/// `tail_tolerance`.
SzegoFunction szego(const KreinSolution& sol,
                    std::optional<double> tail_tolerance = std::nullopt);

/// dsigma = dk/(2 pi |Pi|^2); refuses when min |Pi| < zero_threshold.
SpectralMeasure spectral_density(const SzegoFunction& Pi,
                                 double zero_threshold = 1e-3);

/// Stummel norm sup_r (integral_r^{r+1} |A|^2)^{1/2}, window starts at nodes.
double stummel_norm(const Coefficient& A);

struct NormalizationReport {
    double value = 0.0;      // sup_r of the weighted integral
    double attained_r = 0.0; // node where the sup is attained
};

/// sup over r nodes of integral |P(r,k)|^2/(1+k^2) dsigma.
NormalizationReport normalization_constant(const KreinSolution& sol,
                                           const SpectralMeasure& m);

/// Generalized eigenfunctions of the Dirac operator on the halved grid:
/// E(x,k) = P(2x,k) e^{-ixk} = phi + i psi. Dense; intended for desk-scale
/// grids, larger runs go through the column accessors.
struct DiracEigenfunctions {
    RadialGrid x_grid;           // r grid halved
    SpectralGrid k_grid;
    std::vector<cplx> e_cols;    // column-major [k][x]

    cplx E(std::size_t j, std::size_t i) const {
        return e_cols[i * x_grid.size() + j];
    }
    double phi(std::size_t j, std::size_t i) const { return E(j, i).real(); }
    double psi(std::size_t j, std::size_t i) const { return E(j, i).imag(); }
};

DiracEigenfunctions dirac_eigenfunctions(const KreinSolution& sol);

} // namespace kreinwave
