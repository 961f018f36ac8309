#include "kreinwave/krein.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kreinwave/quadrature.hpp"

namespace kreinwave {

Coefficient::Coefficient(SampledProfile p, bool real_flag)
    : profile(std::move(p)), is_real(real_flag),
      support_bound(profile.declared_support) {
    if (is_real && !profile.is_real())
        throw DomainError("Coefficient: is_real set but imaginary parts are nonzero");
}

KreinSolution::KreinSolution(RadialGrid r_grid, SpectralGrid k_grid,
                             Coefficient coeff, SolverSettings settings,
                             std::size_t stored_rows, std::vector<cplx> p_cols,
                             std::vector<cplx> pstar_cols)
    : r_grid_(r_grid), k_grid_(k_grid), coeff_(std::move(coeff)),
      settings_(settings), stored_rows_(stored_rows),
      p_cols_(std::move(p_cols)), pstar_cols_(std::move(pstar_cols)) {
    if (stored_rows_ < 1 || stored_rows_ > r_grid_.size())
        throw ShapeError("KreinSolution: stored row count out of range");
    if (p_cols_.size() != stored_rows_ * k_grid_.size() ||
        pstar_cols_.size() != p_cols_.size())
        throw ShapeError("KreinSolution: matrix sizes inconsistent with grids");
}

cplx KreinSolution::p(std::size_t j, std::size_t i) const {
    if (j < stored_rows_) return p_stored(j, i);
    const double k = k_grid_.node(i);
    const double dr = r_grid_.node(j) - r_grid_.node(stored_rows_ - 1);
    return p_stored(stored_rows_ - 1, i) * std::polar(1.0, k * dr);
}

cplx KreinSolution::pstar(std::size_t j, std::size_t i) const {
    return (j < stored_rows_) ? pstar_stored(j, i) : pstar_last(i);
}

void KreinSolution::column_p(std::size_t i, std::span<cplx> out) const {
    if (out.size() != r_grid_.size())
        throw ShapeError("column_p: output size mismatch");
    for (std::size_t j = 0; j < stored_rows_; ++j) out[j] = p_stored(j, i);
    if (!has_tail()) return;
    const double k = k_grid_.node(i);
    const cplx last = p_stored(stored_rows_ - 1, i);
    const cplx step_phase = std::polar(1.0, k * r_grid_.step);
    cplx val = last;
    for (std::size_t j = stored_rows_; j < out.size(); ++j) {
        if ((j - stored_rows_) % 4096 == 4095) {
            const double dr = r_grid_.node(j - 1) - r_grid_.node(stored_rows_ - 1);
            val = last * std::polar(1.0, k * dr);
        }
        val *= step_phase;
        out[j] = val;
    }
}

void KreinSolution::column_pstar(std::size_t i, std::span<cplx> out) const {
    if (out.size() != r_grid_.size())
        throw ShapeError("column_pstar: output size mismatch");
    for (std::size_t j = 0; j < stored_rows_; ++j) out[j] = pstar_stored(j, i);
    const cplx tail = pstar_last(i);
    for (std::size_t j = stored_rows_; j < out.size(); ++j) out[j] = tail;
}

namespace {

struct NonzeroRange {
    bool any = false;
    double lo = 0.0; // sampled coefficient vanishes identically outside [lo, hi]
    double hi = 0.0;
};

NonzeroRange scan_nonzero(const SampledProfile& a) {
    NonzeroRange nz;
    std::size_t j0 = a.values.size(), j1 = 0;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        if (a.values[j] != cplx(0.0, 0.0)) {
            if (j0 == a.values.size()) j0 = j;
            j1 = j;
        }
    }
    if (j0 == a.values.size()) return nz; // identically zero
    nz.any = true;
    nz.lo = (j0 > 0) ? a.grid.node(j0 - 1) : 0.0;
    nz.hi = (j1 < a.grid.count) ? a.grid.node(j1 + 1) : a.grid.length();
    return nz;
}

} // namespace

KreinSolution integrate_krein(const Coefficient& A, const RadialGrid& r_grid,
                              const SpectralGrid& k_grid, double osc_factor) {
    if (!(osc_factor > 0.0))
        throw DomainError("integrate_krein: osc_factor must be positive");
    if (A.profile.grid.step > r_grid.step * (1.0 + 1e-12))
        throw ShapeError("integrate_krein: coefficient sampled coarser than the "
                         "radial grid");
    const auto& ap = A.profile;
    const NonzeroRange nz = scan_nonzero(ap);

    // first r node from which P* is provably constant
    std::size_t tail_start = r_grid.count; // default: no tail, store all rows
    if (!nz.any) {
        tail_start = 0;
    } else if (nz.hi < r_grid.length()) {
        tail_start = static_cast<std::size_t>(
            std::ceil(nz.hi / r_grid.step - 1e-9));
        tail_start = std::min(tail_start, r_grid.count);
    }
    const std::size_t stored_rows = tail_start + 1;

    const std::size_t n_k = k_grid.size();
    std::vector<cplx> p_cols(stored_rows * n_k);
    std::vector<cplx> pstar_cols(stored_rows * n_k);

    const double step = r_grid.step;
    for (std::size_t i = 0; i < n_k; ++i) {
        const double k = k_grid.node(i);
        const cplx ik(0.0, k);
        const cplx node_phase = std::polar(1.0, k * step);
        const auto n_sub = std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::ceil(step * (1.0 + std::abs(k)) / osc_factor)));
        const double h = step / static_cast<double>(n_sub);

        cplx P(1.0, 0.0), Ps(1.0, 0.0);
        cplx* pc = p_cols.data() + i * stored_rows;
        cplx* psc = pstar_cols.data() + i * stored_rows;
        pc[0] = P;
        psc[0] = Ps;

        for (std::size_t j = 0; j < tail_start; ++j) {
            const double r0 = r_grid.node(j);
            const double r1 = r_grid.node(j + 1);
            if (!nz.any || r1 <= nz.lo || r0 >= nz.hi) {
                P *= node_phase; // free step: P' = ikP, P*' = 0
            } else {
                cplx a0 = ap.interp(r0);
                for (std::size_t s = 0; s < n_sub; ++s) {
                    const double rs = r0 + h * static_cast<double>(s);
                    const cplx am = ap.interp(rs + 0.5 * h);
                    const cplx a1 = ap.interp(rs + h);
                    const cplx ca0 = std::conj(a0), cam = std::conj(am),
                               ca1 = std::conj(a1);

                    const cplx k1p = ik * P - ca0 * Ps;
                    const cplx k1s = -a0 * P;
                    cplx tp = P + 0.5 * h * k1p, ts = Ps + 0.5 * h * k1s;
                    const cplx k2p = ik * tp - cam * ts;
                    const cplx k2s = -am * tp;
                    tp = P + 0.5 * h * k2p;
                    ts = Ps + 0.5 * h * k2s;
                    const cplx k3p = ik * tp - cam * ts;
                    const cplx k3s = -am * tp;
                    tp = P + h * k3p;
                    ts = Ps + h * k3s;
                    const cplx k4p = ik * tp - ca1 * ts;
                    const cplx k4s = -a1 * tp;

                    P += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
                    Ps += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
                    a0 = a1;
                }
                if (!std::isfinite(P.real()) || !std::isfinite(P.imag()) ||
                    !std::isfinite(Ps.real()) || !std::isfinite(Ps.imag())) {
                    std::ostringstream msg;
                    msg << "integrate_krein: divergence at k = " << k
                        << ", r = " << r1;
                    throw DivergenceError(msg.str());
                }
            }
            pc[j + 1] = P;
            psc[j + 1] = Ps;
        }
    }
    return KreinSolution(r_grid, k_grid, A, SolverSettings{osc_factor},
                         stored_rows, std::move(p_cols), std::move(pstar_cols));
}

double residual_integral_identity(const KreinSolution& sol) {
    const auto& rg = sol.r_grid();
    const auto& ap = sol.coefficient().profile;
    const std::size_t rows = sol.stored_rows();
    std::vector<cplx> a_vals(rows);
    for (std::size_t j = 0; j < rows; ++j) a_vals[j] = ap.interp(rg.node(j));

    std::vector<cplx> integrand(rows), cum(rows);
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.k_grid().size(); ++i) {
        for (std::size_t j = 0; j < rows; ++j)
            integrand[j] = a_vals[j] * sol.p_stored(j, i);
        cumulative_quad(integrand, rg.step, cum);
        for (std::size_t j = 0; j < rows; ++j) {
            const double res = std::abs(sol.pstar_stored(j, i) - 1.0 + cum[j]);
            worst = std::max(worst, res);
        }
    }
    return worst;
}

double residual_conjugation_identity(const KreinSolution& sol) {
    const auto& rg = sol.r_grid();
    const std::size_t rows = sol.stored_rows();
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.k_grid().size(); ++i) {
        const double k = sol.k_grid().node(i);
        const cplx step_phase = std::polar(1.0, k * rg.step);
        cplx phase(1.0, 0.0);
        for (std::size_t j = 0; j < rows; ++j) {
            if (j % 4096 == 0) phase = std::polar(1.0, k * rg.node(j));
            const double res = std::abs(sol.p_stored(j, i) -
                                        phase * std::conj(sol.pstar_stored(j, i)));
            worst = std::max(worst, res);
            phase *= step_phase;
        }
    }
    return worst;
}

SzegoFunction szego(const KreinSolution& sol,
                    std::optional<double> tail_tolerance) {
    const std::size_t n_k = sol.k_grid().size();
    SzegoFunction out;
    out.grid = sol.k_grid();
    out.values.resize(n_k);
    for (std::size_t i = 0; i < n_k; ++i) out.values[i] = sol.pstar_last(i);

    if (!sol.has_tail()) {
        // no provably constant tail: last-node value with per-k tail report
        if (!tail_tolerance)
            throw DomainError("szego: coefficient has no support bound; a tail "
                              "convergence tolerance is required");
        out.tail_diff.resize(n_k);
        double worst = 0.0;
        double worst_k = 0.0;
        const std::size_t last = sol.stored_rows() - 1;
        for (std::size_t i = 0; i < n_k; ++i) {
            out.tail_diff[i] =
                std::abs(sol.pstar_stored(last, i) - sol.pstar_stored(last - 1, i));
            if (out.tail_diff[i] > worst) {
                worst = out.tail_diff[i];
                worst_k = sol.k_grid().node(i);
            }
        }
        if (worst > *tail_tolerance) {
            std::ostringstream msg;
            msg << "szego: tail difference " << worst << " at k = " << worst_k
                << " exceeds tolerance " << *tail_tolerance;
            throw ConvergenceError(msg.str());
        }
    }
    double mn = std::abs(out.values[0]);
    for (const auto& v : out.values) mn = std::min(mn, std::abs(v));
    out.min_modulus = mn;
    return out;
}

SpectralMeasure spectral_density(const SzegoFunction& Pi, double zero_threshold) {
    if (!(zero_threshold > 0.0))
        throw DomainError("spectral_density: zero_threshold must be positive");
    if (Pi.min_modulus < zero_threshold) {
        std::ostringstream msg;
        msg << "spectral_density: min |Pi| = " << Pi.min_modulus
            << " below zero threshold " << zero_threshold
            << "; possible singular part, measure construction refused";
        throw SingularPartError(msg.str());
    }
    std::vector<double> w(Pi.values.size());
    constexpr double two_pi = 2.0 * 3.14159265358979323846;
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = 1.0 / (two_pi * std::norm(Pi.values[i]));
    return SpectralMeasure(Pi.grid, std::move(w));
}

double stummel_norm(const Coefficient& A) {
    const auto& g = A.profile.grid;
    if (g.length() < 1.0 - 1e-9 * g.step)
        throw RangeError("stummel_norm: grid shorter than one unit window");
    std::vector<cplx> sq(A.profile.values.size());
    for (std::size_t j = 0; j < sq.size(); ++j)
        sq[j] = std::norm(A.profile.values[j]);
    const SampledProfile p(g, std::move(sq));
    double sup = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double r = g.node(j);
        if (r + 1.0 > g.length() + 1e-9 * g.step) break;
        sup = std::max(sup, quad_radial(p, r, r + 1.0).real());
    }
    return std::sqrt(std::max(sup, 0.0));
}

NormalizationReport normalization_constant(const KreinSolution& sol,
                                           const SpectralMeasure& m) {
    if (!(m.grid == sol.k_grid()))
        throw ShapeError("normalization_constant: measure grid mismatch");
    const std::size_t rows = sol.stored_rows();
    const std::size_t n_k = sol.k_grid().size();
    const auto wq = composite_weights(n_k - 1);
    std::vector<double> row_sum(rows, 0.0);
    for (std::size_t i = 0; i < n_k; ++i) {
        const double k = m.grid.node(i);
        const double fac = wq[i] * m.density[i] / (1.0 + k * k) * m.grid.step;
        for (std::size_t j = 0; j < rows; ++j)
            row_sum[j] += fac * std::norm(sol.p_stored(j, i));
    }
    for (const auto& pm : m.point_masses) {
        const double fac = pm.weight / (1.0 + pm.location * pm.location);
        for (std::size_t j = 0; j < rows; ++j) {
            // |P(r_j, .)|^2 interpolated linearly at the mass location
            const double pos =
                (pm.location + m.grid.half_width()) / m.grid.step;
            if (pos < 0.0 || pos > static_cast<double>(n_k - 1)) continue;
            const auto i0 = std::min(static_cast<std::size_t>(pos), n_k - 2);
            const double frac = pos - static_cast<double>(i0);
            const double v0 = std::norm(sol.p_stored(j, i0));
            const double v1 = std::norm(sol.p_stored(j, i0 + 1));
            row_sum[j] += fac * (v0 + frac * (v1 - v0));
        }
    }
    // |P| is constant along the reconstructed tail, so the sup over all grid
    // rows is attained within the stored rows.
    NormalizationReport rep;
    for (std::size_t j = 0; j < rows; ++j) {
        if (row_sum[j] > rep.value) {
            rep.value = row_sum[j];
            rep.attained_r = sol.r_grid().node(j);
        }
    }
    return rep;
}

DiracEigenfunctions dirac_eigenfunctions(const KreinSolution& sol) {
    const auto& rg = sol.r_grid();
    const std::size_t n_x = rg.size();
    const std::size_t n_k = sol.k_grid().size();
    if (n_x * n_k > 60'000'000)
        throw RangeError("dirac_eigenfunctions: grid too large for dense "
                         "matrices; use the solution column interface");
    DiracEigenfunctions out;
    out.x_grid = RadialGrid(rg.step * 0.5, rg.count);
    out.k_grid = sol.k_grid();
    out.e_cols.resize(n_x * n_k);
    std::vector<cplx> col(n_x);
    for (std::size_t i = 0; i < n_k; ++i) {
        const double k = sol.k_grid().node(i);
        sol.column_p(i, col);
        const cplx step_phase = std::polar(1.0, -k * out.x_grid.step);
        cplx phase(1.0, 0.0);
        cplx* e = out.e_cols.data() + i * n_x;
        for (std::size_t j = 0; j < n_x; ++j) {
            if (j % 4096 == 0) phase = std::polar(1.0, -k * out.x_grid.node(j));
            e[j] = col[j] * phase;
            phase *= step_phase;
        }
    }
    return out;
}

} // namespace kreinwave
