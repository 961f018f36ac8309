#include "kreinwave/transforms.hpp"

#include <cmath>

#include "kreinwave/quadrature.hpp"

namespace kreinwave {

namespace {
constexpr double pi = 3.14159265358979323846;

void require_same_radial(const SampledProfile& f, const RadialGrid& g,
                         const char* who) {
    if (!(f.grid == g)) throw ShapeError(std::string(who) + ": grid mismatch");
}

void require_x_grid(const SampledProfile& f, const RadialGrid& xg,
                    const char* who) {
    if (!(f.grid == xg))
        throw ShapeError(std::string(who) +
                         ": profile grid must be the halved radial grid");
}

void require_k_grid(const SpectralGrid& a, const SpectralGrid& b,
                    const char* who) {
    if (!(a == b)) throw ShapeError(std::string(who) + ": spectral grid mismatch");
}

} // namespace

RadialGrid dirac_x_grid(const KreinSolution& sol) {
    return RadialGrid(sol.r_grid().step * 0.5, sol.r_grid().count);
}

SpectralFunction forward_P(const SampledProfile& f, const KreinSolution& sol,
                           double a) {
    require_same_radial(f, sol.r_grid(), "forward_P");
    const auto& rg = sol.r_grid();
    if (a < 0.0 || a > rg.length() + 1e-9 * rg.step)
        throw RangeError("forward_P: endpoint outside grid");
    const std::size_t n_k = sol.k_grid().size();
    std::vector<cplx> col(rg.size());
    std::vector<cplx> integrand(rg.size());
    std::vector<cplx> out(n_k);
    for (std::size_t i = 0; i < n_k; ++i) {
        sol.column_p(i, col);
        for (std::size_t j = 0; j < col.size(); ++j)
            integrand[j] = f.values[j] * col[j];
        out[i] = quad_radial(SampledProfile(rg, integrand), 0.0,
                             std::min(a, rg.length()));
    }
    return SpectralFunction(sol.k_grid(), std::move(out));
}

double plancherel_defect(const SampledProfile& f, const KreinSolution& sol,
                         const SpectralMeasure& m, double a) {
    std::vector<cplx> sq(f.values.size());
    for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = std::norm(f.values[j]);
    const double energy =
        quad_radial(SampledProfile(f.grid, std::move(sq)), 0.0,
                    std::min(a, f.grid.length()))
            .real();
    if (!(energy > 0.0))
        throw DegenerateInputError("plancherel_defect: zero-norm input");
    const auto F = forward_P(f, sol, a);
    const double n = norm_L2_sigma(F, m);
    return std::abs(n * n - energy) / energy;
}

void column_E(const KreinSolution& sol, std::size_t i, std::span<cplx> out) {
    const auto xg = dirac_x_grid(sol);
    if (out.size() != xg.size()) throw ShapeError("column_E: output size mismatch");
    const double k = sol.k_grid().node(i);
    const std::size_t rows = sol.stored_rows();
    {
        const cplx step_phase = std::polar(1.0, -k * xg.step);
        cplx phase(1.0, 0.0);
        for (std::size_t j = 0; j < rows; ++j) {
            if (j % 4096 == 0) phase = std::polar(1.0, -k * xg.node(j));
            out[j] = sol.p_stored(j, i) * phase;
            phase *= step_phase;
        }
    }
    if (rows == out.size()) return;
    // past the support P advances by e^{ik dr}, so E advances by e^{ik dx}
    const cplx last = out[rows - 1];
    const cplx step_phase = std::polar(1.0, k * xg.step);
    cplx val = last;
    for (std::size_t j = rows; j < out.size(); ++j) {
        if ((j - rows) % 4096 == 4095)
            val = last * std::polar(1.0, k * (xg.node(j - 1) - xg.node(rows - 1)));
        val *= step_phase;
        out[j] = val;
    }
}

SpectralFunction forward_psi(const SampledProfile& f,
                             const DiracEigenfunctions& eig,
                             const SpectralMeasure& m2) {
    require_x_grid(f, eig.x_grid, "forward_psi");
    require_k_grid(m2.grid, eig.k_grid, "forward_psi");
    const std::size_t n_x = eig.x_grid.size();
    const std::size_t n_k = eig.k_grid.size();
    const auto w = composite_weights(n_x - 1);
    std::vector<cplx> out(n_k);
    for (std::size_t i = 0; i < n_k; ++i) {
        const cplx* e = eig.e_cols.data() + i * n_x;
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < n_x; ++j)
            acc += w[j] * f.values[j] * e[j].imag();
        out[i] = acc * eig.x_grid.step;
    }
    return SpectralFunction(eig.k_grid, std::move(out));
}

SampledProfile inverse_psi(const SpectralFunction& F,
                           const DiracEigenfunctions& eig,
                           const SpectralMeasure& m2) {
    require_k_grid(F.grid, eig.k_grid, "inverse_psi");
    require_k_grid(m2.grid, eig.k_grid, "inverse_psi");
    const std::size_t n_x = eig.x_grid.size();
    const std::size_t n_k = eig.k_grid.size();
    const auto w = composite_weights(n_k - 1);
    std::vector<cplx> out(n_x, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n_k; ++i) {
        const cplx c = F.values[i] * (w[i] * m2.density[i] * m2.grid.step);
        const cplx* e = eig.e_cols.data() + i * n_x;
        for (std::size_t j = 0; j < n_x; ++j) out[j] += c * e[j].imag();
    }
    for (const auto& pm : m2.point_masses) {
        const double pos = (pm.location + m2.grid.half_width()) / m2.grid.step;
        if (pos < 0.0 || pos > static_cast<double>(n_k - 1)) continue;
        const auto i0 = std::min(static_cast<std::size_t>(pos), n_k - 2);
        const double frac = pos - static_cast<double>(i0);
        const cplx c = F.interp(pm.location) * pm.weight;
        const cplx* e0 = eig.e_cols.data() + i0 * n_x;
        const cplx* e1 = e0 + n_x;
        for (std::size_t j = 0; j < n_x; ++j) {
            const double psi = (1.0 - frac) * e0[j].imag() + frac * e1[j].imag();
            out[j] += c * psi;
        }
    }
    return SampledProfile(eig.x_grid, std::move(out));
}

SpectralFunction forward_E(const SampledProfile& f,
                           const DiracEigenfunctions& eig,
                           const SpectralMeasure& m) {
    require_x_grid(f, eig.x_grid, "forward_E");
    require_k_grid(m.grid, eig.k_grid, "forward_E");
    const std::size_t n_x = eig.x_grid.size();
    const std::size_t n_k = eig.k_grid.size();
    const auto w = composite_weights(n_x - 1);
    std::vector<cplx> out(n_k);
    for (std::size_t i = 0; i < n_k; ++i) {
        const cplx* e = eig.e_cols.data() + i * n_x;
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < n_x; ++j) acc += w[j] * f.values[j] * e[j];
        out[i] = acc * eig.x_grid.step;
    }
    return SpectralFunction(eig.k_grid, std::move(out));
}

SpectralFunction forward_psi_structured(const SampledProfile& f,
                                        const KreinSolution& sol) {
    const auto xg = dirac_x_grid(sol);
    require_x_grid(f, xg, "forward_psi_structured");
    const std::size_t n_x = xg.size();
    const std::size_t n_k = sol.k_grid().size();
    std::vector<cplx> ecol(n_x);
    std::vector<cplx> out(n_k);
    for (std::size_t i = 0; i < n_k; ++i) {
        column_E(sol, i, ecol);
        cplx acc = 0.5 * f.values[0] * ecol[0].imag();
        for (std::size_t j = 1; j + 1 < n_x; ++j)
            acc += f.values[j] * ecol[j].imag();
        acc += 0.5 * f.values[n_x - 1] * ecol[n_x - 1].imag();
        out[i] = acc * xg.step;
    }
    return SpectralFunction(sol.k_grid(), std::move(out));
}

SampledProfile inverse_psi_structured(const SpectralFunction& F,
                                      const KreinSolution& sol,
                                      const SpectralMeasure& m2) {
    require_k_grid(F.grid, sol.k_grid(), "inverse_psi_structured");
    require_k_grid(m2.grid, sol.k_grid(), "inverse_psi_structured");
    if (!m2.point_masses.empty())
        throw DomainError("inverse_psi_structured: point masses unsupported");
    const auto xg = dirac_x_grid(sol);
    const std::size_t n_x = xg.size();
    const std::size_t n_k = sol.k_grid().size();
    std::vector<cplx> ecol(n_x);
    std::vector<cplx> out(n_x, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n_k; ++i) {
        const double wt = (i == 0 || i == n_k - 1) ? 0.5 : 1.0;
        const cplx c = F.values[i] * (wt * m2.density[i] * m2.grid.step);
        if (c == cplx(0.0, 0.0)) continue;
        column_E(sol, i, ecol);
        for (std::size_t j = 0; j < n_x; ++j) out[j] += c * ecol[j].imag();
    }
    return SampledProfile(xg, std::move(out));
}

SplitData split_odd_extension(const SampledProfile& f,
                              std::optional<SpectralGrid> xi_grid) {
    if (!f.is_real())
        throw DomainError("split_odd_extension: input must be real-valued");
    double peak = 0.0;
    for (const auto& v : f.values) peak = std::max(peak, std::abs(v.real()));
    if (peak > 0.0 && std::abs(f.values.back().real()) > 1e-6 * peak)
        throw DomainError("split_odd_extension: data not negligible at the "
                          "grid end");
    const double hx = f.grid.step;
    SpectralGrid xg = xi_grid ? *xi_grid
                              : SpectralGrid(pi / (f.grid.length() + hx),
                                             f.grid.size());
    const std::size_t m = xg.half_count;
    const std::size_t n = xg.size();
    std::vector<cplx> odd(n, cplx(0.0, 0.0));
    std::vector<cplx> plus(n, cplx(0.0, 0.0));
    std::vector<cplx> minus(n, cplx(0.0, 0.0));
    // f real and odd-extended: f_hat_odd(xi) = -i g(xi) with g real and odd;
    // computing g for xi > 0 and mirroring keeps the symmetry exact bin-wise.
    const std::size_t n_x = f.grid.size();
    for (std::size_t i = m + 1; i < n; ++i) {
        const double xi = xg.node(i);
        const cplx rot = std::polar(1.0, xi * hx);
        cplx ph = rot; // e^{i xi x_j} starting at j = 1
        double acc = 0.0;
        for (std::size_t j = 1; j < n_x; ++j) {
            const double wt = (j + 1 == n_x) ? 0.5 : 1.0;
            acc += wt * f.values[j].real() * ph.imag();
            ph *= rot;
        }
        const double g = std::sqrt(2.0 / pi) * hx * acc;
        odd[i] = cplx(0.0, -g);
        odd[xg.mirror(i)] = cplx(0.0, g);
        plus[i] = odd[i];
        minus[xg.mirror(i)] = odd[xg.mirror(i)];
    }
    SplitData out;
    out.xi_grid = xg;
    out.f_hat_odd = SpectralFunction(xg, std::move(odd));
    out.f_hat_plus = SpectralFunction(xg, std::move(plus));
    out.f_hat_minus = SpectralFunction(xg, std::move(minus));
    return out;
}

double spectral_l2_norm(const SpectralFunction& F) {
    double acc = 0.0;
    const std::size_t n = F.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double wt = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        acc += wt * std::norm(F.values[i]);
    }
    return std::sqrt(acc * F.grid.step);
}

} // namespace kreinwave
