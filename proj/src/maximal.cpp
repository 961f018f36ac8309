#include "kreinwave/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "kreinwave/quadrature.hpp"
#include "kreinwave/transforms.hpp"

namespace kreinwave {

namespace {

double kappa_inv(double k) { return 1.0 / (1.0 + k * k); }

std::size_t integer_node(const RadialGrid& g, double r, const char* who) {
    const auto j = static_cast<std::size_t>(std::llround(r / g.step));
    if (j > g.count || std::abs(g.node(j) - r) > 1e-9 * std::max(1.0, r))
        throw RangeError(std::string(who) + ": endpoint not on the grid");
    return j;
}

double weighted_norm_sq(const std::vector<double>& M, const SpectralMeasure& m,
                        bool weighted) {
    std::vector<cplx> mv(M.size());
    for (std::size_t i = 0; i < M.size(); ++i) mv[i] = cplx(M[i], 0.0);
    const SpectralFunction F(m.grid, std::move(mv));
    const double n = weighted ? norm_L2_sigma(F, m, kappa_inv)
                              : norm_L2_sigma(F, m);
    return n * n;
}

} // namespace

DyadicDecomposition decompose_dyadic(const SampledProfile& f,
                                     const KreinSolution& sol, std::size_t J) {
    if (!(f.grid == sol.r_grid()))
        throw ShapeError("decompose_dyadic: profile grid mismatch");
    const auto& rg = sol.r_grid();
    const double top = std::ldexp(1.0, static_cast<int>(J));
    if (J == 0 || top > rg.length() + 1e-9 * rg.step)
        throw RangeError("decompose_dyadic: 2^J outside the radial grid");

    const std::size_t n_k = sol.k_grid().size();
    DyadicDecomposition out;
    out.depth = J;
    std::vector<std::vector<cplx>> vals(J + 1,
                                        std::vector<cplx>(n_k, cplx(0.0, 0.0)));
    std::vector<cplx> col(rg.size()), integrand(rg.size());
    for (std::size_t i = 0; i < n_k; ++i) {
        sol.column_p(i, col);
        for (std::size_t j = 0; j < col.size(); ++j)
            integrand[j] = f.values[j] * col[j];
        const SampledProfile prod(rg, integrand);
        vals[0][i] = quad_radial(prod, 0.0, 1.0);
        for (std::size_t b = 1; b <= J; ++b)
            vals[b][i] = quad_radial(prod, std::ldexp(1.0, static_cast<int>(b) - 1),
                                     std::ldexp(1.0, static_cast<int>(b)));
    }
    out.head = SpectralFunction(sol.k_grid(), std::move(vals[0]));
    for (std::size_t b = 1; b <= J; ++b)
        out.blocks.emplace_back(sol.k_grid(), std::move(vals[b]));
    return out;
}

MaximalReport maximal_integer(const SampledProfile& f, const KreinSolution& sol,
                              const SpectralMeasure& m, std::size_t N_max) {
    if (!(f.grid == sol.r_grid()))
        throw ShapeError("maximal_integer: profile grid mismatch");
    const auto& rg = sol.r_grid();
    if (N_max < 1 ||
        static_cast<double>(N_max) > rg.length() + 1e-9 * rg.step)
        throw RangeError("maximal_integer: N_max outside the radial grid");
    const double L = log_weight_functional(f);
    if (!(L > 0.0))
        throw DegenerateInputError("maximal_integer: log-weighted norm is zero");

    std::vector<std::size_t> nodes(N_max);
    for (std::size_t n = 1; n <= N_max; ++n)
        nodes[n - 1] =
            integer_node(rg, static_cast<double>(n), "maximal_integer");

    const std::size_t n_k = sol.k_grid().size();
    MaximalReport rep;
    rep.grid = sol.k_grid();
    rep.variant = MaximalVariant::integer_endpoints;
    rep.M.assign(n_k, 0.0);
    std::vector<cplx> col(rg.size()), integrand(rg.size()), cum(rg.size());
    for (std::size_t i = 0; i < n_k; ++i) {
        sol.column_p(i, col);
        for (std::size_t j = 0; j < col.size(); ++j)
            integrand[j] = f.values[j] * col[j];
        cumulative_quad(integrand, rg.step, cum);
        double sup = 0.0;
        for (const auto j : nodes) sup = std::max(sup, std::abs(cum[j]));
        rep.M[i] = sup;
    }
    rep.L = L;
    rep.norm_M_sq = weighted_norm_sq(rep.M, m, false);
    rep.ratio = rep.norm_M_sq / L;
    return rep;
}

MaximalReport maximal_continuous(const SampledProfile& f,
                                 const KreinSolution& sol,
                                 const SpectralMeasure& m, bool kappa_weight) {
    if (!(f.grid == sol.r_grid()))
        throw ShapeError("maximal_continuous: profile grid mismatch");
    const auto& rg = sol.r_grid();
    const double L = log_weight_functional(f);
    if (!(L > 0.0))
        throw DegenerateInputError("maximal_continuous: log-weighted norm is zero");

    const std::size_t n_k = sol.k_grid().size();
    MaximalReport rep;
    rep.grid = sol.k_grid();
    rep.variant = MaximalVariant::continuous;
    rep.weighted = kappa_weight;
    rep.M.assign(n_k, 0.0);
    std::vector<cplx> col(rg.size()), integrand(rg.size()), cum(rg.size());
    for (std::size_t i = 0; i < n_k; ++i) {
        sol.column_p(i, col);
        for (std::size_t j = 0; j < col.size(); ++j)
            integrand[j] = f.values[j] * col[j];
        cumulative_quad(integrand, rg.step, cum);
        double sup = 0.0;
        for (const auto& v : cum) sup = std::max(sup, std::abs(v));
        rep.M[i] = sup;
    }
    rep.norm_M_sq = weighted_norm_sq(rep.M, m, kappa_weight);
    if (kappa_weight) {
        // ratio against (||kappa^{-1}||_inf + K) L with kappa = 1 + k^2
        const double K = normalization_constant(sol, m).value;
        rep.L = (1.0 + K) * L;
    } else {
        rep.L = L;
    }
    rep.ratio = rep.norm_M_sq / rep.L;
    return rep;
}

namespace {

struct Pt {
    double x, y;
};

double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist_sq(const Pt& a, const Pt& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

} // namespace

double point_set_diameter(std::span<const cplx> points) {
    std::vector<Pt> pts(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        pts[i] = {points[i].real(), points[i].imag()};
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Pt& a, const Pt& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 2) return 0.0;
    if (n == 2) return std::sqrt(dist_sq(pts[0], pts[1]));

    // Andrew monotone chain, collinear points dropped
    std::vector<Pt> hull(2 * n);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0.0) --h;
        hull[h++] = pts[i];
    }
    const std::size_t lower = h + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0.0) --h;
        hull[h++] = pts[i];
    }
    hull.resize(h - 1);
    const std::size_t m = hull.size();
    if (m == 1) return 0.0;
    if (m == 2) return std::sqrt(dist_sq(hull[0], hull[1]));

    // rotating calipers over antipodal pairs
    double best = 0.0;
    std::size_t j = 1;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t ni = (i + 1) % m;
        const Pt edge{hull[ni].x - hull[i].x, hull[ni].y - hull[i].y};
        while (true) {
            const std::size_t nj = (j + 1) % m;
            const double adv = edge.x * (hull[nj].y - hull[j].y) -
                               edge.y * (hull[nj].x - hull[j].x);
            if (adv > 0.0)
                j = nj;
            else
                break;
        }
        best = std::max(best, dist_sq(hull[i], hull[j]));
        best = std::max(best, dist_sq(hull[ni], hull[j]));
    }
    return std::sqrt(best);
}

MaximalReport tail_oscillation(const KreinSolution& sol,
                               const SpectralMeasure& m, double rho) {
    const auto& rg = sol.r_grid();
    if (rho < 0.0 || rho > rg.length() + 1e-9 * rg.step)
        throw RangeError("tail_oscillation: rho outside the radial grid");
    const std::size_t j_lo = static_cast<std::size_t>(
        std::ceil(rho / rg.step - 1e-9));

    const std::size_t n_k = sol.k_grid().size();
    MaximalReport rep;
    rep.grid = sol.k_grid();
    rep.variant = MaximalVariant::tail;
    rep.weighted = true;
    rep.rho = rho;
    rep.M.assign(n_k, 0.0);

    // P* is constant from the last stored row on, so the trajectory past rho
    // is the stored rows at or beyond rho (a single point once rho clears the
    // coefficient support, giving diameter exactly zero).
    const std::size_t rows = sol.stored_rows();
    std::vector<cplx> traj;
    for (std::size_t i = 0; i < n_k; ++i) {
        traj.clear();
        if (j_lo >= rows) {
            traj.push_back(sol.pstar_last(i));
        } else {
            for (std::size_t j = j_lo; j < rows; ++j)
                traj.push_back(sol.pstar_stored(j, i));
        }
        rep.M[i] = point_set_diameter(traj);
    }

    // denominator (1 + ||A||_2^2) * int_rho^inf |A|^2 log^2(2+r) dr
    const auto& ap = sol.coefficient().profile;
    std::vector<cplx> sq(ap.values.size());
    for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = std::norm(ap.values[j]);
    const SampledProfile asq(ap.grid, sq);
    const double a_l2_sq = quad_radial(asq, 0.0, ap.grid.length()).real();
    std::vector<cplx> sqlog(ap.values.size());
    for (std::size_t j = 0; j < sqlog.size(); ++j) {
        const double lg = std::log(2.0 + ap.grid.node(j));
        sqlog[j] = std::norm(ap.values[j]) * lg * lg;
    }
    const double tail_L =
        quad_radial(SampledProfile(ap.grid, std::move(sqlog)),
                    std::min(rho, ap.grid.length()), ap.grid.length())
            .real();
    rep.L = (1.0 + a_l2_sq) * tail_L;
    rep.norm_M_sq = weighted_norm_sq(rep.M, m, true);
    rep.ratio = (rep.L > 0.0) ? rep.norm_M_sq / rep.L
                              : (rep.norm_M_sq > 0.0
                                     ? std::numeric_limits<double>::infinity()
                                     : 0.0);
    return rep;
}

SampledProfile random_log_profile(const RadialGrid& grid, std::uint64_t seed,
                                  std::size_t J) {
    const double top = std::ldexp(1.0, static_cast<int>(J));
    if (top > grid.length() + 1e-9 * grid.step)
        throw RangeError("random_log_profile: 2^J outside the grid");
    std::mt19937_64 rng(seed);
    // knots at the integers; explicit 53-bit mapping keeps the draw
    // bit-identical across standard library implementations
    auto draw = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    };
    const auto knots = static_cast<std::size_t>(top);
    std::vector<double> kv(knots + 1);
    for (auto& v : kv) v = draw();
    kv.back() = 0.0;

    std::vector<cplx> vals(grid.size(), cplx(0.0, 0.0));
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double r = grid.node(j);
        if (r > top) break;
        const auto n = std::min(static_cast<std::size_t>(r), knots - 1);
        const double frac = r - static_cast<double>(n);
        vals[j] = cplx(kv[n] + frac * (kv[n + 1] - kv[n]), 0.0);
    }
    SampledProfile f(grid, std::move(vals), top);
    const double L = log_weight_functional(f);
    if (L > 0.0) {
        const double s = 1.0 / std::sqrt(L);
        for (auto& v : f.values) v *= s;
    }
    return f;
}

} // namespace kreinwave
