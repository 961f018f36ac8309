#include "kreinwave/oscillatory.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace kreinwave {

namespace {

constexpr double pi = 3.14159265358979323846;

cplx fresnel_H0() {
    return 0.5 * std::sqrt(pi) * std::polar(1.0, 0.25 * pi);
}

cplx adaptive_step(const std::function<cplx(double)>& f, double a, double b,
                   cplx fa, cplx fm, cplx fb, cplx whole, double tol,
                   int depth) {
    const double m = 0.5 * (a + b);
    const cplx flm = f(0.5 * (a + m));
    const cplx frm = f(0.5 * (m + b));
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const cplx sum = left + right;
    if (depth <= 0 || std::abs(sum - whole) < 15.0 * tol)
        return sum + (sum - whole) / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

cplx adaptive_quad(const std::function<cplx(double)>& f, double a, double b,
                   double tol) {
    if (a == b) return cplx(0.0, 0.0);
    // split into unit panels so the oscillation never hides from the
    // first Simpson estimate
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a))));
    cplx total(0.0, 0.0);
    for (int p = 0; p < panels; ++p) {
        const double pa = a + (b - a) * p / panels;
        const double pb = a + (b - a) * (p + 1) / panels;
        const cplx fa = f(pa), fb = f(pb), fm = f(0.5 * (pa + pb));
        const cplx whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_step(f, pa, pb, fa, fm, fb, whole, tol / panels, 36);
    }
    return total;
}

} // namespace

std::vector<cplx> fresnel_coeffs(std::size_t n) {
    std::vector<cplx> c(n);
    if (n == 0) return c;
    c[0] = cplx(0.0, 0.5);
    for (std::size_t j = 0; j + 1 < n; ++j)
        c[j + 1] = c[j] * cplx(0.0, -1.0) * (2.0 * j + 1.0) / 2.0;
    return c;
}

FresnelExpansion FresnelExpansion::make(std::size_t order, double crossover) {
    if (order < 1) throw DomainError("FresnelExpansion: order must be positive");
    FresnelExpansion e;
    e.order = order;
    e.crossover = crossover;
    e.coefficients = fresnel_coeffs(order);
    return e;
}

cplx fresnel_H(double x, const FresnelOptions& opts) {
    if (x < 0.0) throw DomainError("fresnel_H: negative argument");
    if (x >= opts.crossover) {
        const auto c = fresnel_coeffs(opts.order + 1);
        cplx sum(0.0, 0.0);
        double xp = x;
        for (std::size_t j = 0; j < opts.order; ++j) {
            sum += c[j] / xp;
            xp *= x * x;
        }
        const double remainder = 2.0 * std::abs(c[opts.order]) / xp;
        if (remainder > opts.series_tolerance) {
            std::ostringstream msg;
            msg << "fresnel_H: series remainder bound " << remainder
                << " at x = " << x << " exceeds tolerance "
                << opts.series_tolerance;
            throw ConvergenceError(msg.str());
        }
        return sum * std::exp(cplx(0.0, x * x));
    }
    const cplx seg = adaptive_quad(
        [](double t) { return std::exp(cplx(0.0, t * t)); }, 0.0, x,
        opts.quad_tolerance);
    return fresnel_H0() - seg;
}

cplx fresnel_segment(double x1, double x2, const FresnelOptions& opts) {
    // int_0^x e^{iu^2} du is odd in x
    auto C = [&](double x) {
        const double ax = std::abs(x);
        const cplx v = fresnel_H0() - fresnel_H(ax, opts);
        return (x < 0.0) ? -v : v;
    };
    return C(x2) - C(x1);
}

StationaryPhaseReport stationary_phase_check(const SampledProfile& g,
                                             double eps, double a, double nu) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw DomainError("stationary_phase_check: eps must lie in (0,1)");
    if (!(a > 0.0) || !(nu > 0.0))
        throw DomainError("stationary_phase_check: a and nu must be positive");
    if (a * eps > nu * (1.0 + 1e-12))
        throw DomainError("stationary_phase_check: |a eps| exceeds nu");
    if (g.values[0] != cplx(0.0, 0.0))
        throw DomainError("stationary_phase_check: g(0) must vanish");
    if (g.grid.length() + 1e-12 < a * eps)
        throw RangeError("stationary_phase_check: g not sampled up to a*eps");

    // Piecewise-linear g on its own nodes mapped to u = (arg)/eps; each
    // segment integrates e^{iu^2}(alpha + beta u) exactly through Fresnel
    // kernels, so no oscillation-resolving substeps are needed even when
    // a = nu/eps is huge.
    const FresnelOptions fo{};
    const double du = g.grid.step / eps;
    const auto segs = static_cast<std::size_t>(std::ceil(a / du - 1e-12));
    cplx total(0.0, 0.0);
    for (std::size_t m = 0; m < segs; ++m) {
        const double p = du * static_cast<double>(m);
        const double q = std::min(a, du * static_cast<double>(m + 1));
        const cplx gp = g.values[m];
        const cplx gq_knot = g.values[std::min(m + 1, g.grid.count)];
        const cplx slope = (gq_knot - gp) / du;
        const cplx alpha = gp - slope * p;
        const cplx seg0 = fresnel_segment(p, q, fo);
        const cplx seg1 = (std::exp(cplx(0.0, q * q)) - std::exp(cplx(0.0, p * p))) /
                          cplx(0.0, 2.0);
        total += alpha * seg0 + slope * seg1;
        if (q >= a) break;
    }
    StationaryPhaseReport rep;
    rep.integral = total;
    rep.eps = eps;
    rep.a = a;
    rep.ratio = std::abs(total) / eps;
    return rep;
}

LineProfile sample_line(const LineGrid& g,
                        const std::function<cplx(double)>& fn) {
    LineProfile out;
    out.grid = g;
    out.values.resize(g.size());
    for (std::size_t j = 0; j < out.values.size(); ++j)
        out.values[j] = fn(g.node(j));
    return out;
}

double line_l2_norm(const LineProfile& h) {
    double acc = 0.0;
    for (std::size_t j = 0; j < h.values.size(); ++j) {
        const double wt = (j == 0 || j + 1 == h.values.size()) ? 0.5 : 1.0;
        acc += wt * std::norm(h.values[j]);
    }
    return std::sqrt(acc * h.grid.step);
}

namespace {

struct LineSpectrum {
    SpectralGrid grid;
    std::vector<cplx> values;

    cplx interp(double xi) const {
        const double pos = (xi + grid.half_width()) / grid.step;
        if (pos < 0.0 || pos > static_cast<double>(grid.size() - 1))
            return cplx(0.0, 0.0);
        const auto i = std::min(static_cast<std::size_t>(pos), grid.size() - 2);
        const double frac = pos - static_cast<double>(i);
        return values[i] + frac * (values[i + 1] - values[i]);
    }
};

LineSpectrum dft_line(const LineProfile& h, double xi_max) {
    const double span = h.grid.x_max() - h.grid.x_min + h.grid.step;
    const double xi_step = pi / span;
    if (xi_max <= 0.0) xi_max = pi / h.grid.step;
    LineSpectrum s;
    s.grid = SpectralGrid::from_half_width(xi_max, xi_step);
    s.values.resize(s.grid.size());
    const double c = h.grid.step / std::sqrt(2.0 * pi);
    for (std::size_t m = 0; m < s.grid.size(); ++m) {
        const double xi = s.grid.node(m);
        const cplx rot = std::polar(1.0, -xi * h.grid.step);
        cplx ph = std::polar(1.0, -xi * h.grid.x_min);
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < h.values.size(); ++j) {
            if (j % 8192 == 8191) ph = std::polar(1.0, -xi * h.grid.node(j));
            const double wt = (j == 0 || j + 1 == h.values.size()) ? 0.5 : 1.0;
            acc += wt * h.values[j] * ph;
            ph *= rot;
        }
        s.values[m] = acc * c;
    }
    return s;
}

LineProfile evolve_spectrum(const LineSpectrum& s, const LineGrid& grid,
                            double t) {
    LineProfile out;
    out.grid = grid;
    out.values.assign(grid.size(), cplx(0.0, 0.0));
    const double c = s.grid.step / std::sqrt(2.0 * pi);
    for (std::size_t m = 0; m < s.grid.size(); ++m) {
        const double xi = s.grid.node(m);
        const double wt = (m == 0 || m + 1 == s.grid.size()) ? 0.5 : 1.0;
        const cplx amp = s.values[m] * std::polar(wt * c, -t * xi * xi);
        if (std::abs(amp) < 1e-300) continue;
        const cplx rot = std::polar(1.0, xi * grid.step);
        cplx ph = std::polar(1.0, xi * grid.x_min);
        for (std::size_t j = 0; j < out.values.size(); ++j) {
            if (j % 8192 == 8191) ph = std::polar(1.0, xi * grid.node(j));
            out.values[j] += amp * ph;
            ph *= rot;
        }
    }
    return out;
}

void check_walls(const LineProfile& u, const char* who) {
    double total = 0.0, walls = 0.0;
    const std::size_t n = u.values.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double v = std::norm(u.values[j]);
        total += v;
        if (j < 5 || j + 5 >= n) walls += v;
    }
    if (total > 0.0 && walls > 1e-6 * total)
        throw DomainError(std::string(who) +
                          ": wave packet reached the grid walls");
}

} // namespace

LineProfile free_evolution_line(const LineProfile& h, double t,
                                double xi_max) {
    auto s = dft_line(h, xi_max);
    auto out = evolve_spectrum(s, h.grid, t);
    check_walls(out, "free_evolution_line");
    return out;
}

double free_asymptotic_defect(const LineProfile& h, double t, double xi_max) {
    if (!(t >= 1.0))
        throw DomainError("free_asymptotic_defect: t must be at least 1");
    auto s = dft_line(h, xi_max);
    auto evolved = evolve_spectrum(s, h.grid, t);
    check_walls(evolved, "free_asymptotic_defect");

    const cplx front = 1.0 / cplx(1.0, 1.0);
    const double rt = std::sqrt(t);
    double acc = 0.0;
    for (std::size_t j = 0; j < evolved.values.size(); ++j) {
        const double x = h.grid.node(j);
        const cplx cmp = front * std::polar(1.0 / rt, x * x / (4.0 * t)) *
                         s.interp(x / (2.0 * t));
        const double wt = (j == 0 || j + 1 == evolved.values.size()) ? 0.5 : 1.0;
        acc += wt * std::norm(evolved.values[j] - cmp);
    }
    return std::sqrt(acc * h.grid.step);
}

UniformBoundReport uniform_bound_check(const LineProfile& h,
                                       const std::vector<double>& t_values,
                                       double alpha, double beta, double k_max,
                                       double k_step, double xi_max) {
    if (!(alpha < beta))
        throw DomainError("uniform_bound_check: alpha must be below beta");
    auto s = dft_line(h, xi_max);
    UniformBoundReport rep;
    rep.t_values = t_values;
    for (double t : t_values) {
        if (!(t > 0.0))
            throw DomainError("uniform_bound_check: t values must be positive");
        const double x_lo = alpha * t, x_hi = beta * t;
        const double freq = std::max(std::abs(alpha), std::abs(beta)) / 2.0 +
                            k_max + 1.0;
        const double hs = 0.2 / freq;
        const auto n = static_cast<std::size_t>(
                           std::ceil((x_hi - x_lo) / hs)) +
                       1;
        const double hx = (x_hi - x_lo) / static_cast<double>(n - 1);
        const double rt = std::sqrt(t);
        // cache the chirped profile samples, then sweep k
        std::vector<cplx> prof(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double x = x_lo + hx * static_cast<double>(j);
            prof[j] = std::polar(1.0 / rt, x * x / (4.0 * t)) *
                      s.interp(x / (2.0 * t));
        }
        double sup = 0.0;
        const auto kg = SpectralGrid::from_half_width(k_max, k_step);
        for (std::size_t i = 0; i < kg.size(); ++i) {
            const double k = kg.node(i);
            const cplx rot = std::polar(1.0, k * hx);
            cplx ph = std::polar(1.0, k * x_lo);
            cplx acc(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                const double wt = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
                acc += wt * prof[j] * ph;
                ph *= rot;
            }
            sup = std::max(sup, std::abs(acc * hx));
        }
        rep.sup_per_t.push_back(sup);
    }
    double mx = 0.0, mn = std::numeric_limits<double>::infinity();
    for (double v : rep.sup_per_t) {
        mx = std::max(mx, v);
        mn = std::min(mn, v);
    }
    rep.global_sup = mx;
    rep.flatness = (mn > 0.0) ? (mx - mn) / mn : 0.0;
    return rep;
}

} // namespace kreinwave
