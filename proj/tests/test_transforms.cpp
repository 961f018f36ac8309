#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kreinwave/quadrature.hpp"
#include "kreinwave/transforms.hpp"
#include "oracles.hpp"

using namespace kreinwave;

namespace {

const double pi = 3.14159265358979323846;

RadialGrid half_grid(const RadialGrid& g) {
    return RadialGrid(g.step * 0.5, g.count * 2);
}

Coefficient zero_coeff(const RadialGrid& g) {
    return Coefficient(
        sample_profile(half_grid(g), [](double) { return cplx(0.0, 0.0); }, 0.0));
}

Coefficient gauss_coeff(const RadialGrid& g, double amp = 0.3) {
    return Coefficient(sample_profile(
        half_grid(g),
        [=](double r) { return cplx(amp * std::exp(-(r - 2.0) * (r - 2.0)), 0.0); },
        8.0));
}

} // namespace

TEST_CASE("forward_P on the free system") {
    RadialGrid rg(1e-3, 2000);
    auto kg = SpectralGrid::from_half_width(10.0, 0.25);
    auto sol = integrate_krein(zero_coeff(rg), rg, kg);
    auto f = sample_profile(rg, [](double r) {
        return (r <= 1.0) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    });
    auto F = forward_P(f, sol, 1.0);
    CHECK(std::abs(F.values[kg.zero_index()] - 1.0) < 1e-9);
    for (std::size_t i = 0; i < kg.size(); i += 5) {
        const double k = kg.node(i);
        if (k == 0.0) continue;
        const cplx expect = (std::polar(1.0, k) - 1.0) / cplx(0.0, k);
        CHECK(std::abs(F.values[i] - expect) < 1e-7);
    }

    auto zero = sample_profile(rg, [](double) { return cplx(0.0, 0.0); });
    auto Fz = forward_P(zero, sol, 1.0);
    for (const auto& v : Fz.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("forward_P linearity") {
    RadialGrid rg(2e-3, 1500);
    auto kg = SpectralGrid::from_half_width(4.0, 0.5);
    auto sol = integrate_krein(gauss_coeff(rg), rg, kg);
    auto f = sample_profile(rg, [](double r) { return cplx(std::sin(r), 0.0); });
    auto g = sample_profile(rg, [](double r) { return cplx(0.0, std::cos(2 * r)); });
    const cplx al(1.3, -0.2), be(0.4, 0.9);
    std::vector<cplx> combo(rg.size());
    for (std::size_t j = 0; j < combo.size(); ++j)
        combo[j] = al * f.values[j] + be * g.values[j];
    auto Fc = forward_P(SampledProfile(rg, combo), sol, 3.0);
    auto Ff = forward_P(f, sol, 3.0);
    auto Fg = forward_P(g, sol, 3.0);
    for (std::size_t i = 0; i < kg.size(); ++i)
        CHECK(std::abs(Fc.values[i] - al * Ff.values[i] - be * Fg.values[i]) <
              1e-12);
}

TEST_CASE("plancherel defect, free box on a wide spectral window") {
    RadialGrid rg(1e-3, 1100);
    auto kg = SpectralGrid::from_half_width(200.0, 0.02);
    auto sol = integrate_krein(zero_coeff(rg), rg, kg);
    auto m = spectral_density(szego(sol));
    auto f = sample_profile(rg, [](double r) {
        return (r <= 1.0) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    });
    const double defect = plancherel_defect(f, sol, m, 1.0);
    CHECK(defect < 1e-2); // dominated by the K_max truncation of |F|^2 ~ 1/k^2
    CHECK(defect > 1e-5);

    // scaling invariance
    std::vector<cplx> scaled(f.values);
    for (auto& v : scaled) v *= cplx(0.0, 3.0);
    const double d2 = plancherel_defect(SampledProfile(rg, scaled), sol, m, 1.0);
    CHECK(d2 == doctest::Approx(defect).epsilon(1e-10));

    auto zero = sample_profile(rg, [](double) { return cplx(0.0, 0.0); });
    CHECK_THROWS_AS(plancherel_defect(zero, sol, m, 1.0), DegenerateInputError);
}

TEST_CASE("plancherel defect, free gaussian at K_max = 50") {
    RadialGrid rg(1e-3, 6000);
    auto kg = SpectralGrid::from_half_width(50.0, 0.05);
    auto sol = integrate_krein(zero_coeff(rg), rg, kg);
    auto m = spectral_density(szego(sol));
    auto f = sample_profile(rg, [](double r) {
        return cplx(std::exp(-(r - 3.0) * (r - 3.0)), 0.0);
    });
    CHECK(plancherel_defect(f, sol, m, 6.0) < 1e-6);
}

TEST_CASE("plancherel defect for a nonzero coefficient") {
    RadialGrid rg(1e-3, 10000);
    auto kg = SpectralGrid::from_half_width(50.0, 0.05);
    auto sol = integrate_krein(gauss_coeff(rg), rg, kg, 0.05);
    auto m = spectral_density(szego(sol));
    auto f = sample_profile(rg, [](double r) {
        return cplx(std::exp(-(r - 3.0) * (r - 3.0)), 0.0);
    });
    CHECK(plancherel_defect(f, sol, m, 8.0) < 1e-3);
}

TEST_CASE("split_odd_extension invariants and spectral localization") {
    RadialGrid rg(0.01, 2000);
    // width 1.5 keeps 99% of the transform mass within two units of +5
    auto f = sample_profile(rg, [](double x) {
        const double u = (x - 10.0) / 1.5;
        return cplx(std::sin(5.0 * x) * std::exp(-u * u), 0.0);
    });
    auto sd = split_odd_extension(f);

    // structural invariants hold bin-wise
    const auto& xg = sd.xi_grid;
    for (std::size_t i = 0; i < xg.size(); ++i) {
        const double xi = xg.node(i);
        if (xi <= 0.0) CHECK(sd.f_hat_plus.values[i] == cplx(0.0, 0.0));
        if (xi >= 0.0) CHECK(sd.f_hat_minus.values[i] == cplx(0.0, 0.0));
        CHECK(sd.f_hat_odd.values[i] ==
              sd.f_hat_plus.values[i] + sd.f_hat_minus.values[i]);
        // real + odd data: transform purely imaginary with exact odd mirror
        CHECK(sd.f_hat_odd.values[i].real() == 0.0);
        CHECK(sd.f_hat_odd.values[xg.mirror(i)].imag() ==
              -sd.f_hat_odd.values[i].imag());
    }
    CHECK(sd.f_hat_odd.values[xg.zero_index()] == cplx(0.0, 0.0));

    // mass of f_hat_plus concentrated near xi = +5
    double total = 0.0, near = 0.0;
    for (std::size_t i = 0; i < xg.size(); ++i) {
        const double xi = xg.node(i);
        const double m2 = std::norm(sd.f_hat_plus.values[i]);
        total += m2;
        if (std::abs(xi - 5.0) < 2.0) near += m2;
    }
    CHECK(near / total > 0.99);

    // Parseval: ||f_hat_plus||^2 + ||f_hat_minus||^2 = ||f_o||^2 = 2 ||f||^2
    const double np = spectral_l2_norm(sd.f_hat_plus);
    const double nm = spectral_l2_norm(sd.f_hat_minus);
    double fsq = 0.0;
    for (std::size_t j = 0; j < rg.size(); ++j)
        fsq += std::norm(f.values[j]) * ((j == 0 || j == rg.count) ? 0.5 : 1.0);
    fsq *= rg.step;
    CHECK((np * np + nm * nm) / (2.0 * fsq) == doctest::Approx(1.0).epsilon(1e-10));

    // degenerate and invalid inputs
    auto zero = sample_profile(rg, [](double) { return cplx(0.0, 0.0); });
    auto sz = split_odd_extension(zero);
    for (const auto& v : sz.f_hat_odd.values) CHECK(v == cplx(0.0, 0.0));
    auto bad = sample_profile(rg, [](double) { return cplx(0.0, 1.0); });
    CHECK_THROWS_AS(split_odd_extension(bad), DomainError);
}

TEST_CASE("psi transforms on the free system reduce to the sine transform") {
    RadialGrid rg(2e-3, 10000); // x up to 10
    auto kg = SpectralGrid::from_half_width(50.0, 0.05);
    auto sol = integrate_krein(zero_coeff(rg), rg, kg);
    auto m2 = spectral_density(szego(sol)).doubled();
    const auto xg = dirac_x_grid(sol);
    auto f = sample_profile(xg, [](double x) {
        return cplx(std::exp(-(x - 5.0) * (x - 5.0)), 0.0);
    });

    SUBCASE("forward matches the independent sine-transform oracle") {
        auto F = forward_psi_structured(f, sol);
        std::vector<double> ks = {0.5, 1.0, 2.0, 3.5};
        auto ora = oracles::sine_transform(
            f.values, xg.step, ks);
        for (std::size_t t = 0; t < ks.size(); ++t) {
            const auto i = static_cast<std::size_t>(
                std::llround((ks[t] + kg.half_width()) / kg.step));
            CHECK(std::abs(F.values[i] - ora[t]) < 1e-9);
        }
    }

    SUBCASE("round trip is the identity within 1e-4") {
        auto F = forward_psi_structured(f, sol);
        auto back = inverse_psi_structured(F, sol, m2);
        double worst = 0.0;
        for (std::size_t j = 0; j < xg.size(); ++j)
            worst = std::max(worst, std::abs(back.values[j] - f.values[j]));
        CHECK(worst < 1e-4);
    }

    SUBCASE("Plancherel ratio within 1e-3") {
        auto F = forward_psi_structured(f, sol);
        const double ratio = std::pow(norm_L2_sigma(F, m2) / profile_l2_norm(f), 2);
        CHECK(ratio > 1.0 - 1e-3);
        CHECK(ratio < 1.0 + 1e-3);
    }

    SUBCASE("zero maps to zero") {
        auto zf = sample_profile(xg, [](double) { return cplx(0.0, 0.0); });
        auto F = forward_psi_structured(zf, sol);
        for (const auto& v : F.values) CHECK(v == cplx(0.0, 0.0));
    }
}

TEST_CASE("dense and structured psi transforms agree") {
    RadialGrid rg(1e-2, 1200);
    auto kg = SpectralGrid::from_half_width(14.0, 0.1);
    auto sol = integrate_krein(gauss_coeff(rg), rg, kg);
    auto m2 = spectral_density(szego(sol)).doubled();
    auto eig = dirac_eigenfunctions(sol);
    auto f = sample_profile(eig.x_grid, [](double x) {
        return cplx(std::exp(-2.0 * (x - 3.0) * (x - 3.0)), 0.0);
    });
    auto Fd = forward_psi(f, eig, m2);
    auto Fs = forward_psi_structured(f, sol);
    for (std::size_t i = 0; i < kg.size(); i += 3)
        CHECK(std::abs(Fd.values[i] - Fs.values[i]) < 1e-8);

    // both invert the forward transform; the dense path integrates in k with
    // Simpson and carries its O((x dk)^4) error, the trapezoid path is
    // spectrally accurate on integrands that die out at the grid edge
    auto ud = inverse_psi(Fd, eig, m2);
    auto us = inverse_psi_structured(Fd, sol, m2);
    for (std::size_t j = 0; j < eig.x_grid.size(); j += 17) {
        CHECK(std::abs(ud.values[j] - f.values[j]) < 2e-4);
        CHECK(std::abs(us.values[j] - f.values[j]) < 1e-6);
    }
}

TEST_CASE("psi Plancherel for a nonzero coefficient") {
    RadialGrid rg(2e-3, 10000);
    auto kg = SpectralGrid::from_half_width(50.0, 0.05);
    auto sol = integrate_krein(gauss_coeff(rg), rg, kg, 0.05);
    auto m2 = spectral_density(szego(sol)).doubled();
    const auto xg = dirac_x_grid(sol);
    auto f = sample_profile(xg, [](double x) {
        return cplx(std::exp(-(x - 5.0) * (x - 5.0)), 0.0);
    });
    auto F = forward_psi_structured(f, sol);
    const double ratio = std::pow(norm_L2_sigma(F, m2) / profile_l2_norm(f), 2);
    CHECK(ratio > 1.0 - 1e-3);
    CHECK(ratio < 1.0 + 1e-3);
}

TEST_CASE("E-system transform") {
    RadialGrid rg(2e-3, 6000);
    auto kg = SpectralGrid::from_half_width(50.0, 0.05);
    auto sol = integrate_krein(zero_coeff(rg), rg, kg);
    auto m = spectral_density(szego(sol));
    auto eig = dirac_eigenfunctions(sol);
    auto f = sample_profile(eig.x_grid, [](double x) {
        return cplx(std::exp(-(x - 3.0) * (x - 3.0)), 0.0);
    });

    SUBCASE("free system: isometry against sigma within 1e-6") {
        auto F = forward_E(f, eig, m);
        const double n = norm_L2_sigma(F, m);
        const double fn = profile_l2_norm(f);
        CHECK(std::abs(n * n - fn * fn) / (fn * fn) < 1e-6);
    }

    SUBCASE("zero and linearity") {
        auto zf = sample_profile(eig.x_grid, [](double) { return cplx(0.0, 0.0); });
        auto Fz = forward_E(zf, eig, m);
        for (const auto& v : Fz.values) CHECK(v == cplx(0.0, 0.0));

        auto g = sample_profile(eig.x_grid, [](double x) {
            return cplx(0.0, std::exp(-x * x));
        });
        const cplx al(0.3, 1.1), be(-0.8, 0.1);
        std::vector<cplx> combo(eig.x_grid.size());
        for (std::size_t j = 0; j < combo.size(); ++j)
            combo[j] = al * f.values[j] + be * g.values[j];
        auto Fc = forward_E(SampledProfile(eig.x_grid, combo), eig, m);
        auto Ff = forward_E(f, eig, m);
        auto Fg = forward_E(g, eig, m);
        for (std::size_t i = 0; i < kg.size(); i += 11)
            CHECK(std::abs(Fc.values[i] - al * Ff.values[i] - be * Fg.values[i]) <
                  1e-12);
    }
}
