#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kreinwave/maximal.hpp"
#include "kreinwave/quadrature.hpp"
#include "kreinwave/transforms.hpp"
#include "oracles.hpp"

using namespace kreinwave;

namespace {

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

SampledProfile box_profile(const RadialGrid& g, double hi) {
    return sample_profile(g, [hi](double r) {
        return (r <= hi) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    });
}

} // namespace

TEST_CASE("point_set_diameter matches brute force") {
    std::mt19937_64 rng(4242);
    auto draw = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 4.0 - 2.0;
    };
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 1 + rng() % 60;
        std::vector<cplx> pts(n);
        for (auto& p : pts) p = cplx(draw(), draw());
        if (rep % 5 == 0) // degenerate sets: duplicates and collinear runs
            for (std::size_t i = 1; i < n; i += 2) pts[i] = pts[0];
        if (rep % 7 == 0)
            for (std::size_t i = 0; i < n; ++i)
                pts[i] = cplx(static_cast<double>(i), 2.0 * i + 1.0);
        double brute = 0.0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                brute = std::max(brute, std::abs(pts[a] - pts[b]));
        CHECK(point_set_diameter(pts) == doctest::Approx(brute).epsilon(1e-12));
    }
    CHECK(point_set_diameter(std::vector<cplx>{}) == 0.0);
    CHECK(point_set_diameter(std::vector<cplx>{cplx(1.0, 2.0)}) == 0.0);
}

TEST_CASE("dyadic decomposition") {
    RadialGrid rg(1e-3, 9000);
    auto kg = SpectralGrid::from_half_width(6.0, 0.25);
    auto sol = integrate_krein(zero_coeff(rg), rg, kg);

    SUBCASE("zero input gives zero blocks") {
        auto f = sample_profile(rg, [](double) { return cplx(0.0, 0.0); });
        auto d = decompose_dyadic(f, sol, 3);
        for (const auto& b : d.blocks)
            for (const auto& v : b.values) CHECK(v == cplx(0.0, 0.0));
    }

    SUBCASE("free system at k = 0 reduces to block lengths") {
        auto f = box_profile(rg, 4.0);
        auto d = decompose_dyadic(f, sol, 3);
        const auto i0 = kg.zero_index();
        CHECK(d.blocks[0].values[i0].real() == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(d.blocks[1].values[i0].real() == doctest::Approx(2.0).epsilon(1e-6));
        CHECK(std::abs(d.blocks[2].values[i0]) < 1e-3); // ramp tail at r = 4
    }

    SUBCASE("telescoping against the full transform") {
        auto f = sample_profile(rg, [](double r) {
            return cplx(std::sin(1.7 * r) * std::exp(-0.2 * r), 0.0);
        });
        auto d = decompose_dyadic(f, sol, 3);
        auto full = forward_P(f, sol, 8.0);
        for (std::size_t i = 0; i < kg.size(); i += 3) {
            cplx sum = d.head.values[i];
            for (const auto& b : d.blocks) sum += b.values[i];
            CHECK(std::abs(sum - full.values[i]) < 1e-12);
        }
    }

    SUBCASE("blockwise Plancherel") {
        auto kgw = SpectralGrid::from_half_width(200.0, 0.02);
        auto solw = integrate_krein(zero_coeff(rg), rg, kgw);
        auto mw = spectral_density(szego(solw));
        // concentrated well inside [2,4] so block cutoffs add no slow tails
        auto f = sample_profile(rg, [](double r) {
            return cplx(std::exp(-4.0 * (r - 3.0) * (r - 3.0)), 0.0);
        });
        auto d = decompose_dyadic(f, solw, 3);
        for (std::size_t b = 1; b <= 3; ++b) {
            const double lhs = std::pow(norm_L2_sigma(d.blocks[b - 1], mw), 2);
            std::vector<cplx> sq(rg.size());
            for (std::size_t j = 0; j < sq.size(); ++j)
                sq[j] = std::norm(f.values[j]);
            const double rhs =
                quad_radial(SampledProfile(rg, sq), std::ldexp(1.0, b - 1),
                            std::ldexp(1.0, b))
                    .real();
            if (rhs > 1e-3)
                CHECK(std::abs(lhs - rhs) / rhs < 1e-3);
        }
    }

    SUBCASE("range error") {
        auto f = box_profile(rg, 4.0);
        CHECK_THROWS_AS(decompose_dyadic(f, sol, 5), RangeError);
    }
}

TEST_CASE("maximal_integer") {
    RadialGrid rg(1e-3, 8000);
    auto kg = SpectralGrid::from_half_width(20.0, 0.05);
    auto sol = integrate_krein(zero_coeff(rg), rg, kg);
    auto m = spectral_density(szego(sol));

    SUBCASE("free box matches |2 sin(k/2)/k|") {
        auto f = box_profile(rg, 1.0);
        auto rep = maximal_integer(f, sol, m, 8);
        for (std::size_t i = 0; i < kg.size(); i += 17) {
            const double k = kg.node(i);
            const double expect =
                (k == 0.0) ? 1.0 : std::abs(2.0 * std::sin(0.5 * k) / k);
            CHECK(rep.M[i] == doctest::Approx(expect).epsilon(2e-3));
        }
        CHECK(rep.ratio < 25.0);
    }

    SUBCASE("sup dominates the final partial integral") {
        auto f = sample_profile(rg, [](double r) {
            return cplx(std::cos(2.0 * r) / (1.0 + r), 0.0);
        });
        auto rep = maximal_integer(f, sol, m, 8);
        auto F = forward_P(f, sol, 8.0);
        for (std::size_t i = 0; i < kg.size(); i += 29)
            CHECK(rep.M[i] >= std::abs(F.values[i]) - 1e-12);
    }

    SUBCASE("degenerate input") {
        auto z = sample_profile(rg, [](double) { return cplx(0.0, 0.0); });
        CHECK_THROWS_AS(maximal_integer(z, sol, m, 4), DegenerateInputError);
    }

    SUBCASE("ratio stays below the suite ceiling on seeded random data") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto f = random_log_profile(rg, seed, 3);
            auto rep = maximal_integer(f, sol, m, 8);
            CHECK(rep.L == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(rep.ratio <= 25.0);
        }
    }
}

TEST_CASE("maximal_continuous dominates maximal_integer") {
    RadialGrid rg(1e-3, 10000);
    auto kg = SpectralGrid::from_half_width(12.0, 0.1);
    auto sol = integrate_krein(gauss_coeff(rg), rg, kg);
    auto m = spectral_density(szego(sol));
    auto f = random_log_profile(rg, 77, 2);
    auto ri = maximal_integer(f, sol, m, 4);
    auto rc = maximal_continuous(f, sol, m, false);
    for (std::size_t i = 0; i < kg.size(); ++i)
        CHECK(rc.M[i] >= ri.M[i] - 1e-15);

    auto rw = maximal_continuous(f, sol, m, true);
    CHECK(rw.weighted);
    CHECK(rw.ratio <= 25.0);
    CHECK(rw.L > rc.L); // (1 + K) L exceeds L
}

TEST_CASE("maximal_continuous of the free box at k = 0") {
    RadialGrid rg(1e-3, 2000);
    auto kg = SpectralGrid::from_half_width(5.0, 0.5);
    auto sol = integrate_krein(zero_coeff(rg), rg, kg);
    auto m = spectral_density(szego(sol));
    auto f = box_profile(rg, 1.0);
    auto rep = maximal_continuous(f, sol, m, false);
    CHECK(rep.M[kg.zero_index()] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("tail_oscillation") {
    RadialGrid rg(1e-3, 10000);
    auto kg = SpectralGrid::from_half_width(10.0, 0.25);

    SUBCASE("free coefficient: identically zero") {
        auto sol = integrate_krein(zero_coeff(rg), rg, kg);
        auto m = spectral_density(szego(sol));
        auto rep = tail_oscillation(sol, m, 0.0);
        for (double v : rep.M) CHECK(v == 0.0);
        CHECK(rep.norm_M_sq == 0.0);
        CHECK(rep.ratio == 0.0);
    }

    SUBCASE("exactly zero beyond the support, nonincreasing before it") {
        auto sol = integrate_krein(gauss_coeff(rg), rg, kg);
        auto m = spectral_density(szego(sol));
        double prev = std::numeric_limits<double>::infinity();
        for (double rho : {0.0, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 9.0}) {
            auto rep = tail_oscillation(sol, m, rho);
            const double norm = std::sqrt(rep.norm_M_sq);
            CHECK(norm <= prev + 1e-14);
            prev = norm;
            if (rho >= 8.0) {
                CHECK(rep.norm_M_sq == 0.0);
                CHECK(rep.ratio == 0.0);
            } else {
                CHECK(rep.ratio < 50.0);
            }
        }
        CHECK_THROWS_AS(tail_oscillation(sol, m, 11.0), RangeError);
    }
}

TEST_CASE("random_log_profile is deterministic and normalized") {
    RadialGrid rg(1e-3, 9000);
    auto f1 = random_log_profile(rg, 2024, 3);
    auto f2 = random_log_profile(rg, 2024, 3);
    for (std::size_t j = 0; j < rg.size(); j += 101)
        CHECK(f1.values[j] == f2.values[j]);
    CHECK(log_weight_functional(f1) == doctest::Approx(1.0).epsilon(1e-9));
    auto f3 = random_log_profile(rg, 2025, 3);
    bool differs = false;
    for (std::size_t j = 0; j < rg.size() && !differs; ++j)
        differs = f1.values[j] != f3.values[j];
    CHECK(differs);
    // support respected
    for (std::size_t j = 0; j < rg.size(); ++j)
        if (rg.node(j) > 8.0) CHECK(f1.values[j] == cplx(0.0, 0.0));
}
