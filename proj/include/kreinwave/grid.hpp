#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "kreinwave/errors.hpp"

namespace kreinwave {

using cplx = std::complex<double>;

/// Uniform grid on [0, step*count] with nodes r_j = j*step, j = 0..count.
struct RadialGrid {
    double step = 0.0;
    std::size_t count = 0; // index of the last node, >= 2

    RadialGrid() = default;
    RadialGrid(double step_, std::size_t count_);

    std::size_t size() const { return count + 1; }
    double node(std::size_t j) const { return step * static_cast<double>(j); }
    double length() const { return step * static_cast<double>(count); }

    bool operator==(const RadialGrid&) const = default;
};

/// Uniform grid symmetric about 0: nodes k_i = (i - half_count)*step,
/// i = 0..2*half_count. Zero is always a node.
struct SpectralGrid {
    double step = 0.0;
    std::size_t half_count = 0;

    SpectralGrid() = default;
    SpectralGrid(double step_, std::size_t half_count_);

    /// Grid whose half width is the closest multiple of `step` to `k_max`.
    static SpectralGrid from_half_width(double k_max, double step_);

    std::size_t size() const { return 2 * half_count + 1; }
    double node(std::size_t i) const {
        return step * (static_cast<double>(i) - static_cast<double>(half_count));
    }
    double half_width() const { return step * static_cast<double>(half_count); }
    std::size_t zero_index() const { return half_count; }
    /// Index of -k_i.
    std::size_t mirror(std::size_t i) const { return 2 * half_count - i; }

    bool operator==(const SpectralGrid&) const = default;
};

/// Complex samples on a RadialGrid. If declared_support is set, values are
/// exactly zero for r_j > declared_support.
struct SampledProfile {
    RadialGrid grid;
    std::vector<cplx> values;
    std::optional<double> declared_support;

    SampledProfile() = default;
    SampledProfile(RadialGrid g, std::vector<cplx> v,
                   std::optional<double> support = std::nullopt);

    /// Linear interpolation; zero beyond the last node.
    cplx interp(double r) const;
    bool is_real(double tol = 0.0) const;
};

SampledProfile sample_profile(const RadialGrid& g,
                              const std::function<cplx(double)>& fn,
                              std::optional<double> support = std::nullopt);

struct PointMass {
    double location = 0.0;
    double weight = 0.0;
};

/// Absolutely continuous density w(k_i) on a SpectralGrid plus a finite list
/// of point masses.
struct SpectralMeasure {
    SpectralGrid grid;
    std::vector<double> density;
    std::vector<PointMass> point_masses;

    SpectralMeasure() = default;
    SpectralMeasure(SpectralGrid g, std::vector<double> w,
                    std::vector<PointMass> masses = {});

    /// The measure 2*sigma (doubled density and mass weights).
    SpectralMeasure doubled() const;
    /// Discrete total of 1/(1+k^2) dsigma; finite on any grid, checked
    /// against `ceiling` as a sanity bound.
    double cauchy_total(double ceiling = 1e12) const;
};

/// Complex samples on a SpectralGrid.
struct SpectralFunction {
    SpectralGrid grid;
    std::vector<cplx> values;

    SpectralFunction() = default;
    SpectralFunction(SpectralGrid g, std::vector<cplx> v);

    cplx interp(double k) const; // linear, zero outside the grid
};

} // namespace kreinwave
