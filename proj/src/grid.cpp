#include "kreinwave/grid.hpp"

#include <cmath>
#include <utility>

namespace kreinwave {

RadialGrid::RadialGrid(double step_, std::size_t count_)
    : step(step_), count(count_) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw DomainError("RadialGrid: step must be positive");
    if (count < 2)
        throw DomainError("RadialGrid: count must be at least 2");
}

SpectralGrid::SpectralGrid(double step_, std::size_t half_count_)
    : step(step_), half_count(half_count_) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw DomainError("SpectralGrid: step must be positive");
    if (half_count < 1)
        throw DomainError("SpectralGrid: half_count must be at least 1");
}

SpectralGrid SpectralGrid::from_half_width(double k_max, double step_) {
    if (!(step_ > 0.0) || !(k_max > 0.0))
        throw DomainError("SpectralGrid: k_max and step must be positive");
    auto m = static_cast<std::size_t>(std::llround(k_max / step_));
    if (m < 1) m = 1;
    return SpectralGrid(step_, m);
}

SampledProfile::SampledProfile(RadialGrid g, std::vector<cplx> v,
                               std::optional<double> support)
    : grid(g), values(std::move(v)), declared_support(support) {
    if (values.size() != grid.size())
        throw ShapeError("SampledProfile: values length must equal grid size");
    if (declared_support) {
        if (*declared_support < 0.0)
            throw DomainError("SampledProfile: declared_support must be nonnegative");
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (grid.node(j) > *declared_support && values[j] != cplx(0.0, 0.0))
                throw DomainError(
                    "SampledProfile: values must vanish beyond declared_support");
        }
    }
}

cplx SampledProfile::interp(double r) const {
    if (r < 0.0)
        throw RangeError("SampledProfile::interp: negative radius");
    const double pos = r / grid.step;
    const auto j = static_cast<std::size_t>(pos);
    if (j >= grid.count) {
        // at or beyond the last node: last value at the node, zero beyond
        return (r <= grid.length()) ? values.back() : cplx(0.0, 0.0);
    }
    const double frac = pos - static_cast<double>(j);
    return values[j] + frac * (values[j + 1] - values[j]);
}

bool SampledProfile::is_real(double tol) const {
    for (const auto& v : values)
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

SampledProfile sample_profile(const RadialGrid& g,
                              const std::function<cplx(double)>& fn,
                              std::optional<double> support) {
    std::vector<cplx> vals(g.size());
    for (std::size_t j = 0; j < vals.size(); ++j) {
        const double r = g.node(j);
        vals[j] = (support && r > *support) ? cplx(0.0, 0.0) : fn(r);
    }
    return SampledProfile(g, std::move(vals), support);
}

SpectralMeasure::SpectralMeasure(SpectralGrid g, std::vector<double> w,
                                 std::vector<PointMass> masses)
    : grid(g), density(std::move(w)), point_masses(std::move(masses)) {
    if (density.size() != grid.size())
        throw ShapeError("SpectralMeasure: density length must equal grid size");
    for (double v : density)
        if (!(v >= 0.0))
            throw DomainError("SpectralMeasure: density values must be nonnegative");
    for (const auto& pm : point_masses)
        if (!(pm.weight > 0.0))
            throw DomainError("SpectralMeasure: point-mass weights must be positive");
}

SpectralMeasure SpectralMeasure::doubled() const {
    std::vector<double> w(density.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = 2.0 * density[i];
    std::vector<PointMass> masses = point_masses;
    for (auto& pm : masses) pm.weight *= 2.0;
    return SpectralMeasure(grid, std::move(w), std::move(masses));
}

double SpectralMeasure::cauchy_total(double ceiling) const {
    double total = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double k = grid.node(i);
        total += density[i] / (1.0 + k * k) * grid.step;
    }
    for (const auto& pm : point_masses)
        total += pm.weight / (1.0 + pm.location * pm.location);
    if (!(total <= ceiling))
        throw DomainError("SpectralMeasure: discrete total of dsigma/(1+k^2) "
                          "exceeds the configured ceiling");
    return total;
}

SpectralFunction::SpectralFunction(SpectralGrid g, std::vector<cplx> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
        throw ShapeError("SpectralFunction: values length must equal grid size");
}

cplx SpectralFunction::interp(double k) const {
    const double pos = (k + grid.half_width()) / grid.step;
    if (pos < 0.0 || pos > static_cast<double>(grid.size() - 1))
        return cplx(0.0, 0.0);
    const auto i = static_cast<std::size_t>(pos);
    if (i >= grid.size() - 1) return values.back();
    const double frac = pos - static_cast<double>(i);
    return values[i] + frac * (values[i + 1] - values[i]);
}

} // namespace kreinwave
