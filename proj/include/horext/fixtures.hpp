#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "horext/area_velocity.hpp"
#include "horext/heisenberg.hpp"
#include "horext/jets.hpp"
#include "horext/polynomial.hpp"

namespace horext::fixtures {

// A closed-form curve with derivative jets of every order on demand.
struct AnalyticCurve {
    std::string name;
    bool horizontal = true;
    // jet[k] = k-th derivative of the coordinate at t, k = 0..order
    std::function<std::vector<double>(double t, int order)> f, g, h;
};

// (cos t, sin t, -2t): unit circle with its horizontal lift.
AnalyticCurve circle_lift();

// (t, t^2, -(2/3) t^3): the horizontal cubic lift.
AnalyticCurve cubic_lift();

// Horizontal lift of two polynomials: h = h0 + 2 int_0^t (f'g - f g').
AnalyticCurve poly_lift(const Polynomial& f, const Polynomial& g, double h0,
                        const std::string& name);

// Deterministic pseudo-random polynomial lift of the given degree.
AnalyticCurve random_poly_lift(int degree, std::uint64_t seed);

// (0, 0, t) with vanishing higher vertical orders: Leibniz-consistent data
// that gathers height with no horizontal motion; the canonical area/velocity
// defect.
AnalyticCurve vertical_line();

// (|t-1/2|, t, .): horizontal a.e. with a corner at t = 1/2.
AnalyticCurve corner_curve();

HorizontalJetTriple sample_jets(const AnalyticCurve& curve, const SampleSet& K, int m);
SampledCurve sample_curve(const AnalyticCurve& curve, const std::vector<double>& grid);

std::vector<double> uniform_grid(double a, double b, std::size_t n);

// The bundled smooth suite: circle lift, cubic lift, and polynomial lifts
// up to degree 6.
std::vector<AnalyticCurve> smooth_suite();

} // namespace horext::fixtures
