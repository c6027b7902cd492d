#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "horext/jets.hpp"

namespace horext {

struct HPoint {
    double x = 0.0, y = 0.0, z = 0.0;

    bool operator==(const HPoint&) const = default;
};

// Group law (x,y,z)*(x',y',z') = (x+x', y+y', z+z'+2(yx'-xy')).
HPoint group_mul(const HPoint& p, const HPoint& q);
HPoint group_inv(const HPoint& p);

struct Frame {
    std::array<double, 3> X, Y, Z;
};

// Left invariant frame at p: X = (1,0,2y), Y = (0,1,-2x), Z = (0,0,1).
Frame frame_at(const HPoint& p);

struct SampledCurve {
    std::vector<double> grid; // strictly increasing parameters
    std::vector<HPoint> points;

    void validate() const;
};

struct ResidualReport {
    double max_residual = 0.0;
    std::vector<double> per_point;
};

// Value and first derivative of each coordinate at t.
using CurveJetFn =
    std::function<void(double t, std::array<double, 2>& f, std::array<double, 2>& g,
                       std::array<double, 2>& h)>;

// First derivative of sampled values: centered 4th-order stencils in the
// interior, one-sided 2nd-order at the ends.
std::vector<double> sample_derivative(const std::vector<double>& grid,
                                      const std::vector<double>& values);

// Residual r(t) = h'(t) - 2 (f'(t) g(t) - f(t) g'(t)) on the grid.
// The sampled variant differentiates with sample_derivative, so the
// differencing error stays below the residuals worth detecting at desk scale.
ResidualReport horizontality_residual(const SampledCurve& curve);
ResidualReport horizontality_residual(const CurveJetFn& curve, std::span<const double> grid);

// Vertical jet rows (H^k)_{k=1..m} forced by the Leibniz rule:
// H^k = 2 sum_i C(k-1,i) (F^{k-i} G^i - G^{k-i} F^i).  H^0 is the caller's.
// The returned jet carries H^0 = 0.
ScalarJet leibniz_vertical_jet(const ScalarJet& F, const ScalarJet& G);

} // namespace horext
