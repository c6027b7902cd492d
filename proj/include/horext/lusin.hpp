#pragma once

#include <span>
#include <utility>
#include <vector>

#include "horext/extension.hpp"
#include "horext/heisenberg.hpp"
#include "horext/modulus.hpp"

namespace horext {

struct ScalarSamples {
    std::vector<double> grid;
    std::vector<double> values;
};

// Local polynomial model of u at x with its L^{1,w} certificate:
// |avg over B(x,rho) of |u - P|| <= C_local w(rho) rho^m for the measured
// radii. Coefficients are monomial in (y - x): P(y) = sum a_k (y-x)^k.
struct L1wEstimate {
    double x = 0.0;
    int m = 0;
    std::vector<double> coefficients;
    double C_local = 0.0;
    double rho_used = 0.0; // largest measured radius
    std::vector<std::pair<double, double>> ratio_profile; // (rho, ratio)
};

// Fits P by weighted least squares on the smallest ball and measures the
// averaged L^1 residual across the radius grid.
L1wEstimate l1w_estimate(const ScalarSamples& u, double x, int m,
                         const ModulusOfContinuity& omega,
                         std::span<const double> rho_grid);

// Antiderivative estimate: Q(y) = fx + int_x^y P; one order higher, constant
// doubled per the integration bound.
L1wEstimate integrate_l1w(const L1wEstimate& derivative_estimate, double fx);

// Vertical derivative model R~ = trunc_{m-1} 2 (P'Q - Q'P) for h' from
// order-m models P, Q of f, g at the same point.
L1wEstimate vertical_l1w(const L1wEstimate& f_est, const L1wEstimate& g_est);

struct UniformParameterReport {
    int N = 0;
    std::vector<std::size_t> A_N; // indices into the estimation grid
    double C = 0.0;               // the uniform constant, = N
    double rho0 = 0.0;            // the uniform radius, = 1/N
    double discarded_measure = 0.0;
};

// Smallest N in the schedule whose A_N = {x : B(x,1/N) inside (a,b) and
// every measured ratio below radius 1/N is <= N} discards less than the
// target measure. Throws CoverageError when no N reaches it.
UniformParameterReport uniform_parameter_set(const std::vector<L1wEstimate>& estimates,
                                             double a, double b,
                                             std::span<const int> N_schedule,
                                             double target_measure);

struct LusinOptions {
    std::size_t estimation_points = 256;
    std::vector<int> N_schedule = {8, 16, 32, 64, 128, 192, 256, 384, 512};
    double horizontality_tol = 1e-3;      // per-point residual gate
    double horizontality_fraction = 0.02; // tolerated fraction of bad points
    ExtendOptions extend = lusin_extend_defaults();

    static ExtendOptions lusin_extend_defaults() {
        ExtendOptions opts;
        // Data trimmed next to a defect legitimately carries large finite
        // constants; the deficit target is the acceptance gate here.
        opts.max_av_ratio = 1e7;
        opts.max_whitney_constant = 1e7;
        return opts;
    }
};

struct LusinResult {
    PiecewiseSmoothCurve curve;
    std::vector<double> K_points;
    double deficit = 0.0; // measure of the grid cells the curve may disagree on
    double epsilon_target = 0.0;
    UniformParameterReport uniform_report;
    std::vector<double> trimmed_cells; // centers of oscillation-trimmed cells
};

// Desk-scale Lusin approximation: estimate local models of f' and g',
// integrate them to jets, select the uniform-parameter set, trim the worst
// coefficient oscillators, and extend from the kept points.
LusinResult lusin_approximate(const SampledCurve& dense, int m,
                              const ModulusOfContinuity& omega, double epsilon,
                              const LusinOptions& opts = {});

// Runs the order-m pipeline for m = 1..m_max with per-order budget
// epsilon/2^m and w(t) = t, intersects the kept sets, and extends with the
// truncated-C^infinity schedule.
LusinResult lusin_cinfty(const SampledCurve& dense, int m_max, double epsilon,
                         const LusinOptions& opts = {});

} // namespace horext
