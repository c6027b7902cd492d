// Acceptance suite: one pass/fail line per criterion, each with its pinned
// tolerance and runtime budget. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "horext/area_velocity.hpp"
#include "horext/errors.hpp"
#include "horext/extension.hpp"
#include "horext/finiteness.hpp"
#include "horext/fixtures.hpp"
#include "horext/jets.hpp"
#include "horext/lusin.hpp"
#include "horext/polynomial.hpp"
#include "horext/quadrature.hpp"

using namespace horext;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (detail.empty()) detail = what;
    }
};

int g_failures = 0;

void criterion(int id, const std::string& label, double limit_s,
               const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.fail(std::string("threw: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed >= limit_s)
        out.fail("runtime " + std::to_string(elapsed) + " s over the limit");
    std::printf("%s criterion %d (%s): %s[%.2f s, limit %.0f s]\n",
                out.ok ? "PASS" : "FAIL", id, label.c_str(),
                out.detail.empty() ? "" : (out.detail + " ").c_str(), elapsed,
                limit_s);
    if (!out.ok) ++g_failures;
}

Polynomial random_poly(std::mt19937_64& rng, int degree, double scale) {
    std::uniform_real_distribution<double> coef(-scale, scale);
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = coef(rng);
    return Polynomial(std::move(c));
}

std::vector<double> random_nodes(std::mt19937_64& rng, std::size_t count) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x;
    while (x.size() < count) {
        const double cand = u(rng);
        bool ok = true;
        for (double p : x)
            if (std::abs(p - cand) < 0.04) ok = false;
        if (ok) x.push_back(cand);
    }
    std::sort(x.begin(), x.end());
    return x;
}

void interpolation_suite(Outcome& out) {
    std::mt19937_64 rng(20260809);
    double worst_coeff = 0.0, worst_perm = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t size = 2 + static_cast<std::size_t>(trial % 7);
        const auto nodes = random_nodes(rng, size);
        const int degree = std::min<int>(6, static_cast<int>(size) - 1);
        const Polynomial Q = random_poly(rng, degree, 1.0);
        std::vector<double> values(size);
        for (std::size_t i = 0; i < size; ++i) values[i] = Q(nodes[i]);

        const Polynomial P = newton_interpolant(NodeSet(nodes), values);
        const Polynomial D = P - Q;
        for (double c : D.coeffs()) worst_coeff = std::max(worst_coeff, std::abs(c));

        const double top = divided_differences(std::span<const double>(nodes),
                                               values)
                               .back();
        std::vector<std::size_t> perm(size);
        for (std::size_t i = 0; i < size; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> xs(size), vs(size);
        for (std::size_t i = 0; i < size; ++i) {
            xs[i] = nodes[perm[i]];
            vs[i] = values[perm[i]];
        }
        const double shuffled =
            divided_differences(std::span<const double>(xs), vs).back();
        worst_perm = std::max(worst_perm,
                              std::abs(top - shuffled) / (1.0 + std::abs(top)));
    }
    if (worst_coeff >= 1e-9)
        out.fail("coefficient error " + std::to_string(worst_coeff));
    if (worst_perm >= 1e-10)
        out.fail("permutation deviation " + std::to_string(worst_perm));
    out.note("coeff err " + std::to_string(worst_coeff) + ", perm err " +
             std::to_string(worst_perm));
}

void left_invariance(Outcome& out) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const auto lin = ModulusOfContinuity::linear(10.0);
    const auto suite = fixtures::smooth_suite();
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto& curve = suite[trial % suite.size()];
        const std::size_t n = 5 + trial % 4;
        const SampleSet K(fixtures::uniform_grid(0.0, 1.0, n));
        const auto gamma = fixtures::sample_jets(curve, K, 2);
        const HPoint p{u(rng), u(rng), u(rng)};
        const double pnorm2 = p.x * p.x + p.y * p.y + p.z * p.z;
        const AVMode mode = trial % 2 ? AVMode::Discrete : AVMode::Continuous;
        const double dev = left_invariance_audit(gamma, p, mode, lin);
        worst = std::max(worst, dev / (1e-9 * (1.0 + pnorm2)));
        if (dev > 1e-9 * (1.0 + pnorm2)) {
            out.fail("deviation " + std::to_string(dev) + " at trial " +
                     std::to_string(trial));
            return;
        }
    }
    out.note("worst deviation at " + std::to_string(100.0 * worst) +
             "% of the bound");
}

void round_trip(Outcome& out) {
    const auto lin = ModulusOfContinuity::linear(10.0);
    double worst_jet = 0.0, worst_res = 0.0;
    for (const auto& curve : fixtures::smooth_suite()) {
        for (const std::size_t n : {9u, 17u, 33u}) {
            for (const int m : {1, 2, 3}) {
                const SampleSet K(fixtures::uniform_grid(0.0, 1.0, n));
                const auto gamma = fixtures::sample_jets(curve, K, m);
                const auto ext = extend_horizontal(gamma, lin, 0.0, 1.0);
                worst_jet = std::max(worst_jet, ext.audit().max_jet_mismatch);
                worst_res = std::max(worst_res, ext.audit().max_residual);
            }
        }
    }
    if (worst_jet > 1e-8) out.fail("jet mismatch " + std::to_string(worst_jet));
    if (worst_res > 1e-8) out.fail("residual " + std::to_string(worst_res));
    out.note("jet err " + std::to_string(worst_jet) + ", residual " +
             std::to_string(worst_res));
}

void defect_rejection(Outcome& out) {
    const auto lin = ModulusOfContinuity::linear(10.0);
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 12));
    const auto gamma = fixtures::sample_jets(fixtures::vertical_line(), K, 1);
    const auto scan = av_ratio_scan(gamma, lin);
    if (scan.max_ratio < 1e3)
        out.fail("scan ratio only " + std::to_string(scan.max_ratio));
    try {
        extend_horizontal(gamma, lin, 0.0, 1.0);
        out.fail("extension did not reject the vertical line");
    } catch (const ValidationError& e) {
        if (e.condition() != 3)
            out.fail("rejected with condition " + std::to_string(e.condition()));
        if (std::string(e.what()).find("condition (3)") == std::string::npos)
            out.fail("error message does not name condition (3)");
    }
    out.note("scan ratio " + std::to_string(scan.max_ratio));
}

void av_equivalence(Outcome& out) {
    const auto lin = ModulusOfContinuity::linear(10.0);
    for (const auto& curve : fixtures::smooth_suite()) {
        for (const std::size_t n : {16u, 32u}) {
            const SampleSet K(fixtures::uniform_grid(0.0, 1.0, n));
            const auto gamma = fixtures::sample_jets(curve, K, 2);
            const auto audit = equivalence_audit(gamma, lin);
            if (audit.ratio_of_constants > 50.0) {
                out.fail(curve.name + " at " + std::to_string(n) +
                         " points: ratio of constants " +
                         std::to_string(audit.ratio_of_constants));
                return;
            }
        }
    }
    double prev_cont = 0.0, prev_disc = 0.0;
    for (const std::size_t n : {12u, 24u}) {
        const SampleSet K(fixtures::uniform_grid(0.0, 1.0, n));
        const auto vert = fixtures::sample_jets(fixtures::vertical_line(), K, 1);
        const auto audit = equivalence_audit(vert, lin);
        if (audit.ratio_of_constants > 50.0)
            out.fail("defect ratio of constants " +
                     std::to_string(audit.ratio_of_constants));
        if (prev_cont > 0.0) {
            if (audit.continuous.max_ratio < 2.0 * prev_cont ||
                audit.discrete.max_ratio < 2.0 * prev_disc)
                out.fail("defect constants did not diverge under refinement");
        }
        prev_cont = audit.continuous.max_ratio;
        prev_disc = audit.discrete.max_ratio;
    }
    out.note("defect constants " + std::to_string(prev_cont) + " / " +
             std::to_string(prev_disc));
}

void perturbation_solver(Outcome& out) {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> logL(std::log(1e-4), std::log(1.0));
    double worst_residual = 0.0, worst_flat = 0.0;
    int guard_checked = 0;

    for (int trial = 0; trial < 500; ++trial) {
        const int m = 1 + trial % 3;
        const auto constants =
            measure_extension_constants(std::vector<double>(m + 1, 1.0));
        const double L = std::exp(logL(rng));
        const Gap gap{0.0, L, 0};
        // Three regimes: f-dominant, g-dominant, both nearly flat.
        const int regime = trial % 3;
        const double f_scale = regime == 0 ? 2.0 : (regime == 1 ? 0.02 : 1e-7);
        const double g_scale = regime == 1 ? 2.0 : (regime == 0 ? 0.02 : 1e-7);
        const Polynomial fp = random_poly(rng, m + 2, f_scale);
        const Polynomial gp = random_poly(rng, m + 2, g_scale);
        const GapFunction f{GapBlend{0.0, L, fp, fp}, {}};
        const GapFunction g{GapBlend{0.0, L, gp, gp}, {}};

        // Deficit inside the admissible budget kappa * V.
        const double If = integral_abs(fp.derivative(), 0.0, L);
        const double Ig = integral_abs(gp.derivative(), 0.0, L);
        const double V = std::pow(L, 2 * m + 2) + std::pow(L, m + 1) * (If + Ig);
        const double A = uni(rng) * constants.kappa[m] * V;

        const auto pair = horizontality_repair(gap, f, g, A, m, constants);
        worst_residual =
            std::max(worst_residual, pair.residual / (1e-9 * (1.0 + std::abs(A))));
        if (pair.residual > 1e-9 * (1.0 + std::abs(A))) {
            out.fail("residual " + std::to_string(pair.residual) + " at trial " +
                     std::to_string(trial));
            return;
        }
        for (const double t : {gap.a, gap.b}) {
            for (const auto* bumps : {&pair.phi, &pair.psi}) {
                TaylorJet j(m);
                for (const Bump& bump : *bumps) j = j + bump.jet_at(t, m);
                for (int k = 0; k <= m; ++k)
                    worst_flat = std::max(worst_flat, std::abs(j.derivative(k)));
            }
        }
        if (L <= constants.c_schedule[m]) {
            ++guard_checked;
            if (pair.sup_norm > std::sqrt(L)) {
                out.fail("sup norm " + std::to_string(pair.sup_norm) +
                         " over sqrt(L) at trial " + std::to_string(trial));
                return;
            }
        }
    }
    if (worst_flat > 1e-10) out.fail("endpoint flatness " + std::to_string(worst_flat));
    out.note(std::to_string(guard_checked) + " guard-active cases, worst residual at " +
             std::to_string(100.0 * worst_residual) + "% of the bound");
}

void cinfty_schedule(Outcome& out) {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 9));
    const auto gamma = fixtures::sample_jets(fixtures::circle_lift(), K, 4);
    const auto curve = extend_cinfty(gamma, 0.0, 1.0);
    if (curve.audit().max_jet_mismatch > 1e-8)
        out.fail("jet mismatch " + std::to_string(curve.audit().max_jet_mismatch));
    if (curve.audit().max_residual > 1e-8)
        out.fail("residual " + std::to_string(curve.audit().max_residual));
    const auto& c = curve.constants().c_schedule;
    if (c.size() != 5) out.fail("schedule should carry orders 0..4");
    if (c[0] > 1.0) out.fail("c_0 exceeds 1");
    for (std::size_t i = 1; i < c.size(); ++i)
        if (!(c[i] < c[i - 1])) out.fail("schedule is not strictly decreasing");
    out.note("c = [" + std::to_string(c[0]) + " .. " + std::to_string(c.back()) + "]");
}

void lusin_end_to_end(Outcome& out) {
    const auto lin = ModulusOfContinuity::linear(10.0);
    const auto grid = fixtures::uniform_grid(0.0, 1.0, 20001);

    for (const auto& curve : {fixtures::circle_lift(), fixtures::cubic_lift(),
                              fixtures::random_poly_lift(4, 5)}) {
        const auto dense = fixtures::sample_curve(curve, grid);
        for (const double eps : {0.2, 0.1, 0.05}) {
            const auto result = lusin_approximate(dense, 2, lin, eps);
            if (!(result.deficit < eps)) {
                out.fail(curve.name + " at eps " + std::to_string(eps) +
                         ": deficit " + std::to_string(result.deficit));
                return;
            }
        }
    }

    // Corner defect: deficit within budget and every non-margin loss within
    // 3 estimation cells of the corner.
    const auto corner = fixtures::sample_curve(fixtures::corner_curve(), grid);
    for (const double eps : {0.2, 0.1, 0.05}) {
        const auto result = lusin_approximate(corner, 2, lin, eps);
        if (!(result.deficit < eps)) {
            out.fail("corner at eps " + std::to_string(eps) + ": deficit " +
                     std::to_string(result.deficit));
            return;
        }
        const double cell = 1.0 / 255.0;
        const double rho0 = result.uniform_report.rho0;
        for (double t : result.trimmed_cells)
            if (std::abs(t - 0.5) > rho0 + 3.0 * cell)
                out.fail("trimmed cell at " + std::to_string(t));
        // Off the corner and margins, kept points tile the interval.
        for (double t = 2.0 * rho0 + 2.0 * cell; t < 1.0 - 2.0 * rho0 - 2.0 * cell;
             t += cell) {
            if (std::abs(t - 0.5) <= rho0 + 3.0 * cell) continue;
            double nearest = 1.0;
            for (double k : result.K_points) nearest = std::min(nearest, std::abs(k - t));
            if (nearest > cell) {
                out.fail("interior cell at " + std::to_string(t) +
                         " lost far from the defect");
                break;
            }
        }
    }

    // A_N monotonicity on every dataset.
    const std::vector<double> rhos = {1.0 / 8,  1.0 / 16, 1.0 / 32,
                                      1.0 / 64, 1.0 / 128, 1.0 / 256};
    for (const auto& curve : {fixtures::circle_lift(), fixtures::corner_curve()}) {
        const auto dense = fixtures::sample_curve(curve, grid);
        std::vector<double> df(dense.grid.size());
        std::vector<double> fv(dense.grid.size());
        for (std::size_t i = 0; i < dense.grid.size(); ++i) fv[i] = dense.points[i].x;
        df = sample_derivative(dense.grid, fv);
        const ScalarSamples samples{dense.grid, df};
        std::vector<L1wEstimate> estimates;
        for (std::size_t i = 3000; i <= 17000; i += 250)
            estimates.push_back(
                l1w_estimate(samples, dense.grid[i], 1, lin, rhos));
        std::vector<std::size_t> prev;
        for (const int N : {8, 16, 32, 64}) {
            const std::vector<int> single = {N};
            const auto rep = uniform_parameter_set(estimates, 0.0, 1.0, single, 2.0);
            for (std::size_t idx : prev)
                if (std::find(rep.A_N.begin(), rep.A_N.end(), idx) == rep.A_N.end()) {
                    out.fail("A_" + std::to_string(N / 2) + " not inside A_" +
                             std::to_string(N) + " on " + curve.name);
                    return;
                }
            prev = rep.A_N;
        }
    }
}

void taylor_estimate(Outcome& out) {
    const auto lin = ModulusOfContinuity::linear(10.0);
    const int m = 2;
    std::mt19937_64 rng(99);
    const Polynomial P8 = random_poly(rng, 8, 1.0);

    struct Fn {
        std::string name;
        std::function<std::vector<double>(double, int)> jets;
    };
    std::vector<Fn> fns;
    fns.push_back({"sin", [](double t, int order) {
                       std::vector<double> out(order + 1);
                       for (int k = 0; k <= order; ++k)
                           out[k] = std::sin(t + k * M_PI_2);
                       return out;
                   }});
    fns.push_back({"exp", [](double t, int order) {
                       return std::vector<double>(order + 1, std::exp(t));
                   }});
    fns.push_back({"poly8", [&](double t, int order) {
                       std::vector<double> out(order + 1);
                       const TaylorJet j = P8.jet_at(t, order);
                       for (int k = 0; k <= order; ++k) out[k] = j.derivative(k);
                       return out;
                   }});

    for (const auto& fn : fns) {
        double prev = 0.0;
        for (const std::size_t n : {33u, 65u, 129u}) {
            const SampleSet K(fixtures::uniform_grid(0.0, 1.0, n));
            std::vector<std::vector<double>> rows(m + 1, std::vector<double>(n));
            for (std::size_t i = 0; i < n; ++i) {
                const auto jets = fn.jets(K.points()[i], m);
                for (int k = 0; k <= m; ++k) rows[k][i] = jets[k];
            }
            const ScalarJet jet(K, m, rows);
            // sup over pairs of |f(y) - T_x f(y)| / (w(|x-y|) |x-y|^m)
            double constant = 0.0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    if (a == b) continue;
                    const double gap = std::abs(K.points()[b] - K.points()[a]);
                    constant = std::max(constant,
                                        std::abs(jet_remainder(jet, a, b, 0)) /
                                            (lin(gap) * std::pow(gap, m)));
                }
            if (!std::isfinite(constant) || constant <= 0.0) {
                out.fail(fn.name + ": degenerate constant");
                return;
            }
            if (prev > 0.0 && (constant / prev > 2.0 || constant / prev < 0.5)) {
                out.fail(fn.name + ": unstable constant " + std::to_string(prev) +
                         " -> " + std::to_string(constant));
                return;
            }
            prev = constant;
        }
    }
}

} // namespace

int main() {
    criterion(1, "interpolation and divided differences", 5.0, interpolation_suite);
    criterion(2, "left invariance of A and V", 10.0, left_invariance);
    criterion(3, "horizontal round trip", 30.0, round_trip);
    criterion(4, "defect rejection", 2.0, defect_rejection);
    criterion(5, "discrete/continuous equivalence", 30.0, av_equivalence);
    criterion(6, "perturbation solver", 60.0, perturbation_solver);
    criterion(7, "truncated C-infinity schedule", 60.0, cinfty_schedule);
    criterion(8, "Lusin end to end", 120.0, lusin_end_to_end);
    criterion(9, "Taylor estimate stability", 10.0, taylor_estimate);
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
