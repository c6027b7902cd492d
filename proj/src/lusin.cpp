#include "horext/lusin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "horext/errors.hpp"
#include "horext/scan.hpp"

namespace horext {

namespace {

// Trapezoid average of |u - P| over the samples inside [x-rho, x+rho],
// normalized by the covered width.
double averaged_l1_residual(const ScalarSamples& u, const std::vector<double>& coeffs,
                            double x, double rho) {
    const auto& t = u.grid;
    const auto lo =
        std::lower_bound(t.begin(), t.end(), x - rho) - t.begin();
    const auto hi = std::upper_bound(t.begin(), t.end(), x + rho) - t.begin();
    if (hi - lo < 2) return 0.0;
    auto model = [&](double y) {
        double p = 0.0, pw = 1.0;
        for (double c : coeffs) {
            p += c * pw;
            pw *= (y - x);
        }
        return p;
    };
    double integral = 0.0;
    for (auto i = lo; i + 1 < hi; ++i) {
        const double va = std::abs(u.values[i] - model(t[i]));
        const double vb = std::abs(u.values[i + 1] - model(t[i + 1]));
        integral += 0.5 * (va + vb) * (t[i + 1] - t[i]);
    }
    const double width = t[hi - 1] - t[lo];
    return width > 0.0 ? integral / width : 0.0;
}

// Weighted least squares of degree m over the samples in [x-rho, x+rho],
// trapezoid weights, scaled basis ((t-x)/rho)^j. Returns monomial
// coefficients in (y - x).
std::vector<double> fit_polynomial(const ScalarSamples& u, double x, double rho, int m) {
    const auto& t = u.grid;
    const auto lo = std::lower_bound(t.begin(), t.end(), x - rho) - t.begin();
    const auto hi = std::upper_bound(t.begin(), t.end(), x + rho) - t.begin();
    const std::size_t n = static_cast<std::size_t>(hi - lo);
    if (n < 16)
        throw ResolutionError(
            "fewer than 16 samples inside the smallest estimation ball");

    const std::size_t dim = static_cast<std::size_t>(m) + 1;
    std::vector<double> G(dim * dim, 0.0), r(dim, 0.0), phi(dim);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t gi = static_cast<std::size_t>(lo) + i;
        double w;
        if (i == 0)
            w = 0.5 * (t[gi + 1] - t[gi]);
        else if (i + 1 == n)
            w = 0.5 * (t[gi] - t[gi - 1]);
        else
            w = 0.5 * (t[gi + 1] - t[gi - 1]);
        const double s = (t[gi] - x) / rho;
        phi[0] = 1.0;
        for (std::size_t j = 1; j < dim; ++j) phi[j] = phi[j - 1] * s;
        for (std::size_t j = 0; j < dim; ++j) {
            r[j] += w * phi[j] * u.values[gi];
            for (std::size_t k = 0; k < dim; ++k) G[j * dim + k] += w * phi[j] * phi[k];
        }
    }

    // Gaussian elimination with partial pivoting on the (m+1)x(m+1) system.
    std::vector<std::size_t> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < dim; ++row)
            if (std::abs(G[row * dim + col]) > std::abs(G[piv * dim + col])) piv = row;
        if (piv != col) {
            for (std::size_t k = 0; k < dim; ++k)
                std::swap(G[col * dim + k], G[piv * dim + k]);
            std::swap(r[col], r[piv]);
        }
        const double d = G[col * dim + col];
        if (d == 0.0) throw ResolutionError("degenerate least-squares system");
        for (std::size_t row = col + 1; row < dim; ++row) {
            const double factor = G[row * dim + col] / d;
            if (factor == 0.0) continue;
            for (std::size_t k = col; k < dim; ++k)
                G[row * dim + k] -= factor * G[col * dim + k];
            r[row] -= factor * r[col];
        }
    }
    std::vector<double> c(dim, 0.0);
    for (std::size_t row = dim; row-- > 0;) {
        double acc = r[row];
        for (std::size_t k = row + 1; k < dim; ++k) acc -= G[row * dim + k] * c[k];
        c[row] = acc / G[row * dim + row];
    }
    // Unscale to monomial coefficients in (y - x).
    double scale = 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
        c[j] /= scale;
        scale *= rho;
    }
    return c;
}

} // namespace

L1wEstimate l1w_estimate(const ScalarSamples& u, double x, int m,
                         const ModulusOfContinuity& omega,
                         std::span<const double> rho_grid) {
    if (u.grid.size() != u.values.size() || u.grid.size() < 2)
        throw std::invalid_argument("l1w_estimate: bad sample arrays");
    if (rho_grid.empty()) throw std::invalid_argument("l1w_estimate: empty radius grid");
    if (m < 0) throw std::invalid_argument("l1w_estimate: negative order");

    double rho_min = rho_grid[0], rho_max = rho_grid[0];
    for (double rho : rho_grid) {
        if (!(rho > 0.0)) throw std::invalid_argument("l1w_estimate: radius <= 0");
        rho_min = std::min(rho_min, rho);
        rho_max = std::max(rho_max, rho);
    }
    if (x - rho_max < u.grid.front() || x + rho_max > u.grid.back())
        throw std::domain_error("l1w_estimate: ball leaves the sample domain");

    L1wEstimate est;
    est.x = x;
    est.m = m;
    est.rho_used = rho_max;
    est.coefficients = fit_polynomial(u, x, rho_min, m);

    for (double rho : rho_grid) {
        const double res = averaged_l1_residual(u, est.coefficients, x, rho);
        const double denom = omega(rho) * std::pow(rho, m);
        const double ratio = denom > 0.0 ? res / denom : 0.0;
        est.ratio_profile.emplace_back(rho, ratio);
        est.C_local = std::max(est.C_local, ratio);
    }
    std::sort(est.ratio_profile.begin(), est.ratio_profile.end());
    return est;
}

L1wEstimate integrate_l1w(const L1wEstimate& derivative_estimate, double fx) {
    L1wEstimate out;
    out.x = derivative_estimate.x;
    out.m = derivative_estimate.m + 1;
    out.rho_used = derivative_estimate.rho_used;
    out.coefficients.assign(static_cast<std::size_t>(out.m) + 1, 0.0);
    out.coefficients[0] = fx;
    for (int k = 0; k <= derivative_estimate.m; ++k)
        out.coefficients[k + 1] =
            derivative_estimate.coefficients[k] / static_cast<double>(k + 1);
    // |f - Q| <= 2 rho avg|f' - P| pointwise, so the averaged bound carries
    // a factor 2 at one order higher.
    out.C_local = 2.0 * derivative_estimate.C_local;
    for (const auto& [rho, ratio] : derivative_estimate.ratio_profile)
        out.ratio_profile.emplace_back(rho, 2.0 * ratio);
    return out;
}

L1wEstimate vertical_l1w(const L1wEstimate& f_est, const L1wEstimate& g_est) {
    if (f_est.x != g_est.x || f_est.m != g_est.m)
        throw std::invalid_argument("vertical_l1w: estimates must share point and order");
    const int m = f_est.m;
    if (m < 1) throw std::invalid_argument("vertical_l1w: order must be >= 1");

    const auto& a = f_est.coefficients;
    const auto& b = g_est.coefficients;
    // R = 2 (P'Q - Q'P), monomial in (y - x), degree <= 2m - 1.
    std::vector<double> R(2 * static_cast<std::size_t>(m), 0.0);
    for (int i = 1; i <= m; ++i) {
        for (int j = 0; j <= m; ++j) {
            const std::size_t deg = static_cast<std::size_t>(i - 1 + j);
            if (deg >= R.size()) continue;
            R[deg] += 2.0 * i * (a[i] * b[j] - b[i] * a[j]);
        }
    }

    L1wEstimate out;
    out.x = f_est.x;
    out.m = m - 1;
    out.rho_used = std::min(f_est.rho_used, g_est.rho_used);
    out.coefficients.assign(R.begin(), R.begin() + m);

    // Measured propagation: the proof's product bounds plus the scale of the
    // truncated tail.
    const double rho = out.rho_used;
    double SP = 0.0, SQ = 0.0, SPd = 0.0, SQd = 0.0, pw = 1.0;
    for (int k = 0; k <= m; ++k) {
        SP += std::abs(a[k]) * pw;
        SQ += std::abs(b[k]) * pw;
        if (k >= 1) {
            const double dpw = k * (pw / (rho > 0.0 ? rho : 1.0));
            SPd += std::abs(a[k]) * dpw;
            SQd += std::abs(b[k]) * dpw;
        }
        pw *= rho;
    }
    double tail = 0.0;
    for (std::size_t j = static_cast<std::size_t>(m); j < R.size(); ++j)
        tail += std::abs(R[j]) * std::pow(rho, static_cast<double>(j) - m + 1) /
                static_cast<double>(j + 1);
    out.C_local = 2.0 * ((SQ + SQd) * f_est.C_local + (SP + SPd) * g_est.C_local) + tail;
    return out;
}

UniformParameterReport uniform_parameter_set(const std::vector<L1wEstimate>& estimates,
                                             double a, double b,
                                             std::span<const int> N_schedule,
                                             double target_measure) {
    if (N_schedule.empty())
        throw CoverageError(b - a, "uniform parameter selection: empty schedule");
    if (estimates.empty())
        throw std::invalid_argument("uniform parameter selection: no estimates");
    for (std::size_t i = 1; i < estimates.size(); ++i)
        if (!(estimates[i].x > estimates[i - 1].x))
            throw std::invalid_argument(
                "uniform parameter selection: estimates must be sorted by x");

    // Voronoi cell lengths within [a, b].
    const std::size_t n = estimates.size();
    std::vector<double> cell(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = i == 0 ? a : 0.5 * (estimates[i - 1].x + estimates[i].x);
        const double hi =
            i + 1 == n ? b : 0.5 * (estimates[i].x + estimates[i + 1].x);
        cell[i] = hi - lo;
    }

    double best_achieved = b - a;
    for (int N : N_schedule) {
        if (N <= 0) throw std::invalid_argument("schedule entries must be positive");
        const double rho0 = 1.0 / static_cast<double>(N);
        UniformParameterReport rep;
        rep.N = N;
        rep.C = static_cast<double>(N);
        rep.rho0 = rho0;
        double discarded = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& est = estimates[i];
            bool ok = est.x - rho0 > a && est.x + rho0 < b;
            if (ok) {
                bool measured = false;
                for (const auto& [rho, ratio] : est.ratio_profile) {
                    if (rho >= rho0) continue;
                    measured = true;
                    if (ratio > static_cast<double>(N)) {
                        ok = false;
                        break;
                    }
                }
                ok = ok && measured;
            }
            if (ok)
                rep.A_N.push_back(i);
            else
                discarded += cell[i];
        }
        rep.discarded_measure = discarded;
        best_achieved = std::min(best_achieved, discarded);
        if (discarded < target_measure) return rep;
    }
    throw CoverageError(best_achieved,
                        "no schedule entry reached the discarded-measure target");
}

namespace {

struct PointModels {
    bool eligible = false;
    L1wEstimate f_deriv, g_deriv; // order m-1 models of f', g'
    L1wEstimate selector;         // combined profile for the A_N selection
};

struct EstimationSetup {
    std::vector<std::size_t> sample_index; // estimation point -> sample index
    std::vector<double> xs;
    std::vector<double> rho_grid; // descending dyadic radii
    std::vector<int> schedule;    // truncated to radii coverage
};

EstimationSetup build_setup(const SampledCurve& dense, const LusinOptions& opts) {
    EstimationSetup setup;
    const std::size_t n = dense.grid.size();
    const std::size_t want = std::max<std::size_t>(8, opts.estimation_points);
    const std::size_t stride = std::max<std::size_t>(1, (n - 1) / (want - 1));
    for (std::size_t i = 0; i < n; i += stride) setup.sample_index.push_back(i);
    if (setup.sample_index.back() != n - 1) setup.sample_index.push_back(n - 1);
    for (std::size_t i : setup.sample_index) setup.xs.push_back(dense.grid[i]);

    double max_spacing = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        max_spacing = std::max(max_spacing, dense.grid[i] - dense.grid[i - 1]);
    const double rho_supported = 8.0 * max_spacing; // 16 samples per ball

    if (opts.N_schedule.empty())
        throw CoverageError(dense.grid.back() - dense.grid.front(),
                            "empty uniform-parameter schedule");
    std::vector<int> schedule = opts.N_schedule;
    std::sort(schedule.begin(), schedule.end());

    const double rho0 = 1.0 / static_cast<double>(schedule.front());
    for (double rho = rho0; rho >= rho_supported && setup.rho_grid.size() < 24;
         rho *= 0.5)
        setup.rho_grid.push_back(rho);
    if (setup.rho_grid.empty())
        throw ResolutionError("sample grid too coarse for the smallest schedule entry");

    // Keep schedule entries with at least 3 measured radii below 1/N.
    for (int N : schedule) {
        int below = 0;
        for (double rho : setup.rho_grid)
            if (rho < 1.0 / static_cast<double>(N)) ++below;
        if (below >= 3) setup.schedule.push_back(N);
    }
    if (setup.schedule.empty())
        throw ResolutionError("sample grid too coarse for every schedule entry");
    return setup;
}

void gate_horizontality(const SampledCurve& dense, const LusinOptions& opts) {
    const auto rep = horizontality_residual(dense);
    double scale = 1.0;
    for (const auto& p : dense.points)
        scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    std::size_t bad = 0;
    for (double r : rep.per_point)
        if (std::abs(r) > opts.horizontality_tol * scale) ++bad;
    const double fraction =
        static_cast<double>(bad) / static_cast<double>(rep.per_point.size());
    if (fraction > opts.horizontality_fraction)
        throw ValidationError(
            0, "input is not a horizontal curve: " + std::to_string(100.0 * fraction) +
                   "% of samples violate the horizontality equation");
}

std::vector<PointModels> estimate_models(const SampledCurve& dense,
                                         const EstimationSetup& setup, int m,
                                         const ModulusOfContinuity& omega) {
    const std::size_t n = dense.grid.size();
    std::vector<double> f(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = dense.points[i].x;
        g[i] = dense.points[i].y;
    }
    ScalarSamples df{dense.grid, sample_derivative(dense.grid, f)};
    ScalarSamples dg{dense.grid, sample_derivative(dense.grid, g)};

    std::vector<PointModels> models(setup.xs.size());
    const double lo = dense.grid.front(), hi = dense.grid.back();

#pragma omp parallel for schedule(dynamic)
    for (long long ii = 0; ii < static_cast<long long>(setup.xs.size()); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const double x = setup.xs[i];
        // Radii whose ball stays inside the sampled domain.
        std::vector<double> rhos;
        for (double rho : setup.rho_grid)
            if (x - rho > lo && x + rho < hi) rhos.push_back(rho);
        if (rhos.empty()) continue;
        PointModels pm;
        pm.f_deriv = l1w_estimate(df, x, m - 1, omega, rhos);
        pm.g_deriv = l1w_estimate(dg, x, m - 1, omega, rhos);
        pm.selector.x = x;
        pm.selector.m = m - 1;
        pm.selector.rho_used = rhos.front();
        for (std::size_t r = 0; r < pm.f_deriv.ratio_profile.size(); ++r) {
            const double rho = pm.f_deriv.ratio_profile[r].first;
            const double ratio = std::max(pm.f_deriv.ratio_profile[r].second,
                                          pm.g_deriv.ratio_profile[r].second);
            pm.selector.ratio_profile.emplace_back(rho, ratio);
            pm.selector.C_local = std::max(pm.selector.C_local, ratio);
        }
        pm.eligible = true;
        models[i] = std::move(pm);
    }
    return models;
}

struct TrimOutcome {
    std::vector<std::size_t> kept; // indices into the estimation grid
    std::vector<double> trimmed_cells;
    double trimmed_measure = 0.0;
};

// Sort the kept cells by the coefficient oscillation against their kept
// neighbors (scored once, before any removal) and drop the greatest
// oscillators until the budget is spent or only noise-level ones remain.
TrimOutcome trim_oscillators(const std::vector<std::size_t>& candidates,
                             const std::vector<double>& xs,
                             const std::vector<std::vector<double>>& jet_rows,
                             const std::vector<double>& cell, double budget,
                             std::size_t min_keep) {
    TrimOutcome out;
    out.kept = candidates;
    if (out.kept.size() <= min_keep || budget <= 0.0) return out;

    std::vector<std::pair<double, std::size_t>> scored(out.kept.size());
    for (std::size_t pos = 0; pos < out.kept.size(); ++pos) {
        const std::size_t i = out.kept[pos];
        double osc = 0.0;
        for (const std::size_t j :
             {pos > 0 ? out.kept[pos - 1] : i,
              pos + 1 < out.kept.size() ? out.kept[pos + 1] : i}) {
            for (const auto& row : jet_rows)
                osc = std::max(osc, std::abs(row[i] - row[j]));
        }
        scored[pos] = {osc, i};
    }
    // Smooth data oscillates at the scale of its own increments everywhere;
    // only cells far above that baseline are coefficient discontinuities
    // worth spending budget on.
    std::vector<double> baseline(scored.size());
    for (std::size_t k = 0; k < scored.size(); ++k) baseline[k] = scored[k].first;
    std::nth_element(baseline.begin(), baseline.begin() + baseline.size() / 2,
                     baseline.end());
    const double osc_floor =
        std::max(1e-12, 10.0 * baseline[baseline.size() / 2]);
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<bool> drop(jet_rows.empty() ? 0 : jet_rows[0].size(), false);
    std::size_t kept_left = out.kept.size();
    for (const auto& [osc, idx] : scored) {
        if (osc <= osc_floor || kept_left <= min_keep) break;
        if (out.trimmed_measure + cell[idx] > budget) continue;
        out.trimmed_measure += cell[idx];
        out.trimmed_cells.push_back(xs[idx]);
        drop[idx] = true;
        --kept_left;
    }
    std::erase_if(out.kept, [&](std::size_t i) { return drop[i]; });
    std::sort(out.trimmed_cells.begin(), out.trimmed_cells.end());
    return out;
}

struct OrderPassResult {
    UniformParameterReport report;
    std::vector<std::size_t> kept;
    std::vector<double> trimmed_cells;
    double deficit = 0.0;
    // Jet rows over the kept points, orders 0..m per coordinate.
    std::vector<std::vector<double>> F, G, H;
    std::vector<double> kept_xs;
};

// One order-m selection/extraction pass shared by both Lusin pipelines.
OrderPassResult run_order_pass(const SampledCurve& dense, const EstimationSetup& setup,
                               int m, const ModulusOfContinuity& omega,
                               double select_budget, double trim_budget) {
    const double a = dense.grid.front(), b = dense.grid.back();
    const auto models = estimate_models(dense, setup, m, omega);

    std::vector<L1wEstimate> selectors;
    std::vector<std::size_t> selector_index;
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (!models[i].eligible) continue;
        selectors.push_back(models[i].selector);
        selector_index.push_back(i);
    }
    if (selectors.empty())
        throw ResolutionError("no estimation point admits any radius");

    auto rep = uniform_parameter_set(selectors, a, b, setup.schedule, select_budget);
    // Ineligible points count as discarded mass too.
    std::vector<double> cell(setup.xs.size());
    for (std::size_t i = 0; i < setup.xs.size(); ++i) {
        const double lo = i == 0 ? a : 0.5 * (setup.xs[i - 1] + setup.xs[i]);
        const double hi = i + 1 == setup.xs.size()
                              ? b
                              : 0.5 * (setup.xs[i] + setup.xs[i + 1]);
        cell[i] = hi - lo;
    }
    std::vector<std::size_t> kept;
    for (std::size_t k : rep.A_N) kept.push_back(selector_index[k]);
    double discarded = b - a;
    for (std::size_t i : kept) discarded -= cell[i];
    rep.discarded_measure = discarded;

    // Jets at the kept points via integrate -> vertical -> integrate.
    OrderPassResult out;
    out.F.assign(static_cast<std::size_t>(m) + 1, {});
    out.G.assign(static_cast<std::size_t>(m) + 1, {});
    out.H.assign(static_cast<std::size_t>(m) + 1, {});
    std::vector<std::vector<double>> all_rows; // for oscillation trimming
    all_rows.assign(3 * (static_cast<std::size_t>(m) + 1),
                    std::vector<double>(setup.xs.size(), 0.0));
    for (std::size_t i : kept) {
        const auto& pm = models[i];
        const std::size_t si = setup.sample_index[i];
        const L1wEstimate fe = integrate_l1w(pm.f_deriv, dense.points[si].x);
        const L1wEstimate ge = integrate_l1w(pm.g_deriv, dense.points[si].y);
        const L1wEstimate hd = vertical_l1w(fe, ge);
        const L1wEstimate he = integrate_l1w(hd, dense.points[si].z);
        double fact = 1.0;
        for (int k = 0; k <= m; ++k) {
            if (k > 0) fact *= k;
            all_rows[k][i] = fe.coefficients[k] * fact;
            all_rows[m + 1 + k][i] = ge.coefficients[k] * fact;
            all_rows[2 * (m + 1) + k][i] = he.coefficients[k] * fact;
        }
    }

    const auto trim = trim_oscillators(kept, setup.xs, all_rows, cell, trim_budget,
                                       std::max<std::size_t>(m + 2, 4));

    out.report = rep;
    out.kept = trim.kept;
    out.trimmed_cells = trim.trimmed_cells;
    out.deficit = rep.discarded_measure + trim.trimmed_measure;
    for (std::size_t i : out.kept) {
        out.kept_xs.push_back(setup.xs[i]);
        for (int k = 0; k <= m; ++k) {
            out.F[k].push_back(all_rows[k][i]);
            out.G[k].push_back(all_rows[m + 1 + k][i]);
            out.H[k].push_back(all_rows[2 * (m + 1) + k][i]);
        }
    }
    return out;
}

} // namespace

LusinResult lusin_approximate(const SampledCurve& dense, int m,
                              const ModulusOfContinuity& omega, double epsilon,
                              const LusinOptions& opts) {
    dense.validate();
    if (m < 1) throw std::invalid_argument("lusin_approximate: order must be >= 1");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("lusin_approximate: epsilon must be positive");
    const double a = dense.grid.front(), b = dense.grid.back();
    if (omega.domain_cap() < b - a)
        throw std::invalid_argument("modulus domain cap must cover the curve domain");

    gate_horizontality(dense, opts);
    const auto setup = build_setup(dense, opts);
    auto pass = run_order_pass(dense, setup, m, omega, 0.5 * epsilon, 0.5 * epsilon);
    if (pass.deficit >= epsilon)
        throw CoverageError(pass.deficit, "lusin approximation exceeded its budget");

    HorizontalJetTriple triple(ScalarJet(SampleSet(pass.kept_xs), m, pass.F),
                               ScalarJet(SampleSet(pass.kept_xs), m, pass.G),
                               ScalarJet(SampleSet(pass.kept_xs), m, pass.H));
    LusinResult result{extend_horizontal(triple, omega, a, b, opts.extend),
                       pass.kept_xs,
                       pass.deficit,
                       epsilon,
                       pass.report,
                       pass.trimmed_cells};
    return result;
}

LusinResult lusin_cinfty(const SampledCurve& dense, int m_max, double epsilon,
                         const LusinOptions& opts) {
    dense.validate();
    if (m_max < 1) throw std::invalid_argument("lusin_cinfty: order must be >= 1");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("lusin_cinfty: epsilon must be positive");
    const double a = dense.grid.front(), b = dense.grid.back();
    const auto omega = ModulusOfContinuity::linear(std::max(1.0, 2.0 * (b - a)));

    gate_horizontality(dense, opts);
    const auto setup = build_setup(dense, opts);

    // Per-order budgets epsilon 2^-m, normalized so the truncated sum spends
    // the full epsilon (order 1 alone gets everything when m_max = 1).
    double norm = 0.0;
    for (int m = 1; m <= m_max; ++m) norm += std::pow(0.5, m);

    OrderPassResult top_pass;
    std::vector<std::size_t> kept_intersection;
    double deficit_union = 0.0;
    std::vector<double> trimmed_all;
    for (int m = 1; m <= m_max; ++m) {
        const double budget = epsilon * std::pow(0.5, m) / norm;
        auto pass = run_order_pass(dense, setup, m, omega, 0.5 * budget, 0.5 * budget);
        if (m == 1) {
            kept_intersection = pass.kept;
        } else {
            std::vector<std::size_t> merged;
            std::set_intersection(kept_intersection.begin(), kept_intersection.end(),
                                  pass.kept.begin(), pass.kept.end(),
                                  std::back_inserter(merged));
            kept_intersection = std::move(merged);
        }
        for (double t : pass.trimmed_cells) trimmed_all.push_back(t);
        if (m == m_max) top_pass = std::move(pass);
    }

    // Total disagreement mass: everything outside the intersection.
    std::vector<double> cell(setup.xs.size());
    for (std::size_t i = 0; i < setup.xs.size(); ++i) {
        const double lo = i == 0 ? a : 0.5 * (setup.xs[i - 1] + setup.xs[i]);
        const double hi =
            i + 1 == setup.xs.size() ? b : 0.5 * (setup.xs[i] + setup.xs[i + 1]);
        cell[i] = hi - lo;
    }
    deficit_union = b - a;
    for (std::size_t i : kept_intersection) deficit_union -= cell[i];
    if (deficit_union >= epsilon)
        throw CoverageError(deficit_union, "lusin approximation exceeded its budget");
    if (kept_intersection.size() < static_cast<std::size_t>(m_max) + 2)
        throw CoverageError(deficit_union, "too few points survive every order");

    // Jets of order m_max on the intersection, from the top-order pass.
    std::vector<std::vector<double>> F(m_max + 1), G(m_max + 1), H(m_max + 1);
    std::vector<double> xs;
    for (std::size_t i : kept_intersection) {
        // Intersection points survive every pass, the top one included.
        const auto it = std::lower_bound(top_pass.kept.begin(), top_pass.kept.end(), i);
        const std::size_t pos = static_cast<std::size_t>(it - top_pass.kept.begin());
        xs.push_back(setup.xs[i]);
        for (int k = 0; k <= m_max; ++k) {
            F[k].push_back(top_pass.F[k][pos]);
            G[k].push_back(top_pass.G[k][pos]);
            H[k].push_back(top_pass.H[k][pos]);
        }
    }
    if (xs.size() < static_cast<std::size_t>(m_max) + 2)
        throw CoverageError(deficit_union, "too few points survive every order");

    HorizontalJetTriple triple(ScalarJet(SampleSet(xs), m_max, F),
                               ScalarJet(SampleSet(xs), m_max, G),
                               ScalarJet(SampleSet(xs), m_max, H));
    std::sort(trimmed_all.begin(), trimmed_all.end());
    trimmed_all.erase(std::unique(trimmed_all.begin(), trimmed_all.end()),
                      trimmed_all.end());
    LusinResult result{extend_cinfty(triple, a, b, opts.extend),
                       xs,
                       deficit_union,
                       epsilon,
                       top_pass.report,
                       trimmed_all};
    return result;
}

} // namespace horext
