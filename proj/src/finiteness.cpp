#include "horext/finiteness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "horext/polynomial.hpp"

namespace horext {

namespace {

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

struct SubsetQuantities {
    double seminorm = 0.0;
    double av_ratio = 0.0;
};

SubsetQuantities scan_one_subset(const SampledCurve& on_K,
                                 const std::vector<std::size_t>& sub, int m,
                                 const ModulusOfContinuity& omega) {
    SubsetQuantities q;
    std::vector<double> xs(sub.size());
    std::vector<HPoint> vals(sub.size());
    std::vector<double> f(sub.size()), g(sub.size()), h(sub.size());
    // Normalize the subset to start at the identity; the quantities below
    // then do not depend on where the data sits in the group.
    const HPoint shift = group_inv(on_K.points[sub[0]]);
    for (std::size_t i = 0; i < sub.size(); ++i) {
        xs[i] = on_K.grid[sub[i]];
        vals[i] = group_mul(shift, on_K.points[sub[i]]);
        f[i] = vals[i].x;
        g[i] = vals[i].y;
        h[i] = vals[i].z;
    }

    // m! |coord[X]| diam / w(diam) bounds the C^{m,w} seminorm of any
    // extension from below, coordinate by coordinate.
    const double diam = xs.back() - xs.front();
    const double w = omega(diam);
    if (w > 0.0) {
        const double fact = factorial(m);
        double sum = 0.0;
        for (const auto& coord : {f, g, h}) {
            const double top =
                divided_differences(std::span<const double>(xs), coord).back();
            sum += fact * std::abs(top) * diam / w;
        }
        q.seminorm = sum;
    }

    // Discrete A/V over the (m+1)-point subsets of X.
    for (std::size_t skip = 0; skip < sub.size(); ++skip) {
        std::vector<double> ys;
        std::vector<HPoint> vs;
        for (std::size_t i = 0; i < sub.size(); ++i) {
            if (i == skip) continue;
            ys.push_back(xs[i]);
            vs.push_back(vals[i]);
        }
        const NodeSet X(ys);
        for (std::size_t i = 0; i < ys.size(); ++i) {
            for (std::size_t j = i + 1; j < ys.size(); ++j) {
                const double A = discrete_area(X, vs, ys[i], ys[j]);
                const double V = discrete_velocity(X, vs, omega, ys[i], ys[j]);
                if (V > 0.0) q.av_ratio = std::max(q.av_ratio, std::abs(A) / V);
            }
        }
    }
    return q;
}

} // namespace

FinitenessReport finiteness_check(const SampledCurve& on_K, int m,
                                  const ModulusOfContinuity& omega,
                                  std::size_t subset_budget, ExecutionPolicy policy) {
    on_K.validate();
    if (m < 1) throw std::invalid_argument("finiteness_check: order must be >= 1");
    if (subset_budget == 0)
        throw std::invalid_argument("finiteness_check: budget must be positive");
    const std::size_t n = on_K.grid.size();
    const std::size_t subset_size = static_cast<std::size_t>(m) + 2;
    if (n < subset_size)
        throw std::invalid_argument("finiteness_check: |K| must be at least m+2");

    FinitenessReport rep;
    std::vector<std::vector<std::size_t>> subsets;
    if (subset_scan::count_combinations(n, subset_size) <=
        static_cast<double>(subset_budget)) {
        subsets = subset_scan::enumerate_all(n, subset_size);
        rep.exhaustive = true;
    } else {
        subsets = subset_scan::neighbor_family(on_K.grid, subset_size);
    }
    rep.subsets_scanned = subsets.size();

    std::vector<double> seminorms(subsets.size()), ratios(subsets.size());
    if (policy == ExecutionPolicy::Serial) {
        for (std::size_t s = 0; s < subsets.size(); ++s) {
            const auto q = scan_one_subset(on_K, subsets[s], m, omega);
            seminorms[s] = q.seminorm;
            ratios[s] = q.av_ratio;
        }
    } else {
#pragma omp parallel for schedule(dynamic)
        for (long long s = 0; s < static_cast<long long>(subsets.size()); ++s) {
            const auto q = scan_one_subset(on_K, subsets[s], m, omega);
            seminorms[s] = q.seminorm;
            ratios[s] = q.av_ratio;
        }
    }

    const ScanBest best_sem = argmax_scan(
        subsets.size(), [&](std::size_t s) { return seminorms[s]; },
        ExecutionPolicy::Serial);
    const ScanBest best_av = argmax_scan(
        subsets.size(), [&](std::size_t s) { return ratios[s]; },
        ExecutionPolicy::Serial);

    auto subset_points = [&](std::size_t s) {
        std::vector<double> xs;
        for (std::size_t i : subsets[s]) xs.push_back(on_K.grid[i]);
        return xs;
    };
    if (best_sem.valid)
        rep.witnesses.push_back(
            {subset_points(best_sem.index), "seminorm", best_sem.value});
    if (best_av.valid)
        rep.witnesses.push_back(
            {subset_points(best_av.index), "av_ratio", best_av.value});
    for (const auto& w : rep.witnesses) rep.M_estimate = std::max(rep.M_estimate, w.value);
    return rep;
}

EquivalenceAudit equivalence_audit(const HorizontalJetTriple& gamma,
                                   const ModulusOfContinuity& omega,
                                   std::size_t subset_budget, double zero_floor) {
    EquivalenceAudit out;
    out.continuous = av_ratio_scan(gamma, omega);

    SampledCurve values;
    values.grid = gamma.K().points();
    values.points.resize(values.grid.size());
    for (std::size_t i = 0; i < values.grid.size(); ++i)
        values.points[i] = {gamma.F.value(0, i), gamma.G.value(0, i),
                            gamma.H.value(0, i)};
    out.discrete =
        discrete_av_scan(values, std::max(1, gamma.order()), omega, subset_budget);

    const double c = out.continuous.max_ratio <= zero_floor ? 0.0
                                                            : out.continuous.max_ratio;
    const double d = out.discrete.max_ratio <= zero_floor ? 0.0
                                                          : out.discrete.max_ratio;
    if (c == 0.0 && d == 0.0)
        out.ratio_of_constants = 1.0;
    else if (c == 0.0 || d == 0.0)
        out.ratio_of_constants = std::numeric_limits<double>::infinity();
    else
        out.ratio_of_constants = std::max(c / d, d / c);
    return out;
}

} // namespace horext
