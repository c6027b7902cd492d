#include "horext/area_velocity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace horext {

namespace {

Polynomial taylor_at(const ScalarJet& J, std::size_t idx) {
    return taylor_from_jet(J.at(idx), J.K().points()[idx]);
}

double bracket_integral(const Polynomial& Pf, const Polynomial& Pg, double a, double b) {
    const Polynomial br = Pf.derivative() * Pg - Pg.derivative() * Pf;
    return br.integral(a, b);
}

std::vector<std::pair<double, double>> bin_by_scale(
    const std::vector<std::pair<double, double>>& gap_ratio, double diam) {
    if (gap_ratio.empty()) return {};
    double min_gap = diam;
    for (const auto& [g, r] : gap_ratio) min_gap = std::min(min_gap, g);
    int levels = 1;
    while (diam / std::pow(2.0, levels) > min_gap && levels < 60) ++levels;
    std::vector<std::pair<double, double>> bins;
    for (int j = 0; j < levels; ++j) bins.emplace_back(diam / std::pow(2.0, j), 0.0);
    for (const auto& [g, r] : gap_ratio) {
        int j = 0;
        while (j + 1 < levels && g <= bins[j + 1].first) ++j;
        bins[j].second = std::max(bins[j].second, r);
    }
    return bins;
}

} // namespace

double area_discrepancy(const HorizontalJetTriple& gamma, std::size_t a_idx,
                        std::size_t b_idx) {
    const auto& pts = gamma.K().points();
    if (a_idx >= pts.size() || b_idx >= pts.size())
        throw std::invalid_argument("area_discrepancy: index out of range");
    const double a = pts[a_idx], b = pts[b_idx];
    if (a == b) return 0.0;

    const Polynomial Tf = taylor_at(gamma.F, a_idx);
    const Polynomial Tg = taylor_at(gamma.G, a_idx);

    const double h_b = gamma.H.value(0, b_idx), h_a = gamma.H.value(0, a_idx);
    const double f_a = gamma.F.value(0, a_idx), f_b = gamma.F.value(0, b_idx);
    const double g_a = gamma.G.value(0, a_idx), g_b = gamma.G.value(0, b_idx);

    return h_b - h_a - 2.0 * bracket_integral(Tf, Tg, a, b) +
           2.0 * f_a * (g_b - Tg(b)) - 2.0 * g_a * (f_b - Tf(b));
}

double omega_velocity(const HorizontalJetTriple& gamma, const ModulusOfContinuity& omega,
                      std::size_t a_idx, std::size_t b_idx) {
    const auto& pts = gamma.K().points();
    if (a_idx >= pts.size() || b_idx >= pts.size())
        throw std::invalid_argument("omega_velocity: index out of range");
    const double a = pts[a_idx], b = pts[b_idx];
    if (!(a < b)) throw std::invalid_argument("omega_velocity: requires a < b");

    const int m = gamma.order();
    const double gap = b - a;
    const double w = omega(gap);
    const Polynomial dTf = taylor_at(gamma.F, a_idx).derivative();
    const Polynomial dTg = taylor_at(gamma.G, a_idx).derivative();
    const double speed = integral_abs(dTf, a, b) + integral_abs(dTg, a, b);
    return w * w * std::pow(gap, 2 * m) + w * std::pow(gap, m) * speed;
}

namespace {

void check_discrete_args(const NodeSet& X, std::span<const HPoint> values, double a,
                         double b) {
    if (values.size() != X.size())
        throw std::invalid_argument("discrete A/V: values must match |X|");
    const auto& pts = X.points();
    if (std::find(pts.begin(), pts.end(), a) == pts.end() ||
        std::find(pts.begin(), pts.end(), b) == pts.end())
        throw std::invalid_argument("discrete A/V: endpoints must lie in X");
}

} // namespace

double discrete_area(const NodeSet& X, std::span<const HPoint> values, double a, double b) {
    check_discrete_args(X, values, a, b);
    if (a == b) return 0.0;
    const auto& pts = X.points();
    std::vector<double> f(X.size()), g(X.size());
    double h_a = 0.0, h_b = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        f[i] = values[i].x;
        g[i] = values[i].y;
        if (pts[i] == a) h_a = values[i].z;
        if (pts[i] == b) h_b = values[i].z;
    }
    const Polynomial Pf = newton_interpolant(X, f);
    const Polynomial Pg = newton_interpolant(X, g);
    return h_b - h_a - 2.0 * bracket_integral(Pf, Pg, a, b);
}

double discrete_velocity(const NodeSet& X, std::span<const HPoint> values,
                         const ModulusOfContinuity& omega, double a, double b) {
    check_discrete_args(X, values, a, b);
    if (!(a < b)) throw std::invalid_argument("discrete velocity: requires a < b");
    const int m = static_cast<int>(X.size()) - 1;
    std::vector<double> f(X.size()), g(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        f[i] = values[i].x;
        g[i] = values[i].y;
    }
    const Polynomial dPf = newton_interpolant(X, f).derivative();
    const Polynomial dPg = newton_interpolant(X, g).derivative();
    const double diam = X.diam();
    const double w = omega(diam);
    const double speed = integral_abs(dPf, a, b) + integral_abs(dPg, a, b);
    return w * w * std::pow(diam, 2 * m) + w * std::pow(diam, m) * speed;
}

AVScanReport av_ratio_scan(const HorizontalJetTriple& gamma,
                           const ModulusOfContinuity& omega, ExecutionPolicy policy,
                           std::size_t pair_scan_cap) {
    const auto& pts = gamma.K().points();
    const std::size_t n = pts.size();
    if (n > pair_scan_cap)
        throw std::invalid_argument("sample set exceeds the pair scan cap");
    const std::size_t pairs = n * (n - 1) / 2;

    std::vector<std::pair<std::size_t, std::size_t>> idx;
    idx.reserve(pairs);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) idx.emplace_back(a, b);

    const auto ratios = map_scan(
        pairs,
        [&](std::size_t r) {
            const auto [ai, bi] = idx[r];
            const double A = area_discrepancy(gamma, ai, bi);
            const double V = omega_velocity(gamma, omega, ai, bi);
            return V > 0.0 ? std::abs(A) / V : 0.0;
        },
        policy);

    const ScanBest best = argmax_scan(pairs, [&](std::size_t r) { return ratios[r]; },
                                      ExecutionPolicy::Serial);

    AVScanReport rep;
    rep.mode = AVMode::Continuous;
    rep.max_ratio = best.valid ? best.value : 0.0;
    if (best.valid) {
        rep.witness_a = pts[idx[best.index].first];
        rep.witness_b = pts[idx[best.index].second];
    }
    std::vector<std::pair<double, double>> gap_ratio(pairs);
    for (std::size_t r = 0; r < pairs; ++r)
        gap_ratio[r] = {pts[idx[r].second] - pts[idx[r].first], ratios[r]};
    rep.ratios_by_scale = bin_by_scale(gap_ratio, gamma.K().diam());
    return rep;
}

namespace subset_scan {

double count_combinations(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double c = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
        if (c > 1e18) return 1e18;
    }
    return c;
}

std::vector<std::vector<std::size_t>> enumerate_all(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    while (true) {
        out.push_back(comb);
        std::size_t i = k;
        bool done = true;
        while (i-- > 0) {
            if (comb[i] < n - k + i) {
                ++comb[i];
                for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
                done = false;
                break;
            }
        }
        if (done) return out;
    }
}

namespace {

// Pair (a, b) plus the extra points nearest to either endpoint, preferring
// the proof's window of width (b-a)/2 around each endpoint automatically.
std::vector<std::size_t> neighbor_subset(const std::vector<double>& pts, std::size_t ai,
                                         std::size_t bi, std::size_t extra) {
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (i != ai && i != bi) others.push_back(i);
    std::stable_sort(others.begin(), others.end(), [&](std::size_t u, std::size_t v) {
        const double du = std::min(std::abs(pts[u] - pts[ai]), std::abs(pts[u] - pts[bi]));
        const double dv = std::min(std::abs(pts[v] - pts[ai]), std::abs(pts[v] - pts[bi]));
        if (du != dv) return du < dv;
        return pts[u] < pts[v];
    });
    std::vector<std::size_t> sub = {ai, bi};
    for (std::size_t i = 0; i < extra && i < others.size(); ++i)
        sub.push_back(others[i]);
    std::sort(sub.begin(), sub.end());
    return sub;
}

} // namespace

std::vector<std::vector<std::size_t>> neighbor_family(const std::vector<double>& pts,
                                                      std::size_t subset_size) {
    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            subsets.push_back(neighbor_subset(pts, a, b, subset_size - 2));
    std::sort(subsets.begin(), subsets.end());
    subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
    return subsets;
}

} // namespace subset_scan

namespace {

struct SubsetScanOutcome {
    double max_ratio = 0.0;
    std::vector<std::size_t> witness_X;
    double witness_a = 0.0, witness_b = 0.0;
    std::vector<std::pair<double, double>> gap_ratio;
    bool exhaustive = false;
    std::size_t scanned = 0;
};

SubsetScanOutcome scan_subsets(const SampledCurve& on_K, int m,
                               const ModulusOfContinuity& omega, std::size_t budget,
                               ExecutionPolicy policy) {
    const auto& pts = on_K.grid;
    const std::size_t n = pts.size();
    const std::size_t subset_size = static_cast<std::size_t>(m) + 1;
    if (n < subset_size)
        throw std::invalid_argument("discrete scan: |K| must be at least m+1");

    SubsetScanOutcome out;
    std::vector<std::vector<std::size_t>> subsets;
    if (subset_scan::count_combinations(n, subset_size) <= static_cast<double>(budget)) {
        subsets = subset_scan::enumerate_all(n, subset_size);
        out.exhaustive = true;
    } else {
        subsets = subset_scan::neighbor_family(pts, subset_size);
    }
    out.scanned = subsets.size();

    // Best ratio within one subset over all ordered pairs.
    auto subset_best = [&](std::size_t s) {
        const auto& sub = subsets[s];
        std::vector<double> xs(sub.size());
        std::vector<HPoint> vals(sub.size());
        for (std::size_t i = 0; i < sub.size(); ++i) {
            xs[i] = pts[sub[i]];
            vals[i] = on_K.points[sub[i]];
        }
        const NodeSet X(xs);
        double best = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j) {
                const double A = discrete_area(X, vals, xs[i], xs[j]);
                const double V = discrete_velocity(X, vals, omega, xs[i], xs[j]);
                if (V > 0.0) best = std::max(best, std::abs(A) / V);
            }
        return best;
    };

    const auto per_subset = map_scan(subsets.size(), subset_best, policy);
    const ScanBest best = argmax_scan(
        subsets.size(), [&](std::size_t s) { return per_subset[s]; },
        ExecutionPolicy::Serial);

    if (best.valid) {
        out.max_ratio = best.value;
        const auto& sub = subsets[best.index];
        std::vector<double> xs(sub.size());
        std::vector<HPoint> vals(sub.size());
        for (std::size_t i = 0; i < sub.size(); ++i) {
            xs[i] = pts[sub[i]];
            vals[i] = on_K.points[sub[i]];
        }
        out.witness_X = sub;
        const NodeSet X(xs);
        double local = -1.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j) {
                const double A = discrete_area(X, vals, xs[i], xs[j]);
                const double V = discrete_velocity(X, vals, omega, xs[i], xs[j]);
                const double r = V > 0.0 ? std::abs(A) / V : 0.0;
                if (r > local) {
                    local = r;
                    out.witness_a = xs[i];
                    out.witness_b = xs[j];
                }
            }
    }
    out.gap_ratio.reserve(subsets.size());
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        const auto& sub = subsets[s];
        out.gap_ratio.emplace_back(pts[sub.back()] - pts[sub.front()], per_subset[s]);
    }
    return out;
}

} // namespace

AVScanReport discrete_av_scan(const SampledCurve& on_K, int m,
                              const ModulusOfContinuity& omega, std::size_t subset_budget,
                              ExecutionPolicy policy) {
    on_K.validate();
    if (subset_budget == 0)
        throw std::invalid_argument("discrete_av_scan: budget must be positive");
    if (m < 1) throw std::invalid_argument("discrete_av_scan: order must be >= 1");

    const auto outcome = scan_subsets(on_K, m, omega, subset_budget, policy);
    AVScanReport rep;
    rep.mode = AVMode::Discrete;
    rep.max_ratio = outcome.max_ratio;
    rep.witness_a = outcome.witness_a;
    rep.witness_b = outcome.witness_b;
    for (std::size_t i : outcome.witness_X) rep.witness_X.push_back(on_K.grid[i]);
    rep.ratios_by_scale =
        bin_by_scale(outcome.gap_ratio, on_K.grid.back() - on_K.grid.front());
    return rep;
}

HorizontalJetTriple translate_jets(const HorizontalJetTriple& gamma, const HPoint& p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        throw std::invalid_argument("translate_jets: point not finite");
    const int m = gamma.order();
    const std::size_t n = gamma.K().size();

    auto F = gamma.F.rows();
    auto G = gamma.G.rows();
    auto H = gamma.H.rows();
    for (std::size_t i = 0; i < n; ++i) {
        // Translated vertical coordinate: h + z_p + 2 (y_p f - x_p g);
        // its order-k derivative picks up 2 (y_p F^k - x_p G^k).
        H[0][i] += p.z + 2.0 * (p.y * F[0][i] - p.x * G[0][i]);
        for (int k = 1; k <= m; ++k) H[k][i] += 2.0 * (p.y * F[k][i] - p.x * G[k][i]);
        F[0][i] += p.x;
        G[0][i] += p.y;
    }
    return HorizontalJetTriple(ScalarJet(gamma.K(), m, std::move(F)),
                               ScalarJet(gamma.K(), m, std::move(G)),
                               ScalarJet(gamma.K(), m, std::move(H)));
}

SampledCurve translate_curve(const SampledCurve& curve, const HPoint& p) {
    SampledCurve out = curve;
    for (auto& q : out.points) q = group_mul(p, q);
    return out;
}

double left_invariance_audit(const HorizontalJetTriple& gamma, const HPoint& p,
                             AVMode mode, const ModulusOfContinuity& omega,
                             std::size_t subset_budget) {
    const HorizontalJetTriple moved = translate_jets(gamma, p);
    double dev = 0.0;

    if (mode == AVMode::Continuous) {
        const std::size_t n = gamma.K().size();
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                dev = std::max(dev, std::abs(area_discrepancy(moved, a, b) -
                                             area_discrepancy(gamma, a, b)));
                dev = std::max(dev, std::abs(omega_velocity(moved, omega, a, b) -
                                             omega_velocity(gamma, omega, a, b)));
            }
        }
        return dev;
    }

    // Discrete mode audits the same subset family on original and translated
    // point values.
    const int m = std::max(1, gamma.order());
    SampledCurve base;
    base.grid = gamma.K().points();
    base.points.resize(base.grid.size());
    for (std::size_t i = 0; i < base.grid.size(); ++i)
        base.points[i] = {gamma.F.value(0, i), gamma.G.value(0, i), gamma.H.value(0, i)};
    const SampledCurve shifted = translate_curve(base, p);

    const auto& pts = base.grid;
    const std::size_t n = pts.size();
    const std::size_t subset_size = static_cast<std::size_t>(m) + 1;
    std::vector<std::vector<std::size_t>> subsets;
    if (subset_scan::count_combinations(n, subset_size) <= static_cast<double>(subset_budget))
        subsets = subset_scan::enumerate_all(n, subset_size);
    else
        subsets = subset_scan::neighbor_family(pts, subset_size);
    for (const auto& sub : subsets) {
        std::vector<double> xs(sub.size());
        std::vector<HPoint> v0(sub.size()), v1(sub.size());
        for (std::size_t i = 0; i < sub.size(); ++i) {
            xs[i] = pts[sub[i]];
            v0[i] = base.points[sub[i]];
            v1[i] = shifted.points[sub[i]];
        }
        const NodeSet X(xs);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t j = i + 1; j < xs.size(); ++j) {
                dev = std::max(dev, std::abs(discrete_area(X, v1, xs[i], xs[j]) -
                                             discrete_area(X, v0, xs[i], xs[j])));
                dev = std::max(dev,
                               std::abs(discrete_velocity(X, v1, omega, xs[i], xs[j]) -
                                        discrete_velocity(X, v0, omega, xs[i], xs[j])));
            }
        }
    }
    return dev;
}

} // namespace horext
