#include "horext/jets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace horext {

SampleSet::SampleSet(std::vector<double> points) : pts_(std::move(points)) {
    if (pts_.size() < 2)
        throw std::invalid_argument("sample set needs at least 2 points");
    for (std::size_t i = 1; i < pts_.size(); ++i)
        if (!(pts_[i] > pts_[i - 1]))
            throw std::invalid_argument("sample set must be strictly increasing");
}

std::size_t SampleSet::index_of(double x) const {
    auto it = std::lower_bound(pts_.begin(), pts_.end(), x);
    if (it == pts_.end() || *it != x)
        throw std::invalid_argument("point is not in the sample set");
    return static_cast<std::size_t>(it - pts_.begin());
}

ScalarJet::ScalarJet(SampleSet K, int order, std::vector<std::vector<double>> rows)
    : K_(std::move(K)), m_(order), rows_(std::move(rows)) {
    if (m_ < 0) throw std::invalid_argument("jet order must be >= 0");
    if (rows_.size() != static_cast<std::size_t>(m_) + 1)
        throw std::invalid_argument("jet needs m+1 rows");
    for (const auto& r : rows_) {
        if (r.size() != K_.size())
            throw std::invalid_argument("jet row length must match |K|");
        for (double v : r)
            if (!std::isfinite(v)) throw std::invalid_argument("jet value not finite");
    }
}

std::vector<double> ScalarJet::at(std::size_t i) const {
    std::vector<double> out(static_cast<std::size_t>(m_) + 1);
    for (int k = 0; k <= m_; ++k) out[k] = rows_[k][i];
    return out;
}

HorizontalJetTriple::HorizontalJetTriple(ScalarJet f, ScalarJet g, ScalarJet h)
    : F(std::move(f)), G(std::move(g)), H(std::move(h)) {
    if (!(F.K() == G.K()) || !(F.K() == H.K()))
        throw std::invalid_argument("jet triple must share the sample set");
    if (F.order() != G.order() || F.order() != H.order())
        throw std::invalid_argument("jet triple must share the order");
}

double jet_remainder(const ScalarJet& F, std::size_t a_idx, std::size_t x_idx, int k) {
    const int m = F.order();
    if (k < 0 || k > m) throw std::invalid_argument("remainder order out of range");
    if (a_idx >= F.K().size() || x_idx >= F.K().size())
        throw std::invalid_argument("remainder index out of range");
    const double a = F.K().points()[a_idx];
    const double x = F.K().points()[x_idx];
    // Horner over l for sum_l F^{k+l}(a)/l! (x-a)^l.
    const double h = x - a;
    double taylor = F.value(m, a_idx);
    for (int l = m - k - 1; l >= 0; --l)
        taylor = F.value(k + l, a_idx) + taylor * h / static_cast<double>(l + 1);
    return F.value(k, x_idx) - taylor;
}

namespace {

struct PairIndex {
    std::size_t a, b;
};

inline PairIndex unrank_pair(std::size_t r, std::size_t n) {
    // Row-major over ordered pairs (a < b).
    std::size_t a = 0;
    std::size_t row = n - 1;
    while (r >= row) {
        r -= row;
        ++a;
        --row;
    }
    return {a, a + 1 + r};
}

} // namespace

WhitneyFieldReport validate_cmw(const ScalarJet& F, const ModulusOfContinuity& omega,
                                ExecutionPolicy policy, std::size_t pair_scan_cap) {
    const std::size_t n = F.K().size();
    if (n > pair_scan_cap)
        throw std::invalid_argument("sample set exceeds the pair scan cap");
    const int m = F.order();
    const auto& pts = F.K().points();
    const std::size_t pairs = n * (n - 1) / 2;

    // Scan both orientations of each pair and all orders.
    const std::size_t jobs = pairs * 2 * static_cast<std::size_t>(m + 1);
    auto score = [&](std::size_t job) {
        const int k = static_cast<int>(job % static_cast<std::size_t>(m + 1));
        const std::size_t rest = job / static_cast<std::size_t>(m + 1);
        const bool flip = (rest % 2) != 0;
        PairIndex p = unrank_pair(rest / 2, n);
        const std::size_t ai = flip ? p.b : p.a;
        const std::size_t xi = flip ? p.a : p.b;
        const double gap = std::abs(pts[xi] - pts[ai]);
        const double denom = omega(gap) * std::pow(gap, m - k);
        if (denom <= 0.0) return 0.0;
        return std::abs(jet_remainder(F, ai, xi, k)) / denom;
    };
    const ScanBest best = argmax_scan(jobs, score, policy);

    WhitneyFieldReport rep;
    rep.best_constant = best.valid ? best.value : 0.0;
    if (best.valid) {
        const int k = static_cast<int>(best.index % static_cast<std::size_t>(m + 1));
        const std::size_t rest = best.index / static_cast<std::size_t>(m + 1);
        const bool flip = (rest % 2) != 0;
        PairIndex p = unrank_pair(rest / 2, n);
        rep.worst_witness = {pts[flip ? p.b : p.a], pts[flip ? p.a : p.b], k};
    }
    if (n >= 4) rep.decay_profile = cm_decay_diagnostic(F);
    return rep;
}

std::vector<std::pair<double, double>> cm_decay_diagnostic(const ScalarJet& F) {
    const std::size_t n = F.K().size();
    if (n < 4)
        throw std::invalid_argument("decay diagnostic needs at least 4 points");
    const int m = F.order();
    const auto& pts = F.K().points();
    const double diam = F.K().diam();

    // Dyadic bins: scale_j = diam / 2^j, pair (a,b) lands in the bin with
    // scale_j >= |b-a| > scale_{j+1}.
    double min_gap = diam;
    for (std::size_t i = 1; i < n; ++i) min_gap = std::min(min_gap, pts[i] - pts[i - 1]);
    int levels = 1;
    while (diam / std::pow(2.0, levels) > min_gap && levels < 60) ++levels;

    std::vector<std::pair<double, double>> profile;
    for (int j = 0; j < levels; ++j)
        profile.emplace_back(diam / std::pow(2.0, j), 0.0);

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            const double gap = std::abs(pts[b] - pts[a]);
            int j = 0;
            while (j + 1 < levels && gap <= profile[j + 1].first) ++j;
            double worst = 0.0;
            for (int k = 0; k <= m; ++k) {
                const double norm =
                    std::abs(jet_remainder(F, a, b, k)) / std::pow(gap, m - k);
                worst = std::max(worst, norm);
            }
            profile[j].second = std::max(profile[j].second, worst);
        }
    }
    return profile;
}

} // namespace horext
