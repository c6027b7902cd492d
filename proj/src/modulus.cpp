#include "horext/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace horext {

ModulusOfContinuity ModulusOfContinuity::power(double alpha, double domain_cap) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("power modulus requires alpha in (0, 1]");
    if (!(domain_cap > 0.0))
        throw std::invalid_argument("modulus domain cap must be positive");
    return ModulusOfContinuity(ModulusKind::Power, alpha, domain_cap, {});
}

ModulusOfContinuity ModulusOfContinuity::linear(double domain_cap) {
    if (!(domain_cap > 0.0))
        throw std::invalid_argument("modulus domain cap must be positive");
    return ModulusOfContinuity(ModulusKind::Linear, 1.0, domain_cap, {});
}

ModulusOfContinuity ModulusOfContinuity::table(
    std::vector<std::array<double, 2>> knots, double domain_cap) {
    if (!(domain_cap > 0.0))
        throw std::invalid_argument("modulus domain cap must be positive");
    if (knots.size() < 2)
        throw std::invalid_argument("tabulated modulus needs at least 2 knots");
    if (knots.front()[0] != 0.0 || knots.front()[1] != 0.0)
        throw std::invalid_argument("tabulated modulus must start at (0, 0)");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i][0] > knots[i - 1][0]))
            throw std::invalid_argument("tabulated modulus knots must be strictly increasing in t");
        if (knots[i][1] < knots[i - 1][1])
            throw std::invalid_argument("tabulated modulus values must be nondecreasing");
    }
    // Concavity: secant slopes nonincreasing.
    for (std::size_t i = 2; i < knots.size(); ++i) {
        const double s_prev =
            (knots[i - 1][1] - knots[i - 2][1]) / (knots[i - 1][0] - knots[i - 2][0]);
        const double s_cur = (knots[i][1] - knots[i - 1][1]) / (knots[i][0] - knots[i - 1][0]);
        if (s_cur > s_prev * (1.0 + 1e-12) + 1e-300)
            throw std::invalid_argument(
                "tabulated modulus is not concave at knots (" +
                std::to_string(knots[i - 2][0]) + ", " + std::to_string(knots[i - 1][0]) +
                ", " + std::to_string(knots[i][0]) + ")");
    }
    return ModulusOfContinuity(ModulusKind::Table, 0.0, domain_cap, std::move(knots));
}

double ModulusOfContinuity::operator()(double t) const {
    if (!(t >= 0.0) || t > domain_cap_)
        throw std::domain_error("modulus evaluated outside [0, domain_cap]");
    switch (kind_) {
    case ModulusKind::Linear:
        return t;
    case ModulusKind::Power:
        return std::pow(t, alpha_);
    case ModulusKind::Table: {
        if (t == 0.0) return 0.0;
        if (t >= knots_.back()[0]) {
            // Extend with the final secant slope; the final slope is the
            // smallest one, so concavity is preserved.
            const auto& p = knots_[knots_.size() - 2];
            const auto& q = knots_.back();
            const double slope = (q[1] - p[1]) / (q[0] - p[0]);
            return q[1] + slope * (t - q[0]);
        }
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double v, const std::array<double, 2>& k) {
                                       return v < k[0];
                                   });
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double s = (t - lo[0]) / (hi[0] - lo[0]);
        return lo[1] + s * (hi[1] - lo[1]);
    }
    }
    return 0.0;
}

double holder_seminorm(std::span<const std::pair<double, double>> values,
                       const ModulusOfContinuity& omega, int m) {
    if (m < 0) throw std::invalid_argument("holder_seminorm: negative order");
    if (values.size() < 2)
        throw std::invalid_argument("holder_seminorm: needs at least 2 points");
    double best = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            const double gap = std::abs(values[i].first - values[j].first);
            const double dv = std::abs(values[i].second - values[j].second);
            if (gap == 0.0) {
                if (dv != 0.0)
                    throw std::invalid_argument(
                        "holder_seminorm: duplicate point with differing values");
                continue;
            }
            const double w = omega(gap);
            if (w > 0.0) best = std::max(best, dv / w);
        }
    }
    return best;
}

} // namespace horext
