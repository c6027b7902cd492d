#include "horext/heisenberg.hpp"

#include <cmath>
#include <stdexcept>

namespace horext {

HPoint group_mul(const HPoint& p, const HPoint& q) {
    return {p.x + q.x, p.y + q.y, p.z + q.z + 2.0 * (p.y * q.x - p.x * q.y)};
}

HPoint group_inv(const HPoint& p) { return {-p.x, -p.y, -p.z}; }

Frame frame_at(const HPoint& p) {
    return {{1.0, 0.0, 2.0 * p.y}, {0.0, 1.0, -2.0 * p.x}, {0.0, 0.0, 1.0}};
}

void SampledCurve::validate() const {
    if (grid.size() != points.size())
        throw std::invalid_argument("sampled curve: grid/point length mismatch");
    if (grid.size() < 2)
        throw std::invalid_argument("sampled curve needs at least 2 samples");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("sampled curve grid must be strictly increasing");
    for (const auto& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw std::invalid_argument("sampled curve point not finite");
}

// First derivative of a sampled function: 4th-order centered stencil in the
// interior, 2nd-order one-sided at the ends. Handles non-uniform spacing via
// the derivative of the local Lagrange interpolant on 5 (interior) or 3
// (boundary) nearest samples.
std::vector<double> sample_derivative(const std::vector<double>& t,
                                      const std::vector<double>& v) {
    const std::size_t n = t.size();
    std::vector<double> d(n, 0.0);
    auto fit_deriv = [&](std::size_t lo, std::size_t count, double at) {
        // Interpolate on [lo, lo+count) and differentiate at `at` via
        // Lagrange form; count <= 5.
        double deriv = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            // derivative of the j-th Lagrange basis at `at`
            double sum = 0.0;
            for (std::size_t k = 0; k < count; ++k) {
                if (k == j) continue;
                double prod = 1.0 / (t[lo + j] - t[lo + k]);
                for (std::size_t l = 0; l < count; ++l) {
                    if (l == j || l == k) continue;
                    prod *= (at - t[lo + l]) / (t[lo + j] - t[lo + l]);
                }
                sum += prod;
            }
            deriv += v[lo + j] * sum;
        }
        return deriv;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (n >= 5 && i >= 2 && i + 2 < n)
            d[i] = fit_deriv(i - 2, 5, t[i]);
        else if (n >= 3) {
            const std::size_t lo = (i == 0) ? 0 : (i + 1 >= n ? n - 3 : i - 1);
            d[i] = fit_deriv(lo, 3, t[i]);
        } else {
            d[i] = (v[1] - v[0]) / (t[1] - t[0]);
        }
    }
    return d;
}

ResidualReport horizontality_residual(const SampledCurve& curve) {
    curve.validate();
    const std::size_t n = curve.grid.size();
    std::vector<double> f(n), g(n), h(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = curve.points[i].x;
        g[i] = curve.points[i].y;
        h[i] = curve.points[i].z;
    }
    const auto df = sample_derivative(curve.grid, f);
    const auto dg = sample_derivative(curve.grid, g);
    const auto dh = sample_derivative(curve.grid, h);

    ResidualReport rep;
    rep.per_point.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        rep.per_point[i] = dh[i] - 2.0 * (df[i] * g[i] - f[i] * dg[i]);
        rep.max_residual = std::max(rep.max_residual, std::abs(rep.per_point[i]));
    }
    return rep;
}

ResidualReport horizontality_residual(const CurveJetFn& curve,
                                      std::span<const double> grid) {
    if (grid.empty()) throw std::domain_error("horizontality residual: empty grid");
    ResidualReport rep;
    rep.per_point.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::array<double, 2> f{}, g{}, h{};
        curve(grid[i], f, g, h);
        rep.per_point[i] = h[1] - 2.0 * (f[1] * g[0] - f[0] * g[1]);
        rep.max_residual = std::max(rep.max_residual, std::abs(rep.per_point[i]));
    }
    return rep;
}

ScalarJet leibniz_vertical_jet(const ScalarJet& F, const ScalarJet& G) {
    if (!(F.K() == G.K()) || F.order() != G.order())
        throw std::invalid_argument("leibniz_vertical_jet: jets must share K and order");
    const int m = F.order();
    const std::size_t n = F.K().size();

    // Pascal's triangle up to row m-1.
    std::vector<std::vector<double>> binom(static_cast<std::size_t>(m) + 1);
    for (int r = 0; r <= m; ++r) {
        binom[r].assign(static_cast<std::size_t>(r) + 1, 1.0);
        for (int i = 1; i < r; ++i) binom[r][i] = binom[r - 1][i - 1] + binom[r - 1][i];
    }

    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m) + 1,
                                          std::vector<double>(n, 0.0));
    for (int k = 1; k <= m; ++k) {
        for (std::size_t p = 0; p < n; ++p) {
            double s = 0.0;
            for (int i = 0; i <= k - 1; ++i)
                s += binom[k - 1][i] *
                     (F.value(k - i, p) * G.value(i, p) - G.value(k - i, p) * F.value(i, p));
            rows[k][p] = 2.0 * s;
        }
    }
    return ScalarJet(F.K(), m, std::move(rows));
}

} // namespace horext
