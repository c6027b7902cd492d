#include "horext/fixtures.hpp"

#include <cmath>
#include <random>

namespace horext::fixtures {

namespace {

std::vector<double> poly_jet(const Polynomial& P, double t, int order) {
    std::vector<double> out(static_cast<std::size_t>(order) + 1);
    const TaylorJet j = P.jet_at(t, order);
    for (int k = 0; k <= order; ++k) out[static_cast<std::size_t>(k)] = j.derivative(k);
    return out;
}

} // namespace

AnalyticCurve circle_lift() {
    AnalyticCurve c;
    c.name = "circle_lift";
    c.f = [](double t, int order) {
        std::vector<double> out(static_cast<std::size_t>(order) + 1);
        for (int k = 0; k <= order; ++k) out[k] = std::cos(t + k * M_PI_2);
        return out;
    };
    c.g = [](double t, int order) {
        std::vector<double> out(static_cast<std::size_t>(order) + 1);
        for (int k = 0; k <= order; ++k) out[k] = std::sin(t + k * M_PI_2);
        return out;
    };
    c.h = [](double t, int order) {
        std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
        out[0] = -2.0 * t;
        if (order >= 1) out[1] = -2.0;
        return out;
    };
    return c;
}

AnalyticCurve poly_lift(const Polynomial& f, const Polynomial& g, double h0,
                        const std::string& name) {
    // h' = 2 (f'g - f g')  =>  h = h0 + 2 int_0^t (f'g - f g').
    const Polynomial bracket = f.derivative() * g - g.derivative() * f;
    Polynomial h = (bracket.antiderivative() * 2.0);
    h = h + Polynomial({h0 - h(0.0)});
    AnalyticCurve c;
    c.name = name;
    c.f = [f](double t, int order) { return poly_jet(f, t, order); };
    c.g = [g](double t, int order) { return poly_jet(g, t, order); };
    c.h = [h](double t, int order) { return poly_jet(h, t, order); };
    return c;
}

AnalyticCurve cubic_lift() {
    return poly_lift(Polynomial({0.0, 1.0}), Polynomial({0.0, 0.0, 1.0}), 0.0,
                     "cubic_lift");
}

AnalyticCurve random_poly_lift(int degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> fc(static_cast<std::size_t>(degree) + 1);
    std::vector<double> gc(static_cast<std::size_t>(degree) + 1);
    for (auto& v : fc) v = coef(rng);
    for (auto& v : gc) v = coef(rng);
    return poly_lift(Polynomial(fc), Polynomial(gc), coef(rng),
                     "poly_lift_deg" + std::to_string(degree) + "_seed" +
                         std::to_string(seed));
}

AnalyticCurve vertical_line() {
    AnalyticCurve c;
    c.name = "vertical_line";
    c.horizontal = false;
    auto zero = [](double, int order) {
        return std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0);
    };
    c.f = zero;
    c.g = zero;
    c.h = [](double t, int order) {
        std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
        out[0] = t;
        return out;
    };
    return c;
}

AnalyticCurve corner_curve() {
    AnalyticCurve c;
    c.name = "corner_curve";
    c.f = [](double t, int order) {
        std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
        out[0] = std::abs(t - 0.5);
        if (order >= 1) out[1] = (t < 0.5) ? -1.0 : 1.0;
        return out;
    };
    c.g = [](double t, int order) {
        std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
        out[0] = t;
        if (order >= 1) out[1] = 1.0;
        return out;
    };
    // h' = 2 (f'g - f g') = -1 on the left branch, +1 on the right.
    c.h = [](double t, int order) {
        std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
        out[0] = (t < 0.5) ? -t : t - 1.0;
        if (order >= 1) out[1] = (t < 0.5) ? -1.0 : 1.0;
        return out;
    };
    return c;
}

HorizontalJetTriple sample_jets(const AnalyticCurve& curve, const SampleSet& K, int m) {
    const std::size_t n = K.size();
    std::vector<std::vector<double>> F(m + 1, std::vector<double>(n));
    std::vector<std::vector<double>> G(m + 1, std::vector<double>(n));
    std::vector<std::vector<double>> H(m + 1, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double t = K.points()[i];
        const auto fj = curve.f(t, m), gj = curve.g(t, m), hj = curve.h(t, m);
        for (int k = 0; k <= m; ++k) {
            F[k][i] = fj[k];
            G[k][i] = gj[k];
            H[k][i] = hj[k];
        }
    }
    return HorizontalJetTriple(ScalarJet(K, m, std::move(F)),
                               ScalarJet(K, m, std::move(G)),
                               ScalarJet(K, m, std::move(H)));
}

SampledCurve sample_curve(const AnalyticCurve& curve, const std::vector<double>& grid) {
    SampledCurve out;
    out.grid = grid;
    out.points.reserve(grid.size());
    for (double t : grid)
        out.points.push_back({curve.f(t, 0)[0], curve.g(t, 0)[0], curve.h(t, 0)[0]});
    return out;
}

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

std::vector<AnalyticCurve> smooth_suite() {
    std::vector<AnalyticCurve> suite;
    suite.push_back(circle_lift());
    suite.push_back(cubic_lift());
    suite.push_back(random_poly_lift(3, 11));
    suite.push_back(random_poly_lift(5, 23));
    suite.push_back(random_poly_lift(6, 47));
    return suite;
}

} // namespace horext::fixtures
