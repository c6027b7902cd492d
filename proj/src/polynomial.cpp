#include "horext/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace horext {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
    for (double v : c_)
        if (!std::isfinite(v))
            throw std::invalid_argument("polynomial coefficient not finite");
    trim();
}

void Polynomial::trim() {
    while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double x) const {
    // Neumaier-compensated sum of c_k * x^k.
    double sum = 0.0, comp = 0.0, power = 1.0;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        const double term = c_[k] * power;
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        power *= x;
    }
    return sum + comp;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() == 1) return Polynomial{};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    std::vector<double> a(c_.size() + 1, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<double>(k + 1);
    return Polynomial(std::move(a));
}

double Polynomial::integral(double a, double b) const {
    const Polynomial A = antiderivative();
    return A(b) - A(a);
}

TaylorJet Polynomial::jet_at(double t0, int order) const {
    // Taylor shift by repeated synthetic division: coefficients of P(t0 + h).
    std::vector<double> w = c_;
    const std::size_t n = w.size();
    TaylorJet jet(order);
    for (std::size_t pass = 0; pass <= static_cast<std::size_t>(order) && pass < n; ++pass) {
        for (std::size_t k = n - 1; k > pass; --k) w[k - 1] += w[k] * t0;
        jet.coeff(static_cast<int>(pass)) = w[pass];
        // Next pass divides out one factor of h: shift the working window.
    }
    return jet;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] -= o.c_[k];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial{};
    std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(double s) const {
    std::vector<double> r = c_;
    for (double& v : r) v *= s;
    return Polynomial(std::move(r));
}

Polynomial Polynomial::times_linear(double shift) const {
    std::vector<double> r(c_.size() + 1, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
        r[k + 1] += c_[k];
        r[k] += c_[k] * shift;
    }
    return Polynomial(std::move(r));
}

NodeSet::NodeSet(std::vector<double> points) : pts_(std::move(points)) {
    if (pts_.empty()) throw std::invalid_argument("node set is empty");
    for (std::size_t i = 1; i < pts_.size(); ++i)
        if (!(pts_[i] > pts_[i - 1]))
            throw std::invalid_argument("node set points must be strictly increasing");
    if (pts_.size() >= 2) {
        const double d = diam();
        for (std::size_t i = 1; i < pts_.size(); ++i)
            if (pts_[i] - pts_[i - 1] < 1e-12 * d)
                throw std::invalid_argument("node spacing below 1e-12 * diameter");
    }
}

std::vector<double> divided_differences(std::span<const double> xs,
                                        std::span<const double> values) {
    if (xs.size() != values.size())
        throw std::invalid_argument("divided_differences: size mismatch");
    if (xs.empty()) throw std::invalid_argument("divided_differences: empty input");
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (xs[i] == xs[j])
                throw std::invalid_argument("divided_differences: duplicate points");

    // Standard in-place table: after pass k, col[i] = f[x_i, ..., x_{i+k}].
    std::vector<double> col(values.begin(), values.end());
    std::vector<double> out;
    out.reserve(xs.size());
    out.push_back(col[0]);
    for (std::size_t k = 1; k < xs.size(); ++k) {
        for (std::size_t i = 0; i + k < xs.size(); ++i)
            col[i] = (col[i + 1] - col[i]) / (xs[i + k] - xs[i]);
        out.push_back(col[0]);
    }
    return out;
}

std::vector<double> divided_differences(const NodeSet& X,
                                        std::span<const double> values) {
    return divided_differences(std::span<const double>(X.points()), values);
}

Polynomial newton_interpolant(const NodeSet& X, std::span<const double> values) {
    const auto dd = divided_differences(X, values);
    const auto& x = X.points();
    // Horner on the Newton form: P = dd[n] and P <- P*(t - x_k) + dd[k].
    Polynomial P({dd.back()});
    for (std::size_t k = dd.size() - 1; k-- > 0;) {
        P = P.times_linear(-x[k]);
        P = P + Polynomial({dd[k]});
    }
    return P;
}

Polynomial taylor_from_jet(std::span<const double> jet_values_at_a, double a) {
    if (jet_values_at_a.empty())
        throw std::invalid_argument("taylor_from_jet: empty jet");
    // Horner in (x - a) over coefficients F^k(a)/k!.
    double fact = 1.0;
    std::vector<double> scaled(jet_values_at_a.size());
    for (std::size_t k = 0; k < jet_values_at_a.size(); ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        scaled[k] = jet_values_at_a[k] / fact;
    }
    Polynomial P({scaled.back()});
    for (std::size_t k = scaled.size() - 1; k-- > 0;) {
        P = P.times_linear(-a);
        P = P + Polynomial({scaled[k]});
    }
    return P;
}

namespace {

double bisect_root(const Polynomial& P, double lo, double hi, double width) {
    double flo = P(lo);
    if (flo == 0.0) return lo;
    for (int it = 0; it < 200 && hi - lo > width; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = P(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<double> sign_change_roots(const Polynomial& P, double a, double b) {
    std::vector<double> roots;
    if (P.degree() < 1 || P.is_zero() || !(a < b)) return roots;
    const double width = 1e-13 * (b - a);

    std::vector<double> breaks;
    if (P.degree() > 1) breaks = sign_change_roots(P.derivative(), a, b);
    // The derivative's tangential extrema are not sign changes of P', but
    // any strict extremum of P is; sampling the breakpoints suffices.
    std::vector<double> pts;
    pts.push_back(a);
    for (double r : breaks) pts.push_back(r);
    pts.push_back(b);

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double lo = pts[i], hi = pts[i + 1];
        const double flo = P(lo), fhi = P(hi);
        if (flo == 0.0 && i == 0) roots.push_back(lo);
        if ((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0))
            roots.push_back(bisect_root(P, lo, hi, width));
        else if (fhi == 0.0 && i + 2 < pts.size())
            roots.push_back(hi);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    // Keep strictly interior roots only.
    std::erase_if(roots, [&](double r) { return !(r > a && r < b); });
    return roots;
}

double integral_abs(const Polynomial& P, double a, double b, double tol) {
    if (!(a < b)) throw std::invalid_argument("integral_abs: requires a < b");
    if (tol <= 0.0) throw std::invalid_argument("integral_abs: tol must be positive");
    if (P.is_zero()) return 0.0;

    const auto roots = sign_change_roots(P, a, b);
    const Polynomial A = P.antiderivative();
    std::vector<double> pts;
    pts.push_back(a);
    for (double r : roots) pts.push_back(r);
    pts.push_back(b);

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total += std::abs(A(pts[i + 1]) - A(pts[i]));
    }
    return total;
}

MarkovBound markov_derivative_bound(const Polynomial& P, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("markov_derivative_bound: requires a < b");
    const int n = P.degree();
    double max_abs = std::max(std::abs(P(a)), std::abs(P(b)));
    if (n >= 2)
        for (double r : sign_change_roots(P.derivative(), a, b))
            max_abs = std::max(max_abs, std::abs(P(r)));
    const double bound = 2.0 * n * n / (b - a) * max_abs;
    return {bound, max_abs};
}

} // namespace horext
