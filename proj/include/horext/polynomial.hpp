#pragma once

#include <span>
#include <vector>

#include "horext/series.hpp"

namespace horext {

// Univariate polynomial in the monomial basis, ascending degree.
// Coefficient list is never empty; the zero polynomial is {0}.
class Polynomial {
public:
    Polynomial() : c_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == 0.0; }

    // Evaluation with compensated (Neumaier) summation of the monomial terms.
    double operator()(double x) const;

    Polynomial derivative() const;
    Polynomial antiderivative() const;
    double integral(double a, double b) const;

    // Derivatives 0..order at t0, packed as a Taylor jet.
    TaylorJet jet_at(double t0, int order) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(double s) const;

    // this * (x + shift)
    Polynomial times_linear(double shift) const;

private:
    void trim();
    std::vector<double> c_;
};

// Strictly increasing distinct interpolation nodes. Rejects spacing below
// 1e-12 * diameter, where divided-difference quotients lose all meaning.
class NodeSet {
public:
    explicit NodeSet(std::vector<double> points);

    const std::vector<double>& points() const { return pts_; }
    std::size_t size() const { return pts_.size(); }
    double diam() const { return pts_.back() - pts_.front(); }

private:
    std::vector<double> pts_;
};

// Full leading column of the divided-difference table:
// [f[x0], f[x0,x1], ..., f[x0..xk]]. Points may come in any order but must
// be pairwise distinct.
std::vector<double> divided_differences(std::span<const double> xs,
                                        std::span<const double> values);
std::vector<double> divided_differences(const NodeSet& X,
                                        std::span<const double> values);

// Unique interpolating polynomial of degree <= |X|-1, expanded to monomials.
Polynomial newton_interpolant(const NodeSet& X, std::span<const double> values);

// sum_k jet[k]/k! (x-a)^k expanded to the monomial basis.
Polynomial taylor_from_jet(std::span<const double> jet_values_at_a, double a);

// Real roots of P in the open interval (a, b), found by recursing on
// derivatives (roots of P' bracket the extrema of P) and bisecting each
// sign change to width 1e-13 * (b - a). Tangential zeros without a sign
// change are not reported.
std::vector<double> sign_change_roots(const Polynomial& P, double a, double b);

// Integral of |P| over [a, b], splitting at the sign changes of P and
// integrating the antiderivative exactly on each sign-constant piece.
double integral_abs(const Polynomial& P, double a, double b, double tol = 1e-12);

struct MarkovBound {
    double bound;
    double max_abs;
};

// (2 n^2 / (b-a)) * max |P| on [a, b], with the max found by critical-point
// enumeration; bounds max |P'| on [a, b].
MarkovBound markov_derivative_bound(const Polynomial& P, double a, double b);

} // namespace horext
