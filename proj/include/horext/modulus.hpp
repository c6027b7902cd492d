#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace horext {

enum class ModulusKind { Power, Linear, Table };

// Concave increasing modulus of continuity with w(0) = 0. Immutable after
// construction; evaluation is pure. Tabulated data is interpolated linearly
// between knots (which preserves concavity) and extended past the last knot
// with the final secant slope; non-concave knot sets are rejected with a
// diagnostic naming the violating triple.
class ModulusOfContinuity {
public:
    static ModulusOfContinuity power(double alpha, double domain_cap = 1e9);
    static ModulusOfContinuity linear(double domain_cap = 1e9);
    static ModulusOfContinuity table(std::vector<std::array<double, 2>> knots,
                                     double domain_cap = 1e9);

    double operator()(double t) const;

    ModulusKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double domain_cap() const { return domain_cap_; }
    const std::vector<std::array<double, 2>>& knots() const { return knots_; }

private:
    ModulusOfContinuity(ModulusKind kind, double alpha, double cap,
                        std::vector<std::array<double, 2>> knots)
        : kind_(kind), alpha_(alpha), domain_cap_(cap), knots_(std::move(knots)) {}

    ModulusKind kind_;
    double alpha_;
    double domain_cap_;
    std::vector<std::array<double, 2>> knots_;
};

// Finite-sample lower bound for the C^{m,w} seminorm: max over pairs of
// |v(x) - v(y)| / w(|x - y|), where the values sample an m-th derivative.
// Duplicate points with differing values are inconsistent data.
double holder_seminorm(std::span<const std::pair<double, double>> values,
                       const ModulusOfContinuity& omega, int m);

} // namespace horext
