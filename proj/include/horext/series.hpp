#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

namespace horext {

// Truncated Taylor series at a point: coeff(k) = f^(k)(t0) / k!.
// All operands of a binary operation must share the same truncation order.
class TaylorJet {
public:
    explicit TaylorJet(int order) : c_(static_cast<std::size_t>(order) + 1, 0.0) {}

    static TaylorJet constant(double v, int order) {
        TaylorJet j(order);
        j.c_[0] = v;
        return j;
    }

    // The running variable itself: value v, first derivative dv.
    static TaylorJet variable(double v, double dv, int order) {
        TaylorJet j(order);
        j.c_[0] = v;
        if (order >= 1) j.c_[1] = dv;
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
    double& coeff(int k) { return c_[static_cast<std::size_t>(k)]; }
    double value() const { return c_[0]; }

    double derivative(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c_[static_cast<std::size_t>(k)] * f;
    }

    // Jet of the derivative, one order lower.
    TaylorJet derivative_jet() const {
        TaylorJet r(order() > 0 ? order() - 1 : 0);
        for (int k = 1; k <= order(); ++k) r.coeff(k - 1) = k * c_[k];
        return r;
    }

    TaylorJet truncated(int new_order) const {
        TaylorJet r(new_order);
        for (int k = 0; k <= std::min(new_order, order()); ++k) r.coeff(k) = c_[k];
        return r;
    }

    TaylorJet operator-() const {
        TaylorJet r(order());
        for (int k = 0; k <= order(); ++k) r.c_[k] = -c_[k];
        return r;
    }

    TaylorJet operator+(const TaylorJet& o) const {
        assert(order() == o.order());
        TaylorJet r(order());
        for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] + o.c_[k];
        return r;
    }

    TaylorJet operator-(const TaylorJet& o) const {
        assert(order() == o.order());
        TaylorJet r(order());
        for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] - o.c_[k];
        return r;
    }

    TaylorJet operator*(const TaylorJet& o) const {
        assert(order() == o.order());
        TaylorJet r(order());
        for (int k = 0; k <= order(); ++k) {
            double s = 0.0;
            for (int i = 0; i <= k; ++i) s += c_[i] * o.c_[k - i];
            r.c_[k] = s;
        }
        return r;
    }

    TaylorJet operator*(double s) const {
        TaylorJet r(order());
        for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] * s;
        return r;
    }

    TaylorJet operator+(double s) const {
        TaylorJet r = *this;
        r.c_[0] += s;
        return r;
    }

    // 1 / this; requires nonzero constant term.
    TaylorJet recip() const {
        TaylorJet r(order());
        const double inv0 = 1.0 / c_[0];
        r.c_[0] = inv0;
        for (int k = 1; k <= order(); ++k) {
            double s = 0.0;
            for (int i = 1; i <= k; ++i) s += c_[i] * r.c_[k - i];
            r.c_[k] = -inv0 * s;
        }
        return r;
    }

    TaylorJet operator/(const TaylorJet& o) const { return *this * o.recip(); }

    // exp(this); if exp underflows at the base point the whole jet is zero.
    TaylorJet exp() const {
        TaylorJet r(order());
        r.c_[0] = std::exp(c_[0]);
        for (int k = 1; k <= order(); ++k) {
            double s = 0.0;
            for (int i = 1; i <= k; ++i) s += i * c_[i] * r.c_[k - i];
            r.c_[k] = s / k;
        }
        return r;
    }

private:
    std::vector<double> c_;
};

inline TaylorJet operator*(double s, const TaylorJet& j) { return j * s; }

// Flat step: 0 for s <= 0, 1 for s >= 1, exp(-1/s)/(exp(-1/s)+exp(-1/(1-s)))
// in between; every derivative vanishes at both ends. The jet is taken along
// t with s = s0 + ds_dt * (t - t0).
inline TaylorJet smooth_step_jet(double s0, double ds_dt, int order) {
    if (s0 <= 1e-6) return TaylorJet(order);
    if (s0 >= 1.0 - 1e-6) return TaylorJet::constant(1.0, order);
    const TaylorJet s = TaylorJet::variable(s0, ds_dt, order);
    const TaylorJet one = TaylorJet::constant(1.0, order);
    const TaylorJet sa = (-s.recip()).exp();
    const TaylorJet sb = (-(one - s).recip()).exp();
    return sa / (sa + sb);
}

inline double smooth_step(double s) {
    return smooth_step_jet(s, 1.0, 0).value();
}

// Canonical bump profile exp(-1/(1-u^2)) on (-1,1), zero elsewhere, taken
// along t with u = u0 + du_dt * (t - t0).
inline TaylorJet bump_profile_jet(double u0, double du_dt, int order) {
    const double w0 = 1.0 - u0 * u0;
    if (w0 <= 1e-6) return TaylorJet(order);
    const TaylorJet u = TaylorJet::variable(u0, du_dt, order);
    const TaylorJet one = TaylorJet::constant(1.0, order);
    const TaylorJet w = one - u * u;
    return (-w.recip()).exp();
}

} // namespace horext
