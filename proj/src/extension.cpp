#include "horext/extension.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <stdexcept>

#include "horext/heisenberg.hpp"
#include "horext/quadrature.hpp"

namespace horext {

namespace {

TaylorJet data_jet(const std::vector<std::vector<double>>& rows, std::size_t i,
                   int order) {
    TaylorJet j(order);
    double fact = 1.0;
    for (int k = 0; k <= order && k < static_cast<int>(rows.size()); ++k) {
        if (k > 0) fact *= k;
        j.coeff(k) = rows[k][i] / fact;
    }
    return j;
}

double bracket_value(const TaylorJet& fj, const TaylorJet& gj) {
    return 2.0 * (fj.derivative(1) * gj.value() - fj.value() * gj.derivative(1));
}

} // namespace

TaylorJet Bump::jet_at(double t, int order) const {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double u0 = (t - mid) / half;
    if (std::abs(u0) >= 1.0) return TaylorJet(order);
    return bump_profile_jet(u0, 1.0 / half, order) * amplitude;
}

TaylorJet GapBlend::jet_at(double t, int order) const {
    const double len = b - a;
    const TaylorJet chi = smooth_step_jet((t - a) / len, 1.0 / len, order);
    const TaylorJet ja = pa.jet_at(t, order);
    const TaylorJet jb = pb.jet_at(t, order);
    return ja + chi * (jb - ja);
}

TaylorJet GapFunction::jet_at(double t, int order) const {
    TaylorJet j = blend.jet_at(t, order);
    for (const Bump& bump : bumps) j = j + bump.jet_at(t, order);
    return j;
}

std::string to_string(RepairCase c) {
    switch (c) {
    case RepairCase::None: return "none";
    case RepairCase::FBig: return "f-big";
    case RepairCase::GBig: return "g-big";
    case RepairCase::SmallLoop: return "small-loop";
    }
    return "?";
}

namespace {

// Sup of |D^i bump| over its support, orders 0..m, by dense jet sampling.
double bump_derivative_sup(const Bump& bump, int m, std::size_t samples = 1025) {
    double sup = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t =
            bump.lo + (bump.hi - bump.lo) * static_cast<double>(i) / (samples - 1);
        const TaylorJet j = bump.jet_at(t, m);
        for (int k = 0; k <= m; ++k) sup = std::max(sup, std::abs(j.derivative(k)));
    }
    return sup;
}

} // namespace

ExtensionConstants measure_extension_constants(std::span<const double> kappa_by_order) {
    ExtensionConstants out;
    const int m_max = static_cast<int>(kappa_by_order.size()) - 1;
    if (m_max < 0)
        throw std::invalid_argument("measure_extension_constants: empty kappa list");

    const Bump unit{0.0, 1.0, 1.0};
    const Bump loop1{0.15, 0.55, 1.0};
    const Bump loop2{0.45, 0.85, 1.0};

    double c_prev = 1.0; // the order -1 seed
    for (int m = 0; m <= m_max; ++m) {
        const double kappa = std::max(1.0, kappa_by_order[m]);
        // Amplitude bound of the realized bump (the profile peak); this is
        // what the case thresholds compare speeds against.
        const double C = bump_derivative_sup(unit, 0);
        // Realized derivative bound of the loop pair through order m; the
        // schedule couples kappa with this bound so the sup-norm guard stays
        // honest for data with large measured constants.
        const double Cp =
            std::max(bump_derivative_sup(loop1, m), bump_derivative_sup(loop2, m));
        const double ct = std::max({kappa * Cp, 6.0 * Cp, c_prev + 1.0});
        out.kappa.push_back(kappa);
        out.C.push_back(C);
        out.Cprime.push_back(Cp);
        out.c_schedule.push_back(1.0 / (ct * ct));
        c_prev = ct;
    }
    return out;
}

ScalarExtension::ScalarExtension(const ScalarJet& jet, double alpha, double beta)
    : K_(jet.K()), m_(jet.order()), alpha_(alpha), beta_(beta), rows_(jet.rows()) {
    if (!(alpha <= K_.min() && beta >= K_.max()))
        throw std::invalid_argument("extension interval must contain the sample hull");
    const auto& pts = K_.points();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        gaps_.push_back({pts[i], pts[i + 1], i});
        blends_.push_back({pts[i], pts[i + 1],
                           taylor_from_jet(jet.at(i), pts[i]),
                           taylor_from_jet(jet.at(i + 1), pts[i + 1])});
    }
}

TaylorJet ScalarExtension::jet_at(double t, int order) const {
    if (order > m_)
        throw std::invalid_argument("scalar extension queried beyond its jet order");
    if (!(t >= alpha_ && t <= beta_))
        throw std::domain_error("scalar extension queried outside its interval");
    const auto& pts = K_.points();
    if (t <= pts.front())
        return t == pts.front() ? data_jet(rows_, 0, order)
                                : blends_.front().pa.jet_at(t, order);
    if (t >= pts.back())
        return t == pts.back() ? data_jet(rows_, pts.size() - 1, order)
                               : blends_.back().pb.jet_at(t, order);
    const auto it = std::lower_bound(pts.begin(), pts.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - pts.begin());
    if (*it == t) return data_jet(rows_, hi, order);
    return blends_[hi - 1].jet_at(t, order);
}

ScalarExtension whitney_extend_scalar(const ScalarJet& jet, double alpha, double beta) {
    return ScalarExtension(jet, alpha, beta);
}

VerticalRedefineResult vertical_redefine(const ScalarExtension& f,
                                         const ScalarExtension& g,
                                         std::span<const double> H0) {
    if (!(f.K() == g.K()))
        throw std::invalid_argument("vertical_redefine: extensions must share K");
    if (H0.size() != f.K().size())
        throw std::invalid_argument("vertical_redefine: H0 must match |K|");
    VerticalRedefineResult out;
    for (const Gap& gap : f.gaps()) {
        const double integral = integrate_adaptive(
            [&](double t) { return bracket_value(f.jet_at(t, 1), g.jet_at(t, 1)); },
            gap.a, gap.b, 1e-12, 1e-15);
        out.deficits.push_back(H0[gap.index + 1] - (H0[gap.index] + integral));
    }
    return out;
}

namespace {

struct SignRun {
    double lo = 0.0, hi = 0.0;
    bool found = false;
};

// Longest subinterval of (a, b) on which fn keeps one strict sign, located by
// sampling and shrunk 10% from each end.
SignRun longest_sign_run(const GapFunction& fn, double a, double b) {
    const std::size_t n = 512;
    const double step = (b - a) / static_cast<double>(n + 1);
    SignRun best;
    double run_lo = 0.0;
    int run_sign = 0;
    auto close_run = [&](double run_hi) {
        if (run_sign != 0 && (!best.found || run_hi - run_lo > best.hi - best.lo)) {
            best = {run_lo, run_hi, true};
        }
    };
    for (std::size_t i = 1; i <= n; ++i) {
        const double t = a + step * static_cast<double>(i);
        const double d = fn.deriv(t);
        const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (s != run_sign) {
            close_run(t - step);
            run_lo = t;
            run_sign = s;
        }
    }
    close_run(b - step);
    if (best.found) {
        const double w = best.hi - best.lo;
        best.lo += 0.1 * w;
        best.hi -= 0.1 * w;
        if (!(best.hi > best.lo)) best.found = false;
    }
    return best;
}

double pair_integral(const std::vector<Bump>& phi, const std::vector<Bump>& psi,
                     const GapFunction& f, const GapFunction& g, double a, double b,
                     double rel_tol) {
    auto bump_sum = [](const std::vector<Bump>& bumps, double t, int order) {
        TaylorJet j(order);
        for (const Bump& bump : bumps) j = j + bump.jet_at(t, order);
        return j;
    };
    return 4.0 * integrate_adaptive(
                     [&](double t) {
                         const TaylorJet pj = bump_sum(phi, t, 1);
                         const TaylorJet sj = bump_sum(psi, t, 1);
                         return sj.value() * f.deriv(t) - pj.value() * g.deriv(t) +
                                sj.value() * pj.derivative(1);
                     },
                     a, b, rel_tol, 1e-300);
}

double pair_sup_norm(const PerturbationPair& pair, double a, double b, int m) {
    double sup = 0.0;
    const std::size_t n = 257;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = a + (b - a) * static_cast<double>(i) / (n - 1);
        for (const auto* bumps : {&pair.phi, &pair.psi}) {
            TaylorJet j(m);
            for (const Bump& bump : *bumps) j = j + bump.jet_at(t, m);
            for (int k = 0; k <= m; ++k) sup = std::max(sup, std::abs(j.derivative(k)));
        }
    }
    return sup;
}

} // namespace

PerturbationPair horizontality_repair(const Gap& gap, const GapFunction& f,
                                      const GapFunction& g, double area_deficit, int m,
                                      const ExtensionConstants& constants,
                                      const RepairOptions& opts) {
    if (!(gap.b > gap.a))
        throw std::invalid_argument("horizontality_repair: degenerate gap");
    if (!std::isfinite(area_deficit))
        throw std::invalid_argument("horizontality_repair: deficit not finite");
    const double L = gap.length();
    const double A = area_deficit;

    PerturbationPair pair;
    pair.area_deficit = A;

    if (std::abs(A) <= opts.deadband) {
        pair.kind = RepairCase::None;
        pair.residual = std::abs(A);
        return pair;
    }

    const int order_idx = std::min<int>(m, constants.max_order());
    const double kappa = constants.kappa[order_idx];
    const double C = constants.C[order_idx];
    const double tau = kappa * C * std::pow(L, m + 1);

    const double If = integrate_adaptive(
        [&](double t) { return std::abs(f.deriv(t)); }, gap.a, gap.b, 1e-11, 1e-300);
    const double Ig = integrate_adaptive(
        [&](double t) { return std::abs(g.deriv(t)); }, gap.a, gap.b, 1e-11, 1e-300);

    const double min_support = L / (18.0 * std::max(1, m * m));

    auto try_single = [&](const GapFunction& lever, bool lever_is_f) -> bool {
        const SignRun run = longest_sign_run(lever, gap.a, gap.b);
        if (!run.found || run.hi - run.lo < min_support) return false;
        const Bump eta{run.lo, run.hi, 1.0};
        const double S = integrate_adaptive(
            [&](double t) { return eta.value(t) * lever.deriv(t); }, run.lo, run.hi,
            opts.quad_rel_tol, 1e-300);
        if (std::abs(S) <= 1e-14 * (1.0 + If + Ig)) return false;
        if (lever_is_f) {
            pair.kind = RepairCase::FBig;
            pair.psi = {Bump{run.lo, run.hi, A / (4.0 * S)}};
            pair.phi.clear();
        } else {
            pair.kind = RepairCase::GBig;
            pair.phi = {Bump{run.lo, run.hi, -A / (4.0 * S)}};
            pair.psi.clear();
        }
        return true;
    };

    bool solved = false;
    if (If >= std::max(Ig, tau)) solved = try_single(f, true);
    if (!solved && Ig >= std::max(If, tau)) solved = try_single(g, false);

    if (!solved) {
        // Overlapping loop: phi = lambda eta1, psi = s lambda eta2 turns the
        // goal equation into a quadratic in lambda whose loop term has the
        // sign we pick.
        const Bump eta1{gap.a + 0.15 * L, gap.a + 0.55 * L, 1.0};
        const Bump eta2{gap.a + 0.45 * L, gap.a + 0.85 * L, 1.0};
        const double c12 = integrate_adaptive(
            [&](double t) { return eta2.value(t) * eta1.jet_at(t, 1).derivative(1); },
            eta2.lo, eta1.hi, opts.quad_rel_tol, 1e-300);
        const double Sf = integrate_adaptive(
            [&](double t) { return eta2.value(t) * f.deriv(t); }, eta2.lo, eta2.hi,
            opts.quad_rel_tol, 1e-300);
        const double Sg = integrate_adaptive(
            [&](double t) { return eta1.value(t) * g.deriv(t); }, eta1.lo, eta1.hi,
            opts.quad_rel_tol, 1e-300);
        const double s = (A * c12 > 0.0) ? 1.0 : -1.0;
        const double qa = 4.0 * s * c12; // qa * A > 0, so real roots exist
        const double qb = 4.0 * (s * Sf - Sg);

        double lambda = std::sqrt(std::abs(A) / (4.0 * std::abs(c12)));
        // Newton on q(l) = qa l^2 + qb l - A from the loop-only seed.
        bool converged = false;
        for (int it = 0; it < 80; ++it) {
            const double q = qa * lambda * lambda + qb * lambda - A;
            const double dq = 2.0 * qa * lambda + qb;
            if (dq == 0.0) break;
            const double next = lambda - q / dq;
            if (std::abs(next - lambda) <= 1e-16 * (1.0 + std::abs(next))) {
                lambda = next;
                converged = true;
                break;
            }
            lambda = next;
        }
        if (!converged) {
            // Quadratic formula fallback; keep the smaller-magnitude root.
            const double disc = qb * qb + 4.0 * qa * A;
            const double sq = std::sqrt(std::max(0.0, disc));
            const double r1 = (-qb + sq) / (2.0 * qa);
            const double r2 = (-qb - sq) / (2.0 * qa);
            lambda = std::abs(r1) < std::abs(r2) ? r1 : r2;
        }
        pair.kind = RepairCase::SmallLoop;
        pair.phi = {Bump{eta1.lo, eta1.hi, lambda}};
        pair.psi = {Bump{eta2.lo, eta2.hi, s * lambda}};
    }

    // Postconditions, re-verified with independent quadrature.
    const double achieved =
        pair_integral(pair.phi, pair.psi, f, g, gap.a, gap.b, opts.quad_rel_tol * 0.5);
    pair.residual = std::abs(achieved - A);
    if (pair.residual > opts.residual_tol * (1.0 + std::abs(A)))
        throw AdmissibilityError(gap.a, gap.b, std::abs(A),
                                 "gap repair failed to meet its residual target");

    for (const double t : {gap.a, gap.b}) {
        for (const auto* bumps : {&pair.phi, &pair.psi}) {
            TaylorJet j(m);
            for (const Bump& bump : *bumps) j = j + bump.jet_at(t, m);
            for (int k = 0; k <= m; ++k)
                if (std::abs(j.derivative(k)) > 1e-10)
                    throw AdmissibilityError(gap.a, gap.b, std::abs(A),
                                             "gap repair lost endpoint flatness");
        }
    }

    pair.sup_norm = pair_sup_norm(pair, gap.a, gap.b, m);
    const double c_m = constants.c_schedule[order_idx];
    if (L <= c_m && pair.sup_norm > std::sqrt(L)) {
        const double velocity =
            std::pow(L, 2 * m + 2) + std::pow(L, m + 1) * (If + Ig);
        throw AdmissibilityError(
            gap.a, gap.b, velocity > 0.0 ? std::abs(A) / velocity : 0.0,
            "gap repair exceeds the sup-norm guard; the data's area/velocity "
            "constant is too large for this gap");
    }
    return pair;
}

PiecewiseSmoothCurve::PiecewiseSmoothCurve(HorizontalJetTriple jets, double alpha,
                                           double beta)
    : jets_(std::move(jets)), alpha_(alpha), beta_(beta) {}

const PiecewiseSmoothCurve::GapPiece* PiecewiseSmoothCurve::find_gap(double t) const {
    for (const auto& piece : pieces_)
        if (t > piece.gap.a && t < piece.gap.b) return &piece;
    return nullptr;
}

TaylorJet PiecewiseSmoothCurve::f_jet(double t, int order) const {
    const auto& pts = K().points();
    if (t < pts.front()) return outer_f_lo_.jet_at(t, order);
    if (t > pts.back()) return outer_f_hi_.jet_at(t, order);
    const auto it = std::lower_bound(pts.begin(), pts.end(), t);
    if (it != pts.end() && *it == t)
        return data_jet(jets_.F.rows(), static_cast<std::size_t>(it - pts.begin()),
                        order);
    return find_gap(t)->f.jet_at(t, order);
}

TaylorJet PiecewiseSmoothCurve::g_jet(double t, int order) const {
    const auto& pts = K().points();
    if (t < pts.front()) return outer_g_lo_.jet_at(t, order);
    if (t > pts.back()) return outer_g_hi_.jet_at(t, order);
    const auto it = std::lower_bound(pts.begin(), pts.end(), t);
    if (it != pts.end() && *it == t)
        return data_jet(jets_.G.rows(), static_cast<std::size_t>(it - pts.begin()),
                        order);
    return find_gap(t)->g.jet_at(t, order);
}

double PiecewiseSmoothCurve::h_value(double t) const {
    const auto& pts = K().points();
    auto bracket = [&](double u) { return bracket_value(f_jet(u, 1), g_jet(u, 1)); };
    if (t < pts.front())
        return jets_.H.value(0, 0) + integrate_adaptive(bracket, pts.front(), t,
                                                        1e-12, 1e-15);
    if (t > pts.back())
        return jets_.H.value(0, K().size() - 1) +
               integrate_adaptive(bracket, pts.back(), t, 1e-12, 1e-15);
    const auto it = std::lower_bound(pts.begin(), pts.end(), t);
    if (it != pts.end() && *it == t)
        return jets_.H.value(0, static_cast<std::size_t>(it - pts.begin()));
    const GapPiece* piece = find_gap(t);
    return piece->h_start +
           integrate_adaptive(bracket, piece->gap.a, t, 1e-12, 1e-15);
}

void PiecewiseSmoothCurve::jets_at(double t, int order, std::vector<double>& f,
                                   std::vector<double>& g, std::vector<double>& h) const {
    if (!(t >= alpha_ && t <= beta_))
        throw std::domain_error("curve queried outside its interval");
    const auto& pts = K().points();
    f.assign(static_cast<std::size_t>(order) + 1, 0.0);
    g.assign(static_cast<std::size_t>(order) + 1, 0.0);
    h.assign(static_cast<std::size_t>(order) + 1, 0.0);

    const auto it = std::lower_bound(pts.begin(), pts.end(), t);
    if (it != pts.end() && *it == t) {
        const std::size_t i = static_cast<std::size_t>(it - pts.begin());
        for (int k = 0; k <= order && k <= jets_.order(); ++k) {
            f[k] = jets_.F.value(k, i);
            g[k] = jets_.G.value(k, i);
            h[k] = jets_.H.value(k, i);
        }
        return;
    }

    const TaylorJet fj = f_jet(t, order);
    const TaylorJet gj = g_jet(t, order);
    for (int k = 0; k <= order; ++k) {
        f[k] = fj.derivative(k);
        g[k] = gj.derivative(k);
    }
    h[0] = h_value(t);
    if (order >= 1) {
        const int bo = order - 1;
        const TaylorJet bracket =
            (fj.derivative_jet().truncated(bo) * gj.truncated(bo) -
             gj.derivative_jet().truncated(bo) * fj.truncated(bo)) *
            2.0;
        for (int k = 1; k <= order; ++k) h[k] = bracket.derivative(k - 1);
    }
}

std::array<double, 3> PiecewiseSmoothCurve::eval(double t) const {
    std::vector<double> f, g, h;
    jets_at(t, 0, f, g, h);
    return {f[0], g[0], h[0]};
}

double PiecewiseSmoothCurve::residual_at(double t) const {
    std::vector<double> f, g, h;
    jets_at(t, 1, f, g, h);
    return h[1] - 2.0 * (f[1] * g[0] - f[0] * g[1]);
}

std::vector<double> PiecewiseSmoothCurve::audit_grid(std::size_t per_gap) const {
    std::vector<double> grid(K().points());
    auto fill = [&](double lo, double hi) {
        for (std::size_t j = 1; j <= per_gap; ++j)
            grid.push_back(lo + (hi - lo) * static_cast<double>(j) /
                                    static_cast<double>(per_gap + 1));
    };
    for (const auto& piece : pieces_) fill(piece.gap.a, piece.gap.b);
    if (alpha_ < K().min()) fill(alpha_, K().min());
    if (beta_ > K().max()) fill(K().max(), beta_);
    std::sort(grid.begin(), grid.end());
    return grid;
}

void PiecewiseSmoothCurve::export_csv(std::ostream& os, std::size_t resolution) const {
    os << "t,x,y,z,residual\n";
    char line[256];
    for (std::size_t i = 0; i < resolution; ++i) {
        const double t =
            alpha_ + (beta_ - alpha_) * static_cast<double>(i) /
                         static_cast<double>(resolution > 1 ? resolution - 1 : 1);
        const auto p = eval(t);
        const double r = residual_at(t);
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", t, p[0],
                      p[1], p[2], r);
        os << line;
    }
}

namespace pipeline_detail {

struct Validation {
    std::vector<double> whitney_constants; // F, G, H
    double leibniz_dev = 0.0;
    double av_ratio = 0.0;
};

Validation validate_conditions(const HorizontalJetTriple& gamma,
                               const ModulusOfContinuity& omega,
                               const ExtendOptions& opts, int condition_order) {
    Validation v;
    const char* names[3] = {"F", "G", "H"};
    const ScalarJet* jets[3] = {&gamma.F, &gamma.G, &gamma.H};
    for (int c = 0; c < 3; ++c) {
        const auto rep = validate_cmw(*jets[c], omega);
        v.whitney_constants.push_back(rep.best_constant);
        if (rep.best_constant > opts.max_whitney_constant)
            throw ValidationError(
                1, std::string("condition (1) failed: ") + names[c] +
                       " is not a C^{m,w} Whitney field within the admissible "
                       "constant (measured " +
                       std::to_string(rep.best_constant) + " at order " +
                       std::to_string(condition_order) + ")");
    }

    const ScalarJet HL = leibniz_vertical_jet(gamma.F, gamma.G);
    double scale = 1.0;
    for (int k = 1; k <= gamma.order(); ++k)
        for (std::size_t i = 0; i < gamma.K().size(); ++i)
            scale = std::max(scale, std::abs(gamma.H.value(k, i)));
    for (int k = 1; k <= gamma.order(); ++k)
        for (std::size_t i = 0; i < gamma.K().size(); ++i)
            v.leibniz_dev = std::max(
                v.leibniz_dev, std::abs(gamma.H.value(k, i) - HL.value(k, i)));
    if (v.leibniz_dev > opts.leibniz_tol * scale)
        throw ValidationError(2,
                              "condition (2) failed: vertical jet deviates from the "
                              "Leibniz identity by " +
                                  std::to_string(v.leibniz_dev));

    const auto av = av_ratio_scan(gamma, omega);
    v.av_ratio = av.max_ratio;
    if (av.max_ratio > opts.max_av_ratio)
        throw ValidationError(
            3, "condition (3) failed: area/velocity ratio " +
                   std::to_string(av.max_ratio) + " exceeds the admissible bound " +
                   std::to_string(opts.max_av_ratio) + " at order " +
                   std::to_string(condition_order) + " (witness gap [" +
                   std::to_string(av.witness_a) + ", " + std::to_string(av.witness_b) +
                   "])");
    return v;
}

} // namespace pipeline_detail

PiecewiseSmoothCurve PiecewiseSmoothCurve::assemble(
    const HorizontalJetTriple& gamma, const ModulusOfContinuity& omega, double alpha,
    double beta, const ExtendOptions& opts, const ExtensionConstants& constants,
    const std::vector<int>& repair_orders) {
    const int m = gamma.order();
    if (m < 1) throw std::invalid_argument("extension needs jet order >= 1");
    const ScalarExtension f_ext = whitney_extend_scalar(gamma.F, alpha, beta);
    const ScalarExtension g_ext = whitney_extend_scalar(gamma.G, alpha, beta);
    const auto vert = vertical_redefine(f_ext, g_ext, gamma.H.row(0));

    PiecewiseSmoothCurve curve(gamma, alpha, beta);
    curve.constants_ = constants;
    curve.outer_f_lo_ = taylor_from_jet(gamma.F.at(0), gamma.K().min());
    curve.outer_g_lo_ = taylor_from_jet(gamma.G.at(0), gamma.K().min());
    const std::size_t last = gamma.K().size() - 1;
    curve.outer_f_hi_ = taylor_from_jet(gamma.F.at(last), gamma.K().max());
    curve.outer_g_hi_ = taylor_from_jet(gamma.G.at(last), gamma.K().max());

    const auto& gaps = f_ext.gaps();
    curve.pieces_.resize(gaps.size());
    std::vector<std::exception_ptr> errors(gaps.size());

#pragma omp parallel for schedule(dynamic)
    for (long long gi = 0; gi < static_cast<long long>(gaps.size()); ++gi) {
        const std::size_t i = static_cast<std::size_t>(gi);
        try {
            const Gap& gap = gaps[i];
            GapFunction f{f_ext.gap_blend(i), {}};
            GapFunction g{g_ext.gap_blend(i), {}};
            RepairOptions ropts = opts.repair;
            ropts.deadband =
                opts.repair.deadband * (1.0 + std::abs(gamma.H.value(0, i)) +
                                        std::abs(gamma.H.value(0, i + 1)));
            const int order_i = repair_orders[i];
            PerturbationPair pair = horizontality_repair(gap, f, g, vert.deficits[i],
                                                         order_i, constants, ropts);
            GapPiece piece;
            piece.gap = gap;
            piece.f = f;
            piece.f.bumps = pair.phi;
            piece.g = g;
            piece.g.bumps = pair.psi;
            piece.h_start = gamma.H.value(0, i);
            piece.repair = pair;
            piece.repair_order = order_i;
            curve.pieces_[i] = std::move(piece);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    // Audits: one-sided jet limits at every K point against the data, the
    // residual over the audit grid, and the empirical seminorms.
    CurveAudit audit;
    const auto& pts = gamma.K().points();
    auto piece_jets = [&](const GapPiece& piece, double t,
                          std::vector<double>& f, std::vector<double>& g,
                          std::vector<double>& h) {
        const TaylorJet fj = piece.f.jet_at(t, m);
        const TaylorJet gj = piece.g.jet_at(t, m);
        f.resize(m + 1);
        g.resize(m + 1);
        h.assign(m + 1, 0.0);
        for (int k = 0; k <= m; ++k) {
            f[k] = fj.derivative(k);
            g[k] = gj.derivative(k);
        }
        h[0] = piece.h_start +
               integrate_adaptive(
                   [&](double u) {
                       return bracket_value(piece.f.jet_at(u, 1), piece.g.jet_at(u, 1));
                   },
                   piece.gap.a, t, 1e-12, 1e-15);
        if (m >= 1) {
            const int bo = m - 1;
            const TaylorJet bracket =
                (fj.derivative_jet().truncated(bo) * gj.truncated(bo) -
                 gj.derivative_jet().truncated(bo) * fj.truncated(bo)) *
                2.0;
            for (int k = 1; k <= m; ++k) h[k] = bracket.derivative(k - 1);
        }
    };
    std::vector<double> f, g, h;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (int side = 0; side < 2; ++side) {
            const GapPiece* piece = nullptr;
            if (side == 0 && i > 0) piece = &curve.pieces_[i - 1];
            if (side == 1 && i + 1 < pts.size()) piece = &curve.pieces_[i];
            if (!piece) continue;
            piece_jets(*piece, pts[i], f, g, h);
            for (int k = 0; k <= m; ++k) {
                audit.max_jet_mismatch = std::max(
                    audit.max_jet_mismatch, std::abs(f[k] - gamma.F.value(k, i)));
                audit.max_jet_mismatch = std::max(
                    audit.max_jet_mismatch, std::abs(g[k] - gamma.G.value(k, i)));
                audit.max_jet_mismatch = std::max(
                    audit.max_jet_mismatch, std::abs(h[k] - gamma.H.value(k, i)));
            }
        }
    }

    const auto grid = curve.audit_grid(opts.audit_points_per_gap);
    std::vector<std::pair<double, double>> fm(grid.size()), gm(grid.size()),
        hm(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        curve.jets_at(grid[i], m, f, g, h);
        audit.max_residual =
            std::max(audit.max_residual, std::abs(h[1] - 2.0 * (f[1] * g[0] - f[0] * g[1])));
        fm[i] = {grid[i], f[m]};
        gm[i] = {grid[i], g[m]};
        hm[i] = {grid[i], h[m]};
    }
    audit.seminorm = {holder_seminorm(fm, omega, m), holder_seminorm(gm, omega, m),
                      holder_seminorm(hm, omega, m)};
    curve.audit_ = audit;
    return curve;
}

PiecewiseSmoothCurve extend_horizontal(const HorizontalJetTriple& gamma,
                                       const ModulusOfContinuity& omega, double alpha,
                                       double beta,
                                       const ExtendOptions& opts) {
    if (omega.domain_cap() < beta - alpha)
        throw std::invalid_argument(
            "modulus domain cap must cover the extension interval");
    const int m = gamma.order();
    const auto v = pipeline_detail::validate_conditions(gamma, omega, opts, m);

    double kappa = std::max(1.0, v.av_ratio);
    for (double c : v.whitney_constants) kappa = std::max(kappa, c);
    const ExtensionConstants constants = measure_extension_constants(
        std::vector<double>(static_cast<std::size_t>(m) + 1, kappa));

    const std::vector<int> orders(gamma.K().size() - 1, m);
    return PiecewiseSmoothCurve::assemble(gamma, omega, alpha, beta, opts, constants,
                                     orders);
}

HorizontalJetTriple truncate_triple(const HorizontalJetTriple& gamma, int m) {
    if (m > gamma.order())
        throw std::invalid_argument("cannot truncate a jet upward");
    auto cut = [&](const ScalarJet& J) {
        std::vector<std::vector<double>> rows(J.rows().begin(),
                                              J.rows().begin() + m + 1);
        return ScalarJet(J.K(), m, std::move(rows));
    };
    return HorizontalJetTriple(cut(gamma.F), cut(gamma.G), cut(gamma.H));
}

PiecewiseSmoothCurve extend_cinfty(const HorizontalJetTriple& gamma, double alpha,
                                   double beta, const ExtendOptions& opts) {
    const int m_max = gamma.order();
    const auto omega = ModulusOfContinuity::linear(
        std::max(1.0, 2.0 * (beta - alpha)));

    // The theorem's conditions with w(t) = t, checked at every order.
    std::vector<double> kappa(static_cast<std::size_t>(m_max) + 1, 1.0);
    for (int m = 0; m <= m_max; ++m) {
        const auto trunc = truncate_triple(gamma, m);
        const auto v = pipeline_detail::validate_conditions(trunc, omega, opts, m);
        double k = std::max(1.0, v.av_ratio);
        for (double c : v.whitney_constants) k = std::max(k, c);
        kappa[static_cast<std::size_t>(m)] = k;
    }
    const ExtensionConstants constants = measure_extension_constants(kappa);

    // Per gap, the largest order whose schedule entry admits the gap length.
    const auto& pts = gamma.K().points();
    std::vector<int> orders(gamma.K().size() - 1, 0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double L = pts[i + 1] - pts[i];
        int chosen = 0;
        for (int m = 0; m <= m_max; ++m)
            if (L <= constants.c_schedule[static_cast<std::size_t>(m)]) chosen = m;
        orders[i] = chosen;
    }
    return PiecewiseSmoothCurve::assemble(gamma, omega, alpha, beta, opts, constants,
                                     orders);
}

} // namespace horext
