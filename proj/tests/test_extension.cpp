#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "horext/extension.hpp"
#include "horext/fixtures.hpp"
#include "horext/quadrature.hpp"

using namespace horext;

namespace {

ScalarJet jet_from_poly(const Polynomial& P, const SampleSet& K, int m) {
    std::vector<std::vector<double>> rows(m + 1, std::vector<double>(K.size()));
    for (std::size_t i = 0; i < K.size(); ++i) {
        const TaylorJet j = P.jet_at(K.points()[i], m);
        for (int k = 0; k <= m; ++k) rows[k][i] = j.derivative(k);
    }
    return ScalarJet(K, m, std::move(rows));
}

GapFunction poly_on_gap(const Polynomial& P, double a, double b) {
    return GapFunction{GapBlend{a, b, P, P}, {}};
}

ExtensionConstants default_constants(int m) {
    return measure_extension_constants(std::vector<double>(m + 1, 1.0));
}

double pair_equation(const PerturbationPair& pair, const GapFunction& f,
                     const GapFunction& g, double a, double b) {
    auto sum = [](const std::vector<Bump>& bumps, double t, int order) {
        TaylorJet j(order);
        for (const Bump& bump : bumps) j = j + bump.jet_at(t, order);
        return j;
    };
    return 4.0 * integrate_adaptive(
                     [&](double t) {
                         const TaylorJet pj = sum(pair.phi, t, 1);
                         const TaylorJet sj = sum(pair.psi, t, 1);
                         return sj.value() * f.deriv(t) - pj.value() * g.deriv(t) +
                                sj.value() * pj.derivative(1);
                     },
                     a, b, 1e-13, 1e-300);
}

} // namespace

TEST_CASE("whitney_extend_scalar reproduces polynomial data exactly") {
    const SampleSet K({0.0, 1.0});
    const Polynomial sq({0.0, 0.0, 1.0});
    const auto ext = whitney_extend_scalar(jet_from_poly(sq, K, 2), 0.0, 1.0);
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
        CHECK(ext.value(t) == doctest::Approx(t * t).epsilon(1e-12));

    const auto cst = whitney_extend_scalar(
        ScalarJet(K, 2, {{3.0, 3.0}, {0.0, 0.0}, {0.0, 0.0}}), -1.0, 2.0);
    for (double t : {-1.0, 0.3, 1.7}) CHECK(cst.value(t) == doctest::Approx(3.0));
}

TEST_CASE("whitney_extend_scalar blends a pure step through chi") {
    const SampleSet K({0.0, 1.0});
    const ScalarJet step(K, 1, {{0.0, 1.0}, {0.0, 0.0}});
    const auto ext = whitney_extend_scalar(step, 0.0, 1.0);
    CHECK(ext.value(0.0) == 0.0);
    CHECK(ext.value(1.0) == 1.0);
    CHECK(ext.value(0.5) == doctest::Approx(0.5));
    CHECK(std::abs(ext.jet_at(1e-4, 1).derivative(1)) < 1e-10);
    CHECK(std::abs(ext.jet_at(1.0 - 1e-4, 1).derivative(1)) < 1e-10);
}

TEST_CASE("whitney_extend_scalar matches jets at K and is smooth across endpoints") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 5));
    const auto curve = fixtures::circle_lift();
    const auto trip = fixtures::sample_jets(curve, K, 3);
    const auto ext = whitney_extend_scalar(trip.F, -0.2, 1.2);

    for (std::size_t i = 0; i < K.size(); ++i) {
        const TaylorJet j = ext.jet_at(K.points()[i], 3);
        for (int k = 0; k <= 3; ++k)
            CHECK(j.derivative(k) ==
                  doctest::Approx(trip.F.value(k, i)).epsilon(1e-10));
    }

    // One-sided finite differences across a gap endpoint agree.
    const double b = K.points()[2];
    const double eps = 1e-5;
    const double left = (ext.value(b) - ext.value(b - eps)) / eps;
    const double right = (ext.value(b + eps) - ext.value(b)) / eps;
    CHECK(left == doctest::Approx(right).epsilon(1e-3));
    CHECK_THROWS_AS(whitney_extend_scalar(trip.F, 0.5, 1.2), std::invalid_argument);
}

TEST_CASE("vertical_redefine deficits") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 5));

    // Exact cubic-lift data: nothing to repair.
    const auto cub = fixtures::sample_jets(fixtures::cubic_lift(), K, 2);
    const auto fe = whitney_extend_scalar(cub.F, 0.0, 1.0);
    const auto ge = whitney_extend_scalar(cub.G, 0.0, 1.0);
    for (double d : vertical_redefine(fe, ge, cub.H.row(0)).deficits)
        CHECK(std::abs(d) < 1e-9);

    // g = 0: the bracket vanishes, so the deficit is the raw height change.
    const auto vert = fixtures::sample_jets(fixtures::vertical_line(), K, 2);
    const auto fz = whitney_extend_scalar(vert.F, 0.0, 1.0);
    const auto gz = whitney_extend_scalar(vert.G, 0.0, 1.0);
    const auto res = vertical_redefine(fz, gz, vert.H.row(0));
    for (std::size_t i = 0; i < res.deficits.size(); ++i)
        CHECK(res.deficits[i] ==
              doctest::Approx(K.points()[i + 1] - K.points()[i]));

    // Zero H0 with a nontrivial pair: deficit equals minus the bracket
    // integral, cross-checked by Simpson.
    const auto circ = fixtures::sample_jets(fixtures::circle_lift(), K, 2);
    const auto fc = whitney_extend_scalar(circ.F, 0.0, 1.0);
    const auto gc = whitney_extend_scalar(circ.G, 0.0, 1.0);
    std::vector<double> zeros(K.size(), 0.0);
    const auto rz = vertical_redefine(fc, gc, zeros);
    const double a = K.points()[0], b = K.points()[1];
    double simpson = 0.0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
        const double lo = a + (b - a) * i / n;
        const double hi = lo + (b - a) / n;
        auto br = [&](double t) {
            const auto fj = fc.jet_at(t, 1), gj = gc.jet_at(t, 1);
            return 2.0 * (fj.derivative(1) * gj.value() - fj.value() * gj.derivative(1));
        };
        simpson += (br(lo) + 4.0 * br(0.5 * (lo + hi)) + br(hi)) * (hi - lo) / 6.0;
    }
    CHECK(rz.deficits[0] == doctest::Approx(-simpson).epsilon(1e-9));
}

TEST_CASE("measured constants give a strictly decreasing schedule") {
    const auto c = measure_extension_constants(std::vector<double>{1.0, 2.0, 1.0, 1.0, 1.0});
    REQUIRE(c.c_schedule.size() == 5);
    CHECK(c.c_schedule[0] <= 1.0);
    for (std::size_t m = 1; m < 5; ++m)
        CHECK(c.c_schedule[m] < c.c_schedule[m - 1]);
    for (double k : c.kappa) CHECK(k >= 1.0);
}

TEST_CASE("repair: zero deficit means zero perturbation") {
    const Gap gap{0.0, 1.0, 0};
    const auto f = poly_on_gap(Polynomial({0.0, 1.0}), 0.0, 1.0);
    const auto g = poly_on_gap(Polynomial{}, 0.0, 1.0);
    const auto pair = horizontality_repair(gap, f, g, 0.0, 1, default_constants(1));
    CHECK(pair.kind == RepairCase::None);
    CHECK(pair.phi.empty());
    CHECK(pair.psi.empty());
}

TEST_CASE("repair: f-big case solves linearly in the bump amplitude") {
    const Gap gap{0.0, 1.0, 0};
    const auto f = poly_on_gap(Polynomial({0.0, 1.0}), 0.0, 1.0); // f = t, f' = 1
    const auto g = poly_on_gap(Polynomial{}, 0.0, 1.0);
    const double A = 0.01;
    const auto pair = horizontality_repair(gap, f, g, A, 1, default_constants(1));
    CHECK(pair.kind == RepairCase::FBig);
    REQUIRE(pair.psi.size() == 1);
    CHECK(pair.phi.empty());
    // The sign run of f' spans the whole gap, shrunk 10% per side.
    CHECK(pair.psi[0].lo == doctest::Approx(0.1).epsilon(0.05));
    CHECK(pair.psi[0].hi == doctest::Approx(0.9).epsilon(0.05));
    // lambda = A / (4 int eta f') with f' = 1.
    const double eta_integral = integrate_adaptive(
        [&](double t) { return Bump{pair.psi[0].lo, pair.psi[0].hi, 1.0}.value(t); },
        pair.psi[0].lo, pair.psi[0].hi, 1e-13, 1e-300);
    CHECK(pair.psi[0].amplitude == doctest::Approx(A / (4.0 * eta_integral)));
    CHECK(pair.residual < 1e-11);
    CHECK(pair_equation(pair, f, g, 0.0, 1.0) == doctest::Approx(A).epsilon(1e-10));
}

TEST_CASE("repair: g-big case") {
    const Gap gap{0.0, 1.0, 0};
    const auto f = poly_on_gap(Polynomial{}, 0.0, 1.0);
    const auto g = poly_on_gap(Polynomial({0.0, 1.0}), 0.0, 1.0);
    const auto pair = horizontality_repair(gap, f, g, 0.02, 1, default_constants(1));
    CHECK(pair.kind == RepairCase::GBig);
    CHECK(pair.psi.empty());
    REQUIRE(pair.phi.size() == 1);
    CHECK(pair_equation(pair, f, g, 0.0, 1.0) == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("repair: degenerate pair falls to the loop construction") {
    const Gap gap{0.0, 1.0, 0};
    const auto f = poly_on_gap(Polynomial{}, 0.0, 1.0);
    const auto g = poly_on_gap(Polynomial{}, 0.0, 1.0);
    const double A = 0.001;
    const auto pair = horizontality_repair(gap, f, g, A, 1, default_constants(1));
    CHECK(pair.kind == RepairCase::SmallLoop);
    // With f = g = 0 the goal equation collapses to 4 int psi phi' = A.
    CHECK(pair_equation(pair, f, g, 0.0, 1.0) == doctest::Approx(A).epsilon(1e-9));
    CHECK(pair.residual <= 1e-12 * (1.0 + A) + 1e-15);
    // Both signs of the deficit are solvable.
    const auto neg = horizontality_repair(gap, f, g, -A, 1, default_constants(1));
    CHECK(pair_equation(neg, f, g, 0.0, 1.0) == doctest::Approx(-A).epsilon(1e-9));
}

TEST_CASE("repair: endpoint flatness and sup-norm bookkeeping") {
    const Gap gap{0.25, 0.75, 0};
    const auto f = poly_on_gap(Polynomial({0.0, -2.0, 1.0}), 0.25, 0.75);
    const auto g = poly_on_gap(Polynomial({1.0, 0.5}), 0.25, 0.75);
    const auto pair = horizontality_repair(gap, f, g, 3e-3, 2, default_constants(2));
    for (const double t : {0.25, 0.75}) {
        for (const auto* bumps : {&pair.phi, &pair.psi}) {
            TaylorJet j(2);
            for (const Bump& bump : *bumps) j = j + bump.jet_at(t, 2);
            for (int k = 0; k <= 2; ++k) CHECK(std::abs(j.derivative(k)) <= 1e-10);
        }
    }
    CHECK(pair.sup_norm > 0.0);
}

TEST_CASE("repair: sup-norm guard raises AdmissibilityError on inadmissible data") {
    // Gap shorter than c_1 with a deficit far beyond any admissible budget.
    const auto constants = default_constants(1);
    const double L = 0.8 * constants.c_schedule[1];
    const Gap gap{0.0, L, 0};
    const auto f = poly_on_gap(Polynomial{}, 0.0, L);
    const auto g = poly_on_gap(Polynomial{}, 0.0, L);
    CHECK_THROWS_AS(horizontality_repair(gap, f, g, 1.0, 1, constants),
                    AdmissibilityError);
}

TEST_CASE("extend_horizontal on the circle lift meets its audits") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 9));
    const auto trip = fixtures::sample_jets(fixtures::circle_lift(), K, 2);
    const auto lin = ModulusOfContinuity::linear(10.0);
    const auto curve = extend_horizontal(trip, lin, 0.0, 1.0);

    CHECK(curve.audit().max_jet_mismatch <= 1e-8);
    CHECK(curve.audit().max_residual <= 1e-8);
    for (double s : curve.audit().seminorm) {
        CHECK(std::isfinite(s));
        CHECK(s >= 0.0);
    }

    // The curve actually interpolates the data.
    for (std::size_t i = 0; i < K.size(); ++i) {
        const auto p = curve.eval(K.points()[i]);
        CHECK(p[0] == doctest::Approx(std::cos(K.points()[i])));
        CHECK(p[1] == doctest::Approx(std::sin(K.points()[i])));
        CHECK(p[2] == doctest::Approx(-2.0 * K.points()[i]));
    }
}

TEST_CASE("extend_horizontal reproduces the cubic lift with silent repairs") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 7));
    const auto trip = fixtures::sample_jets(fixtures::cubic_lift(), K, 2);
    const auto lin = ModulusOfContinuity::linear(10.0);
    const auto curve = extend_horizontal(trip, lin, 0.0, 1.0);
    CHECK(curve.audit().max_jet_mismatch <= 1e-9);
    for (const auto& piece : curve.pieces()) {
        CHECK(piece.repair.kind == RepairCase::None);
        CHECK(piece.f.bumps.empty());
        CHECK(piece.g.bumps.empty());
    }
    // Between sample points the pieces reproduce the polynomial curve.
    for (double t : {0.05, 0.4, 0.77}) {
        const auto p = curve.eval(t);
        CHECK(p[0] == doctest::Approx(t).epsilon(1e-10));
        CHECK(p[1] == doctest::Approx(t * t).epsilon(1e-10));
        CHECK(p[2] == doctest::Approx(-2.0 / 3.0 * t * t * t).epsilon(1e-9));
    }
}

TEST_CASE("extend_horizontal rejects the vertical line naming condition (3)") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 12));
    const auto trip = fixtures::sample_jets(fixtures::vertical_line(), K, 1);
    const auto lin = ModulusOfContinuity::linear(10.0);
    try {
        extend_horizontal(trip, lin, 0.0, 1.0);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.condition() == 3);
        CHECK(std::string(e.what()).find("condition (3)") != std::string::npos);
    }
}

TEST_CASE("extend_horizontal rejects a Leibniz-inconsistent vertical jet") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 5));
    auto trip = fixtures::sample_jets(fixtures::cubic_lift(), K, 2);
    auto rows = trip.H.rows();
    rows[1][2] += 0.5; // break condition (2) at one point
    const HorizontalJetTriple broken(trip.F, trip.G, ScalarJet(K, 2, rows));
    const auto lin = ModulusOfContinuity::linear(10.0);
    try {
        extend_horizontal(broken, lin, 0.0, 1.0);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.condition() == 2);
    }
}

TEST_CASE("extend_horizontal rejects a non-Whitney field naming condition (1)") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 5));
    auto trip = fixtures::sample_jets(fixtures::cubic_lift(), K, 2);
    auto rows = trip.F.rows();
    rows[0][2] += 1e6;
    const HorizontalJetTriple broken(ScalarJet(K, 2, rows), trip.G, trip.H);
    const auto lin = ModulusOfContinuity::linear(10.0);
    try {
        extend_horizontal(broken, lin, 0.0, 1.0);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.condition() == 1);
    }
}

TEST_CASE("feasibility is left invariant") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 9));
    const auto lin = ModulusOfContinuity::linear(10.0);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const HPoint p{u(rng), u(rng), u(rng)};

    const auto good = fixtures::sample_jets(fixtures::circle_lift(), K, 2);
    const auto moved = translate_jets(good, p);
    const auto c1 = extend_horizontal(good, lin, 0.0, 1.0);
    const auto c2 = extend_horizontal(moved, lin, 0.0, 1.0);
    CHECK(c2.audit().max_jet_mismatch <= 1e-7);

    const auto bad = fixtures::sample_jets(fixtures::vertical_line(), K, 1);
    CHECK_THROWS_AS(extend_horizontal(bad, lin, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(extend_horizontal(translate_jets(bad, p), lin, 0.0, 1.0),
                    ValidationError);
}

TEST_CASE("round trip across the analytic suite") {
    const auto lin = ModulusOfContinuity::linear(10.0);
    for (const auto& curve : fixtures::smooth_suite()) {
        for (const std::size_t n : {9u, 17u}) {
            const SampleSet K(fixtures::uniform_grid(0.0, 1.0, n));
            const auto trip = fixtures::sample_jets(curve, K, 2);
            const auto ext = extend_horizontal(trip, lin, 0.0, 1.0);
            CHECK(ext.audit().max_jet_mismatch <= 1e-8);
            CHECK(ext.audit().max_residual <= 1e-8);
        }
    }
}

TEST_CASE("gap endpoint smoothness by one-sided finite differences") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 5));
    const auto trip = fixtures::sample_jets(fixtures::circle_lift(), K, 2);
    const auto lin = ModulusOfContinuity::linear(10.0);
    const auto curve = extend_horizontal(trip, lin, 0.0, 1.0);

    // One-sided derivative estimates from degree-5 interpolants on each side.
    std::vector<double> f, g, h;
    auto one_sided = [&](double t0, double dir, int coord, int order) {
        // Step small enough to stay inside the bump-free margin of each gap.
        const double step = dir * 0.002;
        std::vector<double> xs(6), vs(6);
        for (int j = 0; j < 6; ++j) {
            xs[j] = t0 + step * j;
            curve.jets_at(xs[j], 0, f, g, h);
            vs[j] = coord == 0 ? f[0] : (coord == 1 ? g[0] : h[0]);
        }
        if (dir < 0) {
            std::reverse(xs.begin(), xs.end());
            std::reverse(vs.begin(), vs.end());
        }
        return newton_interpolant(NodeSet(xs), vs).jet_at(t0, order).derivative(order);
    };
    for (std::size_t i = 1; i + 1 < K.size(); ++i) {
        const double t0 = K.points()[i];
        for (int coord = 0; coord < 3; ++coord) {
            for (int order = 1; order <= 2; ++order) {
                const double left = one_sided(t0, -1.0, coord, order);
                const double right = one_sided(t0, 1.0, coord, order);
                CHECK(std::abs(left - right) <= 1e-6 * (1.0 + std::abs(left)));
            }
        }
    }
}

TEST_CASE("extend_cinfty passes audits through order 4 on the circle") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 9));
    const auto trip = fixtures::sample_jets(fixtures::circle_lift(), K, 4);
    const auto curve = extend_cinfty(trip, 0.0, 1.0);
    CHECK(curve.audit().max_jet_mismatch <= 1e-8);
    CHECK(curve.audit().max_residual <= 1e-8);

    const auto& c = curve.constants().c_schedule;
    REQUIRE(c.size() == 5);
    CHECK(c[0] <= 1.0);
    for (std::size_t m = 1; m < c.size(); ++m) CHECK(c[m] < c[m - 1]);
}

TEST_CASE("extend_cinfty at order 1 on a fine grid matches extend_horizontal") {
    // All gaps below c_1, so the schedule picks order 1 everywhere and the
    // two pipelines coincide.
    const double span = 0.01;
    const SampleSet K(fixtures::uniform_grid(0.0, span, 11));
    const auto trip = fixtures::sample_jets(fixtures::circle_lift(), K, 1);
    const auto lin = ModulusOfContinuity::linear(10.0);
    const auto a = extend_cinfty(trip, 0.0, span);
    const auto b = extend_horizontal(trip, lin, 0.0, span);
    REQUIRE(a.constants().c_schedule[1] >= span / 10.0); // gaps admit order 1
    for (const auto& piece : a.pieces()) CHECK(piece.repair_order == 1);
    for (double t : fixtures::uniform_grid(0.0, span, 23)) {
        const auto pa = a.eval(t), pb = b.eval(t);
        for (int c = 0; c < 3; ++c) CHECK(pa[c] == doctest::Approx(pb[c]).epsilon(1e-12));
    }
}

TEST_CASE("extend_cinfty with a gap longer than c_1 repairs at the scheduled order") {
    const SampleSet K({0.0, 0.5, 1.0});
    const auto trip = fixtures::sample_jets(fixtures::circle_lift(), K, 3);
    const auto curve = extend_cinfty(trip, 0.0, 1.0);
    for (const auto& piece : curve.pieces())
        CHECK(piece.repair_order == 0); // 0.5 exceeds every schedule entry
    CHECK(curve.audit().max_jet_mismatch <= 1e-8);
}

TEST_CASE("csv export produces the requested resolution") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 5));
    const auto trip = fixtures::sample_jets(fixtures::cubic_lift(), K, 2);
    const auto lin = ModulusOfContinuity::linear(10.0);
    const auto curve = extend_horizontal(trip, lin, 0.0, 1.0);
    std::ostringstream os;
    curve.export_csv(os, 21);
    std::size_t lines = 0;
    for (char ch : os.str())
        if (ch == '\n') ++lines;
    CHECK(lines == 22); // header + 21 rows
}

TEST_CASE("vertical coordinate matches an independent quadrature oracle") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 5));
    const auto trip = fixtures::sample_jets(fixtures::circle_lift(), K, 2);
    const auto lin = ModulusOfContinuity::linear(10.0);
    const auto curve = extend_horizontal(trip, lin, 0.0, 1.0);

    // Simpson over the bracket of the assembled pieces, from the left end.
    std::vector<double> f, g, h;
    auto bracket = [&](double t) {
        curve.jets_at(t, 1, f, g, h);
        return 2.0 * (f[1] * g[0] - f[0] * g[1]);
    };
    for (double t : {0.33, 0.97}) {
        double simpson = 0.0;
        const int n = 800;
        for (int i = 0; i < n; ++i) {
            const double lo = t * i / n, hi = t * (i + 1) / n;
            simpson += (bracket(lo) + 4.0 * bracket(0.5 * (lo + hi)) + bracket(hi)) *
                       (hi - lo) / 6.0;
        }
        curve.jets_at(t, 0, f, g, h);
        CHECK(h[0] == doctest::Approx(trip.H.value(0, 0) + simpson).epsilon(1e-9));
    }
}

TEST_CASE("extension error paths") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 5));
    const auto trip = fixtures::sample_jets(fixtures::circle_lift(), K, 2);

    // Modulus cap must cover the interval.
    const auto small_cap = ModulusOfContinuity::linear(0.5);
    CHECK_THROWS_AS(extend_horizontal(trip, small_cap, 0.0, 1.0),
                    std::invalid_argument);

    const auto lin = ModulusOfContinuity::linear(10.0);
    const auto curve = extend_horizontal(trip, lin, 0.0, 1.0);
    CHECK_THROWS_AS(curve.eval(1.5), std::domain_error);
    CHECK_THROWS_AS(curve.eval(-0.1), std::domain_error);

    const Gap degenerate{0.5, 0.5, 0};
    const GapFunction zero{GapBlend{0.0, 1.0, Polynomial{}, Polynomial{}}, {}};
    CHECK_THROWS_AS(
        horizontality_repair(degenerate, zero, zero, 0.1, 1,
                             measure_extension_constants(std::vector<double>{1.0, 1.0})),
        std::invalid_argument);
}

TEST_CASE("extension works under power and tabulated moduli") {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, 9));
    const auto trip = fixtures::sample_jets(fixtures::circle_lift(), K, 2);

    const auto half = ModulusOfContinuity::power(0.5, 10.0);
    const auto c1 = extend_horizontal(trip, half, 0.0, 1.0);
    CHECK(c1.audit().max_jet_mismatch <= 1e-8);
    CHECK(c1.audit().max_residual <= 1e-8);

    const auto tab = ModulusOfContinuity::table(
        {{0.0, 0.0}, {0.125, 0.2}, {0.5, 0.5}, {1.0, 0.8}}, 10.0);
    const auto c2 = extend_horizontal(trip, tab, 0.0, 1.0);
    CHECK(c2.audit().max_jet_mismatch <= 1e-8);
    CHECK(c2.audit().max_residual <= 1e-8);
}
