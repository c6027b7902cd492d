#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "horext/area_velocity.hpp"
#include "horext/errors.hpp"
#include "horext/jets.hpp"
#include "horext/modulus.hpp"
#include "horext/polynomial.hpp"
#include "horext/series.hpp"

namespace horext {

// A connected component of I \ K.
struct Gap {
    double a = 0.0;
    double b = 0.0;
    std::size_t index = 0;

    double length() const { return b - a; }
};

// Canonical bump profile rescaled to [lo, hi] and scaled by amplitude;
// vanishes with all derivatives outside (lo, hi).
struct Bump {
    double lo = 0.0;
    double hi = 1.0;
    double amplitude = 0.0;

    TaylorJet jet_at(double t, int order) const;
    double value(double t) const { return jet_at(t, 0).value(); }
};

// Two-point Taylor blend across a gap: pa + chi((t-a)/(b-a)) (pb - pa).
struct GapBlend {
    double a = 0.0;
    double b = 1.0;
    Polynomial pa, pb;

    TaylorJet jet_at(double t, int order) const;
};

// A horizontal coordinate on one gap: blend plus bump perturbations.
struct GapFunction {
    GapBlend blend;
    std::vector<Bump> bumps;

    TaylorJet jet_at(double t, int order) const;
    double value(double t) const { return jet_at(t, 0).value(); }
    double deriv(double t) const { return jet_at(t, 1).derivative(1); }
};

enum class RepairCase { None, FBig, GBig, SmallLoop };

std::string to_string(RepairCase c);

// The perturbations (phi added to f, psi added to g) that close one gap's
// area deficit: 4 int (psi f' - phi g' + psi phi') = A.
struct PerturbationPair {
    std::vector<Bump> phi, psi;
    RepairCase kind = RepairCase::None;
    double area_deficit = 0.0;
    double residual = 0.0; // |4 int(...) - A| re-verified at double resolution
    double sup_norm = 0.0; // max over orders 0..m of the derivative sup
};

// Measured constants driving the perturbation order schedule. kappa comes
// from the input's validated constants, C from the realized bump bound,
// C' from the realized loop-pair bounds; c is then computed, not assumed.
struct ExtensionConstants {
    std::vector<double> kappa;      // per order 0..m_max
    std::vector<double> C;          // canonical bump amplitude bound
    std::vector<double> Cprime;     // loop-pair derivative bound
    std::vector<double> c_schedule; // strictly decreasing, c_0 <= 1
    bool measured = true;

    int max_order() const { return static_cast<int>(c_schedule.size()) - 1; }
};

ExtensionConstants measure_extension_constants(std::span<const double> kappa_by_order);

// Scalar Whitney extension: single Taylor polynomials outside the hull of K,
// chi-blended Taylor pairs across each gap. Matches the jet at every point
// of K and is flat across gap endpoints to every order the data carries.
class ScalarExtension {
public:
    ScalarExtension(const ScalarJet& jet, double alpha, double beta);

    TaylorJet jet_at(double t, int order) const;
    double value(double t) const { return jet_at(t, 0).value(); }

    const std::vector<Gap>& gaps() const { return gaps_; }
    const SampleSet& K() const { return K_; }
    int order() const { return m_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const GapBlend& gap_blend(std::size_t i) const { return blends_[i]; }

private:
    SampleSet K_;
    int m_;
    double alpha_, beta_;
    std::vector<std::vector<double>> rows_;
    std::vector<Gap> gaps_;
    std::vector<GapBlend> blends_;
};

ScalarExtension whitney_extend_scalar(const ScalarJet& jet, double alpha, double beta);

// Per-gap vertical deficit of the blended pair: what the repair must inject.
struct VerticalRedefineResult {
    std::vector<double> deficits; // H0(b_i) - (H0(a_i) + 2 int_a^b (f'g - fg'))
};

VerticalRedefineResult vertical_redefine(const ScalarExtension& f,
                                         const ScalarExtension& g,
                                         std::span<const double> H0);

struct RepairOptions {
    double deadband = 1e-12;       // |A| below this: no perturbation
    double quad_rel_tol = 1e-13;
    double residual_tol = 1e-9;    // scaled by (1 + |A|)
};

PerturbationPair horizontality_repair(const Gap& gap, const GapFunction& f,
                                      const GapFunction& g, double area_deficit, int m,
                                      const ExtensionConstants& constants,
                                      const RepairOptions& opts = {});

struct ExtendOptions {
    double max_av_ratio = 100.0;
    double max_whitney_constant = 1e4;
    double leibniz_tol = 1e-8;           // scaled by (1 + max |H^k|)
    std::size_t audit_points_per_gap = 10;
    RepairOptions repair;
};

struct CurveAudit {
    double max_jet_mismatch = 0.0;  // orders 0..m over K, both one-sided limits
    double max_residual = 0.0;      // on the audit grid
    std::array<double, 3> seminorm{}; // empirical C^{m,w} seminorm per coordinate
};

// The constructed horizontal extension: jet data on K, closed-form pieces on
// every gap and outer segment. h is defined on each piece as the integral of
// 2 (f'g - fg'), so horizontality holds there by construction.
class PiecewiseSmoothCurve {
public:
    struct GapPiece {
        Gap gap;
        GapFunction f, g;
        double h_start = 0.0;
        PerturbationPair repair;
        int repair_order = 0;
    };

    // Derivatives 0..order of each coordinate at t. The vertical value is
    // integrated on demand; vertical derivatives come from the bracket.
    void jets_at(double t, int order, std::vector<double>& f, std::vector<double>& g,
                 std::vector<double>& h) const;
    std::array<double, 3> eval(double t) const;
    double residual_at(double t) const;

    const SampleSet& K() const { return jets_.K(); }
    int order() const { return jets_.order(); }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const std::vector<GapPiece>& pieces() const { return pieces_; }
    const HorizontalJetTriple& jets() const { return jets_; }
    const CurveAudit& audit() const { return audit_; }
    const ExtensionConstants& constants() const { return constants_; }
    std::vector<double> audit_grid(std::size_t per_gap) const;

    void export_csv(std::ostream& os, std::size_t resolution) const;

    friend PiecewiseSmoothCurve extend_horizontal(const HorizontalJetTriple&,
                                                  const ModulusOfContinuity&, double,
                                                  double, const ExtendOptions&);
    friend PiecewiseSmoothCurve extend_cinfty(const HorizontalJetTriple&, double, double,
                                              const ExtendOptions&);

private:
    PiecewiseSmoothCurve(HorizontalJetTriple jets, double alpha, double beta);

    static PiecewiseSmoothCurve assemble(const HorizontalJetTriple& gamma,
                                         const ModulusOfContinuity& omega, double alpha,
                                         double beta, const ExtendOptions& opts,
                                         const ExtensionConstants& constants,
                                         const std::vector<int>& repair_orders);

    const GapPiece* find_gap(double t) const;
    TaylorJet f_jet(double t, int order) const;
    TaylorJet g_jet(double t, int order) const;
    double h_value(double t) const;

    HorizontalJetTriple jets_;
    double alpha_, beta_;
    std::vector<GapPiece> pieces_;
    Polynomial outer_f_lo_, outer_g_lo_, outer_f_hi_, outer_g_hi_;
    ExtensionConstants constants_;
    CurveAudit audit_;
};

// Builds a C^{m,w} horizontal curve through the jet data. Validates the
// three extension conditions first and reports which one failed; gap repairs
// that exceed their sup-norm guard surface as AdmissibilityError.
PiecewiseSmoothCurve extend_horizontal(const HorizontalJetTriple& gamma,
                                       const ModulusOfContinuity& omega, double alpha,
                                       double beta, const ExtendOptions& opts = {});

// Truncated-C^infinity extension: validates the conditions with w(t) = t at
// every order up to the jet order, then repairs each gap at the largest
// order its length admits under the measured c_m schedule.
PiecewiseSmoothCurve extend_cinfty(const HorizontalJetTriple& gamma, double alpha,
                                   double beta, const ExtendOptions& opts = {});

HorizontalJetTriple truncate_triple(const HorizontalJetTriple& gamma, int m);

} // namespace horext
