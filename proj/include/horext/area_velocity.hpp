#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "horext/heisenberg.hpp"
#include "horext/jets.hpp"
#include "horext/modulus.hpp"
#include "horext/polynomial.hpp"
#include "horext/scan.hpp"

namespace horext {

enum class AVMode { Continuous, Discrete };

struct AVScanReport {
    AVMode mode = AVMode::Continuous;
    double max_ratio = 0.0;
    double witness_a = 0.0;
    double witness_b = 0.0;
    std::vector<double> witness_X; // empty in continuous mode
    // dyadic gap bins: (scale, max ratio among pairs in the bin)
    std::vector<std::pair<double, double>> ratios_by_scale;
};

// A^m(gamma; a, b): mismatch between the vertical increment and the signed
// area swept by the Taylor approximants of the horizontal coordinates.
double area_discrepancy(const HorizontalJetTriple& gamma, std::size_t a_idx,
                        std::size_t b_idx);

// V^m_w(gamma; a, b) = w(b-a)^2 (b-a)^{2m} + w(b-a) (b-a)^m int_a^b (|T_aF'| + |T_aG'|).
double omega_velocity(const HorizontalJetTriple& gamma, const ModulusOfContinuity& omega,
                      std::size_t a_idx, std::size_t b_idx);

// Derivative-free versions with Newton interpolants on an (m+1)-point set.
double discrete_area(const NodeSet& X, std::span<const HPoint> values, double a, double b);
double discrete_velocity(const NodeSet& X, std::span<const HPoint> values,
                         const ModulusOfContinuity& omega, double a, double b);

// Empirical continuous constant: max over pairs a < b in K of |A| / V.
AVScanReport av_ratio_scan(const HorizontalJetTriple& gamma, const ModulusOfContinuity& omega,
                           ExecutionPolicy policy = ExecutionPolicy::Parallel,
                           std::size_t pair_scan_cap = kDefaultPairScanCap);

// Discrete constant over (m+1)-point subsets: exhaustive when C(|K|, m+1)
// fits the budget, otherwise each pair augmented with its m-1 nearest
// neighbors (the family the equivalence proof constructs).
AVScanReport discrete_av_scan(const SampledCurve& on_K, int m,
                              const ModulusOfContinuity& omega,
                              std::size_t subset_budget = 20000,
                              ExecutionPolicy policy = ExecutionPolicy::Parallel);

// Left translation of jet data by p, order by order.
HorizontalJetTriple translate_jets(const HorizontalJetTriple& gamma, const HPoint& p);
SampledCurve translate_curve(const SampledCurve& curve, const HPoint& p);

// Translates gamma by p, recomputes every A and V of the scan, and returns
// the largest absolute deviation from the untranslated values.
double left_invariance_audit(const HorizontalJetTriple& gamma, const HPoint& p,
                             AVMode mode, const ModulusOfContinuity& omega,
                             std::size_t subset_budget = 20000);

namespace subset_scan {

double count_combinations(std::size_t n, std::size_t k);

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> enumerate_all(std::size_t n, std::size_t k);

// Every pair augmented with the subset_size-2 points nearest to either
// endpoint: the family the equivalence proof constructs. Sorted, deduplicated.
std::vector<std::vector<std::size_t>> neighbor_family(const std::vector<double>& pts,
                                                      std::size_t subset_size);

} // namespace subset_scan

} // namespace horext
