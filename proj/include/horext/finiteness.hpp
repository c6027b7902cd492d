#pragma once

#include <string>
#include <vector>

#include "horext/area_velocity.hpp"
#include "horext/heisenberg.hpp"
#include "horext/modulus.hpp"
#include "horext/scan.hpp"

namespace horext {

struct FinitenessWitness {
    std::vector<double> X;
    std::string quantity; // "seminorm" or "av_ratio"
    double value = 0.0;
};

struct FinitenessReport {
    double M_estimate = 0.0;
    std::vector<FinitenessWitness> witnesses;
    std::size_t subsets_scanned = 0;
    bool exhaustive = false;
};

// Scans (m+2)-point subsets X of K. Per subset: a divided-difference lower
// bound for the C^{m,w} seminorm of any curve through the data on X (summed
// over the three coordinates), plus the discrete area/velocity ratios over
// the (m+1)-point subsets of X. M_estimate is the largest quantity seen;
// witnesses tie-break to the lexicographically smallest subset.
FinitenessReport finiteness_check(const SampledCurve& on_K, int m,
                                  const ModulusOfContinuity& omega,
                                  std::size_t subset_budget = 20000,
                                  ExecutionPolicy policy = ExecutionPolicy::Parallel);

struct EquivalenceAudit {
    AVScanReport continuous;
    AVScanReport discrete;
    double ratio_of_constants = 1.0;
};

// Runs the continuous and discrete scans on the same data and compares the
// empirical constants. Constants below zero_floor count as zero; 0/0 maps
// to 1 and x/0 to infinity.
EquivalenceAudit equivalence_audit(const HorizontalJetTriple& gamma,
                                   const ModulusOfContinuity& omega,
                                   std::size_t subset_budget = 20000,
                                   double zero_floor = 1e-8);

} // namespace horext
