#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "horext/modulus.hpp"
#include "horext/scan.hpp"

namespace horext {

// Finite strictly increasing stand-in for a compact set.
class SampleSet {
public:
    explicit SampleSet(std::vector<double> points);

    const std::vector<double>& points() const { return pts_; }
    std::size_t size() const { return pts_.size(); }
    double min() const { return pts_.front(); }
    double max() const { return pts_.back(); }
    double diam() const { return pts_.back() - pts_.front(); }
    std::size_t index_of(double x) const; // exact match or argument error
    bool operator==(const SampleSet& o) const { return pts_ == o.pts_; }

private:
    std::vector<double> pts_;
};

// Prospective derivatives F^0..F^m sampled on K.
class ScalarJet {
public:
    ScalarJet(SampleSet K, int order, std::vector<std::vector<double>> rows);

    const SampleSet& K() const { return K_; }
    int order() const { return m_; }
    double value(int k, std::size_t i) const { return rows_[k][i]; }
    const std::vector<double>& row(int k) const { return rows_[k]; }
    std::vector<std::vector<double>>& rows() { return rows_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

    // Jet values [F^0(x_i), ..., F^m(x_i)] at the i-th point.
    std::vector<double> at(std::size_t i) const;

private:
    SampleSet K_;
    int m_;
    std::vector<std::vector<double>> rows_; // rows_[k][i] = F^k(x_i)
};

struct HorizontalJetTriple {
    ScalarJet F, G, H;

    HorizontalJetTriple(ScalarJet f, ScalarJet g, ScalarJet h);
    const SampleSet& K() const { return F.K(); }
    int order() const { return F.order(); }
};

// Taylor remainder (R_a^m F)^k(x) = F^k(x) - sum_l F^{k+l}(a) (x-a)^l / l!.
double jet_remainder(const ScalarJet& F, std::size_t a_idx, std::size_t x_idx, int k);

// Default cap on |K| for the quadratic pair scans; callers may override.
inline constexpr std::size_t kDefaultPairScanCap = 4096;

struct WhitneyWitness {
    double a = 0.0;
    double b = 0.0;
    int k = 0;
};

struct WhitneyFieldReport {
    double best_constant = 0.0;
    WhitneyWitness worst_witness;
    // (scale, max over pairs in the dyadic bin of max_k |R^k| / |b-a|^{m-k})
    std::vector<std::pair<double, double>> decay_profile;
};

// Smallest C with |(R_a^m F)^k(b)| <= C w(|b-a|) |b-a|^{m-k} over all pairs
// and orders, found by a full pair scan, plus the decay diagnostic.
WhitneyFieldReport validate_cmw(const ScalarJet& F, const ModulusOfContinuity& omega,
                                ExecutionPolicy policy = ExecutionPolicy::Parallel,
                                std::size_t pair_scan_cap = kDefaultPairScanCap);

// Pairs binned by dyadic gap scale; per scale, max_k |R^k| / |b-a|^{m-k}.
// A profile trending to 0 with the scale is consistent with the C^m Whitney
// condition; finite data cannot certify the limit statement itself.
std::vector<std::pair<double, double>> cm_decay_diagnostic(const ScalarJet& F);

} // namespace horext
