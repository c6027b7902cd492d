#pragma once

#include <stdexcept>
#include <string>

namespace horext {

// Input data fails one of the extension theorem's three conditions.
class ValidationError : public std::runtime_error {
public:
    ValidationError(int condition, const std::string& what)
        : std::runtime_error(what), condition_(condition) {}

    // 1 = Whitney field constant, 2 = vertical Leibniz identity, 3 = area/velocity ratio
    int condition() const noexcept { return condition_; }

private:
    int condition_;
};

// A gap repair exceeded its sup-norm guard: the data implies a larger
// area/velocity constant than the guard admits.
class AdmissibilityError : public std::runtime_error {
public:
    AdmissibilityError(double gap_lo, double gap_hi, double implied_constant,
                       const std::string& what)
        : std::runtime_error(what),
          gap_lo_(gap_lo), gap_hi_(gap_hi), implied_constant_(implied_constant) {}

    double gap_lo() const noexcept { return gap_lo_; }
    double gap_hi() const noexcept { return gap_hi_; }
    double implied_constant() const noexcept { return implied_constant_; }

private:
    double gap_lo_, gap_hi_, implied_constant_;
};

// No schedule entry reached the requested discarded-measure target.
class CoverageError : public std::runtime_error {
public:
    CoverageError(double achieved, const std::string& what)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved_measure() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Sample grid too coarse for the requested estimation radii.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace horext
