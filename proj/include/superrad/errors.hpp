#pragma once

#include <stdexcept>
#include <string>

namespace superrad {

/// Thrown when a truncated representation cannot hold the requested state to
/// the requested tolerance. `tail_mass` is the probability (or norm deficit)
/// left outside the truncation.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double tail_mass)
        : std::runtime_error(what), tail_mass_(tail_mass) {}
    double tail_mass() const { return tail_mass_; }

private:
    double tail_mass_;
};

/// Thrown when a numerical contract fails at run time (step-size acceptance
/// never reached, truncation leak detected, non-finite values, ...).
/// Distinct from std::invalid_argument, which covers bad user input.
class NumericalContractError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace superrad
