#pragma once

#include <string>
#include <vector>

#include "superrad/coupling.hpp"
#include "superrad/states.hpp"

namespace superrad {

struct GridConfig {
    double t_max = 3.0;  ///< in units 1/Gamma
    int samples = 201;   ///< >= 2, uniform including both endpoints

    std::vector<double> taus() const;
};

struct ToleranceConfig {
    double truncation = 1e-8;  ///< Fock realization tail tolerance
    double channel = 1e-9;     ///< ODE per-channel tolerance
    double leak = 1e-8;        ///< oracle truncation-leak threshold
    double epsilon = 1e-12;    ///< radiance classification tolerance
};

struct OutputConfig {
    std::string directory = ".";
    std::string prefix = "superrad";

    std::string path(const std::string& stem, const std::string& ext) const;
};

/// Everything a run needs, parsed from the flat key-value format:
///   [coupling]                 n, kappa, omega, and g (list) or uniform
///   [state]                    family plus its keys (alpha, xi,
///                              occupations, nbar, terms)
///   [grid]                     t_max, samples
///   [tolerances]               truncation, channel, leak, epsilon
///   [output]                   directory, prefix
/// `#` starts a comment line.  Unknown sections or keys, duplicates, and
/// malformed values are rejected with their line number; the assembled
/// config is cross-validated (state family against mode count etc).
struct RunConfig {
    CouplingConfig coupling;
    StateSpec state;
    GridConfig grid;
    ToleranceConfig tolerances;
    OutputConfig output;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// "1.5", "-2e-3", "0.3i", "1.5+0.3i", "1.5-0.3i", "i", "-i".
Complex parse_complex(const std::string& token);

}  // namespace superrad
