#ifndef RUINKIT_ASYMPTOTICS_HPP
#define RUINKIT_ASYMPTOTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ruinkit/survival.hpp"
#include "ruinkit/volterra.hpp"

namespace ruinkit {

enum class TailRegime { PowerLaw, Divergent };

std::string to_string(TailRegime r);

struct RegimeClassification {
    TailRegime regime = TailRegime::PowerLaw;
    double moment_gamma_minus_one = 0.0; // +inf in the divergent branch
};

// Analytic branch selection: power law iff moment(gamma - 1) is finite.
RegimeClassification classify_regime(const ModelParams& m, const ClaimDistribution& d,
                                     const DerivedParams& dp);

struct LimitEstimate {
    double value = 0.0;       // +inf when the accumulated integral diverges
    double uncertainty = 0.0; // |accumulated - plateau| / accumulated
    double accumulated = 0.0; // e^{alpha/u_max} H(u_max) + fitted continuation
    double plateau = 0.0;     // mean of u^gamma g(u) over the last decade
    bool divergent = false;
};

// L = lim u^gamma g(u), estimated two independent ways and cross-checked;
// flags divergence when the last-decade values of u^gamma g(u) grow by more
// than 10% per octave.
LimitEstimate limit_L(const SolutionGrid& grid, const SurvivalCurve& curve);

// C_infinity = L / (gamma - 1); requires a finite L.
double c_infinity(double L, const DerivedParams& dp);

struct SeriesPoint {
    double u = 0.0;
    double value = 0.0;
};

struct AsymptoticsReport {
    TailRegime regime = TailRegime::PowerLaw;
    double moment_gamma_minus_one = 0.0;
    LimitEstimate L;
    std::optional<double> C_infinity;
    std::vector<SeriesPoint> plateau_series;      // u^(gamma-1) Psi(u), geometric u
    std::vector<SeriesPoint> subexp_ratio_series; // Psi(u)/tail(u), divergent only
};

AsymptoticsReport analyze_asymptotics(const ModelParams& m, const ClaimDistribution& d,
                                      const SolutionGrid& grid,
                                      const SurvivalCurve& curve);

} // namespace ruinkit

#endif
