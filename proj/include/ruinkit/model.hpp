#ifndef RUINKIT_MODEL_HPP
#define RUINKIT_MODEL_HPP

#include <string>
#include <vector>

#include "ruinkit/rng.hpp"

namespace ruinkit {

// Raw market/insurance parameters of the surplus process
//   dX = ((a-r)*kappa + r) X dt + kappa*sigma X dW + c dt - dS,
// where S is the compound Poisson claim process.
struct ModelParams {
    double a = 0.0;      // risky-asset drift (1/time)
    double r = 0.0;      // risk-free rate (1/time), r >= 0
    double kappa = 1.0;  // invested fraction, in (0, 1]
    double sigma = 0.0;  // volatility (1/sqrt(time)), > 0
    double c = 0.0;      // premium rate (currency/time), > 0
    double lambda = 0.0; // claim intensity (1/time), >= 0

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Dimensionless structural triple driving the whole analytic pipeline.
struct DerivedParams {
    double gamma = 0.0; // 2((a-r)kappa + r) / (kappa^2 sigma^2)
    double alpha = 0.0; // 2c / (kappa^2 sigma^2)
    double mu = 0.0;    // 2lambda / (kappa^2 sigma^2)
};

DerivedParams derive_params(const ModelParams& m);

// Claim-size distribution with analytic tail, moments and inverse-CDF sampler.
// Immutable after construction; safe to share across workers.
class ClaimDistribution {
public:
    enum class Kind { Exponential, Pareto, Lognormal, Deterministic, Empirical };

    static ClaimDistribution exponential(double rate);
    // Lomax convention: tail(x) = (1 + x/scale)^(-index), so F(0) = 0.
    static ClaimDistribution pareto(double index, double scale);
    static ClaimDistribution lognormal(double location, double shape);
    static ClaimDistribution deterministic(double atom);
    static ClaimDistribution empirical(std::vector<double> samples);

    Kind kind() const { return kind_; }
    std::string kind_name() const;
    std::string describe() const;

    // Tail function F-bar(x) = P(claim > x); right-continuous. Requires x >= 0.
    double tail(double x) const;
    // cdf(x) = 1 - tail(x); the pair sums to 1 exactly.
    double cdf(double x) const;

    // p-th moment, requires p > 0; +infinity when the moment diverges.
    double moment(double p) const;

    // Inverse-CDF draw; identical streams give identical claims.
    double sample(RngStream& rng) const;

    // Discontinuity points of F (empty for continuous families).
    std::vector<double> atoms() const;

    // Mean when finite, otherwise the supplied fallback.
    double mean_or(double fallback) const;

    bool moments_sample_based() const { return kind_ == Kind::Empirical; }
    // Supremum of moment orders known finite (+inf for all but Pareto).
    double finite_moment_sup() const;

    double param1() const { return p1_; }
    double param2() const { return p2_; }
    const std::vector<double>& samples() const { return samples_; }

private:
    ClaimDistribution(Kind kind, double p1, double p2, std::vector<double> samples);

    Kind kind_;
    double p1_ = 0.0; // rate | index | location | atom
    double p2_ = 0.0; // scale | shape
    std::vector<double> samples_; // sorted, Empirical only
};

// Assumption report for (A1) F(0)=0, (A2) some finite moment, (A3) gamma > 1,
// plus the moment(gamma-1) finiteness that selects the asymptotics branch.
struct AssumptionReport {
    bool a1_cdf_zero_at_origin = false;
    bool a2_finite_small_moment = false;
    bool a3_gamma_above_one = false;
    double gamma = 0.0;
    double finite_moment_sup = 0.0;   // sup of orders with finite moment
    bool moments_sample_based = false;
    double moment_gamma_minus_one = 0.0; // +inf in the divergent branch
    bool moment_gamma_minus_one_finite = false;
    std::string detail;

    bool solver_admissible() const { return a1_cdf_zero_at_origin && a3_gamma_above_one; }
};

AssumptionReport check_assumptions(const ModelParams& m, const ClaimDistribution& d);

} // namespace ruinkit

#endif
