#include "ruinkit/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ruinkit {

namespace {

// 12-point Gauss-Legendre on [0,1].
constexpr std::array<double, 12> kGlNode = {
    0.009219682876640375, 0.047941371814762546, 0.115048662902847654,
    0.206341022856691276, 0.316084250500909903, 0.437383295744265542,
    0.562616704255734458, 0.683915749499090097, 0.793658977143308724,
    0.884951337097152346, 0.952058628185237454, 0.990780317123359625,
};
constexpr std::array<double, 12> kGlWeight = {
    0.023587668193255914, 0.053469662997659215, 0.080039164271673114,
    0.101583713361532961, 0.116746268269177404, 0.124573522906701393,
    0.124573522906701393, 0.116746268269177404, 0.101583713361532961,
    0.080039164271673114, 0.053469662997659215, 0.023587668193255914,
};

// Contributions with exponent below this relative cutoff are dropped.
constexpr double kExpCut = 45.0;

} // namespace

double WeightEvaluator::log_weight(double t) const {
    if (t < 0.0) throw std::domain_error("weight(t) requires t >= 0");
    if (t == 0.0) return -std::numeric_limits<double>::infinity();
    return (gamma - 2.0) * std::log(t) - alpha / t;
}

double WeightEvaluator::weight(double t) const {
    const double e = log_weight(t);
    return e < log_floor ? 0.0 : std::exp(e);
}

WeightedRatio asymptotic_weight_integral(const WeightEvaluator& w, double u, double p) {
    if (!(u > 0.0)) throw std::domain_error("asymptotic_weight_integral requires u > 0");
    const double x0 = w.alpha / u;
    if (-x0 < w.log_floor) return {0.0, true};

    // Change of variables t = u/(1+v) turns the ratio into
    //   integral_0^inf (1+v)^(-p-2) exp(-x0 v) dv,
    // integrated over panels of doubling width until both the panel
    // contribution and the analytic tail bound are negligible.
    const auto f = [&](double v) {
        return std::exp(-(p + 2.0) * std::log1p(v) - x0 * v);
    };
    double total = 0.0;
    double lo = 0.0, width = 0.25;
    for (int panel = 0; panel < 200; ++panel) {
        const double hi = lo + width;
        double part = 0.0;
        for (std::size_t k = 0; k < kGlNode.size(); ++k)
            part += kGlWeight[k] * f(lo + width * kGlNode[k]);
        part *= width;
        total += part;
        // Tail beyond hi: exponential bound always valid; algebraic bound
        // valid when p+1 > 0; either below threshold ends the sweep.
        const double exp_bound = f(hi) / x0;
        const double alg_bound = p + 1.0 > 0.0
            ? std::exp(-(p + 1.0) * std::log1p(hi)) / (p + 1.0)
            : std::numeric_limits<double>::infinity();
        if (std::min(exp_bound, alg_bound) < 1e-14 * total && part < 1e-13 * total) break;
        lo = hi;
        width *= 2.0;
    }
    return {total, false};
}

WeightCells::WeightCells(const DerivedParams& dp, double u_max, std::size_t n_cells)
    : w_(dp), h_(u_max / static_cast<double>(n_cells)), n_cells_(n_cells) {
    if (!(u_max > 0.0) || n_cells < 2)
        throw std::invalid_argument("WeightCells requires u_max > 0 and n >= 2");
    a_.resize(n_cells_);
    b_.resize(n_cells_);
    for (std::size_t j = 0; j < n_cells_; ++j) build_cell(j);
}

// Cell moments in the s = alpha/t variable:
//   integral_cell w(t) hat(t) e^{alpha/t1} dt
//     = alpha^(gamma-1) integral_{s1}^{s0} s^(-gamma) e^{-(s - s1)} hat(alpha/s) ds
// with s1 = alpha/t1 < s0 = alpha/t0 (s0 = inf for the first cell). The
// exponent is <= 0 throughout, so the shifted moments never overflow; the
// integrand is resolved by Gauss-Legendre panels whose widths follow e^{-q}.
void WeightCells::build_cell(std::size_t j) {
    const double gamma = w_.gamma;
    const double alpha = w_.alpha;
    const double t0 = node(j);
    const double t1 = node(j + 1);
    const double s1 = alpha / t1;
    const double log_scale = (gamma - 1.0) * std::log(alpha);

    // integrand pair against both hats, q = s - s1
    const auto accumulate = [&](double q_lo, double q_hi, double& acc_a, double& acc_b) {
        const double width = q_hi - q_lo;
        for (std::size_t k = 0; k < kGlNode.size(); ++k) {
            const double q = q_lo + width * kGlNode[k];
            const double s = s1 + q;
            const double t = alpha / s;
            const double lam1 = (t - t0) / h_;
            const double base =
                width * kGlWeight[k] * std::exp(log_scale - gamma * std::log(s) - q);
            acc_a += base * (1.0 - lam1);
            acc_b += base * lam1;
        }
    };

    const double q_max = j == 0 ? kExpCut : std::min(alpha / t0 - s1, kExpCut);
    double acc_a = 0.0, acc_b = 0.0;
    // Panel widths grade with the exponential decay, capped so each stays
    // well inside Gauss-Legendre accuracy.
    double lo = 0.0;
    double width = std::min(q_max, 0.125);
    while (lo < q_max) {
        const double hi = std::min(lo + width, q_max);
        accumulate(lo, hi, acc_a, acc_b);
        lo = hi;
        width = std::min(width * 2.0, 4.0);
    }
    a_[j] = acc_a;
    b_[j] = acc_b;
}

double WeightCells::integrate(std::span<const double> f, std::size_t i_lo,
                              std::size_t i_hi) const {
    if (i_lo > i_hi || i_hi > n_cells_)
        throw std::out_of_range("integrate_weighted: index range out of bounds");
    if (f.size() <= i_hi) throw std::out_of_range("integrate_weighted: f too short");
    double total = 0.0;
    for (std::size_t j = i_lo; j < i_hi; ++j) {
        const double e = -w_.alpha / node(j + 1);
        if (e < w_.log_floor) continue; // weight underflows across the cell
        total += std::exp(e) * (a_[j] * f[j] + b_[j] * f[j + 1]);
    }
    return total;
}

} // namespace ruinkit
