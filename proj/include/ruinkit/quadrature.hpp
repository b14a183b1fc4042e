#ifndef RUINKIT_QUADRATURE_HPP
#define RUINKIT_QUADRATURE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ruinkit/model.hpp"

namespace ruinkit {

// Singular exponential weight w(t) = t^(gamma-2) exp(-alpha/t), evaluated in
// log space with explicit flush to zero below the normal-number floor.
// w(0) := 0 (the exponential kills the algebraic factor for every gamma).
struct WeightEvaluator {
    double gamma = 0.0;
    double alpha = 0.0;
    // ln of the smallest positive normal double; exponents below flush to 0.
    double log_floor = -708.396418532264078;

    explicit WeightEvaluator(const DerivedParams& dp)
        : gamma(dp.gamma), alpha(dp.alpha) {}
    WeightEvaluator(double g, double a) : gamma(g), alpha(a) {}

    double log_weight(double t) const; // -inf when t == 0
    double weight(double t) const;
};

struct WeightedRatio {
    double value = 0.0;
    bool underflow = false;
};

// Ratio  integral_0^u t^p exp(-alpha/t) dt / (u^(p+1) exp(-alpha/u)),
// used to diagnose decay rates: -> 1/(p+1) for large u, -> u/alpha for small u.
// Returns {0, underflow=true} when exp(-alpha/u) underflows.
WeightedRatio asymptotic_weight_integral(const WeightEvaluator& w, double u, double p);

// Product-integration table on a uniform grid 0 = t_0 < ... < t_n:
// per cell [t_j, t_{j+1}], the moments of w against the two linear hat
// functions are integrated exactly (adaptive in the s = alpha/t variable),
// so only the smooth factor is ever interpolated. Each stored moment carries
// the factor exp(alpha/t_{j+1}) to keep it representable near the origin.
class WeightCells {
public:
    WeightCells(const DerivedParams& dp, double u_max, std::size_t n_cells);

    std::size_t cells() const { return n_cells_; }
    double h() const { return h_; }
    double node(std::size_t i) const { return h_ * static_cast<double>(i); }
    const WeightEvaluator& weight() const { return w_; }

    // Shifted moments: A(j)*exp(-alpha/t_{j+1}) = integral over cell j of
    // w(t) (t_{j+1}-t)/h dt, and B likewise with (t-t_j)/h.
    double shifted_a(std::size_t j) const { return a_[j]; }
    double shifted_b(std::size_t j) const { return b_[j]; }

    // integral_{t_lo}^{t_hi} w(t) f(t) dt with f piecewise linear on the grid.
    // Additive over adjacent index ranges up to rounding.
    double integrate(std::span<const double> f, std::size_t i_lo, std::size_t i_hi) const;

private:
    void build_cell(std::size_t j);

    WeightEvaluator w_;
    double h_;
    std::size_t n_cells_;
    std::vector<double> a_, b_;
};

} // namespace ruinkit

#endif
