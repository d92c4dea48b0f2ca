#pragma once

#include <vector>

namespace crl {

inline constexpr double kGammaQuarter = 3.6256099082219083119;       // Gamma(1/4)
inline constexpr double kGammaThreeQuarter = 1.2254167024651776451;  // Gamma(3/4)

// Gamma(s) for the two certified shape parameters.
double gamma_at(double s);

// Upper incomplete gamma Gamma(s, x) for s in {1/4, 3/4}: power series below
// x = s + 1, Lentz continued fraction above.  Absolute error <= 1e-14.
// Throws std::domain_error for unsupported s or negative x.
double upper_incomplete_gamma(double s, double x);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct QuadratureConfig {
    int nodes = 64;          // Gauss-Legendre nodes per panel
    double panel_width = 0.5;
    double tail_cut = 1e-18; // integrand level at which the tail is dropped
};

/// AFE smoothing weight V_kappa(y): the normalized upper incomplete gamma
/// tail (2/Gamma((1/2+kappa)/2)) Int_y^oo t^{kappa-1/2} e^{-t^2} dt.
/// Decreases from V_kappa(0) = 1 and falls below e^{-y} past y = 1.
class SmoothingKernel {
public:
    explicit SmoothingKernel(int kappa, QuadratureConfig quad = {});

    int kappa() const { return kappa_; }
    double shape() const { return shape_; } // (1/2 + kappa)/2

    // Primary route: Gamma(shape, y^2) / Gamma(shape).
    double operator()(double y) const;

    // Independent oracle: panelled Gauss-Legendre quadrature of the defining
    // integral after the substitution t = u^2.
    double eval_quadrature(double y) const;

private:
    int kappa_;
    double shape_;
    QuadratureConfig quad_;
    std::vector<double> nodes_, weights_;
};

// Riemann zeta by Euler-Maclaurin: m leading terms plus j Bernoulli
// corrections (j <= 20).  Good to ~1e-15 for s = 1/2 with the defaults.
double zeta_euler_maclaurin(double s, int m = 20, int j = 20);

} // namespace crl
