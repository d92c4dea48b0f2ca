#include "crl/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace crl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_shape(double s) {
    if (s != 0.25 && s != 0.75)
        throw std::domain_error("incomplete gamma certified only for s = 1/4, 3/4");
}

// Regularized lower incomplete gamma P(s, x) by the standard power series,
// for x < s + 1.
double lower_regularized_series(double s, double x) {
    double ap = s;
    double term = 1.0 / s;
    double sum = term;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::log(gamma_at(s)));
}

// Gamma(s, x) by the modified Lentz continued fraction, for x >= s + 1.
double upper_continued_fraction(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + s * std::log(x)) * h;
}

} // namespace

double gamma_at(double s) {
    require_shape(s);
    return s == 0.25 ? kGammaQuarter : kGammaThreeQuarter;
}

double upper_incomplete_gamma(double s, double x) {
    require_shape(s);
    if (x < 0.0) throw std::domain_error("incomplete gamma needs x >= 0");
    if (x == 0.0) return gamma_at(s);
    if (x < s + 1.0) return gamma_at(s) * (1.0 - lower_regularized_series(s, x));
    return upper_continued_fraction(s, x);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

SmoothingKernel::SmoothingKernel(int kappa, QuadratureConfig quad)
    : kappa_(kappa), shape_((0.5 + kappa) / 2.0), quad_(quad) {
    if (kappa != 0 && kappa != 1)
        throw std::domain_error("kernel parity must be 0 or 1");
    gauss_legendre(quad_.nodes, nodes_, weights_);
}

double SmoothingKernel::operator()(double y) const {
    if (y < 0.0) throw std::domain_error("smoothing kernel needs y >= 0");
    return upper_incomplete_gamma(shape_, y * y) / gamma_at(shape_);
}

double SmoothingKernel::eval_quadrature(double y) const {
    if (y < 0.0) throw std::domain_error("smoothing kernel needs y >= 0");
    // t = u^2 turns the integral into (4/Gamma(shape)) Int u^{2 kappa} e^{-u^4} du,
    // smooth at the origin for both parities.
    const double a0 = std::sqrt(y);
    // e^{-u^4} is below any useful level past (-log tail_cut + 10)^{1/4}
    const double u_end = std::max(a0 + 2.0, std::pow(-std::log(quad_.tail_cut) + 10.0, 0.25));
    double integral = 0.0;
    for (double a = a0; a < u_end; a += quad_.panel_width) {
        const double b = std::min(a + quad_.panel_width, u_end);
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        double panel = 0.0;
        for (int i = 0; i < quad_.nodes; ++i) {
            const double u = mid + half * nodes_[i];
            const double u2 = u * u;
            panel += weights_[i] * (kappa_ == 0 ? 1.0 : u2) * std::exp(-u2 * u2);
        }
        integral += half * panel;
    }
    return 4.0 * integral / gamma_at(shape_);
}

double zeta_euler_maclaurin(double s, int m, int j) {
    // B_{2j} / (2j)!
    static const double kBernoulliOverFact[20] = {
        8.3333333333333333333e-02,  -1.3888888888888888889e-03, 3.3068783068783068783e-05,
        -8.2671957671957671958e-07, 2.0876756987868098979e-08,  -5.2841901386874931848e-10,
        1.3382536530684678833e-11,  -3.3896802963225828668e-13, 8.5860620562778445641e-15,
        -2.1748686985580618730e-16, 5.5090028283602295152e-18,  -1.3954464685812523341e-19,
        3.5347070396294674717e-21,  -8.9535174270375468504e-23, 2.2679524523376830603e-24,
        -5.7447906688722024453e-26, 1.4551724756148649019e-27,  -3.6859949406653101782e-29,
        9.3367342570950446720e-31,  -2.3650224157006299346e-32};
    if (s == 1.0) throw std::domain_error("zeta pole at s = 1");
    if (j > 20) j = 20;
    double sum = 0.0;
    for (int n = 1; n < m; ++n) sum += std::pow(n, -s);
    sum += std::pow(m, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(m, -s);
    double rising = s; // s (s+1) ... (s + 2k - 2)
    for (int k = 1; k <= j; ++k) {
        sum += kBernoulliOverFact[k - 1] * rising * std::pow(m, -s - 2.0 * k + 1.0);
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
    }
    return sum;
}

} // namespace crl
