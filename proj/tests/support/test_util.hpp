#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Small numeric helpers for the test suites. Kept independent of the library
// under test so they can serve as oracles.
namespace testutil {

inline double gammln(double x) {
    static const double cof[6] = {76.18009172947146,  -86.50532032941677, 24.01409824083091,
                                  -1.231739572450155, 0.1208650973866179e-2, -0.5395239384953e-5};
    double y = x, tmp = x + 5.5;
    tmp -= (x + 0.5) * std::log(tmp);
    double ser = 1.000000000190015;
    for (double c : cof) ser += c / ++y;
    return -tmp + std::log(2.5066282746310005 * ser / x);
}

// Regularized incomplete gamma functions, series + continued fraction.
inline double gamma_p(double a, double x);

inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x < a + 1.0) return 1.0 - gamma_p(a, x);
    const double gln = gammln(a);
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 200; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-14) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

inline double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x >= a + 1.0) return 1.0 - gamma_q(a, x);
    const double gln = gammln(a);
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 1; i <= 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-14) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
}

// Survival function of the chi-square distribution.
inline double chi2_sf(double chi2, int df) {
    return gamma_q(0.5 * df, 0.5 * chi2);
}

// Pearson statistic against expected counts.
inline double chi2_statistic(const std::vector<double>& observed,
                             const std::vector<double>& expected) {
    double s = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double diff = observed[i] - expected[i];
        s += diff * diff / expected[i];
    }
    return s;
}

// (2m-1)!! -- the number of perfect matchings on 2m points.
inline std::uint64_t odd_double_factorial(std::uint64_t odd) {
    std::uint64_t r = 1;
    for (std::uint64_t k = 1; k <= odd; k += 2) r *= k;
    return r;
}

}  // namespace testutil
