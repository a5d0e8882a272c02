// reference.hpp: test-only reference computations.
//
// These deliberately avoid the library's code paths: factorials come from
// explicit log sums, coherent amplitudes from the c_n = c_{n-1} alpha / sqrt(n)
// recurrence, and the evolved mixture from a dense double sum over (n, m).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

namespace ref {

using cplx = std::complex<double>;

inline double log_factorial(int n) {
    double s = 0.0;
    for (int k = 2; k <= n; ++k) s += std::log(static_cast<double>(k));
    return s;
}

inline double poisson_pmf(double mean, int n) {
    if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-mean + n * std::log(mean) - log_factorial(n));
}

// Untruncated coherent amplitudes (not renormalized).
inline Eigen::VectorXcd coherent(cplx alpha, int dim) {
    Eigen::VectorXcd c(dim);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    return c;
}

// Normalized (|a> + r|-a>) built from two coherent vectors.
inline Eigen::VectorXcd cat(cplx alpha, int r, int dim) {
    Eigen::VectorXcd v = coherent(alpha, dim) + static_cast<double>(r) * coherent(-alpha, dim);
    return v / v.norm();
}

// Evolved equal mixture of |a>, |-a> from the explicit double sum
//   rho(t) = 1/2 sum_{n,m} c_n c_m^* [1 + (-1)^{n+m}] { cos(t(n+1)) cos(t(m+1)) |n><m|
//                                                      + sin(t(n+1)) sin(t(m+1)) |n+1><m+1| }
// for real alpha, truncated to dim levels.
inline Eigen::MatrixXcd mixture_double_sum(double alpha, double tau, int dim) {
    const Eigen::VectorXcd c = coherent(alpha, dim);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) {
            const double parity = 1.0 + (((n + m) % 2 == 0) ? 1.0 : -1.0);
            if (parity == 0.0) continue;
            const cplx w = 0.5 * c(n) * std::conj(c(m)) * parity;
            rho(n, m) += w * std::cos(tau * (n + 1)) * std::cos(tau * (m + 1));
            if (n + 1 < dim && m + 1 < dim) {
                rho(n + 1, m + 1) += w * std::sin(tau * (n + 1)) * std::sin(tau * (m + 1));
            }
        }
    }
    return rho;
}

// Random density matrix G G^+ / Tr with support on levels < support.
inline Eigen::MatrixXcd random_density(std::mt19937_64& rng, int dim, int support) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < support; ++i) {
        for (int j = 0; j < support; ++j) m(i, j) = cplx(g(rng), g(rng));
    }
    Eigen::MatrixXcd rho = m * m.adjoint();
    rho /= rho.trace().real();
    // exact Hermiticity
    Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
    for (int i = 0; i < dim; ++i) herm(i, i) = herm(i, i).real();
    return herm;
}

inline Eigen::VectorXcd random_state(std::mt19937_64& rng, int dim, int support) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (int i = 0; i < support; ++i) v(i) = cplx(g(rng), g(rng));
    return v / v.norm();
}

}  // namespace ref
