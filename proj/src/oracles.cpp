#include "idjc/oracles.hpp"

#include "idjc/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace idjc::oracles {

namespace {

// k * log(x) with 0^0 = 1; -inf for 0^k, k > 0.
double log_pow(double x, int k) {
    if (k == 0) return 0.0;
    return k * std::log(x);
}

// Poisson pmf evaluated in log space.
double poisson(double a, int n) {
    return std::exp(-a * a + log_pow(a, 2 * n) - std::lgamma(n + 1.0));
}

std::vector<double> poisson_suffix_sums(double a, int& n_max) {
    const double mean = a * a;
    n_max = static_cast<int>(std::ceil(mean + 40.0 * std::sqrt(mean + 1.0))) + 40;
    std::vector<double> suffix(static_cast<std::size_t>(n_max) + 2, 0.0);
    for (int n = n_max; n >= 0; --n) {
        suffix[static_cast<std::size_t>(n)] = suffix[static_cast<std::size_t>(n) + 1] + poisson(a, n);
    }
    return suffix;
}

}  // namespace

PoissonWeights::PoissonWeights(double alpha, int n_terms) : alpha_(std::abs(alpha)), tail_(0.0) {
    if (n_terms < 1) throw InvalidDim("PoissonWeights needs at least one term");
    terms_.resize(static_cast<std::size_t>(n_terms));
    for (int n = 0; n < n_terms; ++n) terms_[static_cast<std::size_t>(n)] = poisson(alpha_, n);
    int n_max = 0;
    const auto suffix = poisson_suffix_sums(alpha_, n_max);
    tail_ = n_terms > n_max ? 0.0 : suffix[static_cast<std::size_t>(n_terms)];
}

int poisson_terms_for(double alpha, double tol) {
    int n_max = 0;
    const auto suffix = poisson_suffix_sums(std::abs(alpha), n_max);
    int k = 1;
    while (k <= n_max && suffix[static_cast<std::size_t>(k)] >= tol) ++k;
    return k;
}

double purity_mixture_closed(double alpha, double tau, int n_terms, double tail_tol) {
    const double a = std::abs(alpha);
    if (n_terms <= 0) n_terms = poisson_terms_for(a, tail_tol);
    const PoissonWeights weights(a, n_terms);
    if (weights.tail() > tail_tol) {
        throw TruncationTooSmall(std::to_string(n_terms) + " terms leave Poisson tail " +
                                 std::to_string(weights.tail()) + " for alpha = " +
                                 std::to_string(a));
    }

    double t1_plus = 0.0, t1_minus = 0.0;
    double t2_plus = 0.0, t2_minus = 0.0;
    double t3_plus = 0.0, t3_minus = 0.0;  // imaginary parts; the real parts vanish
    // One extra term: the n/a^2 and sqrt(n)/a weights reach P_{n-1}.
    for (int n = 0; n <= n_terms; ++n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        const double c = std::cos(tau * (n + 1));
        if (n < n_terms) {
            t1_plus += weights[n] * c * c;
            t1_minus += weights[n] * sign * c * c;
        }
        if (n == 0) continue;
        const double s = std::sin(tau * n);
        // (n/a^2) P_n = P_{n-1};  (sqrt(n)/a) P_n, both finite at a = 0.
        const double w2 = std::exp(-a * a + log_pow(a, 2 * n - 2) - std::lgamma(n));
        const double w3 =
            std::exp(-a * a + log_pow(a, 2 * n - 1) + 0.5 * std::log(n) - std::lgamma(n + 1.0));
        t2_plus += w2 * s * s;
        t2_minus -= w2 * sign * s * s;  // (-1)^{n+1}
        t3_plus += w3 * c * s;
        t3_minus -= w3 * sign * c * s;
    }
    const double tr_rho2 =
        0.5 * (t1_plus * t1_plus + t1_minus * t1_minus + t2_plus * t2_plus + t2_minus * t2_minus +
               2.0 * t3_plus * t3_plus + 2.0 * t3_minus * t3_minus);
    return 1.0 - tr_rho2;
}

double inversion_cat_closed(double alpha, int parity_r, double tau) {
    const CatSpec spec(alpha, parity_r);  // validates r and the alpha = 0 odd cat
    const double a2 = alpha * alpha;
    const double r = parity_r;
    const double sin_tau = std::sin(tau);
    const double cos_tau = std::cos(tau);
    const double phase = a2 * std::sin(2.0 * tau);
    const double direct =
        (1.0 + r * r) * std::exp(-2.0 * a2 * sin_tau * sin_tau) * std::cos(phase + 2.0 * tau);
    const double interference =
        2.0 * r * std::exp(-2.0 * a2 * cos_tau * cos_tau) * std::cos(phase - 2.0 * tau);
    return spec.norm_const() * (direct + interference);
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> evolved_cat_branches(const CatSpec& spec,
                                                                   double tau, int dim,
                                                                   double tail_tol) {
    if (dim < 2) throw InvalidDim("branches need dim >= 2, got " + std::to_string(dim));
    // The B branch at level dim-1 is fed from level dim-2.
    const double tail = cat_tail_mass(spec, dim - 1);
    if (tail > tail_tol) {
        throw TruncationTooSmall("dim " + std::to_string(dim) + " leaves cat tail " +
                                 std::to_string(tail));
    }
    const double a = std::abs(spec.alpha());
    const double theta = std::arg(spec.alpha());
    const int r = spec.parity_r();
    const double log_prefactor = 0.5 * std::log(spec.norm_const()) - 0.5 * a * a;

    Eigen::VectorXcd a_branch = Eigen::VectorXcd::Zero(dim);
    Eigen::VectorXcd b_branch = Eigen::VectorXcd::Zero(dim);
    for (int n = 0; n < dim; ++n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        const double even_part = 1.0 + r * sign;
        const double odd_part = 1.0 - r * sign;
        if (even_part != 0.0) {
            const double mag = std::exp(log_prefactor + log_pow(a, n) - 0.5 * std::lgamma(n + 1.0));
            a_branch(n) = std::polar(mag * even_part * std::cos(tau * (n + 1)), n * theta);
        }
        if (n > 0 && odd_part != 0.0) {
            // (sqrt(n)/alpha) alpha^n / sqrt(n!) = sqrt(n) alpha^{n-1} / sqrt(n!)
            const double mag = std::exp(log_prefactor + 0.5 * std::log(n) + log_pow(a, n - 1) -
                                        0.5 * std::lgamma(n + 1.0));
            b_branch(n) = cplx(0.0, -1.0) *
                          std::polar(mag * odd_part * std::sin(tau * n), (n - 1) * theta);
        }
    }
    return {std::move(a_branch), std::move(b_branch)};
}

double revival_time(const CatSpec& spec, double lambda) {
    if (!(lambda > 0.0)) throw InvalidParams("lambda must be positive");
    return spec.parity_r() == 0 ? std::numbers::pi / lambda : std::numbers::pi / (2.0 * lambda);
}

}  // namespace idjc::oracles
