#include "idjc/phase_space.hpp"

#include "idjc/error.hpp"
#include "idjc/oracles.hpp"
#include "idjc/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace idjc {

namespace {

void check_support(const DensityMatrix& rho, double tail_tol) {
    const double top = rho(rho.dim() - 1, rho.dim() - 1).real();
    if (top > tail_tol) {
        throw TruncationTooSmall("rho has population " + std::to_string(top) +
                                 " on its top Fock level " + std::to_string(rho.dim() - 1));
    }
}

double q_unchecked(const Eigen::MatrixXcd& rho, cplx beta) {
    const Eigen::VectorXcd b = coherent_overlaps(beta, static_cast<int>(rho.rows()));
    return b.dot(rho * b).real() / std::numbers::pi;
}

}  // namespace

void GridSpec::validate() const {
    if (nx < 2 || ny < 2) throw InvalidParams("grid needs at least 2 points per axis");
    if (!(x_max > x_min) || !(y_max > y_min)) {
        throw InvalidParams("grid bounds must satisfy min < max");
    }
}

GridSpec default_grid(double abs_alpha) {
    const double half = std::abs(abs_alpha) + 3.0;
    return GridSpec{-half, half, -half, half, kDefaultGridPoints, kDefaultGridPoints};
}

double QGrid::normalization() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * cell_area;
}

Eigen::VectorXcd coherent_overlaps(cplx beta, int dim) {
    Eigen::VectorXcd b(dim);
    const double mag = std::abs(beta);
    const double theta = std::arg(beta);
    const double log_mag = mag > 0.0 ? std::log(mag) : -std::numeric_limits<double>::infinity();
    const double base = -0.5 * mag * mag;
    b(0) = std::exp(base);
    for (int n = 1; n < dim; ++n) {
        const double log_term = base + n * log_mag - 0.5 * std::lgamma(n + 1.0);
        b(n) = std::polar(std::exp(log_term), n * theta);
    }
    return b;
}

double q_at(const DensityMatrix& rho, cplx beta, double tail_tol) {
    check_support(rho, tail_tol);
    return q_unchecked(rho.elements(), beta);
}

QGrid q_grid(const DensityMatrix& rho, const GridSpec& spec, unsigned threads, double tail_tol) {
    spec.validate();
    check_support(rho, tail_tol);
    QGrid grid{spec,
               std::vector<double>(static_cast<std::size_t>(spec.nx) *
                                   static_cast<std::size_t>(spec.ny)),
               spec.dx() * spec.dy()};
    const auto& elements = rho.elements();
    parallel_for(static_cast<std::size_t>(spec.nx), threads, [&](std::size_t ix) {
        const double x = spec.x(static_cast<int>(ix));
        for (int iy = 0; iy < spec.ny; ++iy) {
            grid.values[ix * static_cast<std::size_t>(spec.ny) + static_cast<std::size_t>(iy)] =
                q_unchecked(elements, cplx(x, spec.y(iy)));
        }
    });
    return grid;
}

double q_mixture_closed(double alpha, double tau, cplx beta, int n_terms, double tail_tol) {
    // Each term carries the Poisson-like weight (|a b|)^n / n! of mean |a b|.
    const double coupling = std::abs(alpha) * std::abs(beta);
    const int needed = oracles::poisson_terms_for(std::sqrt(coupling), tail_tol);
    if (n_terms <= 0) {
        n_terms = needed;
    } else if (n_terms < needed) {
        throw TruncationTooSmall(std::to_string(n_terms) + " series terms; beta = (" +
                                 std::to_string(beta.real()) + ", " + std::to_string(beta.imag()) +
                                 ") needs " + std::to_string(needed));
    }
    const cplx beta_conj = std::conj(beta);
    const double envelope = -0.5 * (std::norm(beta) + alpha * alpha);
    const double log_coupling =
        coupling > 0.0 ? std::log(coupling) : -std::numeric_limits<double>::infinity();
    const double theta = std::arg(beta_conj * alpha);

    cplx s1_plus = 0.0, s1_minus = 0.0, s2_plus = 0.0, s2_minus = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        const double log_mag = envelope + (n == 0 ? 0.0 : n * log_coupling) - std::lgamma(n + 1.0);
        const cplx term = std::polar(std::exp(log_mag), n * theta);
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        const cplx a_part = term * std::cos(tau * (n + 1));
        const cplx b_part =
            term * (cplx(0.0, -1.0) * beta_conj * std::sin(tau * (n + 1)) / std::sqrt(n + 1.0));
        s1_plus += a_part;
        s1_minus += sign * a_part;
        s2_plus += b_part;
        s2_minus += sign * b_part;
    }
    return (std::norm(s1_plus) + std::norm(s1_minus) + std::norm(s2_plus) + std::norm(s2_minus)) /
           (2.0 * std::numbers::pi);
}

GridIndex argmax_near(const QGrid& grid, cplx center, double radius) {
    GridIndex best{-1, -1};
    double best_value = -std::numeric_limits<double>::infinity();
    for (int ix = 0; ix < grid.spec.nx; ++ix) {
        for (int iy = 0; iy < grid.spec.ny; ++iy) {
            const cplx point(grid.spec.x(ix), grid.spec.y(iy));
            if (std::abs(point - center) > radius) continue;
            const double v = grid.at(ix, iy);
            if (v > best_value) {
                best_value = v;
                best = {ix, iy};
            }
        }
    }
    if (best.ix < 0) throw InvalidParams("no grid cell within the search radius");
    return best;
}

}  // namespace idjc
