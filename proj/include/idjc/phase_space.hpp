// phase_space.hpp: Husimi Q-function Q(beta) = <beta|rho|beta> / pi.

#pragma once

#include "idjc/fock.hpp"

#include <Eigen/Dense>

#include <vector>

namespace idjc {

inline constexpr int kDefaultGridPoints = 161;
inline constexpr double kDefaultGridTolerance = 1e-3;

// Rectangular window, both endpoints sampled: x_i = x_min + i dx, i < nx.
struct GridSpec {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    int nx = kDefaultGridPoints;
    int ny = kDefaultGridPoints;

    void validate() const;  // throws InvalidParams
    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dy() const { return (y_max - y_min) / (ny - 1); }
    double x(int i) const { return x_min + i * dx(); }
    double y(int j) const { return y_min + j * dy(); }
};

// 161 x 161 over [-(|a|+3), |a|+3]^2.
GridSpec default_grid(double abs_alpha);

struct QGrid {
    GridSpec spec;
    std::vector<double> values;  // values[ix * ny + iy]
    double cell_area = 0.0;

    double at(int ix, int iy) const {
        return values[static_cast<std::size_t>(ix) * static_cast<std::size_t>(spec.ny) +
                      static_cast<std::size_t>(iy)];
    }
    // Riemann sum of Q over the window.
    double normalization() const;
};

struct GridIndex {
    int ix = 0;
    int iy = 0;
};

// <n|beta> for n < dim, evaluated in log space.
Eigen::VectorXcd coherent_overlaps(cplx beta, int dim);

// Throws TruncationTooSmall if rho carries more than tail_tol population on
// its top Fock level, i.e. the truncation cannot be trusted to represent it.
double q_at(const DensityMatrix& rho, cplx beta, double tail_tol = kDefaultTailTolerance);

// Row-parallel grid evaluation; the result does not depend on threads.
QGrid q_grid(const DensityMatrix& rho, const GridSpec& spec, unsigned threads = 1,
             double tail_tol = kDefaultTailTolerance);

// Closed-form Q for the equal |a>,|-a> mixture evolved with the atom excited.
double q_mixture_closed(double alpha, double tau, cplx beta, int n_terms = 0,
                        double tail_tol = kDefaultTailTolerance);

// Grid cell with the largest Q inside the disc |x + iy - center| <= radius.
GridIndex argmax_near(const QGrid& grid, cplx center, double radius);

}  // namespace idjc
