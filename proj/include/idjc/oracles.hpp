// oracles.hpp: closed-form series for the intensity-dependent model.
//
// Everything here is evaluated directly from photon-number series and never
// touches the matrix propagation in dynamics.hpp, so the two can be used to
// cross-check each other. Amplitudes are real unless stated otherwise.

#pragma once

#include "idjc/fock.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace idjc::oracles {

// Poisson weights P_n = exp(-a^2) a^{2n} / n!, n < size().
class PoissonWeights {
public:
    PoissonWeights(double alpha, int n_terms);

    double alpha() const noexcept { return alpha_; }
    int size() const noexcept { return static_cast<int>(terms_.size()); }
    double operator[](int n) const { return terms_[static_cast<std::size_t>(n)]; }
    // Mass beyond the last stored term.
    double tail() const noexcept { return tail_; }

private:
    double alpha_;
    std::vector<double> terms_;
    double tail_;
};

// Smallest term count whose Poisson tail is below tol.
int poisson_terms_for(double alpha, double tol = kDefaultTailTolerance);

// Field purity defect for the equal |a>,|-a> mixture with the atom excited.
// n_terms <= 0 picks the count automatically; an explicit count whose tail
// exceeds tail_tol throws TruncationTooSmall.
double purity_mixture_closed(double alpha, double tau, int n_terms = 0,
                             double tail_tol = kDefaultTailTolerance);

// Atomic inversion for an initial cat of parity r (0 = coherent).
double inversion_cat_closed(double alpha, int parity_r, double tau);

// Unnormalized A|Phi> and B|Phi> for the cat |Phi>, from their photon-number
// series (B written over the shifted index).
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> evolved_cat_branches(
    const CatSpec& spec, double tau, int dim, double tail_tol = kDefaultTailTolerance);

// pi/(2 lambda) for even or odd cats, pi/lambda for a coherent state.
double revival_time(const CatSpec& spec, double lambda);

}  // namespace idjc::oracles
