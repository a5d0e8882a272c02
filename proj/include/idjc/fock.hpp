// fock.hpp: truncated Fock-space states and density matrices.
//
// A StateVector holds amplitudes c_0..c_{N-1} over |0>..|N-1>, always unit
// norm. A DensityMatrix is an N x N Hermitian, unit-trace matrix. Both are
// immutable values; every operation below is a pure function.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace idjc {

using cplx = std::complex<double>;

inline constexpr double kDefaultTailTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

class StateVector {
public:
    // Normalizes the given amplitudes. Throws InvalidDim on an empty vector
    // and InvalidState on a zero vector.
    static StateVector normalized(Eigen::VectorXcd amplitudes);

    // Fock state |n> in a space of dimension dim.
    static StateVector fock(int n, int dim);

    const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
    int dim() const noexcept { return static_cast<int>(amps_.size()); }
    cplx operator[](int n) const { return amps_(n); }

private:
    explicit StateVector(Eigen::VectorXcd amps) : amps_(std::move(amps)) {}

    Eigen::VectorXcd amps_;
};

class DensityMatrix {
public:
    // Validates squareness, Hermiticity and unit trace; throws InvalidState.
    explicit DensityMatrix(Eigen::MatrixXcd elements);

    const Eigen::MatrixXcd& elements() const noexcept { return rho_; }
    int dim() const noexcept { return static_cast<int>(rho_.rows()); }
    cplx operator()(int n, int m) const { return rho_(n, m); }
    double trace() const { return rho_.trace().real(); }

    // O(N^3) eigenvalue check; not run on construction.
    bool is_positive_semidefinite(double tol = kPsdTolerance) const;
    double min_eigenvalue() const;

private:
    Eigen::MatrixXcd rho_;
};

// Amplitude alpha plus parity r of the superposition N^{1/2}(|a> + r|-a>).
// r = 0 is the plain coherent state.
class CatSpec {
public:
    CatSpec(cplx alpha, int parity_r);

    cplx alpha() const noexcept { return alpha_; }
    int parity_r() const noexcept { return r_; }
    // N = [1 + r^2 + 2 r exp(-2|alpha|^2)]^{-1}
    double norm_const() const noexcept { return norm_; }

private:
    cplx alpha_;
    int r_;
    double norm_;
};

// ceil(|a|^2 + 10 sqrt(|a|^2 + 1)) + 2
int default_dim(double abs_alpha);

// Poisson mass at n >= dim for mean |alpha|^2.
double coherent_tail_mass(cplx alpha, int dim);
// Photon-number mass of the (untruncated) cat at n >= dim.
double cat_tail_mass(const CatSpec& spec, int dim);

StateVector make_coherent(cplx alpha, int dim, double tail_tol = kDefaultTailTolerance);
StateVector make_cat(const CatSpec& spec, int dim, double tail_tol = kDefaultTailTolerance);

DensityMatrix pure_density(const StateVector& psi);

struct WeightedState {
    double weight;
    DensityMatrix rho;
};

DensityMatrix mix(std::span<const WeightedState> components);

// zeta = 1 - Tr rho^2
double purity_defect(const DensityMatrix& rho);

// <psi|rho|psi>
double fidelity_with_pure(const DensityMatrix& rho, const StateVector& psi);

std::vector<double> photon_distribution(const DensityMatrix& rho);
double mean_photon_number(const DensityMatrix& rho);

// Equal mixture of |alpha><alpha| and |-alpha><-alpha|.
DensityMatrix coherent_pair_mixture(cplx alpha, int dim, double tail_tol = kDefaultTailTolerance);

}  // namespace idjc
