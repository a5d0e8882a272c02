#include "idjc/fock.hpp"

#include "idjc/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace idjc {

namespace {

// log(|alpha|^n / sqrt(n!)) with the convention 0^0 = 1.
double log_coherent_magnitude(double abs_alpha, int n) {
    const double pow_term = n == 0 ? 0.0 : n * std::log(abs_alpha);
    return pow_term - 0.5 * std::lgamma(n + 1.0);
}

// Sums term(n) for n >= start until the terms are negligible. term must be
// eventually decreasing beyond n = turn.
template <class Term>
double sum_tail(int start, double turn, Term term) {
    // Cat terms vanish at every other level, so a single zero is not a stop signal.
    double sum = 0.0;
    double previous = -1.0;
    for (int n = start;; ++n) {
        const double t = term(n);
        sum += t;
        if (n > turn) {
            if (t == 0.0 && previous == 0.0) break;
            if (t > 0.0 && t < 1e-18 * sum) break;
        }
        previous = t;
    }
    return sum;
}

double cat_norm_const(cplx alpha, int r) {
    const double a2 = std::norm(alpha);
    double denom = 0.0;
    if (r == -1) {
        denom = -2.0 * std::expm1(-2.0 * a2);
    } else {
        denom = 1.0 + r * r + 2.0 * r * std::exp(-2.0 * a2);
    }
    return 1.0 / denom;
}

void check_dim(int dim) {
    if (dim < 1) throw InvalidDim("Fock dimension must be >= 1, got " + std::to_string(dim));
}

}  // namespace

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
    if (amplitudes.size() == 0) throw InvalidDim("state vector must have dim >= 1");
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidState("state vector has zero or non-finite norm");
    }
    amplitudes /= norm;
    return StateVector(std::move(amplitudes));
}

StateVector StateVector::fock(int n, int dim) {
    check_dim(dim);
    if (n < 0 || n >= dim) {
        throw InvalidDim("Fock level " + std::to_string(n) + " outside dimension " +
                         std::to_string(dim));
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(n) = 1.0;
    return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd elements) : rho_(std::move(elements)) {
    if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) {
        throw InvalidState("density matrix must be square with dim >= 1");
    }
    if (!rho_.allFinite()) throw InvalidState("density matrix has non-finite elements");
    const double herm_dev = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > kHermitianTolerance) {
        throw InvalidState("density matrix not Hermitian (max deviation " +
                           std::to_string(herm_dev) + ")");
    }
    const double tr = rho_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        throw InvalidState("density matrix trace " + std::to_string(tr) + " != 1");
    }
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_positive_semidefinite(double tol) const {
    return min_eigenvalue() >= -tol;
}

CatSpec::CatSpec(cplx alpha, int parity_r) : alpha_(alpha), r_(parity_r), norm_(0.0) {
    if (r_ < -1 || r_ > 1) {
        throw InvalidCat("parity r must be -1, 0 or +1, got " + std::to_string(r_));
    }
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw InvalidCat("cat amplitude must be finite");
    }
    norm_ = cat_norm_const(alpha, r_);
    if (!(norm_ > 0.0) || !std::isfinite(norm_)) {
        throw InvalidCat("odd cat with alpha = 0 is undefined");
    }
}

int default_dim(double abs_alpha) {
    const double a2 = abs_alpha * abs_alpha;
    return static_cast<int>(std::ceil(a2 + 10.0 * std::sqrt(a2 + 1.0))) + 2;
}

double coherent_tail_mass(cplx alpha, int dim) {
    check_dim(dim);
    const double a = std::abs(alpha);
    const double mean = a * a;
    if (mean == 0.0) return 0.0;
    return sum_tail(dim, mean, [&](int n) {
        return std::exp(-mean + 2.0 * log_coherent_magnitude(a, n));
    });
}

double cat_tail_mass(const CatSpec& spec, int dim) {
    check_dim(dim);
    const double a = std::abs(spec.alpha());
    const double mean = a * a;
    const int r = spec.parity_r();
    const double log_norm = std::log(spec.norm_const());
    if (mean == 0.0) return 0.0;
    return sum_tail(dim, mean, [&](int n) {
        const double parity = 1.0 + r * (n % 2 == 0 ? 1.0 : -1.0);
        if (parity == 0.0) return 0.0;
        return parity * parity * std::exp(log_norm - mean + 2.0 * log_coherent_magnitude(a, n));
    });
}

StateVector make_coherent(cplx alpha, int dim, double tail_tol) {
    return make_cat(CatSpec(alpha, 0), dim, tail_tol);
}

StateVector make_cat(const CatSpec& spec, int dim, double tail_tol) {
    check_dim(dim);
    const double tail = cat_tail_mass(spec, dim);
    if (tail > tail_tol) {
        throw TruncationTooSmall("dim " + std::to_string(dim) + " leaves tail mass " +
                                 std::to_string(tail) + " for |alpha| = " +
                                 std::to_string(std::abs(spec.alpha())));
    }
    const double a = std::abs(spec.alpha());
    const double phase = std::arg(spec.alpha());
    const int r = spec.parity_r();
    const double prefactor = std::sqrt(spec.norm_const());
    Eigen::VectorXcd amps(dim);
    for (int n = 0; n < dim; ++n) {
        const double parity = 1.0 + r * (n % 2 == 0 ? 1.0 : -1.0);
        if (parity == 0.0) {
            amps(n) = 0.0;
            continue;
        }
        const double mag = std::exp(-0.5 * a * a + log_coherent_magnitude(a, n));
        amps(n) = std::polar(prefactor * parity * mag, n * phase);
    }
    return StateVector::normalized(std::move(amps));
}

DensityMatrix pure_density(const StateVector& psi) {
    const auto& c = psi.amplitudes();
    Eigen::MatrixXcd rho = c * c.adjoint();
    // Force exact Hermiticity and a real diagonal.
    for (int n = 0; n < rho.rows(); ++n) {
        rho(n, n) = std::norm(c(n));
        for (int m = n + 1; m < rho.cols(); ++m) rho(m, n) = std::conj(rho(n, m));
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix mix(std::span<const WeightedState> components) {
    if (components.empty()) throw WeightMismatch("mixture needs at least one component");
    const int dim = components.front().rho.dim();
    double total = 0.0;
    for (const auto& c : components) {
        if (!(c.weight >= 0.0)) throw WeightMismatch("mixture weights must be non-negative");
        if (c.rho.dim() != dim) {
            throw DimMismatch("mixture components have dims " + std::to_string(dim) + " and " +
                              std::to_string(c.rho.dim()));
        }
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw WeightMismatch("mixture weights sum to " + std::to_string(total));
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& c : components) rho += c.weight * c.rho.elements();
    return DensityMatrix(std::move(rho));
}

double purity_defect(const DensityMatrix& rho) {
    // Tr rho^2 = sum |rho_nm|^2 for Hermitian rho.
    return 1.0 - rho.elements().squaredNorm();
}

double fidelity_with_pure(const DensityMatrix& rho, const StateVector& psi) {
    if (rho.dim() != psi.dim()) {
        throw DimMismatch("fidelity: rho has dim " + std::to_string(rho.dim()) +
                          ", psi has dim " + std::to_string(psi.dim()));
    }
    const auto& c = psi.amplitudes();
    return c.dot(rho.elements() * c).real();
}

std::vector<double> photon_distribution(const DensityMatrix& rho) {
    std::vector<double> p(static_cast<std::size_t>(rho.dim()));
    for (int n = 0; n < rho.dim(); ++n) p[static_cast<std::size_t>(n)] = rho(n, n).real();
    return p;
}

double mean_photon_number(const DensityMatrix& rho) {
    double mean = 0.0;
    for (int n = 0; n < rho.dim(); ++n) mean += n * rho(n, n).real();
    return mean;
}

DensityMatrix coherent_pair_mixture(cplx alpha, int dim, double tail_tol) {
    const WeightedState parts[] = {
        {0.5, pure_density(make_coherent(alpha, dim, tail_tol))},
        {0.5, pure_density(make_coherent(-alpha, dim, tail_tol))},
    };
    return mix(parts);
}

}  // namespace idjc
