#include "idjc/dynamics.hpp"

#include "idjc/error.hpp"

#include <cmath>
#include <string>

namespace idjc {

namespace {

double rabi_factor(Coupling coupling, int k) {
    return coupling == Coupling::intensity_dependent ? static_cast<double>(k)
                                                     : std::sqrt(static_cast<double>(k));
}

void check_inputs(const DensityMatrix& rho0, const EvolutionParams& params) {
    params.validate();
    if (rho0.dim() != params.dim) {
        throw DimMismatch("rho has dim " + std::to_string(rho0.dim()) +
                          " but evolution params declare dim " + std::to_string(params.dim));
    }
    double edge = 0.0;
    for (int n = std::max(0, rho0.dim() - 2); n < rho0.dim(); ++n) edge += rho0(n, n).real();
    if (edge > params.leak_tolerance * rho0.trace()) {
        throw TailLeak("population " + std::to_string(edge) + " at the top two of " +
                       std::to_string(rho0.dim()) + " Fock levels exceeds leak tolerance " +
                       std::to_string(params.leak_tolerance));
    }
}

}  // namespace

void EvolutionParams::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidParams("lambda must be positive, got " + std::to_string(lambda));
    }
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw InvalidParams("tau must be non-negative, got " + std::to_string(tau));
    }
    if (dim < 2) throw InvalidParams("dim must be >= 2, got " + std::to_string(dim));
}

double LadderAction::coefficient(int n) const {
    if (kind_ == Kind::lower) return n == 0 ? 0.0 : rabi_factor(coupling_, n);
    return rabi_factor(coupling_, n + 1);
}

Eigen::VectorXcd LadderAction::apply(const Eigen::VectorXcd& v) const {
    const auto dim = v.size();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        const auto target = kind_ == Kind::lower ? n - 1 : n + 1;
        if (target < 0 || target >= dim) continue;
        out(target) += coefficient(static_cast<int>(n)) * v(n);
    }
    return out;
}

Eigen::MatrixXd LadderAction::dense(int dim) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        const int target = kind_ == Kind::lower ? n - 1 : n + 1;
        if (target < 0 || target >= dim) continue;
        m(target, n) = coefficient(n);
    }
    return m;
}

Eigen::VectorXcd ShiftOperator::apply(const Eigen::VectorXcd& v) const {
    const int n_dim = static_cast<int>(v.size());
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n_dim);
    for (int n = 0; n < n_dim && n < dim(); ++n) {
        const int target = n + shift;
        if (target < 0 || target >= n_dim) continue;
        out(target) = coeffs[static_cast<std::size_t>(n)] * v(n);
    }
    return out;
}

Eigen::MatrixXcd ShiftOperator::dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
    for (int n = 0; n < dim(); ++n) {
        const int target = n + shift;
        if (target < 0 || target >= dim()) continue;
        m(target, n) = coeffs[static_cast<std::size_t>(n)];
    }
    return m;
}

ShiftOperator op_A(const EvolutionParams& params) {
    params.validate();
    ShiftOperator a{0, std::vector<cplx>(static_cast<std::size_t>(params.dim))};
    // Excited start: cos(tau f(n+1)); ground start: cos(tau f(n)).
    const int offset = params.atom == AtomState::excited ? 1 : 0;
    for (int n = 0; n < params.dim; ++n) {
        a.coeffs[static_cast<std::size_t>(n)] =
            std::cos(params.tau * rabi_factor(params.coupling, n + offset));
    }
    return a;
}

ShiftOperator op_B(const EvolutionParams& params) {
    params.validate();
    const bool excited = params.atom == AtomState::excited;
    ShiftOperator b{excited ? 1 : -1, std::vector<cplx>(static_cast<std::size_t>(params.dim))};
    // R^+ S_{n+1}: the ladder factor cancels the 1/sqrt(R R^+) of the sine operator.
    const int offset = excited ? 1 : 0;
    for (int n = 0; n < params.dim; ++n) {
        const double s = std::sin(params.tau * rabi_factor(params.coupling, n + offset));
        b.coeffs[static_cast<std::size_t>(n)] = cplx(0.0, -s);
    }
    return b;
}

Eigen::MatrixXcd sandwich(const ShiftOperator& left, const Eigen::MatrixXcd& rho,
                          const ShiftOperator& right) {
    const int dim = static_cast<int>(rho.rows());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = 0; m < dim; ++m) {
        const int col = m + right.shift;
        if (col < 0 || col >= dim) continue;
        const cplx rc = std::conj(right.coeffs[static_cast<std::size_t>(m)]);
        for (int n = 0; n < dim; ++n) {
            const int row = n + left.shift;
            if (row < 0 || row >= dim) continue;
            // Coefficient product first so that the result stays exactly
            // Hermitian when left == right.
            out(row, col) = (left.coeffs[static_cast<std::size_t>(n)] * rc) * rho(n, m);
        }
    }
    return out;
}

DensityMatrix evolve_field(const DensityMatrix& rho0, const EvolutionParams& params) {
    check_inputs(rho0, params);
    const auto a = op_A(params);
    const auto b = op_B(params);
    const auto& rho = rho0.elements();
    return DensityMatrix(sandwich(a, rho, a) + sandwich(b, rho, b));
}

double excited_population(const DensityMatrix& rho0, const EvolutionParams& params) {
    check_inputs(rho0, params);
    const auto op = params.atom == AtomState::excited ? op_A(params) : op_B(params);
    double pe = 0.0;
    for (int n = 0; n < rho0.dim(); ++n) {
        const int target = n + op.shift;
        if (target < 0 || target >= rho0.dim()) continue;
        pe += std::norm(op.coeffs[static_cast<std::size_t>(n)]) * rho0(n, n).real();
    }
    return pe;
}

double atomic_inversion(const DensityMatrix& rho0, const EvolutionParams& params) {
    return 2.0 * excited_population(rho0, params) - 1.0;
}

Eigen::MatrixXcd JointBlocks::full() const {
    const auto n = ee.rows();
    Eigen::MatrixXcd m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = ee;
    m.topRightCorner(n, n) = eg;
    m.bottomLeftCorner(n, n) = ge;
    m.bottomRightCorner(n, n) = gg;
    return m;
}

double JointBlocks::trace() const { return ee.trace().real() + gg.trace().real(); }

double JointBlocks::purity_defect() const {
    return 1.0 - (ee.squaredNorm() + eg.squaredNorm() + ge.squaredNorm() + gg.squaredNorm());
}

JointBlocks joint_state_blocks(const DensityMatrix& rho0, const EvolutionParams& params) {
    check_inputs(rho0, params);
    const auto a = op_A(params);
    const auto b = op_B(params);
    const auto& rho = rho0.elements();
    // Field component attached to |e> and to |g>.
    const auto& e_op = params.atom == AtomState::excited ? a : b;
    const auto& g_op = params.atom == AtomState::excited ? b : a;
    return JointBlocks{sandwich(e_op, rho, e_op), sandwich(e_op, rho, g_op),
                       sandwich(g_op, rho, e_op), sandwich(g_op, rho, g_op)};
}

}  // namespace idjc
