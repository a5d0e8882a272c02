// dynamics.hpp: resonant Jaynes-Cummings field evolution in the interaction
// picture, for the intensity-dependent (R = a sqrt(a^+ a)) coupling and, for
// contrast, the ordinary (a) coupling.
//
// With the atom prepared in |e>, the joint state after dimensionless time
// tau = lambda t is
//
//   |e> A|psi> + |g> B|psi>,   A|n> = cos(tau f(n+1)) |n>,
//                              B|n> = -i sin(tau f(n+1)) |n+1>,
//
// where f(k) = k for the intensity-dependent coupling and sqrt(k) for the
// ordinary one. The reduced field map is rho -> A rho A^+ + B rho B^+.
// Starting from |g> the roles mirror: the atom-preserving operator is
// cos(tau f(n)) and the flip operator lowers, -i sin(tau f(n)) |n-1>.
//
// A and B are kept as sparse shift operators, so one propagation step of a
// density matrix costs O(N^2).

#pragma once

#include "idjc/fock.hpp"

#include <Eigen/Dense>

#include <vector>

namespace idjc {

enum class Coupling { intensity_dependent, ordinary };
enum class AtomState { excited, ground };

inline constexpr double kDefaultLeakTolerance = 1e-10;

struct EvolutionParams {
    double lambda = 1.0;
    double tau = 0.0;  // lambda * t
    Coupling coupling = Coupling::intensity_dependent;
    int dim = 2;
    AtomState atom = AtomState::excited;
    // Max population allowed at the top two Fock levels before propagation.
    double leak_tolerance = kDefaultLeakTolerance;

    // Throws InvalidParams unless lambda > 0, tau >= 0, dim >= 2.
    void validate() const;
};

// R / R^+ (intensity-dependent) or a / a^+ (ordinary) acting on the Fock basis.
class LadderAction {
public:
    enum class Kind { lower, raise };

    LadderAction(Kind kind, Coupling coupling) : kind_(kind), coupling_(coupling) {}

    // Matrix element <n-1|R|n> (lower) or <n+1|R^+|n> (raise).
    double coefficient(int n) const;
    // Applies to a vector; amplitude pushed above dim-1 is dropped.
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    Eigen::MatrixXd dense(int dim) const;

private:
    Kind kind_;
    Coupling coupling_;
};

// Operator with one nonzero diagonal: O|n> = coeff[n] |n + shift>.
struct ShiftOperator {
    int shift = 0;
    std::vector<cplx> coeffs;

    int dim() const noexcept { return static_cast<int>(coeffs.size()); }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    Eigen::MatrixXcd dense() const;
};

// Atom-preserving Kraus operator (diagonal).
ShiftOperator op_A(const EvolutionParams& params);
// Atom-flipping Kraus operator (raises for an excited start, lowers for ground).
ShiftOperator op_B(const EvolutionParams& params);

// left * rho * right^+ for shift operators, truncated to rho's dimension.
Eigen::MatrixXcd sandwich(const ShiftOperator& left, const Eigen::MatrixXcd& rho,
                          const ShiftOperator& right);

DensityMatrix evolve_field(const DensityMatrix& rho0, const EvolutionParams& params);
double excited_population(const DensityMatrix& rho0, const EvolutionParams& params);
// <sigma_z> = 2 P_e - 1
double atomic_inversion(const DensityMatrix& rho0, const EvolutionParams& params);

// The four atomic blocks of the joint density matrix, ordered (e, g).
struct JointBlocks {
    Eigen::MatrixXcd ee, eg, ge, gg;

    Eigen::MatrixXcd full() const;
    double trace() const;
    double purity_defect() const;
};

JointBlocks joint_state_blocks(const DensityMatrix& rho0, const EvolutionParams& params);

}  // namespace idjc
