#include "doctest.h"

#include "idjc/dynamics.hpp"
#include "idjc/error.hpp"
#include "idjc/fock.hpp"
#include "idjc/oracles.hpp"
#include "reference.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace idjc;
using namespace idjc::oracles;

namespace {

constexpr double pi = std::numbers::pi;

EvolutionParams params(double tau, int dim) {
    EvolutionParams p;
    p.tau = tau;
    p.dim = dim;
    return p;
}

double normalized_overlap(const Eigen::VectorXcd& v, const Eigen::VectorXcd& target) {
    return std::norm(target.dot(v)) / (v.squaredNorm() * target.squaredNorm());
}

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("PoissonWeights") {
    const PoissonWeights w(5.0, 60);
    double sum = 0.0;
    for (int n = 0; n < w.size(); ++n) {
        CHECK(w[n] >= 0.0);
        CHECK(std::abs(w[n] - ref::poisson_pmf(25.0, n)) < 1e-13 * ref::poisson_pmf(25.0, n) + 1e-300);
        sum += w[n];
    }
    CHECK(std::abs(sum + w.tail() - 1.0) < 1e-14);
    CHECK(w.tail() == doctest::Approx(2.112058441122689e-09).epsilon(1e-10));  // mpmath, 40 digits
    CHECK(poisson_terms_for(5.0) <= default_dim(5.0));
}

TEST_CASE("purity_mixture_closed") {
    const int dim = default_dim(5.0);
    CHECK(std::abs(purity_mixture_closed(5.0, 0.0) - 0.5) < 1e-10);
    CHECK(purity_mixture_closed(5.0, pi / 2.0) < 0.02);

    SUBCASE("vacuum limit") {
        for (double tau : {0.3, 1.0, 2.5}) {
            const double c2 = std::cos(tau) * std::cos(tau);
            const double s2 = 1.0 - c2;
            CHECK(purity_mixture_closed(0.0, tau) ==
                  doctest::Approx(1.0 - c2 * c2 - s2 * s2).epsilon(1e-14));
        }
    }
    SUBCASE("agrees with the matrix engine") {
        const auto mixture = coherent_pair_mixture(5.0, dim);
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
        for (int trial = 0; trial < 50; ++trial) {
            const double tau = u(rng);
            CHECK(std::abs(purity_mixture_closed(5.0, tau) -
                           purity_defect(evolve_field(mixture, params(tau, dim)))) < 1e-9);
        }
    }
    SUBCASE("explicit term count too small") {
        CHECK_THROWS_AS(purity_mixture_closed(5.0, 0.5, 40), TruncationTooSmall);
        CHECK_NOTHROW(purity_mixture_closed(5.0, 0.5, 90));
    }
}

TEST_CASE("inversion_cat_closed") {
    for (double a : {0.5, 2.0, 5.0}) {
        for (int r : {-1, 0, 1}) CHECK(inversion_cat_closed(a, r, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(inversion_cat_closed(0.0, -1, 0.3), InvalidCat);

    SUBCASE("coherent state against the photon-number sum") {
        for (double tau : {0.1, 0.5, 1.0}) {
            double direct = 0.0;
            for (int n = 0; n < 200; ++n) direct += ref::poisson_pmf(25.0, n) * std::cos(2.0 * tau * (n + 1));
            CHECK(std::abs(inversion_cat_closed(5.0, 0, tau) - direct) < 1e-12);
            CHECK(std::abs(inversion_cat_closed(5.0, 0, tau) -
                           std::exp(-50.0 * std::sin(tau) * std::sin(tau)) *
                               std::cos(25.0 * std::sin(2.0 * tau) + 2.0 * tau)) < 1e-15);
        }
    }
    SUBCASE("even cat flips the atom at pi/2") {
        CHECK(std::abs(inversion_cat_closed(5.0, 1, pi / 2.0) + 1.0) < 1e-15);
    }
    SUBCASE("period pi for single-parity cats") {
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
        for (int trial = 0; trial < 40; ++trial) {
            const double tau = u(rng);
            for (int r : {-1, 1}) {
                CHECK(std::abs(inversion_cat_closed(3.0, r, tau) - inversion_cat_closed(3.0, r, tau + pi)) <
                      1e-12);
            }
        }
    }
    SUBCASE("agrees with the matrix engine") {
        for (double a : {2.0, 5.0}) {
            const int dim = default_dim(a);
            for (int r : {-1, 0, 1}) {
                const auto rho0 = pure_density(make_cat(CatSpec(a, r), dim));
                for (int k = 0; k < 25; ++k) {
                    const double tau = 2.0 * pi * k / 25.0;
                    CHECK(std::abs(inversion_cat_closed(a, r, tau) - atomic_inversion(rho0, params(tau, dim))) <
                          1e-9);
                }
            }
        }
    }
}

TEST_CASE("evolved_cat_branches") {
    const int dim = default_dim(5.0);

    SUBCASE("tau = 0") {
        const CatSpec spec(5.0, 1);
        const auto [a, b] = evolved_cat_branches(spec, 0.0, dim);
        CHECK((a - make_cat(spec, dim).amplitudes()).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(b.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("branch completeness and agreement with the Kraus operators") {
        std::mt19937_64 rng(10);
        std::uniform_real_distribution<double> u_tau(0.0, 2.0 * pi);
        std::uniform_real_distribution<double> u_alpha(0.3, 5.0);
        std::uniform_int_distribution<int> u_r(-1, 1);
        for (int trial = 0; trial < 30; ++trial) {
            const CatSpec spec(u_alpha(rng), u_r(rng));
            const double tau = u_tau(rng);
            const auto [a, b] = evolved_cat_branches(spec, tau, dim);
            CHECK(std::abs(a.squaredNorm() + b.squaredNorm() - 1.0) < 1e-10);
            const auto phi = make_cat(spec, dim).amplitudes();
            CHECK((a - op_A(params(tau, dim)).apply(phi)).cwiseAbs().maxCoeff() < 1e-10);
            CHECK((b - op_B(params(tau, dim)).apply(phi)).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SUBCASE("complex amplitude") {
        const CatSpec spec(cplx(1.0, 2.0), 1);
        const auto [a, b] = evolved_cat_branches(spec, 0.7, dim);
        const auto phi = make_cat(spec, dim).amplitudes();
        CHECK((b - op_B(params(0.7, dim)).apply(phi)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("even cat at pi/2: everything in the flipped branch") {
        const auto [a, b] = evolved_cat_branches(CatSpec(5.0, 1), pi / 2.0, dim);
        CHECK(a.norm() < 0.01);
        const auto odd = ref::cat(cplx(0.0, 5.0), -1, dim);
        // Only odd levels are populated, but with weights sqrt(k)/alpha relative
        // to the rotated odd cat: overlap = (sum q_k sqrt(k)/a)^2 / sum q_k k/a^2.
        // Frozen from an independent numpy evaluation.
        CHECK(normalized_overlap(b, odd) == doctest::Approx(0.98984056233565).epsilon(1e-12));
        double weighted = 0.0, second_moment = 0.0;
        for (int k = 1; k < dim; ++k) {
            weighted += std::norm(odd(k)) * std::sqrt(static_cast<double>(k)) / 5.0;
            second_moment += std::norm(odd(k)) * k / 25.0;
        }
        CHECK(normalized_overlap(b, odd) ==
              doctest::Approx(weighted * weighted / second_moment).epsilon(1e-12));
    }
    SUBCASE("odd cat at pi/2: stays in the atom-preserving branch") {
        const auto [a, b] = evolved_cat_branches(CatSpec(5.0, -1), pi / 2.0, dim);
        CHECK(b.norm() < 0.01);
        CHECK(normalized_overlap(a, ref::cat(cplx(0.0, 5.0), -1, dim)) > 1.0 - 1e-12);
    }
    SUBCASE("truncation") {
        CHECK_THROWS_AS(evolved_cat_branches(CatSpec(5.0, 1), 0.5, 50), TruncationTooSmall);
    }
}

TEST_CASE("revival_time") {
    CHECK(revival_time(CatSpec(5.0, 1), 1.0) == pi / 2.0);
    CHECK(revival_time(CatSpec(5.0, -1), 1.0) == pi / 2.0);
    CHECK(revival_time(CatSpec(5.0, 0), 1.0) == pi);
    CHECK(revival_time(CatSpec(5.0, 1), 2.0) == pi / 4.0);
    CHECK_THROWS_AS(revival_time(CatSpec(5.0, 1), 0.0), InvalidParams);
}

}  // TEST_SUITE
