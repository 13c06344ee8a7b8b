#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "tpjc/spectrum.hpp"

using namespace tpjc;

namespace {

ModelParams direct(double omega, double omega0, double beta1, double beta2, double lambda,
                   double delta, double omega_shift = 0.0) {
    ModelParams p;
    p.omega = omega;
    p.omega0 = omega0;
    p.beta1 = beta1;
    p.beta2 = beta2;
    p.lambda_eff = lambda;
    p.detuning = delta;
    p.omega_shift = omega_shift;
    return p;
}

// Independent route: numerical diagonalization of the 2×2 block, ascending.
std::pair<double, double> diagonalize(const BlockHamiltonian& b) {
    Eigen::Matrix2d h;
    h << b.h11, b.h12, b.h12, b.h22;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> s(h);
    return {s.eigenvalues()(0), s.eigenvalues()(1)};
}

ModelParams dispersive_model(double delta_gap) {
    // β₁ = 0.01, β₂ = 0.02, δ − β₂ = delta_gap
    RawCouplings raw;
    raw.lambda1 = 0.1;
    raw.lambda2 = std::sqrt(0.02);
    raw.delta_int = 1.0;
    raw.omega = 1.0;
    raw.omega0 = 2.0 + 0.02 + delta_gap;
    return build_params(raw);
}

}  // namespace

TEST_CASE("block entries") {
    SUBCASE("resonant, no Stark shift") {
        const auto b = block_hamiltonian(direct(1.3, 2.0, 0.0, 0.0, 0.25, 0.0), 0);
        CHECK(b.h11 == doctest::Approx(1.0));
        CHECK(b.h22 == doctest::Approx(1.0));
        CHECK(b.h12 == doctest::Approx(0.25 * std::sqrt(2.0)));
    }
    SUBCASE("symmetric raw couplings at n = 1") {
        RawCouplings raw{1.0, 2.5, 0.1, 0.1, 1.0, 0.0, 0.0};
        const auto b = block_hamiltonian(build_params(raw), 1);
        // ω·1 + ω₀/2 + β₂ and ω·1 + ω₀/2 − δ + 3β₁ with δ = 0.5
        CHECK(b.h11 == doctest::Approx(1.0 + 1.25 + 0.01));
        CHECK(b.h22 == doctest::Approx(1.0 + 1.25 - 0.5 + 0.03));
        CHECK(b.h12 == doctest::Approx(0.01 * std::sqrt(6.0)));
        // h22 is the bare energy of |g,3⟩: 3ω − ω₀/2 + 3β₁
        CHECK(b.h22 == doctest::Approx(3.0 - 1.25 + 0.03));
    }
    SUBCASE("zero coupling leaves the block diagonal") {
        CHECK(block_hamiltonian(direct(1.0, 2.0, 0.1, 0.2, 0.0, 0.3), 4).h12 == 0.0);
    }
    CHECK_THROWS_AS(block_hamiltonian(direct(1, 2, 0, 0, 0, 0), -1), ParameterError);
    CHECK_THROWS_AS(block_hamiltonian(make_params(-0.5, 0.5, 1.0, 0.0, 1.0), 0), ParameterError);
}

TEST_CASE("exact eigenvalues") {
    SUBCASE("diagonal block") {
        const auto e = exact_eigenvalues(direct(1.0, 2.0, 0.0, 0.0, 0.0, 0.7), 3);
        CHECK(e.plus == doctest::Approx(3.0 + 1.0));
        CHECK(e.minus == doctest::Approx(3.0 + 1.0 - 0.7));
        // |e,n⟩ stays E₊ when δ < 0 too.
        const auto f = exact_eigenvalues(direct(1.0, 2.0, 0.0, 0.0, 0.0, -0.7), 3);
        CHECK(f.plus == doctest::Approx(4.0));
        CHECK(f.minus == doctest::Approx(4.7));
    }
    SUBCASE("equal shifts with delta = beta") {
        const auto p = direct(0.4, 1.1, 0.3, 0.3, 0.2, 0.3);
        for (int n = 0; n < 6; ++n) {
            const auto e = exact_eigenvalues(p, n);
            const auto [lo, hi] = diagonalize(block_hamiltonian(p, n));
            CHECK(std::abs(std::min(e.plus, e.minus) - lo) <= 1e-12);
            CHECK(std::abs(std::max(e.plus, e.minus) - hi) <= 1e-12);
        }
    }
    SUBCASE("randomized parameters against diagonalization, trace and determinant") {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::uniform_int_distribution<int> photons(0, 20);
        for (int i = 0; i < 500; ++i) {
            const auto p = direct(u(rng), 2.0 * u(rng), 0.2 * u(rng), 0.2 * u(rng), 0.1 * u(rng), u(rng));
            const int n = photons(rng);
            const auto b = block_hamiltonian(p, n);
            const auto e = exact_eigenvalues(p, n);
            const auto [lo, hi] = diagonalize(b);
            const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
            CHECK(std::abs(std::min(e.plus, e.minus) - lo) <= 1e-12 * scale);
            CHECK(std::abs(std::max(e.plus, e.minus) - hi) <= 1e-12 * scale);
            CHECK(std::abs(e.plus + e.minus - b.trace()) <= 1e-10 * std::max(1.0, std::abs(b.trace())));
            CHECK(std::abs(e.plus * e.minus - b.determinant()) <=
                  1e-10 * std::max(1.0, std::abs(b.determinant())));
        }
    }
}

TEST_CASE("dispersive report") {
    SUBCASE("no Stark shift") {
        const auto r = dispersive_report(direct(1.0, 2.0, 0.0, 0.0, 0.0, 0.5), 10);
        CHECK(r.valid);
        CHECK(r.ratios.size() == 11);
        for (const auto& q : r.ratios) CHECK((q.excited == 0.0 && q.ground == 0.0));
    }
    SUBCASE("ratio 0.5 at n_max fails a 0.1 threshold") {
        // β₁(n_max+2)/|δ−β₂| = 0.1·5/1 = 0.5
        const auto r = dispersive_report(direct(0.0, 0.0, 0.1, 0.0, 0.0, 1.0), 3, 0.1);
        CHECK(r.ratios.back().excited == doctest::Approx(0.5));
        CHECK_FALSE(r.valid);
    }
    SUBCASE("default sweep parameters with beta1/Omega = 1") {
        const auto p = build_params(DimensionlessRatios{0.04, 1.0, 0.02, 1.0});
        const auto r = dispersive_report(p, 5);
        // |δ − β₂| = β₁β₂/Ω = 1.02
        CHECK(r.ratios[0].excited == doctest::Approx(2.0 / 1.02));
        CHECK(r.ratios[0].ground == doctest::Approx(1.02 / 1.02));
        CHECK_FALSE(r.valid);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(dispersive_report(direct(0, 0, 0.1, 0.2, 0.1, 0.2), 3), DispersiveError);
        CHECK_THROWS_AS(dispersive_report(direct(0, 0, 0.1, 0.2, 0.1, 1.0), 3, 1.5), ParameterError);
        CHECK_THROWS_AS(dispersive_report(direct(0, 0, 0.1, 0.2, 0.1, 1.0), -1), ParameterError);
    }
}

TEST_CASE("dispersive eigenvalues") {
    SUBCASE("no Stark shift gives bare energies") {
        RawCouplings raw{1.0, 2.5, 0.0, 0.0, 1.0, 0.0, 0.0};
        const auto p = build_params(raw);
        const auto e = dispersive_eigenvalues(p, 2);
        CHECK(e.plus == doctest::Approx(2.0 + 1.25));
        CHECK(e.minus == doctest::Approx(2.0 + 1.25 - 0.5));
    }
    SUBCASE("n = 0 shifts the excited level by 2 Omega") {
        const auto p = dispersive_model(10.0);
        CHECK(dispersive_eigenvalues(p, 0).plus - 0.5 * p.omega0 == doctest::Approx(2.0 * p.omega_shift));
    }
    SUBCASE("outside the dispersive regime") {
        CHECK_THROWS_AS(dispersive_eigenvalues(dispersive_model(0.05), 3), DispersiveError);
    }
    SUBCASE("error shrinks quadratically as the detuning grows") {
        std::vector<double> xs, ys;
        for (double ratio : {1e-2, 3e-3, 1e-3, 3e-4, 1e-4}) {
            const int n = 2;
            const auto p = dispersive_model(0.01 * (n + 2) / ratio);
            const auto d = dispersive_eigenvalues(p, n);
            const auto e = exact_eigenvalues(p, n);
            xs.push_back(std::log(ratio));
            ys.push_back(std::log(std::abs(d.plus - e.plus)));
            CHECK(std::abs(d.minus - e.minus) == doctest::Approx(std::abs(d.plus - e.plus)).epsilon(1e-3));
        }
        const double slope = (ys.back() - ys.front()) / (xs.back() - xs.front());
        CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
    }
}

TEST_CASE("effective diagonal") {
    const auto p = dispersive_model(5.0);
    CHECK(effective_diagonal(p, 0, AtomLevel::Ground) == doctest::Approx(-0.5 * p.omega0));
    CHECK(effective_diagonal(p, 0, AtomLevel::Excited) ==
          doctest::Approx(0.5 * p.omega0 + 2.0 * p.omega_shift));
    for (int n = 0; n < 12; ++n) {
        const auto d = dispersive_eigenvalues(dispersive_model(50.0), n);
        const auto q = dispersive_model(50.0);
        CHECK(effective_diagonal(q, n, AtomLevel::Excited) == doctest::Approx(d.plus).epsilon(1e-14));
        CHECK(effective_diagonal(q, n + 2, AtomLevel::Ground) == doctest::Approx(d.minus).epsilon(1e-14));
    }
}
