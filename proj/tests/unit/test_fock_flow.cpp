#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "bandlattice/flow.hpp"
#include "bandlattice/fock.hpp"

using namespace bandlattice;

namespace {

// Eigen-decomposition evolution oracle for the exact linear flow.
std::pair<RealField, RealField> evolve_by_eigendecomposition(
    const QuadraticLatticeHamiltonian& h, const RealField& q0, const RealField& p0, double t) {
    const PhaseSpaceForm form = to_phase_space_form(h);
    const SymplecticForm omega(form.sites());
    const Eigen::MatrixXd gen = omega.left_apply(2.0 * form.matrix());
    Eigen::EigenSolver<Eigen::MatrixXd> es(gen);
    const Eigen::MatrixXcd v = es.eigenvectors();
    const Eigen::VectorXcd lam = es.eigenvalues();
    const int n = form.sites();
    Eigen::VectorXcd z(2 * n);
    for (int j = 0; j < n; ++j) {
        z[j] = q0[j];
        z[n + j] = p0[j];
    }
    Eigen::VectorXcd coeffs = v.partialPivLu().solve(z);
    for (Eigen::Index i = 0; i < lam.size(); ++i) coeffs[i] *= std::exp(lam[i] * t);
    const Eigen::VectorXcd zt = v * coeffs;
    std::vector<double> qv(static_cast<size_t>(n)), pv(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        qv[static_cast<size_t>(j)] = zt[j].real();
        pv[static_cast<size_t>(j)] = zt[n + j].real();
    }
    return {RealField{h.lattice(), qv}, RealField{h.lattice(), pv}};
}

}  // namespace

TEST_SUITE("fock_flow") {

TEST_CASE("fock oracle: quadratic Hamiltonians commute with P to rounding") {
    const TotalMomentum mom = build_total_momentum(1.0, 3, Boundary::Periodic);
    const auto kg = build_bandlimited_kg(1.0, 1.0, 3, Boundary::Periodic);
    const auto chain = build_harmonic_chain(1.0, 1.0, 1.0, 3, Boundary::Periodic);
    CHECK(fock_oracle_commutator(kg, mom, 3, 5) < 1e-8);
    CHECK(fock_oracle_commutator(chain, mom, 3, 5) < 1e-8);
    std::mt19937_64 rng(8);
    const auto rnd = random_quadratic_hamiltonian(1.0, 3, Boundary::Periodic, 1, rng);
    CHECK(fock_oracle_commutator(rnd, mom, 3, 5) < 1e-8);
}

TEST_CASE("fock oracle: cubic augmentation breaks conservation") {
    const TotalMomentum mom = build_total_momentum(1.0, 3, Boundary::Periodic);
    const auto kg = build_bandlimited_kg(1.0, 1.0, 3, Boundary::Periodic);
    FockOracleOptions cubic;
    cubic.lambda_cubic = 0.1;
    const double residual = fock_oracle_commutator(kg, mom, 3, 5, cubic);
    MESSAGE("cubic fock residual = ", residual);
    CHECK(residual > 1e-3);
}

TEST_CASE("fock oracle: verdicts agree with the phase-space kernel route") {
    const TotalMomentum mom = build_total_momentum(1.0, 3, Boundary::Periodic);
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 5; ++rep) {
        const auto h = random_quadratic_hamiltonian(1.0, 3, Boundary::Periodic, 1, rng);
        const double kernel_residual =
            quadratic_commutator(to_phase_space_form(h), mom.form()).kernel.max_abs();
        const double fock_residual = fock_oracle_commutator(h, mom, 3, 5);
        CHECK(kernel_residual < 1e-10);
        CHECK(fock_residual < 1e-8);
    }
}

TEST_CASE("fock oracle: padding suppresses truncation artifacts") {
    const TotalMomentum mom = build_total_momentum(1.0, 3, Boundary::Periodic);
    const auto kg = build_bandlimited_kg(1.0, 1.0, 3, Boundary::Periodic);
    FockOracleOptions no_pad;
    no_pad.pad = 0;
    const double raw = fock_oracle_commutator(kg, mom, 3, 5, no_pad);
    const double padded = fock_oracle_commutator(kg, mom, 3, 5);
    MESSAGE("pad 0 residual = ", raw, ", pad 2 residual = ", padded);
    CHECK(raw > 1e-4);
    CHECK(padded < 1e-10 * raw / 1e-4);
}

TEST_CASE("fock oracle guards") {
    const TotalMomentum mom3 = build_total_momentum(1.0, 3, Boundary::Periodic);
    const auto kg3 = build_bandlimited_kg(1.0, 1.0, 3, Boundary::Periodic);
    const auto kg5 = build_bandlimited_kg(1.0, 1.0, 5, Boundary::Periodic);
    CHECK_THROWS_AS(fock_oracle_commutator(kg5, mom3, 3, 5), std::invalid_argument);
    CHECK_THROWS_AS(fock_oracle_commutator(kg3, mom3, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(fock_oracle_commutator(kg3, mom3, 3, 9), std::invalid_argument);
    FockOracleOptions bad_pad;
    bad_pad.pad = 7;
    CHECK_THROWS_AS(fock_oracle_commutator(kg3, mom3, 3, 5, bad_pad), std::invalid_argument);
}

TEST_CASE("exact linear flow conserves P and E; final state matches eigen evolution") {
    const int n = 33;
    const auto kg = build_bandlimited_kg(1.0, 1.0, n, Boundary::Periodic);
    std::mt19937_64 rng(6);
    RealField q0 = random_real_field(kg.lattice(), 0.8, 1.0, rng);
    RealField p0 = random_real_field(kg.lattice(), 0.8, 1.0, rng);
    FlowOptions opts;
    opts.sample_count = 51;
    opts.snapshot_stride = 50;  // keep first and last samples
    const Trajectory traj = classical_flow(kg, q0, p0, 10.0, opts);
    REQUIRE(traj.points.size() == 51);
    CHECK(traj.max_momentum_drift() < 1e-9);
    CHECK(traj.max_energy_drift() < 1e-8);

    REQUIRE(traj.snapshots.size() == 2);
    const auto [qt, pt] = evolve_by_eigendecomposition(kg, q0, p0, 10.0);
    const auto& [qf, pf] = traj.snapshots.back();
    for (int j = 0; j < n; ++j) {
        CHECK(std::abs(qf[j] - qt[j]) < 1e-8);
        CHECK(std::abs(pf[j] - pt[j]) < 1e-8);
    }
}

TEST_CASE("exact linear flow conserves P for chain and qp-coupled random Hamiltonians") {
    const int n = 33;
    std::mt19937_64 rng(16);
    const auto chain = build_harmonic_chain(1.2, 0.9, 1.0, n, Boundary::Periodic);
    RealField q0 = random_real_field(chain.lattice(), 0.8, 1.0, rng);
    RealField p0 = random_real_field(chain.lattice(), 0.8, 1.0, rng);
    CHECK(classical_flow(chain, q0, p0, 10.0).max_momentum_drift() < 1e-9);

    // a random draw is generically indefinite (hyperbolic growth would amplify
    // rounding), so shift the diagonal couplings until the form is positive
    // definite before asking for tight conservation along the flow
    const auto raw = random_quadratic_hamiltonian(1.0, n, Boundary::Periodic, 6, rng);
    const int w = raw.half_width();
    std::vector<double> cqq, cqp, cpp;
    double mass_sum = 0.0;
    for (int m = -w; m <= w; ++m) {
        cqq.push_back(raw.c_qq(m));
        cqp.push_back(raw.c_qp(m));
        cpp.push_back(raw.c_pp(m));
        mass_sum += std::abs(raw.c_qq(m)) + std::abs(raw.c_qp(m)) + std::abs(raw.c_pp(m));
    }
    cqq[static_cast<size_t>(w)] += mass_sum + 1.0;
    cpp[static_cast<size_t>(w)] += mass_sum + 1.0;
    const QuadraticLatticeHamiltonian rnd(raw.lattice(), w, cqq, cqp, cpp, "random_stable");
    REQUIRE(rnd.has_qp_terms());
    CHECK(classical_flow(rnd, q0, p0, 5.0).max_momentum_drift() < 1e-9);
}

TEST_CASE("leapfrog with lambda = 0 reduces to a P-conserving symplectic map") {
    const int n = 33;
    const auto kg = build_bandlimited_kg(1.0, 1.0, n, Boundary::Periodic);
    std::mt19937_64 rng(26);
    RealField q0 = random_real_field(kg.lattice(), 0.8, 0.5, rng);
    RealField p0 = random_real_field(kg.lattice(), 0.8, 0.5, rng);
    FlowOptions opts;
    opts.lambda_cubic = 1e-300;  // force the leapfrog path with a negligible cubic term
    opts.steps = 20000;
    const Trajectory traj = classical_flow(kg, q0, p0, 10.0, opts);
    MESSAGE("leapfrog quadratic P drift = ", traj.max_momentum_drift(),
            ", E drift = ", traj.max_energy_drift());
    CHECK(traj.max_momentum_drift() < 1e-10);
    CHECK(traj.max_energy_drift() < 1e-4);
}

TEST_CASE("cubic term drives momentum drift while leapfrog keeps energy tight") {
    const int n = 65;
    const auto kg = build_bandlimited_kg(1.0, 1.0, n, Boundary::Periodic);
    std::mt19937_64 rng(7);
    RealField q0 = random_real_field(kg.lattice(), 0.8, 0.25, rng);
    RealField p0 = random_real_field(kg.lattice(), 0.8, 0.25, rng);
    FlowOptions opts;
    opts.lambda_cubic = 0.1;
    opts.steps = 30000;
    const Trajectory traj = classical_flow(kg, q0, p0, 10.0, opts);
    MESSAGE("cubic P drift = ", traj.max_momentum_drift(),
            ", E drift = ", traj.max_energy_drift());
    CHECK(traj.max_momentum_drift() > 1e-4);
    CHECK(traj.max_energy_drift() < 1e-5);
}

TEST_CASE("flow guards") {
    const auto ht = build_bandlimited_kg(1.0, 1.0, 33, Boundary::Truncated);
    RealField z(ht.lattice(), std::vector<double>(33, 0.0));
    CHECK_THROWS_AS(classical_flow(ht, z, z, 1.0), std::invalid_argument);

    const auto kg = build_bandlimited_kg(1.0, 1.0, 33, Boundary::Periodic);
    std::mt19937_64 rng(3);
    RealField big(kg.lattice(), std::vector<double>(33, 50.0));
    RealField p0 = random_real_field(kg.lattice(), 0.5, 1.0, rng);
    FlowOptions wild;
    wild.lambda_cubic = 10.0;
    wild.steps = 100;
    CHECK_THROWS_AS(classical_flow(kg, big, p0, 10.0, wild), std::invalid_argument);

    const auto rnd = [&] {
        std::mt19937_64 r2(5);
        return random_quadratic_hamiltonian(1.0, 33, Boundary::Periodic, 4, r2);
    }();
    if (rnd.has_qp_terms()) {
        FlowOptions cubic;
        cubic.lambda_cubic = 0.01;
        RealField q0 = random_real_field(kg.lattice(), 0.5, 0.1, rng);
        CHECK_THROWS_AS(classical_flow(rnd, q0, p0, 1.0, cubic), std::invalid_argument);
    }
}

}  // TEST_SUITE
