#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "bandlattice/detail/kahan.hpp"
#include "bandlattice/hamiltonians.hpp"
#include "bandlattice/symmetry.hpp"

using namespace bandlattice;

namespace {

// Independent oracle: nearest-neighbour energy evaluated literally. Zero
// extension makes the truncated chain a fixed-end chain, so both phantom
// boundary bonds are included there.
double chain_energy_direct(double particle_mass, double spring, const RealField& q,
                           const RealField& p) {
    detail::KahanSum<double> acc;
    const int n = q.size();
    for (int j = 0; j < n; ++j) acc.add(p[j] * p[j] / (2.0 * particle_mass));
    const int first_bond = q.lattice().boundary() == Boundary::Periodic ? 0 : -1;
    for (int j = first_bond; j < n; ++j) {
        const double dq = q.at_extended(j + 1) - q.at_extended(j);
        acc.add(spring / 2.0 * dq * dq);
    }
    return acc.value();
}

// Independent oracle: normal-mode frequencies from the eigenvalues of the
// linear dynamics matrix Omega_s 2A (pure-imaginary pairs +-i omega).
std::vector<double> omega2_from_dynamics(const QuadraticLatticeHamiltonian& h) {
    const PhaseSpaceForm form = to_phase_space_form(h);
    const SymplecticForm omega(form.sites());
    const Eigen::MatrixXd gen = omega.left_apply(2.0 * form.matrix());
    Eigen::EigenSolver<Eigen::MatrixXd> es(gen);
    std::vector<double> omega2;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        omega2.push_back(std::norm(es.eigenvalues()[i]));
    std::sort(omega2.begin(), omega2.end());
    // eigenvalues come in +-i omega pairs; keep one per pair
    std::vector<double> out;
    for (size_t i = 0; i < omega2.size(); i += 2) out.push_back(omega2[i]);
    return out;
}

}  // namespace

TEST_SUITE("hamiltonians") {

TEST_CASE("Klein-Gordon couplings: literal values on the truncated lattice") {
    const auto h = build_bandlimited_kg(0.0, 1.0, 64, Boundary::Truncated);
    CHECK(h.c_qq(0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-15));
    CHECK(h.c_qq(1) == -1.0);
    CHECK(h.c_qq(2) == 0.25);
    CHECK(h.c_pp(0) == 0.5);
    CHECK(h.c_qp(0) == 0.0);
    // |c_qq[n]| = 1/(dx n^2) exactly, alternating signs
    for (int n = 1; n < 30; ++n) {
        CHECK(std::abs(h.c_qq(n)) * n * n == 1.0);
        CHECK(std::signbit(h.c_qq(n)) == (n % 2 == 1));
        CHECK(h.c_qq(-n) == h.c_qq(n));
    }
    const auto hm = build_bandlimited_kg(2.0, 0.5, 32, Boundary::Truncated);
    CHECK(hm.c_qq(0) == doctest::Approx((M_PI * M_PI / 3.0 + 0.25 * 4.0) / 1.0).epsilon(1e-15));
    CHECK(hm.c_pp(0) == 1.0);
}

TEST_CASE("Klein-Gordon ring couplings: zero mode carries zero energy") {
    const auto h = build_bandlimited_kg(0.0, 1.0, 257, Boundary::Periodic);
    detail::KahanSum<double> ring_sum;
    for (int m = -h.half_width(); m <= h.half_width(); ++m) ring_sum.add(h.c_qq(m));
    CHECK(std::abs(ring_sum.value()) < 1e-9);
    // ring couplings stay within the wrap correction of the literal values
    CHECK(h.c_qq(1) == doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(h.c_qq(2) == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("builder guards") {
    CHECK_THROWS_AS(build_bandlimited_kg(-1.0, 1.0, 33, Boundary::Periodic),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_bandlimited_kg(1.0, 1.0, 32, Boundary::Periodic),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_harmonic_chain(0.0, 1.0, 1.0, 33, Boundary::Periodic),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_harmonic_chain(1.0, -2.0, 1.0, 33, Boundary::Periodic),
                    std::invalid_argument);
}

TEST_CASE("harmonic chain: expanded couplings reproduce the literal spring energy") {
    const double particle_mass = 1.3, spring = 0.8;
    for (Boundary mode : {Boundary::Periodic, Boundary::Truncated}) {
        const auto h = build_harmonic_chain(particle_mass, spring, 1.0, 33, mode);
        CHECK(h.c_qq(0) == spring);
        CHECK(h.c_qq(1) == -spring / 2.0);
        CHECK(h.c_qq(-1) == -spring / 2.0);
        CHECK(h.c_pp(0) == doctest::Approx(1.0 / (2.0 * particle_mass)));
        std::mt19937_64 rng(5);
        Lattice lat(1.0, 0.0, 33, mode);
        Lattice ring(1.0, 0.0, 33, Boundary::Periodic);
        RealField q(lat, random_real_field(ring, 0.8, 1.0, rng).values());
        RealField p(lat, random_real_field(ring, 0.8, 1.0, rng).values());
        CHECK(energy(h, q, p) ==
              doctest::Approx(chain_energy_direct(particle_mass, spring, q, p)).epsilon(1e-12));
    }
}

TEST_CASE("coefficient decay budget is the absolute coupling mass") {
    const auto chain = build_harmonic_chain(2.0, 0.6, 1.0, 17, Boundary::Periodic);
    CHECK(chain.coefficient_mass() == doctest::Approx(2.0 * 0.6 + 1.0 / 4.0).epsilon(1e-15));
    const auto kg = build_bandlimited_kg(0.0, 1.0, 4097, Boundary::Truncated);
    // sum |c_qq| = pi^2/6 + 2 sum 1/n^2 -> pi^2/2, plus c_pp[0] = 1/2
    CHECK(kg.coefficient_mass() ==
          doctest::Approx(M_PI * M_PI / 2.0 + 0.5).epsilon(1e-3));
}

TEST_CASE("harmonic chain energy: uniform field costs nothing, a single kick costs k_s") {
    const auto h = build_harmonic_chain(1.0, 0.7, 1.0, 17, Boundary::Periodic);
    Lattice lat = h.lattice();
    RealField zero(lat, std::vector<double>(17, 0.0));
    CHECK(energy(h, zero, zero) == 0.0);

    RealField uniform(lat, std::vector<double>(17, 3.2));
    CHECK(std::abs(energy(h, uniform, zero)) < 1e-13);

    std::vector<double> kick(17, 0.0);
    kick[4] = 1.0;
    CHECK(energy(h, RealField(lat, kick), zero) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("energy agrees with the phase-space contraction on random states") {
    std::mt19937_64 rng(23);
    const auto kg = build_bandlimited_kg(1.0, 1.0, 33, Boundary::Periodic);
    const auto chain = build_harmonic_chain(2.0, 1.1, 1.0, 33, Boundary::Periodic);
    const auto rnd = random_quadratic_hamiltonian(1.0, 33, Boundary::Periodic, 8, rng);
    for (const auto* h : {&kg, &chain, &rnd}) {
        const PhaseSpaceForm form = to_phase_space_form(*h);
        for (int rep = 0; rep < 100; ++rep) {
            RealField q = random_real_field(h->lattice(), 0.9, 1.0, rng);
            RealField p = random_real_field(h->lattice(), 0.9, 1.0, rng);
            CHECK(std::abs(energy(*h, q, p) - form.evaluate(q, p)) < 1e-10);
        }
    }
}

TEST_CASE("Klein-Gordon plane-wave energy has the closed form N dx k^2 / 4") {
    const int n = 33;
    const auto h = build_bandlimited_kg(0.0, 1.0, n, Boundary::Periodic);
    Lattice lat = h.lattice();
    const int mode = 5;
    const double k = lat.mode_wavenumber(mode);
    std::vector<double> qv(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) qv[static_cast<size_t>(j)] = std::cos(k * lat.point(j));
    RealField q(lat, qv);
    RealField p(lat, std::vector<double>(n, 0.0));
    const double expect = n * 1.0 * k * k / 4.0;
    CHECK(energy(h, q, p) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(to_phase_space_form(h).evaluate(q, p) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("phase-space form of the 3-site chain matches the hand-built blocks") {
    const auto h = build_harmonic_chain(1.0, 1.0, 1.0, 3, Boundary::Periodic);
    const Eigen::MatrixXd a = to_phase_space_form(h).matrix();
    Eigen::MatrixXd qq(3, 3);
    qq << 1.0, -0.5, -0.5, -0.5, 1.0, -0.5, -0.5, -0.5, 1.0;
    CHECK((a.topLeftCorner(3, 3) - qq).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((a.bottomRightCorner(3, 3) - 0.5 * Eigen::MatrixXd::Identity(3, 3))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK(a.topRightCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("phase-space form of the ring Klein-Gordon is the wrapped circulant") {
    const auto h = build_bandlimited_kg(0.5, 1.0, 17, Boundary::Periodic);
    const Eigen::MatrixXd a = to_phase_space_form(h).matrix();
    for (int j = 0; j < 17; ++j) {
        for (int m = -8; m <= 8; ++m) {
            const int jm = ((j + m) % 17 + 17) % 17;
            CHECK(a(j, jm) == doctest::Approx(h.c_qq(m)).epsilon(1e-14));
        }
    }
}

TEST_CASE("lift to the continuum: quadrature energy equals the discrete sum") {
    const auto h = build_harmonic_chain(1.4, 0.9, 1.0, 33, Boundary::Periodic);
    std::mt19937_64 rng(41);
    RealField zero(h.lattice(), std::vector<double>(33, 0.0));
    CHECK(lift_energy_continuum(h, zero, zero, 4 * 33) == 0.0);
    for (int rep = 0; rep < 3; ++rep) {
        RealField q = random_real_field(h.lattice(), 0.9, 1.0, rng);
        RealField p = random_real_field(h.lattice(), 0.9, 1.0, rng);
        const double discrete = energy(h, q, p);
        const double lifted = lift_energy_continuum(h, q, p, 4 * 33);
        CHECK(std::abs(lifted - discrete) < 1e-6 * std::abs(discrete));
        // quadrature refinement is already converged
        const double finer = lift_energy_continuum(h, q, p, 8 * 33);
        CHECK(std::abs(finer - lifted) < 1e-9);
    }
}

TEST_CASE("lift guards: quadrature floor, boundary mode, model") {
    const auto h = build_harmonic_chain(1.0, 1.0, 1.0, 17, Boundary::Periodic);
    RealField z(h.lattice(), std::vector<double>(17, 0.0));
    CHECK_THROWS_AS(lift_energy_continuum(h, z, z, 4 * 17 - 1), std::invalid_argument);
    const auto kg = build_bandlimited_kg(1.0, 1.0, 17, Boundary::Periodic);
    CHECK_THROWS_AS(lift_energy_continuum(kg, z, z, 68), std::invalid_argument);
    const auto ht = build_harmonic_chain(1.0, 1.0, 1.0, 17, Boundary::Truncated);
    RealField zt(ht.lattice(), std::vector<double>(17, 0.0));
    CHECK_THROWS_AS(lift_energy_continuum(ht, zt, zt, 68), std::invalid_argument);
}

TEST_CASE("Klein-Gordon dispersion is omega^2 = k^2 + m^2 on the ring") {
    for (double mass : {0.0, 2.0}) {
        const auto h = build_bandlimited_kg(mass, 1.0, 257, Boundary::Periodic);
        const DispersionCurve curve = dispersion(h);
        REQUIRE(curve.size() == 257);
        double worst = 0.0;
        for (const auto& pt : curve)
            worst = std::max(worst, std::abs(pt.omega2 - (pt.k * pt.k + mass * mass)));
        CHECK(worst < 1e-9);
    }
    const auto h2 = build_bandlimited_kg(2.0, 1.0, 33, Boundary::Periodic);
    const DispersionCurve c2 = dispersion(h2);
    CHECK(c2[16].mode == 0);  // modes are ordered -(N-1)/2 .. (N-1)/2
    CHECK(c2[16].omega2 == doctest::Approx(4.0).epsilon(1e-12));
    // curve invariants: momenta strictly inside the band, stable frequencies
    for (const auto& pt : c2) {
        CHECK(std::abs(pt.k) < h2.lattice().bandlimit());
        CHECK(pt.omega2 >= 0.0);
    }
}

TEST_CASE("harmonic chain dispersion is 4 (k_s/M) sin^2(k dx / 2)") {
    const auto h = build_harmonic_chain(1.0, 1.0, 1.0, 129, Boundary::Periodic);
    const DispersionCurve curve = dispersion(h);
    double worst = 0.0;
    for (const auto& pt : curve) {
        const double s = std::sin(pt.k * 0.5);
        worst = std::max(worst, std::abs(pt.omega2 - 4.0 * s * s));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("chain dispersion approaches the massless KG branch as dx -> 0 (O(dx^2))") {
    // fixed circumference 20 pi, so mode 10 sits at k = 1 exactly on every level;
    // spring 1/dx^2 gives omega^2 = 4 sin^2(k dx/2)/dx^2 -> k^2
    double prev_err = 1e9;
    for (int n : {63, 127, 255}) {
        const double dx = 20.0 * M_PI / n;
        const auto h = build_harmonic_chain(1.0, 1.0 / (dx * dx), dx, n, Boundary::Periodic);
        const DispersionCurve curve = dispersion(h);
        const auto& pt = curve[static_cast<size_t>((n - 1) / 2 + 10)];
        REQUIRE(pt.mode == 10);
        REQUIRE(pt.k == doctest::Approx(1.0).epsilon(1e-12));
        const double err = std::abs(pt.omega2 - pt.k * pt.k);
        CHECK(err > 0.0);
        CHECK(err < 0.3 * prev_err);  // ~ factor 4 per (near-)halving of dx
        prev_err = err;
    }
}

TEST_CASE("dispersion two ways: symbol route vs dynamics eigenvalues") {
    const auto h = build_bandlimited_kg(1.0, 1.0, 65, Boundary::Periodic);
    DispersionCurve curve = dispersion(h);
    std::vector<double> symbol_route;
    for (const auto& pt : curve) symbol_route.push_back(pt.omega2);
    std::sort(symbol_route.begin(), symbol_route.end());
    const std::vector<double> eig_route = omega2_from_dynamics(h);
    REQUIRE(symbol_route.size() == eig_route.size());
    for (size_t i = 0; i < symbol_route.size(); ++i)
        CHECK(std::abs(symbol_route[i] - eig_route[i]) < 1e-8);
}

TEST_CASE("dispersion guards") {
    const auto ht = build_bandlimited_kg(1.0, 1.0, 33, Boundary::Truncated);
    CHECK_THROWS_AS(dispersion(ht), std::invalid_argument);
    std::mt19937_64 rng(3);
    auto hr = random_quadratic_hamiltonian(1.0, 33, Boundary::Periodic, 4, rng);
    if (hr.has_qp_terms()) CHECK_THROWS_AS(dispersion(hr), std::invalid_argument);
    // indefinite qq block
    std::vector<double> cqq = {0.0, -1.0, 0.0}, cqp = {0.0, 0.0, 0.0}, cpp = {0.0, 0.5, 0.0};
    QuadraticLatticeHamiltonian bad(Lattice(1.0, 0.0, 33, Boundary::Periodic), 1, cqq, cqp,
                                    cpp);
    CHECK_THROWS_AS(dispersion(bad), std::invalid_argument);
}

}  // TEST_SUITE
