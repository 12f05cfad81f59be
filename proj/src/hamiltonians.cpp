#include "bandlattice/hamiltonians.hpp"

#include <cmath>
#include <stdexcept>

#include "bandlattice/detail/kahan.hpp"
#include "bandlattice/operators.hpp"

namespace bandlattice {

QuadraticLatticeHamiltonian::QuadraticLatticeHamiltonian(
    Lattice lattice, int half_width, std::vector<double> c_qq, std::vector<double> c_qp,
    std::vector<double> c_pp, std::string label, std::map<std::string, double> params)
    : lattice_(std::move(lattice)),
      half_width_(half_width),
      c_qq_(std::move(c_qq)),
      c_qp_(std::move(c_qp)),
      c_pp_(std::move(c_pp)),
      label_(std::move(label)),
      params_(std::move(params)) {
    const size_t expect = static_cast<size_t>(2 * half_width_ + 1);
    if (half_width_ < 0 || c_qq_.size() != expect || c_qp_.size() != expect ||
        c_pp_.size() != expect)
        throw std::invalid_argument(
            "QuadraticLatticeHamiltonian: coefficient arrays must span -W..W");
    if (lattice_.boundary() == Boundary::Periodic && half_width_ > lattice_.max_mode())
        throw std::invalid_argument(
            "QuadraticLatticeHamiltonian: half-width exceeds the ring");
}

bool QuadraticLatticeHamiltonian::has_qp_terms() const {
    for (double c : c_qp_)
        if (c != 0.0) return true;
    return false;
}

double QuadraticLatticeHamiltonian::coefficient_mass() const {
    detail::KahanSum<double> acc;
    for (double c : c_qq_) acc.add(std::abs(c));
    for (double c : c_qp_) acc.add(std::abs(c));
    for (double c : c_pp_) acc.add(std::abs(c));
    return acc.value();
}

double QuadraticLatticeHamiltonian::param(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end())
        throw std::invalid_argument("QuadraticLatticeHamiltonian: missing parameter " + name);
    return it->second;
}

QuadraticLatticeHamiltonian build_bandlimited_kg(double mass, double dx, int size,
                                                 Boundary boundary) {
    if (mass < 0.0) throw std::invalid_argument("build_bandlimited_kg: negative mass");
    Lattice lat(dx, 0.0, size, boundary);

    int w = 0;
    std::vector<double> c_qq;
    if (boundary == Boundary::Periodic) {
        if (size % 2 == 0)
            throw std::invalid_argument("build_bandlimited_kg: periodic mode requires odd N");
        // ring-wrapped couplings: c_qq[m] = -(dx/2) [D2_ring]_m  (+ mass term)
        w = lat.max_mode();
        const BanddedKernel d2 = second_derivative_kernel(dx, BanddedKernel::Form::Periodic,
                                                          size);
        c_qq.resize(static_cast<size_t>(2 * w + 1));
        for (int m = -w; m <= w; ++m)
            c_qq[static_cast<size_t>(m + w)] = -(dx / 2.0) * d2.coefficient(m);
    } else {
        // literal infinite-lattice couplings truncated at the lattice extent
        w = size - 1;
        c_qq.assign(static_cast<size_t>(2 * w + 1), 0.0);
        c_qq[static_cast<size_t>(w)] = (M_PI * M_PI / 3.0) / (2.0 * dx);
        for (int m = 1; m <= w; ++m) {
            const double c = (m % 2 == 0 ? 1.0 : -1.0) / (dx * m * m);
            c_qq[static_cast<size_t>(w + m)] = c;
            c_qq[static_cast<size_t>(w - m)] = c;
        }
    }
    c_qq[static_cast<size_t>(w)] += dx * mass * mass / 2.0;

    std::vector<double> c_qp(static_cast<size_t>(2 * w + 1), 0.0);
    std::vector<double> c_pp(static_cast<size_t>(2 * w + 1), 0.0);
    c_pp[static_cast<size_t>(w)] = 1.0 / (2.0 * dx);

    return {std::move(lat), w,       std::move(c_qq),          std::move(c_qp),
            std::move(c_pp), "klein_gordon", {{"mass", mass}}};
}

QuadraticLatticeHamiltonian build_harmonic_chain(double particle_mass, double spring,
                                                 double dx, int size, Boundary boundary) {
    if (!(particle_mass > 0.0))
        throw std::invalid_argument("build_harmonic_chain: particle mass must be > 0");
    if (!(spring > 0.0))
        throw std::invalid_argument("build_harmonic_chain: spring constant must be > 0");
    Lattice lat(dx, 0.0, size, boundary);
    if (boundary == Boundary::Periodic && size % 2 == 0)
        throw std::invalid_argument("build_harmonic_chain: periodic mode requires odd N");

    std::vector<double> c_qq = {-spring / 2.0, spring, -spring / 2.0};
    std::vector<double> c_qp = {0.0, 0.0, 0.0};
    std::vector<double> c_pp = {0.0, 1.0 / (2.0 * particle_mass), 0.0};
    return {std::move(lat), 1,
            std::move(c_qq), std::move(c_qp),
            std::move(c_pp), "harmonic_chain",
            {{"mass", particle_mass}, {"spring", spring}}};
}

QuadraticLatticeHamiltonian random_quadratic_hamiltonian(double dx, int size,
                                                         Boundary boundary, int half_width,
                                                         std::mt19937_64& rng) {
    Lattice lat(dx, 0.0, size, boundary);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int w = half_width;
    std::vector<double> c_qq(static_cast<size_t>(2 * w + 1));
    std::vector<double> c_qp(static_cast<size_t>(2 * w + 1));
    std::vector<double> c_pp(static_cast<size_t>(2 * w + 1));
    auto tail = [](int m) {
        const double d = std::max(1, std::abs(m));
        return 1.0 / (d * d * d);
    };
    for (int m = -w; m <= w; ++m) {
        c_qq[static_cast<size_t>(m + w)] = u(rng) * tail(m);
        c_qp[static_cast<size_t>(m + w)] = u(rng) * tail(m);
        c_pp[static_cast<size_t>(m + w)] = u(rng) * tail(m);
    }
    // symmetrize the qq and pp families (only the symmetric part enters H)
    for (int m = 1; m <= w; ++m) {
        const double sq = 0.5 * (c_qq[static_cast<size_t>(w + m)] + c_qq[static_cast<size_t>(w - m)]);
        c_qq[static_cast<size_t>(w + m)] = c_qq[static_cast<size_t>(w - m)] = sq;
        const double sp = 0.5 * (c_pp[static_cast<size_t>(w + m)] + c_pp[static_cast<size_t>(w - m)]);
        c_pp[static_cast<size_t>(w + m)] = c_pp[static_cast<size_t>(w - m)] = sp;
    }
    return {std::move(lat), w, std::move(c_qq), std::move(c_qp), std::move(c_pp), "random", {}};
}

double energy(const QuadraticLatticeHamiltonian& h, const RealField& q, const RealField& p) {
    if (!q.lattice().same_geometry(h.lattice()) || !p.lattice().same_geometry(h.lattice()))
        throw std::invalid_argument("energy: field/Hamiltonian lattice mismatch");
    const int n = h.lattice().size();
    const int w = h.half_width();
    detail::KahanSum<double> acc;
    for (int j = 0; j < n; ++j) {
        for (int m = -w; m <= w; ++m) {
            const std::int64_t jm = static_cast<std::int64_t>(j) + m;
            const double cqq = h.c_qq(m);
            const double cqp = h.c_qp(m);
            const double cpp = h.c_pp(m);
            if (cqq != 0.0) acc.add(cqq * q[j] * q.at_extended(jm));
            if (cqp != 0.0) acc.add(cqp * q[j] * p.at_extended(jm));
            if (cpp != 0.0) acc.add(cpp * p[j] * p.at_extended(jm));
        }
    }
    return acc.value();
}

double lift_energy_continuum(const QuadraticLatticeHamiltonian& h, const RealField& q,
                             const RealField& p, std::int64_t quadrature_points) {
    if (h.label() != "harmonic_chain")
        throw std::invalid_argument("lift_energy_continuum: harmonic-chain instance required");
    if (h.lattice().boundary() != Boundary::Periodic)
        throw std::invalid_argument("lift_energy_continuum: periodic mode required");
    if (!q.lattice().same_geometry(h.lattice()) || !p.lattice().same_geometry(h.lattice()))
        throw std::invalid_argument("lift_energy_continuum: lattice mismatch");
    const std::int64_t n = h.lattice().size();
    if (quadrature_points < 4 * n)
        throw std::invalid_argument(
            "lift_energy_continuum: quadrature_points below 4N is not Nyquist-honest");

    const double particle_mass = h.param("mass");
    const double spring = h.param("spring");
    const double dx = h.lattice().spacing();
    const double length = h.lattice().circumference();
    const double step = length / static_cast<double>(quadrature_points);

    detail::KahanSum<double> acc;
    for (std::int64_t i = 0; i < quadrature_points; ++i) {
        const double x = static_cast<double>(i) * step;
        const double pi_x = reconstruct(p, x) / dx;  // p_j = dx * pi(x_j)
        const double phi_x = reconstruct(q, x);
        const double phi_xdx = reconstruct(q, x + dx);
        const double diff = phi_xdx - phi_x;
        acc.add(0.5 * (dx * pi_x * pi_x / particle_mass + spring / dx * diff * diff));
    }
    return acc.value() * step;
}

PhaseSpaceForm::PhaseSpaceForm(Eigen::MatrixXd kernel, double dx) : a_(std::move(kernel)), dx_(dx) {
    if (a_.rows() != a_.cols() || a_.rows() % 2 != 0)
        throw std::invalid_argument("PhaseSpaceForm: kernel must be square with even dimension");
    a_ = ((a_ + a_.transpose()) / 2.0).eval();
}

double PhaseSpaceForm::evaluate(const RealField& q, const RealField& p) const {
    const int n = sites();
    if (q.size() != n || p.size() != n)
        throw std::invalid_argument("PhaseSpaceForm::evaluate: field size mismatch");
    Eigen::VectorXd z(2 * n);
    for (int j = 0; j < n; ++j) {
        z[j] = q[j];
        z[n + j] = p[j];
    }
    return z.dot(a_ * z);
}

PhaseSpaceForm to_phase_space_form(const QuadraticLatticeHamiltonian& h) {
    const int n = h.lattice().size();
    const int w = h.half_width();
    const bool cyclic = h.lattice().boundary() == Boundary::Periodic;
    Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        for (int m = -w; m <= w; ++m) {
            int jm = j + m;
            if (cyclic)
                jm = ((jm % n) + n) % n;
            else if (jm < 0 || jm >= n)
                continue;
            raw(j, jm) += h.c_qq(m);
            raw(j, n + jm) += h.c_qp(m);
            raw(n + j, n + jm) += h.c_pp(m);
        }
    }
    return {std::move(raw), h.lattice().spacing()};
}

DispersionCurve dispersion(const QuadraticLatticeHamiltonian& h) {
    if (h.lattice().boundary() != Boundary::Periodic)
        throw std::invalid_argument("dispersion: periodic mode required");
    if (h.lattice().size() % 2 == 0)
        throw std::invalid_argument("dispersion: odd N required");
    if (h.has_qp_terms())
        throw std::invalid_argument("dispersion: qp cross terms are not diagonalized here");

    const int n = h.lattice().size();
    const int w = h.half_width();
    const int mmax = h.lattice().max_mode();
    const double dx = h.lattice().spacing();

    DispersionCurve curve;
    curve.reserve(static_cast<size_t>(n));
    double qq_scale = 0.0, pp_scale = 0.0;
    for (int m = -w; m <= w; ++m) {
        qq_scale = std::max(qq_scale, std::abs(h.c_qq(m)));
        pp_scale = std::max(pp_scale, std::abs(h.c_pp(m)));
    }
    const double tol_qq = 1e-12 * std::max(1.0, qq_scale) * (2 * w + 1);
    const double tol_pp = 1e-12 * std::max(1.0, pp_scale) * (2 * w + 1);

    for (int mode = -mmax; mode <= mmax; ++mode) {
        const double k = h.lattice().mode_wavenumber(mode);
        detail::KahanSum<double> sqq, spp;
        sqq.add(h.c_qq(0));
        spp.add(h.c_pp(0));
        for (int m = 1; m <= w; ++m) {
            const double c = std::cos(k * m * dx);
            sqq.add((h.c_qq(m) + h.c_qq(-m)) * c);
            spp.add((h.c_pp(m) + h.c_pp(-m)) * c);
        }
        const double sigma_qq = sqq.value();
        const double sigma_pp = spp.value();
        if (sigma_pp <= 0.0 || sigma_qq < -tol_qq || sigma_pp < -tol_pp)
            throw std::invalid_argument("dispersion: indefinite quadratic form");
        curve.push_back({mode, k, 4.0 * sigma_pp * sigma_qq});
    }
    return curve;
}

}  // namespace bandlattice
