#include "bandlattice/flow.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

#include "bandlattice/detail/kahan.hpp"

namespace bandlattice {

namespace {

double cubic_term(const RealField& q, double lambda) {
    if (lambda == 0.0) return 0.0;
    detail::KahanSum<double> acc;
    for (int j = 0; j < q.size(); ++j) acc.add(q[j] * q[j] * q[j]);
    return lambda * acc.value();
}

// gradient of sum_j sum_m c[m] f_j f_{j+m} with respect to f_k:
//   out_k = 2 c[0] f_k + sum_{m>=1} (c[m] + c[-m]) (f_{k+m} + f_{k-m})
void quadratic_gradient(const QuadraticLatticeHamiltonian& h, bool qq_family,
                        const std::vector<double>& f, std::vector<double>& out) {
    const int n = static_cast<int>(f.size());
    const int w = h.half_width();
    for (int k = 0; k < n; ++k) {
        detail::KahanSum<double> acc;
        const double c0 = qq_family ? h.c_qq(0) : h.c_pp(0);
        acc.add(2.0 * c0 * f[static_cast<size_t>(k)]);
        for (int m = 1; m <= w; ++m) {
            const double c = qq_family ? h.c_qq(m) + h.c_qq(-m) : h.c_pp(m) + h.c_pp(-m);
            if (c == 0.0) continue;
            const int kp = (k + m) % n;
            const int kn = ((k - m) % n + n) % n;
            acc.add(c * (f[static_cast<size_t>(kp)] + f[static_cast<size_t>(kn)]));
        }
        out[static_cast<size_t>(k)] = acc.value();
    }
}

}  // namespace

double Trajectory::max_momentum_drift() const {
    if (points.empty()) return 0.0;
    double drift = 0.0;
    for (const auto& pt : points) drift = std::max(drift, std::abs(pt.momentum - points.front().momentum));
    return drift;
}

double Trajectory::max_energy_drift() const {
    if (points.empty()) return 0.0;
    double drift = 0.0;
    for (const auto& pt : points) drift = std::max(drift, std::abs(pt.energy - points.front().energy));
    return drift;
}

Trajectory classical_flow(const QuadraticLatticeHamiltonian& h, const RealField& q0,
                          const RealField& p0, double t_final, const FlowOptions& options) {
    const Lattice& lat = h.lattice();
    if (lat.boundary() != Boundary::Periodic)
        throw std::invalid_argument("classical_flow: periodic mode required");
    if (!q0.lattice().same_geometry(lat) || !p0.lattice().same_geometry(lat))
        throw std::invalid_argument("classical_flow: field/Hamiltonian lattice mismatch");
    if (options.steps <= 0) throw std::invalid_argument("classical_flow: steps must be positive");
    if (options.sample_count < 2)
        throw std::invalid_argument("classical_flow: need at least two sample points");

    const int n = lat.size();
    const TotalMomentum mom = build_total_momentum(lat.spacing(), n, Boundary::Periodic);
    const double lambda = options.lambda_cubic;

    Trajectory traj;
    auto record = [&](double t, const RealField& q, const RealField& p, int sample_index) {
        traj.points.push_back({t, energy(h, q, p) + cubic_term(q, lambda), mom.value(q, p)});
        if (options.snapshot_stride > 0 && sample_index % options.snapshot_stride == 0)
            traj.snapshots.emplace_back(q, p);
    };

    if (lambda == 0.0) {
        // exact linear flow: z(t + dt) = exp(dt Omega_s 2A) z(t)
        const PhaseSpaceForm form = to_phase_space_form(h);
        const SymplecticForm omega(n);
        const int samples = options.sample_count;
        const double dt = t_final / (samples - 1);
        const Eigen::MatrixXd generator = omega.left_apply(2.0 * form.matrix());
        const Eigen::MatrixXd propagator = (dt * generator).exp();

        Eigen::VectorXd z(2 * n);
        for (int j = 0; j < n; ++j) {
            z[j] = q0[j];
            z[n + j] = p0[j];
        }
        for (int s = 0; s < samples; ++s) {
            std::vector<double> qv(static_cast<size_t>(n)), pv(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) {
                qv[static_cast<size_t>(j)] = z[j];
                pv[static_cast<size_t>(j)] = z[n + j];
            }
            record(s * dt, RealField{lat, std::move(qv)}, RealField{lat, std::move(pv)}, s);
            if (s + 1 < samples) z = propagator * z;
        }
        return traj;
    }

    if (h.has_qp_terms())
        throw std::invalid_argument(
            "classical_flow: leapfrog requires a separable Hamiltonian (no qp terms)");

    const std::int64_t steps = options.steps;
    const double dt = t_final / static_cast<double>(steps);
    double q_scale = 0.0;
    for (int j = 0; j < n; ++j) q_scale = std::max(q_scale, std::abs(q0[j]));
    if (std::abs(lambda) * q_scale * dt > 1e-2)
        throw std::invalid_argument(
            "classical_flow: step-size guard tripped (lambda * |q| * dt too large)");

    std::vector<double> q = q0.values();
    std::vector<double> p = p0.values();
    std::vector<double> grad(static_cast<size_t>(n));

    auto half_kick = [&]() {
        quadratic_gradient(h, true, q, grad);
        for (int j = 0; j < n; ++j) {
            const double qj = q[static_cast<size_t>(j)];
            p[static_cast<size_t>(j)] -=
                (dt / 2.0) * (grad[static_cast<size_t>(j)] + 3.0 * lambda * qj * qj);
        }
    };

    const std::int64_t record_every = std::max<std::int64_t>(1, steps / (options.sample_count - 1));
    int sample_index = 0;
    record(0.0, RealField{lat, q}, RealField{lat, p}, sample_index++);
    for (std::int64_t s = 0; s < steps; ++s) {
        half_kick();
        quadratic_gradient(h, false, p, grad);
        for (int j = 0; j < n; ++j) q[static_cast<size_t>(j)] += dt * grad[static_cast<size_t>(j)];
        half_kick();
        if ((s + 1) % record_every == 0 || s + 1 == steps) {
            for (int j = 0; j < n; ++j)
                if (!std::isfinite(q[static_cast<size_t>(j)]) || std::abs(q[static_cast<size_t>(j)]) > 1e8)
                    throw std::runtime_error("classical_flow: trajectory escaped (unbounded q)");
            record((s + 1) * dt, RealField{lat, q}, RealField{lat, p}, sample_index++);
        }
    }
    return traj;
}

}  // namespace bandlattice
