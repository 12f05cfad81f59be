#ifndef BANDLATTICE_FLOW_HPP
#define BANDLATTICE_FLOW_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "bandlattice/hamiltonians.hpp"
#include "bandlattice/symmetry.hpp"

// Classical time evolution on the periodic ring, used as the dynamical
// witness of momentum conservation. Quadratic Hamiltonians evolve by the
// exact linear flow exp(t Omega_s 2A); with a cubic term lambda sum q^3 the
// integrator is fixed-step symplectic leapfrog (which conserves P exactly for
// the quadratic part, so any P drift is attributable to the cubic term).

namespace bandlattice {

struct FlowOptions {
    double lambda_cubic = 0.0;
    std::int64_t steps = 100000;  // leapfrog steps over [0, t_final]
    int sample_count = 100;       // recorded (t, E, P) points
    int snapshot_stride = 0;      // keep full (q, p) every k-th sample; 0 = off
};

struct TrajectoryPoint {
    double t;
    double energy;
    double momentum;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    std::vector<std::pair<RealField, RealField>> snapshots;

    double max_momentum_drift() const;
    double max_energy_drift() const;
};

Trajectory classical_flow(const QuadraticLatticeHamiltonian& h, const RealField& q0,
                          const RealField& p0, double t_final, const FlowOptions& options = {});

}  // namespace bandlattice

#endif
