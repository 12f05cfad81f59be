#ifndef BANDLATTICE_HAMILTONIANS_HPP
#define BANDLATTICE_HAMILTONIANS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bandlattice/sampling.hpp"

// Translation-invariant quadratic lattice Hamiltonians
//
//     H = sum_j sum_m ( c_qq[m] q_j q_{j+m} + c_qp[m] q_j p_{j+m}
//                       + c_pp[m] p_j p_{j+m} ),
//
// their phase-space (2N x 2N symmetric kernel) representation, and normal-mode
// dispersion. Boundary handling follows the field convention: indices wrap on
// periodic lattices and read as zero beyond the ends on truncated ones.

namespace bandlattice {

class QuadraticLatticeHamiltonian {
public:
    QuadraticLatticeHamiltonian(Lattice lattice, int half_width,
                                std::vector<double> c_qq, std::vector<double> c_qp,
                                std::vector<double> c_pp, std::string label = {},
                                std::map<std::string, double> params = {});

    const Lattice& lattice() const { return lattice_; }
    int half_width() const { return half_width_; }

    double c_qq(int m) const { return coeff(c_qq_, m); }
    double c_qp(int m) const { return coeff(c_qp_, m); }
    double c_pp(int m) const { return coeff(c_pp_, m); }

    bool has_qp_terms() const;
    // sum_m |c[m]| over all three families; the recorded decay budget.
    double coefficient_mass() const;

    const std::string& label() const { return label_; }
    const std::map<std::string, double>& params() const { return params_; }
    double param(const std::string& name) const;

private:
    double coeff(const std::vector<double>& c, int m) const {
        if (std::abs(m) > half_width_) return 0.0;
        return c[static_cast<size_t>(m + half_width_)];
    }

    Lattice lattice_;
    int half_width_;
    std::vector<double> c_qq_, c_qp_, c_pp_;  // index m + half_width
    std::string label_;
    std::map<std::string, double> params_;
};

// Discrete bandlimited Klein-Gordon Hamiltonian,
//   H = 1/(2 dx) sum_j [ p_j^2 + (pi^2/3 + dx^2 m^2) q_j^2
//                        + sum_{n!=0} 2 (-1)^n / n^2 q_j q_{j+n} ],
// with the 1/(2 dx) prefactor folded into the coefficients. On a periodic
// ring the stored couplings are the ring-wrapped (spectrally exact) ones, so
// the zero mode and dispersion identities hold to rounding; a truncated
// lattice stores the literal infinite-lattice values.
QuadraticLatticeHamiltonian build_bandlimited_kg(double mass, double dx, int size,
                                                 Boundary boundary);

// Nearest-neighbour chain H = sum_j [ p_j^2/(2M) + k_s/2 (q_{j+1}-q_j)^2 ]
// in expanded form: c_pp[0] = 1/(2M), c_qq[0] = k_s, c_qq[+-1] = -k_s/2.
QuadraticLatticeHamiltonian build_harmonic_chain(double particle_mass, double spring,
                                                 double dx, int size, Boundary boundary);

// Random translation-invariant quadratic Hamiltonian with |c[m]| <= 1/max(1,|m|)^3,
// qp terms included; qq/pp families symmetrized.
QuadraticLatticeHamiltonian random_quadratic_hamiltonian(double dx, int size,
                                                         Boundary boundary, int half_width,
                                                         std::mt19937_64& rng);

double energy(const QuadraticLatticeHamiltonian& h, const RealField& q, const RealField& p);

// Continuum energy of the lifted harmonic chain,
//   (1/2) oint [ dx pi(x)^2 / M + (k_s/dx) (phi(x+dx) - phi(x))^2 ] dx,
// with phi, pi the Shannon reconstructions of q and p/dx, evaluated by
// uniform quadrature over the periodic domain. quadrature_points must be
// >= 4N (which makes the rule exact for ring content).
double lift_energy_continuum(const QuadraticLatticeHamiltonian& h, const RealField& q,
                             const RealField& p, std::int64_t quadrature_points);

// Symmetric bilinear kernel over stacked coordinates z = (q_0..q_{N-1},
// p_0..p_{N-1}); evaluate() returns z^T A z, the same number energy() gives.
class PhaseSpaceForm {
public:
    PhaseSpaceForm(Eigen::MatrixXd kernel, double dx);

    int sites() const { return static_cast<int>(a_.rows()) / 2; }
    double spacing() const { return dx_; }
    const Eigen::MatrixXd& matrix() const { return a_; }

    double evaluate(const RealField& q, const RealField& p) const;
    double max_abs() const { return a_.cwiseAbs().maxCoeff(); }

private:
    Eigen::MatrixXd a_;
    double dx_;
};

PhaseSpaceForm to_phase_space_form(const QuadraticLatticeHamiltonian& h);

struct DispersionPoint {
    int mode;       // signed ring mode index
    double k;       // lattice momentum 2 pi mode / (N dx)
    double omega2;  // squared normal-mode frequency
};
using DispersionCurve = std::vector<DispersionPoint>;

// omega^2(k_n) = 4 sigma_pp(k_n) sigma_qq(k_n), where sigma is the coefficient
// symbol sum_m c[m] e^{i k m dx}. The factor 4 is pinned by the Klein-Gordon
// instance reproducing omega^2 = k^2 + m^2. Periodic mode, no qp terms,
// nonnegative symbols required.
DispersionCurve dispersion(const QuadraticLatticeHamiltonian& h);

}  // namespace bandlattice

#endif
