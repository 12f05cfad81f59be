#ifndef BANDLATTICE_SYMMETRY_HPP
#define BANDLATTICE_SYMMETRY_HPP

#include <Eigen/Dense>

#include "bandlattice/hamiltonians.hpp"
#include "bandlattice/operators.hpp"
#include "bandlattice/sampling.hpp"

// The bandlimited total momentum P = -p^T D q, the phase-space commutator
// algebra that expresses its conservation under translation-invariant
// quadratic Hamiltonians, continuous translations of lattice fields, and the
// cubic non-conservation witness.

namespace bandlattice {

// Antisymmetric form encoding [q_j, p_k] = i delta_jk over z = (q, p):
// Omega_s = [[0, I], [-I, 0]]. Named with a subscript to keep it apart from
// the bandlimit Omega.
class SymplecticForm {
public:
    explicit SymplecticForm(int sites);
    int sites() const { return n_; }
    Eigen::MatrixXd matrix() const;

    // Omega_s * m and m * Omega_s without forming Omega_s (block swaps).
    Eigen::MatrixXd left_apply(const Eigen::MatrixXd& m) const;
    Eigen::MatrixXd right_apply(const Eigen::MatrixXd& m) const;

private:
    int n_;
};

// P = -p^T D q as a phase-space form (qq and pp blocks vanish; the symmetric
// storage splits the cross term as qp-block D/2, pq-block -D/2). value() is
// the classical evaluation -sum_ij D_ij p_i q_j.
class TotalMomentum {
public:
    TotalMomentum(Lattice lattice, BanddedKernel derivative, PhaseSpaceForm form);

    const Lattice& lattice() const { return lattice_; }
    const PhaseSpaceForm& form() const { return form_; }
    const BanddedKernel& derivative() const { return derivative_; }

    double value(const RealField& q, const RealField& p) const;

private:
    Lattice lattice_;
    BanddedKernel derivative_;
    PhaseSpaceForm form_;
};

// Odd N required in Periodic mode. Truncated mode uses the literal Toeplitz
// derivative (half-width N-1); its edge behaviour is documented, and the
// tight conservation tolerances apply to the periodic form only.
TotalMomentum build_total_momentum(double dx, int size, Boundary boundary);

// Quadratic part of i[A, B] between phase-space forms:
//   kernel = sym(A Omega_s B - B Omega_s A).
// The scalar (identity) part of the commutator vanishes identically for
// symmetric kernels; what is returned is the Omega_s-contraction of the
// numerical antisymmetry residue, reported so ordering noise is visible.
struct QuadraticCommutator {
    PhaseSpaceForm kernel;
    double scalar_part;
};
QuadraticCommutator quadratic_commutator(const PhaseSpaceForm& a, const PhaseSpaceForm& b);

// Continuous translation of a lattice field: values'_k = sum_j values_j
// K((x_k - x_j - a)/dx), i.e. the sampled version of f(x - a). a = dx reduces
// to the exact one-site cyclic shift on a ring.
template <typename T>
SampledField<T> translate_field(const SampledField<T>& field, double a);

// Classical Poisson-bracket witness {sum_j q_j^3, P} = -3 sum_j q_j^2 (Dq)_j.
// Nonzero for generic configurations; vanishes for constants and for fields
// even about a lattice point.
double cubic_witness(const RealField& q);

}  // namespace bandlattice

#endif
