#ifndef BANDLATTICE_FOCK_HPP
#define BANDLATTICE_FOCK_HPP

#include "bandlattice/hamiltonians.hpp"
#include "bandlattice/symmetry.hpp"

// Brute-force operator-level check of momentum conservation in a truncated
// per-site excitation basis. Independent of the phase-space route: q and p
// are built from ladder matrices, H and P are assembled as explicit operator
// matrices, and the commutator is measured directly.

namespace bandlattice {

struct FockOracleOptions {
    // lambda * sum_j q_j^3 added to the Hamiltonian operator
    double lambda_cubic = 0.0;
    // the commutator is measured on states whose every site occupation is at
    // least `pad` below the cutoff, which suppresses truncation edge
    // artifacts (pad 2 keeps quadratic commutators exact)
    int pad = 2;
};

// Normalized residual ||Pi [H, P] Pi||_F / (||Pi H Pi||_F ||Pi P Pi||_F) with
// Pi the padded-sub-block projector. Requires a periodic odd-site ring with
// sites <= 4, cutoff <= 6, and (cutoff+1)^sites <= 1e5.
double fock_oracle_commutator(const QuadraticLatticeHamiltonian& h, const TotalMomentum& p,
                              int sites, int cutoff, const FockOracleOptions& options = {});

}  // namespace bandlattice

#endif
