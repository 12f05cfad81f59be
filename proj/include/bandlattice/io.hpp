#ifndef BANDLATTICE_IO_HPP
#define BANDLATTICE_IO_HPP

#include <json.hpp>

#include <string>

#include "bandlattice/flow.hpp"
#include "bandlattice/hamiltonians.hpp"
#include "bandlattice/operators.hpp"
#include "bandlattice/sampling.hpp"

// File formats. Numbers are written with %.17g so that reading a file back
// reproduces the doubles bit for bit, and identical inputs yield
// byte-identical files.
//
//   field CSV        j,x,value_re,value_im   + JSON sidecar {dx, b, n, boundary}
//   kernel CSV       m,coefficient           (Toeplitz)
//                    n,k,symbol_re,symbol_im (Periodic)
//   dispersion CSV   n,k,omega2_measured,omega2_expected,abs_err
//   trajectory CSV   t,energy,momentum

namespace bandlattice {

std::string boundary_name(Boundary b);
Boundary boundary_from_name(const std::string& name);

std::string format_double(double v);

void write_field_csv(const ComplexField& field, const std::string& csv_path,
                     const std::string& sidecar_path);
void write_field_csv(const RealField& field, const std::string& csv_path,
                     const std::string& sidecar_path);
ComplexField read_field_csv(const std::string& csv_path, const std::string& sidecar_path);

void write_kernel_csv(const BanddedKernel& kernel, const std::string& path);

void write_dispersion_csv(const DispersionCurve& measured, const std::vector<double>& expected,
                          const std::string& path);

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);

// Hamiltonian spec file {type, params, dx, n, boundary}; `type` selects the
// builder ("klein_gordon" or "harmonic_chain").
nlohmann::json hamiltonian_to_json(const QuadraticLatticeHamiltonian& h);
QuadraticLatticeHamiltonian hamiltonian_from_json(const nlohmann::json& j);

}  // namespace bandlattice

#endif
