#include "bandlattice/symmetry.hpp"

#include <cmath>
#include <stdexcept>

#include "bandlattice/detail/kahan.hpp"

namespace bandlattice {

SymplecticForm::SymplecticForm(int sites) : n_(sites) {
    if (sites <= 0) throw std::invalid_argument("SymplecticForm: sites must be positive");
}

Eigen::MatrixXd SymplecticForm::matrix() const {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_, 2 * n_);
    omega.topRightCorner(n_, n_) = Eigen::MatrixXd::Identity(n_, n_);
    omega.bottomLeftCorner(n_, n_) = -Eigen::MatrixXd::Identity(n_, n_);
    return omega;
}

Eigen::MatrixXd SymplecticForm::left_apply(const Eigen::MatrixXd& m) const {
    Eigen::MatrixXd out(m.rows(), m.cols());
    out.topRows(n_) = m.bottomRows(n_);
    out.bottomRows(n_) = -m.topRows(n_);
    return out;
}

Eigen::MatrixXd SymplecticForm::right_apply(const Eigen::MatrixXd& m) const {
    Eigen::MatrixXd out(m.rows(), m.cols());
    out.leftCols(n_) = -m.rightCols(n_);
    out.rightCols(n_) = m.leftCols(n_);
    return out;
}

TotalMomentum::TotalMomentum(Lattice lattice, BanddedKernel derivative, PhaseSpaceForm form)
    : lattice_(std::move(lattice)), derivative_(std::move(derivative)), form_(std::move(form)) {}

double TotalMomentum::value(const RealField& q, const RealField& p) const {
    if (!q.lattice().same_geometry(lattice_) || !p.lattice().same_geometry(lattice_))
        throw std::invalid_argument("TotalMomentum::value: lattice mismatch");
    const RealField dq = derivative_.apply(q);
    detail::KahanSum<double> acc;
    for (int j = 0; j < q.size(); ++j) acc.add(p[j] * dq[j]);
    return -acc.value();
}

TotalMomentum build_total_momentum(double dx, int size, Boundary boundary) {
    Lattice lat(dx, 0.0, size, boundary);
    BanddedKernel d =
        boundary == Boundary::Periodic
            ? derivative_kernel(dx, BanddedKernel::Form::Periodic, size)
            : derivative_kernel(dx, BanddedKernel::Form::Toeplitz, size - 1);

    const int n = size;
    Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::int64_t m = i - j;
            if (boundary == Boundary::Periodic) {
                // wrap the offset into the symmetric ring range
                if (m > n / 2) m -= n;
                if (m < -n / 2) m += n;
            } else if (std::llabs(m) > d.half_width()) {
                continue;
            }
            const double dij = d.coefficient(m);
            if (dij != 0.0) raw(n + i, j) = -dij;  // P = -sum_ij D_ij p_i q_j
        }
    }
    PhaseSpaceForm form(std::move(raw), dx);
    return {std::move(lat), std::move(d), std::move(form)};
}

QuadraticCommutator quadratic_commutator(const PhaseSpaceForm& a, const PhaseSpaceForm& b) {
    if (a.sites() != b.sites())
        throw std::invalid_argument("quadratic_commutator: dimension mismatch");
    const SymplecticForm omega(a.sites());
    const Eigen::MatrixXd m =
        a.matrix() * omega.left_apply(b.matrix()) - b.matrix() * omega.left_apply(a.matrix());

    const int n = a.sites();
    // Omega_s-contraction of the antisymmetric residue; identically zero in
    // exact arithmetic (see header).
    detail::KahanSum<double> scalar;
    for (int j = 0; j < n; ++j) scalar.add(m(j, n + j) - m(n + j, j));
    PhaseSpaceForm kernel(m, a.spacing());  // constructor symmetrizes
    return {std::move(kernel), scalar.value()};
}

template <typename T>
SampledField<T> translate_field(const SampledField<T>& field, double a) {
    const Lattice& lat = field.lattice();
    const int n = lat.size();
    const double shift = a / lat.spacing();
    std::vector<T> out(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        detail::KahanSum<T> acc;
        for (int j = 0; j < n; ++j) {
            const double u = static_cast<double>(k - j) - shift;
            const double w =
                lat.boundary() == Boundary::Periodic ? periodic_sinc(u, n) : sinc_pi(u);
            acc.add(field[j] * w);
        }
        out[static_cast<size_t>(k)] = acc.value();
    }
    return {lat, std::move(out)};
}

template SampledField<double> translate_field(const SampledField<double>&, double);
template SampledField<complex> translate_field(const SampledField<complex>&, double);

double cubic_witness(const RealField& q) {
    const Lattice& lat = q.lattice();
    BanddedKernel d = lat.boundary() == Boundary::Periodic
                          ? derivative_kernel(lat.spacing(), BanddedKernel::Form::Periodic,
                                              lat.size())
                          : derivative_kernel(lat.spacing(), BanddedKernel::Form::Toeplitz,
                                              lat.size() - 1);
    const RealField dq = d.apply(q);
    detail::KahanSum<double> acc;
    for (int j = 0; j < q.size(); ++j) acc.add(q[j] * q[j] * dq[j]);
    return -3.0 * acc.value();
}

}  // namespace bandlattice
