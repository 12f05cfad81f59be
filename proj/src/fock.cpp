#include "bandlattice/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bandlattice {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

double fock_oracle_commutator(const QuadraticLatticeHamiltonian& h, const TotalMomentum& p,
                              int sites, int cutoff, const FockOracleOptions& options) {
    if (sites < 3 || sites > 4 || sites % 2 == 0)
        throw std::invalid_argument("fock_oracle_commutator: sites must be 3 (odd, <= 4)");
    if (cutoff < 2 || cutoff > 6)
        throw std::invalid_argument("fock_oracle_commutator: cutoff must lie in 2..6");
    if (options.pad < 0 || options.pad > cutoff)
        throw std::invalid_argument("fock_oracle_commutator: pad must lie in 0..cutoff");
    if (h.lattice().size() != sites || h.lattice().boundary() != Boundary::Periodic)
        throw std::invalid_argument(
            "fock_oracle_commutator: Hamiltonian must live on the periodic ring of `sites`");
    if (p.lattice().size() != sites || p.lattice().boundary() != Boundary::Periodic)
        throw std::invalid_argument(
            "fock_oracle_commutator: momentum must live on the periodic ring of `sites`");

    const int d = cutoff + 1;
    double dim_check = 1.0;
    for (int s = 0; s < sites; ++s) dim_check *= d;
    if (dim_check > 1e5)
        throw std::runtime_error("fock_oracle_commutator: basis dimension exceeds 1e5");
    const Eigen::Index dim = static_cast<Eigen::Index>(dim_check);

    // single-site ladder and quadratures, [q, p] = i
    Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 1; n < d; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Eigen::MatrixXcd raise = lower.adjoint();
    const Eigen::MatrixXcd q1 = (lower + raise) / std::sqrt(2.0);
    const Eigen::MatrixXcd p1 = complex{0.0, 1.0} * (raise - lower) / std::sqrt(2.0);
    const Eigen::MatrixXcd id1 = Eigen::MatrixXcd::Identity(d, d);

    auto site_operator = [&](const Eigen::MatrixXcd& op, int site) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
        for (int s = 0; s < sites; ++s) out = kron(out, s == site ? op : id1);
        return out;
    };
    std::vector<Eigen::MatrixXcd> q_ops, p_ops;
    for (int s = 0; s < sites; ++s) {
        q_ops.push_back(site_operator(q1, s));
        p_ops.push_back(site_operator(p1, s));
    }

    Eigen::MatrixXcd ham = Eigen::MatrixXcd::Zero(dim, dim);
    const int w = h.half_width();
    for (int j = 0; j < sites; ++j) {
        for (int m = -w; m <= w; ++m) {
            const int jm = ((j + m) % sites + sites) % sites;
            if (h.c_qq(m) != 0.0) ham += h.c_qq(m) * q_ops[j] * q_ops[jm];
            if (h.c_qp(m) != 0.0) ham += h.c_qp(m) * q_ops[j] * p_ops[jm];
            if (h.c_pp(m) != 0.0) ham += h.c_pp(m) * p_ops[j] * p_ops[jm];
        }
        if (options.lambda_cubic != 0.0)
            ham += options.lambda_cubic * q_ops[j] * q_ops[j] * q_ops[j];
    }

    Eigen::MatrixXcd mom = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < sites; ++i) {
        for (int j = 0; j < sites; ++j) {
            int m = i - j;
            if (m > sites / 2) m -= sites;
            if (m < -sites / 2) m += sites;
            const double dij = p.derivative().coefficient(m);
            if (dij != 0.0) mom -= dij * p_ops[i] * q_ops[j];
        }
    }

    const Eigen::MatrixXcd comm = ham * mom - mom * ham;

    // indices whose every site occupation is <= cutoff - pad
    std::vector<Eigen::Index> keep;
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        Eigen::Index rest = idx;
        bool ok = true;
        for (int s = 0; s < sites; ++s) {
            if (rest % d > cutoff - options.pad) ok = false;
            rest /= d;
        }
        if (ok) keep.push_back(idx);
    }
    const Eigen::Index nk = static_cast<Eigen::Index>(keep.size());
    Eigen::MatrixXcd comm_s(nk, nk), ham_s(nk, nk), mom_s(nk, nk);
    for (Eigen::Index a = 0; a < nk; ++a) {
        for (Eigen::Index b = 0; b < nk; ++b) {
            comm_s(a, b) = comm(keep[a], keep[b]);
            ham_s(a, b) = ham(keep[a], keep[b]);
            mom_s(a, b) = mom(keep[a], keep[b]);
        }
    }
    return comm_s.norm() / (ham_s.norm() * mom_s.norm());
}

}  // namespace bandlattice
