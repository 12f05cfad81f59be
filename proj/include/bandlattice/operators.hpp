#ifndef BANDLATTICE_OPERATORS_HPP
#define BANDLATTICE_OPERATORS_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "bandlattice/sampling.hpp"

// Bandlimited derivative operators in two interchangeable backends:
//
//   Toeplitz  — literal infinite-lattice coefficients truncated at a chosen
//               half-width M. Coefficients t_m are indexed by m = j - k, and
//               application is the discrete convolution
//                   (K f)_j = sum_m t_m f_{j-m}.
//   Periodic  — circulant realization on an odd-N ring, defined by its exact
//               Fourier symbol sigma(k_n) on the lattice momenta; the stored
//               circulant row equals the infinite coefficient sequence wrapped
//               around the ring (the two constructions coincide for odd N,
//               which is why even N is rejected).
//
// First derivative:  t_0 = 0, t_m = (1/dx) (-1)^m / m;  symbol i k.
// Second derivative: t_0 = -pi^2/(3 dx^2), t_m = -(2/dx^2) (-1)^m / m^2;
//                    symbol -k^2.

namespace bandlattice {

class BanddedKernel {
public:
    enum class Form { Toeplitz, Periodic };
    enum class Parity { Antisymmetric, Symmetric };

    // Toeplitz kernel from coefficients t_{-M}..t_M (coeffs.size() == 2M+1).
    // The stated parity is enforced exactly by pairwise averaging.
    static BanddedKernel toeplitz(double dx, Parity parity, std::vector<double> coeffs);

    // Circulant kernel on an odd-N ring from its symbol on the lattice
    // momenta, symbol[i] = sigma(k_m) with m = i - (N-1)/2. The symbol must be
    // Hermitian (sigma(-k) = conj sigma(k)) so the circulant row is real.
    static BanddedKernel periodic_from_symbol(double dx, int n, Parity parity,
                                              std::vector<complex> symbol);

    Form form() const { return form_; }
    Parity parity() const { return parity_; }
    double spacing() const { return dx_; }

    // (K f)_j by convolution (Toeplitz; zero extension on truncated lattices,
    // cyclic wrap on periodic ones) or by the circulant row (Periodic kernels,
    // which require a periodic field of the same N). Terms are accumulated in
    // (+m, -m) pairs so that antisymmetric kernels annihilate constants
    // exactly.
    template <typename T>
    SampledField<T> apply(const SampledField<T>& field) const;

    // Same, plus a worst-case bound on what zero extension dropped at the
    // edges (sum of out-of-range |t_m| times max |f|); zero in cyclic
    // application.
    template <typename T>
    struct ApplyResult {
        SampledField<T> field;
        double boundary_residual;
    };
    template <typename T>
    ApplyResult<T> apply_with_residual(const SampledField<T>& field) const;

    // Toeplitz truncation radius M, or the ring half-width (N-1)/2.
    std::int64_t half_width() const { return half_width_; }
    int size() const;  // N; Periodic form only

    // t_m (Toeplitz) or the circulant row entry at offset m (Periodic).
    double coefficient(std::int64_t m) const;

    // Periodic form only: sigma(k_m) and k_m for mode |m| <= (N-1)/2.
    complex symbol(int mode) const;
    double wavenumber(int mode) const;

private:
    BanddedKernel() = default;

    Form form_ = Form::Toeplitz;
    Parity parity_ = Parity::Symmetric;
    double dx_ = 1.0;
    std::int64_t half_width_ = 0;
    int n_ = 0;
    std::vector<double> coeffs_;       // index m + half_width
    std::vector<complex> symbol_;      // Periodic: index mode + half_width
};

// M >= 1 (Toeplitz) or odd N >= 3 (Periodic).
BanddedKernel derivative_kernel(double dx, BanddedKernel::Form form, std::int64_t m_or_n);
BanddedKernel second_derivative_kernel(double dx, BanddedKernel::Form form,
                                       std::int64_t m_or_n);
BanddedKernel identity_kernel(double dx, BanddedKernel::Form form, std::int64_t m_or_n);

// Operator product. Periodic: exact pointwise symbol product. Toeplitz: full
// coefficient convolution truncated back to max(M_a, M_b), reporting the
// dropped coefficient mass.
struct ComposeResult {
    BanddedKernel kernel;
    double truncation_residual;
};
ComposeResult compose(const BanddedKernel& a, const BanddedKernel& b);

// S(m, L) = sum_{l=-L..L, l not in {0,m}} 1/(l(l-m)); converges to 2/m^2 with
// tail ~ 2/L.
double partial_sum_S(std::int64_t m, std::int64_t L);

// sum_{m=1..L} 1/m^2 -> pi^2/6 with tail ~ 1/L.
double basel_partial_sum(std::int64_t L);

}  // namespace bandlattice

#endif
