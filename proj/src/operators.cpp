#include "bandlattice/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bandlattice/detail/kahan.hpp"

namespace bandlattice {

namespace {

void check_odd_ring(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument(
            "periodic kernels require odd N >= 3 (the wrapped coefficient sequence "
            "matches the spectral construction only for odd N)");
}

// Iterative radix-2 FFT used only for large Toeplitz compositions. Twiddles
// come from a direct-trig table rather than a recurrence, which keeps the
// rounding error near one ulp per butterfly.
void fft_inplace(std::vector<complex>& a, bool inverse) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<complex> twiddle(n / 2);
    const double sign = inverse ? 1.0 : -1.0;
    for (size_t k = 0; k < n / 2; ++k) {
        const double ang = sign * 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
        twiddle[k] = complex(std::cos(ang), std::sin(ang));
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const size_t stride = n / len;
        for (size_t i = 0; i < n; i += len) {
            for (size_t j = 0; j < len / 2; ++j) {
                complex u = a[i + j];
                complex v = a[i + j + len / 2] * twiddle[j * stride];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

std::vector<double> convolve_full(const std::vector<double>& a, const std::vector<double>& b) {
    const size_t la = a.size(), lb = b.size();
    const size_t lout = la + lb - 1;
    if (la * lb <= size_t{4000000}) {
        std::vector<double> out(lout, 0.0);
        for (size_t i = 0; i < la; ++i)
            for (size_t j = 0; j < lb; ++j) out[i + j] += a[i] * b[j];
        return out;
    }
    size_t nfft = 1;
    while (nfft < lout) nfft <<= 1;
    std::vector<complex> fa(nfft), fb(nfft);
    for (size_t i = 0; i < la; ++i) fa[i] = a[i];
    for (size_t i = 0; i < lb; ++i) fb[i] = b[i];
    fft_inplace(fa, false);
    fft_inplace(fb, false);
    for (size_t i = 0; i < nfft; ++i) fa[i] *= fb[i];
    fft_inplace(fa, true);
    std::vector<double> out(lout);
    for (size_t i = 0; i < lout; ++i) out[i] = fa[i].real();
    return out;
}

std::vector<double> row_from_symbol(double dx, int n, const std::vector<complex>& symbol) {
    const int w = (n - 1) / 2;
    std::vector<double> row(static_cast<size_t>(n));
    double worst_imag = 0.0;
    double scale = 0.0;
    for (const auto& s : symbol) scale = std::max(scale, std::abs(s));
    for (int m = -w; m <= w; ++m) {
        detail::KahanSum<complex> acc;
        for (int mode = -w; mode <= w; ++mode) {
            const double k = 2.0 * M_PI * mode / (n * dx);
            acc.add(symbol[static_cast<size_t>(mode + w)] *
                    std::exp(complex{0.0, k * m * dx}));
        }
        const complex r = acc.value() / static_cast<double>(n);
        worst_imag = std::max(worst_imag, std::abs(r.imag()));
        row[static_cast<size_t>(m + w)] = r.real();
    }
    if (worst_imag > 1e-9 * std::max(1.0, scale))
        throw std::invalid_argument(
            "periodic kernel: symbol is not Hermitian (circulant row not real)");
    return row;
}

}  // namespace

BanddedKernel BanddedKernel::toeplitz(double dx, Parity parity, std::vector<double> coeffs) {
    if (!(dx > 0.0)) throw std::invalid_argument("BanddedKernel: spacing must be > 0");
    if (coeffs.empty() || coeffs.size() % 2 == 0)
        throw std::invalid_argument("BanddedKernel: coefficient count must be odd (2M+1)");
    const std::int64_t m = static_cast<std::int64_t>(coeffs.size() / 2);
    const double sign = parity == Parity::Antisymmetric ? -1.0 : 1.0;
    for (std::int64_t i = 1; i <= m; ++i) {
        const double hi = coeffs[static_cast<size_t>(m + i)];
        const double lo = coeffs[static_cast<size_t>(m - i)];
        const double avg = 0.5 * (hi + sign * lo);
        coeffs[static_cast<size_t>(m + i)] = avg;
        coeffs[static_cast<size_t>(m - i)] = sign * avg;
    }
    if (parity == Parity::Antisymmetric) coeffs[static_cast<size_t>(m)] = 0.0;

    BanddedKernel k;
    k.form_ = Form::Toeplitz;
    k.parity_ = parity;
    k.dx_ = dx;
    k.half_width_ = m;
    k.coeffs_ = std::move(coeffs);
    return k;
}

BanddedKernel BanddedKernel::periodic_from_symbol(double dx, int n, Parity parity,
                                                  std::vector<complex> symbol) {
    if (!(dx > 0.0)) throw std::invalid_argument("BanddedKernel: spacing must be > 0");
    check_odd_ring(n);
    if (symbol.size() != static_cast<size_t>(n))
        throw std::invalid_argument("BanddedKernel: symbol must have one value per mode");

    BanddedKernel k;
    k.form_ = Form::Periodic;
    k.parity_ = parity;
    k.dx_ = dx;
    k.n_ = n;
    k.half_width_ = (n - 1) / 2;
    k.coeffs_ = row_from_symbol(dx, n, symbol);
    k.symbol_ = std::move(symbol);
    return k;
}

int BanddedKernel::size() const {
    if (form_ != Form::Periodic)
        throw std::logic_error("BanddedKernel::size: Toeplitz kernel has no ring size");
    return n_;
}

double BanddedKernel::coefficient(std::int64_t m) const {
    if (std::llabs(m) > half_width_) {
        if (form_ == Form::Periodic)
            throw std::out_of_range("BanddedKernel::coefficient: offset outside the ring");
        return 0.0;
    }
    return coeffs_[static_cast<size_t>(m + half_width_)];
}

complex BanddedKernel::symbol(int mode) const {
    if (form_ != Form::Periodic)
        throw std::logic_error("BanddedKernel::symbol: Toeplitz kernel has no ring symbol");
    if (std::abs(mode) > half_width_)
        throw std::out_of_range("BanddedKernel::symbol: mode outside the ring band");
    return symbol_[static_cast<size_t>(mode + half_width_)];
}

double BanddedKernel::wavenumber(int mode) const {
    if (form_ != Form::Periodic)
        throw std::logic_error("BanddedKernel::wavenumber: Toeplitz kernel has no modes");
    return 2.0 * M_PI * mode / (n_ * dx_);
}

BanddedKernel derivative_kernel(double dx, BanddedKernel::Form form, std::int64_t m_or_n) {
    if (form == BanddedKernel::Form::Toeplitz) {
        if (m_or_n < 1) throw std::invalid_argument("derivative_kernel: M must be >= 1");
        const std::int64_t m = m_or_n;
        std::vector<double> coeffs(static_cast<size_t>(2 * m + 1), 0.0);
        for (std::int64_t i = 1; i <= m; ++i) {
            const double t = (i % 2 == 0 ? 1.0 : -1.0) / (static_cast<double>(i) * dx);
            coeffs[static_cast<size_t>(m + i)] = t;
            coeffs[static_cast<size_t>(m - i)] = -t;
        }
        return BanddedKernel::toeplitz(dx, BanddedKernel::Parity::Antisymmetric,
                                       std::move(coeffs));
    }
    const int n = static_cast<int>(m_or_n);
    check_odd_ring(n);
    const int w = (n - 1) / 2;
    std::vector<complex> symbol(static_cast<size_t>(n));
    for (int mode = -w; mode <= w; ++mode)
        symbol[static_cast<size_t>(mode + w)] = complex{0.0, 2.0 * M_PI * mode / (n * dx)};
    auto k = BanddedKernel::periodic_from_symbol(dx, n, BanddedKernel::Parity::Antisymmetric,
                                                 std::move(symbol));
    return k;
}

BanddedKernel second_derivative_kernel(double dx, BanddedKernel::Form form,
                                       std::int64_t m_or_n) {
    if (form == BanddedKernel::Form::Toeplitz) {
        if (m_or_n < 1)
            throw std::invalid_argument("second_derivative_kernel: M must be >= 1");
        const std::int64_t m = m_or_n;
        std::vector<double> coeffs(static_cast<size_t>(2 * m + 1), 0.0);
        coeffs[static_cast<size_t>(m)] = -M_PI * M_PI / (3.0 * dx * dx);
        for (std::int64_t i = 1; i <= m; ++i) {
            const double t =
                -2.0 * (i % 2 == 0 ? 1.0 : -1.0) / (static_cast<double>(i * i) * dx * dx);
            coeffs[static_cast<size_t>(m + i)] = t;
            coeffs[static_cast<size_t>(m - i)] = t;
        }
        return BanddedKernel::toeplitz(dx, BanddedKernel::Parity::Symmetric, std::move(coeffs));
    }
    const int n = static_cast<int>(m_or_n);
    check_odd_ring(n);
    const int w = (n - 1) / 2;
    std::vector<complex> symbol(static_cast<size_t>(n));
    for (int mode = -w; mode <= w; ++mode) {
        const double k = 2.0 * M_PI * mode / (n * dx);
        symbol[static_cast<size_t>(mode + w)] = complex{-k * k, 0.0};
    }
    return BanddedKernel::periodic_from_symbol(dx, n, BanddedKernel::Parity::Symmetric,
                                               std::move(symbol));
}

BanddedKernel identity_kernel(double dx, BanddedKernel::Form form, std::int64_t m_or_n) {
    if (form == BanddedKernel::Form::Toeplitz) {
        if (m_or_n < 0) throw std::invalid_argument("identity_kernel: M must be >= 0");
        std::vector<double> coeffs(static_cast<size_t>(2 * m_or_n + 1), 0.0);
        coeffs[static_cast<size_t>(m_or_n)] = 1.0;
        return BanddedKernel::toeplitz(dx, BanddedKernel::Parity::Symmetric, std::move(coeffs));
    }
    const int n = static_cast<int>(m_or_n);
    check_odd_ring(n);
    std::vector<complex> symbol(static_cast<size_t>(n), complex{1.0, 0.0});
    return BanddedKernel::periodic_from_symbol(dx, n, BanddedKernel::Parity::Symmetric,
                                               std::move(symbol));
}

template <typename T>
BanddedKernel::ApplyResult<T> BanddedKernel::apply_with_residual(
    const SampledField<T>& field) const {
    const Lattice& lat = field.lattice();
    if (spacing() != lat.spacing())
        throw std::invalid_argument("apply: kernel/field spacing mismatch");

    const bool cyclic = lat.boundary() == Boundary::Periodic;
    if (form() == Form::Periodic) {
        if (!cyclic || size() != lat.size())
            throw std::invalid_argument(
                "apply: periodic kernel requires a periodic field of the same size");
    }

    const int n = lat.size();
    const std::int64_t w = half_width();
    std::vector<T> out(static_cast<size_t>(n));
    double max_abs = 0.0;
    for (int j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(field[j]));

    double dropped_mass = 0.0;
    for (int j = 0; j < n; ++j) {
        detail::KahanSum<T> acc;
        const double t0 = coefficient(0);
        if (t0 != 0.0) acc.add(field[j] * t0);
        double dropped_j = 0.0;
        for (std::int64_t m = 1; m <= w; ++m) {
            const double tp = coefficient(m);
            const double tn = coefficient(-m);
            const std::int64_t jl = static_cast<std::int64_t>(j) - m;
            const std::int64_t jr = static_cast<std::int64_t>(j) + m;
            if (!cyclic && (jl < 0 || jl >= n)) dropped_j += std::abs(tp);
            if (!cyclic && (jr < 0 || jr >= n)) dropped_j += std::abs(tn);
            // (K f)_j = sum_m t_m f_{j-m}; paired so antisymmetric kernels
            // cancel exactly on constant fields
            acc.add(field.at_extended(jl) * tp + field.at_extended(jr) * tn);
        }
        out[static_cast<size_t>(j)] = acc.value();
        dropped_mass = std::max(dropped_mass, dropped_j);
    }
    return {SampledField<T>{lat, std::move(out)}, dropped_mass * max_abs};
}

template <typename T>
SampledField<T> BanddedKernel::apply(const SampledField<T>& field) const {
    return apply_with_residual(field).field;
}

template SampledField<double> BanddedKernel::apply(const SampledField<double>&) const;
template SampledField<complex> BanddedKernel::apply(const SampledField<complex>&) const;
template BanddedKernel::ApplyResult<double> BanddedKernel::apply_with_residual(
    const SampledField<double>&) const;
template BanddedKernel::ApplyResult<complex> BanddedKernel::apply_with_residual(
    const SampledField<complex>&) const;

ComposeResult compose(const BanddedKernel& a, const BanddedKernel& b) {
    if (a.form() != b.form())
        throw std::invalid_argument("compose: kernel form (backend) mismatch");
    if (a.spacing() != b.spacing())
        throw std::invalid_argument("compose: spacing mismatch");

    using Parity = BanddedKernel::Parity;
    const Parity parity =
        a.parity() == b.parity() ? Parity::Symmetric : Parity::Antisymmetric;

    if (a.form() == BanddedKernel::Form::Periodic) {
        if (a.size() != b.size()) throw std::invalid_argument("compose: ring size mismatch");
        const int n = a.size();
        const int w = (n - 1) / 2;
        std::vector<complex> symbol(static_cast<size_t>(n));
        for (int mode = -w; mode <= w; ++mode)
            symbol[static_cast<size_t>(mode + w)] = a.symbol(mode) * b.symbol(mode);
        return {BanddedKernel::periodic_from_symbol(a.spacing(), n, parity, std::move(symbol)),
                0.0};
    }

    const std::int64_t ma = a.half_width(), mb = b.half_width();
    std::vector<double> ca(static_cast<size_t>(2 * ma + 1)), cb(static_cast<size_t>(2 * mb + 1));
    for (std::int64_t m = -ma; m <= ma; ++m) ca[static_cast<size_t>(m + ma)] = a.coefficient(m);
    for (std::int64_t m = -mb; m <= mb; ++m) cb[static_cast<size_t>(m + mb)] = b.coefficient(m);

    const std::vector<double> full = convolve_full(ca, cb);  // offsets -(ma+mb)..(ma+mb)
    const std::int64_t mfull = ma + mb;
    const std::int64_t mkeep = std::max(ma, mb);

    detail::KahanSum<double> dropped;
    for (std::int64_t m = -mfull; m <= mfull; ++m)
        if (std::llabs(m) > mkeep) dropped.add(std::abs(full[static_cast<size_t>(m + mfull)]));

    std::vector<double> kept(static_cast<size_t>(2 * mkeep + 1));
    for (std::int64_t m = -mkeep; m <= mkeep; ++m)
        kept[static_cast<size_t>(m + mkeep)] = full[static_cast<size_t>(m + mfull)];

    return {BanddedKernel::toeplitz(a.spacing(), parity, std::move(kept)), dropped.value()};
}

double partial_sum_S(std::int64_t m, std::int64_t L) {
    if (m == 0) throw std::invalid_argument("partial_sum_S: m must be nonzero");
    if (L <= std::llabs(m)) throw std::invalid_argument("partial_sum_S: L must exceed |m|");
    detail::KahanSum<double> acc;
    for (std::int64_t l = -L; l <= L; ++l) {
        if (l == 0 || l == m) continue;
        acc.add(1.0 / (static_cast<double>(l) * static_cast<double>(l - m)));
    }
    return acc.value();
}

double basel_partial_sum(std::int64_t L) {
    if (L < 1) throw std::invalid_argument("basel_partial_sum: L must be >= 1");
    detail::KahanSum<double> acc;
    for (std::int64_t l = 1; l <= L; ++l)
        acc.add(1.0 / (static_cast<double>(l) * static_cast<double>(l)));
    return acc.value();
}

}  // namespace bandlattice
