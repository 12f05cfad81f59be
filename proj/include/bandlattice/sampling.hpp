#ifndef BANDLATTICE_SAMPLING_HPP
#define BANDLATTICE_SAMPLING_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

// Uniform 1D lattices, Shannon sampling/reconstruction and exact
// discrete integration of bandlimited fields.
//
// Conventions used throughout:
//   - lattice points  x_j = j*dx + b,  b in [0, dx)
//   - bandlimit       Omega = pi/dx
//   - plane waves     f(x) = exp(-i k x); spectral content is required to
//     satisfy |k| < Omega strictly (band-edge components are rejected).

namespace bandlattice {

using complex = std::complex<double>;

enum class Boundary { Truncated, Periodic };

// sin(pi x)/(pi x) with the removable singularity filled in.
// Exact Kronecker delta on integer-valued arguments.
double sinc_pi(double x);

// First and second derivatives of sinc_pi (closed forms, exact at integers).
double sinc_pi_deriv(double x);
double sinc_pi_deriv2(double x);

// Periodization of sinc_pi over n-site images, sum_j sinc_pi(u + j*n).
// Closed form: sin(pi u) / (n sin(pi u/n)) for odd n (Dirichlet kernel),
// sin(pi u) / (n tan(pi u/n)) for even n. Exact Kronecker delta on the
// integers mod n.
double periodic_sinc(double u, int n);

// Warning sink for non-fatal diagnostics (edge-contaminated reconstruction
// in Truncated mode). Default writes one line to stderr.
using WarningHandler = std::function<void(const std::string&)>;
void set_warning_handler(WarningHandler handler);

class Lattice {
public:
    Lattice(double spacing, double offset, int size, Boundary boundary);

    double spacing() const { return dx_; }
    double offset() const { return b_; }
    int size() const { return n_; }
    Boundary boundary() const { return boundary_; }

    double bandlimit() const { return M_PI / dx_; }        // Omega
    double point(int j) const { return j * dx_ + b_; }
    double circumference() const { return n_ * dx_; }      // periodic domain length

    // Lattice momentum of DFT mode m, k_m = 2 pi m / (n dx). Modes are indexed
    // symmetrically, |m| <= (n-1)/2 for odd n.
    double mode_wavenumber(int m) const { return 2.0 * M_PI * m / (n_ * dx_); }
    int max_mode() const { return (n_ - 1) / 2; }

    // Truncated mode only: the declared edge-contamination margin is n/8
    // sites on each end; reconstruction inside it is flagged, not refused.
    bool in_edge_margin(double x) const;

    bool same_geometry(const Lattice& o) const {
        return dx_ == o.dx_ && b_ == o.b_ && n_ == o.n_ && boundary_ == o.boundary_;
    }
    bool operator==(const Lattice& o) const { return same_geometry(o); }

private:
    double dx_;
    double b_;
    int n_;
    Boundary boundary_;
};

template <typename T>
class SampledField {
    static_assert(std::is_same_v<T, double> || std::is_same_v<T, complex>,
                  "SampledField supports double and complex amplitudes");

public:
    SampledField(Lattice lattice, std::vector<T> values)
        : lattice_(std::move(lattice)), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != lattice_.size())
            throw std::invalid_argument("SampledField: values.size() != lattice.size()");
    }

    const Lattice& lattice() const { return lattice_; }
    const std::vector<T>& values() const { return values_; }
    std::vector<T>& values() { return values_; }
    int size() const { return lattice_.size(); }

    T operator[](int j) const { return values_[static_cast<size_t>(j)]; }
    T& operator[](int j) { return values_[static_cast<size_t>(j)]; }

    // Index access with boundary semantics: wraps in Periodic mode, reads as
    // zero outside 0..n-1 in Truncated mode (the documented approximation of
    // the infinite lattice).
    T at_extended(std::int64_t j) const {
        const std::int64_t n = lattice_.size();
        if (lattice_.boundary() == Boundary::Periodic) {
            std::int64_t r = j % n;
            if (r < 0) r += n;
            return values_[static_cast<size_t>(r)];
        }
        if (j < 0 || j >= n) return T{};
        return values_[static_cast<size_t>(j)];
    }

private:
    Lattice lattice_;
    std::vector<T> values_;
};

using RealField = SampledField<double>;
using ComplexField = SampledField<complex>;

// Closed-form bandlimited test inputs. A SincPulse has no intrinsic width;
// it is the interpolation kernel of whatever lattice it meets, so evaluation
// takes the lattice spacing as a second argument.
class TestFunction {
public:
    enum class Kind { PlaneWave, FiniteFourierSum, SincPulse };

    struct Component {
        double k;
        complex amplitude;
    };

    static TestFunction plane_wave(double k);
    static TestFunction fourier_sum(std::vector<Component> components);
    static TestFunction sinc_pulse(double center);

    // Plane wave at the exact lattice momentum of DFT mode m. On a circle
    // only ring harmonics reconstruct exactly, so periodic-mode tests build
    // their content from these.
    static TestFunction plane_wave_mode(const Lattice& lat, int m);

    // Random finite Fourier sum over lattice momenta with |k| <= band_fraction
    // * Omega, strictly inside the band.
    static TestFunction random_bandlimited(const Lattice& lat, double band_fraction,
                                           int n_components, std::mt19937_64& rng);

    Kind kind() const { return kind_; }
    double pulse_center() const { return center_; }
    const std::vector<Component>& components() const { return components_; }

    complex value(double x, double dx) const;
    complex derivative(double x, double dx) const;
    complex second_derivative(double x, double dx) const;

    // Largest wavenumber present; a SincPulse reports the band edge pi/dx
    // itself but is admissible on that lattice (its spectrum carries no
    // weight at the edge points).
    double max_wavenumber(double dx) const;
    bool band_edge_admissible() const { return kind_ == Kind::SincPulse; }

private:
    TestFunction() = default;
    Kind kind_ = Kind::PlaneWave;
    std::vector<Component> components_;  // PlaneWave stores a single unit component
    double center_ = 0.0;
};

// values[j] = f(x_j). Rejects content at or above the lattice bandlimit.
ComplexField sample(const TestFunction& f, const Lattice& lat);

// Random real bandlimited field on a periodic lattice (conjugate-symmetric
// mode content, |k| <= band_fraction * Omega), used for property tests and
// randomized CLI runs.
RealField random_real_field(const Lattice& lat, double band_fraction, double scale,
                            std::mt19937_64& rng);

// Shannon reconstruction at arbitrary x: sum_j values[j] K((x - x_j)/dx) with
// K = sinc_pi (Truncated) or its periodization (Periodic). Returns values[j]
// exactly when x is bitwise-equal to lattice.point(j). Warns through the
// warning handler when x lies in the Truncated edge margin.
complex reconstruct(const ComplexField& field, double x);
double reconstruct(const RealField& field, double x);

// Change of lattice offset at fixed spacing/size/boundary; linear in the
// input samples, exact for periodic ring content.
template <typename T>
SampledField<T> resample(const SampledField<T>& field, double new_offset);

// dx * sum_j conj(f_j) g_j  (conjugation only in the complex overload):
// the exact value of the continuum integral of conj(f) g for bandlimited
// content (up to truncation effects in Truncated mode).
double integrate_product(const RealField& f, const RealField& g);
complex integrate_product(const ComplexField& f, const ComplexField& g);

}  // namespace bandlattice

#endif
