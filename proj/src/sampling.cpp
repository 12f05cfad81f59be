#include "bandlattice/sampling.hpp"

#include <algorithm>
#include <iostream>

#include "bandlattice/detail/kahan.hpp"

namespace bandlattice {

namespace {

WarningHandler& warning_handler() {
    static WarningHandler handler = [](const std::string& msg) {
        std::cerr << "bandlattice: warning: " << msg << "\n";
    };
    return handler;
}

bool is_integer(double x) { return x == std::round(x); }

}  // namespace

void set_warning_handler(WarningHandler handler) {
    warning_handler() = std::move(handler);
}

double sinc_pi(double x) {
    if (is_integer(x)) return x == 0.0 ? 1.0 : 0.0;
    const double px = M_PI * x;
    return std::sin(px) / px;
}

double sinc_pi_deriv(double x) {
    // d/dx sin(pi x)/(pi x) = (cos(pi x) - sinc_pi(x)) / x; value 0 at x = 0,
    // (-1)^n / n at nonzero integers.
    if (x == 0.0) return 0.0;
    if (is_integer(x)) return std::cos(M_PI * x) / x;
    return (std::cos(M_PI * x) - sinc_pi(x)) / x;
}

double sinc_pi_deriv2(double x) {
    // s'' = -pi^2 s - (2/x) s'; value -pi^2/3 at x = 0.
    if (x == 0.0) return -M_PI * M_PI / 3.0;
    return -M_PI * M_PI * sinc_pi(x) - 2.0 * sinc_pi_deriv(x) / x;
}

double periodic_sinc(double u, int n) {
    u -= n * std::round(u / n);
    if (is_integer(u)) return u == 0.0 ? 1.0 : 0.0;
    const double num = std::sin(M_PI * u);
    if (n % 2 == 1) return num / (n * std::sin(M_PI * u / n));
    return num / (n * std::tan(M_PI * u / n));
}

Lattice::Lattice(double spacing, double offset, int size, Boundary boundary)
    : dx_(spacing), b_(offset), n_(size), boundary_(boundary) {
    if (!(dx_ > 0.0)) throw std::invalid_argument("Lattice: spacing must be > 0");
    if (!(b_ >= 0.0 && b_ < dx_))
        throw std::invalid_argument("Lattice: offset must lie in [0, spacing)");
    if (n_ <= 0) throw std::invalid_argument("Lattice: size must be positive");
}

bool Lattice::in_edge_margin(double x) const {
    if (boundary_ != Boundary::Truncated) return false;
    const double margin = (n_ / 8.0) * dx_;
    return x < b_ + margin || x > b_ + (n_ - 1) * dx_ - margin;
}

TestFunction TestFunction::plane_wave(double k) {
    TestFunction f;
    f.kind_ = Kind::PlaneWave;
    f.components_ = {{k, complex{1.0, 0.0}}};
    return f;
}

TestFunction TestFunction::fourier_sum(std::vector<Component> components) {
    TestFunction f;
    f.kind_ = Kind::FiniteFourierSum;
    f.components_ = std::move(components);
    return f;
}

TestFunction TestFunction::sinc_pulse(double center) {
    TestFunction f;
    f.kind_ = Kind::SincPulse;
    f.center_ = center;
    return f;
}

TestFunction TestFunction::plane_wave_mode(const Lattice& lat, int m) {
    if (std::abs(m) > lat.max_mode())
        throw std::invalid_argument("plane_wave_mode: mode index outside the ring band");
    return plane_wave(lat.mode_wavenumber(m));
}

TestFunction TestFunction::random_bandlimited(const Lattice& lat, double band_fraction,
                                              int n_components, std::mt19937_64& rng) {
    const int m_max = static_cast<int>(band_fraction * lat.max_mode());
    std::uniform_int_distribution<int> mode(-m_max, m_max);
    std::normal_distribution<double> amp(0.0, 1.0);
    std::vector<Component> comps;
    comps.reserve(static_cast<size_t>(n_components));
    const double norm = 1.0 / std::sqrt(std::max(1, n_components));
    for (int i = 0; i < n_components; ++i) {
        const int m = mode(rng);
        comps.push_back({lat.mode_wavenumber(m), norm * complex{amp(rng), amp(rng)}});
    }
    return fourier_sum(std::move(comps));
}

complex TestFunction::value(double x, double dx) const {
    if (kind_ == Kind::SincPulse) return {sinc_pi((x - center_) / dx), 0.0};
    detail::KahanSum<complex> sum;
    for (const auto& c : components_)
        sum.add(c.amplitude * std::exp(complex{0.0, -c.k * x}));
    return sum.value();
}

complex TestFunction::derivative(double x, double dx) const {
    if (kind_ == Kind::SincPulse)
        return {sinc_pi_deriv((x - center_) / dx) / dx, 0.0};
    detail::KahanSum<complex> sum;
    for (const auto& c : components_)
        sum.add(c.amplitude * complex{0.0, -c.k} * std::exp(complex{0.0, -c.k * x}));
    return sum.value();
}

complex TestFunction::second_derivative(double x, double dx) const {
    if (kind_ == Kind::SincPulse)
        return {sinc_pi_deriv2((x - center_) / dx) / (dx * dx), 0.0};
    detail::KahanSum<complex> sum;
    for (const auto& c : components_)
        sum.add(c.amplitude * (-c.k * c.k) * std::exp(complex{0.0, -c.k * x}));
    return sum.value();
}

double TestFunction::max_wavenumber(double dx) const {
    if (kind_ == Kind::SincPulse) return M_PI / dx;
    double kmax = 0.0;
    for (const auto& c : components_) kmax = std::max(kmax, std::abs(c.k));
    return kmax;
}

ComplexField sample(const TestFunction& f, const Lattice& lat) {
    if (!f.band_edge_admissible() && f.max_wavenumber(lat.spacing()) >= lat.bandlimit())
        throw std::invalid_argument(
            "sample: spectral component at or above the lattice bandlimit");
    std::vector<complex> values(static_cast<size_t>(lat.size()));
    for (int j = 0; j < lat.size(); ++j)
        values[static_cast<size_t>(j)] = f.value(lat.point(j), lat.spacing());
    return {lat, std::move(values)};
}

RealField random_real_field(const Lattice& lat, double band_fraction, double scale,
                            std::mt19937_64& rng) {
    const int m_max = static_cast<int>(band_fraction * lat.max_mode());
    std::normal_distribution<double> amp(0.0, 1.0);
    std::vector<double> values(static_cast<size_t>(lat.size()), 0.0);
    const double norm = scale / std::sqrt(std::max(1, m_max));
    for (int m = 1; m <= m_max; ++m) {
        const double a = amp(rng) * norm;
        const double b = amp(rng) * norm;
        const double k = lat.mode_wavenumber(m);
        for (int j = 0; j < lat.size(); ++j) {
            const double x = lat.point(j);
            values[static_cast<size_t>(j)] += a * std::cos(k * x) + b * std::sin(k * x);
        }
    }
    const double c0 = 0.3 * scale * amp(rng);
    for (auto& v : values) v += c0;
    return {lat, std::move(values)};
}

namespace {

// Shared reconstruction core; the Kronecker shortcut keeps on-lattice queries
// exact to the bit.
template <typename T>
T reconstruct_impl(const SampledField<T>& field, double x) {
    const Lattice& lat = field.lattice();
    const int n = lat.size();

    const double t = (x - lat.offset()) / lat.spacing();
    int j0 = static_cast<int>(std::round(t));
    if (lat.boundary() == Boundary::Periodic) {
        const int r = ((j0 % n) + n) % n;
        // compare against the canonical point of the wrapped index plus the
        // whole number of circumferences
        if (x == lat.point(j0)) return field[r];
    } else if (j0 >= 0 && j0 < n && x == lat.point(j0)) {
        return field[j0];
    }

    if (lat.boundary() == Boundary::Truncated && lat.in_edge_margin(x)) {
        warning_handler()(
            "reconstruct: x inside the truncated-lattice edge margin; value is "
            "edge-contaminated");
    }

    detail::KahanSum<T> sum;
    if (lat.boundary() == Boundary::Periodic) {
        for (int j = 0; j < n; ++j) {
            const double u = (x - lat.point(j)) / lat.spacing();
            sum.add(field[j] * periodic_sinc(u, n));
        }
    } else {
        for (int j = 0; j < n; ++j) {
            const double u = (x - lat.point(j)) / lat.spacing();
            sum.add(field[j] * sinc_pi(u));
        }
    }
    return sum.value();
}

}  // namespace

complex reconstruct(const ComplexField& field, double x) { return reconstruct_impl(field, x); }
double reconstruct(const RealField& field, double x) { return reconstruct_impl(field, x); }

template <typename T>
SampledField<T> resample(const SampledField<T>& field, double new_offset) {
    const Lattice& lat = field.lattice();
    if (!(new_offset >= 0.0 && new_offset < lat.spacing()))
        throw std::invalid_argument("resample: new offset outside [0, spacing)");

    const int n = lat.size();
    const double delta = (new_offset - lat.offset()) / lat.spacing();
    std::vector<T> values(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        detail::KahanSum<T> sum;
        for (int j = 0; j < n; ++j) {
            const double u = static_cast<double>(k - j) + delta;
            const double w = lat.boundary() == Boundary::Periodic ? periodic_sinc(u, n)
                                                                  : sinc_pi(u);
            sum.add(field[j] * w);
        }
        values[static_cast<size_t>(k)] = sum.value();
    }
    Lattice shifted(lat.spacing(), new_offset, n, lat.boundary());
    return {shifted, std::move(values)};
}

template SampledField<double> resample(const SampledField<double>&, double);
template SampledField<complex> resample(const SampledField<complex>&, double);

double integrate_product(const RealField& f, const RealField& g) {
    if (!f.lattice().same_geometry(g.lattice()))
        throw std::invalid_argument("integrate_product: lattice mismatch");
    detail::KahanSum<double> sum;
    for (int j = 0; j < f.size(); ++j) sum.add(f[j] * g[j]);
    return f.lattice().spacing() * sum.value();
}

complex integrate_product(const ComplexField& f, const ComplexField& g) {
    if (!f.lattice().same_geometry(g.lattice()))
        throw std::invalid_argument("integrate_product: lattice mismatch");
    detail::KahanSum<complex> sum;
    for (int j = 0; j < f.size(); ++j) sum.add(std::conj(f[j]) * g[j]);
    return f.lattice().spacing() * sum.value();
}

}  // namespace bandlattice
