#include "bandlattice/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bandlattice {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

std::string boundary_name(Boundary b) {
    return b == Boundary::Periodic ? "periodic" : "truncated";
}

Boundary boundary_from_name(const std::string& name) {
    if (name == "periodic") return Boundary::Periodic;
    if (name == "truncated") return Boundary::Truncated;
    throw std::invalid_argument("unknown boundary mode: " + name);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

nlohmann::json lattice_sidecar(const Lattice& lat) {
    return {{"dx", lat.spacing()},
            {"b", lat.offset()},
            {"n", lat.size()},
            {"boundary", boundary_name(lat.boundary())}};
}

template <typename T>
void write_field_csv_impl(const SampledField<T>& field, const std::string& csv_path,
                          const std::string& sidecar_path) {
    auto out = open_out(csv_path);
    out << "j,x,value_re,value_im\n";
    for (int j = 0; j < field.size(); ++j) {
        const complex v = complex(field[j]);
        out << j << ',' << format_double(field.lattice().point(j)) << ','
            << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
    auto side = open_out(sidecar_path);
    side << lattice_sidecar(field.lattice()).dump(2) << '\n';
}

}  // namespace

void write_field_csv(const ComplexField& field, const std::string& csv_path,
                     const std::string& sidecar_path) {
    write_field_csv_impl(field, csv_path, sidecar_path);
}

void write_field_csv(const RealField& field, const std::string& csv_path,
                     const std::string& sidecar_path) {
    write_field_csv_impl(field, csv_path, sidecar_path);
}

ComplexField read_field_csv(const std::string& csv_path, const std::string& sidecar_path) {
    auto side = open_in(sidecar_path);
    nlohmann::json meta = nlohmann::json::parse(side);
    Lattice lat(meta.at("dx").get<double>(), meta.at("b").get<double>(),
                meta.at("n").get<int>(), boundary_from_name(meta.at("boundary")));

    auto in = open_in(csv_path);
    std::string line;
    if (!std::getline(in, line) || line != "j,x,value_re,value_im")
        throw std::runtime_error("field CSV: bad header in " + csv_path);
    std::vector<complex> values;
    values.reserve(static_cast<size_t>(lat.size()));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 4) throw std::runtime_error("field CSV: bad row in " + csv_path);
        values.emplace_back(std::stod(cells[2]), std::stod(cells[3]));
    }
    if (values.size() != static_cast<size_t>(lat.size()))
        throw std::runtime_error("field CSV: row count does not match sidecar n");
    return {lat, std::move(values)};
}

void write_kernel_csv(const BanddedKernel& kernel, const std::string& path) {
    auto out = open_out(path);
    if (kernel.form() == BanddedKernel::Form::Toeplitz) {
        out << "m,coefficient\n";
        for (std::int64_t m = -kernel.half_width(); m <= kernel.half_width(); ++m)
            out << m << ',' << format_double(kernel.coefficient(m)) << '\n';
    } else {
        out << "n,k,symbol_re,symbol_im\n";
        const int w = static_cast<int>(kernel.half_width());
        for (int mode = -w; mode <= w; ++mode) {
            const complex s = kernel.symbol(mode);
            out << mode << ',' << format_double(kernel.wavenumber(mode)) << ','
                << format_double(s.real()) << ',' << format_double(s.imag()) << '\n';
        }
    }
}

void write_dispersion_csv(const DispersionCurve& measured, const std::vector<double>& expected,
                          const std::string& path) {
    if (measured.size() != expected.size())
        throw std::invalid_argument("write_dispersion_csv: size mismatch");
    auto out = open_out(path);
    out << "n,k,omega2_measured,omega2_expected,abs_err\n";
    for (size_t i = 0; i < measured.size(); ++i) {
        const auto& pt = measured[i];
        out << pt.mode << ',' << format_double(pt.k) << ',' << format_double(pt.omega2) << ','
            << format_double(expected[i]) << ','
            << format_double(std::abs(pt.omega2 - expected[i])) << '\n';
    }
}

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path) {
    auto out = open_out(path);
    out << "t,energy,momentum\n";
    for (const auto& pt : trajectory.points)
        out << format_double(pt.t) << ',' << format_double(pt.energy) << ','
            << format_double(pt.momentum) << '\n';
}

nlohmann::json hamiltonian_to_json(const QuadraticLatticeHamiltonian& h) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [name, value] : h.params()) params[name] = value;
    return {{"type", h.label()},
            {"params", params},
            {"dx", h.lattice().spacing()},
            {"n", h.lattice().size()},
            {"boundary", boundary_name(h.lattice().boundary())}};
}

QuadraticLatticeHamiltonian hamiltonian_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    const double dx = j.at("dx").get<double>();
    const int n = j.at("n").get<int>();
    const Boundary boundary = boundary_from_name(j.at("boundary"));
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    if (type == "klein_gordon")
        return build_bandlimited_kg(params.value("mass", 1.0), dx, n, boundary);
    if (type == "harmonic_chain")
        return build_harmonic_chain(params.value("mass", 1.0), params.value("spring", 1.0), dx,
                                    n, boundary);
    throw std::invalid_argument("hamiltonian_from_json: unknown type " + type);
}

}  // namespace bandlattice
