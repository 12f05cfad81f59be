// bandlattice CLI: reproductions, sweeps and conservation reports for the
// bandlimited-lattice library. Commands write CSV/JSON data only; plotting is
// left to external tools. Exit codes: 0 all checks pass, 1 tolerance
// violation, 2 invalid configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "bandlattice/flow.hpp"
#include "bandlattice/fock.hpp"
#include "bandlattice/io.hpp"
#include "bandlattice/operators.hpp"
#include "bandlattice/symmetry.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bandlattice;

namespace {

struct RunConfig {
    double dx = 1.0;
    double b = 0.0;
    int n = 257;
    std::string boundary = "periodic";
    double mass = 1.0;
    double spring = 1.0;
    double lambda = 0.1;
    double a = 0.5;
    std::string out;
    std::uint64_t seed = 1;
    int oversample = 1;
    double amplitude = 1.0;
    std::int64_t flow_steps = 100000;
    int fock_sites = 3;
    int fock_cutoff = 5;
    int snapshot_stride = 0;
    std::string hamiltonian_file;
    std::string config_file;
};

fs::path resolve_out_dir(const RunConfig& cfg, const std::string& command) {
    std::string base = cfg.out;
    if (base.empty()) {
        if (const char* env = std::getenv("BANDLATTICE_OUT")) base = env;
    }
    if (base.empty()) base = "out";
    fs::path dir = fs::path(base) / command;
    fs::create_directories(dir);
    return dir;
}

Lattice make_lattice(const RunConfig& cfg) {
    return {cfg.dx, cfg.b, cfg.n, boundary_from_name(cfg.boundary)};
}

void write_curve_csv(const std::string& path, const std::string& header,
                     const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << header << '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
}

struct CheckList {
    json results = json::array();
    bool all_pass = true;

    void add(const std::string& name, double value, const std::string& relation,
             double threshold) {
        const bool pass = relation == "<" ? value < threshold : value > threshold;
        all_pass = all_pass && pass;
        results.push_back({{"check", name},
                           {"value", value},
                           {"relation", relation},
                           {"threshold", threshold},
                           {"pass", pass}});
        std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << value << " "
                  << relation << " " << threshold << "\n";
    }
};

// ---------------------------------------------------------------- reconstruct

int cmd_reconstruct(const RunConfig& cfg) {
    const Lattice base = make_lattice(cfg);
    const Lattice lat(cfg.dx / cfg.oversample, cfg.b, cfg.n * cfg.oversample,
                      base.boundary());

    std::mt19937_64 rng(cfg.seed);
    TestFunction f = TestFunction::random_bandlimited(base, 0.9, 12, rng);
    std::vector<TestFunction::Component> scaled;
    for (auto c : f.components()) scaled.push_back({c.k, c.amplitude * cfg.amplitude});
    f = TestFunction::fourier_sum(scaled);

    const ComplexField field = sample(f, lat);
    const fs::path dir = resolve_out_dir(cfg, "reconstruct");
    write_field_csv(field, (dir / "samples.csv").string(), (dir / "samples.json").string());

    const int dense = 2048;
    const double length = base.circumference();
    std::vector<std::vector<double>> recon_rows, err_rows;
    double max_err = 0.0, oversample_err = 0.0;
    const ComplexField base_field = cfg.oversample > 1 ? sample(f, base) : field;
    for (int i = 0; i < dense; ++i) {
        const double x = length * i / dense;
        const complex r = reconstruct(field, x);
        const complex exact = f.value(x, lat.spacing());
        recon_rows.push_back({x, r.real(), r.imag()});
        const double err = std::abs(r - exact);
        err_rows.push_back({x, err});
        max_err = std::max(max_err, err);
        if (cfg.oversample > 1)
            oversample_err = std::max(oversample_err, std::abs(r - reconstruct(base_field, x)));
    }
    write_curve_csv((dir / "reconstruction.csv").string(), "x,value_re,value_im", recon_rows);
    write_curve_csv((dir / "error.csv").string(), "x,abs_err", err_rows);

    CheckList checks;
    checks.add("reconstruction_max_error", max_err, "<", 1e-9 * std::max(1.0, cfg.amplitude));
    if (cfg.oversample > 1)
        checks.add("oversample_consistency", oversample_err, "<",
                   1e-9 * std::max(1.0, cfg.amplitude));
    return checks.all_pass ? 0 : 1;
}

// ----------------------------------------------------------------- dispersion

int cmd_dispersion(const RunConfig& cfg) {
    if (boundary_from_name(cfg.boundary) != Boundary::Periodic)
        throw std::invalid_argument("dispersion: periodic mode required");
    const fs::path dir = resolve_out_dir(cfg, "dispersion");
    CheckList checks;

    QuadraticLatticeHamiltonian kg =
        cfg.hamiltonian_file.empty()
            ? build_bandlimited_kg(cfg.mass, cfg.dx, cfg.n, Boundary::Periodic)
            : hamiltonian_from_json(json::parse(std::ifstream(cfg.hamiltonian_file)));
    {
        const DispersionCurve curve = dispersion(kg);
        const double mass = kg.label() == "klein_gordon" ? kg.param("mass") : 0.0;
        std::vector<double> expected;
        double worst = 0.0;
        for (const auto& pt : curve) {
            expected.push_back(pt.k * pt.k + mass * mass);
            worst = std::max(worst, std::abs(pt.omega2 - expected.back()));
        }
        write_dispersion_csv(curve, expected, (dir / "dispersion_kg.csv").string());
        if (kg.label() == "klein_gordon")
            checks.add("kg_dispersion_max_error", worst, "<", 1e-9);
    }

    {
        const auto chain =
            build_harmonic_chain(cfg.mass, cfg.spring, cfg.dx, cfg.n, Boundary::Periodic);
        const DispersionCurve curve = dispersion(chain);
        std::vector<double> expected;
        double worst = 0.0;
        for (const auto& pt : curve) {
            const double s = std::sin(pt.k * cfg.dx / 2.0);
            expected.push_back(4.0 * cfg.spring / cfg.mass * s * s);
            worst = std::max(worst, std::abs(pt.omega2 - expected.back()));
        }
        write_dispersion_csv(curve, expected, (dir / "dispersion_chain.csv").string());
        checks.add("chain_dispersion_max_error", worst, "<", 1e-9);
    }
    return checks.all_pass ? 0 : 1;
}

// ------------------------------------------------------------------- conserve

json conserve_entry(const std::string& name, double kernel_residual, double fock_residual,
                    double flow_drift, double energy_drift) {
    return {{"hamiltonian", name},
            {"kernel_residual", kernel_residual},
            {"fock_residual", fock_residual},
            {"flow_drift", flow_drift},
            {"energy_drift", energy_drift}};
}

void write_snapshots(const Trajectory& traj, const fs::path& dir, const std::string& tag) {
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        const auto& [q, p] = traj.snapshots[i];
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_%s_%04zu.csv", tag.c_str(), i);
        std::vector<std::vector<double>> rows;
        for (int j = 0; j < q.size(); ++j)
            rows.push_back({static_cast<double>(j), q.lattice().point(j), q[j], p[j]});
        write_curve_csv((dir / name).string(), "j,x,q,p", rows);
    }
}

int cmd_conserve(const RunConfig& cfg) {
    if (boundary_from_name(cfg.boundary) != Boundary::Periodic)
        throw std::invalid_argument("conserve: periodic mode required");
    if (cfg.n % 2 == 0)
        throw std::invalid_argument("conserve: odd N required in periodic mode");
    const fs::path dir = resolve_out_dir(cfg, "conserve");
    CheckList checks;
    json report;
    report["hamiltonians"] = json::array();

    const TotalMomentum mom = build_total_momentum(cfg.dx, cfg.n, Boundary::Periodic);
    const TotalMomentum mom_fock =
        build_total_momentum(cfg.dx, cfg.fock_sites, Boundary::Periodic);

    std::mt19937_64 rng(cfg.seed);
    const Lattice lat = mom.lattice();
    const RealField q0 = random_real_field(lat, 0.8, 0.25, rng);
    const RealField p0 = random_real_field(lat, 0.8, 0.25, rng);

    FlowOptions exact_opts;
    exact_opts.snapshot_stride = cfg.snapshot_stride;

    // quadratic models: kernel residual at n, Fock residual on the small ring,
    // drift under the exact linear flow
    struct Model {
        std::string name;
        QuadraticLatticeHamiltonian at_n;
        QuadraticLatticeHamiltonian at_fock;
    };
    const std::vector<Model> models = {
        {"klein_gordon", build_bandlimited_kg(cfg.mass, cfg.dx, cfg.n, Boundary::Periodic),
         build_bandlimited_kg(cfg.mass, cfg.dx, cfg.fock_sites, Boundary::Periodic)},
        {"harmonic_chain",
         build_harmonic_chain(cfg.mass, cfg.spring, cfg.dx, cfg.n, Boundary::Periodic),
         build_harmonic_chain(cfg.mass, cfg.spring, cfg.dx, cfg.fock_sites,
                              Boundary::Periodic)}};

    for (const auto& model : models) {
        const double kernel_residual =
            quadratic_commutator(to_phase_space_form(model.at_n), mom.form()).kernel.max_abs();
        const double fock_residual =
            fock_oracle_commutator(model.at_fock, mom_fock, cfg.fock_sites, cfg.fock_cutoff);
        const Trajectory traj = classical_flow(model.at_n, q0, p0, 10.0, exact_opts);
        write_trajectory_csv(traj, (dir / ("trajectory_" + model.name + ".csv")).string());
        write_snapshots(traj, dir, model.name);

        checks.add(model.name + "_kernel_residual", kernel_residual, "<", 1e-10);
        checks.add(model.name + "_fock_residual", fock_residual, "<", 1e-8);
        checks.add(model.name + "_flow_drift", traj.max_momentum_drift(), "<", 1e-9);
        report["hamiltonians"].push_back(conserve_entry(model.name, kernel_residual,
                                                        fock_residual,
                                                        traj.max_momentum_drift(),
                                                        traj.max_energy_drift()));
    }

    // randomized translation-invariant ensemble: kernel residual only
    {
        double worst = 0.0;
        const int count = 50;
        for (int rep = 0; rep < count; ++rep) {
            const auto h =
                random_quadratic_hamiltonian(cfg.dx, cfg.n, Boundary::Periodic, 12, rng);
            worst = std::max(
                worst,
                quadratic_commutator(to_phase_space_form(h), mom.form()).kernel.max_abs());
        }
        checks.add("random_ensemble_kernel_residual", worst, "<", 1e-10);
        json entry = conserve_entry("random_quadratic_ensemble", worst, 0.0, 0.0, 0.0);
        entry["count"] = count;
        entry["fock_residual"] = nullptr;
        entry["flow_drift"] = nullptr;
        entry["energy_drift"] = nullptr;
        report["hamiltonians"].push_back(entry);
    }

    // cubic augmentation: Fock residual and leapfrog drift
    {
        const auto& kg_n = models[0].at_n;
        const auto& kg_fock = models[0].at_fock;
        FockOracleOptions fock_opts;
        fock_opts.lambda_cubic = cfg.lambda;
        const double fock_residual = fock_oracle_commutator(kg_fock, mom_fock, cfg.fock_sites,
                                                            cfg.fock_cutoff, fock_opts);
        FlowOptions flow_opts;
        flow_opts.lambda_cubic = cfg.lambda;
        flow_opts.steps = cfg.flow_steps;
        flow_opts.snapshot_stride = cfg.snapshot_stride;
        const Trajectory traj = classical_flow(kg_n, q0, p0, 10.0, flow_opts);
        write_trajectory_csv(traj, (dir / "trajectory_kg_cubic.csv").string());
        write_snapshots(traj, dir, "kg_cubic");

        if (cfg.lambda != 0.0) {
            checks.add("cubic_fock_residual", fock_residual, ">", 1e-3);
            checks.add("cubic_flow_drift", traj.max_momentum_drift(), ">", 1e-3);
            checks.add("cubic_energy_drift", traj.max_energy_drift(), "<", 1e-6);
        } else {
            checks.add("cubic_fock_residual", fock_residual, "<", 1e-8);
            checks.add("cubic_flow_drift", traj.max_momentum_drift(), "<", 1e-9);
        }
        json entry = conserve_entry("klein_gordon_cubic", 0.0, fock_residual,
                                    traj.max_momentum_drift(), traj.max_energy_drift());
        entry["kernel_residual"] = nullptr;
        entry["lambda"] = cfg.lambda;
        report["hamiltonians"].push_back(entry);
    }

    report["checks"] = checks.results;
    report["all_pass"] = checks.all_pass;
    std::ofstream out(dir / "report.json");
    out << report.dump(2) << '\n';
    return checks.all_pass ? 0 : 1;
}

// ------------------------------------------------------------------ translate

int cmd_translate(const RunConfig& cfg) {
    const Lattice lat = make_lattice(cfg);
    const bool cyclic = lat.boundary() == Boundary::Periodic;
    const fs::path dir = resolve_out_dir(cfg, "translate");

    std::mt19937_64 rng(cfg.seed);
    const RealField f = random_real_field(lat, 0.9, 1.0, rng);
    write_field_csv(f, (dir / "samples.csv").string(), (dir / "samples.json").string());

    const RealField shifted = translate_field(f, cfg.a);
    write_field_csv(shifted, (dir / "resampled.csv").string(),
                    (dir / "resampled.json").string());

    const int dense = 2048;
    std::vector<std::vector<double>> orig_rows, shift_rows;
    for (int i = 0; i < dense; ++i) {
        const double x = lat.circumference() * i / dense;
        orig_rows.push_back({x, reconstruct(f, x)});
        shift_rows.push_back({x, reconstruct(shifted, x)});
    }
    write_curve_csv((dir / "reconstructed.csv").string(), "x,value", orig_rows);
    write_curve_csv((dir / "shifted.csv").string(), "x,value", shift_rows);

    CheckList checks;
    // one-site shift is the exact index roll (cyclic on a ring, zero-filled on
    // a truncated window)
    const RealField rolled = translate_field(f, cfg.dx);
    double roll_err = 0.0;
    for (int j = 0; j < cfg.n; ++j) {
        const double expect = cyclic ? f[(j + cfg.n - 1) % cfg.n] : (j > 0 ? f[j - 1] : 0.0);
        roll_err = std::max(roll_err, std::abs(rolled[j] - expect));
    }
    checks.add("one_site_shift_vs_roll", roll_err, "<", 1e-15);

    const RealField round_trip = translate_field(shifted, -cfg.a);
    double rt_err = 0.0;
    for (int j = 0; j < cfg.n; ++j) rt_err = std::max(rt_err, std::abs(round_trip[j] - f[j]));
    checks.add("round_trip_error", rt_err, "<", 1e-8);

    const BanddedKernel d =
        cyclic ? derivative_kernel(cfg.dx, BanddedKernel::Form::Periodic, cfg.n)
               : derivative_kernel(cfg.dx, BanddedKernel::Form::Toeplitz, cfg.n - 1);
    const RealField df = d.apply(f);
    const double h = 1e-5 * cfg.dx;
    const RealField fwd = translate_field(f, h);
    const RealField bwd = translate_field(f, -h);
    double gen_err = 0.0;
    for (int j = 0; j < cfg.n; ++j)
        gen_err = std::max(gen_err, std::abs((fwd[j] - bwd[j]) / (2.0 * h) + df[j]));
    checks.add("generator_fd_error", gen_err, "<", 1e-8);

    return checks.all_pass ? 0 : 1;
}

// --------------------------------------------------------------- kernel-sweep

int cmd_kernel_sweep(const RunConfig& cfg) {
    const fs::path dir = resolve_out_dir(cfg, "kernel_sweep");
    CheckList checks;

    // reference dumps of the operators themselves
    write_kernel_csv(derivative_kernel(cfg.dx, BanddedKernel::Form::Toeplitz, 16),
                     (dir / "d_toeplitz.csv").string());
    write_kernel_csv(second_derivative_kernel(cfg.dx, BanddedKernel::Form::Toeplitz, 16),
                     (dir / "d2_toeplitz.csv").string());

    // D o D vs D2, Toeplitz truncation sweep
    std::vector<std::vector<double>> d2_rows;
    for (std::int64_t m : {10, 100, 1000, 10000, 100000}) {
        const BanddedKernel d = derivative_kernel(cfg.dx, BanddedKernel::Form::Toeplitz, m);
        const auto dd = compose(d, d);
        const BanddedKernel d2 =
            second_derivative_kernel(cfg.dx, BanddedKernel::Form::Toeplitz, m);
        const double diag_err = std::abs(dd.kernel.coefficient(0) - d2.coefficient(0));
        double off_err = 0.0;
        for (int off = 1; off <= 10; ++off)
            off_err = std::max(off_err,
                               std::abs(dd.kernel.coefficient(off) - d2.coefficient(off)));
        d2_rows.push_back({static_cast<double>(m), diag_err, off_err,
                           dd.truncation_residual});
        if (m == 100000)
            checks.add("toeplitz_d2_diagonal_error_M1e5", diag_err, "<",
                       2e-5 / (cfg.dx * cfg.dx));
    }
    write_curve_csv((dir / "d2_residual_vs_M.csv").string(),
                    "M,diag_abs_err,max_offdiag_err_to_m10,truncation_residual", d2_rows);

    // periodic symbol identity at the configured ring size
    const int n = cfg.n % 2 == 1 ? cfg.n : cfg.n + 1;
    const BanddedKernel dp = derivative_kernel(cfg.dx, BanddedKernel::Form::Periodic, n);
    const auto ddp = compose(dp, dp);
    const BanddedKernel d2p = second_derivative_kernel(cfg.dx, BanddedKernel::Form::Periodic, n);
    write_kernel_csv(dp, (dir / "d_ring.csv").string());
    write_kernel_csv(d2p, (dir / "d2_ring.csv").string());
    double sym_err = 0.0;
    for (int mode = -(n - 1) / 2; mode <= (n - 1) / 2; ++mode)
        sym_err = std::max(sym_err, std::abs(ddp.kernel.symbol(mode) - d2p.symbol(mode)));
    checks.add("periodic_symbol_residual", sym_err, "<", 1e-12);

    // cotangent-series partial sums
    std::vector<std::vector<double>> s_rows;
    for (int m : {1, 2, 3, 5})
        for (std::int64_t l : {1000, 10000, 100000, 1000000}) {
            const double s = partial_sum_S(m, l);
            s_rows.push_back({static_cast<double>(m), static_cast<double>(l), s,
                              std::abs(s - 2.0 / (m * m))});
        }
    write_curve_csv((dir / "cotangent_sum.csv").string(), "m,L,S,abs_err", s_rows);
    checks.add("cotangent_sum_m1_L1e6", std::abs(partial_sum_S(1, 1000000) - 2.0), "<", 5e-6);

    // Basel convergence
    std::vector<std::vector<double>> basel_rows;
    const double basel_exact = M_PI * M_PI / 6.0;
    for (std::int64_t l : {1000, 10000, 100000, 1000000}) {
        const double s = basel_partial_sum(l);
        basel_rows.push_back({static_cast<double>(l), s, std::abs(s - basel_exact)});
    }
    write_curve_csv((dir / "basel.csv").string(), "L,partial_sum,abs_err", basel_rows);
    checks.add("basel_partial_sum_L1e6", std::abs(basel_partial_sum(1000000) - basel_exact),
               "<", 2e-6);

    return checks.all_pass ? 0 : 1;
}

// ----------------------------------------------------------------------- main

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--dx", cfg.dx, "lattice spacing");
    cmd->add_option("--b", cfg.b, "lattice offset in [0, dx)");
    cmd->add_option("--n", cfg.n, "lattice size");
    cmd->add_option("--boundary", cfg.boundary, "periodic | truncated");
    cmd->add_option("--mass", cfg.mass, "KG mass / chain particle mass");
    cmd->add_option("--spring", cfg.spring, "chain spring constant");
    cmd->add_option("--lambda", cfg.lambda, "cubic coupling for conserve");
    cmd->add_option("--a", cfg.a, "translation distance");
    cmd->add_option("--out", cfg.out, "output directory (fallback: $BANDLATTICE_OUT)");
    cmd->add_option("--seed", cfg.seed, "seed for randomized content");
    cmd->add_option("--oversample", cfg.oversample, "sampling-rate multiplier (reconstruct)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--amplitude", cfg.amplitude, "test-function amplitude (reconstruct)");
    cmd->add_option("--flow-steps", cfg.flow_steps, "leapfrog steps (conserve)");
    cmd->add_option("--fock-sites", cfg.fock_sites, "Fock oracle ring size (conserve)");
    cmd->add_option("--fock-cutoff", cfg.fock_cutoff, "Fock oracle excitation cap (conserve)");
    cmd->add_option("--snapshot-stride", cfg.snapshot_stride,
                    "keep full state every k-th sample (conserve)");
    cmd->add_option("--hamiltonian", cfg.hamiltonian_file,
                    "JSON Hamiltonian spec file (dispersion)");
    cmd->add_option("--config", cfg.config_file, "JSON config file (flags take precedence)");
}

void apply_config_file(CLI::App* cmd, RunConfig& cfg) {
    if (cfg.config_file.empty()) return;
    std::ifstream in(cfg.config_file);
    if (!in) throw std::invalid_argument("cannot open config file: " + cfg.config_file);
    const json conf = json::parse(in);
    auto maybe = [&](const char* flag, auto& field) {
        const std::string key = flag + 2;  // strip "--"
        if (conf.contains(key) && cmd->count(flag) == 0)
            field = conf.at(key).get<std::decay_t<decltype(field)>>();
    };
    maybe("--dx", cfg.dx);
    maybe("--b", cfg.b);
    maybe("--n", cfg.n);
    maybe("--boundary", cfg.boundary);
    maybe("--mass", cfg.mass);
    maybe("--spring", cfg.spring);
    maybe("--lambda", cfg.lambda);
    maybe("--a", cfg.a);
    maybe("--out", cfg.out);
    maybe("--seed", cfg.seed);
    maybe("--oversample", cfg.oversample);
    maybe("--amplitude", cfg.amplitude);
    maybe("--flow-steps", cfg.flow_steps);
    maybe("--fock-sites", cfg.fock_sites);
    maybe("--fock-cutoff", cfg.fock_cutoff);
    maybe("--snapshot-stride", cfg.snapshot_stride);
    maybe("--hamiltonian", cfg.hamiltonian_file);
}

}  // namespace

int main(int argc, char** argv) {
    // the library warns per evaluation; a command-line run wants each message once
    static int warning_count = 0;
    static std::string first_warning;
    set_warning_handler([](const std::string& msg) {
        if (warning_count++ == 0) first_warning = msg;
    });

    CLI::App app{"bandlimited lattice field theory toolbox"};
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* c_reconstruct =
        app.add_subcommand("reconstruct", "sample a bandlimited function and rebuild it");
    CLI::App* c_dispersion =
        app.add_subcommand("dispersion", "normal-mode curves for KG and harmonic chain");
    CLI::App* c_conserve =
        app.add_subcommand("conserve", "momentum-conservation report (kernel/Fock/flow)");
    CLI::App* c_translate =
        app.add_subcommand("translate", "continuous translation of a lattice field");
    CLI::App* c_sweep =
        app.add_subcommand("kernel-sweep", "derivative-kernel identities and series sweeps");
    for (CLI::App* cmd : {c_reconstruct, c_dispersion, c_conserve, c_translate, c_sweep})
        add_common_options(cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        apply_config_file(active, cfg);
        int rc = 0;
        if (active == c_reconstruct)
            rc = cmd_reconstruct(cfg);
        else if (active == c_dispersion)
            rc = cmd_dispersion(cfg);
        else if (active == c_conserve)
            rc = cmd_conserve(cfg);
        else if (active == c_translate)
            rc = cmd_translate(cfg);
        else
            rc = cmd_kernel_sweep(cfg);
        if (warning_count > 0)
            std::cerr << "bandlattice: warning (x" << warning_count << "): " << first_warning
                      << "\n";
        return rc;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
