#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "bandlattice/io.hpp"

using namespace bandlattice;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "bandlattice_io_test") {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("field CSV + sidecar round trip is bit exact") {
    TempDir tmp;
    Lattice lat(0.3, 0.1, 33, Boundary::Periodic);
    std::mt19937_64 rng(5);
    TestFunction f = TestFunction::random_bandlimited(lat, 0.9, 7, rng);
    ComplexField field = sample(f, lat);

    write_field_csv(field, tmp.file("f.csv"), tmp.file("f.json"));
    ComplexField back = read_field_csv(tmp.file("f.csv"), tmp.file("f.json"));

    CHECK(back.lattice().spacing() == lat.spacing());
    CHECK(back.lattice().offset() == lat.offset());
    CHECK(back.lattice().size() == lat.size());
    CHECK(back.lattice().boundary() == Boundary::Periodic);
    for (int j = 0; j < 33; ++j) CHECK(back[j] == field[j]);
}

TEST_CASE("identical inputs produce byte-identical files") {
    TempDir tmp;
    Lattice lat(1.0, 0.0, 17, Boundary::Truncated);
    std::mt19937_64 rng(9);
    RealField field = random_real_field(Lattice(1.0, 0.0, 17, Boundary::Periodic), 0.8, 1.0, rng);
    RealField copy(lat, field.values());
    write_field_csv(copy, tmp.file("a.csv"), tmp.file("a.json"));
    write_field_csv(copy, tmp.file("b.csv"), tmp.file("b.json"));
    CHECK(slurp(tmp.file("a.csv")) == slurp(tmp.file("b.csv")));
    CHECK(slurp(tmp.file("a.json")) == slurp(tmp.file("b.json")));
}

TEST_CASE("Toeplitz kernel dump: golden content") {
    TempDir tmp;
    write_kernel_csv(derivative_kernel(1.0, BanddedKernel::Form::Toeplitz, 2),
                     tmp.file("d.csv"));
    CHECK(slurp(tmp.file("d.csv")) ==
          "m,coefficient\n-2,-0.5\n-1,1\n0,0\n1,-1\n2,0.5\n");
}

TEST_CASE("periodic kernel dump carries modes and symbols") {
    TempDir tmp;
    write_kernel_csv(second_derivative_kernel(1.0, BanddedKernel::Form::Periodic, 5),
                     tmp.file("d2.csv"));
    const std::string text = slurp(tmp.file("d2.csv"));
    CHECK(text.rfind("n,k,symbol_re,symbol_im\n", 0) == 0);
    std::istringstream lines(text);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 6);  // header + 5 modes
}

TEST_CASE("dispersion and trajectory CSV schemas") {
    TempDir tmp;
    const auto h = build_bandlimited_kg(1.0, 1.0, 9, Boundary::Periodic);
    DispersionCurve curve = dispersion(h);
    std::vector<double> expected;
    for (const auto& pt : curve) expected.push_back(pt.k * pt.k + 1.0);
    write_dispersion_csv(curve, expected, tmp.file("disp.csv"));
    CHECK(slurp(tmp.file("disp.csv")).rfind("n,k,omega2_measured,omega2_expected,abs_err\n",
                                            0) == 0);
    CHECK_THROWS_AS(write_dispersion_csv(curve, std::vector<double>(3, 0.0), tmp.file("x.csv")),
                    std::invalid_argument);

    Trajectory traj;
    traj.points = {{0.0, 1.0, 2.0}, {0.5, 1.0, 2.0}};
    write_trajectory_csv(traj, tmp.file("traj.csv"));
    CHECK(slurp(tmp.file("traj.csv")) == "t,energy,momentum\n0,1,2\n0.5,1,2\n");
}

TEST_CASE("hamiltonian JSON spec round trip") {
    const auto kg = build_bandlimited_kg(2.5, 0.5, 33, Boundary::Periodic);
    const nlohmann::json j = hamiltonian_to_json(kg);
    CHECK(j.at("type") == "klein_gordon");
    CHECK(j.at("n") == 33);
    const auto back = hamiltonian_from_json(j);
    CHECK(back.label() == "klein_gordon");
    CHECK(back.param("mass") == 2.5);
    CHECK(back.lattice().spacing() == 0.5);
    for (int m = -5; m <= 5; ++m) CHECK(back.c_qq(m) == kg.c_qq(m));

    const auto chain = build_harmonic_chain(1.5, 0.7, 1.0, 17, Boundary::Truncated);
    const auto chain_back = hamiltonian_from_json(hamiltonian_to_json(chain));
    CHECK(chain_back.param("spring") == 0.7);
    CHECK(chain_back.lattice().boundary() == Boundary::Truncated);

    nlohmann::json bad = {{"type", "ising"}, {"dx", 1.0}, {"n", 5}, {"boundary", "periodic"}};
    CHECK_THROWS_AS(hamiltonian_from_json(bad), std::invalid_argument);
}

TEST_CASE("boundary names and malformed field files") {
    CHECK(boundary_name(Boundary::Periodic) == "periodic");
    CHECK(boundary_from_name("truncated") == Boundary::Truncated);
    CHECK_THROWS_AS(boundary_from_name("open"), std::invalid_argument);

    TempDir tmp;
    {
        std::ofstream csv(tmp.file("bad.csv"));
        csv << "wrong,header\n";
        std::ofstream side(tmp.file("bad.json"));
        side << R"({"dx":1.0,"b":0.0,"n":2,"boundary":"periodic"})";
    }
    CHECK_THROWS_AS(read_field_csv(tmp.file("bad.csv"), tmp.file("bad.json")),
                    std::runtime_error);
    CHECK_THROWS_AS(read_field_csv(tmp.file("missing.csv"), tmp.file("bad.json")),
                    std::runtime_error);
}

}  // TEST_SUITE
