#include <doctest.h>

#include <swirllab/cli.hpp>
#include <swirllab/errors.hpp>
#include <swirllab/pipeline.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace swirl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("swirllab_test_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& leaf) const { return (path / leaf).string(); }
};

const char* kSmallRing = "nr = 33\nnz = 33\nt_end = 0.01\nsnapshot_every = 0.0025\n"
                         "[diagnostics]\nN = 1.0\nT = 0.005\n";

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    os << text;
}

std::string read_text(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
    args.insert(args.begin(), "swirllab");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text)
        *out_text = out.str();
    return code;
}

double g_swirl(double r) { return r * std::exp(-r * r / 0.09); }

} // namespace

TEST_CASE("zero-amplitude run stores all-zero snapshots") {
    TempDir d("quiescent");
    write_text(d / "q.toml", "nr = 33\nnz = 33\nt_end = 0.01\nsnapshot_every = 0.0025\n[ic]\ngamma0 = 0.0\nw0 = 0.0\n");
    const auto m = cmd_run(d / "q.toml", d / "run");
    CHECK(m.complete);
    REQUIRE(m.snapshots.size() == 5);
    for (std::size_t i = 0; i < m.snapshots.size(); ++i) {
        const auto f = read_snapshot(m.snapshot_path(i));
        for (const auto* v : {&f.u_r, &f.u_theta, &f.u_z, &f.p})
            CHECK(std::all_of(v->begin(), v->end(), [](double x) { return x == 0.0; }));
    }
}

TEST_CASE("run writes a manifest with increasing times that round trips") {
    TempDir d("ring");
    write_text(d / "ring.toml", kSmallRing);
    const auto m = cmd_run(d / "ring.toml", d / "run");
    REQUIRE(m.snapshots.size() == 5);
    for (std::size_t i = 0; i < m.snapshots.size(); ++i)
        CHECK(m.snapshots[i].t == doctest::Approx(0.0025 * i).epsilon(1e-12));
    const auto back = read_manifest(manifest_path_in(d / "run"));
    REQUIRE(back.snapshots.size() == m.snapshots.size());
    for (std::size_t i = 0; i < m.snapshots.size(); ++i) {
        CHECK(back.snapshots[i].t == m.snapshots[i].t);
        CHECK(back.snapshots[i].path == m.snapshots[i].path);
    }
    CHECK(back.config.sim.nr == 33);
    CHECK(back.config.diag.N == 1.0);
    CHECK_NOTHROW(check_snapshots(back));

    // resuming a complete run leaves the stored snapshots untouched
    const std::string before = read_text(m.snapshot_path(4));
    const auto again = cmd_run(d / "ring.toml", d / "run");
    CHECK(again.snapshots.size() == 5);
    CHECK(read_text(again.snapshot_path(4)) == before);

    // a different config in the same directory is refused
    write_text(d / "other.toml", "nu = 0.5\n" + std::string(kSmallRing));
    CHECK_THROWS_AS(cmd_run(d / "other.toml", d / "run"), ConfigError);
}

TEST_CASE("interrupted run resumes to identical snapshots") {
    TempDir d("resume");
    write_text(d / "ring.toml", kSmallRing);
    const auto full = cmd_run(d / "ring.toml", d / "full");

    const auto part = cmd_run(d / "ring.toml", d / "part");
    // drop the last two snapshots and mark the run incomplete
    RunManifest cut = read_manifest(manifest_path_in(d / "part"));
    cut.snapshots.resize(3);
    cut.complete = false;
    write_manifest(cut);
    fs::remove(part.snapshot_path(3));
    fs::remove(part.snapshot_path(4));
    const auto resumed = cmd_run(d / "ring.toml", d / "part");
    REQUIRE(resumed.snapshots.size() == 5);
    CHECK(resumed.complete);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(read_text(resumed.snapshot_path(i)) == read_text(full.snapshot_path(i)));
}

TEST_CASE("manifest validation") {
    TempDir d("manifest");
    write_text(d / "ring.toml", "nr = 17\nnz = 17\nt_end = 0.002\nsnapshot_every = 0.001\n");
    auto m = cmd_run(d / "ring.toml", d / "run");
    REQUIRE(m.snapshots.size() == 3);
    auto bad = m;
    std::swap(bad.snapshots[1], bad.snapshots[2]);
    write_manifest(bad);
    CHECK_THROWS_AS(read_manifest(manifest_path_in(d / "run")), DomainError);
    write_manifest(m);
    fs::remove(m.snapshot_path(2));
    CHECK_THROWS_AS(check_snapshots(read_manifest(manifest_path_in(d / "run"))), IoError);
    write_text(manifest_path_in(d / "run"), "{ not json");
    CHECK_THROWS_AS(read_manifest(manifest_path_in(d / "run")), IoError);
    CHECK_THROWS_AS(read_manifest(d / "missing.json"), IoError);
}

TEST_CASE("diagnose on pure-swirl snapshots gives S = 1 rows") {
    TempDir d("swirl");
    RunManifest m;
    m.config.sim.nr = 129;
    m.config.sim.nz = 17;
    m.config.sim.t_end = 0.002;
    m.config.sim.snapshot_every = 0.001;
    m.config.diag.T = 0.001;
    m.dir = d / "";
    fs::create_directories(d.path / "snapshots");
    for (int k = 0; k < 3; ++k) {
        AxisymField f(129, 17, 1.0 / 128, 1.0 / 16);
        f.t = 0.001 * k;
        for (int i = 0; i < f.nr; ++i)
            for (int j = 0; j < f.nz; ++j)
                f.u_theta[f.idx(i, j)] = (1.0 + k) * f.z(j) * g_swirl(f.r(i));
        const std::string rel = "snapshots/s" + std::to_string(k) + ".bin";
        write_snapshot(f, d / rel);
        m.snapshots.push_back({f.t, rel});
    }
    m.complete = true;
    write_manifest(m);
    const auto r = cmd_diagnose(manifest_path_in(d / ""));
    REQUIRE(r.samples.size() == 3);
    for (const auto& s : r.samples) {
        CHECK(s.valid);
        CHECK(s.S_at_xi == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.xi_r == doctest::Approx(0.3 / std::sqrt(2.0)).epsilon(1e-6));
    }
    CHECK(fs::exists(r.csv_path));
    CHECK(read_manifest(manifest_path_in(d / "")).diagnostics_csv == "diagnostics.csv");
}

TEST_CASE("diagnose with a vacuous premise and determinism of run plus diagnose") {
    TempDir d("diag");
    write_text(d / "ring.toml", kSmallRing);
    cmd_run(d / "ring.toml", d / "a");
    cmd_run(d / "ring.toml", d / "b");
    DiagnoseOptions o;
    o.N = 1e9;
    const auto r = cmd_diagnose(manifest_path_in(d / "a"), o);
    REQUIRE(r.theorem);
    CHECK_FALSE(r.theorem->premise);
    CHECK(r.theorem->conclusion_holds());
    const std::string csv = read_text(r.csv_path);
    CHECK(csv.rfind(std::string(kDiagnosticsHeader), 0) == 0);
    CHECK(csv.find("# premise=false") != std::string::npos);

    const auto ra = cmd_diagnose(manifest_path_in(d / "a"));
    const auto rb = cmd_diagnose(manifest_path_in(d / "b"));
    CHECK(read_text(ra.csv_path) == read_text(rb.csv_path));
    const auto back = read_manifest(manifest_path_in(d / "a"));
    REQUIRE(back.theorem);
    CHECK(back.theorem->G0 == ra.theorem->G0);
}

TEST_CASE("cli exit codes and export") {
    TempDir d("cli");
    write_text(d / "bad.toml", "nu = 0\n");
    CHECK(cli({"run", d / "bad.toml", "-o", d / "bad"}) == kExitConfig);
    CHECK(cli({"run", d / "missing.toml", "-o", d / "bad"}) != kExitOk);
    CHECK(cli({"frobnicate"}) == kExitConfig);

    std::string listing;
    CHECK(cli({"verify", "--list"}, &listing) == kExitOk);
    CHECK(listing.find("christoffel") != std::string::npos);
    CHECK(cli({"verify", "--mutate"}) == kExitVerify);

    write_text(d / "ring.toml", kSmallRing);
    REQUIRE(cli({"run", d / "ring.toml", "-o", d / "run"}) == kExitOk);
    const std::string manifest = manifest_path_in(d / "run");
    CHECK(cli({"diagnose", manifest, "--N", "1", "--T", "0.005"}) == kExitOk);
    CHECK(cli({"diagnose", d / "nothing.json"}) == kExitIo);
    REQUIRE(cli({"export", manifest, "--csv", d / "shear.csv", "--profile", d / "profile.csv"}) == kExitOk);
    std::istringstream shear(read_text(d / "shear.csv"));
    std::string line;
    std::getline(shear, line);
    CHECK(line == "t,r,dzur,dzutheta,vh_mag,S");
    int rows = 0;
    while (std::getline(shear, line))
        ++rows;
    CHECK(rows == 5 * 33);
    std::istringstream prof(read_text(d / "profile.csv"));
    std::getline(prof, line);
    CHECK(line == "t,r,z,omega_mag,dir_r,dir_theta,dir_z");
}

TEST_CASE("synthetic series satisfies the theorem exactly") {
    TempDir d("synthetic");
    REQUIRE(cli({"synthetic", "--N", "0.5", "--T", "1", "--seed", "3", "--csv", d / "g.csv"}) == kExitOk);
    std::ifstream is(d / "g.csv");
    const auto rows = read_diagnostics_csv(is);
    REQUIRE(rows.size() == 201);
    const auto tc = theorem_check(rows, 0.5, 1.0);
    CHECK(tc.premise);
    CHECK(tc.branch_G);
    const std::string text = read_text(d / "g.csv");
    CHECK(text.find("# branch_G=true") != std::string::npos);
    CHECK(cli({"synthetic", "--N", "-1", "--csv", d / "x.csv"}) == kExitConfig);
}
