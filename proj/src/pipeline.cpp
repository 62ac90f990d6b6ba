#include <swirllab/errors.hpp>
#include <swirllab/parallel.hpp>
#include <swirllab/pipeline.hpp>
#include <swirllab/shear.hpp>
#include <swirllab/solver.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace swirl {

namespace {

json config_json(const RunConfig& c) {
    const auto& s = c.sim;
    return {{"nr", s.nr},
            {"nz", s.nz},
            {"r_max", s.r_max},
            {"z_max", s.z_max},
            {"nu", s.nu},
            {"cfl", s.cfl},
            {"t_end", s.t_end},
            {"snapshot_every", s.snapshot_every},
            {"proj_tol", s.proj_tol},
            {"ic", {{"r0", s.ic.r0}, {"z0", s.ic.z0}, {"a", s.ic.a}, {"gamma0", s.ic.gamma0}, {"w0", s.ic.w0}}},
            {"diagnostics",
             {{"N", c.diag.N},
              {"T", c.diag.T},
              {"s_min", c.diag.s_min},
              {"ds_max", c.diag.ds_max},
              {"t_start", c.diag.t_start}}}};
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    auto& s = c.sim;
    s.nr = j.at("nr").get<int>();
    s.nz = j.at("nz").get<int>();
    s.r_max = j.at("r_max").get<double>();
    s.z_max = j.at("z_max").get<double>();
    s.nu = j.at("nu").get<double>();
    s.cfl = j.at("cfl").get<double>();
    s.t_end = j.at("t_end").get<double>();
    s.snapshot_every = j.at("snapshot_every").get<double>();
    s.proj_tol = j.at("proj_tol").get<double>();
    const auto& ic = j.at("ic");
    s.ic = {ic.at("r0").get<double>(), ic.at("z0").get<double>(), ic.at("a").get<double>(),
            ic.at("gamma0").get<double>(), ic.at("w0").get<double>()};
    const auto& d = j.at("diagnostics");
    c.diag.N = d.at("N").get<double>();
    c.diag.T = d.at("T").get<double>();
    c.diag.s_min = d.at("s_min").get<double>();
    c.diag.ds_max = d.at("ds_max").get<double>();
    c.diag.t_start = d.value("t_start", 0.0);
    validate(c.sim);
    validate(c.diag);
    return c;
}

json theorem_json(const TheoremCheck& t) {
    return {{"N", t.N},
            {"T", t.T},
            {"M", t.M},
            {"t0", t.t0},
            {"G0", t.G0},
            {"samples", t.samples},
            {"premise", t.premise},
            {"premise_margin", t.premise_margin},
            {"branch_F", t.branch_F},
            {"branch_F_margin", t.branch_F_margin},
            {"branch_G", t.branch_G},
            {"branch_G_margin", t.branch_G_margin},
            {"intermediate_holds", t.intermediate_holds},
            {"intermediate_margin", t.intermediate_margin},
            {"F_bound_holds", t.F_bound_holds},
            {"conclusion_holds", t.conclusion_holds()}};
}

TheoremCheck theorem_from_json(const json& j) {
    TheoremCheck t;
    t.N = j.at("N");
    t.T = j.at("T");
    t.M = j.at("M");
    t.t0 = j.at("t0");
    t.G0 = j.at("G0");
    t.samples = j.at("samples");
    t.premise = j.at("premise");
    t.premise_margin = j.at("premise_margin");
    t.branch_F = j.at("branch_F");
    t.branch_F_margin = j.at("branch_F_margin");
    t.branch_G = j.at("branch_G");
    t.branch_G_margin = j.at("branch_G_margin");
    t.intermediate_holds = j.at("intermediate_holds");
    t.intermediate_margin = j.value("intermediate_margin", 0.0);
    t.F_bound_holds = j.value("F_bound_holds", true);
    return t;
}

std::string snapshot_name(std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshots/snap_%06zu.bin", k);
    return buf;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string RunManifest::snapshot_path(std::size_t i) const { return (fs::path(dir) / snapshots.at(i).path).string(); }

std::string manifest_path_in(const std::string& dir) { return (fs::path(dir) / "manifest.json").string(); }

void write_manifest(const RunManifest& m) {
    json j;
    j["format"] = "swirllab-manifest";
    j["version"] = 1;
    j["config"] = config_json(m.config);
    j["snapshots"] = json::array();
    for (const auto& s : m.snapshots)
        j["snapshots"].push_back({{"t", s.t}, {"path", s.path}});
    j["diagnostics_csv"] = m.diagnostics_csv;
    j["theorem_params"] = {{"N", m.N}, {"T", m.T}};
    j["theorem"] = m.theorem ? theorem_json(*m.theorem) : json(nullptr);
    j["complete"] = m.complete;
    j["blowup_time"] = m.blowup_time ? json(*m.blowup_time) : json(nullptr);

    const fs::path target = manifest_path_in(m.dir);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os)
            throw IoError("cannot write " + tmp.string());
        os << j.dump(2) << '\n';
        if (!os)
            throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw IoError("cannot replace " + target.string() + ": " + ec.message());
}

RunManifest read_manifest(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open manifest " + path);
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw IoError("manifest " + path + " is not valid JSON: " + e.what());
    }
    RunManifest m;
    m.dir = fs::path(path).parent_path().string();
    if (m.dir.empty())
        m.dir = ".";
    try {
        if (j.value("format", "") != "swirllab-manifest")
            throw IoError("not a swirllab manifest: " + path);
        m.config = config_from_json(j.at("config"));
        for (const auto& s : j.at("snapshots"))
            m.snapshots.push_back({s.at("t").get<double>(), s.at("path").get<std::string>()});
        m.diagnostics_csv = j.value("diagnostics_csv", "");
        m.N = j.at("theorem_params").at("N");
        m.T = j.at("theorem_params").at("T");
        if (!j.at("theorem").is_null())
            m.theorem = theorem_from_json(j.at("theorem"));
        m.complete = j.at("complete");
        if (!j.at("blowup_time").is_null())
            m.blowup_time = j.at("blowup_time").get<double>();
    } catch (const json::exception& e) {
        throw IoError("manifest " + path + " is malformed: " + e.what());
    }
    for (std::size_t i = 1; i < m.snapshots.size(); ++i)
        if (!(m.snapshots[i].t > m.snapshots[i - 1].t))
            throw DomainError("manifest snapshot times are not strictly increasing");
    return m;
}

void check_snapshots(const RunManifest& m) {
    for (std::size_t i = 0; i < m.snapshots.size(); ++i) {
        const auto f = read_snapshot(m.snapshot_path(i));
        if (f.t != m.snapshots[i].t)
            throw IoError("snapshot " + m.snapshots[i].path + " time does not match the manifest");
    }
}

RunManifest run_simulation(const RunConfig& cfg, const std::string& out_dir, const ProgressFn& log) {
    validate(cfg.sim);
    validate(cfg.diag);
    std::error_code ec;
    fs::create_directories(fs::path(out_dir) / "snapshots", ec);
    if (ec)
        throw IoError("cannot create " + out_dir + ": " + ec.message());

    const auto& sc = cfg.sim;
    std::vector<double> targets;
    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * sc.snapshot_every;
        if (t > sc.t_end * (1.0 + 1e-12))
            break;
        targets.push_back(t);
    }
    if (sc.t_end - targets.back() > 1e-12 * std::max(1.0, sc.t_end))
        targets.push_back(sc.t_end);

    RunManifest m;
    m.dir = out_dir;
    m.config = cfg;
    m.N = cfg.diag.N;
    m.T = cfg.diag.T;

    Solver solver(sc);
    AxisymField f;
    const std::string mpath = manifest_path_in(out_dir);
    if (fs::exists(mpath)) {
        RunManifest old = read_manifest(mpath);
        if (config_json(old.config) != config_json(cfg))
            throw ConfigError("output directory " + out_dir + " holds a run with a different configuration");
        if (old.complete) {
            if (log)
                log("run already complete");
            return old;
        }
        m.snapshots = old.snapshots;
        if (!m.snapshots.empty()) {
            f = read_snapshot(m.snapshot_path(m.snapshots.size() - 1));
            if (log)
                log("resuming at t=" + num(f.t));
        }
    }
    if (m.snapshots.empty()) {
        f = solver.init_field();
        f.t = 0.0;
        write_snapshot(f, (fs::path(out_dir) / snapshot_name(0)).string());
        m.snapshots.push_back({0.0, snapshot_name(0)});
        write_manifest(m);
    }

    try {
        for (std::size_t k = m.snapshots.size(); k < targets.size(); ++k) {
            const double target = targets[k];
            const double eps = 1e-12 * std::max(1.0, target);
            while (f.t < target - eps) {
                double dt = solver.cfl_dt(f);
                if (f.t + dt * (1.0 + 1e-9) >= target)
                    dt = target - f.t;
                f = solver.step(f, dt);
            }
            f.t = target;
            write_snapshot(f, (fs::path(out_dir) / snapshot_name(k)).string());
            m.snapshots.push_back({target, snapshot_name(k)});
            write_manifest(m);
            if (log)
                log("snapshot " + std::to_string(k) + " t=" + num(target));
        }
    } catch (const NumericalBlowUp& e) {
        m.blowup_time = e.time;
        write_manifest(m);
        throw;
    }
    m.complete = true;
    write_manifest(m);
    return m;
}

RunManifest cmd_run(const std::string& config_path, const std::string& out_dir, const ProgressFn& log) {
    return run_simulation(load_config(config_path), out_dir, log);
}

DiagnoseResult diagnose_fields(const std::vector<AxisymField>& fields, const DiagnosticsConfig& dc) {
    validate(dc);
    const std::size_t n = fields.size();
    DiagnoseResult out;
    out.samples.resize(n);
    std::vector<std::optional<double>> xi(n);
    std::optional<double> prev;
    for (std::size_t i = 0; i < n; ++i) {
        auto& s = out.samples[i];
        s.t = fields[i].t;
        try {
            const BoundaryShear bs = boundary_shear(fields[i]);
            const XiLocation loc = locate_xi(bs, prev);
            s.jump_flag = loc.jump_flag;
            xi[i] = ShearField(bs).refine_max(loc.xi_r);
            s.xi_r = *xi[i];
            prev = loc.xi_r;
        } catch (const Error& e) {
            s.valid = false;
            s.note = e.what();
            s.xi_r = std::nan("");
        }
    }

    SampleOptions so;
    so.s_min = dc.s_min;
    so.ds_max = dc.ds_max;
    parallel_for(n, [&](std::size_t i) {
        if (!xi[i])
            return;
        const bool jump = out.samples[i].jump_flag;
        try {
            out.samples[i] = sample_diagnostics(fields[i], *xi[i], so);
            out.samples[i].jump_flag = jump;
        } catch (const Error& e) {
            auto& s = out.samples[i];
            s.valid = false;
            s.note = e.what();
        }
    });

    std::vector<DiagnosticSample> valid, window;
    for (const auto& s : out.samples)
        if (s.valid) {
            valid.push_back(s);
            if (s.t >= dc.t_start * (1.0 - 1e-12))
                window.push_back(s);
        }
    if (valid.empty())
        throw InsufficientDataError("no snapshot is diagnosable");

    const double nu = fields.front().nu;
    try {
        out.printed = ode_residual(out.samples, OdeForm::Printed, nu);
        out.corrected = ode_residual(out.samples, OdeForm::Corrected, nu);
    } catch (const InsufficientDataError& e) {
        out.footer.push_back(std::string("ode_residual unavailable: ") + e.what());
    }
    try {
        out.theorem = theorem_check(window, dc.N, dc.T);
        for (auto& line : theorem_footer(*out.theorem))
            out.footer.push_back(line);
    } catch (const Error& e) {
        out.footer.push_back(std::string("theorem_check unavailable: ") + e.what());
    }
    if (out.printed) {
        out.footer.push_back("ode_residual relative printed=" + num(out.printed->relative)
                             + " corrected=" + num(out.corrected->relative));
        std::string ex;
        for (auto i : out.printed->excluded)
            ex += " " + std::to_string(i);
        if (!ex.empty())
            out.footer.push_back("ode_residual excluded rows:" + ex);
    }
    std::size_t regime_bad = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = out.samples[i];
        if (s.valid && !s.regime_ok)
            ++regime_bad;
        if (!s.note.empty())
            out.footer.push_back("row " + std::to_string(i) + ": " + s.note);
    }
    out.footer.push_back("rows=" + std::to_string(n) + " diagnosable=" + std::to_string(valid.size())
                         + " regime_violations=" + std::to_string(regime_bad));
    return out;
}

DiagnoseResult cmd_diagnose(const std::string& manifest_path, const DiagnoseOptions& opt) {
    RunManifest m = read_manifest(manifest_path);
    DiagnosticsConfig dc = m.config.diag;
    if (opt.N)
        dc.N = *opt.N;
    if (opt.T)
        dc.T = *opt.T;
    if (opt.s_min)
        dc.s_min = *opt.s_min;
    if (opt.ds_max)
        dc.ds_max = *opt.ds_max;
    if (opt.t_start)
        dc.t_start = *opt.t_start;

    std::vector<AxisymField> fields;
    for (std::size_t i = 0; i < m.snapshots.size(); ++i)
        fields.push_back(read_snapshot(m.snapshot_path(i)));
    if (fields.empty())
        throw InsufficientDataError("manifest lists no snapshots");

    DiagnoseResult r = diagnose_fields(fields, dc);
    r.csv_path = opt.csv_path.empty() ? (fs::path(m.dir) / "diagnostics.csv").string() : opt.csv_path;
    {
        std::ofstream os(r.csv_path);
        if (!os)
            throw IoError("cannot write " + r.csv_path);
        write_diagnostics_csv(os, r.samples, r.printed ? *r.printed : OdeResidual{}, r.footer);
        if (!os)
            throw IoError("write failed for " + r.csv_path);
    }
    m.diagnostics_csv = fs::absolute(r.csv_path).lexically_proximate(fs::absolute(m.dir)).string();
    m.N = dc.N;
    m.T = dc.T;
    m.theorem = r.theorem;
    write_manifest(m);
    return r;
}

void write_shear_dump(std::ostream& os, const std::vector<AxisymField>& fields) {
    os << "t,r,dzur,dzutheta,vh_mag,S\n";
    for (const auto& f : fields) {
        const auto bs = boundary_shear(f);
        for (std::size_t i = 0; i < bs.r_grid.size(); ++i) {
            os << num(f.t) << ',' << num(bs.r_grid[i]) << ',' << num(bs.dzur[i]) << ',' << num(bs.dzutheta[i]) << ','
               << num(bs.vh_mag[i]) << ',';
            if (bs.S_defined(i))
                os << num(bs.S[i]);
            os << '\n';
        }
    }
}

void write_vorticity_profile(std::ostream& os, const AxisymField& f, double r) {
    const int i = std::clamp(static_cast<int>(std::lround(r / f.dr)), 1, f.nr - 2);
    auto at = [&](const std::vector<double>& v, int a, int b) { return v[f.idx(a, b)]; };
    auto dz = [&](const std::vector<double>& v, int j) {
        if (j == 0)
            return (-3.0 * at(v, i, 0) + 4.0 * at(v, i, 1) - at(v, i, 2)) / (2.0 * f.dz);
        if (j == f.nz - 1)
            return (3.0 * at(v, i, j) - 4.0 * at(v, i, j - 1) + at(v, i, j - 2)) / (2.0 * f.dz);
        return (at(v, i, j + 1) - at(v, i, j - 1)) / (2.0 * f.dz);
    };
    auto dr = [&](const std::vector<double>& v, int j) { return (at(v, i + 1, j) - at(v, i - 1, j)) / (2.0 * f.dr); };
    const double rr = f.r(i);
    os << "t,r,z,omega_mag,dir_r,dir_theta,dir_z\n";
    for (int j = 0; j < f.nz; ++j) {
        const double wr = -dz(f.u_theta, j);
        const double wt = dz(f.u_r, j) - dr(f.u_z, j);
        const double wz = dr(f.u_theta, j) + at(f.u_theta, i, j) / rr;
        const double m = std::sqrt(wr * wr + wt * wt + wz * wz);
        const double s = m > 0 ? 1.0 / m : 0.0;
        os << num(f.t) << ',' << num(rr) << ',' << num(f.z(j)) << ',' << num(m) << ',' << num(wr * s) << ','
           << num(wt * s) << ',' << num(wz * s) << '\n';
    }
}

void cmd_export(const std::string& manifest_path, const std::string& csv_path, const std::string& profile_path) {
    const RunManifest m = read_manifest(manifest_path);
    std::vector<AxisymField> fields;
    for (std::size_t i = 0; i < m.snapshots.size(); ++i)
        fields.push_back(read_snapshot(m.snapshot_path(i)));
    {
        std::ofstream os(csv_path);
        if (!os)
            throw IoError("cannot write " + csv_path);
        write_shear_dump(os, fields);
    }
    if (profile_path.empty())
        return;
    std::size_t best = 0;
    double peak = -1.0, xi = 0.0;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        const auto bs = boundary_shear(fields[k]);
        const auto mx = std::max_element(bs.vh_mag.begin(), bs.vh_mag.end());
        if (*mx > peak) {
            peak = *mx;
            best = k;
            xi = bs.r_grid[static_cast<std::size_t>(mx - bs.vh_mag.begin())];
        }
    }
    if (!(peak > 0))
        throw DegenerateFieldError("boundary shear vanishes in every snapshot");
    std::ofstream os(profile_path);
    if (!os)
        throw IoError("cannot write " + profile_path);
    write_vorticity_profile(os, fields[best], xi);
}

} // namespace swirl
