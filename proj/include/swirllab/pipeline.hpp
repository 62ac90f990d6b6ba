#pragma once

#include <swirllab/config.hpp>
#include <swirllab/diagnostics.hpp>
#include <swirllab/field.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace swirl {

struct SnapshotEntry {
    double t = 0;
    std::string path; // relative to the manifest directory
};

struct RunManifest {
    RunConfig config;
    std::vector<SnapshotEntry> snapshots;
    std::string diagnostics_csv;
    double N = 0, T = 0;
    std::optional<TheoremCheck> theorem;
    bool complete = false;
    std::optional<double> blowup_time;

    std::string dir; // directory holding manifest.json; not serialized
    std::string snapshot_path(std::size_t i) const;
};

std::string manifest_path_in(const std::string& dir);
void write_manifest(const RunManifest& m);
// Throws IoError when unreadable, ConfigError when the stored config is invalid,
// DomainError when snapshot times are not strictly increasing.
RunManifest read_manifest(const std::string& path);
// Checks that every listed snapshot exists and parses.
void check_snapshots(const RunManifest& m);

using ProgressFn = std::function<void(const std::string&)>;

// Runs from t = 0 (or resumes from the last stored snapshot) to t_end, writing
// snapshots at exact multiples of snapshot_every plus t_end.
RunManifest run_simulation(const RunConfig& cfg, const std::string& out_dir, const ProgressFn& log = {});
RunManifest cmd_run(const std::string& config_path, const std::string& out_dir, const ProgressFn& log = {});

struct DiagnoseOptions {
    std::optional<double> N, T, s_min, ds_max, t_start;
    std::string csv_path; // default: diagnostics.csv next to the manifest
};

struct DiagnoseResult {
    std::vector<DiagnosticSample> samples;
    std::optional<OdeResidual> printed, corrected;
    std::optional<TheoremCheck> theorem;
    std::vector<std::string> footer;
    std::string csv_path;
};

// Per-snapshot diagnostics; rows that cannot be diagnosed are kept with valid = false.
DiagnoseResult diagnose_fields(const std::vector<AxisymField>& fields, const DiagnosticsConfig& dc);
DiagnoseResult cmd_diagnose(const std::string& manifest_path, const DiagnoseOptions& opt = {});

// Boundary-shear dump: t, r, dzur, dzutheta, vh_mag, S (S empty where undefined).
void write_shear_dump(std::ostream& os, const std::vector<AxisymField>& fields);
// Vorticity magnitude and direction along the grid column nearest r.
void write_vorticity_profile(std::ostream& os, const AxisymField& f, double r);
// Shear dump to csv_path; optional vorticity profile through xi at the time of peak |v_h|.
void cmd_export(const std::string& manifest_path, const std::string& csv_path,
                const std::string& profile_path = {});

} // namespace swirl
