#pragma once

#include <optional>
#include <string>

namespace swirl {

struct RingParams {
    double r0 = 0.35;
    double z0 = 0.25;
    double a = 0.08;
    double gamma0 = 0.01;
    double w0 = 1.0;
};

struct SimConfig {
    int nr = 64;
    int nz = 64;
    double r_max = 1.0;
    double z_max = 1.0;
    double nu = 1.0;
    double cfl = 0.5;
    double t_end = 0.05;
    RingParams ic;
    double snapshot_every = 0.0025;
    double proj_tol = 1e-8;

    double dr() const { return r_max / (nr - 1); }
    double dz() const { return z_max / (nz - 1); }
};

struct DiagnosticsConfig {
    double N = 1.0;
    double T = 0.05;
    double s_min = 0.95;
    double ds_max = 0.1;
    double t_start = 0.0; // time origin of the theorem window
};

struct RunConfig {
    SimConfig sim;
    DiagnosticsConfig diag;
};

// Throws ConfigError naming the first violated invariant.
void validate(const SimConfig& c);
void validate(const DiagnosticsConfig& d);

RunConfig parse_config(const std::string& toml_text);
RunConfig load_config(const std::string& path);

} // namespace swirl
