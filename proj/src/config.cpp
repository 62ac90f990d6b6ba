#include <swirllab/config.hpp>
#include <swirllab/errors.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace swirl {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok)
        throw ConfigError(msg);
}

template <class T>
void read(const toml::table& t, const char* key, T& out) {
    auto node = t[key];
    if (!node)
        return;
    if constexpr (std::is_same_v<T, int>) {
        auto v = node.value<int64_t>();
        require(v.has_value(), std::string("key '") + key + "' must be an integer");
        out = static_cast<int>(*v);
    } else {
        auto v = node.value<double>();
        require(v.has_value(), std::string("key '") + key + "' must be a number");
        out = *v;
    }
}

void only_keys(const toml::table& t, std::initializer_list<std::string_view> keys, const std::string& where) {
    for (const auto& [k, v] : t) {
        (void)v;
        require(std::find(keys.begin(), keys.end(), k.str()) != keys.end(),
                "unknown key '" + std::string(k.str()) + "'" + where);
    }
}

} // namespace

void validate(const SimConfig& c) {
    require(c.nr >= 16 && c.nz >= 16, "nr and nz must be >= 16");
    require(c.r_max > 0 && c.z_max > 0, "r_max and z_max must be positive");
    require(c.nu > 0, "nu must be positive");
    require(c.cfl > 0 && c.cfl < 1, "cfl must lie in (0,1)");
    require(c.t_end > 0, "t_end must be positive");
    require(c.snapshot_every > 0, "snapshot_every must be positive");
    require(c.proj_tol > 0, "proj_tol must be positive");
    const auto& ic = c.ic;
    require(ic.a > 0, "ic.a must be positive");
    require(std::isfinite(ic.gamma0) && std::isfinite(ic.w0), "ic amplitudes must be finite");
    require(ic.r0 - 2 * ic.a > 0 && ic.r0 + 2 * ic.a < c.r_max, "vortex core must lie inside the domain in r");
    require(ic.z0 - 2 * ic.a > 0 && ic.z0 + 2 * ic.a < c.z_max, "vortex core must lie inside the domain in z");
}

void validate(const DiagnosticsConfig& d) {
    require(d.N > 0, "diagnostics.N must be positive");
    require(d.T > 0, "diagnostics.T must be positive");
    require(d.s_min >= 0 && d.s_min <= 1, "diagnostics.s_min must lie in [0,1]");
    require(d.ds_max > 0, "diagnostics.ds_max must be positive");
    require(d.t_start >= 0, "diagnostics.t_start must be non-negative");
}

RunConfig parse_config(const std::string& text) {
    toml::table tbl;
    try {
        tbl = toml::parse(text);
    } catch (const toml::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + std::string(e.description()));
    }
    only_keys(tbl, {"nr", "nz", "r_max", "z_max", "nu", "cfl", "t_end", "snapshot_every", "proj_tol", "ic", "diagnostics"},
              "");
    RunConfig rc;
    auto& c = rc.sim;
    read(tbl, "nr", c.nr);
    read(tbl, "nz", c.nz);
    read(tbl, "r_max", c.r_max);
    read(tbl, "z_max", c.z_max);
    read(tbl, "nu", c.nu);
    read(tbl, "cfl", c.cfl);
    read(tbl, "t_end", c.t_end);
    read(tbl, "snapshot_every", c.snapshot_every);
    read(tbl, "proj_tol", c.proj_tol);
    if (auto ic = tbl["ic"].as_table()) {
        only_keys(*ic, {"r0", "z0", "a", "gamma0", "w0"}, " in [ic]");
        read(*ic, "r0", c.ic.r0);
        read(*ic, "z0", c.ic.z0);
        read(*ic, "a", c.ic.a);
        read(*ic, "gamma0", c.ic.gamma0);
        read(*ic, "w0", c.ic.w0);
    }
    if (auto d = tbl["diagnostics"].as_table()) {
        only_keys(*d, {"N", "T", "s_min", "ds_max", "t_start"}, " in [diagnostics]");
        read(*d, "N", rc.diag.N);
        read(*d, "T", rc.diag.T);
        read(*d, "s_min", rc.diag.s_min);
        read(*d, "ds_max", rc.diag.ds_max);
        read(*d, "t_start", rc.diag.t_start);
    }
    validate(rc.sim);
    validate(rc.diag);
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace swirl
