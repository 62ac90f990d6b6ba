#include <swirllab/errors.hpp>
#include <swirllab/field.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace swirl {

AxisymField::AxisymField(int nr_, int nz_, double dr_, double dz_, double nu_)
    : nr(nr_), nz(nz_), dr(dr_), dz(dz_), nu(nu_), t(0),
      u_r(size(), 0.0), u_theta(size(), 0.0), u_z(size(), 0.0), p(size(), 0.0) {}

std::vector<double> discrete_divergence(const AxisymField& f) {
    std::vector<double> div(static_cast<std::size_t>(f.nr - 1) * (f.nz - 1));
    for (int i = 0; i + 1 < f.nr; ++i) {
        double ri = f.r(i), rp = f.r(i + 1), rc = (i + 0.5) * f.dr;
        for (int j = 0; j + 1 < f.nz; ++j) {
            double flux_r = 0.5 * f.dz * (rp * (f.u_r[f.idx(i + 1, j)] + f.u_r[f.idx(i + 1, j + 1)])
                                          - ri * (f.u_r[f.idx(i, j)] + f.u_r[f.idx(i, j + 1)]));
            double flux_z = 0.5 * rc * f.dr * (f.u_z[f.idx(i, j + 1)] + f.u_z[f.idx(i + 1, j + 1)]
                                               - f.u_z[f.idx(i, j)] - f.u_z[f.idx(i + 1, j)]);
            div[static_cast<std::size_t>(i) * (f.nz - 1) + j] = (flux_r + flux_z) / (rc * f.dr * f.dz);
        }
    }
    return div;
}

double max_divergence(const AxisymField& f) {
    double m = 0;
    for (double d : discrete_divergence(f))
        m = std::max(m, std::abs(d));
    return m;
}

double kinetic_energy(const AxisymField& f) {
    double e = 0;
    for (int i = 0; i < f.nr; ++i)
        for (int j = 0; j < f.nz; ++j) {
            auto k = f.idx(i, j);
            e += f.r(i) * (f.u_r[k] * f.u_r[k] + f.u_theta[k] * f.u_theta[k] + f.u_z[k] * f.u_z[k]);
        }
    return e * f.dr * f.dz;
}

bool all_finite(const AxisymField& f) {
    auto ok = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    return ok(f.u_r) && ok(f.u_theta) && ok(f.u_z) && ok(f.p);
}

namespace {

constexpr char kMagic[4] = {'A', 'X', 'N', 'S'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put_le(std::ostream& os, T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(b, b + sizeof(T));
    os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
    unsigned char b[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(b), sizeof(T)))
        throw IoError("truncated snapshot");
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(b, b + sizeof(T));
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

} // namespace

void write_snapshot(const AxisymField& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError("cannot write snapshot " + path);
    os.write(kMagic, 4);
    put_le<std::uint32_t>(os, kVersion);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.nr));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.nz));
    put_le(os, f.dr);
    put_le(os, f.dz);
    put_le(os, f.nu);
    put_le(os, f.t);
    for (const auto* arr : {&f.u_r, &f.u_theta, &f.u_z, &f.p})
        for (double v : *arr)
            put_le(os, v);
    if (!os)
        throw IoError("write failed for snapshot " + path);
}

AxisymField read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open snapshot " + path);
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("bad snapshot magic in " + path);
    if (get_le<std::uint32_t>(is) != kVersion)
        throw IoError("unsupported snapshot version in " + path);
    int nr = static_cast<int>(get_le<std::uint32_t>(is));
    int nz = static_cast<int>(get_le<std::uint32_t>(is));
    double dr = get_le<double>(is);
    double dz = get_le<double>(is);
    double nu = get_le<double>(is);
    AxisymField f(nr, nz, dr, dz, nu);
    f.t = get_le<double>(is);
    for (auto* arr : {&f.u_r, &f.u_theta, &f.u_z, &f.p})
        for (double& v : *arr)
            v = get_le<double>(is);
    return f;
}

} // namespace swirl
