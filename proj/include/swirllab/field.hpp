#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace swirl {

// Nodal values on r_i = i*dr, z_j = j*dz, stored row-major with index i*nz + j.
struct AxisymField {
    int nr = 0;
    int nz = 0;
    double dr = 0;
    double dz = 0;
    double nu = 1;
    double t = 0;
    std::vector<double> u_r, u_theta, u_z, p;

    AxisymField() = default;
    AxisymField(int nr, int nz, double dr, double dz, double nu = 1.0);

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * nz + j; }
    double r(int i) const { return i * dr; }
    double z(int j) const { return j * dz; }
    std::size_t size() const { return static_cast<std::size_t>(nr) * nz; }
};

// Cell-averaged cylindrical divergence, one value per cell (i,j) spanning nodes
// i..i+1, j..j+1; layout (nr-1)*(nz-1) row-major.
std::vector<double> discrete_divergence(const AxisymField& f);
double max_divergence(const AxisymField& f);

// Sum of r*|u|^2*dr*dz over nodes.
double kinetic_energy(const AxisymField& f);

bool all_finite(const AxisymField& f);

void write_snapshot(const AxisymField& f, const std::string& path);
AxisymField read_snapshot(const std::string& path);

} // namespace swirl
