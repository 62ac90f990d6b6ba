#pragma once

#include <swirllab/field.hpp>
#include <swirllab/spline.hpp>
#include <swirllab/vec.hpp>

#include <functional>
#include <vector>

namespace swirl {

// Wall trace v_h = (dz u_r) e_r + (dz u_theta) e_theta and the rate of swirl.
struct BoundaryShear {
    std::vector<double> r_grid;
    std::vector<double> dzur;
    std::vector<double> dzutheta;
    std::vector<double> S;      // NaN where vh_mag == 0
    std::vector<double> vh_mag;

    bool S_defined(std::size_t i) const { return vh_mag[i] > 0; }
};

BoundaryShear boundary_shear(const AxisymField& field);

BoundaryShear make_shear(std::vector<double> r_grid, std::vector<double> dzur, std::vector<double> dzutheta);

// Shear with constant rate of swirl s and magnitude profile g(r).
BoundaryShear synthetic_shear(double s, const std::function<double(double)>& g, double r_max, int n);

// S e_theta(theta) + sqrt(1 - S^2) e_r(theta).
Vec2 swirl_direction(double S, double theta);

// Spline interpolant of the shear as a planar vector field on the wall.
class ShearField {
public:
    explicit ShearField(const BoundaryShear& s);

    Vec2 operator()(const Vec2& x) const;
    double dzur(double r) const { return ur_(r); }
    double dzutheta(double r) const { return ut_(r); }
    double vh(double r) const;
    double S(double r) const;
    double dS_dr(double r) const;
    double r_max() const { return ur_.x_max(); }

    // Local maximiser of |v_h| near r0 (bracketed to +-2 grid cells).
    double refine_max(double r0) const;

private:
    CubicSpline ur_, ut_;
    double dr_;
};

} // namespace swirl
