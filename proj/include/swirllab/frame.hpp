#pragma once

#include <swirllab/shear.hpp>
#include <swirllab/vec.hpp>

#include <vector>

namespace swirl {

struct FrameOptions {
    double delta = 0.0;      // arc half-range; <= 0 selects min(pi|y|/2, 0.3/max kappa)
    double spacing = 2.5e-4; // theta-bar lattice spacing
    int substeps = 4;        // RK4 steps per lattice interval
    double vh_min_rel = 1e-8; // relative to |v_h(y)|
    double vh_min_abs = 0.0;
    double kappa_min = 1e-8;
};

// Curve-following chart (z, rbar, thetabar) -> phi(thetabar) + rbar N(thetabar) + z e_z.
// Samples live on the lattice thetabar_k = k * spacing, |k| <= n_ext.
struct CurvilinearFrame {
    double y = 0;
    double spacing = 0;
    double delta = 0;
    int n_ext = 0;
    std::vector<double> thetabar_grid;
    std::vector<Vec2> phi, tangent, normal;
    std::vector<double> kappa, dkappa;
    bool flat = false; // synthetic frame with kappa == 0 allowed

    std::size_t size() const { return thetabar_grid.size(); }
    double max_kappa() const;
    double rbar_limit() const; // 1 / max kappa

    Vec2 phi_at(double tb) const;
    Vec2 tangent_at(double tb) const;
    Vec2 normal_at(double tb) const;
    double kappa_at(double tb) const;
    double dkappa_at(double tb) const;

    double f(double rbar, double tb) const { return 1.0 - rbar * kappa_at(tb); }

    void check(double rbar, double tb) const;
    Vec3 chart(double z, double rbar, double tb) const;

private:
    template <class T>
    T interp(const std::vector<T>& v, double tb) const;
};

CurvilinearFrame integrate_curve(const ShearField& shear, double y, const FrameOptions& opt = {});
// Convenience overload: n samples per side over [-delta, delta].
CurvilinearFrame integrate_curve(const BoundaryShear& shear, double y, double delta, int n);

// Exact frames used as references.
CurvilinearFrame circle_frame(double R, double delta, double spacing);
CurvilinearFrame line_frame(double y, double delta, double spacing);

} // namespace swirl
