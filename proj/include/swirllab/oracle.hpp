#pragma once

#include <swirllab/frame.hpp>
#include <swirllab/geometry.hpp>
#include <swirllab/manufactured.hpp>

namespace swirl {

enum class OracleQuantity { Divergence, Laplacian, Advection };

// Cartesian computation from exact derivatives, projected on (dz, drbar, f dthetabar)
// through a finite-difference Jacobian of the chart. Scalars occupy entry 0.
Vec3 frame_transform_oracle(const ManufacturedField& u, const CurvilinearFrame& frame, OracleQuantity q,
                            double z, double rbar, double tb);

// Frame components of a Cartesian vector at a chart point.
Vec3 project_to_frame(const Vec3& w, const CurvilinearFrame& frame, double z, double rbar, double tb);

// Christoffel symbols from finite differences of the metric g = J^T J.
ChristoffelTable christoffel_oracle(const CurvilinearFrame& frame, double rbar, double tb);

// Hodge star from the metric g = J^T J with the Levi-Civita symbol; same component
// conventions as hodge_star_2form / hodge_star_1form.
Vec3 hodge_2form_oracle(const Vec3& w, const CurvilinearFrame& frame, double rbar, double tb);
Vec3 hodge_1form_oracle(const Vec3& w, const CurvilinearFrame& frame, double rbar, double tb);

// (1/f) dz dthetabar p and dthetabar dz p at (z, 0, tb) from the exact Cartesian Hessian.
std::array<double, 2> pressure_mixed_oracle(const ManufacturedField& u, const CurvilinearFrame& frame, double z,
                                            double tb);

// dz, drbar, dthetabar derivatives at the chart origin of the curl-curl components,
// taken from the Cartesian Laplacian (curl curl u = -lap u for divergence-free u).
BoundaryIdentities boundary_identities_oracle(const ManufacturedField& u, const CurvilinearFrame& frame);

} // namespace swirl
