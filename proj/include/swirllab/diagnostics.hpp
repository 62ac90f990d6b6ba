#pragma once

#include <swirllab/field.hpp>
#include <swirllab/geometry.hpp>
#include <swirllab/shear.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace swirl {

struct XiLocation {
    double xi_r = 0;
    std::size_t index = 0;
    bool jump_flag = false;
};

// Argmax of |v_h| (ties to the smallest radius) refined by a parabola through
// the neighbouring nodes; jump_flag marks a move of more than 5 cells.
XiLocation locate_xi(const BoundaryShear& shear, std::optional<double> previous = std::nullopt);

struct DiagnosticSample {
    double t = 0;
    double xi_r = 0;
    bool jump_flag = false;
    double vh_at_xi = 0;
    double S_at_xi = 0;
    double dS_dr = 0;
    double kappa = 0, dkappa = 0;
    double alpha1 = 0, alpha2 = 0, alpha3 = 0;
    double beta1 = 0, beta2 = 0, beta3 = 0, beta4 = 0, beta5 = 0;
    double F_proof = 0, F_thm = 0, G = 0;
    double G_printed = 0; // drbar u_thetabar at the origin, as Theorem 1 prints it
    double eps_align = 0, eps_max = 0;
    bool regime_ok = true;
    bool valid = true; // false when no frame could be built
    std::string note;

    void fill_derived();
};

struct SampleOptions {
    double s_min = 0.95;
    double ds_max = 0.1;
    bool strict_regime = false; // throw RegimeError instead of recording it
    int lattice_per_step = 4;
};

// Finite-difference steps used at a snapshot: h = max(1e-3, 2 dr) in-plane, 2 dz normal.
FdSteps diagnostic_steps(const AxisymField& field);

DiagnosticSample sample_diagnostics(const AxisymField& field, double xi_r, const SampleOptions& opt = {});

// Derivative quantities of an arbitrary frame field at the chart origin.
DiagnosticSample sample_frame_quantities(const FrameField& u, const CurvilinearFrame& frame, const FdSteps& h);

enum class OdeForm { Printed, Corrected };

struct OdeResidual {
    std::vector<std::optional<double>> residual;
    std::vector<std::size_t> excluded; // interior samples skipped for jumps or invalid data
    double max_abs = 0;
    double max_scale = 0;
    double relative = 0;
};

// Printed: d/dt alpha1 - kappa^2 alpha1 - F_proof.
// Corrected: d/dt alpha1 + nu (kappa^2 alpha1 + 2 kappa' alpha2 + kappa beta1 + 3 kappa beta2 + F_proof).
OdeResidual ode_residual(const std::vector<DiagnosticSample>& series, OdeForm form = OdeForm::Printed,
                         double nu = 1.0);

// alpha1(t) = e^{K(t)} (alpha1(0) + int_0^t e^{-K} F), K = int kappa^2, trapezoidal rule.
std::vector<double> integrating_factor_solution(const std::vector<double>& t, const std::vector<double>& kappa,
                                                const std::vector<double>& F, double alpha1_0);

struct TheoremCheck {
    double N = 0, T = 0, M = 0;
    double t0 = 0;
    double G0 = 0;
    bool premise = false;
    bool branch_F = false;
    bool branch_G = false;
    double premise_margin = 0;
    double branch_F_margin = 0; // sup F_thm - N
    double branch_G_margin = 0; // sup |G| - e^{M^2 T} (|G0| - T N)
    bool F_bound_holds = false; // |F_proof| <= F_thm + |beta4| at every sample
    bool intermediate_holds = false;
    double intermediate_margin = 0; // min over t of |G(t)| - e^{int kappa^2}(|G0| - N (t - t0))
    std::size_t samples = 0;

    bool conclusion_holds() const { return !premise || branch_F || branch_G; }
};

TheoremCheck theorem_check(const std::vector<DiagnosticSample>& series, double N, double T);

// CSV with the fixed column set; residual column empty where undefined.
extern const char* const kDiagnosticsHeader;
void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticSample>& series, const OdeResidual& res,
                           const std::vector<std::string>& footer = {});
std::vector<DiagnosticSample> read_diagnostics_csv(std::istream& is);

std::vector<std::string> theorem_footer(const TheoremCheck& tc);

} // namespace swirl
