#include <swirllab/diagnostics.hpp>
#include <swirllab/errors.hpp>
#include <swirllab/frame.hpp>
#include <swirllab/sampler.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace swirl {

XiLocation locate_xi(const BoundaryShear& shear, std::optional<double> previous) {
    const auto& v = shear.vh_mag;
    const auto& r = shear.r_grid;
    if (v.empty() || v.size() != r.size())
        throw InsufficientDataError("boundary shear is empty");
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best])
            best = i;
    if (!(v[best] > 0))
        throw DegenerateFieldError("boundary shear vanishes identically");

    XiLocation out;
    out.index = best;
    out.xi_r = r[best];
    if (best > 0 && best + 1 < v.size()) {
        const double ym = v[best - 1], y0 = v[best], yp = v[best + 1];
        const double denom = ym - 2.0 * y0 + yp;
        if (denom < 0) {
            const double h = 0.5 * (r[best + 1] - r[best - 1]);
            double off = 0.5 * (ym - yp) / denom;
            off = std::clamp(off, -0.5, 0.5);
            out.xi_r = r[best] + off * h;
        }
    }
    if (previous && r.size() > 1) {
        const double cell = r[1] - r[0];
        out.jump_flag = std::abs(out.xi_r - *previous) > 5.0 * cell;
    }
    return out;
}

void DiagnosticSample::fill_derived() {
    F_proof = -alpha3 - beta3 - 2.0 * beta4 - beta5;
    F_thm = std::abs(alpha3) + std::abs(beta3) + std::abs(beta4) + std::abs(beta5);
    G = alpha1;
}

FdSteps diagnostic_steps(const AxisymField& field) {
    const double h = std::max(1e-3, 2.0 * field.dr);
    return {2.0 * field.dz, h, h};
}

DiagnosticSample sample_frame_quantities(const FrameField& u, const CurvilinearFrame& frame, const FdSteps& h) {
    FrameOperators op{u, frame, h};
    auto P = [&](int c, int oz, int orr, int ot) { return op.partial(c, 0.0, 0.0, 0.0, oz, orr, ot); };
    DiagnosticSample s;
    s.kappa = frame.kappa_at(0.0);
    s.dkappa = frame.dkappa_at(0.0);
    s.alpha1 = P(2, 1, 0, 0);
    s.alpha2 = P(1, 1, 0, 0);
    s.alpha3 = P(2, 3, 0, 0);
    s.beta1 = P(2, 1, 1, 0);
    s.beta2 = P(1, 1, 0, 1);
    s.beta3 = P(1, 1, 1, 1);
    s.beta4 = P(2, 1, 0, 2);
    s.beta5 = P(2, 1, 2, 0);
    s.G_printed = P(2, 0, 1, 0);
    s.fill_derived();
    return s;
}

DiagnosticSample sample_diagnostics(const AxisymField& field, double xi_r, const SampleOptions& opt) {
    const BoundaryShear bs = boundary_shear(field);
    const ShearField sf(bs);

    DiagnosticSample s;
    s.t = field.t;
    s.xi_r = xi_r;
    s.vh_at_xi = sf.vh(xi_r);
    s.S_at_xi = sf.S(xi_r);
    s.dS_dr = sf.dS_dr(xi_r);
    s.regime_ok = std::abs(s.S_at_xi) >= opt.s_min && std::abs(s.dS_dr) <= opt.ds_max;
    if (!s.regime_ok) {
        std::ostringstream msg;
        msg << "swirl dominance violated at r=" << xi_r << ": S=" << s.S_at_xi << " dS/dr=" << s.dS_dr;
        if (opt.strict_regime)
            throw RegimeError(msg.str());
        s.note = msg.str();
    }

    const FdSteps h = diagnostic_steps(field);
    FrameOptions fo;
    fo.spacing = h.ht / std::max(1, opt.lattice_per_step);
    fo.delta = std::max(4.0 * h.ht, 0.3 * xi_r);
    const CurvilinearFrame frame = integrate_curve(sf, xi_r, fo);
    if (frame.delta < 2.5 * h.ht || frame.rbar_limit() < 2.5 * h.hr)
        throw ChartError("chart at xi is too small for the finite-difference stencil");

    const AxisymSampler smp(field);
    const FrameView view(smp, frame);
    DiagnosticSample q = sample_frame_quantities(view, frame, h);
    q.t = s.t;
    q.xi_r = s.xi_r;
    q.vh_at_xi = s.vh_at_xi;
    q.S_at_xi = s.S_at_xi;
    q.dS_dr = s.dS_dr;
    q.regime_ok = s.regime_ok;
    q.note = s.note;

    // Alignment tolerances: 1e-2 |alpha1| at the reference 64-cell spacing,
    // shrinking with the square of the grid spacing.
    const double href = 1.0 / 63.0;
    const double hmax = std::max(field.dr, field.dz);
    q.eps_align = 1e-2 * std::abs(q.alpha1) * (hmax / href) * (hmax / href);
    q.eps_max = q.eps_align;
    return q;
}

namespace {

bool usable(const DiagnosticSample& s) {
    return s.valid && std::isfinite(s.alpha1) && std::isfinite(s.kappa) && std::isfinite(s.F_proof)
           && std::isfinite(s.t);
}

} // namespace

OdeResidual ode_residual(const std::vector<DiagnosticSample>& series, OdeForm form, double nu) {
    const std::size_t n = series.size();
    OdeResidual out;
    out.residual.assign(n, std::nullopt);
    if (n < 3)
        throw InsufficientDataError("ODE residual needs at least 3 samples");

    std::size_t run = 0, longest = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool linked = i > 0 && usable(series[i]) && usable(series[i - 1]) && !series[i].jump_flag;
        run = linked ? run + 1 : (usable(series[i]) ? 1 : 0);
        longest = std::max(longest, run);
    }
    if (longest < 3)
        throw InsufficientDataError("fewer than 3 contiguous jump-free samples");

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const auto& a = series[i - 1];
        const auto& b = series[i];
        const auto& c = series[i + 1];
        if (!usable(a) || !usable(b) || !usable(c) || b.jump_flag || c.jump_flag) {
            out.excluded.push_back(i);
            continue;
        }
        const double hm = b.t - a.t, hp = c.t - b.t;
        if (!(hm > 0 && hp > 0))
            throw DomainError("sample times must be strictly increasing");
        const double d = (hm * hm * (c.alpha1 - b.alpha1) + hp * hp * (b.alpha1 - a.alpha1)) / (hm * hp * (hm + hp));
        const double k2a = b.kappa * b.kappa * b.alpha1;
        double res, scale;
        if (form == OdeForm::Printed) {
            res = d - k2a - b.F_proof;
            scale = std::abs(d) + std::abs(k2a) + std::abs(b.F_proof);
        } else {
            const double rhs_terms[] = {k2a, 2.0 * b.dkappa * b.alpha2, b.kappa * b.beta1, 3.0 * b.kappa * b.beta2,
                                        b.F_proof};
            double rhs = 0.0;
            scale = std::abs(d);
            for (double x : rhs_terms) {
                rhs += x;
                scale += nu * std::abs(x);
            }
            res = d + nu * rhs;
        }
        out.residual[i] = res;
        out.max_abs = std::max(out.max_abs, std::abs(res));
        out.max_scale = std::max(out.max_scale, scale);
    }
    out.relative = out.max_scale > 0 ? out.max_abs / out.max_scale : 0.0;
    return out;
}

std::vector<double> integrating_factor_solution(const std::vector<double>& t, const std::vector<double>& kappa,
                                                const std::vector<double>& F, double alpha1_0) {
    const std::size_t n = t.size();
    if (kappa.size() != n || F.size() != n)
        throw DomainError("integrating_factor_solution: series lengths differ");
    std::vector<double> out(n);
    if (n == 0)
        return out;
    double K = 0.0, I = 0.0;
    double prev_g = F[0];
    out[0] = alpha1_0;
    for (std::size_t i = 1; i < n; ++i) {
        const double h = t[i] - t[i - 1];
        K += 0.5 * h * (kappa[i - 1] * kappa[i - 1] + kappa[i] * kappa[i]);
        const double g = std::exp(-K) * F[i];
        I += 0.5 * h * (prev_g + g);
        prev_g = g;
        out[i] = std::exp(K) * (alpha1_0 + I);
    }
    return out;
}

TheoremCheck theorem_check(const std::vector<DiagnosticSample>& series, double N, double T) {
    std::vector<const DiagnosticSample*> w;
    for (const auto& s : series)
        if (usable(s))
            w.push_back(&s);
    if (w.empty())
        throw InsufficientDataError("theorem_check: no usable samples");

    TheoremCheck tc;
    tc.N = N;
    tc.T = T;
    tc.t0 = w.front()->t;
    const double t_end = tc.t0 + T * (1.0 + 1e-12);
    double xi_max = 0.0, supF = 0.0, supG = 0.0;
    double K = 0.0;
    tc.G0 = std::abs(w.front()->G);
    tc.intermediate_margin = std::numeric_limits<double>::infinity();
    const DiagnosticSample* prev = nullptr;
    tc.F_bound_holds = true;
    for (const auto* s : w) {
        if (s->t > t_end)
            break;
        ++tc.samples;
        xi_max = std::max(xi_max, std::abs(s->xi_r));
        supF = std::max(supF, s->F_thm);
        if (std::abs(s->F_proof) > (s->F_thm + std::abs(s->beta4)) * (1.0 + 1e-12))
            tc.F_bound_holds = false;
        supG = std::max(supG, std::abs(s->G));
        if (prev)
            K += 0.5 * (s->t - prev->t) * (prev->kappa * prev->kappa + s->kappa * s->kappa);
        const double lower = std::exp(K) * (tc.G0 - N * (s->t - tc.t0));
        tc.intermediate_margin = std::min(tc.intermediate_margin, std::abs(s->G) - lower);
        prev = s;
    }
    if (!(xi_max > 0))
        throw DomainError("theorem_check: sup |xi| is zero");
    tc.M = 1.0 / xi_max;
    tc.premise_margin = tc.G0 - T * N;
    tc.premise = tc.premise_margin > 0;
    tc.branch_F_margin = supF - N;
    tc.branch_F = tc.branch_F_margin > 0;
    tc.branch_G_margin = supG - std::exp(tc.M * tc.M * T) * (tc.G0 - T * N);
    tc.branch_G = tc.branch_G_margin > 0;
    tc.intermediate_holds = tc.intermediate_margin >= 0;
    return tc;
}

const char* const kDiagnosticsHeader = "t,xi_r,jump_flag,vh_at_xi,S_at_xi,kappa,dkappa,alpha1,alpha2,alpha3,"
                                       "beta1,beta2,beta3,beta4,beta5,F_proof,F_thm,G,ode_residual";

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticSample>& series, const OdeResidual& res,
                           const std::vector<std::string>& footer) {
    os << kDiagnosticsHeader << '\n';
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        os << num(s.t) << ',' << num(s.xi_r) << ',' << (s.jump_flag ? 1 : 0);
        const double vals[] = {s.vh_at_xi, s.S_at_xi, s.kappa, s.dkappa, s.alpha1, s.alpha2, s.alpha3, s.beta1,
                               s.beta2, s.beta3, s.beta4, s.beta5, s.F_proof, s.F_thm, s.G};
        for (double v : vals)
            os << ',' << (s.valid ? num(v) : std::string());
        os << ',';
        if (i < res.residual.size() && res.residual[i])
            os << num(*res.residual[i]);
        os << '\n';
    }
    for (const auto& line : footer)
        os << "# " << line << '\n';
}

std::vector<DiagnosticSample> read_diagnostics_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kDiagnosticsHeader)
        throw IoError("diagnostics CSV header mismatch");
    std::vector<DiagnosticSample> out;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        if (cells.size() != 19)
            throw IoError("diagnostics CSV row has " + std::to_string(cells.size()) + " columns");
        auto val = [&](int k) { return cells[k].empty() ? std::nan("") : std::stod(cells[k]); };
        DiagnosticSample s;
        s.t = val(0);
        s.xi_r = val(1);
        s.jump_flag = cells[2] == "1";
        s.valid = !cells[3].empty();
        double* dst[] = {&s.vh_at_xi, &s.S_at_xi, &s.kappa, &s.dkappa, &s.alpha1, &s.alpha2, &s.alpha3, &s.beta1,
                         &s.beta2, &s.beta3, &s.beta4, &s.beta5, &s.F_proof, &s.F_thm, &s.G};
        for (int k = 0; k < 15; ++k)
            *dst[k] = val(3 + k);
        out.push_back(s);
    }
    return out;
}

std::vector<std::string> theorem_footer(const TheoremCheck& tc) {
    auto b = [](bool x) { return std::string(x ? "true" : "false"); };
    return {
        "theorem_check N=" + num(tc.N) + " T=" + num(tc.T) + " M=" + num(tc.M) + " t0=" + num(tc.t0)
            + " samples=" + std::to_string(tc.samples),
        "premise=" + b(tc.premise) + " |G0|=" + num(tc.G0) + " margin=" + num(tc.premise_margin),
        "branch_F=" + b(tc.branch_F) + " margin=" + num(tc.branch_F_margin),
        "branch_G=" + b(tc.branch_G) + " margin=" + num(tc.branch_G_margin),
        "intermediate=" + b(tc.intermediate_holds) + " margin=" + num(tc.intermediate_margin),
        "conclusion=" + b(tc.conclusion_holds()),
    };
}

} // namespace swirl
