#include <swirllab/errors.hpp>
#include <swirllab/manufactured.hpp>

#include <cmath>

namespace swirl {

std::string to_string(FieldKind k) {
    switch (k) {
    case FieldKind::Zero: return "zero";
    case FieldKind::PureSwirl: return "pure-swirl";
    case FieldKind::PolyNoSlip: return "poly-noslip";
    case FieldKind::TrigDivFree: return "trig-divfree";
    case FieldKind::ForcedNS: return "forced-ns";
    case FieldKind::PolyGeneric: return "poly-generic";
    }
    return "?";
}

FieldKind field_kind_from_string(const std::string& s) {
    for (auto k : {FieldKind::Zero, FieldKind::PureSwirl, FieldKind::PolyNoSlip, FieldKind::TrigDivFree,
                   FieldKind::ForcedNS, FieldKind::PolyGeneric})
        if (to_string(k) == s)
            return k;
    throw DomainError("unknown field kind " + s);
}

namespace {

// Jet<M> -> Jet<M-1>: exact partial derivative along one axis.
template <int M>
Jet<M - 1> jet_partial(const Jet<M>& j, int axis) {
    Jet<M - 1> out;
    for (int a = 0; a < M; ++a)
        for (int b = 0; a + b < M; ++b)
            for (int d = 0; a + b + d < M; ++d) {
                int s[3] = {a, b, d};
                s[axis] += 1;
                out.at(a, b, d) = s[axis] * j.at(s[0], s[1], s[2]);
            }
    return out;
}

Polynomial poly(std::initializer_list<Polynomial::Term> t) { return Polynomial{std::vector<Polynomial::Term>(t)}; }

} // namespace

ManufacturedField::ManufacturedField(FieldKind kind, std::vector<double> p) : kind_(kind), params_(std::move(p)) {
    auto need = [&](std::size_t n) {
        if (params_.size() < n)
            throw DomainError(to_string(kind_) + " needs " + std::to_string(n) + " parameters");
    };
    switch (kind_) {
    case FieldKind::Zero: break;
    case FieldKind::PureSwirl: need(2); break;
    case FieldKind::TrigDivFree: need(9); break;
    case FieldKind::PolyNoSlip:
    case FieldKind::ForcedNS: {
        need(kind_ == FieldKind::ForcedNS ? 13 : 9);
        const auto& c = params_;
        // vector potential B; the velocity is curl(z^2 B)
        poly_[0] = poly({{c[0], 0, 0, 0}, {c[1], 0, 1, 0}, {c[2], 1, 0, 1}});
        poly_[1] = poly({{c[3], 1, 0, 0}, {c[4], 1, 1, 0}, {c[5], 0, 0, 1}});
        poly_[2] = poly({{c[6], 2, 0, 0}, {c[7], 0, 2, 0}, {c[8], 1, 1, 1}});
        if (kind_ == FieldKind::ForcedNS)
            pressure_poly_ = poly({{c[9], 1, 0, 0}, {c[10], 0, 1, 1}, {c[11], 2, 1, 0}, {c[12], 0, 0, 2}});
        break;
    }
    case FieldKind::PolyGeneric: {
        need(9);
        const auto& c = params_;
        poly_[0] = poly({{c[0], 0, 0, 0}, {c[1], 1, 1, 0}, {c[2], 0, 0, 2}});
        poly_[1] = poly({{c[3], 1, 0, 0}, {c[4], 0, 2, 1}, {c[5], 1, 1, 1}});
        poly_[2] = poly({{c[6], 0, 1, 0}, {c[7], 2, 0, 1}, {c[8], 0, 0, 3}});
        break;
    }
    }
}

ManufacturedField ManufacturedField::random(FieldKind kind, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::size_t n = 0;
    switch (kind) {
    case FieldKind::Zero: n = 0; break;
    case FieldKind::PureSwirl: n = 2; break;
    case FieldKind::PolyNoSlip: n = 9; break;
    case FieldKind::TrigDivFree: n = 9; break;
    case FieldKind::ForcedNS: n = 13; break;
    case FieldKind::PolyGeneric: n = 9; break;
    }
    std::vector<double> p(n);
    for (auto& v : p)
        v = U(rng);
    if (kind == FieldKind::TrigDivFree)
        for (std::size_t i = 3; i < 9; ++i)
            p[i] = 1.0 + 2.0 * std::abs(p[i]); // wavenumbers
    return ManufacturedField(kind, std::move(p));
}

template <int M>
std::array<Jet<M>, 3> ManufacturedField::potential(const Jet<M>& x, const Jet<M>& y, const Jet<M>& z) const {
    const Jet<M> z2 = z * z;
    if (kind_ == FieldKind::TrigDivFree) {
        const auto& c = params_;
        // amplitudes c0..c2, wavenumbers c3..c8
        return {z2 * (c[0] * sin(c[3] * y + 0.3) * cos(c[4] * z)),
                z2 * (c[1] * cos(c[5] * x) * sin(c[6] * y + 0.7)),
                z2 * (c[2] * sin(c[7] * x + c[8] * y))};
    }
    return {z2 * poly_[0](x, y, z), z2 * poly_[1](x, y, z), z2 * poly_[2](x, y, z)};
}

template <int M>
std::array<Jet<M - 1>, 3> ManufacturedField::curl_of_potential(const Vec3& p) const {
    auto psi = potential<M>(Jet<M>::variable(p[0], 0), Jet<M>::variable(p[1], 1), Jet<M>::variable(p[2], 2));
    return {jet_partial<M>(psi[2], 1) - jet_partial<M>(psi[1], 2),
            jet_partial<M>(psi[0], 2) - jet_partial<M>(psi[2], 0),
            jet_partial<M>(psi[1], 0) - jet_partial<M>(psi[0], 1)};
}

std::array<ManufacturedField::J3, 3> ManufacturedField::velocity_jet(const Vec3& p) const {
    switch (kind_) {
    case FieldKind::Zero: return {J3(0.0), J3(0.0), J3(0.0)};
    case FieldKind::PureSwirl: {
        J3 x = J3::variable(p[0], 0), y = J3::variable(p[1], 1), z = J3::variable(p[2], 2);
        J3 g = z * (params_[0] + params_[1] * (x * x + y * y));
        return {-1.0 * g * y, g * x, J3(0.0)};
    }
    case FieldKind::PolyGeneric: {
        J3 x = J3::variable(p[0], 0), y = J3::variable(p[1], 1), z = J3::variable(p[2], 2);
        return {poly_[0](x, y, z), poly_[1](x, y, z), poly_[2](x, y, z)};
    }
    default: return curl_of_potential<4>(p);
    }
}

Vec3 ManufacturedField::velocity(const Vec3& p) const {
    switch (kind_) {
    case FieldKind::Zero: return {0, 0, 0};
    case FieldKind::PureSwirl: {
        double g = p[2] * (params_[0] + params_[1] * (p[0] * p[0] + p[1] * p[1]));
        return {-g * p[1], g * p[0], 0.0};
    }
    case FieldKind::PolyGeneric: return {poly_[0](p[0], p[1], p[2]), poly_[1](p[0], p[1], p[2]), poly_[2](p[0], p[1], p[2])};
    default: {
        auto u = curl_of_potential<1>(p);
        return {u[0].value(), u[1].value(), u[2].value()};
    }
    }
}

double ManufacturedField::pressure(const Vec3& p) const {
    return kind_ == FieldKind::ForcedNS ? pressure_poly_(p[0], p[1], p[2]) : 0.0;
}

ManufacturedField::J3 ManufacturedField::pressure_jet(const Vec3& p) const {
    if (kind_ != FieldKind::ForcedNS)
        return J3(0.0);
    return pressure_poly_(J3::variable(p[0], 0), J3::variable(p[1], 1), J3::variable(p[2], 2));
}

double ManufacturedField::exact_derivative(const Vec3& x, int c, int a, int b, int d) const {
    if (a < 0 || b < 0 || d < 0 || a + b + d > 3)
        throw DomainError("exact derivatives are available up to order 3");
    return velocity_jet(x)[c].derivative(a, b, d);
}

Vec3 ManufacturedField::forcing(const Vec3& x, double t, double nu) const {
    auto u = velocity_jet(x);
    auto p = pressure_jet(x);
    const double e = std::exp(-t);
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        double adv = 0;
        for (int j = 0; j < 3; ++j) {
            int m[3] = {0, 0, 0};
            m[j] = 1;
            adv += u[j].value() * u[i].derivative(m[0], m[1], m[2]);
        }
        double lap = u[i].derivative(2, 0, 0) + u[i].derivative(0, 2, 0) + u[i].derivative(0, 0, 2);
        int m[3] = {0, 0, 0};
        m[i] = 1;
        out[i] = -e * u[i].value() + e * e * adv + e * p.derivative(m[0], m[1], m[2]) - nu * e * lap;
    }
    return out;
}

} // namespace swirl
