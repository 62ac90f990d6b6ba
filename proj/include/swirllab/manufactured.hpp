#pragma once

#include <swirllab/jet.hpp>
#include <swirllab/sampler.hpp>
#include <swirllab/vec.hpp>

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace swirl {

enum class FieldKind { Zero, PureSwirl, PolyNoSlip, TrigDivFree, ForcedNS, PolyGeneric };

std::string to_string(FieldKind k);
FieldKind field_kind_from_string(const std::string& s);

// Sparse polynomial in (x, y, z).
struct Polynomial {
    struct Term {
        double c;
        int a, b, d;
    };
    std::vector<Term> terms;

    template <class T>
    T operator()(const T& x, const T& y, const T& z) const {
        T acc(0.0);
        for (const auto& t : terms) {
            T m(t.c);
            for (int i = 0; i < t.a; ++i) m = m * x;
            for (int i = 0; i < t.b; ++i) m = m * y;
            for (int i = 0; i < t.d; ++i) m = m * z;
            acc = acc + m;
        }
        return acc;
    }
};

// Analytic Cartesian velocity (and pressure for ForcedNS) with exact
// derivatives from truncated Taylor jets.
class ManufacturedField : public CartesianField {
public:
    using J3 = Jet<3>;

    ManufacturedField(FieldKind kind, std::vector<double> params);
    static ManufacturedField random(FieldKind kind, std::mt19937_64& rng);

    FieldKind kind() const { return kind_; }
    const std::vector<double>& params() const { return params_; }
    bool divergence_free() const { return kind_ != FieldKind::PolyGeneric; }
    bool no_slip() const { return kind_ != FieldKind::PolyGeneric; }

    Vec3 velocity(const Vec3& x) const override;
    // Taylor expansion of each Cartesian component about x, total order 3.
    std::array<J3, 3> velocity_jet(const Vec3& x) const;
    double pressure(const Vec3& x) const;
    J3 pressure_jet(const Vec3& x) const;

    // Exact partial derivative of component c; multi-index (a, b, d) in (x, y, z).
    double exact_derivative(const Vec3& x, int c, int a, int b, int d) const;

    // Body force dt u + (u.grad)u + grad p - nu lap u for u(t) = e^{-t} U, p(t) = e^{-t} P.
    Vec3 forcing(const Vec3& x, double t, double nu = 1.0) const;

private:
    template <int M>
    std::array<Jet<M>, 3> potential(const Jet<M>& x, const Jet<M>& y, const Jet<M>& z) const;
    template <int M>
    std::array<Jet<M - 1>, 3> curl_of_potential(const Vec3& x) const;

    FieldKind kind_;
    std::vector<double> params_;
    std::array<Polynomial, 3> poly_;
    Polynomial pressure_poly_;
};

} // namespace swirl
