#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace swirl {

// Truncated Taylor polynomial in three variables, total degree <= N.
// c[a][b][d] is the coefficient of dx^a dy^b dz^d (already divided by a! b! d!).
template <int N>
class Jet {
public:
    static constexpr int S = N + 1;

    Jet() { c_.fill(0.0); }
    Jet(double v) { c_.fill(0.0); c_[0] = v; }

    static Jet variable(double value, int axis) {
        Jet j(value);
        if (N >= 1) {
            int a[3] = {0, 0, 0};
            a[axis] = 1;
            j.at(a[0], a[1], a[2]) = 1.0;
        }
        return j;
    }

    double value() const { return c_[0]; }
    double& at(int a, int b, int d) { return c_[(a * S + b) * S + d]; }
    double at(int a, int b, int d) const { return c_[(a * S + b) * S + d]; }

    // Partial derivative d^(a+b+d) / dx^a dy^b dz^d at the expansion point.
    double derivative(int a, int b, int d) const {
        if (a + b + d > N)
            return 0.0;
        return at(a, b, d) * fact(a) * fact(b) * fact(d);
    }

    Jet& operator+=(const Jet& o) { for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k]; return *this; }
    Jet& operator-=(const Jet& o) { for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k]; return *this; }
    Jet& operator*=(double s) { for (auto& v : c_) v *= s; return *this; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { a *= -1.0; return a; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, double s) { a.c_[0] += s; return a; }
    friend Jet operator+(double s, Jet a) { a.c_[0] += s; return a; }
    friend Jet operator-(Jet a, double s) { a.c_[0] -= s; return a; }
    friend Jet operator-(double s, Jet a) { a *= -1.0; a.c_[0] += s; return a; }

    friend Jet operator*(const Jet& x, const Jet& y) {
        Jet r;
        for (int a = 0; a <= N; ++a)
            for (int b = 0; a + b <= N; ++b)
                for (int d = 0; a + b + d <= N; ++d) {
                    double xv = x.at(a, b, d);
                    if (xv == 0.0)
                        continue;
                    for (int e = 0; a + b + d + e <= N; ++e)
                        for (int f = 0; a + b + d + e + f <= N; ++f)
                            for (int g = 0; a + b + d + e + f + g <= N; ++g)
                                r.at(a + e, b + f, d + g) += xv * y.at(e, f, g);
                }
        return r;
    }
    friend Jet operator/(const Jet& x, const Jet& y) { return x * inverse(y); }
    friend Jet operator/(const Jet& x, double s) { return x * (1.0 / s); }
    friend Jet operator/(double s, const Jet& y) { return s * inverse(y); }

    // g(x0 + h) = sum_k g_k h^k with g_k = g^(k)(x0)/k!
    template <class Coeffs>
    static Jet compose(const Jet& x, const Coeffs& g) {
        Jet h = x;
        h.c_[0] = 0.0;
        Jet r(g[0]);
        Jet pw(1.0);
        for (int k = 1; k <= N; ++k) {
            pw = pw * h;
            r += pw * g[k];
        }
        return r;
    }

    friend Jet inverse(const Jet& x) {
        std::array<double, N + 1> g;
        double x0 = x.value(), v = 1.0 / x0;
        for (int k = 0; k <= N; ++k) {
            g[k] = v;
            v *= -1.0 / x0;
        }
        return compose(x, g);
    }
    friend Jet exp(const Jet& x) {
        std::array<double, N + 1> g;
        double e = std::exp(x.value());
        for (int k = 0; k <= N; ++k)
            g[k] = e / fact(k);
        return compose(x, g);
    }
    friend Jet sin(const Jet& x) {
        std::array<double, N + 1> g;
        double s = std::sin(x.value()), c = std::cos(x.value());
        const double cyc[4] = {s, c, -s, -c};
        for (int k = 0; k <= N; ++k)
            g[k] = cyc[k % 4] / fact(k);
        return compose(x, g);
    }
    friend Jet cos(const Jet& x) {
        std::array<double, N + 1> g;
        double s = std::sin(x.value()), c = std::cos(x.value());
        const double cyc[4] = {c, -s, -c, s};
        for (int k = 0; k <= N; ++k)
            g[k] = cyc[k % 4] / fact(k);
        return compose(x, g);
    }
    friend Jet sqrt(const Jet& x) {
        std::array<double, N + 1> g;
        double x0 = x.value();
        double coef = 1.0, p = 0.5;
        for (int k = 0; k <= N; ++k) {
            g[k] = coef * std::pow(x0, 0.5 - k) / fact(k);
            coef *= p;
            p -= 1.0;
        }
        return compose(x, g);
    }

    static constexpr double fact(int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i)
            f *= i;
        return f;
    }

private:
    std::array<double, S * S * S> c_;
};

} // namespace swirl
