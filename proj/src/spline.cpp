#include <swirllab/errors.hpp>
#include <swirllab/spline.hpp>

#include <algorithm>
#include <cmath>

namespace swirl {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y, std::optional<double> left_slope)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n)
        throw DomainError("spline needs at least three knots");
    m_.assign(n, 0.0);
    // Tridiagonal system for the second derivatives (Thomas algorithm).
    std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
        a[i] = h0 / 6.0;
        b[i] = (h0 + h1) / 3.0;
        c[i] = h1 / 6.0;
        d[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    }
    if (left_slope) {
        double h0 = x_[1] - x_[0];
        b[0] = h0 / 3.0;
        c[0] = h0 / 6.0;
        d[0] = (y_[1] - y_[0]) / h0 - *left_slope;
    }
    for (std::size_t i = 1; i < n; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    m_[n - 1] = d[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
    double h = x_[1] - x_[0];
    uniform_ = true;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs((x_[i] - x_[i - 1]) - h) > 1e-12 * std::abs(h))
            uniform_ = false;
}

std::size_t CubicSpline::interval(double x) const {
    const std::size_t n = x_.size();
    std::size_t i;
    if (uniform_) {
        double s = (x - x_[0]) / (x_[1] - x_[0]);
        i = s <= 0 ? 0 : static_cast<std::size_t>(s);
    } else {
        i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
        i = i == 0 ? 0 : i - 1;
    }
    return std::min(i, n - 2);
}

double CubicSpline::operator()(double x) const {
    auto i = interval(x);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
    return A * y_[i] + B * y_[i + 1] + ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
    auto i = interval(x);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h - (3 * A * A - 1) / 6.0 * h * m_[i] + (3 * B * B - 1) / 6.0 * h * m_[i + 1];
}

double CubicSpline::second_derivative(double x) const {
    auto i = interval(x);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
    return A * m_[i] + B * m_[i + 1];
}

} // namespace swirl
