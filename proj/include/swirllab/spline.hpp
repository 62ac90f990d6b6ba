#pragma once

#include <optional>
#include <vector>

namespace swirl {

// Cubic interpolating spline on increasing knots; natural ends unless a
// first-derivative value is supplied for the left end.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y, std::optional<double> left_slope = std::nullopt);

    double operator()(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

private:
    std::size_t interval(double x) const;
    std::vector<double> x_, y_, m_;
    bool uniform_ = false;
};

} // namespace swirl
