#pragma once

#include <span>
#include <vector>

namespace catenary {

// Shape-preserving piecewise cubic Hermite interpolant.
//
// Node slopes start from the three-point (local parabola) estimate, which
// keeps O(h^3) accuracy on smooth data, and are then limited so that the
// interpolant is monotone on every interval where the data are monotone
// (Fritsch-Carlson region, Hyman filter). At a data extremum the slope is
// set to zero. The result is C^1; the second derivative is piecewise linear.
class MonotoneCubic {
public:
    struct Value {
        double f;
        double df;
        double d2f;
    };

    MonotoneCubic() = default;

    // Requires x strictly increasing and at least two nodes. Throws
    // ConfigError otherwise.
    MonotoneCubic(std::span<const double> x, std::span<const double> y);

    // Evaluates inside [front, back]; outside the range the end cubic is
    // extrapolated.
    [[nodiscard]] Value eval(double t) const;

    [[nodiscard]] double front() const { return x_.front(); }
    [[nodiscard]] double back() const { return x_.back(); }
    [[nodiscard]] const std::vector<double>& nodes() const { return x_; }
    [[nodiscard]] const std::vector<double>& values() const { return y_; }
    [[nodiscard]] const std::vector<double>& slopes() const { return m_; }

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;
};

}  // namespace catenary
