#include "catenary/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "catenary/errors.hpp"

namespace catenary {

MonotoneCubic::MonotoneCubic(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) {
        throw ConfigError("monotone cubic needs at least two (x, y) nodes");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) {
            throw ConfigError("interpolation nodes must be strictly increasing");
        }
    }

    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        d[i] = (y_[i + 1] - y_[i]) / h[i];
    }

    m_.assign(n, 0.0);
    if (n == 2) {
        m_[0] = m_[1] = d[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        m_[i] = (h[i] * d[i - 1] + h[i - 1] * d[i]) / (h[i - 1] + h[i]);
    }
    m_[0] = ((2.0 * h[0] + h[1]) * d[0] - h[0] * d[1]) / (h[0] + h[1]);
    m_[n - 1] =
        ((2.0 * h[n - 2] + h[n - 3]) * d[n - 2] - h[n - 2] * d[n - 3]) / (h[n - 2] + h[n - 3]);

    // Hyman filter.
    for (std::size_t i = 0; i < n; ++i) {
        const bool has_left = i > 0;
        const bool has_right = i + 1 < n;
        const double dl = has_left ? d[i - 1] : d[i];
        const double dr = has_right ? d[i] : d[i - 1];
        if (dl * dr <= 0.0) {
            m_[i] = 0.0;
            continue;
        }
        const double bound = 3.0 * std::min(std::abs(dl), std::abs(dr));
        if (m_[i] * dl <= 0.0) {
            m_[i] = 0.0;
        } else if (std::abs(m_[i]) > bound) {
            m_[i] = std::copysign(bound, dl);
        }
    }
}

MonotoneCubic::Value MonotoneCubic::eval(double t) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i =
        it == x_.begin() ? 0 : static_cast<std::size_t>(std::distance(x_.begin(), it)) - 1;
    i = std::min(i, x_.size() - 2);

    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double y0 = y_[i], y1 = y_[i + 1];
    const double m0 = m_[i] * h, m1 = m_[i + 1] * h;

    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;

    const double dh00 = 6 * s2 - 6 * s;
    const double dh10 = 3 * s2 - 4 * s + 1;
    const double dh01 = -6 * s2 + 6 * s;
    const double dh11 = 3 * s2 - 2 * s;

    const double ddh00 = 12 * s - 6;
    const double ddh10 = 6 * s - 4;
    const double ddh01 = -12 * s + 6;
    const double ddh11 = 6 * s - 2;

    return Value{
        h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1,
        (dh00 * y0 + dh10 * m0 + dh01 * y1 + dh11 * m1) / h,
        (ddh00 * y0 + ddh10 * m0 + ddh01 * y1 + ddh11 * m1) / (h * h),
    };
}

}  // namespace catenary
