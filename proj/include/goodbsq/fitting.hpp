// fitting.hpp -- least-squares slope of log(y) against log(x), with the
// standard error and a 95% interval.  Used for every growth-exponent fit.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace goodbsq {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double ci95 = 0.0; // half-width of the 95% interval
    int points = 0;
};

inline SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("fit_line: need at least 3 points");
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    SlopeFit f;
    f.points = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
    }
    if (n > 2) {
        f.stderr_slope = std::sqrt(ss_res / (n - 2) / sxx);
        // two-sided 97.5% t-quantiles for small dof; 1.96 beyond
        static const double tq[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447,
                                    2.365,  2.306, 2.262, 2.228, 2.201, 2.179};
        const int dof = n - 2;
        const double t = dof <= 12 ? tq[dof - 1] : 1.96;
        f.ci95 = t * f.stderr_slope;
    }
    return f;
}

inline SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_loglog: data must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_line(lx, ly);
}

} // namespace goodbsq
