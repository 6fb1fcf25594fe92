#ifndef QW_REPORT_HPP
#define QW_REPORT_HPP

#include <optional>
#include <vector>

#include "qw/mat2.hpp"

namespace qw {

// One convergence probe: discretization scales and the measured operator distance.
struct ProbePoint {
    double dt;
    double dx;
    double distance;
};

enum class Verdict { converged, diverged, inconclusive };

// Verdict thresholds. Distances shrinking at least like dt^{1/2} count as
// convergence, growth at least like dt^{-1/2} as divergence; anything flatter
// is inconclusive. A family already sitting at its limit produces only
// rounding noise, which difference quotients amplify by 1/dt: distances below
// exact_tolerance + 64 eps/dt at every probe short-circuit to converged.
struct ConvergenceReport {
    std::vector<ProbePoint> probe_points;
    double fitted_slope = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::optional<Mat2> limit_estimate;

    static constexpr double converge_slope = 0.5;
    static constexpr double diverge_slope = -0.5;
    static constexpr double exact_tolerance = 1e-12;

    double max_distance() const {
        double m = 0.0;
        for (const auto& p : probe_points) m = std::max(m, p.distance);
        return m;
    }
    double last_distance() const {
        return probe_points.empty() ? 0.0 : probe_points.back().distance;
    }
};

// Least-squares slope of log(distance) vs log(dt or dx) over the probe points.
// Throws Error(insufficient_data) with fewer than 4 positive-distance points.
double estimate_order(const ConvergenceReport& report);

// Assembles a report from probes already sorted by decreasing scale and applies
// the verdict rules above. `use_dx` selects dx instead of dt as the fit abscissa.
ConvergenceReport make_report(std::vector<ProbePoint> probes, bool use_dx = false);

// A decreasing schedule of time steps plus the space-step coupling rule.
struct LimitSchedule {
    enum class Coupling { fixed_dx, ratio_v };

    std::vector<double> dts;  // strictly decreasing, length >= 4, last >= 1e-12
    Coupling coupling = Coupling::fixed_dx;
    double value = 1.0;  // dx when fixed_dx, v when ratio_v (dx = v*dt)

    LimitSchedule(std::vector<double> dts_, Coupling c, double value_);

    double dx_at(double dt) const {
        return coupling == Coupling::fixed_dx ? value : value * dt;
    }

    // dt = dt_max, dt_max/2, ..., down to (and including) dt_min.
    static std::vector<double> geometric(double dt_max, double dt_min, double factor = 2.0);
    static LimitSchedule fixed_dx(double dx, std::vector<double> dts);
    static LimitSchedule with_ratio(double v, std::vector<double> dts);
};

}  // namespace qw

#endif
