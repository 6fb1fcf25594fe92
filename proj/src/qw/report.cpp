#include "qw/report.hpp"

#include <algorithm>
#include <cmath>

namespace qw {

namespace {

// Slope over points with usable (positive, finite) distances. Returns the
// number of such points through `used`.
double fit_slope(const std::vector<ProbePoint>& pts, bool use_dx, int* used) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& p : pts) {
        const double a = use_dx ? p.dx : p.dt;
        if (!(p.distance > 0.0) || !std::isfinite(p.distance) || !(a > 0.0)) continue;
        const double x = std::log(a), y = std::log(p.distance);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (used) *used = n;
    if (n < 2) return 0.0;
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

}  // namespace

double estimate_order(const ConvergenceReport& report) {
    int used = 0;
    const double slope = fit_slope(report.probe_points, false, &used);
    if (used < 4) {
        // fall back to the dx axis before giving up (dx-driven reports)
        int used_dx = 0;
        const double slope_dx = fit_slope(report.probe_points, true, &used_dx);
        if (used_dx >= 4) return slope_dx;
        throw Error(ErrorCode::insufficient_data,
                    "estimate_order: need >= 4 probe points with positive distances");
    }
    return slope;
}

ConvergenceReport make_report(std::vector<ProbePoint> probes, bool use_dx) {
    ConvergenceReport rep;
    rep.probe_points = std::move(probes);
    int used = 0;
    rep.fitted_slope = fit_slope(rep.probe_points, use_dx, &used);
    bool at_limit = !rep.probe_points.empty();
    for (const auto& p : rep.probe_points) {
        const double x = use_dx ? p.dx : p.dt;
        const double floor = ConvergenceReport::exact_tolerance + 64.0 * 2.22e-16 / x;
        if (p.distance > floor) at_limit = false;
    }
    if (at_limit) {
        rep.verdict = Verdict::converged;
    } else if (used >= 2 && rep.fitted_slope >= ConvergenceReport::converge_slope) {
        rep.verdict = Verdict::converged;
    } else if (used >= 2 && rep.fitted_slope <= ConvergenceReport::diverge_slope) {
        rep.verdict = Verdict::diverged;
    } else {
        rep.verdict = Verdict::inconclusive;
    }
    return rep;
}

LimitSchedule::LimitSchedule(std::vector<double> dts_, Coupling c, double value_)
    : dts(std::move(dts_)), coupling(c), value(value_) {
    if (dts.size() < 4)
        throw Error(ErrorCode::degenerate_schedule, "schedule needs at least 4 dt values");
    for (std::size_t i = 0; i < dts.size(); ++i) {
        if (!(dts[i] > 0.0))
            throw Error(ErrorCode::degenerate_schedule, "schedule dts must be positive");
        if (i > 0 && !(dts[i] < dts[i - 1]))
            throw Error(ErrorCode::degenerate_schedule, "schedule dts must be strictly decreasing");
    }
    if (dts.back() < 1e-12)
        throw Error(ErrorCode::degenerate_schedule,
                    "schedule dt below 1e-12: double-precision cancellation dominates");
    if (!(value > 0.0))
        throw Error(ErrorCode::degenerate_schedule, "coupling value must be positive");
}

std::vector<double> LimitSchedule::geometric(double dt_max, double dt_min, double factor) {
    if (!(dt_max > dt_min) || !(dt_min > 0.0) || !(factor > 1.0))
        throw Error(ErrorCode::degenerate_schedule, "bad geometric schedule parameters");
    std::vector<double> dts;
    for (double dt = dt_max; dt >= dt_min * (1.0 - 1e-12); dt /= factor) dts.push_back(dt);
    return dts;
}

LimitSchedule LimitSchedule::fixed_dx(double dx, std::vector<double> dts) {
    return LimitSchedule(std::move(dts), Coupling::fixed_dx, dx);
}

LimitSchedule LimitSchedule::with_ratio(double v, std::vector<double> dts) {
    return LimitSchedule(std::move(dts), Coupling::ratio_v, v);
}

}  // namespace qw
