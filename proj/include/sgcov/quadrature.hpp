#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgcov::quad {

struct QuadratureSettings {
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    int max_subdivisions = 2000;
    double tail_tol = 1e-10;  // semi-infinite truncation budget

    QuadratureSettings tightened(double factor = 0.1) const {
        QuadratureSettings q = *this;
        q.abs_tol *= factor;
        q.rel_tol *= factor;
        return q;
    }
    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(tail_tol > 0.0))
            throw std::invalid_argument("QuadratureSettings: tolerances must be > 0");
        if (max_subdivisions < 1)
            throw std::invalid_argument("QuadratureSettings: max_subdivisions must be >= 1");
    }
};

// Subdivision budget exhausted; carries the best estimate and its error bound.
class BudgetError : public std::runtime_error {
public:
    BudgetError(double est, double err)
        : std::runtime_error("quadrature budget exceeded (estimate " + std::to_string(est) +
                             ", error bound " + std::to_string(err) + ")"),
          estimate(est), error_bound(err) {}
    double estimate;
    double error_bound;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1,1] (positive half).
inline constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
inline constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct PanelResult {
    double value;
    double error;
};

template <class F>
PanelResult gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    double resabs = kWgk[7] * std::fabs(fc);

    double fv[7][2];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        fv[i][0] = f(c - dx);
        fv[i][1] = f(c + dx);
        const double sum = fv[i][0] + fv[i][1];
        k15 += kWgk[i] * sum;
        resabs += kWgk[i] * (std::fabs(fv[i][0]) + std::fabs(fv[i][1]));
        if (i % 2 == 1) g7 += kWg[i / 2] * sum;
    }

    // quadpack-style error estimate based on deviation from the mean
    const double mean = 0.5 * k15;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::fabs(fv[i][0] - mean) + std::fabs(fv[i][1] - mean));

    const double value = k15 * h;
    resabs *= std::fabs(h);
    resasc *= std::fabs(h);
    double err = std::fabs((k15 - g7) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(eps50 * resabs, err);
    return {value, err};
}

struct Segment {
    double a, b, value, error;
};

}  // namespace detail

struct IntegralResult {
    double value;
    double error_bound;
    int panels;
};

// Adaptive Gauss-Kronrod on [a, b]; error <= max(abs_tol, rel_tol*|value|).
// Throws BudgetError when max_subdivisions panels do not reach the tolerance.
template <class F>
IntegralResult integrate_full(F&& f, double a, double b, const QuadratureSettings& qs = {}) {
    if (!(a <= b)) throw std::domain_error("integrate: requires a <= b");
    if (a == b) return {0.0, 0.0, 0};

    auto first = detail::gk15(f, a, b);
    if (first.error <= std::max(qs.abs_tol, qs.rel_tol * std::fabs(first.value)))
        return {first.value, first.error, 1};

    std::vector<detail::Segment> segs;
    segs.reserve(64);
    segs.push_back({a, b, first.value, first.error});
    double total = first.value;
    double total_err = first.error;

    const double min_width = std::fabs(b - a) * 1e-14;
    auto worse = [](const detail::Segment& s, const detail::Segment& t) { return s.error < t.error; };

    while (total_err > std::max(qs.abs_tol, qs.rel_tol * std::fabs(total))) {
        if (static_cast<int>(segs.size()) >= qs.max_subdivisions)
            throw BudgetError(total, total_err);
        auto it = std::max_element(segs.begin(), segs.end(), worse);
        if (it->b - it->a <= min_width || it->error == 0.0) break;  // can't improve further
        detail::Segment seg = *it;
        const double mid = 0.5 * (seg.a + seg.b);
        auto left = detail::gk15(f, seg.a, mid);
        auto right = detail::gk15(f, mid, seg.b);
        total += left.value + right.value - seg.value;
        total_err += left.error + right.error - seg.error;
        *it = {seg.a, mid, left.value, left.error};
        segs.push_back({mid, seg.b, right.value, right.error});
    }
    // recompute sums to shed accumulated cancellation
    total = 0.0;
    total_err = 0.0;
    for (const auto& s : segs) {
        total += s.value;
        total_err += s.error;
    }
    return {total, total_err, static_cast<int>(segs.size())};
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureSettings& qs = {}) {
    return integrate_full(std::forward<F>(f), a, b, qs).value;
}

// Semi-infinite integral over [a, inf). `tail_bound(U)` must bound
// |int_U^inf f| analytically; panels stop at the first U with bound <= tail_tol.
// The chosen truncation point is reported through u_max_out.
template <class F, class Bound>
double integrate_tail_bounded(F&& f, double a, const QuadratureSettings& qs, Bound&& tail_bound,
                              double* u_max_out = nullptr) {
    qs.validate();
    double total = 0.0;
    double start = a;
    double width = std::max(1.0, std::fabs(a));
    const int max_panels = 256;
    for (int k = 0; k < max_panels; ++k) {
        const double rem = tail_bound(start);
        if (rem <= qs.tail_tol) {
            if (u_max_out) *u_max_out = start;
            return total;
        }
        const double end = start + width;
        QuadratureSettings local = qs;
        // panels cannot contribute more than the analytic remainder at their start
        local.abs_tol = std::max(qs.abs_tol, 0.1 * rem);
        total += integrate(f, start, end, local);
        start = end;
        width *= 2.0;
    }
    throw BudgetError(total, tail_bound(start));
}

// Semi-infinite integral with only a power-law decay hint: panel sums are
// extrapolated geometrically and truncated once the estimated remainder is
// below tail_tol.
template <class F>
double integrate_tail(F&& f, double a, double decay_hint, const QuadratureSettings& qs = {},
                      double* u_max_out = nullptr) {
    qs.validate();
    double total = 0.0;
    double start = a;
    double width = std::max(1.0, std::fabs(a));
    const int max_panels = 256;
    double prev = std::numeric_limits<double>::infinity();
    // doubling panels of u^{1-p} decay shrink by at least 2^{2-p}
    const double geo = std::min(0.9, std::pow(2.0, 2.0 - decay_hint));
    for (int k = 0; k < max_panels; ++k) {
        const double end = start + width;
        const double part = integrate(f, start, end, qs);
        total += part;
        const double mag = std::fabs(part);
        if (k > 0 && mag <= prev) {
            const double remainder = mag * geo / (1.0 - geo);
            if (remainder <= qs.tail_tol) {
                if (u_max_out) *u_max_out = end;
                return total;
            }
        }
        prev = mag;
        start = end;
        width *= 2.0;
    }
    throw BudgetError(total, prev);
}

}  // namespace sgcov::quad
