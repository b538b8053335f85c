#include "rncx/tanh_analysis.hpp"

#include "rncx/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rncx::tanh {

namespace {

constexpr int kBisectionDepth = 200;

void require_bistable(double w, const char *what)
{
    if (!(w > 1.0)) {
        std::ostringstream os;
        os << what << ": weight " << w << " is contractive (w <= 1)";
        throw Error(ErrorKind::ContractiveRegime, os.str());
    }
}

// Zero of g_v on [lo, hi], assuming g(lo) and g(hi) have strictly opposite signs
// and g is monotone on the interval.
double bisect(double w, double v, double lo, double hi)
{
    double glo = g(w, v, lo);
    for (int i = 0; i < kBisectionDepth; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double gm = g(w, v, mid);
        if (gm == 0.0)
            return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

NeuronShape NeuronShape::of(double weight)
{
    if (!(weight > 0.0))
        throw Error(ErrorKind::InvalidArgument, "neuron weight must be positive");
    return {weight, weight > 1.0 ? Regime::Bistable : Regime::Contractive};
}

double g(double w, double v, double x) { return x - std::tanh(w * x + v); }

double g_prime(double w, double v, double x)
{
    const double c = std::cosh(w * x + v);
    return 1.0 - w / (c * c);
}

PivotPair pivots(double w)
{
    require_bistable(w, "pivots");
    const double p = std::sqrt(1.0 - 1.0 / w);
    const double v_plus = std::atanh(p) - w * p;
    return {-p, p, -v_plus, v_plus};
}

std::pair<double, double> stationary_points(double w, double v)
{
    require_bistable(w, "stationary_points");
    const double a = std::acosh(std::sqrt(w));
    return {(-a - v) / w, (a - v) / w};
}

FixpointSet fixpoints(double w, double v, double tol)
{
    if (!(w > 0.0))
        throw Error(ErrorKind::InvalidArgument, "fixpoints: weight must be positive");
    if (!(tol > 0.0))
        throw Error(ErrorKind::InvalidArgument, "fixpoints: tol must be positive");

    // Breakpoints of the monotone pieces inside [-1, 1]. g(-1) < 0 < g(1) always,
    // so the outer endpoints are never roots.
    std::vector<double> knots{-1.0};
    std::vector<double> values{g(w, v, -1.0)};
    std::vector<bool> knot_is_root{false};
    if (w > 1.0) {
        const auto [lo, hi] = stationary_points(w, v);
        for (double s : {lo, hi}) {
            if (s <= -1.0 || s >= 1.0)
                continue;
            double gs = g(w, v, s);
            const bool tangent = std::abs(gs) <= tol;
            if (tangent)
                gs = 0.0;
            knots.push_back(s);
            values.push_back(gs);
            knot_is_root.push_back(tangent);
        }
    }
    knots.push_back(1.0);
    values.push_back(g(w, v, 1.0));
    knot_is_root.push_back(false);

    FixpointSet out;
    for (std::size_t k = 0; k < knots.size(); ++k) {
        if (knot_is_root[k])
            out.points.push_back(knots[k]);
        if (k + 1 < knots.size() && values[k] * values[k + 1] < 0.0) {
            double x = bisect(w, v, knots[k], knots[k + 1]);
            x = std::clamp(polish_fixpoint(w, v, x), knots[k], knots[k + 1]);
            out.points.push_back(x);
        }
    }
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());

    if (w > 1.0) {
        const PivotPair pv = pivots(w);
        for (double x : out.points)
            out.digits.push_back(kappa(x, pv));
    } else {
        out.digits.assign(out.points.size(), 2);
    }
    return out;
}

int kappa(double x, const PivotPair &pv)
{
    if (x <= pv.p_minus)
        return 1;
    if (x >= pv.p_plus)
        return 3;
    return 2;
}

Digit classify(double x, const PivotPair &pv, double margin)
{
    if (margin < 0.0)
        throw Error(ErrorKind::InvalidArgument, "classify: margin must be non-negative");
    if (std::abs(x - pv.p_minus) < margin || std::abs(x - pv.p_plus) < margin)
        return Digit::Ambiguous;
    return static_cast<Digit>(kappa(x, pv));
}

double polish_fixpoint(double w, double v, double x, int steps)
{
    double r = std::abs(g(w, v, x));
    for (int i = 0; i < steps && r > 0.0; ++i) {
        const double d = g_prime(w, v, x);
        if (d == 0.0)
            break;
        const double next = std::clamp(x - g(w, v, x) / d, -1.0, 1.0);
        const double rn = std::abs(g(w, v, next));
        if (!(rn < r))
            break;
        x = next;
        r = rn;
    }
    return x;
}

double settle_scalar(double w, double v, double x0, double tol, long max_iter)
{
    if (!(tol > 0.0) || max_iter < 1)
        throw Error(ErrorKind::InvalidArgument, "settle_scalar: tol > 0 and max_iter >= 1 required");
    double x = x0;
    for (long t = 0; t < max_iter; ++t) {
        const double next = std::tanh(w * x + v);
        const double step = std::abs(next - x);
        x = next;
        if (step <= tol)
            return polish_fixpoint(w, v, x);
    }
    std::ostringstream os;
    os << "settle_scalar: no convergence after " << max_iter << " iterations (w=" << w
       << ", v=" << v << ", x0=" << x0 << ")";
    throw Error(ErrorKind::NoConvergence, os.str());
}

PositioningResult check_positioning(double w, double v, const FixpointSet &fx, double slack)
{
    (void)v;
    PositioningResult res;
    res.count = fx.points.size();
    for (double x : fx.points)
        if (x < -1.0 - slack || x > 1.0 + slack)
            res.ok = false;
    if (!(w > 1.0)) {
        res.ok = res.ok && res.count == 1;
        return res;
    }
    const PivotPair pv = pivots(w);
    const auto &p = fx.points;
    const auto le = [slack](double a, double b) { return a <= b + slack; };
    switch (p.size()) {
    case 1:
        res.ok = res.ok && (le(p[0], pv.p_minus) || le(pv.p_plus, p[0]));
        break;
    case 2:
        res.ok = res.ok && le(p[0], pv.p_minus) && le(pv.p_plus, p[1]);
        break;
    case 3:
        res.ok = res.ok && le(p[0], pv.p_minus) && le(pv.p_minus, p[1]) && le(p[1], pv.p_plus) &&
                 le(pv.p_plus, p[2]);
        break;
    default:
        res.ok = false;
    }
    return res;
}

} // namespace rncx::tanh
