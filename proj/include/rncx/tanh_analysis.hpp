#ifndef RNCX_TANH_ANALYSIS_HPP
#define RNCX_TANH_ANALYSIS_HPP

// Scalar analysis of a single recurrent tanh unit with constant input:
//   h_v(x) = tanh(w*x + v),   g_v(x) = x - h_v(x).
// Fixpoints of h_v are the zeros of g_v.

#include <optional>
#include <utility>
#include <vector>

namespace rncx::tanh {

inline constexpr double kDefaultTol = 1e-12;
inline constexpr long kDefaultMaxIter = 1'000'000;

enum class Regime { Contractive, Bistable };

struct NeuronShape {
    double weight;
    Regime regime;

    // Throws InvalidArgument unless weight > 0. w == 1 is Contractive.
    static NeuronShape of(double weight);
};

// Tangency points of g with the axis at the two extreme offsets.
struct PivotPair {
    double p_minus;
    double p_plus;
    double v_minus;  // g_{v_minus} has a double root at p_minus
    double v_plus;   // g_{v_plus} has a double root at p_plus
};

struct FixpointSet {
    std::vector<double> points;  // strictly increasing, 1 to 3 entries
    std::vector<int> digits;     // kappa of each point; 2 throughout when contractive
};

enum class Digit { One = 1, Two = 2, Three = 3, Ambiguous = 0 };

double g(double w, double v, double x);
double g_prime(double w, double v, double x);

// Throws ContractiveRegime when w <= 1.
PivotPair pivots(double w);

// (p_-^v, p_+^v), the local max and local min of g_v. Throws ContractiveRegime when w <= 1.
std::pair<double, double> stationary_points(double w, double v);

FixpointSet fixpoints(double w, double v, double tol = kDefaultTol);

// Closed-boundary digit: 1 if x <= p_-, 3 if x >= p_+, 2 otherwise.
int kappa(double x, const PivotPair &pv);

// Like kappa, but reports Ambiguous within `margin` of either pivot.
Digit classify(double x, const PivotPair &pv, double margin);

// Newton refinement of a fixpoint estimate; each step must shrink |g|.
double polish_fixpoint(double w, double v, double x, int steps = 20);

// Fixed-point iteration of h_v from x0 followed by Newton polish.
// Throws NoConvergence when max_iter steps pass without |x_t - x_{t-1}| <= tol.
double settle_scalar(double w, double v, double x0, double tol = kDefaultTol,
                     long max_iter = kDefaultMaxIter);

// Outcome of checking one (w, v) against the pivot positioning rule.
struct PositioningResult {
    std::size_t count = 0;
    bool ok = true;
};

// Positioning of the fixpoints of h_v relative to the pivots: a single fixpoint
// lies outside (p_-, p_+); with two, x1 <= p_- and p_+ <= x3 up to the tangent
// root; with three, x1 <= p_- < x2 < p_+ <= x3. Comparisons use `slack`.
PositioningResult check_positioning(double w, double v, const FixpointSet &fx,
                                    double slack);

} // namespace rncx::tanh

#endif
