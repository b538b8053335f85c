#ifndef RNCX_TESTS_SUPPORT_HPP
#define RNCX_TESTS_SUPPORT_HPP

// Shared oracles and generators for the test binaries. Nothing here calls the
// library routine it is used to check.

#include "rncx/automata.hpp"
#include "rncx/rnc_dynamics.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace rncx::oracle {

// Every word over `letters` of length <= max_len, shortest first, then in
// letter order.
inline std::vector<Word> all_words(const std::vector<std::string> &letters, std::size_t max_len)
{
    std::vector<Word> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (const std::string &l : letters) {
                Word w = out[i];
                w.push_back(l);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

inline Word concat(const Word &a, const Word &b)
{
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

inline Word repeat(const Word &w, std::size_t n)
{
    Word out;
    for (std::size_t i = 0; i < n; ++i)
        out.insert(out.end(), w.begin(), w.end());
    return out;
}

// Outputs read by walking delta directly from the initial state.
inline std::string walk(const Automaton &a, const Word &w)
{
    State q = a.initial;
    for (const std::string &l : w) {
        std::size_t k = 0;
        while (a.semi.alphabet[k] != l)
            ++k;
        q = a.semi.delta[q][k];
    }
    return a.outputs[q];
}

// Number of Myhill-Nerode classes of the function computed by `f`, separating
// prefixes of length <= len by suffixes of length <= len. Exact once `len`
// reaches the number of states of any automaton computing `f`.
inline std::size_t nerode_classes(const std::vector<std::string> &letters,
                                  const std::function<std::string(const Word &)> &f,
                                  std::size_t len)
{
    const std::vector<Word> words = all_words(letters, len);
    std::set<std::vector<std::string>> rows;
    for (const Word &p : words) {
        std::vector<std::string> row;
        row.reserve(words.size());
        for (const Word &s : words)
            row.push_back(f(concat(p, s)));
        rows.insert(std::move(row));
    }
    return rows.size();
}

// Language-level aperiodicity: some n <= bound with x y^n z and x y^{n+1} z
// agreeing for all short x, y, z.
inline bool aperiodic_by_words(const std::vector<std::string> &letters,
                               const std::function<std::string(const Word &)> &f,
                               std::size_t bound, std::size_t len)
{
    const std::vector<Word> words = all_words(letters, len);
    for (std::size_t n = 0; n <= bound; ++n) {
        bool ok = true;
        for (const Word &y : words) {
            if (y.empty())
                continue;
            const Word yn = repeat(y, n);
            const Word yn1 = repeat(y, n + 1);
            for (const Word &x : words) {
                for (const Word &z : words)
                    if (f(concat(concat(x, yn), z)) != f(concat(concat(x, yn1), z))) {
                        ok = false;
                        break;
                    }
                if (!ok)
                    break;
            }
            if (!ok)
                break;
        }
        if (ok)
            return true;
    }
    return false;
}

inline Automaton random_automaton(std::mt19937_64 &rng, std::size_t max_states,
                                  std::size_t max_letters, std::size_t max_outputs = 2)
{
    std::uniform_int_distribution<std::size_t> ns(1, max_states), nl(1, max_letters),
        no(1, max_outputs);
    const std::size_t n = ns(rng), k = nl(rng), o = no(rng);
    Automaton a;
    for (std::size_t l = 0; l < k; ++l)
        a.semi.alphabet.push_back(std::string(1, static_cast<char>('a' + l)));
    std::uniform_int_distribution<State> st(0, static_cast<State>(n - 1));
    std::uniform_int_distribution<std::size_t> out(0, o - 1);
    a.semi.delta.assign(n, std::vector<State>(k));
    for (auto &row : a.semi.delta)
        for (State &t : row)
            t = st(rng);
    for (std::size_t q = 0; q < n; ++q)
        a.outputs.push_back(std::to_string(out(rng)));
    a.initial = st(rng);
    return a;
}

// Random RNC+ net with affine or one-hidden-layer input functions, letters
// "a", "b", ... with identity "a", and output bands split at 0.
inline std::pair<CascadeNet, GroundedAlphabet> random_net(std::mt19937_64 &rng, std::size_t n,
                                                          std::size_t input_dim = 2,
                                                          std::size_t letters = 3)
{
    std::uniform_real_distribution<double> W(0.2, 6.0), C(-2.0, 2.0), X(-1.0, 1.0);
    std::bernoulli_distribution layered(0.3);
    CascadeNet net;
    net.input_dim = input_dim;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t arity = input_dim + i;
        const auto row = [&](std::size_t k) {
            Vec r(k);
            for (double &c : r)
                c = C(rng);
            return r;
        };
        InputFunction beta;
        if (layered(rng)) {
            Layer hidden{{row(arity), row(arity)}, row(2)};
            Layer out{{row(2)}, row(1)};
            beta = InputFunction::layered({hidden, out});
        } else {
            beta = InputFunction::affine({row(arity)}, row(1));
        }
        net.neurons.push_back({W(rng), beta});
        net.initial_state.push_back(X(rng));
    }
    Vec ow(n, 0.0);
    ow.back() = 1.0;
    net.output = InputFunction::affine({ow}, {0.0});
    GroundedAlphabet a;
    for (std::size_t l = 0; l < letters; ++l) {
        const std::string name(1, static_cast<char>('a' + l));
        a.letters.push_back(name);
        Vec u(input_dim);
        for (double &c : u)
            c = l == 0 ? 0.0 : C(rng);
        a.reps[name] = u;
    }
    a.identity = "a";
    a.output_bands = {{-2.0, 0.0, "0"}, {0.0, 2.0, "1"}};
    return {net, a};
}

// Joint iteration of the whole state under a fixed input, no level freezing.
inline Vec joint_iterate(const CascadeNet &net, const Vec &u, Vec x, long steps)
{
    for (long t = 0; t < steps; ++t)
        x = step(net, x, u);
    return x;
}

// Scalar tanh oracles.
inline double sech2(double s)
{
    const double c = std::cosh(s);
    return 1.0 / (c * c);
}

// Solves x = tanh(w x + v), 1 = w sech^2(w x + v) for (x, v) by damped 2-D
// Newton from a point on the positive branch.
inline std::array<double, 2> tangency_newton(double w)
{
    double p = 0.5;
    double v = std::atanh(p) - w * p;
    const auto residual = [w](double p, double v) {
        const double s = w * p + v;
        return std::array<double, 2>{p - std::tanh(s), 1.0 - w * sech2(s)};
    };
    for (int it = 0; it < 200; ++it) {
        const auto f = residual(p, v);
        const double norm = std::hypot(f[0], f[1]);
        if (norm < 1e-15)
            break;
        const double s = w * p + v, sh = sech2(s), th = std::tanh(s);
        const double a = 1.0 - w * sh, b = -sh, c = 2 * w * w * sh * th, d = 2 * w * sh * th;
        const double det = a * d - b * c;
        const double dp = (d * f[0] - b * f[1]) / det;
        const double dv = (a * f[1] - c * f[0]) / det;
        double lambda = 1.0;
        while (lambda > 1e-6) {
            const double np = p - lambda * dp, nv = v - lambda * dv;
            const auto nf = residual(np, nv);
            if (np > 0 && np < 1 && std::hypot(nf[0], nf[1]) < norm) {
                p = np;
                v = nv;
                break;
            }
            lambda /= 2;
        }
    }
    return {p, v};
}

// Root of g' on one monotone branch of sech^2 around x = -v/w.
inline double stationary_bisection(double w, double v, bool upper)
{
    const double c = -v / w;
    double lo = upper ? c : c - 20.0, hi = upper ? c + 20.0 : c;
    const auto gp = [&](double x) { return 1.0 - w * sech2(w * x + v); };
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool neg = gp(mid) < 0;
        if (upper == neg)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Sign-change roots of g on a dense grid over [-1, 1], bisected.
inline std::vector<double> scan_roots(double w, double v, int grid = 200000)
{
    const auto f = [&](double x) { return x - std::tanh(w * x + v); };
    std::vector<double> roots;
    double prev_x = -1.0, prev = f(-1.0);
    for (int k = 1; k <= grid; ++k) {
        const double x = -1.0 + 2.0 * k / grid;
        const double cur = f(x);
        if (prev == 0.0)
            roots.push_back(prev_x);
        else if ((prev < 0) != (cur < 0) && cur != 0.0) {
            double lo = prev_x, hi = x;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                if ((f(mid) < 0) == (prev < 0))
                    lo = mid;
                else
                    hi = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev = cur;
    }
    if (prev == 0.0)
        roots.push_back(1.0);
    return roots;
}

} // namespace rncx::oracle

#endif
