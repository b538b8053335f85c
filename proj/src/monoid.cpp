#include "rncx/monoid.hpp"

#include "rncx/error.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace rncx {

namespace {

struct TransformationHash {
    std::size_t operator()(const Transformation &t) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (State s : t) {
            h ^= static_cast<std::size_t>(s) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace

Transformation compose(const Transformation &first, const Transformation &then)
{
    Transformation out(first.size());
    for (std::size_t q = 0; q < first.size(); ++q)
        out[q] = then[first[q]];
    return out;
}

bool TransitionMonoid::contains(const Transformation &t) const
{
    return std::find(elements.begin(), elements.end(), t) != elements.end();
}

TransitionMonoid transition_monoid(const Semiautomaton &s, std::size_t cap)
{
    s.check();
    const std::size_t n = s.num_states();
    TransitionMonoid m;
    std::vector<Transformation> gens;
    for (std::size_t l = 0; l < s.alphabet.size(); ++l) {
        Transformation t(n);
        for (std::size_t q = 0; q < n; ++q)
            t[q] = s.delta[q][l];
        m.generators.emplace(s.alphabet[l], t);
        gens.push_back(std::move(t));
    }

    Transformation id(n);
    std::iota(id.begin(), id.end(), 0);
    std::unordered_map<Transformation, std::size_t, TransformationHash> index;
    index.emplace(id, 0);
    m.elements.push_back(std::move(id));
    m.words.emplace_back();

    for (std::size_t head = 0; head < m.elements.size(); ++head) {
        for (std::size_t l = 0; l < gens.size(); ++l) {
            Transformation t = compose(m.elements[head], gens[l]);
            if (index.count(t))
                continue;
            if (m.elements.size() >= cap)
                throw Error(ErrorKind::CapExceeded, "transition monoid exceeds " +
                                                        std::to_string(cap) + " elements");
            index.emplace(t, m.elements.size());
            auto w = m.words[head];
            w.push_back(s.alphabet[l]);
            m.elements.push_back(std::move(t));
            m.words.push_back(std::move(w));
        }
    }
    return m;
}

AperiodicityResult check_aperiodic(const Automaton &a, std::size_t cap)
{
    const Automaton min = minimize(a);
    const TransitionMonoid mon = transition_monoid(min.semi, cap);
    const std::size_t n = min.num_states();

    AperiodicityResult res;
    res.monoid_size = mon.size();
    res.minimal_states = n;
    for (std::size_t e = 0; e < mon.size(); ++e) {
        const Transformation &m = mon.elements[e];
        // powers[k-1] = m^k for k = 1..n+1
        std::vector<Transformation> powers{m};
        for (std::size_t k = 1; k <= n; ++k)
            powers.push_back(compose(powers.back(), m));
        bool stable = false;
        for (std::size_t k = 1; k <= n && !stable; ++k)
            stable = powers[k - 1] == powers[k];
        if (stable)
            continue;
        res.aperiodic = false;
        res.witness = m;
        res.witness_word = mon.words[e];
        // Period of the eventual cycle m^n, m^{n+1}, ...
        const Transformation &base = powers[n - 1];
        Transformation cur = compose(base, m);
        std::size_t period = 1;
        while (cur != base) {
            cur = compose(cur, m);
            ++period;
        }
        res.witness_period = period;
        break;
    }
    return res;
}

bool is_aperiodic(const Automaton &a, std::size_t cap)
{
    return check_aperiodic(a, cap).aperiodic;
}

} // namespace rncx
