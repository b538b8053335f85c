#ifndef RNCX_MONOID_HPP
#define RNCX_MONOID_HPP

#include "rncx/automata.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rncx {

inline constexpr std::size_t kDefaultMonoidCap = 1'000'000;

// Transformations are applied left to right: (f then g)(q) = g(f(q)), so the
// element reached by a word is the composition of its letters in reading order.
Transformation compose(const Transformation &first, const Transformation &then);

struct TransitionMonoid {
    std::vector<Transformation> elements;                 // elements[0] is the identity
    std::vector<std::vector<std::string>> words;          // a shortest word per element
    std::map<std::string, Transformation> generators;

    std::size_t size() const { return elements.size(); }
    bool contains(const Transformation &t) const;
};

// Breadth-first closure of the letter transformations. Throws CapExceeded when
// more than `cap` elements appear.
TransitionMonoid transition_monoid(const Semiautomaton &s, std::size_t cap = kDefaultMonoidCap);

struct AperiodicityResult {
    bool aperiodic = true;
    std::size_t monoid_size = 0;
    std::size_t minimal_states = 0;
    // Set when not aperiodic: an element m with m^k != m^{k+1} for all k <= |Q|.
    std::optional<Transformation> witness;
    std::vector<std::string> witness_word;
    std::size_t witness_period = 0;
};

// Decided on the minimal automaton: aperiodic iff every monoid element m has
// m^k = m^{k+1} for some k <= |Q|.
AperiodicityResult check_aperiodic(const Automaton &a, std::size_t cap = kDefaultMonoidCap);
bool is_aperiodic(const Automaton &a, std::size_t cap = kDefaultMonoidCap);

} // namespace rncx

#endif
