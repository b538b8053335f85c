#ifndef RNCX_AUTOMATA_HPP
#define RNCX_AUTOMATA_HPP

// Finite semiautomata and Moore automata over named letters. States are dense
// indices 0..n-1 and delta[state][letter_index] is total.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rncx {

using State = int;
using Transformation = std::vector<State>;

struct Semiautomaton {
    std::vector<std::string> alphabet;
    std::vector<std::vector<State>> delta;

    std::size_t num_states() const { return delta.size(); }
    std::size_t letter_index(const std::string &letter) const;  // throws UnknownLetter
    // Throws InvalidArgument when delta is not total or points outside the state range.
    void check() const;

    bool operator==(const Semiautomaton &) const = default;
};

struct Automaton {
    Semiautomaton semi;
    State initial = 0;
    std::vector<std::string> outputs;  // Moore label per state

    std::size_t num_states() const { return semi.num_states(); }
    const std::vector<std::string> &alphabet() const { return semi.alphabet; }
    State next(State q, std::size_t letter) const { return semi.delta[q][letter]; }
    State run_from(State q, const std::vector<std::string> &word) const;
    std::string output(const std::vector<std::string> &word) const;
    void check() const;

    bool operator==(const Automaton &) const = default;
};

// Level i reads the input letter together with the states of levels 0..i-1.
// Its alphabet is indexed as letter + |input| * (q_0 + |Q_0| * (q_1 + ...)).
struct SemiCascade {
    std::vector<std::string> input_alphabet;
    std::vector<Semiautomaton> levels;

    std::size_t prefix_index(std::size_t level, const std::vector<State> &states) const;
    std::size_t level_letter(std::size_t level, std::size_t letter,
                             const std::vector<State> &states) const;
    // Mixed-radix product index with level 0 as the least significant digit.
    std::size_t encode(const std::vector<State> &states) const;
    std::vector<State> decode(std::size_t index) const;
    std::size_t product_size() const;
    void check() const;
};

// Names for level alphabets, e.g. "a|1|3" for letter a with prefix states 1 and 3
// (state labels offset by `label_base`).
std::vector<std::string> cascade_level_alphabet(const std::vector<std::string> &input,
                                                const std::vector<std::size_t> &prefix_sizes,
                                                int label_base);

Semiautomaton flatten(const SemiCascade &c);

Automaton reachable(const Automaton &a);

// Moore partition refinement on output labels over the reachable part,
// renumbered in breadth-first order from the initial state.
Automaton minimize(const Automaton &a);

// Breadth-first renumbering from the initial state (letter order); two
// connected automata are isomorphic iff their canonical forms are equal.
Automaton canonical_order(const Automaton &a);
bool isomorphic(const Automaton &a, const Automaton &b);

bool is_identity_transformation(const Semiautomaton &s, const std::string &letter);

std::set<std::string> identity_letters(const Automaton &a);

struct Equivalence {
    bool equal = true;
    std::optional<std::vector<std::string>> counterexample;
    std::string left_output;
    std::string right_output;
};

// Exact product BFS; the counterexample is shortest and lexicographically least
// in the letter order of `a`. Throws AlphabetMismatch unless the letter sets agree.
Equivalence equivalent(const Automaton &a, const Automaton &b);

std::string to_dot(const Automaton &a, const std::string &name = "automaton");

} // namespace rncx

#endif
