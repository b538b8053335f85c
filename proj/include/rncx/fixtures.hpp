#ifndef RNCX_FIXTURES_HPP
#define RNCX_FIXTURES_HPP

// Reference automata, hand-built RNC+ latch networks, and brute-force
// membership oracles that compute outputs without any automaton.

#include "rncx/automata.hpp"
#include "rncx/rnc_dynamics.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rncx::fixtures {

// Letter names for propositional alphabets.
inline const std::string kEmpty = "{}";
inline const std::string kP = "{p}";
inline const std::string kQ = "{q}";
inline const std::string kPQ = "{p,q}";

inline const std::string kReject = "0";
inline const std::string kAccept = "1";

// Accepts iff a letter containing p occurred. Over {{}, {p}} by default, or
// over {{}, {p}, {q}, {p,q}} when `with_q` is set.
Automaton dfa_diamond_p(bool with_q = false);

// p S q over {{}, {p}, {q}, {p,q}}: states "never", "holding", "broken".
Automaton dfa_p_since_q();

struct Cell {
    int x;
    int y;
};

// n columns by m rows, letters stayed/left/right/up/down with clamped moves.
// Accepts iff the current cell is the goal. Throws OutOfBounds.
Automaton dfa_grid(int n, int m, Cell start, Cell goal);

// Sum of letters "0".."k-1" modulo k; the output is the residue.
Automaton dfa_sum_mod_k(int k);

// Bits "0"/"1"; accepts iff exactly `target` ones were read. States 0..target
// plus an overflow sink.
Automaton dfa_sum_bits_eq(int target);

// Product of letters "0".."max_factor", reported exactly up to `cap` and as
// "big" above it. Zero absorbs.
Automaton dfa_product_truncated(int max_factor, int cap);

// Accepts iff some {p} is strictly followed later by some {q}; letters {}, {p}, {q}.
Automaton dfa_p_then_q();

enum class Command { Hold, High, Low };

struct Guard {
    std::size_t level;  // 0-based index of an earlier latch
    bool high;          // required side of that latch in the previous state
};

// One latch level: the command per letter (missing letters hold), applied only
// while the guard holds; a failing guard drives the latch low.
struct LevelSpec {
    std::map<std::string, Command> commands;
    std::optional<Guard> guard;
};

struct NetFixture {
    CascadeNet net;
    GroundedAlphabet alphabet;
};

inline constexpr double kLatchWeight = 4.0;
inline constexpr double kLatchDrive = 8.0;

// Latch cascade over one-hot letter representatives. beta_i is affine:
//   drive * command(letter) + drive * (s * x_j - 1)  when guarded by latch j.
// The output reads the last latch with bands split at 0. Throws WeakDrive when
// drive <= artanh(p_+) + w, and InvalidArgument when w <= 1 or a guard does not
// point to an earlier level.
NetFixture build_cascade_net(const std::vector<std::string> &letters,
                             const std::string &identity, const std::vector<LevelSpec> &levels,
                             double w = kLatchWeight, double drive = kLatchDrive);

// Single latch: set_high drives up, set_low (if any) drives down, hold letters
// hold. The first hold letter is the identity.
NetFixture build_latch_net(double w, double drive, const std::string &set_high,
                           const std::optional<std::string> &set_low,
                           const std::vector<std::string> &hold);

NetFixture latch_net();             // diamond p over {{}, {p}}
NetFixture latch_net_with_q();      // diamond p over the four-letter alphabet
NetFixture p_then_q_net();          // two levels
NetFixture p_since_q_net();         // one level over the four-letter alphabet

struct CatalogEntry {
    std::string name;
    std::string kind;  // "dfa" or "net"
    std::string description;
};

std::vector<CatalogEntry> catalog();
Automaton dfa_fixture(const std::string &name);  // throws UnknownFixture
NetFixture net_fixture(const std::string &name); // throws UnknownFixture

// The DFA fixtures with the letters designated as identity elements.
std::vector<std::pair<std::string, std::string>> designated_identities();

// Reference output of a named function computed directly from the word.
// Covers every DFA fixture plus the non-regular references "sum_sign"
// (sign of a sum of -1/0/+1 increments) and "grid_unbounded".
std::string brute_membership(const std::string &name, const Word &word);

} // namespace rncx::fixtures

#endif
