#ifndef RNCX_SWEEP_HPP
#define RNCX_SWEEP_HPP

// Data-parallel sweeps. Each kernel has a plain serial reference next to the
// OpenMP version; both return identical results for any thread count.

#include "rncx/automata.hpp"
#include "rncx/rnc_dynamics.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rncx {

struct SweepOptions {
    std::size_t max_len = 10;
    std::size_t random_trials = 0;
    std::uint64_t seed = 0;
    int jobs = 1;
};

struct NetEquivalence {
    bool equal = true;
    std::optional<Word> counterexample;
    bool counterexample_from_random = false;
    std::string net_output;
    std::string automaton_output;
    std::size_t words_checked = 0;
};

// Random words for the sampling phase: lengths uniform in [1, 8 * max_len],
// letters uniform, generated serially from `seed`.
std::vector<Word> random_words(const std::vector<std::string> &letters, std::size_t max_len,
                               std::size_t count, std::uint64_t seed);

// Compares the grounded net output with the automaton output on every word of
// length <= max_len, then on the random words. The exhaustive counterexample is
// the lexicographically least among the shortest; the random one has the
// lowest trial index. Throws AlphabetMismatch or UngroundedOutput.
NetEquivalence net_equivalent(const CascadeNet &net, const GroundedAlphabet &alphabet,
                              const Automaton &a, const SweepOptions &opt);

NetEquivalence net_equivalent_serial(const CascadeNet &net, const GroundedAlphabet &alphabet,
                                     const Automaton &a, const SweepOptions &opt);

struct PositioningSweep {
    std::size_t violations = 0;
    std::vector<std::size_t> counts;  // fixpoint count per (w, v)
    std::vector<bool> ok;
};

PositioningSweep positioning_sweep(const std::vector<double> &w, const std::vector<double> &v,
                                   double slack, int jobs);
PositioningSweep positioning_sweep_serial(const std::vector<double> &w,
                                          const std::vector<double> &v, double slack);

} // namespace rncx

#endif
