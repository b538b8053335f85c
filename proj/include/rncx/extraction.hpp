#ifndef RNCX_EXTRACTION_HPP
#define RNCX_EXTRACTION_HPP

// Extraction of a cascade of three-state semiautomata from an RNC+ network.
//
// A network state is named by its digit tuple: each coordinate of the settled
// limit under the identity letter is placed relative to its neuron's pivots
// (1 below p_-, 2 between, 3 above p_+). Exploration is breadth first over
// digit tuples, one stored representative network state per tuple.

#include "rncx/automata.hpp"
#include "rncx/rnc_dynamics.hpp"
#include "rncx/sweep.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rncx {

using DigitTuple = std::vector<int>;

struct ExtractionConfig {
    double settle_tol = 1e-12;
    double digit_margin = 1e-6;
    double rep_consistency_tol = 1e-7;
    long max_settle_iter = 1'000'000;

    void check() const;  // throws InvalidArgument unless all positive
};

enum class DiagnosticKind {
    AmbiguousDigit,
    RepresentativeMismatch,
    DummyTransitionUsed,
    SettledOutputDiffers,
};

std::string_view to_string(DiagnosticKind kind);

struct Diagnostic {
    DiagnosticKind kind;
    std::size_t level = 0;  // 1-based; 0 when not tied to a level
    DigitTuple tuple;       // tuple the event was observed from
    std::string letter;     // empty when not tied to a letter
    std::string detail;
};

struct Representative {
    DigitTuple tuple;
    Vec state;  // network state that first reached the tuple
    Vec limit;  // its settled limit under the identity letter
};

struct ExtractionReport {
    // Level states 0, 1, 2 stand for digits 1, 2, 3.
    SemiCascade cascade;
    // observed[i][state][letter]: transition backed by an explored network state.
    std::vector<std::vector<std::vector<bool>>> observed;
    // State k of `flat` is representatives[k]; outputs read at the settled limit.
    Automaton flat;
    std::vector<Representative> representatives;
    std::vector<Diagnostic> diagnostics;
    std::size_t state_count = 0;
    std::size_t neuron_count = 0;
    std::string identity_letter;
    ExtractionConfig config;

    std::size_t count(DiagnosticKind kind) const;
};

struct EtaResult {
    DigitTuple digits;
    Vec limit;
    std::vector<std::size_t> ambiguous_levels;  // 1-based
};

// Digit tuple of `x`: settle under the identity letter, then classify each
// coordinate against its pivots. Contractive neurons (w <= 1) get digit 2.
// Ambiguous coordinates resolve by the closed-boundary rule and are listed.
EtaResult eta(const CascadeNet &net, const GroundedAlphabet &alphabet, std::span<const double> x,
              const ExtractionConfig &cfg = {});

// Throws NotRncPlus, InvalidArgument (no identity letter), NoConvergenceError
// or UngroundedOutput.
ExtractionReport extract(const CascadeNet &net, const GroundedAlphabet &alphabet,
                         const ExtractionConfig &cfg = {});

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
    std::optional<Word> counterexample;
};

struct VerificationSummary {
    std::vector<CheckResult> checks;
    bool sound = true;  // false when the report carries RepresentativeMismatch events

    bool passed() const;
};

// Empirical check of an extraction: state bound, representative consistency,
// net vs flat automaton equivalence, and the identity letter acting as an
// identity transformation on the minimized automaton. Failures are data.
VerificationSummary verify_extraction(const CascadeNet &net, const GroundedAlphabet &alphabet,
                                      const ExtractionReport &report, const SweepOptions &opt);

// 3^n, saturating.
std::size_t digit_tuple_bound(std::size_t n);

} // namespace rncx

#endif
