#include "rncx/extraction.hpp"

#include "rncx/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace rncx {

namespace {

constexpr std::size_t kDigits = 3;

std::string tuple_string(const DigitTuple &t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(t[i]);
    }
    return s + ")";
}

void require_rnc_plus(const CascadeNet &net, const GroundedAlphabet &alphabet)
{
    validate(net, alphabet);
    const auto bad = validate_rncp(net);
    if (!bad.empty()) {
        std::ostringstream os;
        os << "network is not RNC+: non-positive weight at neuron";
        for (std::size_t i : bad)
            os << ' ' << i;
        throw Error(ErrorKind::NotRncPlus, os.str());
    }
    if (!alphabet.identity)
        throw Error(ErrorKind::InvalidArgument, "extraction needs an identity letter");
}

} // namespace

void ExtractionConfig::check() const
{
    if (!(settle_tol > 0.0) || !(digit_margin > 0.0) || !(rep_consistency_tol > 0.0) ||
        max_settle_iter < 1)
        throw Error(ErrorKind::InvalidArgument, "extraction config values must be positive");
}

std::string_view to_string(DiagnosticKind kind)
{
    switch (kind) {
    case DiagnosticKind::AmbiguousDigit: return "AmbiguousDigit";
    case DiagnosticKind::RepresentativeMismatch: return "RepresentativeMismatch";
    case DiagnosticKind::DummyTransitionUsed: return "DummyTransitionUsed";
    case DiagnosticKind::SettledOutputDiffers: return "SettledOutputDiffers";
    }
    return "Unknown";
}

std::size_t ExtractionReport::count(DiagnosticKind kind) const
{
    return static_cast<std::size_t>(std::count_if(
        diagnostics.begin(), diagnostics.end(), [kind](const Diagnostic &d) { return d.kind == kind; }));
}

std::size_t digit_tuple_bound(std::size_t n)
{
    std::size_t b = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (b > std::numeric_limits<std::size_t>::max() / kDigits)
            return std::numeric_limits<std::size_t>::max();
        b *= kDigits;
    }
    return b;
}

EtaResult eta(const CascadeNet &net, const GroundedAlphabet &alphabet, std::span<const double> x,
              const ExtractionConfig &cfg)
{
    require_rnc_plus(net, alphabet);
    cfg.check();
    EtaResult res;
    res.limit = settle(net, alphabet, x, cfg.settle_tol, cfg.max_settle_iter).limit;
    res.digits.resize(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        const double w = net.neurons[i].weight;
        if (w <= 1.0) {
            res.digits[i] = 2;
            continue;
        }
        const tanh::PivotPair pv = tanh::pivots(w);
        if (tanh::classify(res.limit[i], pv, cfg.digit_margin) == tanh::Digit::Ambiguous)
            res.ambiguous_levels.push_back(i + 1);
        res.digits[i] = tanh::kappa(res.limit[i], pv);
    }
    return res;
}

ExtractionReport extract(const CascadeNet &net, const GroundedAlphabet &alphabet,
                         const ExtractionConfig &cfg)
{
    require_rnc_plus(net, alphabet);
    cfg.check();
    const std::size_t n = net.size();
    const std::size_t k = alphabet.letters.size();

    ExtractionReport rep;
    rep.config = cfg;
    rep.neuron_count = n;
    rep.identity_letter = *alphabet.identity;
    rep.cascade.input_alphabet = alphabet.letters;

    // Level i: 3 states, alphabet Sigma x {1,2,3}^i.
    std::vector<std::vector<std::vector<int>>> table(n);  // -1 = unobserved
    for (std::size_t i = 0; i < n; ++i) {
        Semiautomaton level;
        level.alphabet =
            cascade_level_alphabet(alphabet.letters, std::vector<std::size_t>(i, kDigits), 1);
        level.delta.assign(kDigits, std::vector<State>(level.alphabet.size(), 0));
        rep.cascade.levels.push_back(std::move(level));
        table[i].assign(kDigits, std::vector<int>(rep.cascade.levels[i].alphabet.size(), -1));
    }

    std::map<DigitTuple, std::size_t> index;
    const auto note_ambiguous = [&rep](const EtaResult &e, const DigitTuple &from,
                                       const std::string &letter) {
        for (std::size_t lvl : e.ambiguous_levels) {
            std::ostringstream os;
            os.precision(17);
            os << "settled value " << e.limit[lvl - 1] << " within digit margin of a pivot";
            rep.diagnostics.push_back(
                {DiagnosticKind::AmbiguousDigit, lvl, from, letter, os.str()});
        }
    };
    const auto add_state = [&](const DigitTuple &t, const Vec &x, const Vec &limit) {
        index.emplace(t, rep.representatives.size());
        rep.representatives.push_back({t, x, limit});
        rep.flat.semi.delta.emplace_back(k, 0);
    };

    {
        const EtaResult e0 = eta(net, alphabet, net.initial_state, cfg);
        note_ambiguous(e0, e0.digits, "");
        add_state(e0.digits, net.initial_state, e0.limit);
    }

    for (std::size_t head = 0; head < rep.representatives.size(); ++head) {
        for (std::size_t l = 0; l < k; ++l) {
            const std::string &letter = alphabet.letters[l];
            // Copies: add_state may reallocate the representative table.
            const DigitTuple from = rep.representatives[head].tuple;
            const Vec next = step(net, rep.representatives[head].state, alphabet.rep(letter));
            const EtaResult e = eta(net, alphabet, next, cfg);
            note_ambiguous(e, from, letter);

            std::vector<State> cur_states(n);
            for (std::size_t i = 0; i < n; ++i)
                cur_states[i] = from[i] - 1;
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t ll = rep.cascade.level_letter(i, l, cur_states);
                int &slot = table[i][cur_states[i]][ll];
                if (slot < 0) {
                    slot = e.digits[i];
                } else if (slot != e.digits[i]) {
                    rep.diagnostics.push_back(
                        {DiagnosticKind::RepresentativeMismatch, i + 1, from, letter,
                         "level transition on " + rep.cascade.levels[i].alphabet[ll] +
                             " already leads to digit " + std::to_string(slot) + ", now " +
                             std::to_string(e.digits[i])});
                }
            }

            const auto it = index.find(e.digits);
            std::size_t target;
            if (it == index.end()) {
                target = rep.representatives.size();
                add_state(e.digits, next, e.limit);
            } else {
                target = it->second;
                const Vec &stored = rep.representatives[target].limit;
                double worst = 0.0;
                std::size_t worst_level = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = std::abs(stored[i] - e.limit[i]);
                    if (d > worst) {
                        worst = d;
                        worst_level = i + 1;
                    }
                }
                if (worst > cfg.rep_consistency_tol) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "settled limits differ by " << worst << " from the representative of "
                       << tuple_string(e.digits);
                    rep.diagnostics.push_back({DiagnosticKind::RepresentativeMismatch, worst_level,
                                               from, letter, os.str()});
                }
            }
            rep.flat.semi.delta[head][l] = static_cast<State>(target);
        }
    }

    // Unobserved level transitions become self-loops.
    rep.observed.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t dummies = 0;
        rep.observed[i].assign(kDigits, std::vector<bool>(table[i][0].size(), false));
        for (std::size_t q = 0; q < kDigits; ++q)
            for (std::size_t ll = 0; ll < table[i][q].size(); ++ll) {
                const int d = table[i][q][ll];
                rep.observed[i][q][ll] = d >= 0;
                rep.cascade.levels[i].delta[q][ll] = d >= 0 ? d - 1 : static_cast<State>(q);
                dummies += d >= 0 ? 0 : 1;
            }
        if (dummies > 0)
            rep.diagnostics.push_back({DiagnosticKind::DummyTransitionUsed, i + 1, {}, "",
                                       std::to_string(dummies) +
                                           " level transitions completed as self-loops"});
    }

    rep.flat.semi.alphabet = alphabet.letters;
    rep.flat.initial = 0;
    for (const Representative &r : rep.representatives) {
        const std::string settled = output_letter(net, alphabet, r.limit);
        const std::string raw = output_letter(net, alphabet, r.state);
        if (settled != raw)
            rep.diagnostics.push_back({DiagnosticKind::SettledOutputDiffers, 0, r.tuple, "",
                                       "raw output " + raw + ", settled output " + settled});
        rep.flat.outputs.push_back(settled);
    }
    rep.state_count = rep.representatives.size();
    return rep;
}

bool VerificationSummary::passed() const
{
    return sound && std::all_of(checks.begin(), checks.end(),
                                [](const CheckResult &c) { return c.passed; });
}

VerificationSummary verify_extraction(const CascadeNet &net, const GroundedAlphabet &alphabet,
                                      const ExtractionReport &report, const SweepOptions &opt)
{
    VerificationSummary s;

    const std::size_t bound = digit_tuple_bound(report.neuron_count);
    s.checks.push_back({"state_bound", report.state_count <= bound,
                        std::to_string(report.state_count) + " states, bound " +
                            std::to_string(bound),
                        std::nullopt});

    const std::size_t mismatches = report.count(DiagnosticKind::RepresentativeMismatch);
    s.sound = mismatches == 0;
    s.checks.push_back({"representative_consistency", mismatches == 0,
                        mismatches == 0 ? "consistent"
                                        : "UNSOUND: " + std::to_string(mismatches) +
                                              " representative mismatches",
                        std::nullopt});

    const NetEquivalence eq = net_equivalent(net, alphabet, report.flat, opt);
    std::string detail = std::to_string(eq.words_checked) + " words compared";
    if (!eq.equal)
        detail = "net says " + eq.net_output + ", automaton says " + eq.automaton_output;
    s.checks.push_back({"net_equivalence", eq.equal, detail, eq.counterexample});

    const Automaton min = minimize(report.flat);
    const bool id = is_identity_transformation(min.semi, report.identity_letter);
    s.checks.push_back({"identity_transformation", id,
                        "identity letter " + report.identity_letter +
                            (id ? " fixes every state" : " moves some state") +
                            " of the minimized automaton",
                        std::nullopt});
    return s;
}

} // namespace rncx
