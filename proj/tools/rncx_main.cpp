// rncx: simulate RNC+ networks, extract cascades, and check automata.
//
// Exit codes: 0 success / property holds, 1 property fails or counterexample
// found, 2 usage or IO error, 3 numeric nonconvergence.

#include "rncx/automata.hpp"
#include "rncx/error.hpp"
#include "rncx/extraction.hpp"
#include "rncx/fixtures.hpp"
#include "rncx/monoid.hpp"
#include "rncx/rnc_dynamics.hpp"
#include "rncx/serialization.hpp"
#include "rncx/sweep.hpp"
#include "rncx/tanh_analysis.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace rncx;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kNoConvergence = 3;

struct Options {
    std::string net;
    std::vector<std::string> automata;
    std::string word;
    std::size_t max_len = 10;
    std::size_t trials = 10'000;
    std::uint64_t seed = 0;
    double tol = tanh::kDefaultTol;
    double margin = 1e-6;
    double rep_tol = 1e-7;
    long max_iter = tanh::kDefaultMaxIter;
    std::string out;
    std::string dot;
    bool json = false;
    int jobs = 1;
    double weight = 0.0;
    double offset = 0.0;
    std::size_t cap = kDefaultMonoidCap;
    std::string name;
    std::string letter;
};

Word split_word(const std::string &text)
{
    std::istringstream in(text);
    Word w;
    for (std::string tok; in >> tok;)
        w.push_back(tok);
    return w;
}

std::string join(const std::vector<std::string> &items, const std::string &sep = " ")
{
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i)
        s += (i ? sep : "") + items[i];
    return s;
}

std::string show_word(const std::optional<Word> &w)
{
    if (!w)
        return "-";
    return w->empty() ? "(empty word)" : join(*w);
}

fixtures::NetFixture load_net(const Options &o)
{
    if (o.net.empty())
        throw Error(ErrorKind::InvalidArgument, "--net is required");
    return net_from_json(read_json_file(o.net));
}

Automaton load_automaton(const std::string &path)
{
    return automaton_from_json(read_json_file(path));
}

const std::string &single_automaton(const Options &o)
{
    if (o.automata.size() != 1)
        throw Error(ErrorKind::InvalidArgument, "exactly one --automaton is required");
    return o.automata.front();
}

ExtractionConfig config_of(const Options &o)
{
    ExtractionConfig cfg;
    cfg.settle_tol = o.tol;
    cfg.digit_margin = o.margin;
    cfg.rep_consistency_tol = o.rep_tol;
    cfg.max_settle_iter = o.max_iter;
    return cfg;
}

SweepOptions sweep_of(const Options &o)
{
    return {o.max_len, o.trials, o.seed, o.jobs};
}

void emit(const Options &o, const Json &j, const std::string &text)
{
    if (o.json)
        std::cout << dump(j);
    else
        std::cout << text;
}

void write_or_print(const std::string &path, const std::string &text)
{
    if (path.empty())
        std::cout << text;
    else
        write_text_file(path, text);
}

int cmd_simulate(const Options &o)
{
    const auto fx = load_net(o);
    const Word w = split_word(o.word);
    const RunResult r = run(fx.net, fx.alphabet, w);
    Json j = {{"word", w}, {"output", r.output}, {"final_state", r.trajectory.back()}};
    emit(o, j, "output " + r.output + "\n");
    return kOk;
}

int cmd_settle(const Options &o)
{
    const auto fx = load_net(o);
    const Vec x = run(fx.net, fx.alphabet, split_word(o.word)).trajectory.back();
    const SettleResult s = settle(fx.net, fx.alphabet, x, o.tol, o.max_iter);
    const EtaResult e = eta(fx.net, fx.alphabet, x, config_of(o));
    Json j = {{"state", x}, {"limit", s.limit}, {"steps", s.steps}, {"digits", e.digits}};
    std::ostringstream text;
    text.precision(17);
    text << "steps " << s.steps << "\nlimit";
    for (double v : s.limit)
        text << ' ' << v;
    text << "\ndigits";
    for (int d : e.digits)
        text << ' ' << d;
    text << '\n';
    emit(o, j, text.str());
    return kOk;
}

int cmd_analyze_neuron(const Options &o)
{
    const tanh::NeuronShape shape = tanh::NeuronShape::of(o.weight);
    const tanh::FixpointSet fx = tanh::fixpoints(o.weight, o.offset, o.tol);
    Json j = {{"weight", o.weight},
              {"offset", o.offset},
              {"regime", shape.regime == tanh::Regime::Bistable ? "bistable" : "contractive"},
              {"fixpoints", fx.points},
              {"digits", fx.digits}};
    std::ostringstream text;
    text.precision(17);
    text << "regime " << j["regime"].get<std::string>() << '\n';
    if (shape.regime == tanh::Regime::Bistable) {
        const tanh::PivotPair pv = tanh::pivots(o.weight);
        const auto [sm, sp] = tanh::stationary_points(o.weight, o.offset);
        j["pivots"] = {{"p_minus", pv.p_minus},
                       {"p_plus", pv.p_plus},
                       {"v_minus", pv.v_minus},
                       {"v_plus", pv.v_plus}};
        j["stationary_points"] = {sm, sp};
        text << "pivots " << pv.p_minus << ' ' << pv.p_plus << "\noffsets " << pv.v_minus << ' '
             << pv.v_plus << "\nstationary " << sm << ' ' << sp << '\n';
    } else {
        j["pivots"] = nullptr;
        j["stationary_points"] = nullptr;
    }
    text << "fixpoints";
    for (std::size_t i = 0; i < fx.points.size(); ++i)
        text << ' ' << fx.points[i] << " [" << fx.digits[i] << ']';
    text << '\n';
    emit(o, j, text.str());
    return kOk;
}

int cmd_extract(const Options &o)
{
    const auto fx = load_net(o);
    const ExtractionReport r = extract(fx.net, fx.alphabet, config_of(o));
    if (!o.out.empty())
        write_text_file(o.out, dump(report_to_json(r)));
    if (!o.dot.empty())
        write_text_file(o.dot, to_dot(r.flat, "extracted"));
    const std::size_t mism = r.count(DiagnosticKind::RepresentativeMismatch);
    Json j = {{"state_count", r.state_count},
              {"bound", digit_tuple_bound(r.neuron_count)},
              {"representative_mismatches", mism},
              {"ambiguous_digits", r.count(DiagnosticKind::AmbiguousDigit)},
              {"dummy_transition_levels", r.count(DiagnosticKind::DummyTransitionUsed)}};
    if (o.out.empty())
        j["report"] = report_to_json(r);
    std::ostringstream text;
    text << "states " << r.state_count << " (bound " << digit_tuple_bound(r.neuron_count) << ")\n"
         << "representative mismatches " << mism << '\n';
    emit(o, j, text.str());
    return mism == 0 ? kOk : kFail;
}

int cmd_verify(const Options &o)
{
    const auto fx = load_net(o);
    const ExtractionReport r = extract(fx.net, fx.alphabet, config_of(o));
    const VerificationSummary s = verify_extraction(fx.net, fx.alphabet, r, sweep_of(o));
    std::ostringstream text;
    for (const CheckResult &c : s.checks)
        text << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail
             << (c.counterexample ? " [" + show_word(c.counterexample) + "]" : "") << '\n';
    if (!s.sound)
        text << "UNSOUND\n";
    emit(o, summary_to_json(s), text.str());
    return s.passed() ? kOk : kFail;
}

int cmd_minimize(const Options &o)
{
    const Automaton m = minimize(load_automaton(single_automaton(o)));
    const std::string text = dump(automaton_to_json(m));
    if (o.out.empty())
        std::cout << text;
    else
        write_text_file(o.out, text);
    if (!o.dot.empty())
        write_text_file(o.dot, to_dot(m));
    return kOk;
}

int cmd_check_identity(const Options &o)
{
    const Automaton a = load_automaton(single_automaton(o));
    const std::set<std::string> ids = identity_letters(a);
    const std::vector<std::string> list(ids.begin(), ids.end());
    Json j = {{"identity_letters", list}};
    bool ok = !ids.empty();
    if (!o.letter.empty()) {
        ok = ids.count(o.letter) > 0;
        j["letter"] = o.letter;
        j["is_identity"] = ok;
    }
    emit(o, j, "identity letters: " + (list.empty() ? std::string("none") : join(list)) + "\n");
    return ok ? kOk : kFail;
}

int cmd_check_aperiodic(const Options &o)
{
    const AperiodicityResult r = check_aperiodic(load_automaton(single_automaton(o)), o.cap);
    std::ostringstream text;
    text << (r.aperiodic ? "aperiodic" : "not aperiodic") << " (monoid size " << r.monoid_size
         << ")\n";
    if (r.witness) {
        std::vector<std::string> t;
        for (State q : *r.witness)
            t.push_back(std::to_string(q));
        text << "witness word " << show_word(r.witness_word) << " transformation [" << join(t, ",")
             << "] period " << r.witness_period << '\n';
    }
    emit(o, aperiodicity_to_json(r), text.str());
    return r.aperiodic ? kOk : kFail;
}

int cmd_equiv(const Options &o)
{
    if (!o.net.empty()) {
        const auto fx = load_net(o);
        const NetEquivalence e =
            net_equivalent(fx.net, fx.alphabet, load_automaton(single_automaton(o)), sweep_of(o));
        std::string text = e.equal ? "equal (" + std::to_string(e.words_checked) + " words)\n"
                                   : "counterexample " + show_word(e.counterexample) + ": net " +
                                         e.net_output + ", automaton " + e.automaton_output + "\n";
        emit(o, net_equivalence_to_json(e), text);
        return e.equal ? kOk : kFail;
    }
    if (o.automata.size() != 2)
        throw Error(ErrorKind::InvalidArgument,
                    "equiv needs --net with one --automaton, or two --automaton files");
    const Equivalence e = equivalent(load_automaton(o.automata[0]), load_automaton(o.automata[1]));
    std::string text = e.equal ? "equal\n"
                               : "counterexample " + show_word(e.counterexample) + ": " +
                                     e.left_output + " vs " + e.right_output + "\n";
    emit(o, equivalence_to_json(e), text);
    return e.equal ? kOk : kFail;
}

int cmd_fixtures(const Options &o)
{
    if (o.name.empty()) {
        Json list = Json::array();
        std::ostringstream text;
        for (const auto &entry : fixtures::catalog()) {
            list.push_back(
                {{"name", entry.name}, {"kind", entry.kind}, {"description", entry.description}});
            text << entry.name << " (" << entry.kind << "): " << entry.description << '\n';
        }
        emit(o, list, text.str());
        return kOk;
    }
    for (const auto &entry : fixtures::catalog()) {
        if (entry.name != o.name)
            continue;
        Json j;
        if (entry.kind == "dfa") {
            j = automaton_to_json(fixtures::dfa_fixture(o.name));
        } else {
            const auto fx = fixtures::net_fixture(o.name);
            j = net_to_json(fx.net, fx.alphabet);
        }
        write_or_print(o.out, dump(j));
        return kOk;
    }
    throw Error(ErrorKind::UnknownFixture, "unknown fixture '" + o.name + "'");
}

int cmd_export_dot(const Options &o)
{
    std::string text;
    if (!o.net.empty()) {
        const auto fx = load_net(o);
        text = to_dot(extract(fx.net, fx.alphabet, config_of(o)).flat, "extracted");
    } else {
        text = to_dot(load_automaton(single_automaton(o)));
    }
    write_or_print(o.dot, text);
    return kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"RNC+ simulation, cascade extraction and automata checks"};
    app.require_subcommand(1);
    Options o;

    const auto common = [&o](CLI::App *sub) {
        sub->add_flag("--json", o.json, "Machine-readable JSON on standard output");
        sub->add_option("--jobs", o.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    };
    const auto tolerances = [&o](CLI::App *sub) {
        sub->add_option("--tol", o.tol, "Settling step tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--margin", o.margin, "Digit ambiguity margin around pivots")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--rep-tol", o.rep_tol, "Representative consistency tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-iter", o.max_iter, "Settling iteration cap per level")
            ->check(CLI::PositiveNumber);
    };
    const auto sweep = [&o](CLI::App *sub) {
        sub->add_option("--max-len", o.max_len, "Exhaustive word length");
        sub->add_option("--trials", o.trials, "Random words after the exhaustive phase");
        sub->add_option("--seed", o.seed, "Seed for random words");
    };

    std::vector<std::pair<CLI::App *, int (*)(const Options &)>> handlers;
    const auto add = [&](const char *name, const char *desc, int (*fn)(const Options &)) {
        CLI::App *sub = app.add_subcommand(name, desc);
        common(sub);
        handlers.emplace_back(sub, fn);
        return sub;
    };

    auto *sim = add("simulate", "Run a network on a word", cmd_simulate);
    sim->add_option("--net", o.net, "Network JSON")->required();
    sim->add_option("--word", o.word, "Space-separated letters");

    auto *st = add("settle", "Settle the state reached after a word under the identity letter",
                   cmd_settle);
    st->add_option("--net", o.net, "Network JSON")->required();
    st->add_option("--word", o.word, "Space-separated letters");
    tolerances(st);

    auto *an = add("analyze-neuron", "Pivots, stationary points and fixpoints of one neuron",
                   cmd_analyze_neuron);
    an->add_option("--weight", o.weight, "Recurrent weight w > 0")->required();
    an->add_option("--offset", o.offset, "Constant input offset v");
    an->add_option("--tol", o.tol, "Root residual tolerance")->check(CLI::PositiveNumber);

    auto *ex = add("extract", "Extract the cascade automaton of a network", cmd_extract);
    ex->add_option("--net", o.net, "Network JSON")->required();
    ex->add_option("--out", o.out, "Report JSON output");
    ex->add_option("--dot", o.dot, "DOT output of the flat automaton");
    tolerances(ex);

    auto *ve = add("verify", "Extract and verify against the network", cmd_verify);
    ve->add_option("--net", o.net, "Network JSON")->required();
    tolerances(ve);
    sweep(ve);

    auto *mi = add("minimize", "Minimize an automaton", cmd_minimize);
    mi->add_option("--automaton", o.automata, "Automaton JSON")->required();
    mi->add_option("--out", o.out, "Output JSON");
    mi->add_option("--dot", o.dot, "DOT output");

    auto *ci = add("check-identity", "Identity letters of the canonical automaton",
                   cmd_check_identity);
    ci->add_option("--automaton", o.automata, "Automaton JSON")->required();
    ci->add_option("--letter", o.letter, "Check this letter only");

    auto *ca = add("check-aperiodic", "Aperiodicity via the transition monoid",
                   cmd_check_aperiodic);
    ca->add_option("--automaton", o.automata, "Automaton JSON")->required();
    ca->add_option("--cap", o.cap, "Monoid size cap");

    auto *eq = add("equiv", "Equivalence of two automata, or of a network and an automaton",
                   cmd_equiv);
    eq->add_option("--net", o.net, "Network JSON");
    eq->add_option("--automaton", o.automata, "Automaton JSON (repeat for two automata)")
        ->required();
    sweep(eq);

    auto *fx = add("fixtures", "List or export built-in fixtures", cmd_fixtures);
    fx->add_option("--name", o.name, "Fixture to export");
    fx->add_option("--out", o.out, "Output JSON");

    auto *dot = add("export-dot", "Render an automaton (or an extracted network) as DOT",
                    cmd_export_dot);
    dot->add_option("--automaton", o.automata, "Automaton JSON");
    dot->add_option("--net", o.net, "Network JSON");
    dot->add_option("--dot", o.dot, "Output file");
    tolerances(dot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        for (const auto &[sub, fn] : handlers)
            if (sub->parsed())
                return fn(o);
    } catch (const rncx::Error &e) {
        std::cerr << "rncx: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return e.kind() == ErrorKind::NoConvergence ? kNoConvergence : kUsage;
    } catch (const std::exception &e) {
        std::cerr << "rncx: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
