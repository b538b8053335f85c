#include "rncx/serialization.hpp"

#include "rncx/error.hpp"

#include <fstream>
#include <sstream>

namespace rncx {

namespace {

[[noreturn]] void parse_error(const std::string &what)
{
    throw Error(ErrorKind::Parse, what);
}

// Runs `fn`, converting nlohmann type/key errors into Parse errors.
template <typename Fn>
auto guarded(const char *what, Fn &&fn)
{
    try {
        return fn();
    } catch (const nlohmann::json::exception &e) {
        parse_error(std::string(what) + ": " + e.what());
    }
}

Json diagnostic_to_json(const Diagnostic &d)
{
    return {{"kind", std::string(to_string(d.kind))},
            {"level", d.level},
            {"tuple", d.tuple},
            {"letter", d.letter},
            {"detail", d.detail}};
}

DiagnosticKind diagnostic_kind_from(const std::string &s)
{
    for (DiagnosticKind k : {DiagnosticKind::AmbiguousDigit, DiagnosticKind::RepresentativeMismatch,
                             DiagnosticKind::DummyTransitionUsed,
                             DiagnosticKind::SettledOutputDiffers})
        if (to_string(k) == s)
            return k;
    parse_error("unknown diagnostic kind '" + s + "'");
}

Json semiautomaton_to_json(const Semiautomaton &s)
{
    return {{"alphabet", s.alphabet}, {"states", s.num_states()}, {"delta", s.delta}};
}

Semiautomaton semiautomaton_from_json(const Json &j)
{
    Semiautomaton s;
    s.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    s.delta = j.at("delta").get<std::vector<std::vector<State>>>();
    if (j.at("states").get<std::size_t>() != s.delta.size())
        parse_error("'states' does not match the number of delta rows");
    return s;
}

} // namespace

Json input_function_to_json(const InputFunction &f)
{
    Json layers = Json::array();
    for (const Layer &l : f.layers())
        layers.push_back({{"w", l.weights}, {"b", l.bias}});
    return {{"kind", f.kind() == InputFunction::Kind::Affine ? "affine" : "layered"},
            {"layers", layers}};
}

InputFunction input_function_from_json(const Json &j)
{
    return guarded("input function", [&] {
        std::vector<Layer> layers;
        for (const Json &l : j.at("layers"))
            layers.push_back(
                {l.at("w").get<std::vector<Vec>>(), l.at("b").get<Vec>()});
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "affine") {
            if (layers.size() != 1)
                parse_error("affine input function must have exactly one layer");
            return InputFunction::affine(layers[0].weights, layers[0].bias);
        }
        if (kind == "layered")
            return InputFunction::layered(std::move(layers));
        parse_error("unknown input function kind '" + kind + "'");
    });
}

Json net_to_json(const CascadeNet &net, const GroundedAlphabet &alphabet)
{
    Json neurons = Json::array();
    for (const Neuron &n : net.neurons)
        neurons.push_back({{"weight", n.weight}, {"beta", input_function_to_json(n.beta)}});
    Json bands = Json::array();
    for (const OutputBand &b : alphabet.output_bands)
        bands.push_back({b.lower, b.upper, b.letter});
    Json reps = Json::object();
    for (const auto &[letter, v] : alphabet.reps)
        reps[letter] = v;
    return {{"input_dim", net.input_dim},
            {"neurons", neurons},
            {"initial_state", net.initial_state},
            {"output", input_function_to_json(net.output)},
            {"alphabet",
             {{"letters", alphabet.letters},
              {"reps", reps},
              {"identity", alphabet.identity ? Json(*alphabet.identity) : Json(nullptr)},
              {"output_bands", bands}}}};
}

fixtures::NetFixture net_from_json(const Json &j)
{
    fixtures::NetFixture fx = guarded("network", [&] {
        fixtures::NetFixture out;
        out.net.input_dim = j.at("input_dim").get<std::size_t>();
        for (const Json &n : j.at("neurons"))
            out.net.neurons.push_back(
                {n.at("weight").get<double>(), input_function_from_json(n.at("beta"))});
        out.net.initial_state = j.at("initial_state").get<Vec>();
        out.net.output = input_function_from_json(j.at("output"));
        const Json &a = j.at("alphabet");
        out.alphabet.letters = a.at("letters").get<std::vector<std::string>>();
        for (const auto &[letter, v] : a.at("reps").items())
            out.alphabet.reps.emplace(letter, v.get<Vec>());
        if (!a.at("identity").is_null())
            out.alphabet.identity = a.at("identity").get<std::string>();
        for (const Json &b : a.at("output_bands")) {
            if (!b.is_array() || b.size() != 3)
                parse_error("output band must be [lower, upper, letter]");
            out.alphabet.output_bands.push_back(
                {b[0].get<double>(), b[1].get<double>(), b[2].get<std::string>()});
        }
        return out;
    });
    try {
        validate(fx.net, fx.alphabet);
    } catch (const Error &e) {
        parse_error(std::string("invalid network: ") + e.what());
    }
    return fx;
}

Json automaton_to_json(const Automaton &a)
{
    return {{"alphabet", a.alphabet()},
            {"states", a.num_states()},
            {"delta", a.semi.delta},
            {"initial", a.initial},
            {"outputs", a.outputs}};
}

Automaton automaton_from_json(const Json &j)
{
    Automaton a = guarded("automaton", [&] {
        Automaton out;
        out.semi = semiautomaton_from_json(j);
        out.initial = j.at("initial").get<State>();
        out.outputs = j.at("outputs").get<std::vector<std::string>>();
        return out;
    });
    try {
        a.check();
    } catch (const Error &e) {
        parse_error(std::string("invalid automaton: ") + e.what());
    }
    return a;
}

Json report_to_json(const ExtractionReport &r)
{
    Json levels = Json::array();
    for (std::size_t i = 0; i < r.cascade.levels.size(); ++i) {
        Json l = semiautomaton_to_json(r.cascade.levels[i]);
        l["digits"] = {1, 2, 3};
        l["observed"] = r.observed.size() > i ? Json(r.observed[i]) : Json::array();
        levels.push_back(std::move(l));
    }
    Json reps = Json::array();
    for (const Representative &rep : r.representatives)
        reps.push_back({{"tuple", rep.tuple}, {"state", rep.state}, {"limit", rep.limit}});
    Json diags = Json::array();
    for (const Diagnostic &d : r.diagnostics)
        diags.push_back(diagnostic_to_json(d));
    return {{"cascade", {{"input_alphabet", r.cascade.input_alphabet}, {"levels", levels}}},
            {"flat", automaton_to_json(r.flat)},
            {"representatives", reps},
            {"diagnostics", diags},
            {"state_count", r.state_count},
            {"neuron_count", r.neuron_count},
            {"identity_letter", r.identity_letter},
            {"config",
             {{"settle_tol", r.config.settle_tol},
              {"digit_margin", r.config.digit_margin},
              {"rep_consistency_tol", r.config.rep_consistency_tol},
              {"max_settle_iter", r.config.max_settle_iter}}}};
}

ExtractionReport report_from_json(const Json &j)
{
    return guarded("extraction report", [&] {
        ExtractionReport r;
        const Json &c = j.at("cascade");
        r.cascade.input_alphabet = c.at("input_alphabet").get<std::vector<std::string>>();
        for (const Json &l : c.at("levels")) {
            r.cascade.levels.push_back(semiautomaton_from_json(l));
            r.observed.push_back(l.at("observed").get<std::vector<std::vector<bool>>>());
        }
        r.flat = automaton_from_json(j.at("flat"));
        for (const Json &rep : j.at("representatives"))
            r.representatives.push_back({rep.at("tuple").get<DigitTuple>(),
                                         rep.at("state").get<Vec>(), rep.at("limit").get<Vec>()});
        for (const Json &d : j.at("diagnostics"))
            r.diagnostics.push_back({diagnostic_kind_from(d.at("kind").get<std::string>()),
                                     d.at("level").get<std::size_t>(),
                                     d.at("tuple").get<DigitTuple>(),
                                     d.at("letter").get<std::string>(),
                                     d.at("detail").get<std::string>()});
        r.state_count = j.at("state_count").get<std::size_t>();
        r.neuron_count = j.at("neuron_count").get<std::size_t>();
        r.identity_letter = j.at("identity_letter").get<std::string>();
        const Json &cfg = j.at("config");
        r.config.settle_tol = cfg.at("settle_tol").get<double>();
        r.config.digit_margin = cfg.at("digit_margin").get<double>();
        r.config.rep_consistency_tol = cfg.at("rep_consistency_tol").get<double>();
        r.config.max_settle_iter = cfg.at("max_settle_iter").get<long>();
        return r;
    });
}

Json summary_to_json(const VerificationSummary &s)
{
    Json checks = Json::array();
    for (const CheckResult &c : s.checks) {
        Json item = {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
        item["counterexample"] = c.counterexample ? Json(*c.counterexample) : Json(nullptr);
        checks.push_back(std::move(item));
    }
    return {{"checks", checks}, {"sound", s.sound}, {"passed", s.passed()}};
}

Json aperiodicity_to_json(const AperiodicityResult &r)
{
    Json j = {{"aperiodic", r.aperiodic},
              {"monoid_size", r.monoid_size},
              {"minimal_states", r.minimal_states}};
    if (r.witness) {
        j["witness"] = {{"transformation", *r.witness},
                        {"word", r.witness_word},
                        {"period", r.witness_period}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json net_equivalence_to_json(const NetEquivalence &e)
{
    Json j = {{"equal", e.equal}, {"words_checked", e.words_checked}};
    if (e.counterexample) {
        j["counterexample"] = *e.counterexample;
        j["from_random"] = e.counterexample_from_random;
        j["net_output"] = e.net_output;
        j["automaton_output"] = e.automaton_output;
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

Json equivalence_to_json(const Equivalence &e)
{
    Json j = {{"equal", e.equal}};
    if (e.counterexample) {
        j["counterexample"] = *e.counterexample;
        j["left_output"] = e.left_output;
        j["right_output"] = e.right_output;
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

std::string dump(const Json &j)
{
    return j.dump(2) + "\n";
}

Json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        parse_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        parse_error("'" + path + "': " + e.what());
    }
}

void write_text_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path);
    if (!out)
        parse_error("cannot write '" + path + "'");
    out << text;
    if (!out)
        parse_error("write to '" + path + "' failed");
}

} // namespace rncx
