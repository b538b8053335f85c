#ifndef RNCX_SERIALIZATION_HPP
#define RNCX_SERIALIZATION_HPP

// JSON encodings of networks, automata, extraction reports and summaries.
// Objects serialize with sorted keys and shortest round-trip doubles, so
// save -> load -> save is byte-stable.

#include "rncx/automata.hpp"
#include "rncx/extraction.hpp"
#include "rncx/fixtures.hpp"
#include "rncx/monoid.hpp"
#include "rncx/rnc_dynamics.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace rncx {

using Json = nlohmann::json;

Json input_function_to_json(const InputFunction &f);
InputFunction input_function_from_json(const Json &j);

Json net_to_json(const CascadeNet &net, const GroundedAlphabet &alphabet);
fixtures::NetFixture net_from_json(const Json &j);  // throws Parse

Json automaton_to_json(const Automaton &a);
Automaton automaton_from_json(const Json &j);  // throws Parse

Json report_to_json(const ExtractionReport &r);
ExtractionReport report_from_json(const Json &j);  // throws Parse

Json summary_to_json(const VerificationSummary &s);
Json aperiodicity_to_json(const AperiodicityResult &r);
Json net_equivalence_to_json(const NetEquivalence &e);
Json equivalence_to_json(const Equivalence &e);

std::string dump(const Json &j);  // two-space indent, trailing newline

Json read_json_file(const std::string &path);                       // throws Parse
void write_text_file(const std::string &path, const std::string &text);  // throws Parse

} // namespace rncx

#endif
