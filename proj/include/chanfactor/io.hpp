#pragma once

// JSON and text formats shared by the CLI and tests.
//
//   channel:          { "inputs": [labels], "outputs": [labels], "rows": [[p, ...], ...] }
//   q-factorization:  { "partition": [[input labels], ...],
//                       "states": [{"dim": d, "re": [[..]], "im": [[..]]}, ...],
//                       "povm":   [same matrix schema, ...] }
//   phase ensemble:   { "weights": [...], "a": [...], "b": [...] }   ("phases" ignored)
//
// Labels may be JSON strings or numbers; they are kept as strings and written
// back as numbers when they spell an integer.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "chanfactor/channel.hpp"
#include "chanfactor/phase.hpp"
#include "chanfactor/qfactor.hpp"

namespace chanfactor::io {

using nlohmann::json;

// Shortest decimal that round-trips to the same double.
std::string format_shortest(double v);
// %.12g
std::string format_sig12(double v);

json label_to_json(const std::string& label);

// Errc::parse_error for malformed JSON or schema violations,
// Errc::invalid_channel for rows that fail validation.
Channel channel_from_json(const json& j);
json channel_to_json(const Channel& c);
json parse_json(std::string_view text);
json read_json_file(const std::filesystem::path& path);
Channel read_channel_file(const std::filesystem::path& path);

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json qfactorization_to_json(const Channel& c, const QFactorization& q);
// Partition labels are resolved against `c`.
QFactorization qfactorization_from_json(const json& j, const Channel& c);

phase::PhasedQubitEnsemble phase_ensemble_from_json(const json& j);

// "0,2;1,3" -> classes of input labels, resolved against `c`.
Partition parse_partition(std::string_view text, const Channel& c);
// "0.25,0.25,0.5"
Distribution parse_distribution(std::string_view text);

}  // namespace chanfactor::io
