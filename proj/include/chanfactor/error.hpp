#pragma once

#include <stdexcept>
#include <string>

namespace chanfactor {

enum class Errc {
  not_hermitian,
  not_psd,
  dimension_mismatch,
  alphabet_mismatch,
  index_out_of_range,
  invalid_channel,
  invalid_partition,
  invalid_distribution,
  invalid_state,
  invalid_povm,
  degenerate_magnitudes,
  t_out_of_range,
  parse_error,
  invalid_argument,
};

const char* errc_name(Errc code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::not_hermitian: return "NotHermitian";
    case Errc::not_psd: return "NotPSD";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::alphabet_mismatch: return "AlphabetMismatch";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::invalid_channel: return "InvalidChannel";
    case Errc::invalid_partition: return "InvalidPartition";
    case Errc::invalid_distribution: return "InvalidDistribution";
    case Errc::invalid_state: return "InvalidState";
    case Errc::invalid_povm: return "InvalidPOVM";
    case Errc::degenerate_magnitudes: return "DegenerateMagnitudes";
    case Errc::t_out_of_range: return "TOutOfRange";
    case Errc::parse_error: return "ParseError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace chanfactor
