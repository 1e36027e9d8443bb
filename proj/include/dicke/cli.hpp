#pragma once

#include "dicke/errors.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/variants.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dicke::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Command { Eliminate, Variants, Flow, Compare, Sweep };
enum class Spacing { Linear, Log };
enum class Format { Csv, Json };

std::string_view to_string(Command c) noexcept;
std::string_view to_string(Spacing s) noexcept;
std::string_view to_string(Format f) noexcept;
std::optional<Format> parse_format(std::string_view name);

/// Malformed document. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("ParseError", message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Well-formed document with a missing or out-of-range field.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error("ValidationError", message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("IoError", message) {}
};

struct SweepSpec {
  double delta_min = 0.0;
  double delta_max = 0.0;
  int points = 0;
  Spacing spacing = Spacing::Log;
};

struct Tolerances {
  double tol_gap = 1e-9;
  double tol_offdiag = 1e-10;
};

struct OutputSpec {
  /// Empty means standard output.
  std::string path;
  Format format = Format::Csv;
};

struct RunConfig {
  Command command = Command::Eliminate;
  DickeParams params;
  int two_s = 0;
  int n_max = 0;
  std::optional<SweepSpec> sweep;
  int q_max = 0;
  VariantId variant = VariantId::Froehlich;
  Tolerances tolerances;
  OutputSpec output;

  SpaceSpec space() const { return make_space(two_s, n_max); }
};

/// Parses and validates a YAML run configuration, filling defaults.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Detuning grid of a sweep, strictly increasing, endpoints exact.
std::vector<double> sweep_deltas(const SweepSpec& sweep);

/// Runs the pipeline and returns the report text. Library errors propagate.
std::string render_report(const RunConfig& config);

/// Runs the pipeline, writes the report and maps failures to exit codes:
/// 0 success, 1 configuration or I/O error, 2 physics error. Each failure
/// writes one single-line JSON error record to `err`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// One-line JSON error record, e.g. {"error":"Resonance","message":"..."}.
std::string error_record(std::string_view kind, std::string_view message);

/// Exit status for a library error.
int exit_code_for(const Error& e) noexcept;

}  // namespace dicke::cli
