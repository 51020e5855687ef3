#pragma once

#include "casimir/minkowski.hpp"
#include "casimir/mode_sum.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimir::cli {

enum class Command { energy_sum, energy_expansion, pressure, stress, covariance, scan };
enum class OutputFormat { csv, json };

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitConvergence = 3;

/// Bad command line; the message names the offending flag.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// --help was given; the text is the usage summary.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScanConfig {
    Command command = Command::pressure;
    std::vector<Real> a;
    std::vector<Real> lambda;
    std::vector<Real> epsilon;
    std::vector<Real> z;  // empty: a/2 at each grid point
    std::optional<FourVector> eps_vec;
    FieldKind field = FieldKind::em;
    std::optional<int> n_max;
    int order = 5;
    unsigned precision = kDefaultDigits;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> output;
    std::uint64_t seed = 0;
    Real rapidity;
    int trials = 100;

    /// Significant digits written for each numeric field.
    unsigned output_digits() const;
};

/// Values of `start:stop:count` (inclusive endpoints) or a single number.
/// Parsed at the current working precision.
std::vector<Real> parse_range(const std::string& text, const std::string& flag);

/// argv without the program name. Sets the working precision as a side effect
/// (CASIMIR_PRECISION overrides the default, --precision overrides both).
ScanConfig parse_args(const std::vector<std::string>& args);

/// Fixed CSV header for a command.
std::string csv_header(Command command);

/// Writes rows to config.output (or `out` when unset). Returns the exit code.
int run(const ScanConfig& config, std::ostream& out, std::ostream& err);

/// Parses and runs; usage errors are reported on `err` with exit code 1.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
