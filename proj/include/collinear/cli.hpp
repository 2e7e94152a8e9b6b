#pragma once

#include "collinear/errors.hpp"
#include "collinear/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace collinear {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Subcommand { fit, decompose, diagnose, ridge, difference, simulate };
enum class OutputFormat { json, text };

std::string to_string(Subcommand s);

struct RunConfig {
    Subcommand subcommand = Subcommand::fit;
    std::optional<std::string> input_path;
    std::string response_column = "y";
    double alpha = 0.05;
    std::optional<std::string> lambda_grid;
    bool ordered = false;
    std::uint64_t seed = 42;
    OutputFormat output_format = OutputFormat::json;
    unsigned threads = 1;

    // simulate
    std::optional<int> table;
    std::optional<std::size_t> n;
    std::optional<double> rho;
    std::optional<double> beta1;
    std::size_t trials = 100000;

    void validate() const;
    json to_json() const;
};

struct ReportEnvelope {
    std::string tool_version = kToolVersion;
    std::string subcommand;
    json config_echo;
    json payload;
    std::vector<std::string> warnings;

    json to_json() const;
};

/** Parses a ridge grid: "a,b,c" (ascending values) or "log:LO:HI:COUNT".
 *
 * An empty optional means the default grid for the data.
 */
std::vector<double> parse_lambda_grid(const std::string& spec);

/// True when some column is monotone or shows serial correlation above 2 / sqrt(n).
bool looks_ordered(const Dataset& data);

/// Dispatches to the owning module. Throws collinear::Error on failure.
ReportEnvelope run(const RunConfig& config);

/// 2 config, 3 data or I/O, 4 numerical.
int exit_status(ErrorKind kind);

/// Full command-line entry point; returns the process exit status.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace collinear
