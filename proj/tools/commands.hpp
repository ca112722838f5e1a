#pragma once

// Command layer behind the `bordism` executable. Kept separate from main()
// so tests can drive it with in-memory streams.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bordism::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInvariantFailure = 1,
    kUsageError = 2,
    kSemanticError = 3,
};

enum class Command { Dims, Homology, Spectral, Check, Verify };
enum class Output { Text, Json, Csv };

struct RunConfig {
    Command command = Command::Dims;
    int n = 0;
    std::optional<int> degree;
    std::optional<int> page;
    std::optional<std::string> poly_path;  // "-" reads stdin
    std::optional<std::string> export_path;  // "-" writes stdout, else a directory
    Output output = Output::Text;
    bool stretch = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses argv-style arguments (without the program name). Throws UsageError.
/// Returns nullopt when help was requested and printed to `out`.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Runs one command and maps every error to its exit code.
int execute(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// parse_args followed by execute.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bordism::cli
