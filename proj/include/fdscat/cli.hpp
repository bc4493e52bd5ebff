#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdscat::cli
{

/// Process exit codes; CI gates on them.
enum ExitCode : int
{
    exit_ok = 0,
    exit_physics_failure = 1, ///< a check ran and failed
    exit_config_error = 2,    ///< bad flags, unreadable or malformed input
    exit_numeric_failure = 3, ///< a solver did not converge
};

enum class Command
{
    phase_shifts,
    flux,
    scan,
    check
};

enum class OutputFormat
{
    csv,
    jsonl
};

enum class ScanMode
{
    total,
    angle
};

/// Everything a subcommand needs, after flag parsing and validation.
struct RunConfig
{
    Command command = Command::check;

    // Amplitude source: a table file or a model (mutually exclusive)
    std::optional<std::filesystem::path> table;
    std::string potential;        ///< hard-sphere | square-well
    std::string solver = "analytic"; ///< analytic | numerov (square well only)
    double a = 0;
    double v0 = 0;
    double k = 0;
    int lmax = 0;

    // Detector distance
    std::optional<double> kr;
    double kr_min = 0;
    double kr_max = 0;
    int points = 0;

    int grid = 101;
    std::optional<int> order;
    std::optional<int> twice_spin;
    std::string statistics;
    ScanMode mode = ScanMode::total;
    double c = 1.0;
    int samples = 5;
    double perturb = 0.0;

    std::optional<std::filesystem::path> out;
    OutputFormat format = OutputFormat::csv;
};

/// Invalid configuration; `field` names the offending flag.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field))
    {
    }
    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// Parses and validates `args` (without the program name). Throws ConfigError;
/// returns nullopt after printing help.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Runs one subcommand. Data goes to --out (or `out`); diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g
std::string format_number(double x);

} // namespace fdscat::cli
