#pragma once

// Command-line front end: argument parsing into a RunConfig and dispatch to
// the verification commands. Reports are JSON or TSV and deterministic for a
// fixed configuration.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace e1forge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Format { Json, Tsv };

enum class Command { Classify, Certify, OracleVerify, AutoOrder, Sweep };

std::string to_string(Command c);

struct RunConfig {
  Command command = Command::Classify;

  // classify, auto-order, sweep, oracle verify
  int epsilon = 1;
  unsigned d = 0;
  std::uint64_t q = 2;
  std::string xi;  // classify

  // certify
  bool all = false;
  std::optional<std::string> registry;
  std::vector<std::string> ids;
  std::optional<std::string> expr;
  std::optional<std::string> range;

  // oracle verify
  std::string group;  // kind ("GU") or full descriptor ("GU_3(2)")
  bool full_scan = false;
  std::string gu_method = "auto";

  // auto-order
  std::vector<std::uint32_t> t;
  unsigned graph_exp = 0;
  unsigned field_exp = 0;

  // sweep
  std::string sweep_kind = "classes";  // classes | torus-orders

  std::uint64_t budget = 10'000'000;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  bool timing = false;
  Format format = Format::Json;
  std::optional<std::string> output;
};

/// Thrown for invalid command lines and configurations.
class UsageError : public std::exception {
 public:
  explicit UsageError(std::string msg) : msg_(std::move(msg)) {}
  const char* what() const noexcept override { return msg_.c_str(); }

 private:
  std::string msg_;
};

/// Parses argv (argv[0] is the program name). Help requests print to `out`
/// and yield nullopt. Invalid input throws UsageError. The budget falls back
/// to the E1FORGE_BUDGET environment variable when --budget is absent.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Checks the config invariants (budget >= 1, threads >= 1); throws UsageError.
void validate(const RunConfig& config);

/// Executes the command, writing the report to config.output or `out`.
/// Returns kExitOk, kExitCheckFailed or kExitUsage.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the same exit-code conventions.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace e1forge::cli
