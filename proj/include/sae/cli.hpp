#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

// sae_lab command-line front end. Data goes to `out` (or --output), all
// diagnostics to `err`.
namespace sae::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitSolver = 4;

using Value = std::variant<double, long long, std::string, bool>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
};

// Header row, then one line per row; doubles as %.17g.
std::string to_csv(const Table& t);
// {"schema": 1, "command": ..., <meta>, "columns": [...], "rows": [{...}]}.
// Non-finite doubles become null.
std::string to_json(const Table& t);

// Worker count for sweeps: SAE_LAB_THREADS if set (>= 1), else the
// hardware concurrency.
int thread_limit();

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sae::cli
