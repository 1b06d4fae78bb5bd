#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgeom/identities.hpp"

namespace cgeom::cli {

enum class Command { angles, verify, export_frames, list_surfaces };
enum class Format { csv, json };

inline constexpr int exit_ok = 0;
inline constexpr int exit_tolerance = 1;
inline constexpr int exit_config = 2;
inline constexpr int exit_validation = 3;

inline constexpr int min_grid = 8;
inline constexpr int max_grid = 4096;

struct RunConfig {
  Command command = Command::angles;
  std::string surface;                 // built-in name or path to a surface file
  int grid = 64;
  std::vector<Identity> identities;    // empty: all
  Format format = Format::csv;
  std::string out;                     // empty: stdout
  bool degrees = false;
  Dimension dimension = Dimension::S5;
  std::optional<double> tolerance;     // overrides every identity's tol(N)
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ConfigError for out-of-range settings.
void check_config(const RunConfig& cfg);

/// Built-in by name, else a surface file. Throws ConfigError (unknown name,
/// unreadable file, parse error) or ValidationFailure (degenerate / off-sphere).
Immersion load_surface(const RunConfig& cfg);

/// 12 significant digits, shortest form, '.' separator; NaN renders empty.
std::string format_number(double x);

/// Each returns the process exit code; data goes to cfg.out (or `out`), messages to `err`.
int cmd_angles(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_export_frames(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_list_surfaces(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cgeom::cli
