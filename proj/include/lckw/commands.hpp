#pragma once

#include "lckw/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lckw {

inline constexpr const char* kToolName = "lckw";
inline constexpr const char* kToolVersion = "1.0.0";

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  /// A check ran and failed.
  kExitCheckFailure = 1,
  /// Unreadable, malformed or invalid input.
  kExitValidation = 2,
  /// Gauduchon, t ≤ 0 and not Vaisman.
  kExitAlarm = 3,
};

struct CommandOptions {
  bool json = false;
  double tolerance = kFloatTolerance;
  /// Overrides the mode declared in the input when set.
  std::optional<ScalarMode> mode;
};

struct CommandResult {
  int exit_code = kExitOk;
  /// Report text: JSON when requested, otherwise a human summary.
  std::string output;
  /// Diagnostics for stderr.
  std::string error;
};

/// Per-structure analysis shared by classify and suite.
struct StructureAnalysis {
  Json doc;
  std::vector<std::string> failures;
  bool alarm = false;
  /// False when the Lee system has no solution; the suite treats that as a failure.
  bool lck = true;
};

StructureAnalysis analyze_structure(const StructureFile& f, ScalarMode mode, double tol);

CommandResult classify_command(const std::string& path, const CommandOptions& opt);

/// Files and directories (non-recursive *.json, sorted) plus, optionally,
/// the built-in corpus and its cross-checks.
CommandResult suite_command(const std::vector<std::string>& inputs, bool builtin_corpus, const CommandOptions& opt);

struct ConstructRequest {
  /// kodaira | heisenberg | double-extension | ot | flat-kahler
  std::string kind;
  std::size_t n = 1;
  std::size_t s = 1;
  std::size_t m = 2;
  std::vector<std::string> angles;
  /// abelian | rotation | hyperbolic
  std::string base = "abelian";
  std::string lambda = "1";
  std::optional<unsigned> seed;
  std::optional<std::string> name;
};

/// Emits a structure file (always JSON).
CommandResult construct_command(const ConstructRequest& req);

struct ModelRequest {
  /// ot | hopf
  std::string kind;
  std::size_t s = 1;
  std::size_t n = 2;
  /// Real coordinates (Re z_1, Im z_1, ...); empty selects the base point.
  std::vector<double> point;
  double step = 1e-3;
};

CommandResult model_command(const ModelRequest& req, const CommandOptions& opt);

struct SasakiRequest {
  /// Structure file with a sasaki block, or a Vaisman Hermitian structure.
  std::optional<std::string> path;
  /// h3 | sphere, used when no path is given.
  std::string builtin = "h3";
  std::size_t samples = 3;
};

CommandResult sasaki_command(const SasakiRequest& req, const CommandOptions& opt);

}  // namespace lckw
