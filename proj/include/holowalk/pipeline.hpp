#pragma once

// Batch commands behind the command-line tool. Each returns the process exit
// code: 0 found / certified / proved, 1 sound negative, 2 operational error.
// Results go to `out` (or the --out file), diagnostics to `err`.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "holowalk/serialize.hpp"

namespace holowalk {

inline constexpr const char* kVersion = "holowalk 0.1.0";

enum ExitCode { kExitOk = 0, kExitNegative = 1, kExitError = 2 };

struct PipelineConfig {
  std::string steps = "W,S,NE";
  /// Smallest table level to build; larger levels are built on demand.
  long nMax = 0;
  std::string bounds = "n=2,i=2,j=2,Sn=1,Si=2,Sj=2,deg=2";
  std::string shape = "full";
  /// Guessing grid; 0 picks the size from the template.
  long pointN = 0;
  long pointJ = 0;
  long pointMargin = 20;
  long certifyMargin = 2;
  std::optional<int> truncation;
  int multiplierBound = 2;
  int retryCap = 2;
  /// Eliminated or imported recurrences are checked on f(n; 0, 0), n <= verifyLength.
  long verifyLength = 500;
  std::optional<std::string> closedForm;
  std::optional<std::string> importRecurrence;
  std::optional<std::string> cacheDir;
  std::optional<std::string> out;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

Json configToJson(const PipelineConfig& cfg);
/// Missing keys keep their defaults; unknown keys are a ParseError.
PipelineConfig configFromJson(const Json& j);

/// Operators in a bare operator file, a guess output ("candidates") or a
/// certify output ("certificates").
std::vector<OreOperator> loadOperators(const Json& j);

int cmdCount(const PipelineConfig& cfg, long n, long i, long j, std::ostream& out,
             std::ostream& err);
int cmdTable(const PipelineConfig& cfg, std::ostream& out, std::ostream& err);
int cmdGuess(const PipelineConfig& cfg, std::ostream& out, std::ostream& err);
int cmdCertify(const PipelineConfig& cfg, const std::filesystem::path& operatorFile,
               std::ostream& out, std::ostream& err);
int cmdEliminate(const PipelineConfig& cfg, const std::vector<std::filesystem::path>& operatorFiles,
                 std::ostream& out, std::ostream& err);
int cmdProve(const PipelineConfig& cfg, std::ostream& out, std::ostream& err);
int cmdCheckClosedForm(const PipelineConfig& cfg, std::ostream& out, std::ostream& err);
int cmdImportRecurrence(const PipelineConfig& cfg, const std::filesystem::path& file,
                        std::ostream& out, std::ostream& err);

}  // namespace holowalk
