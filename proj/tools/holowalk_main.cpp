#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holowalk/error.hpp"
#include "holowalk/pipeline.hpp"

using namespace holowalk;

namespace {

// Flags that map onto PipelineConfig. Optional fields go through strings so
// that "not given" stays distinguishable.
struct Flags {
  std::string closedForm;
  std::string importRecurrence;
  std::string cacheDir;
  std::string out;
  int truncation = -1;
};

void addCommon(CLI::App* cmd, PipelineConfig& cfg, Flags& f) {
  cmd->add_option("--steps", cfg.steps, "step set, e.g. E,W,NE,SW")->capture_default_str();
  cmd->add_option("--n-max", cfg.nMax, "smallest table level to build")->capture_default_str();
  cmd->add_option("--cache-dir", f.cacheDir, "count-table cache directory (default: $CACHE_DIR)");
  cmd->add_option("--out", f.out, "write the result here instead of stdout");
  cmd->add_option("--config", "JSON config used as defaults for the flags");
}

void addGuessFlags(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--bounds", cfg.bounds, "caps as key=value list: n,i,j,Sn,Si,Sj,deg,ord")
      ->capture_default_str();
  cmd->add_option("--shape", cfg.shape, "full | quasiholonomic")->capture_default_str();
  cmd->add_option("--points-n", cfg.pointN, "guessing grid n range (0 = automatic)");
  cmd->add_option("--points-j", cfg.pointJ, "guessing grid i,j range (0 = automatic)");
  cmd->add_option("--point-margin", cfg.pointMargin, "extra rows beyond 3x unknowns")
      ->capture_default_str();
}

void addCertifyFlags(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--margin", cfg.certifyMargin, "extra base-case rows in i and j")
      ->capture_default_str();
}

void addEliminateFlags(CLI::App* cmd, PipelineConfig& cfg, Flags& f) {
  cmd->add_option("--truncation", f.truncation, "module truncation degree (default: derived)");
  cmd->add_option("--multiplier-bound", cfg.multiplierBound, "max S_i, S_j multiple per generator")
      ->capture_default_str();
  cmd->add_option("--retry-cap", cfg.retryCap, "truncation increases on failure")
      ->capture_default_str();
  cmd->add_option("--verify-length", cfg.verifyLength, "check P on f(n;0,0) for n up to this")
      ->capture_default_str();
}

// Looks for --config before the real parse so that its values become defaults.
PipelineConfig baseConfig(int argc, char** argv) {
  for (int k = 1; k < argc; ++k) {
    std::string path;
    if (std::strcmp(argv[k], "--config") == 0 && k + 1 < argc) {
      path = argv[k + 1];
    } else if (std::strncmp(argv[k], "--config=", 9) == 0) {
      path = argv[k] + 9;
    }
    if (!path.empty()) return configFromJson(readJsonFile(path));
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  PipelineConfig cfg;
  try {
    cfg = baseConfig(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  Flags f;
  if (cfg.closedForm) f.closedForm = *cfg.closedForm;
  if (cfg.importRecurrence) f.importRecurrence = *cfg.importRecurrence;
  if (cfg.cacheDir) f.cacheDir = *cfg.cacheDir;
  if (cfg.out) f.out = *cfg.out;
  if (cfg.truncation) f.truncation = *cfg.truncation;

  CLI::App app{"Lattice walks in the quarter plane: guess, certify and eliminate annihilators"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  long n = 0, i = 0, j = 0;
  auto* count = app.add_subcommand("count", "print f(n; i, j)");
  addCommon(count, cfg, f);
  count->add_option("--n", n)->required();
  count->add_option("--i", i)->capture_default_str();
  count->add_option("--j", j)->capture_default_str();

  auto* table = app.add_subcommand("table", "write the count table as JSON");
  addCommon(table, cfg, f);

  auto* guess = app.add_subcommand("guess", "guess annihilating operators");
  addCommon(guess, cfg, f);
  addGuessFlags(guess, cfg);

  std::string operatorFile;
  auto* certify = app.add_subcommand("certify", "certify operators from a JSON file");
  addCommon(certify, cfg, f);
  addCertifyFlags(certify, cfg);
  certify->add_option("operator-file", operatorFile)->required()->check(CLI::ExistingFile);

  std::vector<std::string> generatorFiles;
  auto* eliminate = app.add_subcommand("eliminate", "eliminate S_i, S_j from certified operators");
  addCommon(eliminate, cfg, f);
  addCertifyFlags(eliminate, cfg);
  addEliminateFlags(eliminate, cfg, f);
  eliminate->add_option("operator-files", generatorFiles)->required()->check(CLI::ExistingFile);

  auto* prove = app.add_subcommand("prove", "guess, certify, eliminate and prove a closed form");
  addCommon(prove, cfg, f);
  addGuessFlags(prove, cfg);
  addCertifyFlags(prove, cfg);
  addEliminateFlags(prove, cfg, f);
  prove->add_option("--closed-form", f.closedForm, "gessel | kreweras");
  prove->add_option("--import-recurrence", f.importRecurrence,
                    "use this recurrence for f(n;0,0) instead of eliminating");

  auto* check = app.add_subcommand("check-closed-form", "compare a closed form with the counts");
  addCommon(check, cfg, f);
  check->add_option("--closed-form", f.closedForm, "gessel | kreweras");

  std::string recurrenceFile;
  auto* import = app.add_subcommand("import-recurrence", "validate an external recurrence");
  addCommon(import, cfg, f);
  import->add_option("--verify-length", cfg.verifyLength)->capture_default_str();
  import->add_option("recurrence-file", recurrenceFile)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  auto opt = [](const std::string& s) {
    return s.empty() ? std::optional<std::string>() : std::optional<std::string>(s);
  };
  cfg.closedForm = opt(f.closedForm);
  cfg.importRecurrence = opt(f.importRecurrence);
  cfg.out = opt(f.out);
  cfg.cacheDir = opt(f.cacheDir);
  if (!cfg.cacheDir) {
    if (const char* env = std::getenv("CACHE_DIR"); env && *env) cfg.cacheDir = env;
  }
  cfg.truncation = f.truncation >= 0 ? std::optional<int>(f.truncation) : std::nullopt;

  std::ostream& out = std::cout;
  std::ostream& err = std::cerr;
  if (*count) return cmdCount(cfg, n, i, j, out, err);
  if (*table) return cmdTable(cfg, out, err);
  if (*guess) return cmdGuess(cfg, out, err);
  if (*certify) return cmdCertify(cfg, operatorFile, out, err);
  if (*eliminate) {
    std::vector<std::filesystem::path> files(generatorFiles.begin(), generatorFiles.end());
    return cmdEliminate(cfg, files, out, err);
  }
  if (*prove) return cmdProve(cfg, out, err);
  if (*check) return cmdCheckClosedForm(cfg, out, err);
  if (*import) return cmdImportRecurrence(cfg, recurrenceFile, out, err);
  return kExitError;
}
