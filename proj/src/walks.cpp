#include "holowalk/walks.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "holowalk/error.hpp"
#include "holowalk/ore.hpp"
#include "json.hpp"

namespace holowalk {

namespace {

struct NamedStep {
  const char* name;
  Step step;
};

// Canonical order of direction names.
constexpr std::array<NamedStep, 8> kDirections{{
    {"E", {1, 0}},
    {"W", {-1, 0}},
    {"N", {0, 1}},
    {"S", {0, -1}},
    {"NE", {1, 1}},
    {"NW", {-1, 1}},
    {"SE", {1, -1}},
    {"SW", {-1, -1}},
}};

int directionIndex(const Step& s) {
  for (std::size_t k = 0; k < kDirections.size(); ++k) {
    if (kDirections[k].step == s) return static_cast<int>(k);
  }
  return -1;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

StepSet::StepSet(std::vector<Step> steps) {
  if (steps.empty()) throw ParseError("step set is empty");
  for (const auto& s : steps) {
    if (directionIndex(s) < 0) {
      throw ParseError("step (" + std::to_string(s.dx) + "," + std::to_string(s.dy) +
                       ") is not a unit step");
    }
  }
  std::sort(steps.begin(), steps.end(),
            [](const Step& a, const Step& b) { return directionIndex(a) < directionIndex(b); });
  if (std::adjacent_find(steps.begin(), steps.end()) != steps.end()) {
    throw ParseError("step set contains a repeated step");
  }
  steps_ = std::move(steps);
}

StepSet StepSet::gessel() { return parseStepSet("E,W,NE,SW"); }
StepSet StepSet::kreweras() { return parseStepSet("W,S,NE"); }

std::string StepSet::canonicalString() const {
  std::string out;
  for (const auto& s : steps_) {
    if (!out.empty()) out += ",";
    out += kDirections[directionIndex(s)].name;
  }
  return out;
}

StepSet parseStepSet(const std::string& text) {
  std::vector<Step> steps;
  std::vector<std::string> seen;
  std::stringstream ss(text);
  std::string token;
  if (trim(text).empty()) throw ParseError("empty step set");
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    auto it = std::find_if(kDirections.begin(), kDirections.end(),
                           [&](const NamedStep& d) { return token == d.name; });
    if (it == kDirections.end()) throw ParseError("unknown step token '" + token + "'");
    if (std::find(seen.begin(), seen.end(), token) != seen.end()) {
      throw ParseError("duplicate step token '" + token + "'");
    }
    seen.push_back(token);
    steps.push_back(it->step);
  }
  return StepSet(std::move(steps));
}

// -------------------------------------------------------------- CountTable

CountTable::CountTable(StepSet steps, std::vector<std::vector<Integer>> levels)
    : steps_(std::move(steps)), levels_(std::move(levels)) {
  if (levels_.empty()) throw Error("count table without levels");
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    if (levels_[n].size() != (n + 1) * (n + 1)) {
      throw Error("count table level " + std::to_string(n) + " has the wrong size");
    }
  }
}

const Integer& CountTable::at(long n, long i, long j) const {
  static const Integer kZero = 0;
  if (n > maxLevel()) {
    throw RangeError("level " + std::to_string(n) + " beyond table maximum " +
                         std::to_string(maxLevel()),
                     n);
  }
  if (n < 0 || i < 0 || j < 0 || i > n || j > n) return kZero;
  return levels_[n][i * (n + 1) + j];
}

CountTable buildTable(const StepSet& steps, long nMax) {
  if (nMax < 0) throw Error("nMax must be nonnegative");
  std::vector<std::vector<Integer>> levels;
  levels.reserve(nMax + 1);
  levels.push_back({Integer(1)});
  for (long n = 0; n < nMax; ++n) {
    const auto& cur = levels.back();
    const long w = n + 1;
    const long nw = n + 2;
    std::vector<Integer> next(nw * nw);
    for (long i = 0; i < w; ++i) {
      for (long j = 0; j < w; ++j) {
        const Integer& v = cur[i * w + j];
        if (v == 0) continue;
        for (const auto& s : steps.steps()) {
          const long a = i + s.dx;
          const long b = j + s.dy;
          if (a < 0 || b < 0) continue;
          next[a * nw + b] += v;
        }
      }
    }
    levels.push_back(std::move(next));
  }
  return CountTable(steps, std::move(levels));
}

// -------------------------------------------------------------- WalkOracle

WalkOracle::WalkOracle(std::shared_ptr<const CountTable> table)
    : table_(std::move(table)), maxLevel_(table_ ? table_->maxLevel() : -1) {
  if (!table_) throw Error("oracle without a table");
}

WalkOracle::WalkOracle(CountTable table)
    : WalkOracle(std::make_shared<const CountTable>(std::move(table))) {}

WalkOracle::WalkOracle(std::shared_ptr<const CountTable> table, long maxLevel)
    : table_(std::move(table)), maxLevel_(maxLevel) {}

WalkOracle WalkOracle::zero(long maxLevel) { return WalkOracle(nullptr, maxLevel); }

Integer WalkOracle::value(long n, long i, long j) const {
  if (n > maxLevel_) {
    throw RangeError("oracle query at n=" + std::to_string(n) + " beyond table maximum " +
                         std::to_string(maxLevel_),
                     n);
  }
  if (n < 0 || i < 0 || j < 0 || !table_) return 0;
  return table_->at(n, i, j);
}

Integer oracleValue(const WalkOracle& o, long n, long i, long j) { return o.value(n, i, j); }

// ------------------------------------------------------------ trivial op

OreOperator trivialOperator(const StepSet& steps) {
  int a = 0;
  int b = 0;
  for (const auto& s : steps.steps()) {
    a = std::max(a, s.dx);
    b = std::max(b, s.dy);
  }
  OreOperator t = OreOperator::shift({1, a, b});
  for (const auto& s : steps.steps()) t.addTerm({0, a - s.dx, b - s.dy}, MultiPoly(-1));
  return t;
}

// -------------------------------------------------------------- diagonal

std::vector<Integer> diagonalSequence(const StepSet& steps, long nMax) {
  if (nMax < 0) throw Error("nMax must be nonnegative");
  // From (i, j) the origin is reachable in r steps only if i <= r * backI.
  int backI = 0;
  int backJ = 0;
  for (const auto& s : steps.steps()) {
    backI = std::max(backI, -s.dx);
    backJ = std::max(backJ, -s.dy);
  }
  auto limitI = [&](long n) { return std::min(n, (nMax - n) * backI); };
  auto limitJ = [&](long n) { return std::min(n, (nMax - n) * backJ); };

  std::vector<Integer> out;
  out.reserve(nMax + 1);
  std::vector<Integer> cur{Integer(1)};
  long curI = 0;
  long curJ = 0;
  out.push_back(1);
  for (long n = 0; n < nMax; ++n) {
    const long ni = limitI(n + 1);
    const long nj = limitJ(n + 1);
    std::vector<Integer> next((ni + 1) * (nj + 1));
    for (long i = 0; i <= curI; ++i) {
      for (long j = 0; j <= curJ; ++j) {
        const Integer& v = cur[i * (curJ + 1) + j];
        if (v == 0) continue;
        for (const auto& s : steps.steps()) {
          const long a = i + s.dx;
          const long b = j + s.dy;
          if (a < 0 || b < 0 || a > ni || b > nj) continue;
          next[a * (nj + 1) + b] += v;
        }
      }
    }
    cur = std::move(next);
    curI = ni;
    curJ = nj;
    out.push_back(cur[0]);
  }
  return out;
}

// ------------------------------------------------------------------ cache

std::string tableToJson(const CountTable& table) {
  nlohmann::json levels = nlohmann::json::array();
  for (long n = 0; n <= table.maxLevel(); ++n) {
    nlohmann::json grid = nlohmann::json::array();
    for (long i = 0; i <= n; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (long j = 0; j <= n; ++j) row.push_back(table.at(n, i, j).get_str());
      grid.push_back(std::move(row));
    }
    levels.push_back(std::move(grid));
  }
  nlohmann::json doc;
  doc["steps"] = table.steps().canonicalString();
  doc["nMax"] = table.maxLevel();
  doc["levels"] = std::move(levels);
  return doc.dump();
}

CountTable tableFromJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    StepSet steps = parseStepSet(doc.at("steps").get<std::string>());
    const long nMax = doc.at("nMax").get<long>();
    const auto& levelsJson = doc.at("levels");
    if (static_cast<long>(levelsJson.size()) != nMax + 1) {
      throw ParseError("count table has " + std::to_string(levelsJson.size()) +
                       " levels, expected " + std::to_string(nMax + 1));
    }
    std::vector<std::vector<Integer>> levels;
    for (long n = 0; n <= nMax; ++n) {
      const auto& grid = levelsJson.at(n);
      if (static_cast<long>(grid.size()) != n + 1) throw ParseError("malformed count table level");
      std::vector<Integer> level;
      level.reserve((n + 1) * (n + 1));
      for (const auto& row : grid) {
        if (static_cast<long>(row.size()) != n + 1) throw ParseError("malformed count table row");
        for (const auto& cell : row) {
          Integer v;
          if (v.set_str(cell.get<std::string>(), 10) != 0 || v < 0) {
            throw ParseError("malformed count '" + cell.get<std::string>() + "'");
          }
          level.push_back(std::move(v));
        }
      }
      levels.push_back(std::move(level));
    }
    return CountTable(std::move(steps), std::move(levels));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("count table JSON: ") + e.what());
  }
}

CountTable loadOrBuildTable(const StepSet& steps, long nMax,
                            const std::optional<std::filesystem::path>& cacheDir) {
  if (!cacheDir) return buildTable(steps, nMax);
  std::string key = steps.canonicalString();
  std::replace(key.begin(), key.end(), ',', '_');
  const auto file = *cacheDir / ("table_" + key + "_n" + std::to_string(nMax) + ".json");
  if (std::filesystem::exists(file)) {
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    CountTable cached = tableFromJson(buf.str());
    if (cached.steps() == steps && cached.maxLevel() == nMax) return cached;
  }
  CountTable table = buildTable(steps, nMax);
  std::filesystem::create_directories(*cacheDir);
  const auto tmp = file.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    out << tableToJson(table);
    if (!out) throw Error("cannot write cache file " + tmp);
  }
  std::filesystem::rename(tmp, file);
  return table;
}

}  // namespace holowalk
