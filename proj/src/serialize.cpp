#include "holowalk/serialize.hpp"

#include <unistd.h>

#include <fstream>
#include <sstream>

#include "holowalk/error.hpp"

namespace holowalk {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

const std::string& stringField(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get_ref<const std::string&>();
}

int smallInt(const Json& v, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  const auto x = v.get<long long>();
  if (x < 0 || x > 100000) throw ParseError(std::string(what) + " out of range");
  return static_cast<int>(x);
}

std::array<int, 3> triple(const Json& v, const char* what) {
  if (!v.is_array() || v.size() != 3) throw ParseError(std::string(what) + " must have 3 entries");
  return {smallInt(v[0], what), smallInt(v[1], what), smallInt(v[2], what)};
}

void expectNames(const Json& j, const char* key, const std::vector<std::string>& names) {
  if (!j.contains(key)) return;
  if (j.at(key) != Json(names)) throw ParseError(std::string("unexpected '") + key + "' list");
}

Json polyArray(const UniPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(toString(c));
  return a;
}

UniPoly polyFromArray(const Json& a, const char* what) {
  if (!a.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<Rational> cs;
  for (const auto& c : a) {
    if (!c.is_string()) throw ParseError(std::string(what) + " entries must be strings");
    cs.push_back(parseRational(c.get<std::string>()));
  }
  return UniPoly(std::move(cs));
}

Json pointJson(const Point3& p) { return Json::array({p[0], p[1], p[2]}); }

}  // namespace

Json operatorToJson(const OreOperator& op) {
  Json terms = Json::array();
  for (const auto& [e, c] : op.terms()) {
    Json coeffs = Json::array();
    for (const auto& [m, q] : c.terms()) {
      coeffs.push_back({{"exp", {m[0], m[1], m[2]}},
                        {"num", q.get_num().get_str(10)},
                        {"den", q.get_den().get_str(10)}});
    }
    terms.push_back({{"shift", {e[0], e[1], e[2]}}, {"coeff", std::move(coeffs)}});
  }
  return {{"vars", {"n", "i", "j"}}, {"shifts", {"Sn", "Si", "Sj"}}, {"terms", std::move(terms)}};
}

OreOperator operatorFromJson(const Json& j) {
  expectNames(j, "vars", {"n", "i", "j"});
  expectNames(j, "shifts", {"Sn", "Si", "Sj"});
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  OreOperator op;
  for (const auto& t : terms) {
    const auto shift = triple(field(t, "shift"), "shift");
    const Json& coeffs = field(t, "coeff");
    if (!coeffs.is_array()) throw ParseError("'coeff' must be an array");
    MultiPoly c;
    for (const auto& m : coeffs) {
      const auto e = triple(field(m, "exp"), "exp");
      const std::string& num = stringField(m, "num");
      const std::string& den = stringField(m, "den");
      if (num.find('/') != std::string::npos || den.find('/') != std::string::npos) {
        throw ParseError("malformed rational '" + num + "/" + den + "'");
      }
      c.addTerm(e, parseRational(num + "/" + den));
    }
    op.addTerm(shift, c);
  }
  return op;
}

Json uniOperatorToJson(const UniOperator& op, bool cleared) {
  const UniOperator src = cleared ? op.cleared() : op;
  Json terms = Json::array();
  for (const auto& [k, c] : src.terms()) {
    Json t = {{"power", k}, {"num", polyArray(c.num())}};
    if (!cleared) t["den"] = polyArray(c.den());
    terms.push_back(std::move(t));
  }
  Json j = {{"var", "n"}, {"shift", "Sn"}};
  if (cleared) j["form"] = "cleared";
  j["terms"] = std::move(terms);
  return j;
}

UniOperator uniOperatorFromJson(const Json& j) {
  if (j.contains("var") && j.at("var") != "n") throw ParseError("unexpected 'var'");
  if (j.contains("shift") && j.at("shift") != "Sn") throw ParseError("unexpected 'shift'");
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  UniOperator op;
  for (const auto& t : terms) {
    const int k = smallInt(field(t, "power"), "power");
    const UniPoly num = polyFromArray(field(t, "num"), "num");
    const UniPoly den = t.contains("den") ? polyFromArray(t.at("den"), "den") : UniPoly(1);
    if (den.isZero()) throw ParseError("zero denominator polynomial at power " + std::to_string(k));
    op.addTerm(k, ratNormalize(num, den));
  }
  return op;
}

Json certificateToJson(const Certificate& cert) {
  Json chain = Json::array();
  for (const auto& v : cert.chain) chain.push_back(operatorToJson(v));
  Json checks = Json::array();
  for (const auto& bc : cert.baseChecks) {
    Json c = {{"operator", operatorToJson(bc.op)},
              {"box", {{"n", {bc.box.nLo, bc.box.nHi}},
                       {"i", {bc.box.iLo, bc.box.iHi}},
                       {"j", {bc.box.jLo, bc.box.jHi}}}},
              {"allZero", bc.allZero}};
    if (bc.counterexample) c["counterexample"] = pointJson(*bc.counterexample);
    checks.push_back(std::move(c));
  }
  Json j = {{"verdict", toString(cert.verdict)}, {"chain", std::move(chain)},
            {"baseChecks", std::move(checks)}};
  if (cert.counterexample) j["counterexample"] = pointJson(*cert.counterexample);
  if (!cert.message.empty()) j["message"] = cert.message;
  return j;
}

Json parseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json readJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseJson(ss.str());
}

std::string dumpJson(const Json& j) { return j.dump(2) + "\n"; }

void writeFileAtomically(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    out << contents;
    if (!out) throw Error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace holowalk
