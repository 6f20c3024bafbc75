#pragma once

// JSON forms of operators and certificates. All numbers that may exceed
// 2^53 are written as decimal strings.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "holowalk/certify.hpp"
#include "holowalk/eliminate.hpp"
#include "holowalk/ore.hpp"

namespace holowalk {

using Json = nlohmann::ordered_json;

Json operatorToJson(const OreOperator& op);
/// Throws ParseError on missing fields, bad exponents or malformed rationals.
OreOperator operatorFromJson(const Json& j);

/// Rational-function form; `cleared` writes polynomial coefficients only.
Json uniOperatorToJson(const UniOperator& op, bool cleared = false);
UniOperator uniOperatorFromJson(const Json& j);

Json certificateToJson(const Certificate& cert);

/// Throws ParseError with the parser's diagnostic.
Json parseJson(const std::string& text);
Json readJsonFile(const std::filesystem::path& path);
/// Two-space indented with a trailing newline.
std::string dumpJson(const Json& j);
/// Writes through a temporary file and a rename.
void writeFileAtomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace holowalk
