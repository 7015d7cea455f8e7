#pragma once
#include <complex>
#include <json.hpp>
#include <string>

#include "hl/eisenstein.hpp"
#include "hl/lift.hpp"

namespace hl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

enum class Format { Json, Csv };

Json provenance(const std::string& module, const Json& tolerances, const Json& truncation = Json::object());
Json to_json(const Rational& q);
Json to_json(cplx z);
Json to_json(const AlgebraicLog& a);
Json to_json(const KappaPair& k);
Json to_json(const RegularizedPeriod& r);

// flattens nested objects and arrays into path,value rows
std::string to_csv(const Json& j);
std::string render(const Json& j, Format f);

}  // namespace hl
