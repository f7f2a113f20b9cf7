#pragma once

#include <string>

#include "json.hpp"
#include "profinite/semigroup.hpp"

namespace profinite {

// Interchange format:
//   {"order": n, "table": [[...]], "identity": i|null, "labels": [...]|null,
//    "generators": [...]|null}
// Row index is the left factor.
nlohmann::json toJson(const FiniteSemigroup& s);

// Throws MalformedTable naming the offending field on any schema violation.
FiniteSemigroup semigroupFromJson(const nlohmann::json& j);

FiniteSemigroup loadSemigroup(const std::string& path);

}  // namespace profinite
