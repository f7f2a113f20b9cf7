#include "profinite/semigroup_json.hpp"

#include <fstream>
#include <sstream>

#include "profinite/error.hpp"

namespace profinite {

nlohmann::json toJson(const FiniteSemigroup& s) {
  nlohmann::json j;
  j["order"] = s.order();
  j["table"] = s.table();
  j["identity"] = s.identity() ? nlohmann::json(*s.identity()) : nlohmann::json(nullptr);
  j["labels"] = s.labels() ? nlohmann::json(*s.labels()) : nlohmann::json(nullptr);
  j["generators"] = s.generators() ? nlohmann::json(*s.generators()) : nlohmann::json(nullptr);
  return j;
}

namespace {

Element elementAt(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw MalformedTable(where + ": expected a nonnegative integer");
  return v.get<Element>();
}

}  // namespace

FiniteSemigroup semigroupFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw MalformedTable("$: expected an object");
  if (!j.contains("table") || !j["table"].is_array())
    throw MalformedTable("$.table: expected an array of rows");

  Table table;
  const auto& rows = j["table"];
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = "$.table[" + std::to_string(r) + "]";
    if (!rows[r].is_array()) throw MalformedTable(where + ": expected an array");
    auto& row = table.emplace_back();
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      row.push_back(elementAt(rows[r][c], where + "[" + std::to_string(c) + "]"));
  }
  if (j.contains("order")) {
    if (!j["order"].is_number_integer() || j["order"].get<long long>() != (long long)table.size())
      throw MalformedTable("$.order: does not match the number of table rows");
  }
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (table[r].size() != table.size())
      throw MalformedTable("$.table[" + std::to_string(r) + "]: expected " +
                           std::to_string(table.size()) + " entries");
    for (std::size_t c = 0; c < table.size(); ++c)
      if (table[r][c] >= table.size())
        throw MalformedTable("$.table[" + std::to_string(r) + "][" + std::to_string(c) +
                             "]: entry " + std::to_string(table[r][c]) + " is out of range");
  }

  std::optional<Element> identity;
  if (j.contains("identity") && !j["identity"].is_null())
    identity = elementAt(j["identity"], "$.identity");

  std::optional<std::vector<std::string>> labels;
  if (j.contains("labels") && !j["labels"].is_null()) {
    if (!j["labels"].is_array()) throw MalformedTable("$.labels: expected an array");
    labels.emplace();
    for (std::size_t i = 0; i < j["labels"].size(); ++i) {
      if (!j["labels"][i].is_string())
        throw MalformedTable("$.labels[" + std::to_string(i) + "]: expected a string");
      labels->push_back(j["labels"][i].get<std::string>());
    }
  }

  std::optional<ElementSet> generators;
  if (j.contains("generators") && !j["generators"].is_null()) {
    if (!j["generators"].is_array()) throw MalformedTable("$.generators: expected an array");
    generators.emplace();
    for (std::size_t i = 0; i < j["generators"].size(); ++i)
      generators->insert(
          elementAt(j["generators"][i], "$.generators[" + std::to_string(i) + "]"));
  }
  try {
    return FiniteSemigroup::fromTable(std::move(table), identity, std::move(labels),
                                      std::move(generators));
  } catch (const MalformedTable& e) {
    throw MalformedTable(std::string("$: ") + e.what());
  }
}

FiniteSemigroup loadSemigroup(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedTable(path + ": " + e.what());
  }
  try {
    return semigroupFromJson(j);
  } catch (const MalformedTable& e) {
    throw MalformedTable(path + ": " + e.what());
  }
}

}  // namespace profinite
