// Command-line frontend. Every subcommand calls one library operation and
// prints a CommandResult: {"schema", "status", "command", "data",
// "diagnostics"} as JSON, or the same fields as plain text.

#include <cctype>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "profinite/closure.hpp"
#include "profinite/error.hpp"
#include "profinite/free_group.hpp"
#include "profinite/kappa.hpp"
#include "profinite/metric.hpp"
#include "profinite/semigroup.hpp"
#include "profinite/semigroup_json.hpp"
#include "profinite/symbolic.hpp"
#include "profinite/syntactic.hpp"

namespace {

using nlohmann::json;
using namespace profinite;

constexpr int kSchemaVersion = 1;

struct Output {
  json data = json::object();
  std::vector<std::string> diagnostics;
};

// Letters of the expression (and of any extra words), for when no alphabet is
// given explicitly.
Alphabet inferAlphabet(const std::string& alphabet, const std::string& regex,
                       const std::string& extra = "") {
  if (!alphabet.empty()) return makeAlphabet(alphabet);
  std::string letters;
  for (char c : regex + extra)
    if (std::isalnum(static_cast<unsigned char>(c))) letters.push_back(c);
  if (letters.empty()) letters = "a";
  return makeAlphabet(letters);
}

Element parseElement(const FiniteSemigroup& s, const std::string& token) {
  for (Element x = 0; x < s.order(); ++x)
    if (s.label(x) == token) return x;
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(token, &used);
    if (used == token.size() && v < s.order()) return Element(v);
  } catch (const std::logic_error&) {
  }
  throw DomainError("unknown element '" + token + "'");
}

std::vector<std::string> splitList(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

json labels(const FiniteSemigroup& s, const ElementSet& set) {
  json out = json::array();
  for (Element x : set) out.push_back(s.label(x));
  return out;
}

json morphismJson(const Morphism& m) {
  json images = json::object();
  for (std::size_t i = 0; i < m.alphabet.size(); ++i)
    images[std::string(1, m.alphabet[i])] = m.codomain.label(m.letterImage[i]);
  return {{"semigroup", toJson(m.codomain)}, {"letters", images}};
}

json assignmentJson(const FiniteSemigroup& s, const Assignment& a) {
  json out = json::object();
  for (const auto& [var, x] : a) out[var] = s.label(x);
  return out;
}

json predicatesJson(const StructuralPredicates& p) {
  return {{"isGroup", p.isGroup},
          {"isAperiodic", p.isAperiodic},
          {"isJTrivial", p.isJTrivial},
          {"isSemilattice", p.isSemilattice},
          {"isNilpotent", p.isNilpotent},
          {"isCompletelyRegular", p.isCompletelyRegular}};
}

std::string textValue(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print(const std::string& format, const std::string& command, const std::string& status,
           const json& data, const std::vector<std::string>& diagnostics) {
  if (format == "json") {
    json doc = {{"schema", kSchemaVersion},
                {"status", status},
                {"command", command},
                {"data", data},
                {"diagnostics", diagnostics}};
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::cout << "status: " << status << "\n";
  for (const auto& [key, value] : data.items()) std::cout << key << ": " << textValue(value) << "\n";
  for (const auto& d : diagnostics) std::cout << "note: " << d << "\n";
}

json errorJson(const Error& e) {
  json err = {{"kind", e.kind()}, {"message", e.what()}};
  if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) err["offset"] = s->offset();
  const std::string msg = e.what();
  // Table errors name the offending field as a JSON path.
  if (const auto at = msg.find("$"); at != std::string::npos) {
    const auto end = msg.find(':', at);
    err["location"] = msg.substr(at, end == std::string::npos ? std::string::npos : end - at);
  }
  return err;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite semigroups, regular languages and profinite topologies"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  // Shared option storage; each subcommand reads what it declares.
  std::string table, lang, alphabet, word, pv, u, v, subst, subset, x, y, z, element, identities;
  std::size_t order = 0, maxOrder = 4, blocks = 0;
  int groupOrder = 6;
  bool countOnly = false, all = false, experimental = false, certificate = false;
  bool crossCheck = false;
  std::vector<std::string> words;

  auto* syntactic = app.add_subcommand("syntactic", "Syntactic semigroup of a regular language");
  syntactic->add_option("--lang", lang, "Regular expression")->required();
  syntactic->add_option("--alphabet", alphabet, "Alphabet (default: letters of the expression)");

  auto* memberCmd = app.add_subcommand("member", "Pseudovariety membership by pseudoidentities");
  memberCmd->add_option("--table", table, "Semigroup JSON file")->required();
  auto* pvOpt = memberCmd->add_option("--pv", pv, "Registered pseudovariety name");
  auto* idOpt =
      memberCmd->add_option("--identities", identities, "Pseudoidentities, e.g. \"x^w y = y\"");
  pvOpt->excludes(idOpt);
  memberCmd->add_flag("--experimental", experimental, "Allow experimental definitions");

  auto* metric = app.add_subcommand("metric", "Pro-V separation rank and distance of two words");
  metric->add_option("--u", u, "First word")->required();
  metric->add_option("--v", v, "Second word")->required();
  metric->add_option("--pv", pv, "Pseudovariety name")->required();
  metric->add_option("--max-order", maxOrder, "Largest order searched (1-4)")
      ->capture_default_str();

  auto* closure = app.add_subcommand("closure", "Pro-group closure of a regular language");
  closure->add_option("--lang", lang, "Regular expression")->required();
  closure->add_option("--alphabet", alphabet, "Alphabet");
  closure->add_option("--word", words, "Words to test for membership (repeatable)");

  auto* separate = app.add_subcommand("separate", "Separate a word from a language by groups");
  separate->add_option("--word", word, "Nonempty word")->required();
  separate->add_option("--lang", lang, "Regular expression")->required();
  separate->add_option("--alphabet", alphabet, "Alphabet");
  separate->add_flag("--certificate", certificate, "Search small groups for a witness");
  separate->add_option("--max-group-order", groupOrder, "Largest certificate group (1-6)")
      ->capture_default_str();

  auto* kernel = app.add_subcommand("kernel", "Group kernel of a finite monoid");
  kernel->add_option("--table", table, "Monoid JSON file")->required();
  kernel->add_flag("--cross-check", crossCheck, "Also compute it through closures");

  auto* pointlike = app.add_subcommand("pointlike", "Group-pointlike test for a subset");
  pointlike->add_option("--table", table, "Monoid JSON file")->required();
  pointlike->add_option("--subset", subset, "Comma-separated elements")->required();

  auto* inevitable = app.add_subcommand("inevitable", "Inevitability of small graph equations");
  inevitable->add_option("--table", table, "Monoid JSON file")->required();
  inevitable->add_option("--x", x, "Constraint on the vertex variable x")->required();
  inevitable->add_option("--y", y, "Constraints on the arrow variables (comma-separated)")
      ->required();
  inevitable->add_option("--z", z, "Constraint on the second vertex (two-vertex system)");

  auto* omega = app.add_subcommand("omega", "Monogenic profiles and omega powers");
  omega->add_option("--table", table, "Semigroup JSON file")->required();
  omega->add_option("--element", element, "Restrict to one element");

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate semigroups of a small order");
  enumerate->add_option("--order", order, "Order (1-4)")->required();
  enumerate->add_flag("--count-only", countOnly, "Print only the count");
  enumerate->add_flag("--all", all, "All associative tables, not up to isomorphism");

  auto* entropyCmd = app.add_subcommand("entropy", "Entropy of the sofic shift of a language");
  entropyCmd->add_option("--lang", lang, "Regular expression (trimmed to its factorial core)")
      ->required();
  entropyCmd->add_option("--alphabet", alphabet, "Alphabet");

  auto* primitive = app.add_subcommand("primitive", "Primitivity of a substitution");
  primitive->add_option("--subst", subst, "Substitution, e.g. \"a->ab; b->ba\"")->required();
  primitive->add_option("--blocks", blocks, "Also list the blocks of this length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0 && app.get_subcommands().empty()) {
      // Name the offending word when it looks like a subcommand.
      for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--format") {
          ++i;
          continue;
        }
        if (!arg.empty() && arg[0] != '-') {
          std::cerr << "unknown subcommand '" << arg << "'\n";
          break;
        }
      }
      std::cerr << app.help();
      return 2;
    }
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : 2;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  Output out;
  json& d = out.data;

  try {
    if (cmd == syntactic) {
      const Alphabet a = inferAlphabet(alphabet, lang);
      const SyntacticResult r = syntacticSemigroup(parseRegex(lang, a), a);
      const FiniteSemigroup& s = r.morphism.codomain;
      d["order"] = s.order();
      d["monoid"] = r.containsEmptyWord;
      d["morphism"] = morphismJson(r.morphism);
      d["accepting"] = labels(s, r.accepting);
      d["minimalDfaStates"] = r.minimalDfa.size();
      d["predicates"] = predicatesJson(structuralPredicates(s));
    } else if (cmd == memberCmd) {
      const FiniteSemigroup s = loadSemigroup(table);
      PseudovarietyDef def;
      if (!identities.empty()) {
        def.name = "custom";
        def.basis = parsePseudoidentities(identities);
      } else if (!pv.empty()) {
        def = lookupPseudovariety(pv, experimental);
      } else {
        throw CLI::RequiredError("--pv or --identities");
      }
      if (def.experimental) out.diagnostics.push_back("experimental definition: " + def.name);
      const Membership m = member(s, def);
      d["pseudovariety"] = def.name;
      d["member"] = m.member;
      if (!m.member) {
        d["failedIdentity"] = def.basis[*m.failedIdentity].toString();
        d["witness"] = assignmentJson(s, *m.witness);
      }
    } else if (cmd == metric) {
      const RankResult r = separationRank(u, v, lookupPseudovariety(pv), maxOrder);
      const Distance dist = distance(r);
      switch (r.kind) {
        case RankResult::Kind::Exact:
          d["rank"] = r.rank;
          break;
        case RankResult::Kind::Infinite:
          d["rank"] = "infinite";
          break;
        case RankResult::Kind::ExceedsBound:
          d["rank"] = nullptr;
          out.diagnostics.push_back("no separating semigroup of order <= " +
                                    std::to_string(maxOrder));
          break;
      }
      if (dist.exact)
        d["distance"] = dist.value;
      else
        d["distance"] = json::array({dist.lower, dist.upper});
      d["exact"] = dist.exact;
      if (r.witness) {
        d["witness"] = morphismJson(*r.witness);
        d["witness"]["images"] = {r.witness->codomain.label(r.witness->image(u)),
                                  r.witness->codomain.label(r.witness->image(v))};
      }
    } else if (cmd == closure) {
      std::string extra;
      for (const auto& w : words) extra += w;
      const Alphabet a = inferAlphabet(alphabet, lang, extra);
      const ClosureResult c = proGClosure(parseRegex(lang, a));
      d["closure"] = toRegex(c.automaton).toString();
      d["states"] = c.automaton.states;
      json contains = json::object();
      for (const auto& w : words) contains[w.empty() ? "~" : w] = c.contains(w);
      d["contains"] = contains;
    } else if (cmd == separate) {
      const Alphabet a = inferAlphabet(alphabet, lang, word);
      const Regex r = parseRegex(lang, a);
      d["separable"] = separableByGroupLanguage(word, r);
      if (certificate) {
        if (groupOrder < 1 || groupOrder > 6) throw DomainError("group order must lie in 1..6");
        const auto cert = findSeparatingGroupMorphism(word, r, a, std::size_t(groupOrder));
        if (cert) {
          const FiniteSemigroup& g = cert->morphism.codomain;
          d["certificate"] = {{"group", cert->group},
                              {"letters", morphismJson(cert->morphism)["letters"]},
                              {"wordImage", g.label(cert->wordImage)},
                              {"languageImage", labels(g, cert->languageImage)}};
        } else {
          d["certificate"] = nullptr;
          out.diagnostics.push_back(
              std::string(d["separable"] ? "separable (no small certificate): " : "") +
              "no separating morphism into a group of order <= " + std::to_string(groupOrder));
        }
      }
    } else if (cmd == kernel) {
      const FiniteSemigroup m = loadSemigroup(table);
      const KernelResult k = kernelG(m);
      d["kernel"] = labels(m, k.kernel);
      json trace = json::array();
      for (const auto& step : k.trace) trace.push_back({{"added", m.label(step.added)}, {"via", step.via}});
      d["trace"] = trace;
      if (crossCheck) {
        const ElementSet viaClosure = kernelViaClosure(m, canonicalGenerators(m));
        d["agrees"] = viaClosure == k.kernel;
      }
    } else if (cmd == pointlike) {
      const FiniteSemigroup m = loadSemigroup(table);
      ElementSet set;
      for (const auto& t : splitList(subset)) set.insert(parseElement(m, t));
      const PointlikeResult p = gPointlike(m, set, canonicalGenerators(m));
      d["subset"] = labels(m, set);
      d["pointlike"] = p.pointlike;
      d["witness"] = p.witness ? json(p.witness->toString()) : json(nullptr);
    } else if (cmd == inevitable) {
      const FiniteSemigroup m = loadSemigroup(table);
      const Element ex = parseElement(m, x);
      std::vector<Element> ys;
      for (const auto& t : splitList(y)) ys.push_back(parseElement(m, t));
      if (ys.empty()) throw DomainError("at least one arrow constraint is needed");
      if (z.empty()) {
        if (ys.size() != 1) throw DomainError("the loop equation has exactly one arrow");
        d["system"] = "loop";
        d["inevitable"] = inevitableLoop(m, ex, ys.front());
      } else {
        const PointlikeResult p =
            inevitableTwoVertex(m, ex, ys, parseElement(m, z), canonicalGenerators(m));
        d["system"] = "two-vertex";
        d["inevitable"] = p.pointlike;
        d["witness"] = p.witness ? json(p.witness->toString()) : json(nullptr);
      }
    } else if (cmd == omega) {
      const FiniteSemigroup s = loadSemigroup(table);
      json profiles = json::array();
      for (Element e = 0; e < s.order(); ++e) {
        if (!element.empty() && e != parseElement(s, element)) continue;
        const MonogenicProfile p = monogenicProfile(s, e);
        profiles.push_back({{"element", s.label(e)},
                            {"index", p.index},
                            {"period", p.period},
                            {"omega", s.label(p.omega)},
                            {"omegaMinusOne", s.label(p.omegaMinusOne)},
                            {"omegaPlusOne", s.label(omegaPower(s, e, 1))}});
      }
      d["profiles"] = profiles;
    } else if (cmd == enumerate) {
      const auto list = enumerateSemigroups(order, !all);
      d["order"] = order;
      d["uptoIso"] = !all;
      d["count"] = list.size();
      if (!countOnly) {
        json tables = json::array();
        for (const auto& s : list) tables.push_back(s.table());
        d["tables"] = tables;
      }
    } else if (cmd == entropyCmd) {
      const Alphabet a = inferAlphabet(alphabet, lang);
      const SoficShift sx = soficShift(parseRegex(lang, a), a);
      d["entropy"] = entropy(sx);
      d["presentationStates"] = sx.states;
      d["blockDfaStates"] = sx.blockDfa.size();
      d["irreducible"] = isIrreducible(sx);
    } else if (cmd == primitive) {
      const Substitution s = Substitution::parse(subst);
      d["substitution"] = s.toString();
      d["incidence"] = s.incidence();
      const bool prim = isPrimitive(s);
      d["primitive"] = prim;
      if (blocks > 0) {
        if (!prim) throw DomainError("blocks are only defined for primitive substitutions");
        d["blocks"] = substitutionBlocks(s, blocks);
      }
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n" << cmd->help();
    return 2;
  } catch (const Error& e) {
    print(format, name, "error", {{"error", errorJson(e)}}, out.diagnostics);
    return 1;
  }

  print(format, name, "ok", out.data, out.diagnostics);
  return 0;
}
