#include "sievekit/cli/app.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "sievekit/cli/suite.hpp"

namespace sievekit::cli {

namespace {

struct Settings {
  std::string input;
  std::string preset;
  std::string format = "json";
  std::string level = "full";
  std::size_t guard = kDefaultSieveGuard;
  std::string topology;
  std::string object;
  std::size_t union_size = 3;
  std::string seed_corpus;
  bool expand = false;
  std::vector<std::string> positional;
};

/// Comma-separated morphism names; an empty string is the empty list.
NameSieve split_names(const std::string& arg) {
  NameSieve out;
  std::size_t start = 0;
  while (start <= arg.size()) {
    const auto comma = std::min(arg.find(',', start), arg.size());
    if (comma > start) out.push_back(arg.substr(start, comma - start));
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

WorkspaceDocument load_document(const Settings& s) {
  if (!s.input.empty() && !s.preset.empty()) throw SchemaError("", "give either --input or --preset, not both");
  if (!s.preset.empty()) return preset_document(s.preset);
  if (s.input.empty()) throw SchemaError("", "no input document: pass --input FILE or --preset NAME");
  std::ifstream in(s.input);
  if (!in) throw SchemaError("", "cannot read '" + s.input + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_document(j);
}

QueryOptions query_options(const Settings& s) {
  QueryOptions o;
  o.guard = s.guard;
  o.level = s.level == "basic" ? TopologyLevel::basic : TopologyLevel::full;
  if (!s.topology.empty()) o.topology = s.topology;
  o.union_size = s.union_size;
  return o;
}

/// Turns a subcommand and its positionals into a query record.
Json command_query(const std::string& command, const Settings& s) {
  const auto& p = s.positional;
  Json q{{"op", command}};
  if (command == "sieves") {
    q["object"] = p.at(0);
  } else if (command == "pullback") {
    q["morphism"] = p.at(0);
    q["generators"] = split_names(p.at(1));
  } else if (command == "filter-gen" || command == "ultra") {
    q["filter"] = p.at(0);
  } else if (command == "converge" || command == "cluster") {
    q["filter"] = p.at(0);
    q["point"] = p.at(1);
  } else if (command == "closure") {
    q["generators"] = split_names(p.at(0));
  } else if (command == "audit") {
    q["audit"] = p.at(0);
    q["object"] = p.at(1);
  }
  if (!s.object.empty() && command != "sieves" && command != "audit") q["object"] = s.object;
  return q;
}

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Finite categories, sieves, Grothendieck topologies, filters and convergence", "sievekit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-i,--input", s.input, "Workspace document (JSON)");
  app.add_option("--preset", s.preset, "Preset category: poset:NAME, frame:NAME, monoid, parallel-pair, pointed-two");
  app.add_option("--format", s.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--level", s.level, "Topology validation level")->check(CLI::IsMember({"basic", "full"}));
  app.add_option("--guard", s.guard, "Largest sieve lattice the exhaustive searches enumerate");
  app.add_option("--topology", s.topology, "Topology to use (default: the only one declared, else trivial)");

  std::string command;
  auto sub = [&](const char* name, const char* help, std::vector<const char*> params) {
    auto* c = app.add_subcommand(name, help);
    c->callback([&command, name] { command = name; });
    if (!params.empty()) {
      std::string joined;
      for (const char* p : params) joined += std::string(joined.empty() ? "" : " ") + p;
      c->add_option("args", s.positional, joined)->expected(static_cast<int>(params.size()))->required();
    }
    return c;
  };
  sub("validate", "Check the category, topologies and filters against their axioms", {});
  sub("sieves", "List the sieves on an object in canonical order", {"OBJECT"});
  sub("pullback", "Pull a sieve back along a morphism", {"MORPHISM", "GENERATORS"});
  auto* filter_cmd = app.add_subcommand("filter", "Filter operations");
  filter_cmd->require_subcommand(1);
  auto* gen = filter_cmd->add_subcommand("gen", "Generate the filter of a named filter, base or subbase");
  gen->add_option("name", s.positional, "FILTER")->expected(1)->required();
  gen->callback([&command] { command = "filter-gen"; });
  sub("ultra", "Extend a named filter to an ultrafilter", {"FILTER"});
  sub("converge", "Does a filter converge to a point", {"FILTER", "POINT"});
  auto* closure_cmd = sub("closure", "Points in the closure of the sieve generated by GENERATORS", {"GENERATORS"});
  closure_cmd->add_option("--object", s.object, "Object of the sieve (needed for the empty sieve)");
  sub("cluster", "Is a point a cluster point of a filter", {"FILTER", "POINT"});
  auto* audit_cmd = sub("audit", "Exhaustive audit: neighborhood-filter, cluster, closure, prime, finite-union",
                        {"AUDIT", "OBJECT"});
  audit_cmd->add_option("--n", s.union_size, "Number of sieves in the finite-union audit");
  auto* corpus_cmd = sub("corpus", "Run the built-in audit suite", {});
  corpus_cmd->add_option("--seed-corpus", s.seed_corpus, "Directory of extra workspace documents");
  sub("queries", "Evaluate the document's queries in order", {});
  auto* canon_cmd = sub("canon", "Print the document in canonical form", {});
  canon_cmd->add_flag("--expand", s.expand, "Inline the preset category and its topologies");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
  }

  const auto format = s.format == "text" ? Format::text : Format::json;
  const auto options = query_options(s);
  auto fail = [&](const Json& j, int code) {
    err << render(j, format);
    return code;
  };

  try {
    QueryResult result;
    if (command == "corpus") {
      SuiteOptions so;
      so.guard = s.guard;
      if (!s.seed_corpus.empty()) so.seed_corpus = s.seed_corpus;
      result = run_corpus_suite(so);
    } else if (command == "validate") {
      result = validate_document(load_document(s), options);
    } else if (command == "canon") {
      const auto doc = load_document(s);
      result.body = serialize(s.expand ? expand(doc) : doc);
    } else if (command == "queries") {
      const auto ws = Workspace::load(load_document(s));
      Json results = Json::array();
      for (std::size_t i = 0; i < ws.document().queries.size(); ++i) {
        const auto& q = ws.document().queries[i];
        auto r = run_query(ws, q, options, pointer_join("/queries", i));
        r.body["query"] = q;
        result.counterexample = result.counterexample || r.counterexample;
        results.push_back(std::move(r.body));
      }
      result.body = {{"op", "queries"}, {"results", std::move(results)}};
    } else {
      const auto ws = Workspace::load(load_document(s));
      const auto q = command_query(command, s);
      result = run_query(ws, q, options);
      result.body["query"] = q;
    }
    out << render(result.body, format);
    return result.counterexample ? kExitCounterexample : kExitOk;
  } catch (const SchemaError& e) {
    auto j = error_json("schema", e.what());
    j["error"]["pointer"] = e.pointer();
    return fail(j, kExitInputError);
  } catch (const ValidationError& e) {
    auto j = error_json("validation", e.what());
    j["error"]["violations"] = report_json(e.report())["violations"];
    return fail(j, kExitInputError);
  } catch (const SizeGuardExceeded& e) {
    return fail(error_json("size-guard", e.what()), kExitInputError);
  } catch (const NoTerminalObject& e) {
    return fail(error_json("no-terminal-object", e.what()), kExitInputError);
  } catch (const Error& e) {
    return fail(error_json("input", e.what()), kExitInputError);
  } catch (const InternalInconsistency& e) {
    return fail(error_json("internal-inconsistency", e.what()), kExitCounterexample);
  } catch (const Json::exception& e) {
    return fail(error_json("schema", e.what()), kExitInputError);
  }
}

}  // namespace sievekit::cli
