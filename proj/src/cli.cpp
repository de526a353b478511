#include "broadgen/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "broadgen/broadnum.hpp"
#include "broadgen/dsl.hpp"
#include "broadgen/error.hpp"
#include "broadgen/graph.hpp"
#include "broadgen/ordinal.hpp"
#include "broadgen/terms.hpp"
#include "broadgen/universes.hpp"

namespace broadgen {

namespace {

using nlohmann::json;
using dsl::DerivationKind;

constexpr int kJsonVersion = 1;
constexpr std::size_t kDefaultDepth = 2;
constexpr std::size_t kDefaultElements = 500'000;

struct Options {
  std::string file;
  std::string format = "text";
  std::string budget;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> fuel;

  std::string sig, rubric, broadrubric, broadsig, reducedsig, base = "E";
  std::string deriv, thing, term, broad, reduced, arg;
  std::size_t stage = 0;
  bool pseudo = false;
};

struct Emission {
  json result = json::object();
  std::string text;
};

// Resolves names in the --file document first, then in the prelude, and
// remembers the last source handed to the parser for error context.
class Context {
 public:
  explicit Context(const Options& o) : opts_(o) {}

  template <class F>
  auto parsing(const std::string& label, const std::string& text, F f) {
    label_ = label;
    text_ = text;
    return f();
  }

  void load_file() {
    if (opts_.file.empty()) return;
    std::ifstream in(opts_.file, std::ios::binary);
    if (!in) throw DomainError("cannot read " + opts_.file);
    std::stringstream ss;
    ss << in.rdbuf();
    file_text_ = ss.str();
    doc_ = parsing(opts_.file, file_text_, [&] { return dsl::parse_document(file_text_); });
  }

  const dsl::Definition& lookup(const std::string& name) const {
    if (auto d = doc_.find(name)) return *d;
    if (auto d = dsl::prelude().find(name)) return *d;
    throw DomainError("no definition named '" + name + "'");
  }

  Budget budget() const {
    Budget b;
    b.depth = kDefaultDepth;
    b.max_elements = kDefaultElements;
    if (!opts_.budget.empty()) b = dsl::apply_budget(lookup(opts_.budget), b);
    if (opts_.depth) b.depth = *opts_.depth;
    if (opts_.fuel) b.fuel = *opts_.fuel;
    return b;
  }

  // "label:line:col" plus the offending line and a caret.
  std::string context(const ParseError& e) const {
    if (label_.empty()) return "";
    std::istringstream in(text_);
    std::string line;
    for (std::size_t k = 0; k < e.line() && std::getline(in, line); ++k) {
    }
    std::string caret(e.column() > 0 ? e.column() - 1 : 0, ' ');
    return label_ + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + "\n  " +
           line + "\n  " + caret + "^\n";
  }

 private:
  const Options& opts_;
  dsl::Document doc_;
  std::string file_text_;
  std::string label_;
  std::string text_;
};

void add_line(Emission& e, const std::string& line) { e.text += line + "\n"; }

std::string generation_summary(const GenerationResult& r) {
  std::string n = std::to_string(r.set.size()) + " elements";
  if (r.stabilized) return "# " + n + ", stabilized at stage " + std::to_string(r.stages);
  return "# " + n + " after " + std::to_string(r.stages) + " stages, not stabilized";
}

void put_generation(Emission& e, const GenerationResult& r) {
  e.result["stabilized"] = r.stabilized;
  e.result["stages"] = r.stages;
  add_line(e, generation_summary(r));
}

Emission cmd_terms(const Options& o, Context& ctx) {
  Signature s = dsl::to_signature(ctx.lookup(o.sig));
  Budget b = ctx.budget();
  ThingSet ts = generate_terms(s, b.depth, b.max_elements);
  Emission e;
  json terms = json::array();
  for (HfSet t : ts) {
    terms.push_back(term_to_text(t));
    add_line(e, term_to_text(t));
  }
  e.result = {{"signature", o.sig}, {"depth", b.depth}, {"count", ts.size()}, {"terms", terms}};
  return e;
}

Emission cmd_set(const Options& o, Context& ctx) {
  Budget b = ctx.budget();
  GenerationResult r = o.broadrubric.empty()
                           ? generate_set(dsl::to_rubric(ctx.lookup(o.rubric)), b)
                           : generate_set(dsl::to_broad_rubric(ctx.lookup(o.broadrubric)), b);
  Emission e;
  json elements = json::array();
  for (HfSet x : r.set) {
    elements.push_back(thing_to_text(x));
    add_line(e, thing_to_text(x));
  }
  e.result["elements"] = elements;
  put_generation(e, r);
  return e;
}

Emission cmd_family(const Options& o, Context& ctx) {
  Budget b = ctx.budget();
  GeneratedFamily f;
  DerivationKind kind = DerivationKind::plain;
  if (o.broadrubric.empty()) {
    if (o.pseudo) throw DomainError("--pseudo needs --broadrubric");
    f = generate_family(dsl::to_rubric(ctx.lookup(o.rubric)), b);
  } else {
    BroadRubric br = dsl::to_broad_rubric(ctx.lookup(o.broadrubric));
    kind = o.pseudo ? DerivationKind::pseudo : DerivationKind::broad;
    f = o.pseudo ? generate_pseudo_family(br, b) : generate_family(br, b);
  }
  Emission e;
  json entries = json::array();
  for (const auto& [key, value] : f.entries) {
    std::string d = dsl::derivation_to_text(key, kind);
    entries.push_back({{"derivation", d}, {"value", thing_to_text(value)}});
    add_line(e, d + " => " + thing_to_text(value));
  }
  e.result = {{"entries", entries}, {"depth", f.depth}, {"complete", f.complete}};
  add_line(e, "# " + std::to_string(f.entries.size()) + " derivations" +
                  (f.complete ? ", complete" : ""));
  return e;
}

Emission cmd_broad(const Options& o, Context& ctx) {
  BroadSignature g = dsl::to_broad_signature(ctx.lookup(o.broadsig));
  GenerationResult r = generate_broad(g, ctx.budget());
  Emission e;
  json elements = json::array();
  for (HfSet w : r.set) {
    std::string rank = broad_rank(g, w).to_string();
    elements.push_back({{"number", broad_to_text(w)}, {"rank", rank}});
    add_line(e, broad_to_text(w) + " rank " + rank);
  }
  e.result["elements"] = elements;
  put_generation(e, r);
  return e;
}

Emission cmd_reduced(const Options& o, Context& ctx) {
  ReducedBroadSignature f = dsl::to_reduced_signature(ctx.lookup(o.reducedsig));
  GenerationResult r = generate_reduced(f, ctx.budget());
  Emission e;
  json elements = json::array();
  for (HfSet w : r.set) {
    elements.push_back({{"number", reduced_to_text(w)}});
    add_line(e, reduced_to_text(w));
  }
  e.result["elements"] = elements;
  put_generation(e, r);
  return e;
}

Emission cmd_translate(const Options& o, Context& ctx) {
  Emission e;
  json pairs = json::array();
  auto pair = [&](const std::string& from, const std::string& to) {
    pairs.push_back({{"from", from}, {"to", to}});
    add_line(e, from + " => " + to);
  };
  if (!o.deriv.empty()) {
    auto d = ctx.parsing("--deriv", o.deriv, [&] { return dsl::parse_derivation(o.deriv); });
    if (d.kind == DerivationKind::plain) throw DomainError("plain derivations have no translation");
    bool forward = d.kind == DerivationKind::pseudo;
    HfSet t = theta_derivs(forward ? Direction::forward : Direction::backward, d.value);
    pair(dsl::derivation_to_text(d.value, d.kind),
         dsl::derivation_to_text(t, forward ? DerivationKind::broad : DerivationKind::pseudo));
    e.result["direction"] = forward ? "forward" : "backward";
  } else {
    BroadSignature g = dsl::to_broad_signature(ctx.lookup(o.broadsig));
    std::vector<HfSet> numbers;
    if (!o.thing.empty()) {
      numbers.push_back(ctx.parsing("--thing", o.thing, [&] { return dsl::parse_thing(o.thing); }));
    } else {
      GenerationResult r = generate_broad(g, ctx.budget());
      numbers.assign(r.set.begin(), r.set.end());
    }
    for (HfSet w : numbers) {
      HfSet u = theta_reduce(Direction::backward, w, g);
      if (theta_reduce(Direction::forward, u, g) != w) {
        throw Error("translation does not round trip on " + broad_to_text(w));
      }
      pair(broad_to_text(w), reduced_to_text(u));
    }
    e.result["direction"] = "backward";
  }
  e.result["pairs"] = pairs;
  return e;
}

Emission cmd_eval(const Options& o, Context& ctx) {
  auto d = ctx.parsing("--deriv", o.deriv, [&] { return dsl::parse_derivation(o.deriv); });
  HfSet v;
  if (!o.rubric.empty()) {
    if (d.kind != DerivationKind::plain) throw DomainError("rubrics take plain derivations (i g p)");
    v = eval_derivation(dsl::to_rubric(ctx.lookup(o.rubric)), d.value);
  } else {
    if (d.kind == DerivationKind::plain) {
      throw DomainError("broad rubrics take basic/trigger or basicp/triggerp derivations");
    }
    BroadRubric br = dsl::to_broad_rubric(ctx.lookup(o.broadrubric));
    v = d.kind == DerivationKind::broad ? eval_derivation(br, d.value)
                                        : eval_pseudo_derivation(br, d.value);
  }
  Emission e;
  e.result = {{"derivation", dsl::derivation_to_text(d.value, d.kind)},
              {"value", thing_to_text(v)}};
  add_line(e, thing_to_text(v));
  return e;
}

Emission cmd_viz(const Options& o, Context& ctx, bool dot) {
  Graph g;
  if (!o.term.empty()) {
    g = term_graph(ctx.parsing("--term", o.term, [&] { return dsl::parse_term(o.term); }));
  } else if (!o.broad.empty()) {
    g = broad_graph(ctx.parsing("--broad", o.broad, [&] { return dsl::parse_thing(o.broad); }));
  } else {
    g = reduced_graph(
        ctx.parsing("--reduced", o.reduced, [&] { return dsl::parse_thing(o.reduced); }));
  }
  Emission e;
  json nodes = json::array(), edges = json::array();
  for (const auto& n : g.nodes) nodes.push_back({{"id", n.id}, {"label", n.label}});
  for (const auto& x : g.edges) {
    edges.push_back({{"from", x.from},
                     {"to", x.to},
                     {"label", x.label},
                     {"dimension", std::string(dimension_name(x.dimension))}});
  }
  e.result = {{"nodes", nodes}, {"edges", edges}};
  if (dot) {
    e.text = to_dot(g);
  } else {
    for (const auto& n : g.nodes) add_line(e, n.id + " " + n.label);
    for (const auto& x : g.edges) {
      add_line(e, x.from + " -> " + x.to + " " + std::string(dimension_name(x.dimension)) +
                      (x.label.empty() ? "" : " " + x.label));
    }
  }
  return e;
}

Emission cmd_ordinal(const Options& o, Context& ctx) {
  Ordinal a = ctx.parsing("ordinal", o.arg, [&] { return Ordinal::parse(o.arg); });
  Emission e;
  e.result = {{"ordinal", a.to_string()},
              {"successor", a.is_successor()},
              {"limit", a.is_limit()},
              {"omega_complete", is_omega_complete(a)},
              {"regular", is_regular(a)}};
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  add_line(e, a.to_string());
  add_line(e, std::string("successor ") + yes(a.is_successor()));
  add_line(e, std::string("limit ") + yes(a.is_limit()));
  add_line(e, std::string("omega-complete ") + yes(is_omega_complete(a)));
  add_line(e, std::string("regular ") + yes(is_regular(a)));
  return e;
}

Emission cmd_vstage(const Options& o) {
  HfSet v = v_stage(o.stage);
  Emission e;
  e.result = {{"stage", o.stage}, {"size", v.size()}};
  add_line(e, std::to_string(v.size()));
  return e;
}

Emission cmd_hartogs(const Options& o, Context& ctx) {
  HfSet k = ctx.parsing("hartogs", o.arg, [&] { return dsl::parse_thing(o.arg); });
  Emission e;
  std::uint64_t h = hartogs(k), l = lindenbaum(k);
  e.result = {{"set", thing_to_text(k)}, {"size", k.size()}, {"hartogs", h}, {"lindenbaum", l}};
  add_line(e, "hartogs " + std::to_string(h));
  add_line(e, "lindenbaum " + std::to_string(l));
  return e;
}

Emission cmd_tarski(const Options& o, Context& ctx) {
  TarskiUniverse u = tarski_universe(dsl::to_family_of_sets(ctx.lookup(o.base)), ctx.budget());
  Emission e;
  json codes = json::array();
  for (const auto& [code, decode] : u.codes) {
    codes.push_back({{"code", code_to_text(code)}, {"decode", decode_to_text(decode)}});
    add_line(e, code_to_text(code) + " => " + decode_to_text(decode));
  }
  e.result = {{"codes", codes}, {"depth", u.depth}, {"complete", u.complete}};
  return e;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Generate and inspect inductively defined sets, broad numbers and universes",
               "broadgen"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--file", o.file, "Definitions file; names resolve there before the prelude")
      ->check(CLI::ExistingFile);
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--depth", o.depth, "Depth bound")->check(CLI::Range(0, 64));
  app.add_option("--fuel", o.fuel, "Rule application bound")->check(CLI::PositiveNumber);
  app.add_option("--budget", o.budget, "Named budget definition");

  auto rubric_choice = [&](CLI::App* c) {
    auto r = c->add_option("--rubric", o.rubric, "Rubric name");
    auto b = c->add_option("--broadrubric", o.broadrubric, "Broad rubric name");
    r->excludes(b);
  };

  auto* terms = app.add_subcommand("terms", "Terms of a signature up to the depth");
  terms->add_option("--sig", o.sig, "Signature name")->required();
  auto* set = app.add_subcommand("set", "Generated set of a rubric");
  rubric_choice(set);
  auto* family = app.add_subcommand("family", "Generated family: derivation => value");
  rubric_choice(family);
  family->add_flag("--pseudo", o.pseudo, "Use the primed derivation constructors");
  auto* broad = app.add_subcommand("broad", "Broad numbers of a broad signature, with ranks");
  broad->add_option("--broadsig", o.broadsig, "Broad signature name")->required();
  auto* reduced = app.add_subcommand("reduced", "Reduced broad numbers");
  reduced->add_option("--reducedsig", o.reducedsig, "Reduced broad signature name")->required();
  auto* translate = app.add_subcommand("translate", "Broad numbers to the reduced encoding");
  auto* tsig = translate->add_option("--broadsig", o.broadsig, "Broad signature name");
  translate->add_option("--thing", o.thing, "A single broad number")->needs(tsig);
  auto* tder = translate->add_option("--deriv", o.deriv, "A broad or primed derivation");
  tsig->excludes(tder);
  auto* eval = app.add_subcommand("eval", "Value of a derivation");
  rubric_choice(eval);
  eval->add_option("--deriv", o.deriv, "Derivation")->required();
  auto* viz = app.add_subcommand("viz", "Tree drawing of a term or broad number");
  auto* vt = viz->add_option("--term", o.term, "Term i(k->t,...)");
  auto* vb = viz->add_option("--broad", o.broad, "Broad number");
  auto* vr = viz->add_option("--reduced", o.reduced, "Reduced broad number");
  vt->excludes(vb)->excludes(vr);
  vb->excludes(vr);
  auto* ordinal = app.add_subcommand("ordinal", "Properties of an ordinal below w^w");
  ordinal->add_option("ordinal", o.arg, "e.g. w^2*3+w+4")->required();
  auto* vstage = app.add_subcommand("vstage", "Size of a cumulative hierarchy stage");
  vstage->add_option("n", o.stage, "Stage")->required()->check(CLI::Range(0, 5));
  auto* hart = app.add_subcommand("hartogs", "Hartogs and Lindenbaum numbers of a finite set");
  hart->add_option("set", o.arg, "e.g. {0,1,2}")->required();
  auto* tarski = app.add_subcommand("tarski", "Codes and decodes of a universe");
  tarski->add_option("--base", o.base, "Family of sets (default E, the empty family)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_user_error;
  }

  CLI::App* cmd = app.get_subcommands().front();
  std::string name = cmd->get_name();
  if (o.format == "dot" && cmd != viz) {
    err << "error: --format dot is only available for viz\n";
    return exit_user_error;
  }

  // one source per command, checked before anything runs
  auto count = [](std::initializer_list<const std::string*> xs) {
    int n = 0;
    for (const std::string* x : xs) n += !x->empty();
    return n;
  };
  std::string missing;
  if ((cmd == set || cmd == family || cmd == eval) && count({&o.rubric, &o.broadrubric}) != 1) {
    missing = "give one of --rubric or --broadrubric";
  } else if (cmd == translate && count({&o.broadsig, &o.deriv}) != 1) {
    missing = "give one of --broadsig or --deriv";
  } else if (cmd == viz && count({&o.term, &o.broad, &o.reduced}) != 1) {
    missing = "give one of --term, --broad or --reduced";
  }
  if (!missing.empty()) {
    err << "error: " << missing << "\n";
    return exit_user_error;
  }

  Context ctx(o);
  try {
    ctx.load_file();
    Emission e;
    if (cmd == terms) e = cmd_terms(o, ctx);
    else if (cmd == set) e = cmd_set(o, ctx);
    else if (cmd == family) e = cmd_family(o, ctx);
    else if (cmd == broad) e = cmd_broad(o, ctx);
    else if (cmd == reduced) e = cmd_reduced(o, ctx);
    else if (cmd == translate) e = cmd_translate(o, ctx);
    else if (cmd == eval) e = cmd_eval(o, ctx);
    else if (cmd == viz) e = cmd_viz(o, ctx, o.format == "dot");
    else if (cmd == ordinal) e = cmd_ordinal(o, ctx);
    else if (cmd == vstage) e = cmd_vstage(o);
    else if (cmd == hart) e = cmd_hartogs(o, ctx);
    else e = cmd_tarski(o, ctx);

    if (o.format == "json") {
      json doc = {{"version", kJsonVersion}, {"command", name}, {"result", e.result}};
      out << doc.dump(2) << "\n";
    } else {
      out << e.text;
    }
    return exit_ok;
  } catch (const BudgetError& e) {
    err << "error: budget exhausted: " << e.what() << "\n";
    return exit_budget;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n" << ctx.context(e);
    return exit_user_error;
  } catch (const NonFinitaryError& e) {
    err << "error: " << e.what() << " (bound the family with 'to')\n";
    return exit_user_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_user_error;
  }
}

}  // namespace broadgen
