#include "broadgen/dsl.hpp"

#include <cctype>
#include <functional>
#include <memory>
#include <set>

#include "broadgen/broadnum.hpp"
#include "broadgen/encodings.hpp"
#include "broadgen/terms.hpp"

namespace broadgen::dsl {

namespace {

// von_neumann(n) interns n sets with n(n-1)/2 memberships in total.
constexpr std::uint64_t kMaxLiteral = 20000;
constexpr std::uint64_t kMaxEnumerated = 1'000'000;

struct Token {
  enum class Kind { ident, number, punct, end };
  Kind kind = Kind::end;
  std::string text;
  std::uint64_t value = 0;
  SourcePos pos;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.pos = {line, col};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::uint64_t v = 0;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        std::uint64_t d = static_cast<std::uint64_t>(src[j] - '0');
        if (__builtin_mul_overflow(v, 10u, &v) || __builtin_add_overflow(v, d, &v)) {
          throw ParseError("number too large", line, col);
        }
        ++j;
      }
      t.kind = Token::Kind::number;
      t.value = v;
      t.text = std::string(src.substr(i, j - i));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      t.kind = Token::Kind::ident;
      t.text = std::string(src.substr(i, j - i));
    } else if ((c == '-' || c == '=') && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Token::Kind::punct;
      t.text = std::string(src.substr(i, 2));
    } else if (std::string_view("{}[]()<>,;:+*").find(c) != std::string_view::npos) {
      t.kind = Token::Kind::punct;
      t.text = std::string(1, c);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

// Names an expression may use.
struct Scope {
  HfSet arity;
  std::string var;  // empty: no index variable in scope
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  bool at_end() const { return peek().kind == Token::Kind::end; }
  const Token& peek() const { return toks_[at_]; }
  Token next() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }

  bool is_punct(std::string_view p) const {
    return peek().kind == Token::Kind::punct && peek().text == p;
  }
  bool is_word(std::string_view w) const {
    return peek().kind == Token::Kind::ident && peek().text == w;
  }
  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!is_word(w)) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, t.pos.line, t.pos.column);
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail("expected '" + std::string(p) + "'");
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) fail("expected '" + std::string(w) + "'");
  }
  std::string ident(const char* what) {
    if (peek().kind != Token::Kind::ident) fail(std::string("expected ") + what);
    return next().text;
  }
  std::uint64_t number(const char* what) {
    if (peek().kind != Token::Kind::number) fail(std::string("expected ") + what);
    return next().value;
  }
  void finish() {
    if (!at_end()) fail("expected end of input");
  }

  // open (key '->' value (',' key '->' value)*)? close
  template <class F>
  Tuple entries(std::string_view open, std::string_view close, F value) {
    expect(open);
    Tuple out;
    if (accept(close)) return out;
    do {
      SourcePos p = peek().pos;
      HfSet k = thing();
      expect("->");
      if (!out.emplace(k, value()).second) {
        throw ParseError("duplicate position " + thing_to_text(k), p.line, p.column);
      }
    } while (accept(","));
    expect(close);
    return out;
  }

  HfSet thing() {
    const Token& t = peek();
    if (t.kind == Token::Kind::number) {
      if (t.value > kMaxLiteral) {
        throw ParseError("numeral above " + std::to_string(kMaxLiteral), t.pos.line,
                         t.pos.column);
      }
      return von_neumann(next().value);
    }
    if (accept("{")) {
      std::vector<HfSet> xs;
      if (!accept("}")) {
        do xs.push_back(thing());
        while (accept(","));
        expect("}");
      }
      return intern(std::move(xs));
    }
    if (accept("<")) {
      HfSet a = thing();
      expect(",");
      HfSet b = thing();
      expect(">");
      return kpair(a, b);
    }
    if (is_punct("[")) return encode_tuple(thing_tuple());
    if (accept_word("Start")) return start();
    if (accept_word("Begin")) return HfSet();
    if (accept_word("StartP")) return start_p();
    if (accept_word("Build")) {
      expect("(");
      HfSet x = thing();
      expect(",");
      HfSet i = thing();
      expect(",");
      Tuple a = thing_tuple();
      expect(")");
      return build(x, i, a);
    }
    if (accept_word("Make")) {
      expect("(");
      HfSet x = thing();
      expect(",");
      Tuple a = thing_tuple();
      expect(")");
      return make(x, a);
    }
    for (bool left : {true, false}) {
      if (accept_word(left ? "inl" : "inr")) {
        expect("(");
        HfSet x = thing();
        expect(")");
        return left ? inl(x) : inr(x);
      }
    }
    fail("expected a thing");
  }

  Tuple thing_tuple() {
    return entries("[", "]", [this] { return thing(); });
  }

  HfSet term() {
    HfSet symbol = thing();
    Tuple args = entries("(", ")", [this] { return term(); });
    return make_term(symbol, args);
  }

  HfSet derivation(std::optional<DerivationKind>& kind) {
    SourcePos p = peek().pos;
    expect("(");
    auto settle = [&](DerivationKind k) {
      if (kind && *kind != k) throw ParseError("mixed derivation kinds", p.line, p.column);
      kind = k;
    };
    std::optional<HfSet> m;
    bool pseudo = false;
    bool broad = false;
    if (is_word("basic") || is_word("basicp")) {
      pseudo = next().text == "basicp";
      broad = true;
    } else if (is_word("trigger") || is_word("triggerp")) {
      pseudo = next().text == "triggerp";
      broad = true;
      settle(pseudo ? DerivationKind::pseudo : DerivationKind::broad);
      m = derivation(kind);
    }
    settle(!broad ? DerivationKind::plain
                  : pseudo ? DerivationKind::pseudo : DerivationKind::broad);
    HfSet i = thing();
    Tuple g = entries("[", "]", [&] { return derivation(kind); });
    HfSet q = thing();
    expect(")");
    if (!broad) return broadgen::derivation(i, g, q);
    if (m) return pseudo ? trigger_p(*m, i, g, q) : trigger(*m, i, g, q);
    return pseudo ? basic_p(i, g, q) : basic(i, g, q);
  }

  Expr expr(const Scope& s) {
    Expr e = product(s);
    while (is_punct("+")) {
      SourcePos p = next().pos;
      Expr r = product(s);
      e = Expr{Expr::Kind::add, 0, {std::move(e), std::move(r)}, p};
    }
    return e;
  }

  Expr product(const Scope& s) {
    Expr e = atom(s);
    while (is_punct("*")) {
      SourcePos p = next().pos;
      Expr r = atom(s);
      e = Expr{Expr::Kind::mul, 0, {std::move(e), std::move(r)}, p};
    }
    return e;
  }

  Expr atom(const Scope& s) {
    const Token& t = peek();
    if (t.kind == Token::Kind::number) return Expr{Expr::Kind::number, next().value, {}, t.pos};
    if (accept("(")) {
      Expr e = expr(s);
      expect(")");
      return e;
    }
    if (t.kind != Token::Kind::ident) fail("expected an expression");
    Token id = next();
    if (auto k = input_position(id.text)) {
      if (!s.arity.contains(von_neumann(*k))) {
        throw ArityMismatch("input " + id.text + " is outside arity " + thing_to_text(s.arity),
                            id.pos.line, id.pos.column);
      }
      return Expr{Expr::Kind::input, *k, {}, id.pos};
    }
    if (!s.var.empty() && id.text == s.var) return Expr{Expr::Kind::index, 0, {}, id.pos};
    throw UnresolvedName("unknown name '" + id.text + "'", id.pos.line, id.pos.column);
  }

  // "m" followed by digits names an input position.
  static std::optional<std::uint64_t> input_position(const std::string& name) {
    if (name.size() < 2 || name[0] != 'm' || name.size() > 8) return std::nullopt;
    std::uint64_t k = 0;
    for (std::size_t j = 1; j < name.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(name[j]))) return std::nullopt;
      k = k * 10 + static_cast<std::uint64_t>(name[j] - '0');
    }
    return k;
  }

  FamilyDef family(HfSet arity) {
    FamilyDef f;
    if (accept("[")) {
      f.listed = true;
      if (!accept("]")) {
        do f.items.push_back(expr({arity, ""}));
        while (accept(","));
        expect("]");
      }
      return f;
    }
    expect_word("family");
    SourcePos vp = peek().pos;
    f.var = ident("an index variable");
    if (input_position(f.var)) {
      throw ParseError("index variable '" + f.var + "' clashes with an input name", vp.line,
                       vp.column);
    }
    expect_word("from");
    f.lo = expr({arity, ""});
    if (accept_word("to")) f.hi = expr({arity, ""});
    expect(":");
    f.value = expr({arity, f.var});
    return f;
  }

  std::vector<RuleDef> rule_block() {
    expect("{");
    std::vector<RuleDef> rules;
    std::set<HfSet> seen;
    while (!accept("}")) {
      RuleDef r;
      r.pos = peek().pos;
      expect_word("rule");
      r.index = thing();
      if (!seen.insert(r.index).second) {
        throw ParseError("duplicate rule " + thing_to_text(r.index), r.pos.line, r.pos.column);
      }
      expect_word("arity");
      r.arity = thing();
      expect("=>");
      r.family = family(r.arity);
      rules.push_back(std::move(r));
      if (!accept(";")) {
        expect("}");
        break;
      }
    }
    return rules;
  }

  // (thing ':' thing ';')* '}' with the opening brace already consumed.
  std::vector<Entry> entry_block() {
    std::vector<Entry> out;
    std::set<HfSet> seen;
    while (!accept("}")) {
      Entry e;
      e.pos = peek().pos;
      e.key = thing();
      if (!seen.insert(e.key).second) {
        throw ParseError("duplicate key " + thing_to_text(e.key), e.pos.line, e.pos.column);
      }
      expect(":");
      e.value = thing();
      out.push_back(std::move(e));
      if (!accept(";")) {
        expect("}");
        break;
      }
    }
    return out;
  }

  std::optional<std::uint64_t> max_clause() {
    if (!accept_word("max")) return std::nullopt;
    return number("a class bound");
  }

  Definition definition() {
    SourcePos pos = peek().pos;
    std::string kw = ident("a definition keyword");
    std::string name = ident("a name");
    if (kw == "signature") {
      expect("{");
      return SignatureDef{name, entry_block(), pos};
    }
    if (kw == "rubric") {
      auto max = max_clause();
      return RubricDef{name, max, rule_block(), pos};
    }
    if (kw == "broadrubric") {
      BroadRubricDef b{name, max_clause(), {}, {}, pos};
      expect("{");
      if (accept_word("basic")) b.basic = rule_block();
      std::set<HfSet> seen;
      while (!accept("}")) {
        SourcePos tp = peek().pos;
        expect_word("on");
        HfSet on = thing();
        if (!seen.insert(on).second) {
          throw ParseError("duplicate trigger " + thing_to_text(on), tp.line, tp.column);
        }
        b.triggers.push_back(TriggerDef{on, rule_block(), tp});
      }
      return b;
    }
    if (kw == "broadsig") {
      BroadSigDef g{name, {}, {}, pos};
      expect("{");
      std::set<HfSet> seen;
      while (!accept("}")) {
        SourcePos cp = peek().pos;
        if (accept_word("else")) {
          expect("{");
          g.fallback = entry_block();
          expect("}");
          break;
        }
        expect_word("at");
        HfSet at = thing();
        if (!seen.insert(at).second) {
          throw ParseError("duplicate case " + thing_to_text(at), cp.line, cp.column);
        }
        expect("{");
        g.cases.push_back(SignatureCase{at, entry_block(), cp});
      }
      return g;
    }
    if (kw == "reducedsig") {
      ReducedSigDef f{name, {}, HfSet(), pos};
      expect("{");
      std::set<HfSet> seen;
      while (!accept("}")) {
        Entry e;
        e.pos = peek().pos;
        bool fallback = accept_word("else");
        if (!fallback) {
          expect_word("at");
          e.key = thing();
          if (!seen.insert(e.key).second) {
            throw ParseError("duplicate case " + thing_to_text(e.key), e.pos.line, e.pos.column);
          }
        }
        expect(":");
        e.value = thing();
        if (fallback) {
          f.fallback = e.value;
        } else {
          f.cases.push_back(e);
        }
        if (!accept(";")) {
          expect("}");
          break;
        }
      }
      return f;
    }
    if (kw == "famofsets") {
      expect("{");
      return FamOfSetsDef{name, entry_block(), pos};
    }
    if (kw == "budget") {
      BudgetDef b{name, {}, {}, {}, pos};
      expect("{");
      while (!accept("}")) {
        SourcePos fp = peek().pos;
        std::string field = ident("depth, fuel or elements");
        std::optional<std::uint64_t>* slot = field == "depth"  ? &b.depth
                                             : field == "fuel" ? &b.fuel
                                             : field == "elements" ? &b.elements
                                                                   : nullptr;
        if (!slot) throw ParseError("unknown budget field '" + field + "'", fp.line, fp.column);
        *slot = number("a number");
        if (!accept(";")) {
          expect("}");
          break;
        }
      }
      return b;
    }
    throw ParseError("unknown definition keyword '" + kw + "'", pos.line, pos.column);
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

// Printing.

std::string expr_text(const Expr& e, const std::string& var) {
  switch (e.kind) {
    case Expr::Kind::number:
      return std::to_string(e.value);
    case Expr::Kind::input:
      return "m" + std::to_string(e.value);
    case Expr::Kind::index:
      return var;
    case Expr::Kind::add: {
      std::string r = expr_text(e.args[1], var);
      if (e.args[1].kind == Expr::Kind::add) r = "(" + r + ")";
      return expr_text(e.args[0], var) + "+" + r;
    }
    case Expr::Kind::mul: {
      auto operand = [&](const Expr& a, bool right) {
        std::string s = expr_text(a, var);
        bool wrap = a.kind == Expr::Kind::add || (right && a.kind == Expr::Kind::mul);
        return wrap ? "(" + s + ")" : s;
      };
      return operand(e.args[0], false) + "*" + operand(e.args[1], true);
    }
  }
  return "";
}

void print_rules(std::string& out, const std::vector<RuleDef>& rules, const std::string& indent) {
  for (const RuleDef& r : rules) {
    out += indent + "rule " + thing_to_text(r.index) + " arity " + thing_to_text(r.arity) + " => ";
    const FamilyDef& f = r.family;
    if (f.listed) {
      out += "[";
      for (std::size_t k = 0; k < f.items.size(); ++k) {
        if (k) out += ", ";
        out += expr_text(f.items[k], "");
      }
      out += "]";
    } else {
      out += "family " + f.var + " from " + expr_text(f.lo, "");
      if (f.hi) out += " to " + expr_text(*f.hi, "");
      out += " : " + expr_text(f.value, f.var);
    }
    out += ";\n";
  }
}

void print_entries(std::string& out, const std::vector<Entry>& entries, const std::string& indent) {
  for (const Entry& e : entries) {
    out += indent + thing_to_text(e.key) + ": " + thing_to_text(e.value) + ";\n";
  }
}

std::string max_text(const std::optional<std::uint64_t>& max) {
  return max ? " max " + std::to_string(*max) : "";
}

// Evaluation of desugared rules.

using Inputs = std::map<std::uint64_t, std::uint64_t>;

std::uint64_t eval(const Expr& e, const Inputs& in, std::uint64_t p) {
  std::uint64_t r = 0;
  switch (e.kind) {
    case Expr::Kind::number:
      return e.value;
    case Expr::Kind::input:
      return in.at(e.value);
    case Expr::Kind::index:
      return p;
    case Expr::Kind::add:
      if (__builtin_add_overflow(eval(e.args[0], in, p), eval(e.args[1], in, p), &r)) {
        throw DomainError("arithmetic overflow");
      }
      return r;
    case Expr::Kind::mul:
      if (__builtin_mul_overflow(eval(e.args[0], in, p), eval(e.args[1], in, p), &r)) {
        throw DomainError("arithmetic overflow");
      }
      return r;
  }
  return r;
}

ClassPredicate nat_class(std::optional<std::uint64_t> max) {
  return [max](HfSet x) {
    auto n = as_nat(x);
    return n && (!max || *n <= *max);
  };
}

Rule make_rule(const RuleDef& def, std::optional<std::uint64_t> max) {
  auto f = std::make_shared<const FamilyDef>(def.family);
  Rule rule;
  rule.arity = def.arity;
  rule.apply = [f, max](const Tuple& t) {
    Inputs in;
    for (const auto& [k, v] : t) {
      auto kn = as_nat(k);
      if (!kn) continue;
      auto vn = as_nat(v);
      if (!vn) return ResultFamily::none();
      in.emplace(*kn, *vn);
    }
    if (f->listed) {
      std::vector<HfSet> values;
      for (const Expr& e : f->items) values.push_back(von_neumann(eval(e, in, 0)));
      return ResultFamily::list(values);
    }
    std::uint64_t lo = eval(f->lo, in, 0);
    std::optional<std::uint64_t> hi;
    if (f->hi) hi = eval(*f->hi, in, 0);
    // values above the class bound are never accepted, so they are dropped
    // before a numeral is built
    auto keep = [f, in, max, lo, hi](std::uint64_t q) {
      return q >= lo && (!hi || q <= *hi) && (!max || eval(f->value, in, q) <= *max);
    };
    auto member = [keep](HfSet p) {
      auto q = as_nat(p);
      return q && keep(*q);
    };
    auto value = [f, in](HfSet p) { return von_neumann(eval(f->value, in, to_nat(p))); };
    std::function<std::vector<HfSet>()> enumerate;
    if (hi) {
      enumerate = [keep, lo, hi] {
        std::vector<HfSet> ps;
        if (*hi < lo) return ps;
        if (*hi - lo >= kMaxEnumerated) {
          throw BudgetError("result family has more than " + std::to_string(kMaxEnumerated) +
                            " indices");
        }
        for (std::uint64_t n = 0; n <= *hi - lo; ++n) {
          if (keep(lo + n)) ps.push_back(von_neumann(lo + n));
        }
        return ps;
      };
    }
    return ResultFamily::indexed(member, value, enumerate);
  };
  return rule;
}

Rubric make_rubric(const std::vector<RuleDef>& rules, std::optional<std::uint64_t> max) {
  Rubric r;
  r.in_class = nat_class(max);
  for (const RuleDef& d : rules) r.rules.emplace(d.index, make_rule(d, max));
  return r;
}

Signature make_signature(const std::vector<Entry>& entries) {
  Signature s;
  for (const Entry& e : entries) s.arities.emplace(e.key, e.value);
  return s;
}

template <class T>
const T& expect_kind(const Definition& d, const char* wanted) {
  if (auto p = std::get_if<T>(&d)) return *p;
  throw DomainError(std::string(definition_name(d)) + " is a " +
                    std::string(definition_kind(d)) + ", not a " + wanted);
}

constexpr std::string_view kPrelude = R"(# Symbols 5 (4-ary), 6 and 7 (nullary), 8 (ternary).
signature S { 5: {0,1,2,3}; 6: {}; 7: {}; 8: {0,1,2} }

rubric R {
  rule 0 arity {0,1} => family p from 2*m0 : m0+m1+p;
  rule 1 arity {} => family p from 50 : 2*p;
}

# R with two indices per family and the class {n | n <= 500}.
rubric Rt max 500 {
  rule 0 arity {0,1} => family p from 2*m0 to 2*m0+1 : m0+m1+p;
  rule 1 arity {} => family p from 50 to 51 : 2*p;
}

broadrubric B {
  basic {
    rule 0 arity {0,1} => family p from 2*m0 : m0+m1+p;
    rule 1 arity {} => family p from 50 : 2*p;
  }
  on 7 {
    rule 0 arity {0,1} => family p from 9 : m0+m1+500*p;
  }
  on 100 {
    rule 0 arity {0,1,2} => family p from 17 : m0+m1*m2+p;
    rule 1 arity {} => family p from 1000 : p;
    rule 2 arity {0,1} => family p from 4 : m1+p;
  }
}

# B with two indices per family and the class {n | n <= 2000}.
broadrubric Bt max 2000 {
  basic {
    rule 0 arity {0,1} => family p from 2*m0 to 2*m0+1 : m0+m1+p;
    rule 1 arity {} => family p from 50 to 51 : 2*p;
  }
  on 7 {
    rule 0 arity {0,1} => family p from 9 to 10 : m0+m1+500*p;
  }
  on 100 {
    rule 0 arity {0,1,2} => family p from 17 to 18 : m0+m1*m2+p;
    rule 1 arity {} => family p from 1000 to 1001 : p;
    rule 2 arity {0,1} => family p from 4 to 5 : m1+p;
  }
}

broadsig G {
  at Build(Start,6,[]) { 7: {0,1}; 8: {0,1}; 9: {} }
  else { 4: {0,1}; 5: {}; 6: {} }
}

reducedsig F {
  at Make(Begin,[]): {0,1};
}

famofsets E { }
famofsets T { 0: {2}; 1: {} }

budget small { depth 2; elements 100000; }
)";

}  // namespace

std::string_view definition_name(const Definition& d) {
  return std::visit([](const auto& x) -> std::string_view { return x.name; }, d);
}

std::string_view definition_kind(const Definition& d) {
  static constexpr std::string_view kinds[] = {"signature",  "rubric",    "broadrubric", "broadsig",
                                               "reducedsig", "famofsets", "budget"};
  return kinds[d.index()];
}

const Definition* Document::find(std::string_view name) const {
  for (const Definition& d : defs) {
    if (definition_name(d) == name) return &d;
  }
  return nullptr;
}

Document parse_document(std::string_view text) {
  Parser p(text);
  Document doc;
  while (!p.at_end()) {
    SourcePos pos = p.peek().pos;
    Definition d = p.definition();
    if (doc.find(definition_name(d))) {
      throw ParseError("duplicate name '" + std::string(definition_name(d)) + "'", pos.line,
                       pos.column);
    }
    doc.defs.push_back(std::move(d));
  }
  return doc;
}

std::string pretty(const Document& doc) {
  std::string out;
  for (const Definition& d : doc.defs) {
    if (!out.empty()) out += "\n";
    std::string head = std::string(definition_kind(d)) + " " + std::string(definition_name(d));
    if (auto s = std::get_if<SignatureDef>(&d)) {
      out += head + " {\n";
      print_entries(out, s->entries, "  ");
    } else if (auto r = std::get_if<RubricDef>(&d)) {
      out += head + max_text(r->max) + " {\n";
      print_rules(out, r->rules, "  ");
    } else if (auto b = std::get_if<BroadRubricDef>(&d)) {
      out += head + max_text(b->max) + " {\n  basic {\n";
      print_rules(out, b->basic, "    ");
      out += "  }\n";
      for (const TriggerDef& t : b->triggers) {
        out += "  on " + thing_to_text(t.on) + " {\n";
        print_rules(out, t.rules, "    ");
        out += "  }\n";
      }
    } else if (auto g = std::get_if<BroadSigDef>(&d)) {
      out += head + " {\n";
      for (const SignatureCase& c : g->cases) {
        out += "  at " + broad_to_text(c.at) + " {\n";
        print_entries(out, c.entries, "    ");
        out += "  }\n";
      }
      if (!g->fallback.empty()) {
        out += "  else {\n";
        print_entries(out, g->fallback, "    ");
        out += "  }\n";
      }
    } else if (auto f = std::get_if<ReducedSigDef>(&d)) {
      out += head + " {\n";
      for (const Entry& e : f->cases) {
        out += "  at " + reduced_to_text(e.key) + ": " + thing_to_text(e.value) + ";\n";
      }
      if (!f->fallback.empty()) out += "  else: " + thing_to_text(f->fallback) + ";\n";
    } else if (auto s = std::get_if<FamOfSetsDef>(&d)) {
      out += head + " {\n";
      print_entries(out, s->entries, "  ");
    } else if (auto bd = std::get_if<BudgetDef>(&d)) {
      out += head + " {\n";
      if (bd->depth) out += "  depth " + std::to_string(*bd->depth) + ";\n";
      if (bd->fuel) out += "  fuel " + std::to_string(*bd->fuel) + ";\n";
      if (bd->elements) out += "  elements " + std::to_string(*bd->elements) + ";\n";
    }
    out += "}\n";
  }
  return out;
}

Signature to_signature(const Definition& d) {
  return make_signature(expect_kind<SignatureDef>(d, "signature").entries);
}

Rubric to_rubric(const Definition& d) {
  const auto& r = expect_kind<RubricDef>(d, "rubric");
  return make_rubric(r.rules, r.max);
}

BroadRubric to_broad_rubric(const Definition& d) {
  const auto& b = expect_kind<BroadRubricDef>(d, "broadrubric");
  std::map<HfSet, Rubric> table;
  for (const TriggerDef& t : b.triggers) table.emplace(t.on, make_rubric(t.rules, b.max));
  return BroadRubric::from_table(make_rubric(b.basic, b.max), std::move(table), nat_class(b.max));
}

BroadSignature to_broad_signature(const Definition& d) {
  const auto& g = expect_kind<BroadSigDef>(d, "broadsig");
  BroadSignature out;
  for (const SignatureCase& c : g.cases) out.table.emplace(c.at, make_signature(c.entries));
  out.fallback = make_signature(g.fallback);
  return out;
}

ReducedBroadSignature to_reduced_signature(const Definition& d) {
  const auto& f = expect_kind<ReducedSigDef>(d, "reducedsig");
  ReducedBroadSignature out;
  for (const Entry& e : f.cases) out.table.emplace(e.key, e.value);
  out.fallback = f.fallback;
  return out;
}

std::map<HfSet, HfSet> to_family_of_sets(const Definition& d) {
  std::map<HfSet, HfSet> out;
  for (const Entry& e : expect_kind<FamOfSetsDef>(d, "famofsets").entries) {
    out.emplace(e.key, e.value);
  }
  return out;
}

Budget apply_budget(const Definition& d, Budget b) {
  const auto& bd = expect_kind<BudgetDef>(d, "budget");
  if (bd.depth) b.depth = *bd.depth;
  if (bd.fuel) b.fuel = *bd.fuel;
  if (bd.elements) b.max_elements = *bd.elements;
  return b;
}

std::string_view prelude_text() { return kPrelude; }

const Document& prelude() {
  static const Document doc = parse_document(kPrelude);
  return doc;
}

HfSet parse_thing(std::string_view text) {
  Parser p(text);
  HfSet x = p.thing();
  p.finish();
  return x;
}

HfSet parse_term(std::string_view text) {
  Parser p(text);
  HfSet t = p.term();
  p.finish();
  return t;
}

ParsedDerivation parse_derivation(std::string_view text) {
  Parser p(text);
  std::optional<DerivationKind> kind;
  HfSet d = p.derivation(kind);
  p.finish();
  return {d, *kind};
}

std::string derivation_to_text(HfSet d, DerivationKind kind) {
  auto fail = [&]() -> std::string {
    throw DomainError("not a derivation: " + thing_to_text(d));
  };
  auto tuple_text = [&](HfSet g) {
    auto t = decode_tuple(g);
    if (!t) fail();
    std::string out = "[";
    bool first = true;
    for (const auto& [k, sub] : *t) {
      if (!first) out += ",";
      first = false;
      out += thing_to_text(k) + "->" + derivation_to_text(sub, kind);
    }
    return out + "]";
  };
  if (kind == DerivationKind::plain) {
    auto parts = untuple(d, 3);
    if (!parts) fail();
    return "(" + thing_to_text((*parts)[0]) + " " + tuple_text((*parts)[1]) + " " +
           thing_to_text((*parts)[2]) + ")";
  }
  bool pseudo = kind == DerivationKind::pseudo;
  Decoded dec = classify(d, pseudo ? Group::pseudo : Group::derivation);
  if (dec.opaque()) fail();
  bool is_basic = dec.tag == Tag::basic || dec.tag == Tag::basic_p;
  std::size_t off = is_basic ? 0 : 1;
  std::string out = "(";
  out += is_basic ? (pseudo ? "basicp " : "basic ") : (pseudo ? "triggerp " : "trigger ");
  if (!is_basic) out += derivation_to_text(dec.args[0], kind) + " ";
  return out + thing_to_text(dec.args[off]) + " " + tuple_text(dec.args[off + 1]) + " " +
         thing_to_text(dec.args[off + 2]) + ")";
}

}  // namespace broadgen::dsl
