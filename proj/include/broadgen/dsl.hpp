#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "broadgen/budget.hpp"
#include "broadgen/error.hpp"
#include "broadgen/genengine.hpp"
#include "broadgen/signature.hpp"

// Surface syntax for signatures, rubrics and the other engine inputs. The
// grammar is in README.md; naturals in things are von Neumann numerals.
namespace broadgen::dsl {

// A name used but never bound, e.g. an index variable that was not declared.
class UnresolvedName : public ParseError {
 public:
  using ParseError::ParseError;
};

// A rule reads an input position outside its arity.
class ArityMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

// Positions are metadata: two ASTs that differ only in layout compare equal.
struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

// Integer expression over the rule inputs m0, m1, ... and the index variable.
struct Expr {
  enum class Kind { number, input, index, add, mul };
  Kind kind = Kind::number;
  std::uint64_t value = 0;  // literal, or the input position
  std::vector<Expr> args;   // add / mul operands
  SourcePos pos;
  bool operator==(const Expr&) const = default;
};

// "[e0, e1, ...]" indexed by 0..n-1, or "family p from lo [to hi] : e".
struct FamilyDef {
  bool listed = false;
  std::vector<Expr> items;
  std::string var;
  Expr lo;
  std::optional<Expr> hi;
  Expr value;
  bool operator==(const FamilyDef&) const = default;
};

struct RuleDef {
  HfSet index;
  HfSet arity;
  FamilyDef family;
  SourcePos pos;
  bool operator==(const RuleDef&) const = default;
};

struct Entry {
  HfSet key;
  HfSet value;
  SourcePos pos;
  bool operator==(const Entry&) const = default;
};

struct SignatureDef {
  std::string name;
  std::vector<Entry> entries;  // symbol -> arity
  SourcePos pos;
  bool operator==(const SignatureDef&) const = default;
};

struct RubricDef {
  std::string name;
  std::optional<std::uint64_t> max;  // class {n | n <= max}; naturals otherwise
  std::vector<RuleDef> rules;
  SourcePos pos;
  bool operator==(const RubricDef&) const = default;
};

struct TriggerDef {
  HfSet on;
  std::vector<RuleDef> rules;
  SourcePos pos;
  bool operator==(const TriggerDef&) const = default;
};

struct BroadRubricDef {
  std::string name;
  std::optional<std::uint64_t> max;
  std::vector<RuleDef> basic;
  std::vector<TriggerDef> triggers;
  SourcePos pos;
  bool operator==(const BroadRubricDef&) const = default;
};

struct SignatureCase {
  HfSet at;
  std::vector<Entry> entries;
  SourcePos pos;
  bool operator==(const SignatureCase&) const = default;
};

struct BroadSigDef {
  std::string name;
  std::vector<SignatureCase> cases;
  std::vector<Entry> fallback;  // "else", omitted when empty
  SourcePos pos;
  bool operator==(const BroadSigDef&) const = default;
};

struct ReducedSigDef {
  std::string name;
  std::vector<Entry> cases;  // broad number -> arity
  HfSet fallback;
  SourcePos pos;
  bool operator==(const ReducedSigDef&) const = default;
};

struct FamOfSetsDef {
  std::string name;
  std::vector<Entry> entries;
  SourcePos pos;
  bool operator==(const FamOfSetsDef&) const = default;
};

struct BudgetDef {
  std::string name;
  std::optional<std::uint64_t> depth;
  std::optional<std::uint64_t> fuel;
  std::optional<std::uint64_t> elements;
  SourcePos pos;
  bool operator==(const BudgetDef&) const = default;
};

using Definition = std::variant<SignatureDef, RubricDef, BroadRubricDef, BroadSigDef,
                                ReducedSigDef, FamOfSetsDef, BudgetDef>;

std::string_view definition_name(const Definition& d);
std::string_view definition_kind(const Definition& d);  // the keyword

struct Document {
  std::vector<Definition> defs;

  const Definition* find(std::string_view name) const;
  bool operator==(const Document&) const = default;
};

// ParseError (syntax, duplicate names or keys), UnresolvedName or
// ArityMismatch, each with line and column.
Document parse_document(std::string_view text);
std::string pretty(const Document& doc);

// Desugaring. DomainError when the definition is missing or of another kind.
Signature to_signature(const Definition& d);
Rubric to_rubric(const Definition& d);
BroadRubric to_broad_rubric(const Definition& d);
BroadSignature to_broad_signature(const Definition& d);
ReducedBroadSignature to_reduced_signature(const Definition& d);
std::map<HfSet, HfSet> to_family_of_sets(const Definition& d);
// Fills in the fields the definition sets.
Budget apply_budget(const Definition& d, Budget b);

// The worked examples: S, R, Rt, B, Bt, G, F, E, T and budget "small".
std::string_view prelude_text();
const Document& prelude();

// Standalone syntax for command-line arguments.
//   thing ::= nat | '{' things '}' | '<' thing ',' thing '>' | tuple
//           | 'Start' | 'Begin' | 'StartP' | 'Build' '(' thing ',' thing ',' tuple ')'
//           | 'Make' '(' thing ',' tuple ')' | 'inl' '(' thing ')' | 'inr' '(' thing ')'
//   tuple ::= '[' (thing '->' thing (',' ...)*)? ']'
//   term  ::= thing '(' (thing '->' term (',' ...)*)? ')'
//   deriv ::= '(' thing dtuple thing ')'
//           | '(' ('basic' | 'basicp') thing dtuple thing ')'
//           | '(' ('trigger' | 'triggerp') deriv thing dtuple thing ')'
HfSet parse_thing(std::string_view text);
HfSet parse_term(std::string_view text);

enum class DerivationKind { plain, broad, pseudo };

struct ParsedDerivation {
  HfSet value;
  DerivationKind kind;
};

// ParseError when kinds are mixed within one derivation.
ParsedDerivation parse_derivation(std::string_view text);
// DomainError if d is not a derivation of that kind.
std::string derivation_to_text(HfSet d, DerivationKind kind);

}  // namespace broadgen::dsl
