#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "broadgen/encodings.hpp"
#include "broadgen/signature.hpp"

namespace broadgen {

// A term is the pair <i, [a_k]>.
HfSet make_term(HfSet symbol, const Tuple& args);
std::optional<std::pair<HfSet, Tuple>> split_term(HfSet t);
bool is_term(const Signature& s, HfSet t);
std::size_t term_height(HfSet t);  // leaves have height 1

// Terms of height <= depth. Throws BudgetError past max_elements.
ThingSet generate_terms(const Signature& s, std::size_t depth,
                        std::size_t max_elements = 5'000'000);

// A branch is a finite sequence of positions from the root.
using Branch = std::vector<HfSet>;

std::vector<Branch> branches(HfSet t);
// Symbol at the end of the branch; DomainError if the branch leaves the term.
HfSet branch_result(HfSet t, const Branch& b);
bool is_branch(HfSet t, const Branch& b);
// Same realizable branches with the same results.
bool equal_by_branches(HfSet s, HfSet t);

// Readable form i(k0->t0, k1->t1, ...); nullary terms print as i().
std::string term_to_text(HfSet t);
std::string thing_to_text(HfSet x);  // decimal for numerals, braces otherwise

}  // namespace broadgen
