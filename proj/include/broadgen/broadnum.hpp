#pragma once

#include <string>

#include "broadgen/budget.hpp"
#include "broadgen/genengine.hpp"
#include "broadgen/ordinal.hpp"
#include "broadgen/signature.hpp"

namespace broadgen {

// Depth d is the Gamma stage X_{d+1}: depth 0 yields {Start} (resp. {Begin}).
// BudgetError past budget.max_elements elements or budget.fuel constructions.
GenerationResult generate_broad(const BroadSignature& g, const Budget& budget);
GenerationResult generate_reduced(const ReducedBroadSignature& f, const Budget& budget);

bool is_broad_number(const BroadSignature& g, HfSet w);
bool is_reduced_broad_number(const ReducedBroadSignature& f, HfSet w);

// r(Start) = 0, r(Build(x, i, [a_k])) = ssup({r x} u {r a_k}).
// DomainError unless w is a G-broad number.
Ordinal broad_rank(const BroadSignature& g, HfSet w);

enum class Direction { forward, backward };

// forward: StartP -> Start, Bu2(w, S, i, f) -> Build(tw, i, t o f); g is unused.
// backward: Start -> StartP, Build(x, i, a) -> Bu2(t'x, G(x), i, t' o a).
// DomainError when x is outside the expected fragment.
HfSet theta_reduce(Direction dir, HfSet x, const BroadSignature& g);

// forward: BasicP -> Basic, TriggerP -> Trigger, recursively through the
// triggering derivation and the tuple g. backward is the inverse.
HfSet theta_derivs(Direction dir, HfSet d);

// The Bu2-built fragment U for g: StartP, and Bu2(u, G(tu), i, a) for u and
// the a_k already present. Same depth convention as generate_broad.
GenerationResult generate_reduced_image(const BroadSignature& g, const Budget& budget);

// The reduced broad signature sending Make(u, []) to I + sum_i K_i, where
// G(tu) = (K_i), for each u in the fragment, and everything else to {}.
ReducedBroadSignature reduced_signature_for(const BroadSignature& g, const ThingSet& fragment);

// "Build(Build(Start,6,[]),8,[0->Start,1->Build(Start,5,[])])". Sets that do
// not decompose print as thing text.
std::string broad_to_text(HfSet w);
// "Make(Make(Begin,[]),[0->Begin])".
std::string reduced_to_text(HfSet w);

}  // namespace broadgen
