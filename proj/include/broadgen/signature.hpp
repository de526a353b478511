#pragma once

#include <map>

#include "broadgen/hfset.hpp"

namespace broadgen {

// Symbol -> arity (a finite set of positions).
struct Signature {
  std::map<HfSet, HfSet> arities;

  HfSet encode() const;  // as the tuple i -> K_i
  static Signature decode(HfSet s);  // DomainError if s is not a tuple
  bool empty() const { return arities.empty(); }
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Sends each set to a signature: an explicit table plus a fallback for
// everything else (empty unless set).
struct BroadSignature {
  std::map<HfSet, Signature> table;
  Signature fallback;

  const Signature& at(HfSet x) const;
  friend bool operator==(const BroadSignature&, const BroadSignature&) = default;
};

// Sends each set to an arity.
struct ReducedBroadSignature {
  std::map<HfSet, HfSet> table;
  HfSet fallback;

  HfSet at(HfSet x) const;
  friend bool operator==(const ReducedBroadSignature&, const ReducedBroadSignature&) = default;
};

}  // namespace broadgen
