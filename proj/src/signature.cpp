#include "broadgen/signature.hpp"

#include "broadgen/encodings.hpp"
#include "broadgen/error.hpp"

namespace broadgen {

HfSet Signature::encode() const {
  Tuple t(arities.begin(), arities.end());
  return encode_tuple(t);
}

Signature Signature::decode(HfSet s) {
  auto t = decode_tuple(s);
  if (!t) throw DomainError("not an encoded signature");
  Signature sig;
  sig.arities.insert(t->begin(), t->end());
  return sig;
}

const Signature& BroadSignature::at(HfSet x) const {
  auto it = table.find(x);
  return it == table.end() ? fallback : it->second;
}

HfSet ReducedBroadSignature::at(HfSet x) const {
  auto it = table.find(x);
  return it == table.end() ? fallback : it->second;
}

}  // namespace broadgen
