#pragma once

#include <cstdint>
#include <map>

#include "dirac/root_datum.hpp"
#include "dirac/weight.hpp"

namespace dirac {

// Element of the group ring of the weight lattice: finite integer combination
// of formal exponentials e^w.  Canonically ordered, no zero coefficients.
struct LaurentElement {
  std::map<Coords, std::int64_t> terms;
  Lattice lattice = Lattice::K;

  void add_term(const Coords& w, std::int64_t c) {
    if (c == 0) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty(); }

  friend bool operator==(const LaurentElement& a, const LaurentElement& b) {
    return a.lattice == b.lattice && a.terms == b.terms;
  }
};

LaurentElement laurent_add(const LaurentElement& a, const LaurentElement& b);
LaurentElement laurent_scale(std::int64_t c, const LaurentElement& a);
LaurentElement laurent_negate_weights(const LaurentElement& a);
LaurentElement laurent_apply(const WeylGroupElement& w, const LaurentElement& a);
LaurentElement laurent_product(const RootDatum& datum, const LaurentElement& a,
                               const LaurentElement& b);

// Finite integer combination of irreducible characters, keyed by dominant
// highest weight for the fixed R_k^+.
struct VirtualCharacter {
  std::map<Coords, std::int64_t> terms;
  Lattice lattice = Lattice::K;

  void add_term(const Coords& w, std::int64_t c) {
    if (c == 0) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty(); }

  friend bool operator==(const VirtualCharacter& a, const VirtualCharacter& b) {
    return a.lattice == b.lattice && a.terms == b.terms;
  }
};

// Full weight-multiplicity expansion (Freudenthal) of the irreducible with
// highest weight hw, for an arbitrary sub-root-system given by its positive
// roots.  hw must be dominant for that system.
LaurentElement weight_expansion(const RootDatum& datum, const std::vector<Coords>& positives,
                                const Weight& hw);

// Irreducible character of K / K-tilde for the fixed R_k^+.
LaurentElement irr_character(const RootDatum& datum, const Weight& hw);

// Dimension of the irreducible with highest weight hw (Weyl dimension formula
// over R_k^+).
Int irr_dimension(const RootDatum& datum, const Coords& hw);
Int dimension(const RootDatum& datum, const VirtualCharacter& a);

// Inverse of character expansion: alternating dominant-translation
// (Brauer-Klimyk / Racah-Speiser); wall hits contribute zero.  Input must be
// W_k-invariant.
VirtualCharacter decompose(const RootDatum& datum, const LaurentElement& f);

LaurentElement expand(const RootDatum& datum, const VirtualCharacter& a);

std::int64_t pairing(const VirtualCharacter& a, const VirtualCharacter& b);

VirtualCharacter tensor(const RootDatum& datum, const VirtualCharacter& a,
                        const VirtualCharacter& b);
VirtualCharacter dual(const RootDatum& datum, const VirtualCharacter& a);

// Retag an element of R(K) as an element of R(Ktilde) (R(K) embeds).
VirtualCharacter as_ktilde(const VirtualCharacter& a);

// Cover combination rule for products: K x K -> K; a product of two genuine
// Ktilde classes lands back on K; any other mix stays on Ktilde.
Lattice combine_covers(const RootDatum& datum, const LaurentElement& a, const LaurentElement& b);

}  // namespace dirac
