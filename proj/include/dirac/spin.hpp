#pragma once

#include "dirac/characters.hpp"
#include "dirac/root_datum.hpp"

namespace dirac {

// The half-spin characters S+ / S- attached to the isotropic subspace spanned
// by the noncompact positive roots of the reference chamber.  S+ contains the
// weight -rho_n(b1).
struct SpinorPair {
  VirtualCharacter s_plus;   // Ktilde
  VirtualCharacter s_minus;  // Ktilde
  std::size_t reference_chamber = 0;
};

SpinorPair spinor_modules(const RootDatum& datum, std::size_t reference_chamber = 0);

// Weights of S+/S- as Laurent elements (subset sums shifted by -rho_n).
LaurentElement spinor_laurent(const RootDatum& datum, std::size_t chamber, bool even_part);

// Per-degree exterior power characters of p as Laurent elements on K.
std::vector<LaurentElement> wedge_p_powers(const RootDatum& datum);

// Alternating sum  sum_i (-1)^i [wedge^i p]  (even minus odd).  Also verifies
// the half-spin factorization (S+ - S-)* x (S+ - S-) termwise and throws
// IdentityFailed on mismatch.
VirtualCharacter wedge_p_alternating(const RootDatum& datum);

}  // namespace dirac
