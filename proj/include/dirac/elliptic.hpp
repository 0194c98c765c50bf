#pragma once

#include "dirac/dirac_index.hpp"

namespace dirac {

// Numerator of the Harish-Chandra character of a (limit of) discrete series
// on the compact torus: the W_k-alternating exponential sum attached to chi,
// with the chamber sign measured from b1.
struct CharacterNumerator {
  LaurentElement num;  // Ktilde
  int global_sign = 1;
  HCParameter parameter;
};

CharacterNumerator ds_numerator(const RootDatum& datum, const HCParameter& p);

struct EllipticPairingValue {
  Rat value;
};

// (eps_a eps_b / |W_k|) x (coefficient dot product of the numerators); exact,
// and an integer for the parameters this module constructs.
EllipticPairingValue elliptic_pairing(const RootDatum& datum, const CharacterNumerator& a,
                                      const CharacterNumerator& b);

struct DiracVsEllipticReport {
  std::vector<HCParameter> params;
  std::vector<std::vector<std::int64_t>> gram_dirac;
  std::vector<std::vector<Rat>> gram_elliptic;
  bool equal = true;
  std::vector<std::pair<std::size_t, std::size_t>> mismatches;
};

// Full Gram matrices on both sides; disagreements are report content.
DiracVsEllipticReport verify_dirac_equals_elliptic(const RootDatum& datum,
                                                   const std::vector<HCParameter>& params);

}  // namespace dirac
