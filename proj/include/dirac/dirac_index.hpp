#pragma once

#include <functional>
#include <vector>

#include "dirac/characters.hpp"
#include "dirac/root_datum.hpp"
#include "dirac/spin.hpp"

namespace dirac {

enum class ParamKind { DiscreteSeries, Limit };

// Harish-Chandra parameter (chi, b) of a (limit of) discrete series:
// chi is dominant for the chamber, regular when kind == DiscreteSeries,
// and never orthogonal to a compact root.
struct HCParameter {
  Weight chi;             // on the Ktilde lattice
  std::size_t chamber = 0;
  ParamKind kind = ParamKind::DiscreteSeries;
};

void validate_parameter(const RootDatum& datum, const HCParameter& p);

// Virtual Ktilde-character H+ - H-.
struct DiracIndex {
  VirtualCharacter index;  // always on Ktilde
};

// Multiplicity oracle for the K-types of an admissible module, with a declared
// finite support bound: every K-type highest weight w of the module satisfies
// norm_dd(w) <= support_norm_dd.  Queries beyond the bound are never issued.
struct KTypeProvider {
  std::function<std::int64_t(const Coords&)> multiplicity;
  std::int64_t support_norm_dd = -1;
};

// sgn(w) F_{chi - rho_c} for the module attached to (chi, b); w maps the
// reference chamber to the W_k-normalized position of b.
DiracIndex dirac_index_limits(const RootDatum& datum, const HCParameter& p);

// Index of the finite-dimensional module with the given g-highest weight
// (dominant for the reference chamber), via restriction and spinor tensoring.
DiracIndex dirac_index_finite_dim(const RootDatum& datum, const Weight& g_highest_weight);

// Candidate Ktilde-types {tau dominant : w Lambda = tau + rho_c for some w in W}.
// With norm_filter = true, instead returns the larger shell
// {tau dominant, valid : |tau + rho_c| = |Lambda|, same parity class}.
std::vector<Coords> dirac_candidates(const RootDatum& datum, const Weight& lambda,
                                     bool norm_filter = false);

DiracIndex dirac_index_admissible(const RootDatum& datum, const KTypeProvider& provider,
                                  const Weight& lambda);

struct DiracPairingResult {
  std::int64_t value = 0;
  // per-irreducible summands (gamma, [gamma, I(X)], [gamma, I(Y)])
  std::vector<std::tuple<Coords, std::int64_t, std::int64_t>> summands;
};

DiracPairingResult dirac_pairing(const DiracIndex& a, const DiracIndex& b);

// Exact alternating sum  sum_i (-1)^i dim Hom_K(wedge^i p x X, Y)  for
// finite-dimensional g-modules.
std::int64_t ep_pairing_finite_dim(const RootDatum& datum, const Weight& hw_x,
                                   const Weight& hw_y);

// Restriction to K of the finite-dimensional g-module with the given highest
// weight, as a virtual character on the Ktilde lattice.
VirtualCharacter restrict_finite_dim(const RootDatum& datum, const Weight& g_highest_weight);

}  // namespace dirac
