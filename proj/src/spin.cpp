#include "dirac/spin.hpp"

#include <algorithm>
#include <bit>

namespace dirac {

LaurentElement spinor_laurent(const RootDatum& datum, std::size_t chamber, bool even_part) {
  auto positives = datum.noncompact_positive_roots(chamber);
  Coords rho_n = datum.rho_n_dd(chamber);
  std::size_t m = positives.size();
  LaurentElement out;
  out.lattice = Lattice::Ktilde;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    bool even = (std::popcount(mask) % 2 == 0);
    if (even != even_part) continue;
    Coords w = -rho_n;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t{1} << i)) w = w + positives[i];
    out.add_term(w, 1);
  }
  return out;
}

SpinorPair spinor_modules(const RootDatum& datum, std::size_t reference_chamber) {
  require(datum.dim_p() % 2 == 0, Errc::OddNoncompactDimension, "dim p must be even");
  SpinorPair sp;
  sp.reference_chamber = reference_chamber;
  sp.s_plus = decompose(datum, spinor_laurent(datum, reference_chamber, true));
  sp.s_minus = decompose(datum, spinor_laurent(datum, reference_chamber, false));
  return sp;
}

std::vector<LaurentElement> wedge_p_powers(const RootDatum& datum) {
  std::vector<Coords> ncroots;
  for (std::size_t i = 0; i < datum.roots().size(); ++i)
    if (!datum.is_compact_root(static_cast<int>(i))) ncroots.push_back(datum.roots()[i]);

  std::vector<LaurentElement> powers(ncroots.size() + 1);
  for (auto& p : powers) p.lattice = Lattice::K;
  powers[0].add_term(Coords(datum.rank(), 0), 1);
  // elementary symmetric recurrence over the multiset of p-weights
  for (std::size_t k = 0; k < ncroots.size(); ++k)
    for (std::size_t i = std::min(k + 1, powers.size() - 1); i >= 1; --i) {
      for (const auto& [w, c] : powers[i - 1].terms) powers[i].add_term(w + ncroots[k], c);
      if (i == 1) break;
    }
  return powers;
}

VirtualCharacter wedge_p_alternating(const RootDatum& datum) {
  auto powers = wedge_p_powers(datum);
  LaurentElement alt;
  alt.lattice = Lattice::K;
  for (std::size_t i = 0; i < powers.size(); ++i)
    alt = laurent_add(alt, laurent_scale(i % 2 == 0 ? 1 : -1, powers[i]));
  VirtualCharacter lhs = decompose(datum, alt);

  SpinorPair sp = spinor_modules(datum);
  VirtualCharacter diff = sp.s_plus;
  for (const auto& [w, c] : sp.s_minus.terms) diff.add_term(w, -c);
  VirtualCharacter rhs = tensor(datum, dual(datum, diff), diff);
  require(lhs.terms == rhs.terms, Errc::IdentityFailed,
          "wedge-p alternating sum does not match the half-spin factorization");
  return lhs;
}

}  // namespace dirac
