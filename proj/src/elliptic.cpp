#include "dirac/elliptic.hpp"

namespace dirac {

CharacterNumerator ds_numerator(const RootDatum& datum, const HCParameter& p) {
  validate_parameter(datum, p);
  CharacterNumerator cn;
  cn.parameter = p;
  cn.num.lattice = Lattice::Ktilde;
  const auto& wk = datum.weyl(WhichWeyl::Compact);
  for (const auto& s : wk) cn.num.add_term(s.apply(p.chi.coords), s.sign);
  // chi is W_k-regular (no compact wall), so the orbit is free
  require(cn.num.terms.size() == wk.size(), Errc::SingularOnCompactWall,
          "parameter collapses under W_k");
  for (const auto& s : wk)
    require(laurent_apply(s, cn.num) == laurent_scale(s.sign, cn.num), Errc::IdentityFailed,
            "numerator is not W_k-alternating");
  cn.global_sign = datum.chamber_map(p.chamber).sign;
  return cn;
}

EllipticPairingValue elliptic_pairing(const RootDatum& datum, const CharacterNumerator& a,
                                      const CharacterNumerator& b) {
  require(a.num.lattice == b.num.lattice, Errc::LatticeMismatch,
          "numerators on different lattices");
  std::int64_t dot = 0;
  for (const auto& [w, c] : a.num.terms) {
    auto it = b.num.terms.find(w);
    if (it != b.num.terms.end()) dot += c * it->second;
  }
  std::int64_t wk = static_cast<std::int64_t>(datum.weyl(WhichWeyl::Compact).size());
  EllipticPairingValue v;
  v.value = Rat(a.global_sign * b.global_sign * dot, wk);
  require(is_integer(v.value), Errc::IdentityFailed,
          "elliptic pairing of discrete-series parameters must be an integer");
  return v;
}

DiracVsEllipticReport verify_dirac_equals_elliptic(const RootDatum& datum,
                                                   const std::vector<HCParameter>& params) {
  DiracVsEllipticReport rep;
  rep.params = params;
  std::size_t n = params.size();
  std::vector<DiracIndex> indices;
  std::vector<CharacterNumerator> numerators;
  for (const auto& p : params) {
    indices.push_back(dirac_index_limits(datum, p));
    numerators.push_back(ds_numerator(datum, p));
  }
  rep.gram_dirac.assign(n, std::vector<std::int64_t>(n, 0));
  rep.gram_elliptic.assign(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      rep.gram_dirac[i][j] = dirac_pairing(indices[i], indices[j]).value;
      rep.gram_elliptic[i][j] = elliptic_pairing(datum, numerators[i], numerators[j]).value;
      if (Rat(rep.gram_dirac[i][j]) != rep.gram_elliptic[i][j]) {
        rep.equal = false;
        rep.mismatches.emplace_back(i, j);
      }
    }
  return rep;
}

}  // namespace dirac
