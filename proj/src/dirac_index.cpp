#include "dirac/dirac_index.hpp"

#include <algorithm>
#include <set>

namespace dirac {

void validate_parameter(const RootDatum& datum, const HCParameter& p) {
  require(p.chi.lattice == Lattice::Ktilde, Errc::InvalidParameter,
          "parameter must live on the Ktilde lattice");
  require(datum.valid_weight(p.chi), Errc::InvalidParameter,
          "chi " + coords_to_string(p.chi.coords) + " is not a lattice weight");
  require(p.chamber < datum.chambers().size(), Errc::InvalidParameter, "chamber out of range");
  bool regular = true;
  for (const auto& a : datum.positive_roots(p.chamber)) {
    std::int64_t v = datum.ip_dd(p.chi.coords, a);
    require(v >= 0, Errc::InvalidParameter,
            "chi not dominant for its chamber against " + coords_to_string(a));
    if (v == 0) regular = false;
  }
  if (p.kind == ParamKind::DiscreteSeries)
    require(regular, Errc::InvalidParameter, "discrete series parameter must be regular");
  // a limit parameter may sit on noncompact walls only
  for (std::size_t i = 0; i < datum.roots().size(); ++i)
    if (datum.is_compact_root(static_cast<int>(i)))
      require(datum.ip_dd(p.chi.coords, datum.roots()[i]) != 0, Errc::SingularOnCompactWall,
              "chi orthogonal to the compact root " + coords_to_string(datum.roots()[i]));
}

namespace {

// The unique s in W_k whose image of the parameter's chamber has compact part
// equal to the fixed R_k^+.
std::pair<std::size_t, const WeylGroupElement*> k_normalize_chamber(const RootDatum& datum,
                                                                    std::size_t chamber) {
  auto rk = datum.compact_positive_roots();
  std::sort(rk.begin(), rk.end());
  for (const auto& s : datum.weyl(WhichWeyl::Compact)) {
    std::size_t img = datum.image_chamber(s, chamber);
    auto part = datum.compact_positive_roots_of(img);
    std::sort(part.begin(), part.end());
    if (part == rk) return {img, &s};
  }
  fail(Errc::InvalidParameter, "no W_k-normalized chamber found");
}

VirtualCharacter subtract(const VirtualCharacter& a, const VirtualCharacter& b) {
  require(a.lattice == b.lattice, Errc::CoverMismatch, "subtracting across covers");
  VirtualCharacter r = a;
  for (const auto& [w, c] : b.terms) r.add_term(w, -c);
  return r;
}

}  // namespace

DiracIndex dirac_index_limits(const RootDatum& datum, const HCParameter& p) {
  validate_parameter(datum, p);
  auto [norm_chamber, s] = k_normalize_chamber(datum, p.chamber);
  Coords mu = s->apply(p.chi.coords) - datum.rho_c_dd(0);
  require(datum.is_k_dominant(mu), Errc::InvalidParameter,
          "normalized parameter is not k-dominant");
  int sign = datum.chamber_map(norm_chamber).sign;
  DiracIndex out;
  out.index.lattice = Lattice::Ktilde;
  out.index.add_term(mu, sign);
  return out;
}

VirtualCharacter restrict_finite_dim(const RootDatum& datum, const Weight& g_highest_weight) {
  LaurentElement ch = weight_expansion(datum, datum.positive_roots(0), g_highest_weight);
  ch.lattice = Lattice::Ktilde;
  return decompose(datum, ch);
}

DiracIndex dirac_index_finite_dim(const RootDatum& datum, const Weight& g_highest_weight) {
  VirtualCharacter x = restrict_finite_dim(datum, g_highest_weight);
  SpinorPair sp = spinor_modules(datum);
  VirtualCharacter plus = as_ktilde(tensor(datum, x, as_ktilde(sp.s_plus)));
  VirtualCharacter minus = as_ktilde(tensor(datum, x, as_ktilde(sp.s_minus)));
  DiracIndex out;
  out.index = subtract(plus, minus);
  return out;
}

namespace {

// Exact shell enumeration |v| = target over doubled coordinates with fixed
// parity class, by coordinate recursion with positive-definite pruning.
void enumerate_shell(const RootDatum& datum, std::int64_t target, const Coords& parity,
                     Coords& prefix, std::size_t depth, std::vector<Coords>& out) {
  std::size_t rank = datum.rank();
  if (depth == rank) {
    if (datum.norm_dd(prefix) == target) out.push_back(prefix);
    return;
  }
  // crude exact bound: G positive definite integral implies x^T G x >= sum_i
  // x_i^2 / (rank * max|G^{-1}|) ... keep it simple: scan |c| up to target and
  // prune by checking that the partial vector can still reach the shell.
  // Minimum of the form over completions is computed exactly via rational
  // Gaussian minimization.
  auto min_completion = [&](const Coords& pref, std::size_t d) -> Rat {
    // minimize (pref, y)^T G (pref, y) over real y
    // Solve the stationarity system for the tail block.
    std::size_t tail = rank - d;
    if (tail == 0) return Rat(datum.norm_dd(pref));
    std::vector<std::vector<Rat>> c(tail, std::vector<Rat>(tail + 1, Rat(0)));
    const auto& g = datum.gram();
    for (std::size_t i = 0; i < tail; ++i) {
      for (std::size_t j = 0; j < tail; ++j) c[i][j] = Rat(g[d + i][d + j]);
      Rat rhs(0);
      for (std::size_t j = 0; j < d; ++j) rhs -= Rat(g[d + i][j]) * Rat(pref[j]);
      c[i][tail] = rhs;
    }
    // Gaussian solve (G tail block is positive definite, hence invertible)
    for (std::size_t col = 0; col < tail; ++col) {
      std::size_t piv = col;
      while (c[piv][col] == 0) ++piv;
      std::swap(c[piv], c[col]);
      Rat inv = c[col][col];
      for (auto& x : c[col]) x /= inv;
      for (std::size_t i = 0; i < tail; ++i) {
        if (i == col || c[i][col] == 0) continue;
        Rat f = c[i][col];
        for (std::size_t j = 0; j <= tail; ++j) c[i][j] -= f * c[col][j];
      }
    }
    Rat value(0);
    std::vector<Rat> y(rank, Rat(0));
    for (std::size_t i = 0; i < d; ++i) y[i] = Rat(pref[i]);
    for (std::size_t i = 0; i < tail; ++i) y[d + i] = c[i][tail];
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) value += y[i] * Rat(g[i][j]) * y[j];
    return value;
  };

  for (std::int64_t mag = 0;; ++mag) {
    bool feasible = false;
    for (int sgn : {1, -1}) {
      if (mag == 0 && sgn < 0) continue;
      std::int64_t c = sgn * mag;
      prefix[depth] = c;
      for (std::size_t i = depth + 1; i < rank; ++i) prefix[i] = 0;
      if (min_completion(prefix, depth + 1) > Rat(target)) continue;
      feasible = true;
      if (((c - parity[depth]) % 2 + 2) % 2 != 0) continue;
      enumerate_shell(datum, target, parity, prefix, depth + 1, out);
    }
    if (!feasible && mag > 0) break;
    if (mag > 4 * (std::abs(target) + 1)) break;  // safety net
  }
}

}  // namespace

std::vector<Coords> dirac_candidates(const RootDatum& datum, const Weight& lambda,
                                     bool norm_filter) {
  require(datum.valid_weight(lambda), Errc::InvalidParameter, "lambda not a lattice weight");
  const Coords rho_c = datum.rho_c_dd(0);
  std::set<Coords> out;
  if (!norm_filter) {
    for (const auto& w : datum.weyl(WhichWeyl::Full)) {
      Coords tau = w.apply(lambda.coords) - rho_c;
      if (datum.is_k_dominant(tau)) out.insert(tau);
    }
  } else {
    std::int64_t target = datum.norm_dd(lambda.coords);
    Coords parity(datum.rank());
    for (std::size_t i = 0; i < datum.rank(); ++i)
      parity[i] = ((lambda.coords[i] % 2) + 2) % 2;
    Coords prefix(datum.rank(), 0);
    std::vector<Coords> shell;
    enumerate_shell(datum, target, parity, prefix, 0, shell);
    for (const auto& nu : shell) {
      Coords tau = nu - rho_c;
      if (datum.is_k_dominant(tau) && datum.valid_weight(Weight(tau, Lattice::Ktilde)))
        out.insert(tau);
    }
  }
  return {out.begin(), out.end()};
}

DiracIndex dirac_index_admissible(const RootDatum& datum, const KTypeProvider& provider,
                                  const Weight& lambda) {
  require(provider.support_norm_dd >= 0, Errc::UnboundedProvider,
          "provider must declare a finite support bound");
  SpinorPair sp = spinor_modules(datum);
  LaurentElement dual_plus = expand(datum, dual(datum, as_ktilde(sp.s_plus)));
  LaurentElement dual_minus = expand(datum, dual(datum, as_ktilde(sp.s_minus)));

  DiracIndex out;
  out.index.lattice = Lattice::Ktilde;
  for (const auto& tau : dirac_candidates(datum, lambda)) {
    LaurentElement tau_ch = irr_character(datum, Weight(tau, Lattice::Ktilde));
    VirtualCharacter wplus = decompose(datum, laurent_product(datum, tau_ch, dual_plus));
    VirtualCharacter wminus = decompose(datum, laurent_product(datum, tau_ch, dual_minus));
    // multiplicity of tau in sigma x S(+/-) equals the coefficient of sigma in
    // tau x S(+/-)^*; only sigma within the spinor shift of tau appear here.
    std::map<Coords, std::int64_t> contrib;
    for (const auto& [sigma, c] : wplus.terms) contrib[sigma] += c;
    for (const auto& [sigma, c] : wminus.terms) contrib[sigma] -= c;
    std::int64_t coeff = 0;
    for (const auto& [sigma, c] : contrib) {
      if (c == 0) continue;
      if (datum.norm_dd(sigma) > provider.support_norm_dd) continue;  // outside support
      coeff += c * provider.multiplicity(sigma);
    }
    out.index.add_term(tau, coeff);
  }
  return out;
}

DiracPairingResult dirac_pairing(const DiracIndex& a, const DiracIndex& b) {
  require(a.index.lattice == b.index.lattice, Errc::CoverMismatch,
          "pairing indices across covers");
  DiracPairingResult res;
  std::set<Coords> support;
  for (const auto& [w, c] : a.index.terms) support.insert(w);
  for (const auto& [w, c] : b.index.terms) support.insert(w);
  for (const auto& gamma : support) {
    auto ita = a.index.terms.find(gamma);
    auto itb = b.index.terms.find(gamma);
    std::int64_t ca = ita == a.index.terms.end() ? 0 : ita->second;
    std::int64_t cb = itb == b.index.terms.end() ? 0 : itb->second;
    res.summands.emplace_back(gamma, ca, cb);
    res.value += ca * cb;
  }
  return res;
}

std::int64_t ep_pairing_finite_dim(const RootDatum& datum, const Weight& hw_x,
                                   const Weight& hw_y) {
  LaurentElement chx = weight_expansion(datum, datum.positive_roots(0), hw_x);
  LaurentElement chy = weight_expansion(datum, datum.positive_roots(0), hw_y);
  chx.lattice = Lattice::Ktilde;
  chy.lattice = Lattice::Ktilde;
  VirtualCharacter y = decompose(datum, chy);
  std::int64_t acc = 0;
  auto powers = wedge_p_powers(datum);
  for (std::size_t i = 0; i < powers.size(); ++i) {
    LaurentElement wi = powers[i];
    wi.lattice = Lattice::Ktilde;
    VirtualCharacter ci = decompose(datum, laurent_product(datum, wi, chx));
    std::int64_t hom = pairing(ci, y);
    acc += (i % 2 == 0) ? hom : -hom;
  }
  return acc;
}

}  // namespace dirac
