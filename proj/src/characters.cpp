#include "dirac/characters.hpp"

#include <algorithm>
#include <set>

namespace dirac {

LaurentElement laurent_add(const LaurentElement& a, const LaurentElement& b) {
  require(a.lattice == b.lattice, Errc::CoverMismatch, "adding across covers");
  LaurentElement r = a;
  for (const auto& [w, c] : b.terms) r.add_term(w, c);
  return r;
}

LaurentElement laurent_scale(std::int64_t c, const LaurentElement& a) {
  LaurentElement r;
  r.lattice = a.lattice;
  if (c == 0) return r;
  for (const auto& [w, k] : a.terms) r.terms.emplace(w, c * k);
  return r;
}

LaurentElement laurent_negate_weights(const LaurentElement& a) {
  LaurentElement r;
  r.lattice = a.lattice;
  for (const auto& [w, c] : a.terms) r.terms.emplace(-w, c);
  return r;
}

LaurentElement laurent_apply(const WeylGroupElement& w, const LaurentElement& a) {
  LaurentElement r;
  r.lattice = a.lattice;
  for (const auto& [v, c] : a.terms) r.add_term(w.apply(v), c);
  return r;
}

Lattice combine_covers(const RootDatum& datum, const LaurentElement& a, const LaurentElement& b) {
  if (a.lattice == Lattice::K && b.lattice == Lattice::K) return Lattice::K;
  auto all_genuine = [&](const LaurentElement& f) {
    for (const auto& [w, c] : f.terms)
      if (!datum.genuine_class(w)) return false;
    return true;
  };
  if (a.lattice == Lattice::Ktilde && b.lattice == Lattice::Ktilde && all_genuine(a) &&
      all_genuine(b))
    return Lattice::K;
  return Lattice::Ktilde;
}

LaurentElement laurent_product(const RootDatum& datum, const LaurentElement& a,
                               const LaurentElement& b) {
  LaurentElement r;
  r.lattice = combine_covers(datum, a, b);
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) r.add_term(wa + wb, ca * cb);
  return r;
}

namespace {

// Subgroup of W generated by the reflections of the given roots.
std::vector<WeylGroupElement> subsystem_weyl(const RootDatum& datum,
                                             const std::vector<Coords>& positives) {
  std::set<Coords> gens_set(positives.begin(), positives.end());
  std::vector<WeylGroupElement> out;
  // reuse the full group: keep elements expressible... simpler: generate from
  // scratch with reflection matrices taken from the full group catalog.
  // The full group is small; filter elements stabilizing the subsystem span is
  // wrong in general, so generate by closure instead.
  std::vector<WeylGroupElement> gens;
  std::size_t rank = datum.rank();
  for (const auto& alpha : positives) {
    WeylGroupElement w;
    w.rank = rank;
    w.sign = -1;
    w.matrix.assign(rank * rank, 0);
    std::int64_t na = datum.ip_dd(alpha, alpha);
    for (std::size_t j = 0; j < rank; ++j) {
      Coords e(rank, 0);
      e[j] = 1;
      std::int64_t num = 2 * datum.ip_dd(e, alpha);
      for (std::size_t i = 0; i < rank; ++i) {
        std::int64_t val = (i == j ? na : 0) - num * alpha[i];
        require(val % na == 0, Errc::InvalidRootSystem, "non-integral reflection");
        w.matrix[i * rank + j] = val / na;
      }
    }
    gens.push_back(w);
  }
  WeylGroupElement id;
  id.rank = rank;
  id.sign = 1;
  id.matrix.assign(rank * rank, 0);
  for (std::size_t i = 0; i < rank; ++i) id.matrix[i * rank + i] = 1;
  out.push_back(id);
  std::set<std::vector<std::int64_t>> seen{id.matrix};
  std::size_t head = 0;
  while (head < out.size()) {
    WeylGroupElement cur = out[head++];
    for (const auto& g : gens) {
      WeylGroupElement nxt;
      nxt.rank = rank;
      nxt.sign = cur.sign * g.sign;
      nxt.matrix.assign(rank * rank, 0);
      for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t k = 0; k < rank; ++k) {
          if (g.matrix[i * rank + k] == 0) continue;
          for (std::size_t j = 0; j < rank; ++j)
            nxt.matrix[i * rank + j] += g.matrix[i * rank + k] * cur.matrix[k * rank + j];
        }
      if (seen.insert(nxt.matrix).second) out.push_back(nxt);
    }
  }
  return out;
}

bool dominant_for(const RootDatum& datum, const std::vector<Coords>& positives, const Coords& v) {
  for (const auto& a : positives)
    if (datum.ip_dd(v, a) < 0) return false;
  return true;
}

}  // namespace

LaurentElement weight_expansion(const RootDatum& datum, const std::vector<Coords>& positives,
                                const Weight& hw) {
  require(datum.valid_weight(hw), Errc::NonDominantWeight,
          "weight " + coords_to_string(hw.coords) + " not on the " +
              std::string(lattice_name(hw.lattice)) + " lattice");
  require(dominant_for(datum, positives, hw.coords), Errc::NonDominantWeight,
          coords_to_string(hw.coords) + " is not dominant");
  LaurentElement out;
  out.lattice = hw.lattice;
  if (positives.empty()) {  // torus: one weight
    out.add_term(hw.coords, 1);
    return out;
  }

  Coords rho(datum.rank(), 0);
  for (const auto& a : positives) rho = rho + a;
  for (auto& c : rho) c /= 2;

  const std::int64_t bound = datum.norm_dd(hw.coords + rho);

  // Candidate support: hw - (nonnegative span of positives) inside the ball
  // |mu + rho| <= |hw + rho|.
  std::set<Coords> support{hw.coords};
  std::vector<Coords> queue{hw.coords};
  while (!queue.empty()) {
    Coords cur = queue.back();
    queue.pop_back();
    for (const auto& b : positives) {
      Coords nxt = cur - b;
      if (datum.norm_dd(nxt + rho) > bound) continue;
      if (support.insert(nxt).second) queue.push_back(nxt);
    }
  }

  auto weyl = subsystem_weyl(datum, positives);
  auto dominantize = [&](const Coords& v) -> Coords {
    for (const auto& s : weyl) {
      Coords img = s.apply(v);
      if (dominant_for(datum, positives, img)) return img;
    }
    fail(Errc::InvalidRootSystem, "no dominant representative");
  };

  std::vector<Coords> dominants;
  for (const auto& mu : support)
    if (dominant_for(datum, positives, mu)) dominants.push_back(mu);
  // descending height order (hw first)
  std::sort(dominants.begin(), dominants.end(), [&](const Coords& a, const Coords& b) {
    return datum.ip_dd(a, rho) > datum.ip_dd(b, rho);
  });

  std::map<Coords, std::int64_t> mult;  // dominant weights only
  auto mult_of = [&](const Coords& v) -> std::int64_t {
    auto it = mult.find(dominantize(v));
    return it == mult.end() ? 0 : it->second;
  };

  for (const auto& mu : dominants) {
    if (mu == hw.coords) {
      mult[mu] = 1;
      continue;
    }
    std::int64_t denom = bound - datum.norm_dd(mu + rho);
    require(denom > 0, Errc::IdentityFailed, "Freudenthal boundary weight below hw");
    std::int64_t num = 0;
    for (const auto& b : positives) {
      for (std::int64_t j = 1;; ++j) {
        Coords nu = mu + j * b;
        if (datum.norm_dd(nu + rho) > bound) break;
        std::int64_t m = mult_of(nu);
        if (m != 0) num += 2 * m * datum.ip_dd(nu, b);
      }
    }
    require(num % denom == 0, Errc::IdentityFailed, "Freudenthal division not exact");
    std::int64_t m = num / denom;
    if (m != 0) mult[mu] = m;
  }

  for (const auto& [mu, m] : mult)
    for (const auto& s : weyl) out.terms[s.apply(mu)] = m;  // overwrite = orbit fill
  return out;
}

LaurentElement irr_character(const RootDatum& datum, const Weight& hw) {
  return weight_expansion(datum, datum.compact_positive_roots(), hw);
}

Int irr_dimension(const RootDatum& datum, const Coords& hw) {
  Coords rho_c = datum.rho_c_dd(0);
  Rat prod(1);
  for (const auto& a : datum.compact_positive_roots())
    prod *= Rat(datum.ip_dd(hw + rho_c, a), datum.ip_dd(rho_c, a));
  require(is_integer(prod), Errc::IdentityFailed, "Weyl dimension not integral");
  return numerator(prod);
}

Int dimension(const RootDatum& datum, const VirtualCharacter& a) {
  Int acc = 0;
  for (const auto& [hw, c] : a.terms) acc += Int(c) * irr_dimension(datum, hw);
  return acc;
}

VirtualCharacter decompose(const RootDatum& datum, const LaurentElement& f) {
  for (const auto& s : datum.weyl(WhichWeyl::Compact))
    require(laurent_apply(s, f) == f, Errc::NotInvariant, "input is not W_k-invariant");

  const Coords rho_c = datum.rho_c_dd(0);
  VirtualCharacter out;
  out.lattice = f.lattice;
  for (const auto& [w, c] : f.terms) {
    Coords nu = w + rho_c;
    if (!datum.is_k_regular(nu)) continue;  // wall hit
    auto [dom, sign] = datum.k_dominant_representative(nu);
    out.add_term(dom - rho_c, sign * c);
  }
  return out;
}

LaurentElement expand(const RootDatum& datum, const VirtualCharacter& a) {
  LaurentElement out;
  out.lattice = a.lattice;
  for (const auto& [hw, c] : a.terms) {
    LaurentElement ch = irr_character(datum, Weight(hw, a.lattice));
    out = laurent_add(out, laurent_scale(c, ch));
  }
  return out;
}

std::int64_t pairing(const VirtualCharacter& a, const VirtualCharacter& b) {
  require(a.lattice == b.lattice, Errc::CoverMismatch, "pairing across covers");
  std::int64_t acc = 0;
  const auto& small = a.terms.size() <= b.terms.size() ? a : b;
  const auto& large = a.terms.size() <= b.terms.size() ? b : a;
  for (const auto& [w, c] : small.terms) {
    auto it = large.terms.find(w);
    if (it != large.terms.end()) acc += c * it->second;
  }
  return acc;
}

VirtualCharacter tensor(const RootDatum& datum, const VirtualCharacter& a,
                        const VirtualCharacter& b) {
  LaurentElement fa = expand(datum, a);
  LaurentElement fb = expand(datum, b);
  return decompose(datum, laurent_product(datum, fa, fb));
}

VirtualCharacter dual(const RootDatum& datum, const VirtualCharacter& a) {
  LaurentElement f = laurent_negate_weights(expand(datum, a));
  VirtualCharacter d = decompose(datum, f);
  d.lattice = a.lattice;
  return d;
}

VirtualCharacter as_ktilde(const VirtualCharacter& a) {
  VirtualCharacter r = a;
  r.lattice = Lattice::Ktilde;
  return r;
}

}  // namespace dirac
