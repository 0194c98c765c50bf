#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dirac/errors.hpp"
#include "dirac/rational.hpp"
#include "dirac/weight.hpp"

namespace dirac {

// Orthogonal lattice automorphism in doubled coordinates, with its
// determinant on the reflection representation.
struct WeylGroupElement {
  std::vector<std::int64_t> matrix;  // row-major, rank x rank
  int sign = 1;
  std::size_t rank = 0;

  Coords apply(const Coords& v) const {
    Coords r(rank, 0);
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) r[i] += matrix[i * rank + j] * v[j];
    return r;
  }
  friend bool operator==(const WeylGroupElement& a, const WeylGroupElement& b) {
    return a.matrix == b.matrix;
  }
};

enum class WhichWeyl { Full, Compact };

// A positive system, stored as sorted indices into RootDatum::roots.
using Chamber = std::vector<int>;

struct RootDatumConfig {
  int rank = 0;
  std::vector<Coords> simple_roots;   // doubled coordinates
  std::vector<std::vector<std::int64_t>> gram;  // form on t*, actual basis, integral
  std::vector<bool> compact_flags;    // per simple root; extended additively mod 2
  std::string name = "custom";
};

// Root datum of an equal-rank pair: roots of t in g with the compact/noncompact
// marking, the integral Gram matrix of the invariant form on t*, and the full
// catalog of positive systems.  Immutable after construction.
class RootDatum {
 public:
  static RootDatum preset(const std::string& name);           // sl2R, su21, sp4R
  static RootDatum build(const RootDatumConfig& config);

  const std::string& name() const { return name_; }
  std::size_t rank() const { return rank_; }
  const std::vector<Coords>& roots() const { return roots_; }
  bool is_compact_root(int i) const { return compact_[i]; }
  const std::vector<std::vector<std::int64_t>>& gram() const { return gram_; }

  std::size_t dim_p() const { return dim_p_; }

  // 4<a,b> : the invariant form evaluated on doubled coordinate vectors.
  std::int64_t ip_dd(const Coords& a, const Coords& b) const;
  std::int64_t norm_dd(const Coords& a) const { return ip_dd(a, a); }
  Rat ip(const Coords& a, const Coords& b) const { return Rat(ip_dd(a, b), 4); }

  // Chamber catalog.  Index 0 is the reference chamber b1; the compact part of
  // b1 is the fixed positive system for R_k.
  const std::vector<Chamber>& chambers() const { return chambers_; }
  std::size_t reference_chamber() const { return 0; }
  const std::vector<Coords>& compact_positive_roots() const { return rk_positive_; }
  std::vector<Coords> positive_roots(std::size_t chamber) const;
  std::vector<Coords> noncompact_positive_roots(std::size_t chamber) const;
  std::vector<Coords> compact_positive_roots_of(std::size_t chamber) const;

  // Doubled rho-vectors (sum of positive roots in actual coordinates).
  Coords rho_dd(std::size_t chamber) const;
  Coords rho_c_dd(std::size_t chamber) const;
  Coords rho_n_dd(std::size_t chamber) const;

  const std::vector<WeylGroupElement>& weyl(WhichWeyl which) const {
    return which == WhichWeyl::Full ? weyl_full_ : weyl_compact_;
  }

  // The element sending the reference chamber onto `chamber` (unique).
  const WeylGroupElement& chamber_map(std::size_t chamber) const;
  std::optional<std::size_t> chamber_of_positive_system(const std::vector<Coords>& positives) const;
  std::size_t image_chamber(const WeylGroupElement& w, std::size_t chamber) const;

  // Dominance with respect to the fixed R_k^+.
  bool is_k_dominant(const Coords& v) const;
  bool is_k_regular(const Coords& v) const;  // no vanishing against R_k^+
  // Unique dominant W_k-representative; second member is the sign of the
  // moving element.  Requires v to be W_k-regular unless it is already
  // dominant on the walls it touches.
  std::pair<Coords, int> k_dominant_representative(const Coords& v) const;

  // Lattice parity classes: tag K means all doubled coordinates even; tag
  // Ktilde additionally admits the rho_n(b1) parity class.
  bool valid_weight(const Weight& w) const;
  bool genuine_class(const Coords& v) const;  // v = rho_n(b1) mod 2L

  bool is_abelian_k() const { return rk_positive_.empty(); }

 private:
  RootDatum() = default;
  void validate_and_finish();

  std::string name_;
  std::size_t rank_ = 0;
  std::vector<Coords> roots_;
  std::vector<bool> compact_;
  std::vector<std::vector<std::int64_t>> gram_;
  std::size_t dim_p_ = 0;
  std::vector<Chamber> chambers_;
  std::vector<Coords> rk_positive_;
  std::vector<WeylGroupElement> weyl_full_;
  std::vector<WeylGroupElement> weyl_compact_;
  std::vector<WeylGroupElement> chamber_maps_;  // chamber_maps_[c](b1) = chamber c
};

}  // namespace dirac
