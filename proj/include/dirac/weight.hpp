#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace dirac {

// Which cover a weight (or character) is considered on.  R(K) embeds in
// R(K-tilde); the tag records the ambient group, not genuineness.
enum class Lattice : std::uint8_t { K, Ktilde };

inline const char* lattice_name(Lattice l) { return l == Lattice::K ? "K" : "Ktilde"; }

using Coords = std::vector<std::int64_t>;

// Point of the weight lattice in doubled coordinates: coords[i] is twice the
// actual coordinate, so rho-shifts and spin weights stay integral.
struct Weight {
  Coords coords;
  Lattice lattice = Lattice::K;

  Weight() = default;
  Weight(Coords c, Lattice l) : coords(std::move(c)), lattice(l) {}

  std::size_t rank() const { return coords.size(); }

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.lattice == b.lattice && a.coords == b.coords;
  }
  friend auto operator<=>(const Weight& a, const Weight& b) {
    if (a.lattice != b.lattice) return a.lattice <=> b.lattice;
    return a.coords <=> b.coords;
  }
};

inline Coords operator+(const Coords& a, const Coords& b) {
  Coords r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Coords operator-(const Coords& a, const Coords& b) {
  Coords r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Coords operator-(const Coords& a) {
  Coords r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Coords operator*(std::int64_t c, const Coords& a) {
  Coords r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool is_zero(const Coords& a) {
  for (auto x : a)
    if (x != 0) return false;
  return true;
}

inline std::string coords_to_string(const Coords& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

}  // namespace dirac
