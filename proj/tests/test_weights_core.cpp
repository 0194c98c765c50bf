#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dirac/characters.hpp"
#include "dirac/json_io.hpp"
#include "dirac/root_datum.hpp"

using namespace dirac;

namespace {

// Independent chamber oracle: enumerate all half-size subsets of the roots
// that contain one of each +/- pair and are closed under addition.
std::size_t brute_force_positive_systems(const RootDatum& d) {
  const auto& roots = d.roots();
  std::set<Coords> root_set(roots.begin(), roots.end());
  std::size_t n = roots.size(), half = n / 2, count = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != half) continue;
    std::vector<Coords> pos;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint32_t{1} << i)) pos.push_back(roots[i]);
    std::set<Coords> pset(pos.begin(), pos.end());
    bool ok = true;
    for (const auto& a : pos) {
      if (pset.count(-a)) ok = false;
      for (const auto& b : pos)
        if (root_set.count(a + b) && !pset.count(a + b)) ok = false;
    }
    if (ok) ++count;
  }
  return count;
}

Coords random_even_dominant(const RootDatum& d, std::mt19937_64& rng, int box = 8) {
  std::uniform_int_distribution<std::int64_t> pick(-box, box);
  for (;;) {
    Coords c(d.rank());
    for (auto& v : c) v = 2 * pick(rng);
    auto [dom, sign] = d.k_dominant_representative(c);
    (void)sign;
    if (d.valid_weight(Weight(dom, Lattice::K))) return dom;
  }
}

VirtualCharacter random_virtual(const RootDatum& d, std::mt19937_64& rng, int terms = 3) {
  VirtualCharacter v;
  v.lattice = Lattice::K;
  std::uniform_int_distribution<std::int64_t> coeff(-3, 3);
  for (int t = 0; t < terms; ++t) v.add_term(random_even_dominant(d, rng), coeff(rng));
  return v;
}

}  // namespace

TEST_CASE("preset sl2R") {
  RootDatum d = RootDatum::preset("sl2R");
  CHECK(d.rank() == 1);
  CHECK(d.roots().size() == 2);
  CHECK(d.dim_p() == 2);
  CHECK(d.chambers().size() == 2);
  CHECK(!d.is_compact_root(0));
  CHECK(d.positive_roots(0) == std::vector<Coords>{{2}});
}

TEST_CASE("preset su21") {
  RootDatum d = RootDatum::preset("su21");
  CHECK(d.rank() == 2);
  CHECK(d.roots().size() == 6);
  std::size_t compact = 0;
  for (std::size_t i = 0; i < 6; ++i)
    if (d.is_compact_root(static_cast<int>(i))) ++compact;
  CHECK(compact == 2);
  CHECK(d.dim_p() == 4);
  CHECK(d.chambers().size() == 6);
  CHECK(d.chambers().size() == brute_force_positive_systems(d));

  // three chambers per W_k-orbit class
  std::set<std::set<std::size_t>> orbits;
  for (std::size_t c = 0; c < 6; ++c) {
    std::set<std::size_t> orbit;
    for (const auto& s : d.weyl(WhichWeyl::Compact)) orbit.insert(d.image_chamber(s, c));
    orbits.insert(orbit);
  }
  CHECK(orbits.size() == 3);
}

TEST_CASE("preset sp4R accepted with even dim p") {
  RootDatum d = RootDatum::preset("sp4R");
  CHECK(d.roots().size() == 8);
  CHECK(d.dim_p() == 6);  // even, so no OddNoncompactDimension
  CHECK(d.chambers().size() == 8);
  CHECK(d.chambers().size() == brute_force_positive_systems(d));
  std::set<Coords> compacts;
  for (std::size_t i = 0; i < 8; ++i)
    if (d.is_compact_root(static_cast<int>(i))) compacts.insert(d.roots()[i]);
  CHECK(compacts == std::set<Coords>{{2, -2}, {-2, 2}});
}

TEST_CASE("custom datum from simple roots matches the preset") {
  RootDatumConfig cfg;
  cfg.rank = 2;
  cfg.simple_roots = {{2, -2}, {2, 4}};
  cfg.gram = {{2, -1}, {-1, 2}};
  cfg.compact_flags = {true, false};
  cfg.name = "su21-custom";
  RootDatum d = RootDatum::build(cfg);
  RootDatum p = RootDatum::preset("su21");
  std::set<Coords> a(d.roots().begin(), d.roots().end());
  std::set<Coords> b(p.roots().begin(), p.roots().end());
  CHECK(a == b);
  CHECK(d.chambers().size() == 6);
  for (std::size_t i = 0; i < d.roots().size(); ++i) {
    auto it = std::find(p.roots().begin(), p.roots().end(), d.roots()[i]);
    REQUIRE(it != p.roots().end());
    CHECK(d.is_compact_root(static_cast<int>(i)) ==
          p.is_compact_root(static_cast<int>(it - p.roots().begin())));
  }
}

TEST_CASE("datum validation errors") {
  RootDatumConfig bad_form;
  bad_form.rank = 1;
  bad_form.simple_roots = {{2}};
  bad_form.gram = {{-2}};
  bad_form.compact_flags = {false};
  CHECK_THROWS_WITH_AS(RootDatum::build(bad_form), doctest::Contains("NonDefiniteForm"),
                       DomainError);

  RootDatumConfig bad_lattice;
  bad_lattice.rank = 2;
  bad_lattice.simple_roots = {{2, 0}, {1, 1}};  // odd doubled coordinates
  bad_lattice.gram = {{1, 0}, {0, 1}};
  bad_lattice.compact_flags = {false, false};
  CHECK_THROWS_AS(RootDatum::build(bad_lattice), DomainError);

  // all-noncompact flags on A2 simples still grade consistently: the highest
  // root comes out compact
  RootDatumConfig graded;
  graded.rank = 2;
  graded.simple_roots = {{2, -2}, {2, 4}};
  graded.gram = {{2, -1}, {-1, 2}};
  graded.compact_flags = {false, false};
  RootDatum g = RootDatum::build(graded);
  CHECK(g.dim_p() == 4);
}

TEST_CASE("weyl groups") {
  RootDatum sl2 = RootDatum::preset("sl2R");
  CHECK(sl2.weyl(WhichWeyl::Full).size() == 2);
  CHECK(sl2.weyl(WhichWeyl::Compact).size() == 1);
  RootDatum su = RootDatum::preset("su21");
  CHECK(su.weyl(WhichWeyl::Full).size() == 6);
  CHECK(su.weyl(WhichWeyl::Compact).size() == 2);
  RootDatum sp = RootDatum::preset("sp4R");
  CHECK(sp.weyl(WhichWeyl::Full).size() == 8);
  CHECK(sp.weyl(WhichWeyl::Compact).size() == 2);

  for (const auto* d : {&sl2, &su, &sp}) {
    const auto& w = d->weyl(WhichWeyl::Full);
    CHECK(w[0].sign == 1);  // identity first
    for (std::size_t i = 0; i < d->rank(); ++i)
      CHECK(w[0].matrix[i * d->rank() + i] == 1);
    // closed under composition
    for (const auto& a : w)
      for (const auto& b : w) {
        WeylGroupElement ab;
        ab.rank = a.rank;
        ab.sign = a.sign * b.sign;
        ab.matrix.assign(a.rank * a.rank, 0);
        for (std::size_t i = 0; i < a.rank; ++i)
          for (std::size_t k = 0; k < a.rank; ++k)
            for (std::size_t j = 0; j < a.rank; ++j)
              ab.matrix[i * a.rank + j] += a.matrix[i * a.rank + k] * b.matrix[k * a.rank + j];
        CHECK(std::find(w.begin(), w.end(), ab) != w.end());
      }
    // the gram form is preserved
    for (const auto& a : w)
      for (const auto& r1 : d->roots())
        for (const auto& r2 : d->roots())
          CHECK(d->ip_dd(a.apply(r1), a.apply(r2)) == d->ip_dd(r1, r2));
  }
}

TEST_CASE("rho vectors") {
  RootDatum sl2 = RootDatum::preset("sl2R");
  CHECK(sl2.rho_dd(0) == Coords{1});
  CHECK(sl2.rho_c_dd(0) == Coords{0});
  CHECK(sl2.rho_n_dd(0) == Coords{1});

  for (auto name : {"sl2R", "su21", "sp4R"}) {
    RootDatum d = RootDatum::preset(name);
    for (std::size_t c = 0; c < d.chambers().size(); ++c)
      CHECK(d.rho_dd(c) == d.rho_c_dd(c) + d.rho_n_dd(c));
  }

  RootDatum su = RootDatum::preset("su21");
  for (std::size_t c = 0; c < su.chambers().size(); ++c)
    CHECK(su.noncompact_positive_roots(c).size() == 2);
}

TEST_CASE("irr_character basics") {
  RootDatum sl2 = RootDatum::preset("sl2R");
  LaurentElement triv = irr_character(sl2, Weight({0}, Lattice::K));
  CHECK(triv.terms == std::map<Coords, std::int64_t>{{{0}, 1}});

  LaurentElement abelian = irr_character(sl2, Weight({3}, Lattice::Ktilde));
  CHECK(abelian.terms == std::map<Coords, std::int64_t>{{{3}, 1}});

  RootDatum su = RootDatum::preset("su21");
  LaurentElement fund = irr_character(su, Weight({2, 0}, Lattice::K));
  CHECK(fund.terms.size() == 2);
  CHECK(irr_dimension(su, {2, 0}) == 2);
  CHECK(fund.terms.count({2, 0}) == 1);
  CHECK(fund.terms.count({0, 2}) == 1);

  CHECK_THROWS_WITH_AS(irr_character(su, Weight({0, 2}, Lattice::K)),
                       doctest::Contains("NonDominantWeight"), DomainError);
}

TEST_CASE("weight expansion dimension matches the Weyl formula") {
  std::mt19937_64 rng(2024);
  for (auto name : {"su21", "sp4R"}) {
    RootDatum d = RootDatum::preset(name);
    for (int t = 0; t < 10; ++t) {
      Coords hw = random_even_dominant(d, rng, 4);
      LaurentElement ch = irr_character(d, Weight(hw, Lattice::K));
      std::int64_t total = 0;
      for (const auto& [w, c] : ch.terms) total += c;
      CHECK(Int(total) == irr_dimension(d, hw));
    }
  }
}

TEST_CASE("decompose round trip") {
  std::mt19937_64 rng(7);
  for (auto name : {"sl2R", "su21", "sp4R"}) {
    RootDatum d = RootDatum::preset(name);
    for (int t = 0; t < 20; ++t) {
      Coords hw = random_even_dominant(d, rng);
      VirtualCharacter expected;
      expected.lattice = Lattice::K;
      expected.add_term(hw, 1);
      CHECK(decompose(d, irr_character(d, Weight(hw, Lattice::K))) == expected);
    }
  }
}

TEST_CASE("decompose abelian K example") {
  RootDatum sl2 = RootDatum::preset("sl2R");
  LaurentElement f;
  f.lattice = Lattice::K;
  f.add_term({2}, 1);
  f.add_term({-2}, 1);
  f.add_term({0}, 1);
  VirtualCharacter v = decompose(sl2, f);
  CHECK(v.terms.size() == 3);
  for (const auto& [w, c] : v.terms) CHECK(c == 1);
}

TEST_CASE("decompose rejects non-invariant input") {
  RootDatum su = RootDatum::preset("su21");
  LaurentElement f;
  f.lattice = Lattice::K;
  f.add_term({2, 0}, 1);  // the swap image (0,2) is missing
  CHECK_THROWS_WITH_AS(decompose(su, f), doctest::Contains("NotInvariant"), DomainError);
}

TEST_CASE("tensor decomposition bookkeeping on su21") {
  std::mt19937_64 rng(11);
  RootDatum su = RootDatum::preset("su21");
  for (int t = 0; t < 5; ++t) {
    VirtualCharacter a, b;
    a.lattice = b.lattice = Lattice::K;
    a.add_term(random_even_dominant(su, rng, 3), 1);
    b.add_term(random_even_dominant(su, rng, 3), 1);
    VirtualCharacter ab = tensor(su, a, b);
    Int dims = 0;
    for (const auto& [w, c] : ab.terms) {
      CHECK(c > 0);
      dims += Int(c) * irr_dimension(su, w);
    }
    CHECK(dims == irr_dimension(su, a.terms.begin()->first) *
                      irr_dimension(su, b.terms.begin()->first));
  }
}

TEST_CASE("pairing is an orthonormal bilinear form on irreducibles") {
  std::mt19937_64 rng(5);
  for (auto name : {"sl2R", "su21"}) {
    RootDatum d = RootDatum::preset(name);
    Coords g1 = random_even_dominant(d, rng), g2 = random_even_dominant(d, rng);
    VirtualCharacter a, b;
    a.lattice = b.lattice = Lattice::K;
    a.add_term(g1, 1);
    b.add_term(g2, 1);
    CHECK(pairing(a, a) == 1);
    CHECK(pairing(a, b) == (g1 == g2 ? 1 : 0));

    for (int t = 0; t < 10; ++t) {
      VirtualCharacter x = random_virtual(d, rng), y = random_virtual(d, rng),
                       z = random_virtual(d, rng);
      VirtualCharacter xy = x;
      for (const auto& [w, c] : y.terms) xy.add_term(w, c);
      CHECK(pairing(xy, z) == pairing(x, z) + pairing(y, z));
      CHECK(pairing(x, y) == pairing(y, x));
    }
  }
}

TEST_CASE("pairing rejects mixed covers") {
  VirtualCharacter a, b;
  a.lattice = Lattice::K;
  b.lattice = Lattice::Ktilde;
  a.add_term({0}, 1);
  b.add_term({0}, 1);
  CHECK_THROWS_WITH_AS(pairing(a, b), doctest::Contains("CoverMismatch"), DomainError);
}

TEST_CASE("tensor unit, duality and dimensions") {
  std::mt19937_64 rng(13);
  RootDatum d = RootDatum::preset("su21");
  VirtualCharacter triv;
  triv.lattice = Lattice::K;
  triv.add_term(Coords(d.rank(), 0), 1);
  for (int t = 0; t < 5; ++t) {
    VirtualCharacter a = random_virtual(d, rng);
    CHECK(tensor(d, a, triv) == a);
    CHECK(dual(d, dual(d, a)) == a);
  }
  VirtualCharacter a, b;
  a.lattice = b.lattice = Lattice::K;
  a.add_term(random_even_dominant(d, rng, 3), 1);
  b.add_term(random_even_dominant(d, rng, 3), 1);
  CHECK(dimension(d, tensor(d, a, b)) == dimension(d, a) * dimension(d, b));

  RootDatum sl2 = RootDatum::preset("sl2R");
  VirtualCharacter neg;
  neg.lattice = Lattice::Ktilde;
  neg.add_term({-1}, 1);
  VirtualCharacter pos;
  pos.lattice = Lattice::Ktilde;
  pos.add_term({1}, 1);
  CHECK(dual(sl2, neg) == pos);
}

TEST_CASE("tensor is associative and commutative") {
  std::mt19937_64 rng(17);
  RootDatum d = RootDatum::preset("su21");
  VirtualCharacter x = random_virtual(d, rng, 2), y = random_virtual(d, rng, 2),
                   z = random_virtual(d, rng, 2);
  CHECK(tensor(d, x, y) == tensor(d, y, x));
  CHECK(tensor(d, tensor(d, x, y), z) == tensor(d, x, tensor(d, y, z)));
}

TEST_CASE("lattice parity validation") {
  RootDatum su = RootDatum::preset("su21");
  CHECK(su.valid_weight(Weight({2, 0}, Lattice::K)));
  CHECK(!su.valid_weight(Weight({1, 0}, Lattice::K)));
  CHECK(su.valid_weight(Weight({3, 3}, Lattice::Ktilde)));  // rho_n class
  CHECK(su.valid_weight(Weight({2, 0}, Lattice::Ktilde)));
  CHECK(!su.valid_weight(Weight({1, 0}, Lattice::Ktilde)));  // mixed parity
}

TEST_CASE("virtual character JSON canonical form") {
  RootDatum d = RootDatum::preset("su21");
  VirtualCharacter v;
  v.lattice = Lattice::Ktilde;
  v.add_term({3, 3}, 2);
  v.add_term({-3, -3}, -1);
  Json j = virtual_character_to_json(v);
  CHECK(virtual_character_from_json(j) == v);
  // canonical: lexicographic weight order
  CHECK(j["terms"][0]["weight"] == Json::array({-3, -3}));
  std::mt19937_64 rng(23);
  for (int t = 0; t < 5; ++t) {
    VirtualCharacter r = random_virtual(d, rng);
    CHECK(virtual_character_from_json(virtual_character_to_json(r)) == r);
  }
}

TEST_CASE("root datum JSON") {
  RootDatum d = RootDatum::preset("sp4R");
  Json j = root_datum_to_json(d);
  CHECK(j["rank"] == 2);
  CHECK(j["weyl_order"] == 8);
  RootDatum via_preset = root_datum_from_json(Json{{"preset", "sp4R"}});
  CHECK(via_preset.roots() == d.roots());
}
