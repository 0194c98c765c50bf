#pragma once

#include <map>
#include <string>
#include <vector>

#include "dirac/characters.hpp"
#include "dirac/exact_matrix.hpp"
#include "dirac/fredholm.hpp"
#include "dirac/root_datum.hpp"

namespace dirac {

// Explicit Harish-Chandra module: weight-graded basis with exact action
// matrices for the root vectors u_beta, normalized so B(u_beta, u_{-beta}) = 1.
// Cartan actions are determined by the weight grading.
struct MatrixHCModule {
  std::string name;
  std::size_t dimension = 0;
  std::vector<Coords> weights;                 // doubled K-weight per basis vector
  std::map<Coords, ExactMatrix> root_actions;  // keyed by root (doubled coords)
  Weight infinitesimal_character;              // Lambda

  const ExactMatrix& action(const Coords& root) const;
};

// Finite-dimensional sl2 module F_n in the weight basis, with the B
// normalization read off the datum's gram matrix.
MatrixHCModule sl2_finite_dim_module(const RootDatum& datum, int n);

// Checks the weight grading, bracket relations and the Casimir scalar
// |Lambda|^2 - |rho|^2.  Lab operations require abelian K.
void validate_module(const RootDatum& datum, const MatrixHCModule& x);

// Clifford module S = wedge(U) for U spanned by the noncompact positive roots
// of the reference chamber.  Basis indexed by subsets (bitmask ascending).
struct SpinorMatrices {
  std::vector<Coords> u_roots;       // basis order of U
  std::size_t dim = 0;               // 2^m
  std::vector<int> parity;           // exterior degree mod 2
  std::vector<Coords> s_weights;     // spinor weight of each basis element
  std::vector<ExactMatrix> gamma_u;      // wedging by u_i
  std::vector<ExactMatrix> gamma_ustar;  // contraction by u_i^*, factor-2 convention
};

SpinorMatrices build_spinor_matrices(const RootDatum& datum);

// Dirac operator on X (x) S with its odd blocks.
struct DiracMatrix {
  ExactMatrix full;      // on X (x) S
  ExactMatrix plus;      // X (x) S+ -> X (x) S-
  ExactMatrix minus;     // X (x) S- -> X (x) S+
  std::vector<int> parity;        // per X (x) S basis vector
  std::vector<Coords> weights;    // Ktilde weight per basis vector
  std::vector<std::size_t> even_ids, odd_ids;
};

DiracMatrix dirac_matrix(const RootDatum& datum, const MatrixHCModule& x,
                         const SpinorMatrices& sp);

// Exact check of D^2 = -Cas_g + Delta(Cas_k) + (|rho_k|^2 - |rho|^2).
void verify_parthasarathy(const RootDatum& datum, const MatrixHCModule& x,
                          const SpinorMatrices& sp);

// Exact check of the scalar -|Lambda|^2 + |tau + rho_k|^2 on each isotypic
// component of X (x) S.
void verify_scalar_action(const RootDatum& datum, const MatrixHCModule& x,
                          const SpinorMatrices& sp);

struct DiracCohomology {
  std::map<Coords, std::pair<std::int64_t, std::int64_t>> graded_dims;  // weight -> (h+, h-)
  VirtualCharacter index;  // Ktilde
};

DiracCohomology dirac_cohomology(const RootDatum& datum, const MatrixHCModule& x,
                                 const SpinorMatrices& sp);

// C = Hom_Ktilde(X (x) S, Y (x) S) as a basis of weight-matched matrix units.
struct SuperHomSpace {
  struct Unit {
    std::size_t from;  // X (x) S index
    std::size_t to;    // Y (x) S index
    int parity;        // source + target spinor parity mod 2
  };
  std::vector<Unit> units;
  std::vector<std::size_t> even_ids, odd_ids;
  DiracMatrix dx, dy;
};

SuperHomSpace build_hom_space(const RootDatum& datum, const MatrixHCModule& x,
                              const MatrixHCModule& y, const SpinorMatrices& sp);

struct STOperators {
  SuperHomSpace space;
  ExactMatrix S;  // even -> odd
  ExactMatrix T;  // odd -> even
};

// The operators S, T on C; verifies TS = D^2 o phi + phi o D^2 (and ST
// likewise) and ker(TS) + im(TS) = C^0 as exact matrix identities.
STOperators build_ST(const RootDatum& datum, const MatrixHCModule& x, const MatrixHCModule& y,
                     const SpinorMatrices& sp);

// ind(S,T); asserted equal to the pairing of the two Dirac indices.
std::int64_t index_ST(const RootDatum& datum, const MatrixHCModule& x, const MatrixHCModule& y,
                      const SpinorMatrices& sp);

// Ext complex C^i = Hom_K(wedge^i p (x) X, Y) with its differential.
struct ExtComplex {
  GradedComplexData complex;
  // basis of C^i: (subset of the p-basis, X index, Y index), weight matched
  struct Element {
    std::uint32_t subset;
    std::size_t x_index;
    std::size_t y_index;
  };
  std::vector<std::vector<Element>> bases;
  std::vector<std::int64_t> cohomology_dims;
  std::int64_t euler = 0;
};

ExtComplex ext_complex(const RootDatum& datum, const MatrixHCModule& x, const MatrixHCModule& y);

// The eight operators of the A/B split on bold-C = Hom(S (x) S* (x) X, Y),
// together with the independently transported d and Dcal.  All stated
// identities are verified exactly.
struct SplitOperators {
  std::vector<ExactMatrix> d_parts;      // d1..d4
  std::vector<ExactMatrix> delta_parts;  // delta1..delta4
  ExactMatrix op_a, op_b;                // A and B actions
  ExactMatrix d_total, delta_total;      // sums of parts
  ExactMatrix d_transport;               // Ext differential, assembled on bold-C
  ExactMatrix dcal_transport;            // (S,T) transported through the spinor pairing
  ExactMatrix ecal;                      // Dcal + Ecal - ... = the E side, from parts
  std::vector<int> parity;               // degree mod 2 on bold-C
  std::vector<std::size_t> even_ids, odd_ids;
};

SplitOperators split_operators(const RootDatum& datum, const MatrixHCModule& x,
                               const MatrixHCModule& y, const SpinorMatrices& sp);

struct ConjectureReport {
  std::int64_t ind_d = 0;
  std::int64_t ind_dcal = 0;
  bool equal = false;
};

// ind(d+, d-) vs ind(Dcal+, Dcal-); inequality is reported, never thrown.
ConjectureReport conjecture_check(const RootDatum& datum, const MatrixHCModule& x,
                                  const MatrixHCModule& y, const SpinorMatrices& sp);

// (2d, delta) on bold-C as odd operators, for the perturbation proposition.
std::pair<OddOperator, OddOperator> bigop_export(const RootDatum& datum,
                                                 const MatrixHCModule& x,
                                                 const MatrixHCModule& y,
                                                 const SpinorMatrices& sp);

}  // namespace dirac
