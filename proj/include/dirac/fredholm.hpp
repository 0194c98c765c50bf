#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dirac/exact_matrix.hpp"
#include "dirac/subspace.hpp"

namespace dirac {

// S : X -> Y and T : Y -> X, as matrices (S is dimY x dimX).
struct FredholmPairData {
  ExactMatrix S;
  ExactMatrix T;
};

void validate_pair(const FredholmPairData& p);

struct FredholmIndex {
  std::int64_t index = 0;
  std::int64_t a = 0;  // dim ker S / (ker S n im T)
  std::int64_t b = 0;  // dim ker T / (ker T n im S)
};

FredholmIndex fredholm_index(const FredholmPairData& p);

// Finite differential complex C^lowest -> ... -> C^top.
struct GradedComplexData {
  int lowest = 0;
  std::vector<std::int64_t> dims;
  std::vector<ExactMatrix> differentials;  // differentials[i] : C^{lowest+i} -> C^{lowest+i+1}
};

void validate_complex(const GradedComplexData& c);

FredholmPairData complex_to_pair(const GradedComplexData& c);

struct EulerReport {
  FredholmIndex pair_index;
  std::int64_t alternating_dim_sum = 0;
  std::int64_t alternating_cohomology_sum = 0;
  std::vector<std::int64_t> cohomology_dims;
};

// Index of the associated pair; asserts it equals both alternating sums.
EulerReport euler_via_pair(const GradedComplexData& c);

struct ReducedPairReport {
  FredholmPairData reduced;
  FredholmIndex original;
  FredholmIndex reduced_index;
  std::int64_t dim_xbar = 0;
  std::int64_t dim_ybar = 0;
};

// Quotients by im(TS) and im(ST); asserts index invariance and the
// finite-dimensional formula ind = dim Xbar - dim Ybar.
ReducedPairReport reduced_pair(const FredholmPairData& p);

struct AdditivityReport {
  FredholmIndex ind1, ind2, ind3;
  std::int64_t alternating_sum = 0;
};

// Three pairs linked by a commuting diagram with exact columns and
// S_j T_j = T_j S_j = 0; asserts ind1 - ind2 + ind3 = 0.
AdditivityReport check_additivity(const FredholmPairData& p1, const FredholmPairData& p2,
                                  const FredholmPairData& p3, const ExactMatrix& alpha,
                                  const ExactMatrix& beta, const ExactMatrix& gamma,
                                  const ExactMatrix& delta);

// Odd operator on a super space, stored by its two blocks.
struct OddOperator {
  ExactMatrix plus;   // V0 -> V1
  ExactMatrix minus;  // V1 -> V0
};

struct PerturbationReport {
  FredholmIndex ind_f;
  FredholmIndex ind_d;
  bool equal = false;
};

// F = d + del with d^2 = del^2 = 0.  Requires ker(F^2) + im(F^2) = V as a
// direct sum; throws SemisimplicityFails when the hypothesis does not hold.
PerturbationReport perturbed_index(const OddOperator& d, const OddOperator& del);

// ---- seeded instance generators (shared by the CLI suites and the tests) ----

using Rng = std::mt19937_64;

ExactMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int max_num = 4,
                          int max_den = 3);
// Random second map with both products zero, given the first.
ExactMatrix random_annihilating_partner(Rng& rng, const ExactMatrix& s);
FredholmPairData random_pair(Rng& rng, std::size_t max_dim = 8);
FredholmPairData random_zero_product_pair(Rng& rng, std::size_t max_dim = 8);
GradedComplexData random_complex(Rng& rng, std::size_t terms, std::size_t max_dim = 8);
OddOperator random_odd_differential(Rng& rng, std::size_t dim0, std::size_t dim1);

struct SuiteResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

SuiteResult run_fredholm_suite(const std::string& name, std::uint64_t seed);
std::vector<std::string> fredholm_suite_names();

}  // namespace dirac
