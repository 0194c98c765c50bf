#pragma once

#include "dirac/exact_matrix.hpp"

namespace dirac {

// Subspaces of Q^n are represented by matrices whose columns span them.

std::size_t rank_of(const ExactMatrix& m);

// Basis of { x : m x = 0 }, as columns.
ExactMatrix kernel_basis(const ExactMatrix& m);

// Basis of the column space (pivot columns of m).
ExactMatrix image_basis(const ExactMatrix& m);

// Basis of (col A) + (col B).
ExactMatrix sum_basis(const ExactMatrix& a, const ExactMatrix& b);

// Basis of (col A) n (col B).
ExactMatrix intersection_basis(const ExactMatrix& a, const ExactMatrix& b);

bool subspace_contains(const ExactMatrix& space, const ExactMatrix& vectors);
bool same_subspace(const ExactMatrix& a, const ExactMatrix& b);

// Quotient of Q^n by a subspace: proj is (n - r) x n with kernel exactly the
// subspace, section is n x (n - r) with proj * section = identity.
struct QuotientSpace {
  ExactMatrix proj;
  ExactMatrix section;
  std::size_t dim = 0;
};

QuotientSpace quotient_by(const ExactMatrix& subspace, std::size_t ambient_dim);

// Solves a x = b (single column); requires consistency.
ExactMatrix solve(const ExactMatrix& a, const ExactMatrix& b);

}  // namespace dirac
