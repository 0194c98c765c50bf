#include "dirac/subspace.hpp"

#include <vector>

namespace dirac {

namespace {

struct Rref {
  ExactMatrix m;
  std::vector<std::size_t> pivot_cols;
};

Rref rref(const ExactMatrix& in) {
  Rref r{in, {}};
  std::size_t row = 0;
  for (std::size_t col = 0; col < in.cols() && row < in.rows(); ++col) {
    std::size_t p = row;
    while (p < in.rows() && r.m.at(p, col) == 0) ++p;
    if (p == in.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < in.cols(); ++j) std::swap(r.m.at(p, j), r.m.at(row, j));
    Rat inv = r.m.at(row, col);
    for (std::size_t j = 0; j < in.cols(); ++j) r.m.at(row, j) /= inv;
    for (std::size_t i = 0; i < in.rows(); ++i) {
      if (i == row || r.m.at(i, col) == 0) continue;
      Rat f = r.m.at(i, col);
      for (std::size_t j = 0; j < in.cols(); ++j) r.m.at(i, j) -= f * r.m.at(row, j);
    }
    r.pivot_cols.push_back(col);
    ++row;
  }
  return r;
}

}  // namespace

std::size_t rank_of(const ExactMatrix& m) { return rref(m).pivot_cols.size(); }

ExactMatrix kernel_basis(const ExactMatrix& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  ExactMatrix k(m.cols(), free_cols.size());
  for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
    std::size_t fc = free_cols[fi];
    k.at(fc, fi) = 1;
    for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
      k.at(r.pivot_cols[pi], fi) = -r.m.at(pi, fc);
  }
  return k;
}

ExactMatrix image_basis(const ExactMatrix& m) {
  Rref r = rref(m);
  ExactMatrix b(m.rows(), r.pivot_cols.size());
  for (std::size_t j = 0; j < r.pivot_cols.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) b.at(i, j) = m.at(i, r.pivot_cols[j]);
  return b;
}

ExactMatrix sum_basis(const ExactMatrix& a, const ExactMatrix& b) {
  return image_basis(ExactMatrix::hstack(a, b));
}

ExactMatrix intersection_basis(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return ExactMatrix(a.rows(), 0);
  ExactMatrix neg_b = Rat(-1) * b;
  ExactMatrix k = kernel_basis(ExactMatrix::hstack(a, neg_b));
  // first block of each kernel vector gives coordinates in a
  ExactMatrix coeffs(a.cols(), k.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) coeffs.at(i, j) = k.at(i, j);
  return image_basis(a * coeffs);
}

bool subspace_contains(const ExactMatrix& space, const ExactMatrix& vectors) {
  if (vectors.cols() == 0) return true;
  return rank_of(ExactMatrix::hstack(space, vectors)) == rank_of(space);
}

bool same_subspace(const ExactMatrix& a, const ExactMatrix& b) {
  return subspace_contains(a, b) && subspace_contains(b, a);
}

QuotientSpace quotient_by(const ExactMatrix& subspace, std::size_t ambient_dim) {
  require(subspace.cols() == 0 || subspace.rows() == ambient_dim, Errc::ShapeMismatch,
          "subspace ambient dimension mismatch");
  ExactMatrix basis =
      subspace.cols() == 0 ? ExactMatrix(ambient_dim, 0) : image_basis(subspace);
  std::size_t r = basis.cols();
  // complete with standard basis vectors
  ExactMatrix full = ExactMatrix::hstack(basis, ExactMatrix::identity(ambient_dim));
  Rref rr = rref(full);
  std::vector<std::size_t> complement;
  for (auto c : rr.pivot_cols)
    if (c >= r) complement.push_back(c - r);
  require(r + complement.size() == ambient_dim, Errc::ShapeMismatch, "quotient completion");

  QuotientSpace q;
  q.dim = complement.size();
  q.section = ExactMatrix(ambient_dim, q.dim);
  for (std::size_t j = 0; j < q.dim; ++j) q.section.at(complement[j], j) = 1;

  // invert [basis | section]; the bottom rows of the inverse give coordinates
  // along the complement, i.e. the quotient projection
  ExactMatrix m = ExactMatrix::hstack(basis, q.section);
  ExactMatrix aug = ExactMatrix::hstack(m, ExactMatrix::identity(ambient_dim));
  Rref solved = rref(aug);
  require(solved.pivot_cols.size() >= ambient_dim, Errc::ShapeMismatch, "quotient basis singular");
  ExactMatrix inv(ambient_dim, ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i)
    for (std::size_t j = 0; j < ambient_dim; ++j) inv.at(i, j) = solved.m.at(i, ambient_dim + j);
  q.proj = ExactMatrix(q.dim, ambient_dim);
  for (std::size_t i = 0; i < q.dim; ++i)
    for (std::size_t j = 0; j < ambient_dim; ++j) q.proj.at(i, j) = inv.at(r + i, j);
  return q;
}

ExactMatrix solve(const ExactMatrix& a, const ExactMatrix& b) {
  require(a.rows() == b.rows(), Errc::ShapeMismatch, "solve shape");
  ExactMatrix aug = ExactMatrix::hstack(a, b);
  Rref rr = rref(aug);
  for (auto c : rr.pivot_cols)
    require(c < a.cols(), Errc::ShapeMismatch, "inconsistent linear system");
  ExactMatrix x(a.cols(), b.cols());
  for (std::size_t pi = 0; pi < rr.pivot_cols.size(); ++pi)
    for (std::size_t j = 0; j < b.cols(); ++j)
      x.at(rr.pivot_cols[pi], j) = rr.m.at(pi, a.cols() + j);
  return x;
}

}  // namespace dirac
