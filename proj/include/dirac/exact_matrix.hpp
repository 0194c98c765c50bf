#pragma once

#include <cstddef>
#include <vector>

#include "dirac/errors.hpp"
#include "dirac/rational.hpp"

namespace dirac {

// Dense matrix over exact rationals.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Rat(0)) {}

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : e_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, Errc::ShapeMismatch, "matrix add");
    ExactMatrix r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
    return r;
  }
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, Errc::ShapeMismatch, "matrix sub");
    ExactMatrix r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
    return r;
  }
  friend ExactMatrix operator*(const Rat& c, const ExactMatrix& a) {
    ExactMatrix r = a;
    for (auto& x : r.e_) x *= c;
    return r;
  }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    require(a.cols_ == b.rows_, Errc::ShapeMismatch, "matrix mul");
    ExactMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b.at(k, j) == 0) continue;
          r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
      }
    return r;
  }

  ExactMatrix transpose() const {
    ExactMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  // columns [c0, c1) as a new matrix
  ExactMatrix columns(std::size_t c0, std::size_t c1) const {
    ExactMatrix r(rows_, c1 - c0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = c0; j < c1; ++j) r.at(i, j - c0) = at(i, j);
    return r;
  }

  static ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b) {
    require(a.rows() == b.rows(), Errc::ShapeMismatch, "hstack");
    ExactMatrix r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
      for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
  }

  // block diagonal
  static ExactMatrix dsum(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> e_;
};

}  // namespace dirac
