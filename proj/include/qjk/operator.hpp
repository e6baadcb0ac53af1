#pragma once

// Linear maps on (C^N)^{(x)k}.
//
// Entry convention: for f(v_{i1} (x) ... (x) v_{ik}) = sum f_{i...}^{j...} v_{j1} (x) ... (x) v_{jk}
// the lower multi-index is the input and the upper one the output.  Multi-indices
// are flattened row-major, first tensor factor most significant: (i, j) -> i*N + j.
//
// Storage is sparse and immutable, kept both column-wise (outputs reachable from
// an input) and row-wise (inputs feeding an output) so that states can be
// propagated forwards and backwards.  dense() exports rows = outputs,
// columns = inputs.

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "qjk/common.hpp"

namespace qjk {

template <class Real>
using DenseMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

std::size_t tensor_extent(int arity, int dim);

template <class Real>
class Operator {
 public:
  using Scalar = Complex<Real>;
  using Dense = DenseMatrix<Real>;

  struct Entry {
    std::size_t index;  // output index in a column, input index in a row
    Scalar value;
  };
  struct Triplet {
    std::size_t in;
    std::size_t out;
    Scalar value;
  };

  Operator() = default;
  // Duplicate (in, out) pairs are summed; exact zeros are dropped.
  Operator(int arity, int dim, std::vector<Triplet> triplets);

  static Operator identity(int arity, int dim);
  static Operator diagonal(int dim, std::span<const Scalar> values);
  // Entries with |value| <= drop_below are omitted.
  static Operator from_dense(int arity, int dim, const Dense& m, Real drop_below = 0);

  int arity() const noexcept { return arity_; }
  int dim() const noexcept { return dim_; }
  std::size_t extent() const noexcept { return extent_; }
  std::size_t nonzeros() const noexcept { return col_entries_.size(); }

  Scalar at(std::size_t in, std::size_t out) const;
  std::span<const Entry> column(std::size_t in) const;
  std::span<const Entry> row(std::size_t out) const;

  Dense dense() const;
  std::vector<Triplet> triplets() const;
  double max_abs() const;

  // Apply *this first, then `next`.
  Operator then(const Operator& next) const;
  // *this acts on the leading tensor factors, `rhs` on the trailing ones.
  Operator tensor(const Operator& rhs) const;
  Operator scaled(const Scalar& factor) const;

 private:
  void build(std::vector<Triplet> triplets);

  int arity_ = 0;
  int dim_ = 0;
  std::size_t extent_ = 0;
  std::vector<std::size_t> col_ptr_;
  std::vector<Entry> col_entries_;
  std::vector<std::size_t> row_ptr_;
  std::vector<Entry> row_entries_;
};

// Maximum entrywise |a - b|; operators must share arity and dimension.
template <class Real>
double max_abs_diff(const Operator<Real>& a, const Operator<Real>& b);

// Operator trace Sp_k over the last tensor factor:
//   Sp_k(f)_{i1..i(k-1)}^{j1..j(k-1)} = sum_j f_{i1..i(k-1) j}^{j1..j(k-1) j}
template <class Real>
Operator<Real> partial_trace_last(const Operator<Real>& f);

// id^{(x)before} (x) op (x) id^{(x)after}
template <class Real>
Operator<Real> embed(const Operator<Real>& op, int before, int after);

}  // namespace qjk
