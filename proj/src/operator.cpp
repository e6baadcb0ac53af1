#include "qjk/operator.hpp"

#include <algorithm>

namespace qjk {

std::size_t tensor_extent(int arity, int dim) {
  if (arity < 0 || dim < 1) throw DomainError("tensor_extent: invalid arity/dimension");
  std::size_t extent = 1;
  for (int k = 0; k < arity; ++k) extent *= static_cast<std::size_t>(dim);
  return extent;
}

template <class Real>
Operator<Real>::Operator(int arity, int dim, std::vector<Triplet> triplets)
    : arity_(arity), dim_(dim), extent_(tensor_extent(arity, dim)) {
  build(std::move(triplets));
}

template <class Real>
void Operator<Real>::build(std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.in >= extent_ || t.out >= extent_) throw DomainError("operator entry index out of range");
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.in != b.in ? a.in < b.in : a.out < b.out;
  });
  std::vector<Triplet> merged;
  merged.reserve(triplets.size());
  for (const auto& t : triplets) {
    if (!merged.empty() && merged.back().in == t.in && merged.back().out == t.out) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == Scalar(0); });

  col_ptr_.assign(extent_ + 1, 0);
  row_ptr_.assign(extent_ + 1, 0);
  for (const auto& t : merged) {
    ++col_ptr_[t.in + 1];
    ++row_ptr_[t.out + 1];
  }
  for (std::size_t k = 0; k < extent_; ++k) {
    col_ptr_[k + 1] += col_ptr_[k];
    row_ptr_[k + 1] += row_ptr_[k];
  }
  col_entries_.resize(merged.size());
  row_entries_.resize(merged.size());
  std::vector<std::size_t> row_fill(row_ptr_.begin(), row_ptr_.end() - 1);
  std::size_t c = 0;
  for (const auto& t : merged) {
    col_entries_[c++] = Entry{t.out, t.value};
    row_entries_[row_fill[t.out]++] = Entry{t.in, t.value};
  }
}

template <class Real>
Operator<Real> Operator<Real>::identity(int arity, int dim) {
  const std::size_t extent = tensor_extent(arity, dim);
  std::vector<Triplet> t;
  t.reserve(extent);
  for (std::size_t k = 0; k < extent; ++k) t.push_back({k, k, Scalar(1)});
  return Operator(arity, dim, std::move(t));
}

template <class Real>
Operator<Real> Operator<Real>::diagonal(int dim, std::span<const Scalar> values) {
  if (values.size() != static_cast<std::size_t>(dim)) throw DomainError("diagonal: size mismatch");
  std::vector<Triplet> t;
  for (std::size_t k = 0; k < values.size(); ++k) t.push_back({k, k, values[k]});
  return Operator(1, dim, std::move(t));
}

template <class Real>
Operator<Real> Operator<Real>::from_dense(int arity, int dim, const Dense& m, Real drop_below) {
  const std::size_t extent = tensor_extent(arity, dim);
  if (static_cast<std::size_t>(m.rows()) != extent || static_cast<std::size_t>(m.cols()) != extent) {
    throw DomainError("from_dense: matrix shape does not match arity/dimension");
  }
  std::vector<Triplet> t;
  for (std::size_t in = 0; in < extent; ++in) {
    for (std::size_t out = 0; out < extent; ++out) {
      const Scalar v = m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
      if (std::abs(v) > drop_below) t.push_back({in, out, v});
    }
  }
  return Operator(arity, dim, std::move(t));
}

template <class Real>
typename Operator<Real>::Scalar Operator<Real>::at(std::size_t in, std::size_t out) const {
  const auto col = column(in);
  const auto it = std::lower_bound(col.begin(), col.end(), out,
                                   [](const Entry& e, std::size_t key) { return e.index < key; });
  return (it != col.end() && it->index == out) ? it->value : Scalar(0);
}

template <class Real>
std::span<const typename Operator<Real>::Entry> Operator<Real>::column(std::size_t in) const {
  return {col_entries_.data() + col_ptr_[in], col_ptr_[in + 1] - col_ptr_[in]};
}

template <class Real>
std::span<const typename Operator<Real>::Entry> Operator<Real>::row(std::size_t out) const {
  return {row_entries_.data() + row_ptr_[out], row_ptr_[out + 1] - row_ptr_[out]};
}

template <class Real>
typename Operator<Real>::Dense Operator<Real>::dense() const {
  const auto n = static_cast<Eigen::Index>(extent_);
  Dense m = Dense::Zero(n, n);
  for (std::size_t in = 0; in < extent_; ++in) {
    for (const auto& e : column(in)) {
      m(static_cast<Eigen::Index>(e.index), static_cast<Eigen::Index>(in)) = e.value;
    }
  }
  return m;
}

template <class Real>
std::vector<typename Operator<Real>::Triplet> Operator<Real>::triplets() const {
  std::vector<Triplet> t;
  t.reserve(nonzeros());
  for (std::size_t in = 0; in < extent_; ++in) {
    for (const auto& e : column(in)) t.push_back({in, e.index, e.value});
  }
  return t;
}

template <class Real>
double Operator<Real>::max_abs() const {
  double m = 0.0;
  for (const auto& e : col_entries_) m = std::max(m, static_cast<double>(std::abs(e.value)));
  return m;
}

template <class Real>
Operator<Real> Operator<Real>::then(const Operator& next) const {
  if (next.arity_ != arity_ || next.dim_ != dim_) throw DomainError("then: operator shape mismatch");
  std::vector<Scalar> acc(extent_, Scalar(0));
  std::vector<char> seen(extent_, 0);
  std::vector<std::size_t> touched;
  std::vector<Triplet> result;
  for (std::size_t in = 0; in < extent_; ++in) {
    for (const auto& mid : column(in)) {
      for (const auto& out : next.column(mid.index)) {
        if (!seen[out.index]) {
          seen[out.index] = 1;
          touched.push_back(out.index);
        }
        acc[out.index] += mid.value * out.value;
      }
    }
    for (const auto out : touched) {
      result.push_back({in, out, acc[out]});
      acc[out] = Scalar(0);
      seen[out] = 0;
    }
    touched.clear();
  }
  return Operator(arity_, dim_, std::move(result));
}

template <class Real>
Operator<Real> Operator<Real>::tensor(const Operator& rhs) const {
  if (rhs.dim_ != dim_) throw DomainError("tensor: dimension mismatch");
  std::vector<Triplet> t;
  t.reserve(nonzeros() * rhs.nonzeros());
  for (std::size_t ia = 0; ia < extent_; ++ia) {
    for (const auto& a : column(ia)) {
      for (std::size_t ib = 0; ib < rhs.extent_; ++ib) {
        for (const auto& b : rhs.column(ib)) {
          t.push_back({ia * rhs.extent_ + ib, a.index * rhs.extent_ + b.index, a.value * b.value});
        }
      }
    }
  }
  return Operator(arity_ + rhs.arity_, dim_, std::move(t));
}

template <class Real>
Operator<Real> Operator<Real>::scaled(const Scalar& factor) const {
  auto t = triplets();
  for (auto& e : t) e.value *= factor;
  return Operator(arity_, dim_, std::move(t));
}

template <class Real>
double max_abs_diff(const Operator<Real>& a, const Operator<Real>& b) {
  if (a.arity() != b.arity() || a.dim() != b.dim()) throw DomainError("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t in = 0; in < a.extent(); ++in) {
    const auto ca = a.column(in);
    const auto cb = b.column(in);
    std::size_t x = 0, y = 0;
    while (x < ca.size() || y < cb.size()) {
      Complex<Real> d;
      if (y == cb.size() || (x < ca.size() && ca[x].index < cb[y].index)) {
        d = ca[x++].value;
      } else if (x == ca.size() || cb[y].index < ca[x].index) {
        d = -cb[y++].value;
      } else {
        d = ca[x++].value - cb[y++].value;
      }
      worst = std::max(worst, static_cast<double>(std::abs(d)));
    }
  }
  return worst;
}

template <class Real>
Operator<Real> partial_trace_last(const Operator<Real>& f) {
  if (f.arity() < 1) throw DomainError("partial_trace_last: arity must be >= 1");
  const std::size_t n = static_cast<std::size_t>(f.dim());
  std::vector<typename Operator<Real>::Triplet> t;
  for (std::size_t in = 0; in < f.extent(); ++in) {
    const std::size_t j = in % n;
    for (const auto& e : f.column(in)) {
      if (e.index % n == j) t.push_back({in / n, e.index / n, e.value});
    }
  }
  return Operator<Real>(f.arity() - 1, f.dim(), std::move(t));
}

template <class Real>
Operator<Real> embed(const Operator<Real>& op, int before, int after) {
  Operator<Real> result = before > 0 ? Operator<Real>::identity(before, op.dim()).tensor(op) : op;
  if (after > 0) result = result.tensor(Operator<Real>::identity(after, op.dim()));
  return result;
}

template class Operator<double>;
template class Operator<long double>;
template double max_abs_diff(const Operator<double>&, const Operator<double>&);
template double max_abs_diff(const Operator<long double>&, const Operator<long double>&);
template Operator<double> partial_trace_last(const Operator<double>&);
template Operator<long double> partial_trace_last(const Operator<long double>&);
template Operator<double> embed(const Operator<double>&, int, int);
template Operator<long double> embed(const Operator<long double>&, int, int);

}  // namespace qjk
