#include "qjk/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "wavefront.hpp"

namespace qjk {

namespace {

// Dense wavefront buffers are N^n entries; beyond this the evaluation is refused.
constexpr std::size_t kMaxStateExtent = std::size_t(1) << 25;

template <class Real>
Complex<Real> ipow(Complex<Real> base, int exponent) {
  if (exponent < 0) {
    base = Complex<Real>(1) / base;
    exponent = -exponent;
  }
  Complex<Real> result(1);
  for (int k = 0; k < exponent; ++k) result *= base;
  return result;
}

template <class Real>
class Kernel {
 public:
  Kernel(const EnhancedYB<Real>& s, int strands) : s_(s), strands_(strands), dim_(static_cast<std::size_t>(s.n())) {
    stride_.assign(static_cast<std::size_t>(strands) + 1, 1);
    for (int k = strands - 1; k >= 0; --k) stride_[static_cast<std::size_t>(k)] = stride_[k + 1] * dim_;
    extent_ = stride_[0];
  }

  std::size_t extent() const { return extent_; }
  std::size_t stride(int k) const { return stride_[static_cast<std::size_t>(k)]; }
  std::size_t dim() const { return dim_; }

  void forward(int letter, const Wavefront<Real>& src, Wavefront<Real>& dst) const {
    const Operator<Real>& r = letter > 0 ? s_.r : s_.r_inverse;
    const std::size_t st = stride_[static_cast<std::size_t>(std::abs(letter) + 1)];
    const std::size_t block = dim_ * dim_;
    for (const auto idx : src.touched()) {
      const auto v = src.at(idx);
      if (v == Complex<Real>(0)) continue;
      const std::size_t pair = (idx / st) % block;
      const std::size_t base = idx - pair * st;
      for (const auto& e : r.column(pair)) dst.add(base + e.index * st, v * e.value);
    }
  }

  // Transpose action: dst[in] += R[out <- in] src[out].
  void backward(int letter, const Wavefront<Real>& src, Wavefront<Real>& dst) const {
    const Operator<Real>& r = letter > 0 ? s_.r : s_.r_inverse;
    const std::size_t st = stride_[static_cast<std::size_t>(std::abs(letter) + 1)];
    const std::size_t block = dim_ * dim_;
    for (const auto idx : src.touched()) {
      const auto v = src.at(idx);
      if (v == Complex<Real>(0)) continue;
      const std::size_t pair = (idx / st) % block;
      const std::size_t base = idx - pair * st;
      for (const auto& e : r.row(pair)) dst.add(base + e.index * st, v * e.value);
    }
  }

  // mu on strand `pos`.
  void mu(int pos, const Wavefront<Real>& src, Wavefront<Real>& dst) const {
    const std::size_t st = stride_[static_cast<std::size_t>(pos) + 1];
    for (const auto idx : src.touched()) {
      const auto v = src.at(idx);
      const std::size_t digit = (idx / st) % dim_;
      const std::size_t base = idx - digit * st;
      for (const auto& e : s_.mu.column(digit)) dst.add(base + e.index * st, v * e.value);
    }
  }

 private:
  const EnhancedYB<Real>& s_;
  int strands_;
  std::size_t dim_;
  std::size_t extent_ = 1;
  std::vector<std::size_t> stride_;  // stride_[k] = N^{n-k}; digit of strand k at stride_[k+1]
};

// Per-thread buffers.
template <class Real>
struct Workspace {
  explicit Workspace(std::size_t extent) : a(extent), b(extent), c(extent), d(extent) {}
  Wavefront<Real> a, b, c, d;
};

// Runs letters [first, last) over `cur`, using `tmp` as scratch; returns the buffer holding the result.
template <class Real>
Wavefront<Real>* propagate(const Kernel<Real>& k, const std::vector<int>& letters, std::size_t first, std::size_t last,
                           bool forward, Wavefront<Real>* cur, Wavefront<Real>* tmp) {
  if (forward) {
    for (std::size_t p = first; p < last; ++p) {
      k.forward(letters[p], *cur, *tmp);
      cur->clear();
      std::swap(cur, tmp);
    }
  } else {
    for (std::size_t p = last; p > first; --p) {
      k.backward(letters[p - 1], *cur, *tmp);
      cur->clear();
      std::swap(cur, tmp);
    }
  }
  return cur;
}

// (id (x) mu^{(x)(n-1)}) |i, j>, left in the returned buffer.
template <class Real>
Wavefront<Real>* prepare(const Kernel<Real>& k, int strands, std::size_t start, Wavefront<Real>* cur,
                         Wavefront<Real>* tmp) {
  cur->add(start, Complex<Real>(1));
  for (int pos = 1; pos < strands; ++pos) {
    k.mu(pos, *cur, *tmp);
    cur->clear();
    std::swap(cur, tmp);
  }
  return cur;
}

template <class Real>
std::vector<Complex<Real>> evaluate_endomorphism(const EnhancedYB<Real>& s, const BraidWord& w,
                                                 const std::vector<int>& inputs, const EvalOptions& options) {
  const Kernel<Real> kernel(s, w.strands);
  const std::size_t n = kernel.dim();
  const std::size_t rest = kernel.stride(1);  // number of assignments j of strands 2..n
  const std::size_t head = kernel.stride(1);  // stride of the first strand
  // Output rows read back.  Probe mode and exact charge conservation both
  // restrict them to the evaluated inputs.
  std::vector<std::size_t> rows;
  const bool restrict_rows = options.inputs == InputSet::Probe || (options.prune && s.kind == OperatorKind::Jones);
  for (std::size_t o = 0; o < n; ++o) {
    if (!restrict_rows || std::find(inputs.begin(), inputs.end(), static_cast<int>(o)) != inputs.end()) rows.push_back(o);
  }
  const bool charge_pruned = options.prune && s.kind == OperatorKind::Jones;
  const std::size_t split = w.letters.size() / 2;

  // Chunk size depends only on the problem, never on the thread count.
  const std::size_t chunk = std::max<std::size_t>(16, (rest + 1023) / 1024);
  const std::size_t chunks = (rest + chunk - 1) / chunk;
  std::vector<std::vector<Complex<Real>>> partial(chunks);

  auto run_chunk = [&](std::size_t c, Workspace<Real>& ws) {
    std::vector<Complex<Real>> t(n * n, Complex<Real>(0));
    std::vector<std::vector<std::pair<std::size_t, Complex<Real>>>> halves(inputs.size());
    const std::size_t end = std::min(rest, (c + 1) * chunk);
    for (std::size_t j = c * chunk; j < end; ++j) {
      if (options.strategy == Strategy::Forward) {
        for (const int i : inputs) {
          auto* start = prepare(kernel, w.strands, static_cast<std::size_t>(i) * head + j, &ws.a, &ws.b);
          auto* out = propagate(kernel, w.letters, 0, w.letters.size(), true, start, start == &ws.a ? &ws.b : &ws.a);
          for (std::size_t o = 0; o < n; ++o) t[o * n + static_cast<std::size_t>(i)] += out->at(o * head + j);
          out->clear();
        }
        continue;
      }
      for (std::size_t p = 0; p < inputs.size(); ++p) {
        auto* start = prepare(kernel, w.strands, static_cast<std::size_t>(inputs[p]) * head + j, &ws.a, &ws.b);
        auto* out = propagate(kernel, w.letters, 0, split, true, start, start == &ws.a ? &ws.b : &ws.a);
        halves[p].clear();
        for (const auto idx : out->touched()) halves[p].emplace_back(idx, out->at(idx));
        out->clear();
      }
      for (const std::size_t o : rows) {
        ws.c.add(o * head + j, Complex<Real>(1));
        auto* back = propagate(kernel, w.letters, split, w.letters.size(), false, &ws.c, &ws.d);
        for (std::size_t p = 0; p < inputs.size(); ++p) {
          if (charge_pruned && static_cast<std::size_t>(inputs[p]) != o) continue;
          Complex<Real> acc(0);
          for (const auto& [idx, v] : halves[p]) acc += v * back->at(idx);
          t[o * n + static_cast<std::size_t>(inputs[p])] += acc;
        }
        back->clear();
      }
    }
    partial[c] = std::move(t);
  };

  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(chunks)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      Workspace<Real> ws(kernel.extent());
      for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c, ws);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = chunks;
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Complex<Real>> total(n * n, Complex<Real>(0));
  for (const auto& t : partial) {
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += t[k];
  }
  return total;
}

template <class Real>
Complex<Real> normalization(const EnhancedYB<Real>& s, const BraidWord& w) {
  return ipow(s.alpha, -writhe(w)) * ipow(s.beta, -w.strands);
}

template <class Real>
void check_shape(const EnhancedYB<Real>& s, const BraidWord& w) {
  if (w.strands < 1) throw DomainError("braid needs at least one strand");
  for (const int g : w.letters) {
    if (g == 0 || std::abs(g) >= w.strands) throw DomainError("braid letter out of range");
  }
  std::size_t extent = 1;
  for (int k = 0; k < w.strands; ++k) {
    extent *= static_cast<std::size_t>(s.n());
    if (extent > kMaxStateExtent) {
      throw DomainError("state space N^n too large for " + std::to_string(w.strands) + " strands at N=" +
                        std::to_string(s.n()));
    }
  }
}

}  // namespace

template <class Real>
SparseState<Real> braid_operator_apply(const EnhancedYB<Real>& s, const BraidWord& w, const SparseState<Real>& state) {
  check_shape(s, w);
  const Kernel<Real> kernel(s, w.strands);
  Wavefront<Real> a(kernel.extent()), b(kernel.extent());
  for (const auto& [idx, v] : state) {
    if (idx >= kernel.extent()) throw DomainError("braid_operator_apply: state index out of range");
    a.add(idx, v);
  }
  auto* out = propagate(kernel, w.letters, 0, w.letters.size(), true, &a, &b);
  SparseState<Real> result;
  for (const auto idx : out->touched()) {
    if (out->at(idx) != Complex<Real>(0)) result.emplace_back(idx, out->at(idx));
  }
  std::sort(result.begin(), result.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return result;
}

template <class Real>
TangleValue<Real> one_one_invariant(const EnhancedYB<Real>& s, const BraidWord& w, const EvalOptions& options) {
  check_shape(s, w);
  const int n = s.n();
  TangleValue<Real> value;
  value.n = n;
  value.kind = s.kind;
  value.word = format_braid(w);
  value.writhe = writhe(w);
  value.components = closure_components(w);
  if (options.inputs == InputSet::Probe) {
    value.inputs = {0, n - 1};
  } else {
    for (int i = 0; i < n; ++i) value.inputs.push_back(i);
  }
  value.endomorphism = evaluate_endomorphism(s, w, value.inputs, options);

  const auto nn = static_cast<std::size_t>(n);
  Complex<Real> mean(0);
  for (const int i : value.inputs) mean += value.endomorphism[static_cast<std::size_t>(i) * nn + i];
  mean /= static_cast<Real>(value.inputs.size());
  double spread = 0.0;
  for (const int i : value.inputs) {
    const auto col = static_cast<std::size_t>(i);
    for (std::size_t o = 0; o < nn; ++o) {
      const auto entry = value.endomorphism[o * nn + col];
      spread = std::max(spread, static_cast<double>(std::abs(o == col ? entry - mean : entry)));
    }
  }
  value.raw = mean;
  value.scalarness_deviation = spread / std::max(1.0, static_cast<double>(std::abs(mean)));
  value.scalar = ensure_finite(Complex<Real>(normalization(s, w) * mean), "one_one_invariant");
  if (options.enforce_scalar && !options.tol.passes(value.scalarness_deviation, 1.0, n)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e > %.3e", value.scalarness_deviation, options.tol.threshold(1.0, n));
    throw IntegrityError("endomorphism for '" + value.word + "' (" + std::string(to_string(s.kind)) +
                         ", N=" + std::to_string(n) + ") is not scalar: relative deviation " + buf);
  }
  return value;
}

template <class Real>
Complex<Real> closed_trace_invariant(const EnhancedYB<Real>& s, const BraidWord& w, const EvalOptions& options) {
  EvalOptions full = options;
  full.inputs = InputSet::All;
  full.enforce_scalar = false;
  const auto value = one_one_invariant(s, w, full);
  const auto n = static_cast<std::size_t>(s.n());
  Complex<Real> trace(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : s.mu.column(i)) trace += value.endomorphism[i * n + e.index] * e.value;
  }
  return normalization(s, w) * trace;
}

template <class Real>
CheckReport agreement_check(const EnhancedYB<Real>& jones, const EnhancedYB<Real>& kashaev, const BraidWord& w,
                            const EvalOptions& options) {
  if (jones.kind != OperatorKind::Jones || kashaev.kind != OperatorKind::Kashaev || jones.n() != kashaev.n()) {
    throw DomainError("agreement_check: expects a Jones and a Kashaev operator at the same N");
  }
  const auto j = one_one_invariant(jones, w, options);
  const auto k = one_one_invariant(kashaev, w, options);
  CheckReport r;
  r.name = "agreement";
  r.n = jones.n();
  r.max_deviation = static_cast<double>(std::abs(j.scalar - k.scalar));
  r.magnitude = static_cast<double>(std::abs(j.scalar));
  r.threshold = options.tol.threshold(r.magnitude, 1.0);
  r.pass = options.tol.passes(r.max_deviation, r.magnitude, 1.0);
  r.detail = j.word;
  return r;
}

std::vector<std::pair<std::string, BraidWord>> markov_variants(const BraidWord& w) {
  std::vector<std::pair<std::string, BraidWord>> out;
  const std::size_t rotations = w.letters.empty() ? 0 : std::min<std::size_t>(w.letters.size() - 1, 3);
  for (std::size_t k = 1; k <= rotations; ++k) out.emplace_back("rotate " + std::to_string(k), rotate(w, k));
  for (int g = 1; g < w.strands; ++g) {
    out.emplace_back("conjugate " + std::to_string(g), conjugate(w, g));
    out.emplace_back("conjugate " + std::to_string(-g), conjugate(w, -g));
  }
  out.emplace_back("stabilize +", stabilize(w, true));
  out.emplace_back("stabilize -", stabilize(w, false));
  return out;
}

#define QJK_INSTANTIATE(Real)                                                                                 \
  template SparseState<Real> braid_operator_apply(const EnhancedYB<Real>&, const BraidWord&,                  \
                                                  const SparseState<Real>&);                                  \
  template TangleValue<Real> one_one_invariant(const EnhancedYB<Real>&, const BraidWord&, const EvalOptions&); \
  template Complex<Real> closed_trace_invariant(const EnhancedYB<Real>&, const BraidWord&, const EvalOptions&); \
  template CheckReport agreement_check(const EnhancedYB<Real>&, const EnhancedYB<Real>&, const BraidWord&,    \
                                       const EvalOptions&);

QJK_INSTANTIATE(double)
QJK_INSTANTIATE(long double)

}  // namespace qjk
