#pragma once

#include <cstddef>
#include <vector>

#include "qjk/common.hpp"

namespace qjk {

// Sparse state on (C^N)^{(x)k} held in a dense buffer plus a touched list.
template <class Real>
class Wavefront {
 public:
  explicit Wavefront(std::size_t extent) : amp_(extent, Complex<Real>(0)), seen_(extent, 0) {}

  void add(std::size_t idx, const Complex<Real>& v) {
    if (!seen_[idx]) {
      seen_[idx] = 1;
      touched_.push_back(idx);
    }
    amp_[idx] += v;
  }
  void clear() {
    for (auto idx : touched_) {
      amp_[idx] = Complex<Real>(0);
      seen_[idx] = 0;
    }
    touched_.clear();
  }
  const std::vector<std::size_t>& touched() const { return touched_; }
  const Complex<Real>& at(std::size_t idx) const { return amp_[idx]; }

 private:
  std::vector<Complex<Real>> amp_;
  std::vector<char> seen_;
  std::vector<std::size_t> touched_;
};

}  // namespace qjk
