#pragma once

// Shared vocabulary: scalar types, precision selection, error hierarchy and
// the scale-aware tolerance policy used by every verification routine.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qjk {

enum class Precision { Double, Extended };

std::string_view to_string(Precision p);
Precision parse_precision(std::string_view text);

template <class Real>
using Complex = std::complex<Real>;

// ---------------------------------------------------------------------------
// Errors. Every failure that can reach the C boundary derives from Error and
// carries a category so the C layer can map it onto a status code.

enum class ErrorKind {
  Domain,     // argument outside a documented precondition
  Parse,      // malformed braid text
  Schema,     // knot table / data file violates its schema
  Integrity,  // an identity that must hold failed (axiom, scalarness)
  Numeric,    // NaN/inf or numeric collapse
  Io,
  Usage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::Parse, what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(ErrorKind::Schema, what) {}
};

class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& what) : Error(ErrorKind::Integrity, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

template <class Real>
inline bool is_finite(const Complex<Real>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <class Real>
inline const Complex<Real>& ensure_finite(const Complex<Real>& z, const char* what) {
  if (!is_finite(z)) throw NumericError(std::string("non-finite value in ") + what);
  return z;
}

// ---------------------------------------------------------------------------
// Tolerance policy: a deviation passes when
//   deviation <= base * max(1, magnitude) * dimension.

struct Tolerance {
  double base = 1e-9;

  double threshold(double magnitude, double dimension) const {
    return base * std::max(1.0, magnitude) * std::max(1.0, dimension);
  }
  bool passes(double deviation, double magnitude, double dimension) const {
    return std::isfinite(deviation) && deviation <= threshold(magnitude, dimension);
  }
};

}  // namespace qjk
