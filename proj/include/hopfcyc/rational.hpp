#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hopfcyc {

// Exact scalar type used everywhere; no floating point in any computation path.
using Rational = mpq_class;

// Raised for malformed user input (bad rational literal, bad problem file,
// unknown builtin, degree-cap violations).  The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a requested computation would exceed the configured degree cap.
struct degree_cap_error : input_error {
  using input_error::input_error;
};

// Raised when well-formed input fails a mathematical precondition (an identity
// the construction needs does not hold).  The CLI maps this to exit code 1.
struct math_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses "p", "-p", or "p/q" (base 10).  gmpxx does not canonicalize strings,
// so we reject q = 0 and reduce to lowest terms ourselves.
inline Rational parse_rational(const std::string& text) {
  Rational q;
  try {
    q = Rational(text, 10);
  } catch (const std::invalid_argument&) {
    throw input_error("malformed rational literal: '" + text + "'");
  }
  if (q.get_den() == 0)
    throw input_error("zero denominator in rational literal: '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace hopfcyc
