#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "dirac/errors.hpp"

namespace dirac {

using Int = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

// Exact rational scalar. Expression templates are off so Rat behaves as a
// plain value type everywhere (maps, vectors, structured bindings).
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline std::string to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p", "-p" or "p/q". Used by the matrix JSON formats.
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    require(den != 0, Errc::DatumLoadError, "zero denominator in '" + s + "'");
    return Rat(num, den);
  } catch (const std::runtime_error& e) {
    fail(Errc::DatumLoadError, "bad rational literal '" + s + "'");
  }
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline std::int64_t to_int64(const Rat& r) {
  require(is_integer(r), Errc::IdentityFailed, "expected integer, got " + to_string(r));
  return static_cast<std::int64_t>(numerator(r));
}

}  // namespace dirac
