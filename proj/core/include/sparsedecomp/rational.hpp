#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace sparsedecomp {

// Exact arithmetic everywhere a verifier compares against a threshold.
// Floating point is confined to heuristics that only propose candidates.
// Expression templates are off so these behave as plain value types.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Rat rat(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(num, den);
}

inline BigInt rat_floor(const Rat& x) {
  BigInt q = numerator(x) / denominator(x);
  if (x < 0 && q * denominator(x) != numerator(x)) --q;
  return q;
}

inline BigInt rat_ceil(const Rat& x) {
  BigInt q = numerator(x) / denominator(x);
  if (x > 0 && q * denominator(x) != numerator(x)) ++q;
  return q;
}

inline long long to_ll(const BigInt& x) { return x.convert_to<long long>(); }

inline long long floor_ll(const Rat& x) { return to_ll(rat_floor(x)); }
inline long long ceil_ll(const Rat& x) { return to_ll(rat_ceil(x)); }

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

// Accepts "3", "-3", "3/4". Rejects anything else (notably decimal floats):
// configs feed verifiers, and verifiers compare exactly.
Rat parse_rational(const std::string& s);

std::string rational_to_string(const Rat& x);

} // namespace sparsedecomp
