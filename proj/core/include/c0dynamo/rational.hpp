#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace c0dynamo {

// All layout geometry is done in exact rational arithmetic; binary64 enters
// only at evaluation time.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(std::int64_t num, std::int64_t den = 1) { return Rat(num, den); }

// Accepts "p", "-p", "p/q" with arbitrary-size integers. Anything else
// (floats, exponents, empty fields) is rejected.
Rat parse_rational(const std::string& text);

// Lowest terms; "p" when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rat& value);

double to_double(const Rat& value);

// Exact value of a finite binary64.
Rat rat_from_double(double x);

Rat rat_abs(const Rat& value);

}  // namespace c0dynamo
