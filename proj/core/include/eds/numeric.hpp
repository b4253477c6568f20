#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace eds {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// "7", "-3/4"; a denominator of 1 is suppressed.
std::string rat_to_string(const Rat& r);

Int rat_num(const Rat& r);
Int rat_den(const Rat& r);

Rat rat_pow(const Rat& base, unsigned e);

}  // namespace eds
