#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <string_view>

namespace shiftgrp {

using Rational = boost::rational<std::int64_t>;

// Accepts "3", "-2", "1/2", "-7/3".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

}  // namespace shiftgrp
