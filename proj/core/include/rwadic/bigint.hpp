#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace rwadic {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace rwadic
