// popcert: arbitrary-precision degree and coefficient bounds.
#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace popcert {

using BigInt = boost::multiprecision::cpp_int;

// Base-c weighted sum of the multiset: sorted descending, the i-th element
// (1-based) weighs c^(k-i).  Requires at most k elements and c >= 1.
BigInt homo_value(std::vector<BigInt> ms, int k, const BigInt& c);

// Constants (c, d) bounding the runtime of a certified system by c * n^d in
// the maximal depth n of the normal arguments; k is the width budget, p the
// number of defined precedence layers.
struct DegreeBound {
  BigInt c;
  BigInt d;
};
DegreeBound degree_bound(int k, int p);

}  // namespace popcert
