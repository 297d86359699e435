// popcert: degree-bound recurrences with growth guards.
#include <popcert/degree.hpp>

#include <algorithm>
#include <functional>

#include <popcert/error.hpp>

namespace popcert {

namespace {

// Numbers past this bit count abort the computation instead of exhausting
// memory.
constexpr long long kMaxBits = 1LL << 26;

BigInt checked_pow(const BigInt& base, const BigInt& exp) {
  if (exp < 0) throw Error("degree bound: negative exponent");
  if (base == 0) return exp == 0 ? BigInt(1) : BigInt(0);
  if (base == 1) return BigInt(1);
  const long long bbits = static_cast<long long>(msb(base)) + 1;
  if (exp > kMaxBits / bbits)
    throw Error("degree bound: result exceeds the size guard");
  return pow(base, exp.convert_to<unsigned>());
}

}  // namespace

BigInt homo_value(std::vector<BigInt> ms, int k, const BigInt& c) {
  if (static_cast<int>(ms.size()) > k)
    throw Error("weighted sum: more elements than the width allows");
  if (c < 1) throw Error("weighted sum: base must be at least 1");
  std::sort(ms.begin(), ms.end(), std::greater<BigInt>());
  BigInt sum = 0;
  for (size_t i = 0; i < ms.size(); ++i)
    sum += ms[i] * checked_pow(c, BigInt(k) - BigInt(i + 1));
  return sum;
}

DegreeBound degree_bound(int k, int p) {
  if (k < 1) throw Error("degree bound: width must be at least 1");
  if (p < 0)
    throw Error("degree bound: precedence height must be nonnegative");
  BigInt d = k + 1;
  BigInt c = checked_pow(BigInt(k), BigInt(k));
  for (int level = 0; level < p; ++level) {
    const BigInt kd = BigInt(k) * d;
    BigInt e = 0, pw = 1;
    for (int j = 0; j <= k; ++j) {
      e += pw;
      if (j < k) {
        pw *= kd;
        if (pw > 0 && static_cast<long long>(msb(pw)) >= kMaxBits)
          throw Error("degree bound: result exceeds the size guard");
      }
    }
    c = checked_pow(c * BigInt(k), e);
    d = checked_pow(d, BigInt(k)) + 1;
  }
  return {c, d};
}

}  // namespace popcert
