#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mathgen/numeric.hpp"

namespace mathgen {

struct PrimePower {
  BigInt prime;
  unsigned multiplicity = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct DivRem {
  BigInt quotient;
  BigInt remainder;
  friend bool operator==(const DivRem&, const DivRem&) = default;
};

/// Non-negative; gcd(0, 0) = 0.
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// Deterministic Miller-Rabin below 3.3e24 (GMP's probabilistic test above).
bool is_prime(const BigInt& n);
/// Increasing primes with multiplicities. Throws InvalidInput for n < 2.
std::vector<PrimePower> prime_factorize(const BigInt& n);
/// Primes listed with repetition: 64372 -> "2, 2, 7, 11, 11, 19".
std::string format_prime_factors(const std::vector<PrimePower>& factors);

/// Floor division with 0 <= r < b. Throws InvalidInput for b <= 0.
DivRem div_remainder(const BigInt& a, const BigInt& b);

/// Largest m >= 0 with m^k <= n.
BigInt integer_root_floor(const BigInt& n, unsigned k);
/// The integer closest to the real k-th root of n (n >= 0, k >= 2). Ties
/// cannot occur for integer n.
BigInt nearest_integer_root(const BigInt& n, unsigned k);

/// Throws InvalidInput for radix outside [2, 16].
BaseNumeral base_convert(const BaseNumeral& x, int to_radix);

/// Digit at 10^place (place 1 = tens, -1 = tenths); 0 beyond the numeral.
int place_value(const ExactDecimal& x, int place);
/// Rounds to a multiple of 10^(-places): places = 3 keeps three decimals,
/// places = -1 rounds to tens.
ExactDecimal round_to_place(const ExactDecimal& x, int places, HalfRule rule = HalfRule::AwayFromZero);

/// d | n. Throws InvalidInput for d = 0.
bool is_factor(const BigInt& d, const BigInt& n);

/// Named digit positions used in questions ("tens", "thousandths", ...).
/// Returns the power of ten or throws InvalidInput for an unknown name.
int place_from_name(std::string_view name);
std::string place_name(int place);
/// Largest power of ten with a name (for integer places).
int max_named_place();

/// Lower/upper bounds on pi(x) used to credit prime sampling; both valid for x >= 17.
double prime_count_lower(double x);
double prime_count_upper(double x);

}  // namespace mathgen
