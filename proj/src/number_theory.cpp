#include "mathgen/number_theory.hpp"

#include <array>
#include <cmath>

#include "mathgen/errors.hpp"

namespace mathgen {

BigInt gcd(const BigInt& a, const BigInt& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigInt(std::move(g));
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigInt(std::move(l));
}

namespace {

// Gaps between consecutive residues coprime to 30, starting from 7.
constexpr std::array<unsigned, 8> kWheelGaps = {4, 2, 4, 2, 4, 6, 2, 6};

}  // namespace

bool is_prime(const BigInt& n) {
  const mpz_class& v = n.raw();
  if (v < 2) return false;
  static const unsigned long kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long p : kBases) {
    if (v == p) return true;
    if (mpz_divisible_ui_p(v.get_mpz_t(), p)) return false;
  }
  // Miller-Rabin with the first 13 prime bases is exact below 3.3e24.
  static const mpz_class kExactBound("3317044064679887385961981");
  if (v >= kExactBound) return mpz_probab_prime_p(v.get_mpz_t(), 40) != 0;
  mpz_class d = v - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  mpz_class x, m1 = v - 1;
  for (unsigned long a : kBases) {
    mpz_class base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), v.get_mpz_t());
    if (x == 1 || x == m1) continue;
    bool witness = true;
    for (unsigned long r = 1; r < s && witness; ++r) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, v.get_mpz_t());
      if (x == m1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

std::vector<PrimePower> prime_factorize(const BigInt& n) {
  if (n < BigInt(2)) throw InvalidInput("prime_factorize requires n >= 2, got " + n.to_string());
  mpz_class rest = n.raw();
  std::vector<PrimePower> out;
  // The walk bound tracks `rest`, so re-run until no divisor is found.
  unsigned long d = 2;
  std::size_t i = 0;
  auto take = [&](unsigned long p) {
    unsigned m = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++m;
    }
    if (m > 0) out.push_back({BigInt(p), m});
  };
  for (unsigned long p : {2UL, 3UL, 5UL}) take(p);
  d = 7;
  while (mpz_class(d) * d <= rest) {
    take(d);
    d += kWheelGaps[i];
    i = (i + 1) % kWheelGaps.size();
  }
  if (rest > 1) out.push_back({BigInt(rest), 1});
  return out;
}

std::string format_prime_factors(const std::vector<PrimePower>& factors) {
  std::string out;
  for (const auto& f : factors) {
    for (unsigned m = 0; m < f.multiplicity; ++m) {
      if (!out.empty()) out += ", ";
      out += f.prime.to_string();
    }
  }
  return out;
}

DivRem div_remainder(const BigInt& a, const BigInt& b) {
  if (b.sign() <= 0) throw InvalidInput("div_remainder requires b > 0, got " + b.to_string());
  return {floor_div(a, b), floor_mod(a, b)};
}

BigInt integer_root_floor(const BigInt& n, unsigned k) {
  if (n.sign() < 0) throw InvalidInput("root of negative number");
  if (k == 0) throw InvalidInput("zeroth root");
  mpz_class r;
  mpz_root(r.get_mpz_t(), n.raw().get_mpz_t(), k);
  return BigInt(std::move(r));
}

BigInt nearest_integer_root(const BigInt& n, unsigned k) {
  if (k < 2) throw InvalidInput("root order must be at least 2");
  BigInt f = integer_root_floor(n, k);
  // f + 1 is nearer iff n >= (f + 1/2)^k, i.e. 2^k n >= (2f + 1)^k.
  if (BigInt(2).pow(k) * n >= (BigInt(2) * f + BigInt(1)).pow(k)) return f + BigInt(1);
  return f;
}

BaseNumeral base_convert(const BaseNumeral& x, int to_radix) {
  return BaseNumeral::from_value(x.value(), to_radix);
}

int place_value(const ExactDecimal& x, int place) {
  // Shift so the requested digit lands in the units position.
  long shift = static_cast<long>(x.scale()) + place;
  if (shift < 0) return 0;
  BigInt shifted = x.unscaled().abs() / BigInt::pow10(static_cast<unsigned>(shift));
  return static_cast<int>((shifted % BigInt(10)).to_int64());
}

ExactDecimal round_to_place(const ExactDecimal& x, int places, HalfRule rule) {
  long drop = static_cast<long>(x.scale()) - places;
  if (drop <= 0) return x;
  BigInt unit = BigInt::pow10(static_cast<unsigned>(drop));
  BigInt magnitude = x.unscaled().abs();
  BigInt q = magnitude / unit;
  BigInt twice_r = (magnitude % unit) * BigInt(2);
  bool up = twice_r > unit || (twice_r == unit && (rule == HalfRule::AwayFromZero || !q.is_even()));
  if (up) q += BigInt(1);
  if (x.unscaled().sign() < 0) q = -q;
  if (places >= 0) return ExactDecimal(q, static_cast<unsigned>(places));
  return ExactDecimal(q * BigInt::pow10(static_cast<unsigned>(-places)), 0);
}

bool is_factor(const BigInt& d, const BigInt& n) {
  if (d.is_zero()) throw InvalidInput("is_factor requires a nonzero divisor");
  return (n % d).is_zero();
}

namespace {

constexpr std::array<const char*, 20> kIntegerPlaces = {
    "units",          "tens",           "hundreds",        "thousands",
    "ten thousands",  "hundred thousands", "millions",      "ten millions",
    "hundred millions", "billions",     "ten billions",    "hundred billions",
    "trillions",      "ten trillions",  "hundred trillions", "quadrillions",
    "ten quadrillions", "hundred quadrillions", "quintillions", "ten quintillions"};

constexpr std::array<const char*, 6> kFractionPlaces = {
    "tenths", "hundredths", "thousandths", "ten-thousandths", "hundred-thousandths", "millionths"};

}  // namespace

int place_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kIntegerPlaces.size(); ++i) {
    if (name == kIntegerPlaces[i]) return static_cast<int>(i);
  }
  for (std::size_t i = 0; i < kFractionPlaces.size(); ++i) {
    if (name == kFractionPlaces[i]) return -static_cast<int>(i + 1);
  }
  throw InvalidInput("unknown place name: " + std::string(name));
}

std::string place_name(int place) {
  if (place >= 0 && place < static_cast<int>(kIntegerPlaces.size())) return kIntegerPlaces[place];
  if (place < 0 && -place <= static_cast<int>(kFractionPlaces.size())) return kFractionPlaces[-place - 1];
  throw InvalidInput("no name for place " + std::to_string(place));
}

int max_named_place() { return static_cast<int>(kIntegerPlaces.size()) - 1; }

// Rosser and Schoenfeld (1962): x / ln x < pi(x) < 1.25506 x / ln x for x >= 17.
double prime_count_lower(double x) { return x / std::log(x); }
double prime_count_upper(double x) { return 1.25506 * x / std::log(x); }

}  // namespace mathgen
