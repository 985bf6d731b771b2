#include "mathgen/sampler.hpp"

#include <cmath>

#include "mathgen/errors.hpp"
#include "mathgen/number_theory.hpp"

namespace mathgen {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : key_(mix64(seed + kGamma)) {}

RandomStream RandomStream::child(std::string_view label) const {
  return RandomStream(mix64(key_ ^ mix64(fnv1a(label))), 0);
}

RandomStream RandomStream::child(std::uint64_t index) const {
  return RandomStream(mix64(key_ + mix64(index ^ 0x6a09e667f3bcc909ULL) * kGamma), 0);
}

std::uint64_t RandomStream::next_u64() { return mix64(key_ + (++counter_) * kGamma); }

std::uint64_t RandomStream::below(std::uint64_t n) {
  if (n == 0) throw InvalidInput("below(0)");
  // Rejection on the top of the range keeps the draw exactly uniform.
  std::uint64_t limit = -n % n;  // 2^64 mod n
  while (true) {
    std::uint64_t x = next_u64();
    if (x >= limit) return x % n;
  }
}

BigInt RandomStream::below(const BigInt& n) {
  if (n.sign() <= 0) throw InvalidInput("below requires n >= 1");
  if (n.raw() <= mpz_class(std::numeric_limits<unsigned long>::max())) {
    return BigInt(static_cast<unsigned long long>(below(static_cast<std::uint64_t>(n.to_uint64()))));
  }
  std::size_t bits = mpz_sizeinbase(n.raw().get_mpz_t(), 2);
  while (true) {
    mpz_class x = 0;
    std::size_t have = 0;
    while (have < bits) {
      x <<= 64;
      mpz_class word;
      std::uint64_t w = next_u64();
      mpz_import(word.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
      x += word;
      have += 64;
    }
    x >>= static_cast<mp_bitcnt_t>(have - bits);
    if (x < n.raw()) return BigInt(std::move(x));
  }
}

long RandomStream::range(long lo, long hi) {
  if (hi < lo) throw InvalidInput("empty range");
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

BigInt RandomStream::range(const BigInt& lo, const BigInt& hi) {
  if (hi < lo) throw InvalidInput("empty range");
  return lo + below(hi - lo + BigInt(1));
}

double RandomStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

// ---------------------------------------------------------------------------

namespace {

double log10_of(const BigInt& x) {
  long exp = 0;
  double d = mpz_get_d_2exp(&exp, x.raw().get_mpz_t());
  return std::log10(d) + static_cast<double>(exp) * std::log10(2.0);
}

bool product_certifies(const BigInt& product, double alpha) {
  if (alpha <= 0) return true;
  if (alpha == std::floor(alpha) && alpha < 100000) {
    return product >= BigInt::pow10(static_cast<unsigned>(alpha));
  }
  return log10_of(product) - 1e-9 >= alpha;
}

}  // namespace

double EntropyBudget::credit() const { return log10_of(product_); }

double EntropyBudget::remaining() const { return std::max(0.0, target_ - credit()); }

bool EntropyBudget::satisfied() const { return product_certifies(product_, target_); }

void EntropyBudget::record(const BigInt& set_size, std::string label) {
  if (set_size.sign() <= 0) throw InvalidInput("set size must be positive");
  product_ *= set_size;
  log_.push_back({set_size, std::move(label)});
}

void EntropyBudget::absorb(const EntropyBudget& child) {
  for (const auto& r : child.log_) record(r.set_size, r.label);
}

bool certifies(const std::vector<DrawRecord>& log, double alpha) {
  BigInt product(1);
  for (const auto& r : log) product *= r.set_size;
  return product_certifies(product, alpha);
}

std::uint64_t draw_from_set(RandomStream& rng, EntropyBudget& budget, std::uint64_t a, std::string label) {
  if (a == 0) throw InvalidInput("draw from an empty set");
  std::uint64_t i = rng.below(a);
  budget.record(BigInt(static_cast<unsigned long long>(a)), std::move(label));
  return i;
}

BigInt draw_from_set(RandomStream& rng, EntropyBudget& budget, const BigInt& a, std::string label) {
  BigInt i = rng.below(a);
  budget.record(a, std::move(label));
  return i;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<BigInt> distinct_primes(const BigInt& m) {
  std::vector<BigInt> out;
  if (m.abs() < BigInt(2)) return out;
  for (const auto& f : prime_factorize(m.abs())) out.push_back(f.prime);
  return out;
}

BigInt multiples_in(const BigInt& d, const BigInt& lo, const BigInt& hi) {
  return floor_div(hi, d) - floor_div(lo - BigInt(1), d);
}

BigInt coprime_count(const CoprimeTo& c) {
  if (c.hi < c.lo) return BigInt(0);
  if (c.m.is_zero()) {
    // Only +-1 are coprime to 0.
    BigInt n(0);
    if (c.lo <= BigInt(-1) && BigInt(-1) <= c.hi) n += BigInt(1);
    if (c.lo <= BigInt(1) && BigInt(1) <= c.hi) n += BigInt(1);
    return n;
  }
  std::vector<BigInt> primes = distinct_primes(c.m);
  BigInt total(0);
  std::size_t subsets = std::size_t{1} << primes.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    BigInt d(1);
    int bits = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        d *= primes[i];
        ++bits;
      }
    }
    BigInt k = multiples_in(d, c.lo, c.hi);
    total += (bits % 2 == 0) ? k : -k;
  }
  return total;
}

}  // namespace

BigInt constraint_size(const IntConstraint& c) {
  BigInt n = std::visit(
      [](const auto& k) -> BigInt {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Symmetric>) {
          if (k.width < BigInt(1)) throw InvalidInput("symmetric set needs width >= 1");
          return BigInt(2) * k.width + BigInt(1);
        } else if constexpr (std::is_same_v<K, FirstPositive>) {
          return k.n;
        } else if constexpr (std::is_same_v<K, CoprimeTo>) {
          return coprime_count(k);
        } else if constexpr (std::is_same_v<K, Nonzero>) {
          if (k.hi < k.lo) return BigInt(0);
          BigInt n = k.hi - k.lo + BigInt(1);
          if (k.lo <= BigInt(0) && BigInt(0) <= k.hi) n -= BigInt(1);
          return n;
        } else {
          return k.hi < k.lo ? BigInt(0) : k.hi - k.lo + BigInt(1);
        }
      },
      c);
  if (n.sign() <= 0) throw InvalidInput("empty constraint set");
  return n;
}

BigInt sample_integer(RandomStream& rng, EntropyBudget& budget, const IntConstraint& c, std::string label) {
  BigInt size = constraint_size(c);
  BigInt value = std::visit(
      [&](const auto& k) -> BigInt {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Symmetric>) {
          return rng.below(size) - k.width;
        } else if constexpr (std::is_same_v<K, FirstPositive>) {
          return rng.below(size) + BigInt(1);
        } else if constexpr (std::is_same_v<K, CoprimeTo>) {
          while (true) {
            BigInt v = rng.range(k.lo, k.hi);
            if (gcd(v, k.m) == BigInt(1)) return v;
          }
        } else if constexpr (std::is_same_v<K, Nonzero>) {
          BigInt v = k.lo + rng.below(size);
          if (k.lo <= BigInt(0) && v.sign() >= 0 && BigInt(0) <= k.hi) v += BigInt(1);
          return v;
        } else {
          return k.lo + rng.below(size);
        }
      },
      c);
  budget.record(size, std::move(label));
  return value;
}

std::vector<EntropyBudget> allocate(const EntropyBudget& parent, const std::vector<double>& weights) {
  double total = 0;
  for (double w : weights) {
    if (!(w > 0)) throw InvalidInput("allocation weights must be positive");
    total += w;
  }
  double rem = parent.remaining();
  std::vector<EntropyBudget> out;
  out.reserve(weights.size());
  for (double w : weights) out.emplace_back(rem * w / total);
  return out;
}

BigInt set_size_for(double alpha) {
  if (alpha <= 0) return BigInt(1);
  if (alpha == std::floor(alpha) && alpha < 100000) return BigInt::pow10(static_cast<unsigned>(alpha));
  // 10^alpha = 10^floor * 10^frac; the +1 absorbs rounding in the fraction.
  double whole = std::floor(alpha);
  double frac = std::pow(10.0, alpha - whole);
  auto scaled = static_cast<unsigned long long>(std::ceil(frac * 1e9)) + 1;
  BigInt n = BigInt(scaled) * BigInt::pow10(static_cast<unsigned>(whole));
  return (n + BigInt(999999999)) / BigInt(1000000000);
}

BigInt symmetric_width_for(double alpha) {
  BigInt n = set_size_for(alpha);
  BigInt w = n / BigInt(2);  // 2*floor(n/2) + 1 >= n
  return w < BigInt(1) ? BigInt(1) : w;
}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::Train:
      return "train";
    case Split::Interpolate:
      return "interpolate";
    case Split::Extrapolate:
      return "extrapolate";
  }
  return "train";
}

Split split_from_name(std::string_view name) {
  if (name == "train") return Split::Train;
  if (name == "interpolate") return Split::Interpolate;
  if (name == "extrapolate") return Split::Extrapolate;
  throw InvalidInput("unknown split: " + std::string(name));
}

double draw_alpha(const AlphaPolicy& policy, Split split, RandomStream& rng, double override_alpha) {
  switch (split) {
    case Split::Train:
      return policy.train_lo + (policy.train_hi - policy.train_lo) * rng.uniform();
    case Split::Interpolate:
      return policy.test_alpha;
    case Split::Extrapolate:
      return override_alpha > 0 ? override_alpha : policy.test_alpha;
  }
  return policy.test_alpha;
}

}  // namespace mathgen
