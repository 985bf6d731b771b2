#pragma once

// Seeded randomness with probability accounting.
//
// Every draw that a question depends on is taken from a set of known size
// a_i and recorded in an EntropyBudget. If the question text determines the
// draws, its probability is at most prod(1/a_i), so a question may be
// emitted once sum(log10 a_i) reaches the target alpha.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mathgen/numeric.hpp"

namespace mathgen {

/// Counter-based splittable generator (splitmix64 finalizer over key+counter).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0);

  RandomStream child(std::string_view label) const;
  RandomStream child(std::uint64_t index) const;

  std::uint64_t next_u64();
  /// Uniform in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n);
  BigInt below(const BigInt& n);
  /// Uniform in [lo, hi].
  long range(long lo, long hi);
  BigInt range(const BigInt& lo, const BigInt& hi);
  /// Uniform in [0, 1).
  double uniform();
  bool coin() { return (next_u64() >> 63) != 0; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) { return xs[below(xs.size())]; }

  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[below(i)]);
  }

  std::uint64_t key() const { return key_; }

 private:
  RandomStream(std::uint64_t key, int) : key_(key) {}
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct DrawRecord {
  BigInt set_size;
  std::string label;
};

class EntropyBudget {
 public:
  explicit EntropyBudget(double target_alpha = 0.0) : target_(target_alpha) {}

  double target() const { return target_; }
  /// log10 of the product of all credited set sizes.
  double credit() const;
  double remaining() const;
  /// Certified: prod(a_i) >= 10^target (exact when target is an integer,
  /// otherwise with 1e-9 slack against the credit).
  bool satisfied() const;

  void record(const BigInt& set_size, std::string label = {});
  void absorb(const EntropyBudget& child);
  const std::vector<DrawRecord>& log() const { return log_; }

 private:
  double target_;
  BigInt product_{1};
  std::vector<DrawRecord> log_;
};

/// Replays a draw log: true iff prod(sizes) >= 10^alpha under the same rule.
bool certifies(const std::vector<DrawRecord>& log, double alpha);

/// Uniform index in [0, a) credited with log10(a).
std::uint64_t draw_from_set(RandomStream& rng, EntropyBudget& budget, std::uint64_t a, std::string label = {});
BigInt draw_from_set(RandomStream& rng, EntropyBudget& budget, const BigInt& a, std::string label = {});

struct Symmetric {
  BigInt width;  // [-width, width], width >= 1
};
struct FirstPositive {
  BigInt n;  // [1, n]
};
struct CoprimeTo {
  BigInt m;
  BigInt lo, hi;
};
struct Nonzero {
  BigInt lo, hi;
};
struct Interval {
  BigInt lo, hi;
};
using IntConstraint = std::variant<Symmetric, FirstPositive, CoprimeTo, Nonzero, Interval>;

/// Size of the constraint set; throws InvalidInput if it is empty.
BigInt constraint_size(const IntConstraint& c);
/// Uniform member of the set, credited with log10(size).
BigInt sample_integer(RandomStream& rng, EntropyBudget& budget, const IntConstraint& c, std::string label = {});

/// Children with targets proportional to `weights` summing to the parent's
/// remaining target.
std::vector<EntropyBudget> allocate(const EntropyBudget& parent, const std::vector<double>& weights);

/// Smallest n with n >= 10^alpha (at least 1).
BigInt set_size_for(double alpha);
/// Smallest w >= 1 with 2w + 1 >= 10^alpha.
BigInt symmetric_width_for(double alpha);

enum class Split { Train, Interpolate, Extrapolate };
std::string_view split_name(Split s);
Split split_from_name(std::string_view name);

struct AlphaPolicy {
  double train_lo = 3.0;
  double train_hi = 10.0;
  double test_alpha = 8.0;
};

/// Train: uniform on [train_lo, train_hi]; interpolate: test_alpha;
/// extrapolate: `override_alpha` when positive, else test_alpha.
double draw_alpha(const AlphaPolicy& policy, Split split, RandomStream& rng, double override_alpha = -1.0);

}  // namespace mathgen
