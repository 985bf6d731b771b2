#pragma once

// Batch generation of splits to disk.
//
// Shard files hold alternating question/answer lines. Each question i of a
// (module, split, seed) run draws from its own stream
//   RandomStream(seed).child(module_id).child(split).child(i)
// so output is the same however the work is divided between threads.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mathgen/catalog.hpp"
#include "mathgen/sampler.hpp"

namespace mathgen {

inline constexpr const char* kGeneratorVersion = "mathgen-1.0.0";
inline constexpr std::size_t kShardPairs = 100000;

/// Count used when the caller gives none: 2e6 train, 1e4 per test split.
std::size_t default_count(Split split);

struct AlphaRange {
  double lo = 3.0;
  double hi = 10.0;
};

/// k equal-width sub-intervals of [lo, hi]; throws InvalidInput for k < 1.
std::vector<AlphaRange> difficulty_shards(double lo, double hi, int k);

struct ShardInfo {
  std::string file;  // relative to the split directory
  std::size_t pairs = 0;
  std::string digest;  // "sha256:<hex>"
  std::optional<AlphaRange> alpha;  // set when sharded by difficulty
};

struct SplitManifest {
  std::string module_id;
  Split split = Split::Train;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  AlphaPolicy policy;
  int difficulty_shards = 1;
  std::vector<ShardInfo> shards;
  std::string version = kGeneratorVersion;
};

std::string manifest_to_text(const SplitManifest& m);
/// Throws ParseError on a malformed manifest.
SplitManifest manifest_from_text(const std::string& text);
SplitManifest read_manifest(const std::filesystem::path& path);

struct SplitOptions {
  AlphaPolicy policy;
  int difficulty_shards = 1;  // only applies to the train split
  bool audit_log = false;     // per-question draw log next to each shard
  std::size_t shard_pairs = kShardPairs;
  unsigned threads = 0;       // 0: hardware concurrency
};

/// "<area>__<name>" for "area/name".
std::string file_stem(const std::string& module_id);
/// Inverse of file_stem on a shard file name (drops "__partNN" and
/// "__dNN" suffixes); nullopt when the name has no "__".
std::optional<std::string> module_from_file(const std::filesystem::path& file);

/// Generates `count` pairs into <out>/<split>/ and writes the manifest.
/// Throws GenerationError (with module context) or std::runtime_error on
/// I/O failure; files from a failed run are removed.
SplitManifest generate_split(const std::string& module_id, Split split, std::size_t count, std::uint64_t seed,
                             const std::filesystem::path& out, const SplitOptions& options = {});

/// The pair at `index` of a run, exactly as generate_split would write it
/// (ignores test-split deduplication).
QAPair generate_indexed(const Module& m, Split split, std::uint64_t seed, std::size_t index, const AlphaPolicy& policy,
                        std::optional<AlphaRange> range = std::nullopt, GenerateResult* detail = nullptr);

// ---- reading shards --------------------------------------------------------

std::string sha256_hex(const std::string& bytes);
std::string file_digest(const std::filesystem::path& path);

/// Pairs of one shard file. Throws ParseError naming file and line on an
/// odd line count or an invalid line.
std::vector<QAPair> read_shard(const std::filesystem::path& path);

struct ShardRef {
  std::filesystem::path path;
  std::optional<std::string> module_id;  // from the file name
  std::optional<Split> split;            // from the parent directory name
};

/// A .txt file, a manifest (its listed shards) or a directory (every .txt
/// below it, sorted by path).
std::vector<ShardRef> collect_shards(const std::filesystem::path& path);

/// Fraction of test questions whose exact text occurs among the train
/// questions.
double overlap_audit(const std::filesystem::path& train, const std::filesystem::path& test);

}  // namespace mathgen
