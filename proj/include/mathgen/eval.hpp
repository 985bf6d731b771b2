#pragma once

// Exact-match scoring and self-verification of generated data.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mathgen/pipeline.hpp"

namespace mathgen {

/// Prediction and truth disagree in length. `index` is the first pair
/// index present on one side only.
class AlignmentError : public std::runtime_error {
 public:
  AlignmentError(const std::string& what, std::size_t index) : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

inline constexpr std::size_t kMismatchSamples = 20;

/// 1 iff byte-identical once one trailing '\n' is dropped from each side.
int score_answer(std::string_view predicted, std::string_view truth);

struct Mismatch {
  std::size_t index = 0;  // within the module
  std::string question;
  std::string predicted;
  std::string truth;
};

struct ModuleScore {
  std::string module_id;
  std::string split;  // "train", "interpolate", "extrapolate" or "unknown"
  std::size_t correct = 0;
  std::size_t total = 0;
  std::vector<Mismatch> mismatches;  // first kMismatchSamples only
  double accuracy() const { return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
};

/// Scores aligned predictions against truth pairs. Throws AlignmentError
/// on a count mismatch.
ModuleScore score_module(const std::vector<std::string>& predictions, const std::vector<QAPair>& truth,
                         const std::string& module_id = {}, const std::string& split = "unknown");

struct ScoreReport {
  std::vector<ModuleScore> modules;
  std::map<std::string, double> split_macro;  // per split, unweighted
  double macro = 0.0;                         // over all modules, unweighted
};

/// Unweighted macro mean over modules; throws InvalidInput when empty.
ScoreReport aggregate(std::vector<ModuleScore> modules);

/// Prediction lines; one trailing newline at end of file is not a line.
std::vector<std::string> read_predictions(const std::filesystem::path& path);

/// Predictions aligned with every pair under `truth` in collect_shards
/// order, scored per (module, split).
ScoreReport evaluate(const std::filesystem::path& predictions, const std::filesystem::path& truth);

// ---- verification ------------------------------------------------------------

struct VerifyIssue {
  std::string file;
  std::size_t pair_index = 0;  // within the file
  std::string question;
  std::string stored;
  std::string solved;  // empty for unparseable questions
  std::string detail;
};

struct VerifyReport {
  std::size_t total = 0;
  std::size_t verified = 0;
  std::vector<VerifyIssue> mismatches;   // solver disagrees: generator bug
  std::vector<VerifyIssue> unparseable;  // no solver accepted the question
};

/// Re-solves one pair. Uses the named module when given (falling back to
/// the whole catalog when the id is unknown).
std::optional<std::string> verify_pair(const QAPair& p, std::optional<std::string> module_id,
                                       std::optional<Split> split, std::string* error = nullptr);

VerifyReport verify_dataset(const std::filesystem::path& data);

}  // namespace mathgen
