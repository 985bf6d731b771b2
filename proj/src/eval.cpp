#include "mathgen/eval.hpp"

#include <fstream>
#include <sstream>

#include "mathgen/errors.hpp"

namespace mathgen {

namespace fs = std::filesystem;

int score_answer(std::string_view predicted, std::string_view truth) {
  if (!predicted.empty() && predicted.back() == '\n') predicted.remove_suffix(1);
  if (!truth.empty() && truth.back() == '\n') truth.remove_suffix(1);
  return predicted == truth ? 1 : 0;
}

ModuleScore score_module(const std::vector<std::string>& predictions, const std::vector<QAPair>& truth,
                         const std::string& module_id, const std::string& split) {
  if (predictions.size() != truth.size()) {
    std::size_t first = std::min(predictions.size(), truth.size());
    throw AlignmentError("predictions have " + std::to_string(predictions.size()) + " lines but truth has " +
                             std::to_string(truth.size()) + " pairs; first unmatched index " + std::to_string(first),
                         first);
  }
  ModuleScore s;
  s.module_id = module_id;
  s.split = split;
  s.total = truth.size();
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (score_answer(predictions[i], truth[i].answer)) {
      ++s.correct;
    } else if (s.mismatches.size() < kMismatchSamples) {
      s.mismatches.push_back({i, truth[i].question, predictions[i], truth[i].answer});
    }
  }
  return s;
}

ScoreReport aggregate(std::vector<ModuleScore> modules) {
  if (modules.empty()) throw InvalidInput("nothing to aggregate");
  ScoreReport r;
  std::map<std::string, std::pair<double, std::size_t>> by_split;
  double sum = 0;
  for (const auto& m : modules) {
    sum += m.accuracy();
    auto& acc = by_split[m.split];
    acc.first += m.accuracy();
    ++acc.second;
  }
  r.macro = sum / static_cast<double>(modules.size());
  for (const auto& [split, acc] : by_split) r.split_macro[split] = acc.first / static_cast<double>(acc.second);
  r.modules = std::move(modules);
  return r;
}

std::vector<std::string> read_predictions(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string bytes = ss.str();
  std::vector<std::string> out;
  if (bytes.empty()) return out;
  if (bytes.back() == '\n') bytes.pop_back();
  std::size_t start = 0;
  for (;;) {
    std::size_t nl = bytes.find('\n', start);
    out.push_back(bytes.substr(start, nl == std::string::npos ? std::string::npos : nl - start));
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  return out;
}

ScoreReport evaluate(const fs::path& predictions, const fs::path& truth) {
  auto preds = read_predictions(predictions);
  // Group pairs by (module, split) keeping first-seen order.
  struct Group {
    std::string module, split;
    std::vector<QAPair> pairs;
    std::vector<std::string> preds;
  };
  std::vector<Group> groups;
  std::map<std::pair<std::string, std::string>, std::size_t> where;
  std::size_t next = 0;
  for (const auto& ref : collect_shards(truth)) {
    std::string module = ref.module_id.value_or(ref.path.stem().string());
    std::string split = ref.split ? std::string(split_name(*ref.split)) : "unknown";
    auto key = std::make_pair(module, split);
    if (!where.count(key)) {
      where[key] = groups.size();
      groups.push_back({module, split, {}, {}});
    }
    Group& g = groups[where[key]];
    for (auto& p : read_shard(ref.path)) {
      if (next >= preds.size()) {
        throw AlignmentError("predictions end at line " + std::to_string(preds.size()) +
                                 " but truth has more pairs; first unmatched index " + std::to_string(next),
                             next);
      }
      g.preds.push_back(preds[next++]);
      g.pairs.push_back(std::move(p));
    }
  }
  if (next != preds.size()) {
    throw AlignmentError("predictions have " + std::to_string(preds.size()) + " lines but truth has " +
                             std::to_string(next) + " pairs; first unmatched index " + std::to_string(next),
                         next);
  }
  if (groups.empty()) throw ParseError("no truth shards under " + truth.string());
  std::vector<ModuleScore> scores;
  for (const auto& g : groups) scores.push_back(score_module(g.preds, g.pairs, g.module, g.split));
  return aggregate(std::move(scores));
}

// ---- verification ------------------------------------------------------------

std::optional<std::string> verify_pair(const QAPair& p, std::optional<std::string> module_id,
                                       std::optional<Split> split, std::string* error) {
  const Module* m = nullptr;
  if (module_id) {
    m = split ? catalog().find_for_split(*module_id, *split) : catalog().find(*module_id, ModuleGroup::Train);
    if (!m) m = catalog().find(*module_id, ModuleGroup::Extrapolate);
  }
  if (m) {
    try {
      return solve_with(*m, p.question);
    } catch (const std::exception& e) {
      if (error) *error = e.what();
      return std::nullopt;
    }
  }
  // Unknown source: any module that reproduces the stored answer wins,
  // otherwise report the first answer found.
  std::optional<std::string> first;
  for (const Module* c : catalog().all()) {
    try {
      std::string a = solve_with(*c, p.question);
      if (a == p.answer) return a;
      if (!first) first = a;
    } catch (const std::exception&) {
    }
  }
  if (!first && error) *error = "no module parses the question";
  return first;
}

VerifyReport verify_dataset(const fs::path& data) {
  VerifyReport r;
  for (const auto& ref : collect_shards(data)) {
    auto pairs = read_shard(ref.path);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      ++r.total;
      std::string err;
      auto solved = verify_pair(pairs[i], ref.module_id, ref.split, &err);
      if (!solved) {
        r.unparseable.push_back({ref.path.string(), i, pairs[i].question, pairs[i].answer, "", err});
      } else if (*solved != pairs[i].answer) {
        r.mismatches.push_back({ref.path.string(), i, pairs[i].question, pairs[i].answer, *solved, ""});
      } else {
        ++r.verified;
      }
    }
  }
  return r;
}

}  // namespace mathgen
