#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "mathgen/errors.hpp"
#include "mathgen/eval.hpp"

using namespace mathgen;
namespace fs = std::filesystem;

namespace {

void spit(const fs::path& p, const std::string& bytes) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << bytes;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ModuleScore fixed(std::string id, std::size_t correct, std::size_t total, std::string split = "interpolate") {
  ModuleScore s;
  s.module_id = std::move(id);
  s.split = std::move(split);
  s.correct = correct;
  s.total = total;
  return s;
}

class TempDir : public ::testing::Test {
 protected:
  fs::path root;
  void SetUp() override {
    std::random_device rd;
    root = fs::temp_directory_path() / ("mathgen_eval_" + std::to_string(rd()));
    fs::create_directories(root);
  }
  void TearDown() override { fs::remove_all(root); }
};

// Answers of every shard under `dir`, one per line, in collect_shards order.
std::string answers_of(const fs::path& dir) {
  std::string out;
  for (const auto& ref : collect_shards(dir)) {
    for (const auto& p : read_shard(ref.path)) out += p.answer + "\n";
  }
  return out;
}

}  // namespace

TEST(ScoreAnswer, Examples) {
  EXPECT_EQ(score_answer("-841469015.544", "-841469015.544"), 1);
  EXPECT_EQ(score_answer("69", "68"), 0);
  EXPECT_EQ(score_answer("54*a -30", "54*a - 30"), 0);
  EXPECT_EQ(score_answer("68\n", "68"), 1);
  EXPECT_EQ(score_answer("68\n\n", "68"), 0);
  EXPECT_EQ(score_answer("68 ", "68"), 0);
  EXPECT_EQ(score_answer("false", "False"), 0);
  EXPECT_EQ(score_answer("", ""), 1);
}

TEST(ScoreAnswer, AnySingleEditScoresZero) {
  const std::vector<std::string> truths = {"-841469015.544", "54*a - 30", "False", "546*a**2 - 108*a - 118", "1/110",
                                           "3, 13, 19, 317453"};
  for (const auto& t : truths) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::string del = t;
      del.erase(i, 1);
      EXPECT_EQ(score_answer(del, t), 0) << del;
      for (char c = ' '; c <= '~'; ++c) {
        if (c == t[i]) continue;
        std::string sub = t;
        sub[i] = c;
        EXPECT_EQ(score_answer(sub, t), 0) << sub;
      }
    }
    for (std::size_t i = 0; i <= t.size(); ++i) {
      std::string ins = t;
      ins.insert(i, 1, 'x');
      EXPECT_EQ(score_answer(ins, t), 0) << ins;
    }
  }
}

TEST(ScoreModule, Fixtures) {
  std::vector<QAPair> truth;
  std::vector<std::string> preds;
  for (int i = 0; i < 10; ++i) {
    truth.push_back({"What is " + std::to_string(i) + " + 0?", std::to_string(i)});
    preds.push_back(std::to_string(i));
  }
  EXPECT_EQ(score_module(preds, truth).accuracy(), 1.0);
  for (int i = 0; i < 10; i += 2) preds[i] += "0";
  ModuleScore half = score_module(preds, truth, "m/n", "interpolate");
  EXPECT_EQ(half.accuracy(), 0.5);
  EXPECT_EQ(half.correct, 5u);
  ASSERT_EQ(half.mismatches.size(), 5u);
  EXPECT_EQ(half.mismatches[1].index, 2u);
  EXPECT_EQ(half.mismatches[1].predicted, "20");
  try {
    score_module({}, truth);
    FAIL() << "expected AlignmentError";
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.index(), 0u);
  }
  preds.push_back("extra");
  try {
    score_module(preds, truth);
    FAIL() << "expected AlignmentError";
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.index(), 10u);
  }
}

TEST(ScoreModule, MismatchSamplesAreCapped) {
  std::vector<QAPair> truth(100, QAPair{"Q?", "1"});
  std::vector<std::string> preds(100, "2");
  ModuleScore s = score_module(preds, truth);
  EXPECT_EQ(s.correct, 0u);
  EXPECT_EQ(s.mismatches.size(), kMismatchSamples);
}

TEST(Aggregate, Examples) {
  EXPECT_EQ(aggregate({fixed("a/b", 10, 10), fixed("c/d", 0, 10)}).macro, 0.5);
  EXPECT_EQ(aggregate({fixed("a/b", 3, 7)}).macro, 3.0 / 7);
  EXPECT_THROW(aggregate({}), InvalidInput);
  // Unweighted: a 1000-question module counts as much as a 2-question one.
  EXPECT_EQ(aggregate({fixed("a/b", 1000, 1000), fixed("c/d", 0, 2)}).macro, 0.5);
}

TEST(Aggregate, FiftySixModules) {
  // Module i scores (i mod 11)/10 with totals that vary by i; the
  // accuracies sum to 5 * (0 + 1 + ... + 10) / 10 = 27.5.
  std::vector<ModuleScore> ms;
  for (int i = 0; i < 56; ++i) {
    std::size_t w = 1 + i % 3;
    ms.push_back(fixed("m/" + std::to_string(i), (i % 11) * w, 10 * w, i < 28 ? "interpolate" : "extrapolate"));
  }
  ScoreReport r = aggregate(ms);
  EXPECT_NEAR(r.macro, 27.5 / 56, 1e-15);
  // First 28: i = 0..27 -> 0..10, 0..10, 0..5 -> 55 + 55 + 15 = 125.
  EXPECT_NEAR(r.split_macro.at("interpolate"), 12.5 / 28, 1e-15);
  EXPECT_NEAR(r.split_macro.at("extrapolate"), 15.0 / 28, 1e-15);

  std::mt19937 g(3);
  for (int k = 0; k < 20; ++k) {
    std::shuffle(ms.begin(), ms.end(), g);
    EXPECT_NEAR(aggregate(ms).macro, r.macro, 1e-15);
  }
}

using Evaluate = TempDir;

TEST_F(Evaluate, TruthAgainstItself) {
  generate_split("numbers/gcd", Split::Interpolate, 50, 1, root / "data");
  generate_split("comparison/sort", Split::Interpolate, 30, 1, root / "data");
  generate_split("comparison/sort_more", Split::Extrapolate, 20, 1, root / "data");
  spit(root / "preds.txt", answers_of(root / "data"));
  ScoreReport r = evaluate(root / "preds.txt", root / "data");
  ASSERT_EQ(r.modules.size(), 3u);
  for (const auto& m : r.modules) EXPECT_EQ(m.accuracy(), 1.0) << m.module_id;
  EXPECT_EQ(r.macro, 1.0);
  EXPECT_EQ(r.split_macro.at("interpolate"), 1.0);
  EXPECT_EQ(r.split_macro.at("extrapolate"), 1.0);
}

TEST_F(Evaluate, OnePerturbedAnswerPerModule) {
  generate_split("numbers/gcd", Split::Interpolate, 40, 2, root / "data");
  generate_split("numbers/lcm", Split::Interpolate, 10, 2, root / "data");
  std::vector<std::string> lines;
  std::istringstream in(answers_of(root / "data"));
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 50u);
  // First gcd answer and first lcm answer get one extra byte each.
  lines[0] += "1";
  lines[40] += "1";
  std::string preds;
  for (const auto& l : lines) preds += l + "\n";
  spit(root / "preds.txt", preds);
  ScoreReport r = evaluate(root / "preds.txt", root / "data");
  ASSERT_EQ(r.modules.size(), 2u);
  EXPECT_EQ(r.modules[0].accuracy(), 39.0 / 40);
  EXPECT_EQ(r.modules[1].accuracy(), 9.0 / 10);
  EXPECT_NEAR(r.macro, (39.0 / 40 + 9.0 / 10) / 2, 1e-15);
}

TEST_F(Evaluate, Misalignment) {
  generate_split("numbers/gcd", Split::Interpolate, 5, 1, root / "data");
  spit(root / "empty.txt", "");
  try {
    evaluate(root / "empty.txt", root / "data");
    FAIL() << "expected AlignmentError";
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.index(), 0u);
  }
  spit(root / "short.txt", "1\n2\n3\n");
  try {
    evaluate(root / "short.txt", root / "data");
    FAIL() << "expected AlignmentError";
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.index(), 3u);
  }
}

TEST_F(Evaluate, ReadPredictionsKeepsBlankLines) {
  spit(root / "p.txt", "1\n\n3\n");
  EXPECT_EQ(read_predictions(root / "p.txt"), (std::vector<std::string>{"1", "", "3"}));
  spit(root / "q.txt", "1\n2");
  EXPECT_EQ(read_predictions(root / "q.txt"), (std::vector<std::string>{"1", "2"}));
}

using Verify = TempDir;

TEST_F(Verify, FreshDataIsClean) {
  for (const char* id : {"algebra/linear_2d", "polynomials/compose", "probability/swr_p_level_set", "numbers/is_prime"}) {
    generate_split(id, Split::Interpolate, 60, 3, root);
  }
  generate_split("arithmetic/mul_big", Split::Extrapolate, 60, 3, root);
  VerifyReport r = verify_dataset(root);
  EXPECT_EQ(r.total, 300u);
  EXPECT_EQ(r.verified, 300u);
  EXPECT_TRUE(r.mismatches.empty());
  EXPECT_TRUE(r.unparseable.empty());
}

TEST_F(Verify, OneMutatedByteIsOneMismatch) {
  generate_split("numbers/gcd", Split::Train, 100, 3, root);
  fs::path f = root / "train/numbers__gcd.txt";
  std::string bytes = slurp(f);
  // Last character of the fourth answer (line 8).
  std::size_t pos = 0;
  for (int line = 0; line < 8; ++line) pos = bytes.find('\n', pos) + 1;
  char& c = bytes[pos - 2];
  c = c == '9' ? '8' : static_cast<char>(c + 1);
  spit(f, bytes);
  VerifyReport r = verify_dataset(f);
  EXPECT_EQ(r.total, 100u);
  EXPECT_EQ(r.verified, 99u);
  ASSERT_EQ(r.mismatches.size(), 1u);
  EXPECT_EQ(r.mismatches[0].pair_index, 3u);
}

TEST_F(Verify, ShowcasePairs) {
  spit(root / "showcase.txt",
       "Solve -42*r + 27*c = -1167 and 130*r + 4*c = 372 for r.\n4\n"
       "Calculate -841880142.544 + 411127.\n-841469015.544\n"
       "Let x(g) = 9*g + 1. Let q(c) = 2*c + 1. Let f(i) = 3*i - 39. Let w(j) = q(x(j)). Calculate f(w(a)).\n"
       "54*a - 30\n"
       "Let e(l) = l - 6. Is 2 a factor of both e(9) and 2?\nFalse\n"
       "Let u(n) = -n**3 - n**2. Let e(c) = -2*c**3 + c. Let l(j) = -118*e(j) + 54*u(j). What is the derivative of "
       "l(a)?\n546*a**2 - 108*a - 118\n"
       "Three letters picked without replacement from qqqkkklkqkkk. Give prob of sequence qql.\n1/110\n");
  VerifyReport r = verify_dataset(root / "showcase.txt");
  EXPECT_EQ(r.total, 6u);
  EXPECT_EQ(r.verified, 6u);
}

TEST_F(Verify, UnparseableIsFlaggedNotFatal) {
  spit(root / "numbers__gcd.txt", "What is the highest common factor of 12 and 18?\n6\nHow are you?\nFine\n");
  VerifyReport r = verify_dataset(root / "numbers__gcd.txt");
  EXPECT_EQ(r.total, 2u);
  EXPECT_EQ(r.verified, 1u);
  EXPECT_TRUE(r.mismatches.empty());
  ASSERT_EQ(r.unparseable.size(), 1u);
  EXPECT_EQ(r.unparseable[0].pair_index, 1u);
}

TEST(VerifyPair, NamedModuleAndFallback) {
  QAPair p{"Calculate 17 * 4.", "68"};
  EXPECT_EQ(verify_pair(p, "arithmetic/mul", Split::Train), "68");
  EXPECT_EQ(verify_pair(p, std::nullopt, std::nullopt), "68");
  EXPECT_EQ(verify_pair(p, "not/a_module", std::nullopt), "68");
  std::string err;
  EXPECT_FALSE(verify_pair({"Hello?", "1"}, std::nullopt, std::nullopt, &err).has_value());
}
