#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "mathgen/errors.hpp"
#include "mathgen/pipeline.hpp"

using namespace mathgen;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& bytes) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << bytes;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

class TempDir : public ::testing::Test {
 protected:
  fs::path root;
  void SetUp() override {
    std::random_device rd;
    root = fs::temp_directory_path() / ("mathgen_pipeline_" + std::to_string(rd()));
    fs::create_directories(root);
  }
  void TearDown() override { fs::remove_all(root); }
};

}  // namespace

TEST(DefaultCount, PerSplit) {
  EXPECT_EQ(default_count(Split::Train), 2000000u);
  EXPECT_EQ(default_count(Split::Interpolate), 10000u);
  EXPECT_EQ(default_count(Split::Extrapolate), 10000u);
}

TEST(DifficultyShards, EqualWidths) {
  auto one = difficulty_shards(3, 10, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].lo, 3.0);
  EXPECT_EQ(one[0].hi, 10.0);
  auto three = difficulty_shards(3, 10, 3);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_NEAR(three[0].hi, 16.0 / 3, 1e-12);
  EXPECT_NEAR(three[1].lo, 16.0 / 3, 1e-12);
  EXPECT_NEAR(three[1].hi, 23.0 / 3, 1e-12);
  EXPECT_EQ(three[2].hi, 10.0);
  auto seven = difficulty_shards(3, 10, 7);
  for (int i = 0; i < 7; ++i) {
    EXPECT_NEAR(seven[i].lo, 3 + i, 1e-12);
    EXPECT_NEAR(seven[i].hi - seven[i].lo, 1.0, 1e-12);
  }
  EXPECT_THROW(difficulty_shards(3, 10, 0), InvalidInput);
}

TEST(FileNames, StemAndBack) {
  EXPECT_EQ(file_stem("numbers/list_prime_factors"), "numbers__list_prime_factors");
  EXPECT_EQ(module_from_file("numbers__gcd.txt"), "numbers/gcd");
  EXPECT_EQ(module_from_file("train/numbers__gcd__part03.txt"), "numbers/gcd");
  EXPECT_EQ(module_from_file("numbers__gcd__d02__part01.txt"), "numbers/gcd");
  EXPECT_FALSE(module_from_file("fixture.txt").has_value());
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Manifest, TextRoundTrip) {
  SplitManifest m;
  m.module_id = "numbers/gcd";
  m.split = Split::Train;
  m.count = 12;
  m.seed = 99;
  m.difficulty_shards = 2;
  m.shards = {{"numbers__gcd__d00.txt", 6, "sha256:00", AlphaRange{3, 6.5}},
              {"numbers__gcd__d01.txt", 6, "sha256:11", AlphaRange{6.5, 10}}};
  std::string text = manifest_to_text(m);
  SplitManifest back = manifest_from_text(text);
  EXPECT_EQ(manifest_to_text(back), text);
  EXPECT_EQ(back.module_id, "numbers/gcd");
  EXPECT_EQ(back.seed, 99u);
  ASSERT_EQ(back.shards.size(), 2u);
  EXPECT_EQ(back.shards[1].alpha->lo, 6.5);
  EXPECT_EQ(back.version, kGeneratorVersion);
  EXPECT_THROW(manifest_from_text("module_id numbers/gcd\n"), ParseError);
  EXPECT_THROW(manifest_from_text("module_id=numbers/gcd\n"), ParseError);
}

using GenerateSplit = TempDir;

TEST_F(GenerateSplit, SameInputsSameBytes) {
  auto a = generate_split("numbers/gcd", Split::Train, 1000, 1, root / "a");
  auto b = generate_split("numbers/gcd", Split::Train, 1000, 1, root / "b");
  ASSERT_EQ(a.shards.size(), 1u);
  EXPECT_EQ(a.shards[0].digest, b.shards[0].digest);
  EXPECT_EQ(slurp(root / "a/train/numbers__gcd.txt"), slurp(root / "b/train/numbers__gcd.txt"));
  EXPECT_EQ(slurp(root / "a/train/numbers__gcd.manifest"), slurp(root / "b/train/numbers__gcd.manifest"));
  auto c = generate_split("numbers/gcd", Split::Train, 1000, 2, root / "c");
  EXPECT_NE(a.shards[0].digest, c.shards[0].digest);
}

TEST_F(GenerateSplit, ThreadCountDoesNotMatter) {
  SplitOptions one, four;
  one.threads = 1;
  four.threads = 4;
  auto a = generate_split("arithmetic/mixed", Split::Train, 600, 5, root / "a", one);
  auto b = generate_split("arithmetic/mixed", Split::Train, 600, 5, root / "b", four);
  EXPECT_EQ(a.shards[0].digest, b.shards[0].digest);
}

TEST_F(GenerateSplit, ShardsConcatenateToUnshardedRun) {
  SplitOptions small;
  small.shard_pairs = 300;
  auto sharded = generate_split("algebra/linear_1d", Split::Train, 1000, 3, root / "s", small);
  auto whole = generate_split("algebra/linear_1d", Split::Train, 1000, 3, root / "w");
  ASSERT_EQ(sharded.shards.size(), 4u);
  std::vector<std::size_t> sizes;
  std::string joined;
  for (const auto& s : sharded.shards) {
    sizes.push_back(s.pairs);
    joined += slurp(root / "s/train" / s.file);
  }
  EXPECT_EQ(sizes, (std::vector<std::size_t>{300, 300, 300, 100}));
  EXPECT_EQ(sharded.shards[0].file, "algebra__linear_1d__part00.txt");
  EXPECT_EQ(joined, slurp(root / "w/train/algebra__linear_1d.txt"));
}

TEST_F(GenerateSplit, ManifestDigestsMatchFiles) {
  SplitOptions o;
  o.shard_pairs = 250;
  generate_split("polynomials/expand", Split::Interpolate, 700, 11, root, o);
  SplitManifest m = read_manifest(root / "interpolate/polynomials__expand.manifest");
  EXPECT_EQ(m.count, 700u);
  EXPECT_EQ(m.split, Split::Interpolate);
  std::size_t total = 0;
  for (const auto& s : m.shards) {
    EXPECT_EQ(file_digest(root / "interpolate" / s.file), s.digest);
    auto pairs = read_shard(root / "interpolate" / s.file);
    EXPECT_EQ(pairs.size(), s.pairs);
    for (const auto& p : pairs) EXPECT_TRUE(valid_pair(p));
    total += pairs.size();
  }
  EXPECT_EQ(total, 700u);
}

TEST_F(GenerateSplit, IndexedPairMatchesFile) {
  generate_split("numbers/lcm", Split::Train, 200, 4, root);
  auto pairs = read_shard(root / "train/numbers__lcm.txt");
  const Module& m = *catalog().find("numbers/lcm", ModuleGroup::Train);
  for (std::size_t i : {0u, 17u, 199u}) {
    QAPair p = generate_indexed(m, Split::Train, 4, i, AlphaPolicy{});
    EXPECT_EQ(p.question, pairs[i].question);
    EXPECT_EQ(p.answer, pairs[i].answer);
  }
}

TEST_F(GenerateSplit, DifficultyBins) {
  SplitOptions o;
  o.difficulty_shards = 3;
  auto m = generate_split("arithmetic/add_or_sub", Split::Train, 90, 8, root, o);
  ASSERT_EQ(m.shards.size(), 3u);
  EXPECT_EQ(m.shards[1].file, "arithmetic__add_or_sub__d01.txt");
  for (const auto& s : m.shards) {
    ASSERT_TRUE(s.alpha.has_value());
    EXPECT_EQ(s.pairs, 30u);
  }
  EXPECT_NEAR(m.shards[2].alpha->lo, 23.0 / 3, 1e-12);
  // Test splits ignore difficulty binning.
  auto t = generate_split("arithmetic/add_or_sub", Split::Interpolate, 30, 8, root, o);
  EXPECT_EQ(t.shards.size(), 1u);
  EXPECT_FALSE(t.shards[0].alpha.has_value());
}

TEST_F(GenerateSplit, AuditLogReplaysToCertifiedDraws) {
  SplitOptions o;
  o.audit_log = true;
  generate_split("probability/swr_p_level_set", Split::Train, 300, 6, root, o);
  std::vector<std::string> lines = split_on(slurp(root / "train/probability__swr_p_level_set.audit"), '\n');
  ASSERT_EQ(lines.size(), 300u);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto cols = split_on(lines[i], '\t');
    ASSERT_EQ(cols.size(), 4u) << lines[i];
    EXPECT_EQ(std::stoul(cols[0]), i);
    double alpha = std::stod(cols[1]);
    std::vector<DrawRecord> draws;
    for (const auto& d : split_on(cols[3], ';')) {
      auto eq = d.rfind('=');
      draws.push_back({BigInt::parse(d.substr(eq + 1)), d.substr(0, eq)});
    }
    EXPECT_GE(alpha, 3.0);
    EXPECT_LE(alpha, 10.0);
    EXPECT_TRUE(certifies(draws, alpha)) << lines[i];
  }
}

TEST_F(GenerateSplit, SmallSpaceTestSplitsHaveNoRepeats) {
  auto m = generate_split("measurement/time", Split::Interpolate, 3000, 2, root);
  auto pairs = read_shard(root / "interpolate" / m.shards[0].file);
  std::set<std::string> qs;
  for (const auto& p : pairs) qs.insert(p.question);
  EXPECT_EQ(qs.size(), pairs.size());
}

TEST_F(GenerateSplit, BadArguments) {
  EXPECT_THROW(generate_split("numbers/gcd", Split::Train, 0, 1, root), InvalidInput);
  EXPECT_THROW(generate_split("numbers/nope", Split::Train, 10, 1, root), InvalidInput);
  // Extrapolation ids do not exist for training.
  EXPECT_THROW(generate_split("arithmetic/add_or_sub_big", Split::Train, 10, 1, root), InvalidInput);
}

TEST_F(GenerateSplit, FailedRunLeavesNoFiles) {
  // A directory squatting on the second shard's name makes its write fail.
  fs::create_directories(root / "train/numbers__gcd__part01.txt");
  SplitOptions o;
  o.shard_pairs = 10;
  EXPECT_THROW(generate_split("numbers/gcd", Split::Train, 30, 1, root, o), std::runtime_error);
  EXPECT_FALSE(fs::exists(root / "train/numbers__gcd__part00.txt"));
  EXPECT_FALSE(fs::exists(root / "train/numbers__gcd.manifest"));
}

using ReadShard = TempDir;

TEST_F(ReadShard, Errors) {
  spit(root / "odd.txt", "What is 1 + 1?\n2\nWhat is 2 + 2?\n");
  try {
    read_shard(root / "odd.txt");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("odd.txt:3"), std::string::npos) << e.what();
  }
  spit(root / "tab.txt", "What is 1 + 1?\n2\nWhat\tis?\n4\n");
  try {
    read_shard(root / "tab.txt");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("tab.txt:3"), std::string::npos) << e.what();
  }
  spit(root / "noeol.txt", "What is 1 + 1?\n2");
  EXPECT_THROW(read_shard(root / "noeol.txt"), ParseError);
  spit(root / "ok.txt", "What is 1 + 1?\n2\n");
  EXPECT_EQ(read_shard(root / "ok.txt").size(), 1u);
}

using OverlapAudit = TempDir;

TEST_F(OverlapAudit, Fixtures) {
  spit(root / "train/a__b.txt", "Q1?\n1\nQ2?\n2\nQ3?\n3\nQ4?\n4\n");
  spit(root / "disjoint/a__b.txt", "Q5?\n5\nQ6?\n6\n");
  spit(root / "subset/a__b.txt", "Q1?\n1\nQ3?\n3\n");
  spit(root / "half/a__b.txt", "Q1?\n9\nQ9?\n9\n");
  spit(root / "empty/a__b.txt", "");
  EXPECT_EQ(overlap_audit(root / "train", root / "disjoint"), 0.0);
  EXPECT_EQ(overlap_audit(root / "train", root / "subset"), 1.0);
  // Only the question has to match.
  EXPECT_EQ(overlap_audit(root / "train", root / "half/a__b.txt"), 0.5);
  EXPECT_THROW(overlap_audit(root / "train", root / "empty"), ParseError);
  EXPECT_THROW(overlap_audit(root / "train", root / "missing"), std::runtime_error);
}

TEST_F(OverlapAudit, CollectShardsFromManifest) {
  SplitOptions o;
  o.shard_pairs = 40;
  generate_split("numbers/gcd", Split::Train, 100, 1, root, o);
  auto refs = collect_shards(root / "train/numbers__gcd.manifest");
  ASSERT_EQ(refs.size(), 3u);
  EXPECT_EQ(refs[0].module_id, "numbers/gcd");
  EXPECT_EQ(refs[0].split, Split::Train);
  EXPECT_EQ(collect_shards(root).size(), 3u);
  EXPECT_EQ(overlap_audit(root / "train", root / "train/numbers__gcd__part01.txt"), 1.0);
}
