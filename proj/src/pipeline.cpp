#include "mathgen/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "mathgen/errors.hpp"

namespace mathgen {

namespace fs = std::filesystem;

std::size_t default_count(Split split) { return split == Split::Train ? 2000000 : 10000; }

std::vector<AlphaRange> difficulty_shards(double lo, double hi, int k) {
  if (k < 1) throw InvalidInput("need at least one difficulty shard");
  std::vector<AlphaRange> out;
  double width = (hi - lo) / k;
  for (int i = 0; i < k; ++i) {
    // Exact endpoints at both ends so the bins tile [lo, hi].
    out.push_back({i == 0 ? lo : lo + width * i, i + 1 == k ? hi : lo + width * (i + 1)});
  }
  return out;
}

// ---- manifests ---------------------------------------------------------------

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("trailing text");
    return v;
  } catch (const std::exception&) {
    throw ParseError("manifest: bad number for " + key + ": '" + s + "'");
  }
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("manifest: bad integer for " + key + ": '" + s + "'");
  }
  return std::stoull(s);
}

std::string policy_text(const AlphaPolicy& p) {
  return "train=uniform(" + num(p.train_lo) + "," + num(p.train_hi) + ");test=" + num(p.test_alpha);
}

AlphaPolicy policy_from_text(const std::string& s) {
  double lo, hi, test;
  char tail;
  if (std::sscanf(s.c_str(), "train=uniform(%lf,%lf);test=%lf%c", &lo, &hi, &test, &tail) != 3) {
    throw ParseError("manifest: bad alpha_policy '" + s + "'");
  }
  return {lo, hi, test};
}

}  // namespace

std::string manifest_to_text(const SplitManifest& m) {
  std::ostringstream out;
  out << "module_id=" << m.module_id << "\n";
  out << "split=" << split_name(m.split) << "\n";
  out << "count=" << m.count << "\n";
  out << "seed=" << m.seed << "\n";
  out << "alpha_policy=" << policy_text(m.policy) << "\n";
  out << "difficulty_shards=" << m.difficulty_shards << "\n";
  out << "version=" << m.version << "\n";
  out << "shards=" << m.shards.size() << "\n";
  for (std::size_t i = 0; i < m.shards.size(); ++i) {
    const auto& s = m.shards[i];
    std::string k = "shard." + std::to_string(i) + ".";
    out << k << "file=" << s.file << "\n";
    out << k << "pairs=" << s.pairs << "\n";
    out << k << "digest=" << s.digest << "\n";
    if (s.alpha) out << k << "alpha=" << num(s.alpha->lo) << "," << num(s.alpha->hi) << "\n";
  }
  return out.str();
}

SplitManifest manifest_from_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("manifest line " + std::to_string(lineno) + ": missing '='");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw ParseError("manifest: missing " + k);
    return it->second;
  };
  SplitManifest m;
  m.module_id = get("module_id");
  try {
    m.split = split_from_name(get("split"));
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  m.count = parse_u64(get("count"), "count");
  m.seed = parse_u64(get("seed"), "seed");
  m.policy = policy_from_text(get("alpha_policy"));
  m.difficulty_shards = static_cast<int>(parse_u64(get("difficulty_shards"), "difficulty_shards"));
  m.version = get("version");
  std::size_t n = parse_u64(get("shards"), "shards");
  for (std::size_t i = 0; i < n; ++i) {
    std::string k = "shard." + std::to_string(i) + ".";
    ShardInfo s;
    s.file = get(k + "file");
    s.pairs = parse_u64(get(k + "pairs"), k + "pairs");
    s.digest = get(k + "digest");
    if (auto it = kv.find(k + "alpha"); it != kv.end()) {
      auto comma = it->second.find(',');
      if (comma == std::string::npos) throw ParseError("manifest: bad " + k + "alpha");
      s.alpha = AlphaRange{parse_double(it->second.substr(0, comma), k + "alpha"),
                           parse_double(it->second.substr(comma + 1), k + "alpha")};
    }
    m.shards.push_back(std::move(s));
  }
  return m;
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

SplitManifest read_manifest(const fs::path& path) { return manifest_from_text(read_file(path)); }

// ---- digests ---------------------------------------------------------------

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream out;
  for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

std::string file_digest(const fs::path& path) { return "sha256:" + sha256_hex(read_file(path)); }

// ---- file names ------------------------------------------------------------

std::string file_stem(const std::string& module_id) {
  auto slash = module_id.find('/');
  if (slash == std::string::npos) return module_id;
  return module_id.substr(0, slash) + "__" + module_id.substr(slash + 1);
}

std::optional<std::string> module_from_file(const fs::path& file) {
  std::string stem = file.stem().string();
  auto strip = [&](const char* tag) {
    auto pos = stem.rfind(tag);
    if (pos == std::string::npos || pos == 0) return;
    std::string rest = stem.substr(pos + std::string(tag).size());
    if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      stem.resize(pos);
    }
  };
  strip("__part");
  strip("__d");
  auto sep = stem.find("__");
  if (sep == std::string::npos) return std::nullopt;
  return stem.substr(0, sep) + "/" + stem.substr(sep + 2);
}

// ---- generation ------------------------------------------------------------

namespace {

RandomStream question_stream(const Module& m, Split split, std::uint64_t seed, std::size_t index) {
  return RandomStream(seed).child(m.id()).child(split_name(split)).child(static_cast<std::uint64_t>(index));
}

GenerateResult generate_from(const Module& m, Split split, RandomStream qrng, const AlphaPolicy& policy,
                             std::optional<AlphaRange> range) {
  RandomStream arng = qrng.child("alpha");
  double alpha;
  if (range) {
    alpha = range->lo + (range->hi - range->lo) * arng.uniform();
  } else {
    alpha = draw_alpha(policy, split, arng, m.spec().alpha_override);
  }
  return generate(m, split, qrng.child("question"), alpha);
}

std::string pad2(std::size_t i) {
  std::string s = std::to_string(i);
  return s.size() < 2 ? "0" + s : s;
}

std::string audit_line(std::size_t index, const GenerateResult& r) {
  std::string line = std::to_string(index) + "\t" + num(r.pair.alpha) + "\t" + std::to_string(r.attempts) + "\t";
  for (std::size_t i = 0; i < r.draws.size(); ++i) {
    if (i > 0) line += ';';
    line += r.draws[i].label + "=" + r.draws[i].set_size.to_string();
  }
  return line + "\n";
}

struct Block {
  std::size_t first = 0;
  std::size_t count = 0;
  std::optional<AlphaRange> range;
  std::string file;
};

// Generates indices [first, first+n) on `threads` workers. On failure the
// error of the lowest failing index is rethrown, so messages do not depend
// on scheduling.
std::vector<GenerateResult> generate_block(const Module& m, Split split, std::uint64_t seed, const AlphaPolicy& policy,
                                           const Block& b, unsigned threads) {
  std::vector<GenerateResult> out(b.count);
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::size_t err_index = SIZE_MAX;
  std::exception_ptr err;
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= b.count) return;
      try {
        out[i] = generate_from(m, split, question_stream(m, split, seed, b.first + i), policy, b.range);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (b.first + i < err_index) {
          err_index = b.first + i;
          err = std::current_exception();
        }
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, b.count))));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace

QAPair generate_indexed(const Module& m, Split split, std::uint64_t seed, std::size_t index, const AlphaPolicy& policy,
                        std::optional<AlphaRange> range, GenerateResult* detail) {
  GenerateResult r = generate_from(m, split, question_stream(m, split, seed, index), policy, range);
  if (detail) *detail = r;
  return r.pair;
}

SplitManifest generate_split(const std::string& module_id, Split split, std::size_t count, std::uint64_t seed,
                             const fs::path& out, const SplitOptions& options) {
  if (count < 1) throw InvalidInput("count must be at least 1");
  if (options.shard_pairs < 1) throw InvalidInput("shard size must be at least 1");
  const Module* m = catalog().find_for_split(module_id, split);
  if (!m) throw InvalidInput("no module '" + module_id + "' for split " + std::string(split_name(split)));
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());

  SplitManifest manifest;
  manifest.module_id = module_id;
  manifest.split = split;
  manifest.count = count;
  manifest.seed = seed;
  manifest.policy = options.policy;
  manifest.difficulty_shards = split == Split::Train ? options.difficulty_shards : 1;

  // Lay out blocks: difficulty bins, each cut into shards of at most
  // shard_pairs pairs.
  std::string stem = file_stem(module_id);
  std::vector<Block> blocks;
  {
    std::vector<std::optional<AlphaRange>> bins = {std::nullopt};
    if (manifest.difficulty_shards > 1) {
      bins.clear();
      for (const auto& r : difficulty_shards(options.policy.train_lo, options.policy.train_hi,
                                             manifest.difficulty_shards)) {
        bins.push_back(r);
      }
    }
    std::size_t k = bins.size();
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t lo = count * j / k, hi = count * (j + 1) / k;
      std::size_t n = hi - lo;
      std::size_t parts = std::max<std::size_t>(1, (n + options.shard_pairs - 1) / options.shard_pairs);
      for (std::size_t p = 0; p < parts; ++p) {
        Block b;
        b.first = lo + p * options.shard_pairs;
        b.count = std::min(options.shard_pairs, hi - b.first);
        b.range = bins[j];
        b.file = stem;
        if (k > 1) b.file += "__d" + pad2(j);
        if (parts > 1) b.file += "__part" + pad2(p);
        b.file += ".txt";
        if (b.count > 0) blocks.push_back(std::move(b));
      }
    }
  }

  fs::path dir = out / std::string(split_name(split));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  std::vector<fs::path> written;
  auto cleanup = [&] {
    for (const auto& p : written) fs::remove(p, ec);
  };
  bool dedupe = split != Split::Train && m->spec().dedupe_tests;
  std::unordered_set<std::string> seen;
  try {
    for (const Block& b : blocks) {
      auto results = generate_block(*m, split, seed, options.policy, b, threads);
      if (dedupe) {
        // Serial pass in index order; a repeat is redrawn from a stream
        // keyed by its index and redraw number.
        for (std::size_t i = 0; i < results.size(); ++i) {
          std::size_t index = b.first + i;
          for (std::uint64_t r = 1; seen.count(results[i].pair.question); ++r) {
            if (r > 1000) throw GenerationError(module_id + ": cannot find a fresh test question at index " +
                                                std::to_string(index));
            RandomStream redraw = question_stream(*m, split, seed, index).child("redraw").child(r);
            results[i] = generate_from(*m, split, redraw, options.policy, b.range);
          }
          seen.insert(results[i].pair.question);
        }
      }
      std::string bytes, audit;
      for (std::size_t i = 0; i < results.size(); ++i) {
        bytes += results[i].pair.question;
        bytes += '\n';
        bytes += results[i].pair.answer;
        bytes += '\n';
        if (options.audit_log) audit += audit_line(b.first + i, results[i]);
      }
      fs::path file = dir / b.file;
      written.push_back(file);
      write_file(file, bytes);
      if (options.audit_log) {
        fs::path log = file;
        log.replace_extension(".audit");
        written.push_back(log);
        write_file(log, audit);
      }
      manifest.shards.push_back({b.file, b.count, "sha256:" + sha256_hex(bytes), b.range});
    }
    fs::path mpath = dir / (stem + ".manifest");
    written.push_back(mpath);
    write_file(mpath, manifest_to_text(manifest));
  } catch (const GenerationError& e) {
    cleanup();
    throw GenerationError(std::string(e.what()).rfind(module_id, 0) == 0 ? e.what()
                                                                          : module_id + ": " + e.what());
  } catch (...) {
    cleanup();
    throw;
  }
  return manifest;
}

// ---- reading -----------------------------------------------------------------

std::vector<QAPair> read_shard(const fs::path& path) {
  std::string bytes = read_file(path);
  std::vector<QAPair> out;
  if (bytes.empty()) return out;
  if (bytes.back() != '\n') throw ParseError(path.string() + ": last line is not terminated");
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (bytes[i] == '\n') {
      lines.push_back(bytes.substr(start, i - start));
      start = i + 1;
    }
  }
  if (lines.size() % 2 != 0) {
    throw ParseError(path.string() + ":" + std::to_string(lines.size()) + ": odd number of lines");
  }
  std::optional<std::string> module = module_from_file(path);
  for (std::size_t i = 0; i < lines.size(); i += 2) {
    if (!valid_question(lines[i])) {
      throw ParseError(path.string() + ":" + std::to_string(i + 1) + ": invalid question line");
    }
    if (!valid_answer(lines[i + 1])) {
      throw ParseError(path.string() + ":" + std::to_string(i + 2) + ": invalid answer line");
    }
    QAPair p;
    p.question = std::move(lines[i]);
    p.answer = std::move(lines[i + 1]);
    if (module) p.module_id = *module;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ShardRef> collect_shards(const fs::path& path) {
  auto ref = [](const fs::path& p) {
    ShardRef r;
    r.path = p;
    r.module_id = module_from_file(p);
    try {
      r.split = split_from_name(p.parent_path().filename().string());
    } catch (const InvalidInput&) {
    }
    return r;
  };
  std::vector<ShardRef> out;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(path)) {
      if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back(ref(f));
  } else if (path.extension() == ".manifest") {
    SplitManifest m = read_manifest(path);
    for (const auto& s : m.shards) {
      ShardRef r = ref(path.parent_path() / s.file);
      r.module_id = m.module_id;
      r.split = m.split;
      out.push_back(r);
    }
  } else if (fs::is_regular_file(path, ec)) {
    out.push_back(ref(path));
  } else {
    throw std::runtime_error("no such file or directory: " + path.string());
  }
  return out;
}

double overlap_audit(const fs::path& train, const fs::path& test) {
  std::unordered_set<std::string> seen;
  for (const auto& s : collect_shards(train)) {
    for (auto& p : read_shard(s.path)) seen.insert(std::move(p.question));
  }
  std::size_t total = 0, hits = 0;
  for (const auto& s : collect_shards(test)) {
    for (const auto& p : read_shard(s.path)) {
      ++total;
      hits += seen.count(p.question);
    }
  }
  if (total == 0) throw ParseError("test set " + test.string() + " is empty");
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace mathgen
