// mathgen: generate, verify and score question/answer datasets.
//
// Exit codes: 0 success, 1 usage, 2 data or alignment error, 3 generation error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "mathgen/errors.hpp"
#include "mathgen/eval.hpp"
#include "mathgen/pipeline.hpp"

namespace fs = std::filesystem;
using namespace mathgen;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kGeneration = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_kv = false;

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// Strings in kv output are printed verbatim; values never contain newlines.
void kv(const std::string& key, const std::string& value) { std::cout << key << "=" << value << "\n"; }

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// ---- generate ----------------------------------------------------------------

struct GenerateArgs {
  std::string module;
  std::string split;
  std::optional<std::size_t> count;
  std::uint64_t seed = 0;
  std::string out;
  int difficulty_shards = 1;
  bool audit_log = false;
  unsigned threads = 0;
};

int run_generate(const GenerateArgs& a) {
  Split split;
  try {
    split = split_from_name(a.split);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  if (a.difficulty_shards < 1) throw UsageError("--difficulty-shards must be at least 1");
  std::vector<std::string> ids;
  if (a.module == "all") {
    for (const Module* m : catalog().modules(split == Split::Extrapolate ? ModuleGroup::Extrapolate
                                                                         : ModuleGroup::Train)) {
      ids.push_back(m->id());
    }
  } else {
    if (!catalog().find_for_split(a.module, split)) {
      throw UsageError("unknown module '" + a.module + "' for split " + a.split + " (see list-modules)");
    }
    ids.push_back(a.module);
  }
  std::size_t count = a.count.value_or(default_count(split));
  if (count < 1) throw UsageError("--count must be at least 1");
  SplitOptions opt;
  opt.difficulty_shards = a.difficulty_shards;
  opt.audit_log = a.audit_log;
  opt.threads = a.threads;
  for (const auto& id : ids) {
    SplitManifest m = generate_split(id, split, count, a.seed, a.out, opt);
    if (g_kv) {
      kv("module." + id + ".count", std::to_string(m.count));
      kv("module." + id + ".shards", std::to_string(m.shards.size()));
    } else {
      std::cout << pad(id, 48) << " " << a.split << "  " << m.count << " pairs in " << m.shards.size()
                << (m.shards.size() == 1 ? " shard" : " shards") << "\n";
    }
  }
  return kOk;
}

// ---- evaluate ----------------------------------------------------------------

int run_evaluate(const std::string& predictions, const std::string& truth, bool per_module) {
  ScoreReport r = evaluate(predictions, truth);
  if (g_kv) {
    if (per_module) {
      for (const auto& m : r.modules) {
        std::string k = "module." + m.module_id + "." + m.split + ".";
        kv(k + "correct", std::to_string(m.correct));
        kv(k + "total", std::to_string(m.total));
        kv(k + "accuracy", fixed(m.accuracy()));
      }
    }
    for (const auto& [split, acc] : r.split_macro) kv("macro." + split, fixed(acc));
    kv("macro", fixed(r.macro));
    kv("modules", std::to_string(r.modules.size()));
    return kOk;
  }
  if (per_module) {
    for (const auto& m : r.modules) {
      std::cout << pad(m.module_id, 48) << " " << pad(m.split, 12) << " " << fixed(m.accuracy(), 4) << "  ("
                << m.correct << "/" << m.total << ")\n";
      for (const auto& mm : m.mismatches) {
        std::cout << "    #" << mm.index << " " << mm.question << "\n      predicted: " << mm.predicted
                  << "\n      expected:  " << mm.truth << "\n";
      }
    }
  }
  for (const auto& [split, acc] : r.split_macro) {
    std::cout << pad("macro (" + split + ")", 48) << " " << fixed(acc, 4) << "\n";
  }
  std::cout << pad("macro (all modules)", 48) << " " << fixed(r.macro, 4) << "\n";
  return kOk;
}

// ---- verify --------------------------------------------------------------------

int run_verify(const std::string& data) {
  VerifyReport r = verify_dataset(data);
  if (g_kv) {
    kv("total", std::to_string(r.total));
    kv("verified", std::to_string(r.verified));
    kv("mismatches", std::to_string(r.mismatches.size()));
    kv("unparseable", std::to_string(r.unparseable.size()));
  } else {
    std::cout << "verified " << r.verified << "/" << r.total << ", " << r.mismatches.size() << " mismatches, "
              << r.unparseable.size() << " unparseable\n";
  }
  for (const auto& m : r.mismatches) {
    std::cerr << "MISMATCH " << m.file << " pair " << m.pair_index << ": " << m.question << "\n  stored: " << m.stored
              << "\n  solved: " << m.solved << "\n";
  }
  for (const auto& u : r.unparseable) {
    std::cerr << "UNPARSEABLE " << u.file << " pair " << u.pair_index << ": " << u.question << " (" << u.detail
              << ")\n";
  }
  return r.mismatches.empty() ? kOk : kData;
}

// ---- audit-overlap -------------------------------------------------------------

int run_audit(const std::string& train, const std::string& test) {
  double f = overlap_audit(train, test);
  if (g_kv) {
    kv("overlap", fixed(f, 8));
  } else {
    std::cout << "overlap " << fixed(f, 6) << " of test questions occur in train\n";
  }
  return kOk;
}

// ---- list-modules --------------------------------------------------------------

int run_list(const std::string& area) {
  std::size_t shown = 0;
  for (const Module* m : catalog().all()) {
    const ModuleSpec& s = m->spec();
    if (!area.empty() && s.area != area) continue;
    ++shown;
    std::string group = s.group == ModuleGroup::Train ? "train" : "extrapolate";
    if (g_kv) {
      std::string k = "module." + s.id + "." + group + ".";
      kv(k + "templates", std::to_string(s.templates.size()));
      kv(k + "composable", s.composable ? "true" : "false");
      if (!s.controlled.empty()) kv(k + "controlled", s.controlled);
    } else {
      std::cout << pad(s.id, 48) << " " << pad(group, 12) << " " << s.templates.size() << " templates"
                << (s.composable ? ", composable" : "")
                << (s.controlled.empty() ? "" : ", varies " + s.controlled) << "\n";
    }
  }
  if (shown == 0 && !area.empty()) throw UsageError("no modules in area '" + area + "'");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate, verify and score mathematics question datasets."};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "kv"}));

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Generate a split to disk");
  gen->add_option("--module", ga.module, "Module id or 'all'")->required();
  gen->add_option("--split", ga.split, "train, interpolate or extrapolate")->required();
  gen->add_option("--count", ga.count, "Pairs per module (default 2000000 train, 10000 test)");
  gen->add_option("--seed", ga.seed, "Seed")->required();
  gen->add_option("--out", ga.out, "Output directory")->required();
  gen->add_option("--difficulty-shards", ga.difficulty_shards, "Split train alpha range into K bins");
  gen->add_flag("--audit-log", ga.audit_log, "Write per-question draw logs");
  gen->add_option("--threads", ga.threads, "Worker threads (default: all cores)");

  std::string predictions, truth;
  bool per_module = false;
  auto* ev = app.add_subcommand("evaluate", "Score predictions against truth");
  ev->add_option("--predictions", predictions, "One answer per line")->required();
  ev->add_option("--truth", truth, "Shard file, manifest or directory")->required();
  ev->add_flag("--per-module", per_module, "Report each module");

  std::string data;
  auto* ver = app.add_subcommand("verify", "Re-solve every stored pair");
  ver->add_option("--data", data, "Shard file, manifest or directory")->required();

  std::string train, test;
  auto* aud = app.add_subcommand("audit-overlap", "Fraction of test questions present in train");
  aud->add_option("--train", train, "Train shards")->required();
  aud->add_option("--test", test, "Test shards")->required();

  std::string area;
  auto* lst = app.add_subcommand("list-modules", "List registered modules");
  lst->add_option("--area", area, "Only this area");

  for (auto* sub : {gen, ev, ver, aud, lst}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  g_kv = format == "kv";

  try {
    if (*gen) return run_generate(ga);
    if (*ev) return run_evaluate(predictions, truth, per_module);
    if (*ver) return run_verify(data);
    if (*aud) return run_audit(train, test);
    if (*lst) return run_list(area);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GenerationError& e) {
    std::cerr << "generation error: " << e.what() << "\n";
    return kGeneration;
  } catch (const AlignmentError& e) {
    std::cerr << "alignment error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
