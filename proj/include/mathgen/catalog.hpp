#pragma once

// Module catalog, composition plans and the generate/solve loop.
//
// A module owns a family of question templates with "{slot}" placeholders.
// Generation fills a CompositionPlan (zero or more "Let"/"Suppose"
// clauses followed by the final question) and the expected answer; the
// generic loop then re-solves the phrased question from text alone and
// only emits it when both answers agree.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "mathgen/numeric.hpp"
#include "mathgen/polynomial.hpp"
#include "mathgen/sampler.hpp"

namespace mathgen {

enum class EntityKind { Integer, Rational, Decimal, Function, Boolean, LetterBag, Text };
std::string_view entity_kind_name(EntityKind k);

enum class ModuleGroup { Train, Extrapolate };

struct QAPair {
  std::string question;
  std::string answer;
  std::string module_id;
  Split split = Split::Train;
  double alpha = 0.0;
};

/// One intermediate entity of a composed question.
struct SubProblem {
  std::string producer;        // e.g. "value_let", "function_compose"
  EntityKind kind = EntityKind::Integer;
  std::string name;            // entity letter(s), empty for the final node
  std::string clause;          // phrased sentence, e.g. "Let n = 4 - 7."
  std::vector<int> inputs;     // earlier node indices this one references
};

struct CompositionPlan {
  std::vector<SubProblem> nodes;
  std::string question;        // final sentence(s)
  std::string answer;          // answer computed while generating
  long controlled = 0;         // module's difficulty parameter for this question
  int depth = 0;
};

/// Question text for a plan: clauses then the final question.
std::string phrase_plan(const CompositionPlan& plan);

/// Per-question generation state.
class GenContext {
 public:
  GenContext(RandomStream rng, double alpha, Split split, ModuleGroup group, int depth);

  RandomStream& rng() { return rng_; }
  EntropyBudget& budget() { return budget_; }
  CompositionPlan& plan() { return plan_; }
  /// Alpha to size draws against (target plus any widening boost).
  double alpha() const { return sizing_alpha_; }
  void set_sizing_alpha(double a) { sizing_alpha_ = a; }
  Split split() const { return split_; }
  bool extrapolate() const { return group_ == ModuleGroup::Extrapolate; }
  int depth() const { return depth_; }
  void set_depth(int d) { depth_ = d; }

  /// Letters already spoken for in this question.
  void reserve_letter(char c) { used_ += c; }
  void reserve_letters(std::string_view cs) { used_ += cs; }
  /// Fresh lowercase letter not yet used; never credited.
  char fresh_letter();

  /// Integer uniform on [-w, w] with w sized from `alpha_share`; at least
  /// `min_width`, at most `max_width` (when positive).
  BigInt sample_symmetric(double alpha_share, const BigInt& min_width = BigInt(1),
                          const BigInt& max_width = BigInt(0), std::string label = {});
  /// Integer uniform on [1, n] with n sized from `alpha_share`.
  BigInt sample_positive(double alpha_share, const BigInt& min_n = BigInt(1), const BigInt& max_n = BigInt(0),
                         std::string label = {});
  BigInt sample_nonzero(double alpha_share, const BigInt& min_width = BigInt(1),
                        const BigInt& max_width = BigInt(0), std::string label = {});
  BigInt sample(const IntConstraint& c, std::string label = {});
  /// Uncredited choices (templates, shapes).
  std::size_t choose(std::size_t n) { return static_cast<std::size_t>(rng_.below(n)); }
  long choose_range(long lo, long hi) { return rng_.range(lo, hi); }
  bool coin() { return rng_.coin(); }

 private:
  RandomStream rng_;
  EntropyBudget budget_;
  CompositionPlan plan_;
  double sizing_alpha_;
  Split split_;
  ModuleGroup group_;
  int depth_;
  std::string used_;
};

using Slots = std::map<std::string, std::string>;

/// Replaces each "{name}" in `tpl` by slots[name]; throws std::logic_error
/// on a missing slot.
std::string fill_template(std::string_view tpl, const Slots& slots);

/// Parsed environment of a question: defined values and functions.
struct Environment {
  Scope scope;
};

struct ModuleSpec {
  std::string id;                  // "area/name"
  std::string area;
  std::string name;
  ModuleGroup group = ModuleGroup::Train;
  std::string base;                // train module an extrapolation variant stretches
  std::vector<EntityKind> inputs;
  EntityKind output = EntityKind::Integer;
  bool composable = false;         // accepts entities produced by other modules
  bool dedupe_tests = false;       // small surface space: hash test questions
  std::vector<std::string> templates;
  std::string controlled;          // name of the difficulty parameter, if any
  long train_max = 0;              // largest controlled value in training
  double alpha_override = -1.0;    // extrapolation alpha (defaults to the test alpha)
  double max_alpha = -1.0;         // entropy ceiling when the question space is small
};

class Module {
 public:
  using Generate = std::function<void(GenContext&)>;
  using Solve = std::function<std::string(std::size_t template_index, const Slots&, const Environment&)>;

  Module(ModuleSpec spec, Generate generate, Solve solve);

  const ModuleSpec& spec() const { return spec_; }
  const std::string& id() const { return spec_.id; }
  void generate_into(GenContext& ctx) const { generate_(ctx); }

  /// (template index, slots) for every template matching `final_question`.
  std::vector<std::pair<std::size_t, Slots>> matches(std::string_view final_question) const;
  std::string solve(std::size_t template_index, const Slots& slots, const Environment& env) const {
    return solve_(template_index, slots, env);
  }
  /// Substitutes slots into template `index`.
  std::string render(std::size_t index, const Slots& slots) const;

 private:
  ModuleSpec spec_;
  Generate generate_;
  Solve solve_;
  struct Compiled {
    std::regex pattern;
    std::vector<std::string> slot_names;
  };
  std::vector<Compiled> compiled_;
};

class Catalog {
 public:
  /// Throws std::logic_error on a duplicate (group, id).
  void add(Module m);
  const Module* find(std::string_view id, ModuleGroup group) const;
  /// Train modules first, or extrapolation modules for that split.
  const Module* find_for_split(std::string_view id, Split split) const;
  const std::vector<const Module*>& modules(ModuleGroup group) const;
  std::vector<const Module*> all() const;

 private:
  std::vector<std::unique_ptr<Module>> owned_;
  std::vector<const Module*> train_, extrapolate_;
};

/// The full registry, built once.
const Catalog& catalog();

// ---- text-level solving -----------------------------------------------------

/// Splits text into sentences ending in '.' or '?' (a terminator followed by
/// a space or the end of text).
std::vector<std::string> split_sentences(std::string_view text);

struct ParsedQuestion {
  std::vector<std::string> clauses;  // leading "Let"/"Suppose" sentences
  std::string final_question;
};
ParsedQuestion split_question(std::string_view question);

/// Eager evaluation of clauses in order.
Environment parse_environment(const std::vector<std::string>& clauses);
/// Independent oracle: inlines every definition into the expressions that
/// use it and evaluates from scratch.
Environment inline_environment(const std::vector<std::string>& clauses);

/// Evaluates a slot expression to a constant in `env`.
Rational eval_constant(std::string_view text, const Environment& env);
Polynomial eval_polynomial(std::string_view text, const Environment& env);

/// Solves `question` with a specific module (throws ParseError if no
/// template matches or every matching template fails to solve).
std::string solve_with(const Module& m, std::string_view question, bool use_inline_oracle = false);
/// Tries every module of the catalog; nullopt if none can solve it.
std::optional<std::pair<const Module*, std::string>> solve_any(std::string_view question);

// ---- generation -------------------------------------------------------------

struct GenerateOptions {
  int max_attempts = 100;
  /// Composition depth; negative draws the split's default distribution.
  int depth = -1;
};

struct GenerateResult {
  QAPair pair;
  CompositionPlan plan;
  std::vector<DrawRecord> draws;
  int attempts = 0;
};

/// Train depth: geometric over {0,1,2,3} with ratio 0.65 (mean ~1).
int draw_depth(RandomStream& rng);

/// Validates length and alphabet; false on any violation.
bool valid_question(std::string_view q);
bool valid_answer(std::string_view a);
bool valid_pair(const QAPair& p);

/// Generates one question at `alpha` from `rng`. Throws GenerationError
/// after `max_attempts` failed attempts.
GenerateResult generate(const Module& m, Split split, RandomStream rng, double alpha,
                        const GenerateOptions& options = {});

}  // namespace mathgen
