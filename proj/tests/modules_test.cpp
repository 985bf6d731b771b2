#include <gtest/gtest.h>

#include <set>

#include "mathgen/catalog.hpp"
#include "mathgen/composition.hpp"
#include "mathgen/errors.hpp"
#include "mathgen/generators.hpp"

using namespace mathgen;

namespace {

Rational R(long p, long q = 1) { return Rational(BigInt(p), BigInt(q)); }

const Module& M(const char* id, ModuleGroup g = ModuleGroup::Train) {
  const Module* m = catalog().find(id, g);
  if (!m) throw std::runtime_error(std::string("no module ") + id);
  return *m;
}

std::size_t literals(const Expression& e) {
  switch (e.kind()) {
    case ExprKind::Number: return 1;
    case ExprKind::Variable: return 0;
    case ExprKind::Neg:
    case ExprKind::Sqrt:
    case ExprKind::Call: return literals(e.lhs());
    default: return literals(e.lhs()) + literals(e.rhs());
  }
}

Rational value_of(const Expression& e) { return eval_constant(e.render(), Environment{}); }

Split split_for(const Module& m) {
  return m.spec().group == ModuleGroup::Extrapolate ? Split::Extrapolate : Split::Train;
}

}  // namespace

TEST(Catalog, Counts) {
  EXPECT_EQ(catalog().modules(ModuleGroup::Train).size(), 39u);
  EXPECT_EQ(catalog().modules(ModuleGroup::Extrapolate).size(), 15u);
  EXPECT_NE(catalog().find("calculus/differentiate", ModuleGroup::Train), nullptr);
  EXPECT_EQ(catalog().find("nonexistent", ModuleGroup::Train), nullptr);
  EXPECT_EQ(catalog().find("calculus/differentiate", ModuleGroup::Extrapolate), nullptr);
  // Same id in both groups; the split picks which one.
  EXPECT_EQ(catalog().find_for_split("measurement/conversion", Split::Extrapolate)->spec().group,
            ModuleGroup::Extrapolate);
  EXPECT_EQ(catalog().find_for_split("measurement/conversion", Split::Train)->spec().group, ModuleGroup::Train);
}

TEST(Catalog, IdsAreWellFormed) {
  std::set<std::pair<int, std::string>> keys;
  for (const Module* m : catalog().all()) {
    const auto& s = m->spec();
    EXPECT_EQ(s.id, s.area + "/" + s.name);
    EXPECT_TRUE(keys.insert({static_cast<int>(s.group), s.id}).second) << s.id;
    EXPECT_FALSE(s.templates.empty()) << s.id;
    if (s.group == ModuleGroup::Extrapolate) {
      EXPECT_NE(catalog().find(s.base, ModuleGroup::Train), nullptr) << s.id;
      EXPECT_FALSE(s.controlled.empty()) << s.id;
    }
  }
}

TEST(Catalog, DuplicateAddThrows) {
  Catalog c;
  ModuleSpec s;
  s.id = "x/y";
  s.area = "x";
  s.name = "y";
  s.templates = {"What is {a}?"};
  auto gen = [](GenContext&) {};
  auto solve = [](std::size_t, const Slots&, const Environment&) { return std::string("1"); };
  c.add(Module(s, gen, solve));
  EXPECT_THROW(c.add(Module(s, gen, solve)), std::logic_error);
}

TEST(FillTemplate, Examples) {
  EXPECT_EQ(fill_template("Calculate {a} * {b}.", {{"a", "17"}, {"b", "4"}}), "Calculate 17 * 4.");
  EXPECT_EQ(fill_template("No slots.", {}), "No slots.");
  EXPECT_THROW(fill_template("{a} and {b}", {{"a", "1"}}), std::logic_error);
}

TEST(SplitQuestion, ClausesAndFinal) {
  auto p = split_question("Let e(l) = l - 6. Is 2 a factor of both e(9) and 2?");
  ASSERT_EQ(p.clauses.size(), 1u);
  EXPECT_EQ(p.clauses[0], "Let e(l) = l - 6.");
  EXPECT_EQ(p.final_question, "Is 2 a factor of both e(9) and 2?");
  // Decimal points are not sentence ends.
  EXPECT_EQ(split_sentences("Calculate -841880142.544 + 411127.").size(), 1u);
}

// ---- golden solves ---------------------------------------------------------

struct Golden {
  const char* module;
  const char* question;
  const char* answer;
};

class GoldenSolve : public ::testing::TestWithParam<Golden> {};

TEST_P(GoldenSolve, EagerAndInlineOraclesAgree) {
  const Golden& g = GetParam();
  const Module& m = M(g.module);
  EXPECT_EQ(solve_with(m, g.question), g.answer);
  EXPECT_EQ(solve_with(m, g.question, true), g.answer);
  auto any = solve_any(g.question);
  ASSERT_TRUE(any.has_value());
  EXPECT_EQ(any->second, g.answer);
}

INSTANTIATE_TEST_SUITE_P(
    Showcase, GoldenSolve,
    ::testing::Values(
        Golden{"algebra/linear_2d", "Solve -42*r + 27*c = -1167 and 130*r + 4*c = 372 for r.", "4"},
        Golden{"arithmetic/add_or_sub", "Calculate -841880142.544 + 411127.", "-841469015.544"},
        Golden{"polynomials/compose",
               "Let x(g) = 9*g + 1. Let q(c) = 2*c + 1. Let f(i) = 3*i - 39. Let w(j) = q(x(j)). Calculate f(w(a)).",
               "54*a - 30"},
        Golden{"numbers/is_factor", "Let e(l) = l - 6. Is 2 a factor of both e(9) and 2?", "False"},
        Golden{"calculus/differentiate",
               "Let u(n) = -n**3 - n**2. Let e(c) = -2*c**3 + c. Let l(j) = -118*e(j) + 54*u(j). What is the "
               "derivative of l(a)?",
               "546*a**2 - 108*a - 118"},
        Golden{"probability/swr_p_sequence",
               "Three letters picked without replacement from qqqkkklkqkkk. Give prob of sequence qql.", "1/110"},
        Golden{"polynomials/compose",
               "Let f(x) = 2*x + 3. Let g(x) = 7*x - 4. Let h(x) = -5*x - 8. What is g(h(f(x)))?", "-70*x - 165"},
        Golden{"arithmetic/mul", "Calculate 17 * 4.", "68"},
        Golden{"comparison/pair", "Let k(c) = -611*c + 2188857. Is k(-103) != 2251790?", "False"},
        Golden{"numbers/list_prime_factors", "What are the prime factors of 235232673?", "3, 13, 19, 317453"},
        Golden{"comparison/sort", "Sort -139/4, 40.8, -555, 607 in increasing order.", "-555, -139/4, 40.8, 607"}));

TEST(SolveWith, UnmatchedQuestionThrows) {
  EXPECT_THROW(solve_with(M("numbers/gcd"), "What is the meaning of life?"), ParseError);
  EXPECT_FALSE(solve_any("What is the meaning of life?").has_value());
}

// ---- backward generation ---------------------------------------------------

TEST(BackwardArithmetic, HitsTarget) {
  RandomStream rng(31);
  for (auto [answer, ops] : std::vector<std::pair<Rational, int>>{{R(68), 1}, {R(0), 1}, {R(1, 110), 2}}) {
    for (int i = 0; i < 50; ++i) {
      EntropyBudget b;
      Expression e = backward_generate_arithmetic(answer, ops, rng, b);
      EXPECT_EQ(value_of(e), answer) << e.render();
      EXPECT_EQ(literals(e), static_cast<std::size_t>(ops + 1)) << e.render();
      EXPECT_GT(b.credit(), 0.0);
    }
  }
}

TEST(BackwardArithmetic, RandomTargetsReparse) {
  RandomStream rng(32);
  for (int i = 0; i < 500; ++i) {
    EntropyBudget b;
    Rational answer(BigInt(rng.range(-1000, 1000)), BigInt(rng.range(1, 20)));
    int ops = static_cast<int>(rng.range(1, 6));
    Expression e = backward_generate_arithmetic(answer, ops, rng, b);
    EXPECT_EQ(value_of(parse_expression(e.render())), answer) << e.render();
  }
}

TEST(BackwardLinear2d, SolvesBack) {
  RandomStream rng(33);
  EXPECT_EQ(linear_row(R(-42), R(27), R(-1167), 'r', 'c').render(), "-42*r + 27*c = -1167");
  EXPECT_EQ(linear_row(R(130), R(4), R(372), 'r', 'c').render(), "130*r + 4*c = 372");
  for (int i = 0; i < 300; ++i) {
    EntropyBudget b;
    Rational x(rng.range(-50, 50)), y(rng.range(-50, 50));
    LinearSystem2 s = backward_generate_linear_2d(x, y, 'r', 'c', rng, b);
    EXPECT_EQ(solve_linear_2d(s, 'r'), x);
    EXPECT_EQ(solve_linear_2d(s, 'c'), y);
    EXPECT_EQ(s.a * x + s.b * y, s.e);
    EXPECT_EQ(s.c * x + s.d * y, s.f);
    EXPECT_FALSE((s.a * s.d - s.b * s.c).is_zero());
  }
  EntropyBudget b;
  LinearSystem2 zero = backward_generate_linear_2d(R(0), R(0), 'x', 'y', rng, b);
  EXPECT_TRUE(zero.e.is_zero());
  EXPECT_TRUE(zero.f.is_zero());
}

// ---- composition -------------------------------------------------------------

TEST(BuildPlan, DepthZeroIsBareQuestion) {
  CompositionPlan p = build_plan(M("numbers/gcd"), RandomStream(1), 6.0, 0);
  EXPECT_TRUE(p.nodes.empty());
  EXPECT_EQ(phrase_plan(p), p.question);
  EXPECT_EQ(p.question.rfind("Let", 0), std::string::npos);
  EXPECT_EQ(solve_plan(p, M("numbers/gcd")), p.answer);
}

TEST(BuildPlan, DeepPlansResolve) {
  int built = 0;
  for (const Module* m : catalog().modules(ModuleGroup::Train)) {
    if (!m->spec().composable) continue;
    for (int depth = 1; depth <= 3; ++depth) {
      for (std::uint64_t s = 0; s < 20; ++s) {
        CompositionPlan p;
        try {
          p = build_plan(*m, RandomStream(s).child(m->id()), 6.0, depth);
        } catch (const RetrySignal&) {
          continue;
        } catch (const ContractViolation&) {
          continue;
        }
        ++built;
        std::string text = phrase_plan(p);
        EXPECT_EQ(solve_plan(p, *m), p.answer) << text;
        EXPECT_EQ(solve_with(*m, text, true), p.answer) << text;
        EXPECT_EQ(split_question(text).clauses.size() > 0, !p.nodes.empty()) << text;
        for (std::size_t i = 0; i < p.nodes.size(); ++i) {
          for (int in : p.nodes[i].inputs) EXPECT_LT(in, static_cast<int>(i)) << text;
        }
      }
    }
  }
  EXPECT_GT(built, 500);
}

TEST(DrawDepth, TrainDistribution) {
  RandomStream rng(4);
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    int d = draw_depth(rng);
    ASSERT_GE(d, 0);
    ASSERT_LE(d, 3);
    ++counts[d];
  }
  // Geometric with ratio 0.65, truncated at 3.
  double z = 1 + 0.65 + 0.65 * 0.65 + 0.65 * 0.65 * 0.65;
  double w = 1;
  for (int d = 0; d < 4; ++d, w *= 0.65) EXPECT_NEAR(counts[d] / double(n), w / z, 0.01) << d;
}

// ---- validator -------------------------------------------------------------

TEST(Validator, Limits) {
  EXPECT_TRUE(valid_question(std::string(160, 'a')));
  EXPECT_FALSE(valid_question(std::string(161, 'a')));
  EXPECT_TRUE(valid_answer(std::string(30, '1')));
  EXPECT_FALSE(valid_answer(std::string(31, '1')));
  EXPECT_FALSE(valid_answer(""));
  EXPECT_FALSE(valid_question("tab\there"));
  EXPECT_FALSE(valid_question("caf\xc3\xa9"));
  EXPECT_FALSE(valid_answer("line\n"));
  EXPECT_TRUE(valid_question(" ~"));
}

// ---- every module --------------------------------------------------------------

class EveryModule : public ::testing::TestWithParam<const Module*> {};

TEST_P(EveryModule, EmitsValidCertifiedSelfCheckedPairs) {
  const Module& m = *GetParam();
  Split split = split_for(m);
  for (double alpha : {3.0, 6.5, 8.0, 10.0}) {
    for (std::uint64_t i = 0; i < 8; ++i) {
      RandomStream rng = RandomStream(99).child(m.id()).child(i);
      GenerateResult r = generate(m, split, rng, alpha);
      const QAPair& p = r.pair;
      EXPECT_TRUE(valid_pair(p)) << p.question << " => " << p.answer;
      EXPECT_EQ(p.module_id, m.id());
      double want = m.spec().max_alpha > 0 ? std::min(alpha, m.spec().max_alpha) : alpha;
      EXPECT_DOUBLE_EQ(p.alpha, want);
      EXPECT_TRUE(certifies(r.draws, p.alpha)) << p.question;
      EXPECT_EQ(solve_with(m, p.question), p.answer) << p.question;
      EXPECT_EQ(solve_with(m, p.question, true), p.answer) << p.question;
      EXPECT_NE(p.answer.back(), '.');
      char end = p.question.back();
      EXPECT_TRUE(end == '.' || end == '?') << p.question;
      // Same stream, same pair.
      EXPECT_EQ(generate(m, split, rng, alpha).pair.question, p.question);
    }
  }
}

class ControlledModule : public EveryModule {};

TEST_P(ControlledModule, StaysInsideOrBeyondTrainingEnvelope) {
  const Module& m = *GetParam();
  const auto& s = m.spec();
  Split split = split_for(m);
  long train_max = s.group == ModuleGroup::Extrapolate ? M(s.base.c_str()).spec().train_max : s.train_max;
  for (std::uint64_t i = 0; i < 40; ++i) {
    GenerateResult r = generate(m, split, RandomStream(7).child(i), split == Split::Train ? 3.0 + 0.175 * i : 8.0);
    if (s.group == ModuleGroup::Extrapolate) {
      EXPECT_GT(r.plan.controlled, train_max) << r.pair.question;
    } else {
      EXPECT_LE(r.plan.controlled, train_max) << r.pair.question;
    }
  }
}

TEST_P(EveryModule, TemplatesRoundTrip) {
  const Module& m = *GetParam();
  for (std::uint64_t i = 0; i < 10; ++i) {
    GenerateOptions o;
    o.depth = 0;
    GenerateResult r = generate(m, split_for(m), RandomStream(5).child(i), 6.0, o);
    std::string final_q = split_question(r.pair.question).final_question;
    auto found = m.matches(final_q);
    ASSERT_FALSE(found.empty()) << final_q;
    for (const auto& [idx, slots] : found) EXPECT_EQ(m.render(idx, slots), final_q);
  }
}

std::string param_name(const ::testing::TestParamInfo<const Module*>& info) {
  std::string n = info.param->id() + (info.param->spec().group == ModuleGroup::Extrapolate ? "_x" : "");
  for (char& c : n) {
    if (c == '/') c = '_';
  }
  return n;
}

std::vector<const Module*> controlled_modules() {
  std::vector<const Module*> out;
  for (const Module* m : catalog().all()) {
    if (!m->spec().controlled.empty()) out.push_back(m);
  }
  return out;
}

INSTANTIATE_TEST_SUITE_P(Catalog, EveryModule, ::testing::ValuesIn(catalog().all()), param_name);
INSTANTIATE_TEST_SUITE_P(Catalog, ControlledModule, ::testing::ValuesIn(controlled_modules()), param_name);

TEST(Generate, ZeroAttemptsThrows) {
  GenerateOptions o;
  o.max_attempts = 0;
  EXPECT_THROW(generate(M("numbers/gcd"), Split::Train, RandomStream(1), 5.0, o), GenerationError);
}
