#include "mathgen/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mathgen/errors.hpp"
#include "mathgen/expression.hpp"
#include "mathgen/solvers.hpp"
#include "modules/registry.hpp"

namespace mathgen {

std::string_view entity_kind_name(EntityKind k) {
  switch (k) {
    case EntityKind::Integer:
      return "integer";
    case EntityKind::Rational:
      return "rational";
    case EntityKind::Decimal:
      return "decimal";
    case EntityKind::Function:
      return "polynomial-function";
    case EntityKind::Boolean:
      return "boolean";
    case EntityKind::LetterBag:
      return "letter-bag";
    case EntityKind::Text:
      return "text";
  }
  return "text";
}

std::string phrase_plan(const CompositionPlan& plan) {
  std::string out;
  for (const auto& n : plan.nodes) {
    if (n.clause.empty()) continue;
    out += n.clause;
    out += ' ';
  }
  return out + plan.question;
}

// ---------------------------------------------------------------------------

GenContext::GenContext(RandomStream rng, double alpha, Split split, ModuleGroup group, int depth)
    : rng_(rng), budget_(alpha), sizing_alpha_(alpha), split_(split), group_(group), depth_(depth) {
  plan_.depth = depth;
}

char GenContext::fresh_letter() {
  std::string pool;
  for (char c = 'a'; c <= 'z'; ++c) {
    // e and i read as constants, o as zero
    if (c == 'e' || c == 'i' || c == 'o') continue;
    if (used_.find(c) == std::string::npos) pool += c;
  }
  if (pool.empty()) throw RetrySignal("out of letters");
  char c = pool[rng_.below(pool.size())];
  used_ += c;
  return c;
}

namespace {

BigInt clamp_width(BigInt w, const BigInt& lo, const BigInt& hi) {
  if (w < lo) w = lo;
  if (hi.sign() > 0 && hi < w) w = hi;
  return w < BigInt(1) ? BigInt(1) : w;
}

}  // namespace

BigInt GenContext::sample_symmetric(double alpha_share, const BigInt& min_width, const BigInt& max_width,
                                    std::string label) {
  BigInt w = clamp_width(symmetric_width_for(alpha_share), min_width, max_width);
  return sample_integer(rng_, budget_, Symmetric{w}, std::move(label));
}

BigInt GenContext::sample_positive(double alpha_share, const BigInt& min_n, const BigInt& max_n, std::string label) {
  BigInt n = clamp_width(set_size_for(alpha_share), min_n, max_n);
  return sample_integer(rng_, budget_, FirstPositive{n}, std::move(label));
}

BigInt GenContext::sample_nonzero(double alpha_share, const BigInt& min_width, const BigInt& max_width,
                                  std::string label) {
  // [-w, w] minus zero has 2w members.
  BigInt w = clamp_width(set_size_for(alpha_share) / BigInt(2), min_width, max_width);
  return sample_integer(rng_, budget_, Nonzero{-w, w}, std::move(label));
}

BigInt GenContext::sample(const IntConstraint& c, std::string label) {
  return sample_integer(rng_, budget_, c, std::move(label));
}

// ---------------------------------------------------------------------------

namespace {

std::string regex_escape(std::string_view s) {
  static const std::string special = R"(.^$|()[]{}*+?\)";
  std::string out;
  for (char c : s) {
    if (special.find(c) != std::string::npos) out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Module::Module(ModuleSpec spec, Generate generate, Solve solve)
    : spec_(std::move(spec)), generate_(std::move(generate)), solve_(std::move(solve)) {
  for (const auto& t : spec_.templates) {
    Compiled c;
    std::string pattern = "^";
    std::size_t i = 0;
    while (i < t.size()) {
      auto open = t.find('{', i);
      if (open == std::string::npos) {
        pattern += regex_escape(std::string_view(t).substr(i));
        break;
      }
      auto close = t.find('}', open);
      if (close == std::string::npos) throw std::logic_error("unbalanced template: " + t);
      pattern += regex_escape(std::string_view(t).substr(i, open - i));
      pattern += "(.+?)";
      c.slot_names.push_back(t.substr(open + 1, close - open - 1));
      i = close + 1;
    }
    pattern += "$";
    c.pattern = std::regex(pattern);
    compiled_.push_back(std::move(c));
  }
}

std::vector<std::pair<std::size_t, Slots>> Module::matches(std::string_view final_question) const {
  std::vector<std::pair<std::size_t, Slots>> out;
  std::string q(final_question);
  for (std::size_t i = 0; i < compiled_.size(); ++i) {
    std::smatch m;
    if (!std::regex_match(q, m, compiled_[i].pattern)) continue;
    Slots slots;
    bool consistent = true;
    for (std::size_t k = 0; k < compiled_[i].slot_names.size(); ++k) {
      const std::string& name = compiled_[i].slot_names[k];
      std::string v = m[k + 1].str();
      auto [it, inserted] = slots.emplace(name, v);
      if (!inserted && it->second != v) consistent = false;
    }
    if (consistent) out.emplace_back(i, std::move(slots));
  }
  return out;
}

std::string fill_template(std::string_view t, const Slots& slots) {
  std::string out;
  std::size_t i = 0;
  while (i < t.size()) {
    auto open = t.find('{', i);
    if (open == std::string_view::npos) {
      out += t.substr(i);
      break;
    }
    auto close = t.find('}', open);
    if (close == std::string_view::npos) throw std::logic_error("unbalanced template");
    out += t.substr(i, open - i);
    std::string name(t.substr(open + 1, close - open - 1));
    auto it = slots.find(name);
    if (it == slots.end()) throw std::logic_error("slot {" + name + "} unfilled in '" + std::string(t) + "'");
    out += it->second;
    i = close + 1;
  }
  return out;
}

std::string Module::render(std::size_t index, const Slots& slots) const {
  return fill_template(spec_.templates.at(index), slots);
}

// ---------------------------------------------------------------------------

void Catalog::add(Module m) {
  if (find(m.id(), m.spec().group)) throw std::logic_error("duplicate module registration: " + m.id());
  owned_.push_back(std::make_unique<Module>(std::move(m)));
  const Module* p = owned_.back().get();
  (p->spec().group == ModuleGroup::Train ? train_ : extrapolate_).push_back(p);
}

const Module* Catalog::find(std::string_view id, ModuleGroup group) const {
  for (const Module* m : modules(group)) {
    if (m->id() == id) return m;
  }
  return nullptr;
}

const Module* Catalog::find_for_split(std::string_view id, Split split) const {
  return find(id, split == Split::Extrapolate ? ModuleGroup::Extrapolate : ModuleGroup::Train);
}

const std::vector<const Module*>& Catalog::modules(ModuleGroup group) const {
  return group == ModuleGroup::Train ? train_ : extrapolate_;
}

std::vector<const Module*> Catalog::all() const {
  std::vector<const Module*> out = train_;
  out.insert(out.end(), extrapolate_.begin(), extrapolate_.end());
  return out;
}

const Catalog& catalog() {
  static const Catalog c = [] {
    Catalog cat;
    modules::register_algebra(cat);
    modules::register_arithmetic(cat);
    modules::register_calculus(cat);
    modules::register_comparison(cat);
    modules::register_measurement(cat);
    modules::register_numbers(cat);
    modules::register_polynomials(cat);
    modules::register_probability(cat);
    return cat;
  }();
  return c;
}

// ---------------------------------------------------------------------------

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if ((c == '.' || c == '?') && (i + 1 == text.size() || text[i + 1] == ' ')) {
      out.emplace_back(text.substr(start, i + 1 - start));
      start = i + 2;
      i = i + 1;
    }
  }
  if (start < text.size()) out.emplace_back(text.substr(start));
  return out;
}

namespace {

bool is_clause(const std::string& s) { return s.rfind("Let ", 0) == 0 || s.rfind("Suppose ", 0) == 0; }

}  // namespace

ParsedQuestion split_question(std::string_view question) {
  auto sentences = split_sentences(question);
  ParsedQuestion out;
  std::size_t i = 0;
  while (i + 1 < sentences.size() && is_clause(sentences[i])) out.clauses.push_back(sentences[i++]);
  for (; i < sentences.size(); ++i) {
    if (!out.final_question.empty()) out.final_question += ' ';
    out.final_question += sentences[i];
  }
  return out;
}

namespace {

const std::regex kDerivClause(R"(^Let ([a-z])\(([a-z])\) be the (first|second|third) derivative of (.+)\.$)");
const std::regex kFunctionClause(R"(^Let ([a-z])\(([a-z])\) = (.+)\.$)");
const std::regex kValueClause(R"(^Let ([a-z]) (?:=|be) (.+)\.$)");
const std::regex kSupposeClause(R"(^Suppose (.+)\.$)");

unsigned order_from_word(const std::string& w) {
  if (w == "first") return 1;
  if (w == "second") return 2;
  return 3;
}

std::vector<std::string> split_on_comma(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto p = s.find(", ", start);
    if (p == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, p - start));
    start = p + 2;
  }
}

// Unknowns of a Suppose clause: variables that are not yet bound.
std::vector<char> unknowns(const std::vector<Equation>& eqs, const Scope& scope) {
  std::vector<char> out;
  for (const auto& eq : eqs) {
    for (const Expression* side : {&eq.lhs, &eq.rhs}) {
      for (char v : side->variables()) {
        if (!scope.values.count(v) && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void solve_suppose(const std::vector<Equation>& eqs, const Scope& scope, std::map<char, Rational>& solved) {
  auto vars = unknowns(eqs, scope);
  if (eqs.size() == 1 && vars.size() == 1) {
    solved[vars[0]] = solve_linear_1d(eqs[0], vars[0], scope);
    return;
  }
  if (eqs.size() == 2 && vars.size() == 2) {
    LinearSystem2 s = linear_system_from(eqs[0], eqs[1], vars[0], vars[1], scope);
    solved[vars[0]] = solve_linear_2d(s, vars[0]);
    solved[vars[1]] = solve_linear_2d(s, vars[1]);
    return;
  }
  throw ParseError("unsupported Suppose clause");
}

Polynomial constant_poly(const Expression& e, const Scope& scope) {
  Polynomial p = to_polynomial(e, scope);
  if (!p.is_constant()) throw ParseError("value is not a constant: " + e.render());
  return p;
}

}  // namespace

Environment parse_environment(const std::vector<std::string>& clauses) {
  Environment env;
  Scope& scope = env.scope;
  for (const auto& clause : clauses) {
    std::smatch m;
    if (std::regex_match(clause, m, kDerivClause)) {
      char f = m[1].str()[0], x = m[2].str()[0];
      Scope inner = scope;
      inner.values.erase(x);
      Polynomial p = to_polynomial(parse_expression(m[4].str()), inner);
      scope.functions[f] = {f, x, p.differentiate(x, order_from_word(m[3].str()))};
    } else if (std::regex_match(clause, m, kFunctionClause)) {
      char f = m[1].str()[0], x = m[2].str()[0];
      Scope inner = scope;
      inner.values.erase(x);
      scope.functions[f] = {f, x, to_polynomial(parse_expression(m[3].str()), inner)};
    } else if (std::regex_match(clause, m, kValueClause)) {
      scope.values[m[1].str()[0]] = constant_poly(parse_expression(m[2].str()), scope);
    } else if (std::regex_match(clause, m, kSupposeClause)) {
      std::vector<Equation> eqs;
      for (const auto& part : split_on_comma(m[1].str())) eqs.push_back(parse_equation(part));
      std::map<char, Rational> solved;
      solve_suppose(eqs, scope, solved);
      for (const auto& [v, r] : solved) scope.values[v] = Polynomial(r);
    } else {
      throw ParseError("unrecognised clause: " + clause);
    }
  }
  return env;
}

namespace {

// Definitions kept as expressions; everything is inlined at use.
struct InlineDefs {
  std::map<char, Expression> values;
  std::map<char, std::pair<char, Expression>> functions;  // name -> (param, body)
};

Expression inline_expr(const Expression& e, const InlineDefs& defs, char shadow = 0) {
  switch (e.kind()) {
    case ExprKind::Number:
      return e;
    case ExprKind::Variable: {
      if (e.name() == shadow) return e;
      auto it = defs.values.find(e.name());
      return it == defs.values.end() ? e : it->second;
    }
    case ExprKind::Call: {
      Expression arg = inline_expr(e.lhs(), defs, shadow);
      auto it = defs.functions.find(e.name());
      if (it == defs.functions.end()) throw ParseError(std::string("undefined function ") + e.name());
      return substitute(it->second.second, it->second.first, arg);
    }
    case ExprKind::Neg:
      return Expression::neg(inline_expr(e.lhs(), defs, shadow));
    case ExprKind::Sqrt:
      return Expression::sqrt(inline_expr(e.lhs(), defs, shadow));
    case ExprKind::Add:
      return Expression::add(inline_expr(e.lhs(), defs, shadow), inline_expr(e.rhs(), defs, shadow));
    case ExprKind::Sub:
      return Expression::sub(inline_expr(e.lhs(), defs, shadow), inline_expr(e.rhs(), defs, shadow));
    case ExprKind::Mul:
      return Expression::mul(inline_expr(e.lhs(), defs, shadow), inline_expr(e.rhs(), defs, shadow));
    case ExprKind::Div:
      return Expression::div(inline_expr(e.lhs(), defs, shadow), inline_expr(e.rhs(), defs, shadow));
    case ExprKind::Pow:
      return Expression::pow(inline_expr(e.lhs(), defs, shadow), inline_expr(e.rhs(), defs, shadow));
  }
  return e;
}

}  // namespace

Environment inline_environment(const std::vector<std::string>& clauses) {
  InlineDefs defs;
  for (const auto& clause : clauses) {
    std::smatch m;
    if (std::regex_match(clause, m, kDerivClause)) {
      char f = m[1].str()[0], x = m[2].str()[0];
      Expression body = inline_expr(parse_expression(m[4].str()), defs, x);
      Polynomial d = to_polynomial(body).differentiate(x, order_from_word(m[3].str()));
      defs.functions[f] = {x, to_expression(d)};
    } else if (std::regex_match(clause, m, kFunctionClause)) {
      char f = m[1].str()[0], x = m[2].str()[0];
      defs.functions[f] = {x, inline_expr(parse_expression(m[3].str()), defs, x)};
    } else if (std::regex_match(clause, m, kValueClause)) {
      defs.values[m[1].str()[0]] = inline_expr(parse_expression(m[2].str()), defs);
    } else if (std::regex_match(clause, m, kSupposeClause)) {
      std::vector<Equation> eqs;
      for (const auto& part : split_on_comma(m[1].str())) {
        Equation eq = parse_equation(part);
        eqs.push_back({inline_expr(eq.lhs, defs), inline_expr(eq.rhs, defs)});
      }
      std::map<char, Rational> solved;
      solve_suppose(eqs, Scope{}, solved);
      for (const auto& [v, r] : solved) defs.values[v] = Expression::rational(r);
    } else {
      throw ParseError("unrecognised clause: " + clause);
    }
  }
  Environment env;
  for (const auto& [v, e] : defs.values) env.scope.values[v] = constant_poly(e, Scope{});
  for (const auto& [f, pb] : defs.functions) env.scope.functions[f] = {f, pb.first, to_polynomial(pb.second)};
  return env;
}

Rational eval_constant(std::string_view text, const Environment& env) {
  return constant_poly(parse_expression(text), env.scope).constant_value();
}

Polynomial eval_polynomial(std::string_view text, const Environment& env) {
  return to_polynomial(parse_expression(text), env.scope);
}

std::string solve_with(const Module& m, std::string_view question, bool use_inline_oracle) {
  ParsedQuestion pq = split_question(question);
  Environment env = use_inline_oracle ? inline_environment(pq.clauses) : parse_environment(pq.clauses);
  auto found = m.matches(pq.final_question);
  if (found.empty()) throw ParseError("no template of " + m.id() + " matches '" + pq.final_question + "'");
  std::string last_error;
  for (const auto& [index, slots] : found) {
    try {
      return m.solve(index, slots, env);
    } catch (const InvalidInput& e) {
      last_error = e.what();
    } catch (const ParseError& e) {
      last_error = e.what();
    } catch (const ContractViolation& e) {
      last_error = e.what();
    }
  }
  throw ParseError(m.id() + " cannot solve '" + pq.final_question + "': " + last_error);
}

std::optional<std::pair<const Module*, std::string>> solve_any(std::string_view question) {
  for (const Module* m : catalog().all()) {
    try {
      return std::make_pair(m, solve_with(*m, question));
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

int draw_depth(RandomStream& rng) {
  // P(d) proportional to 0.65^d on 0..3.
  double weights[4] = {1.0, 0.65, 0.65 * 0.65, 0.65 * 0.65 * 0.65};
  double total = weights[0] + weights[1] + weights[2] + weights[3];
  double u = rng.uniform() * total;
  for (int d = 0; d < 3; ++d) {
    if (u < weights[d]) return d;
    u -= weights[d];
  }
  return 3;
}

namespace {

bool printable(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= 0x20 && c <= 0x7e; });
}

}  // namespace

bool valid_question(std::string_view q) { return !q.empty() && q.size() <= 160 && printable(q); }

bool valid_answer(std::string_view a) { return !a.empty() && a.size() <= 30 && printable(a); }

bool valid_pair(const QAPair& p) { return valid_question(p.question) && valid_answer(p.answer); }

GenerateResult generate(const Module& m, Split split, RandomStream rng, double alpha,
                        const GenerateOptions& options) {
  if (m.spec().max_alpha > 0) alpha = std::min(alpha, m.spec().max_alpha);
  double boost = 0.0;
  std::string last_reason = "no attempt made";
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    RandomStream arng = rng.child(static_cast<std::uint64_t>(attempt));
    int depth = 0;
    if (options.depth >= 0) {
      depth = options.depth;
    } else if (m.spec().composable) {
      RandomStream drng = arng.child("depth");
      depth = draw_depth(drng);
    }
    GenContext ctx(arng.child("body"), alpha, split, m.spec().group, depth);
    ctx.set_sizing_alpha(alpha + boost);
    try {
      m.generate_into(ctx);
    } catch (const RetrySignal& e) {
      last_reason = e.what();
      continue;
    } catch (const ContractViolation& e) {
      last_reason = e.what();
      continue;
    } catch (const InvalidInput& e) {
      last_reason = e.what();
      continue;
    }
    if (!ctx.budget().satisfied()) {
      // Widen every sized draw and redraw from a fresh stream.
      boost += std::max(0.5, ctx.budget().remaining());
      last_reason = "entropy budget unsatisfied";
      continue;
    }
    GenerateResult r;
    r.plan = ctx.plan();
    r.pair = {phrase_plan(r.plan), r.plan.answer, m.id(), split, alpha};
    if (!valid_pair(r.pair)) {
      last_reason = "length or alphabet limit";
      continue;
    }
    std::string solved;
    try {
      solved = solve_with(m, r.pair.question);
    } catch (const std::exception& e) {
      throw GenerationError(m.id() + ": self-check cannot solve '" + r.pair.question + "': " + e.what());
    }
    if (solved != r.pair.answer) {
      throw GenerationError(m.id() + ": self-check mismatch for '" + r.pair.question + "': expected '" +
                            r.pair.answer + "', solver gave '" + solved + "'");
    }
    r.draws = ctx.budget().log();
    r.attempts = attempt + 1;
    return r;
  }
  throw GenerationError(m.id() + ": no valid question after " + std::to_string(options.max_attempts) +
                        " attempts (" + last_reason + ")");
}

}  // namespace mathgen
