#pragma once

// Producers that describe a value or a function through "Let"/"Suppose"
// clauses, so one module's question can consume another module's output.

#include <string>
#include <vector>

#include "mathgen/catalog.hpp"
#include "mathgen/expression.hpp"
#include "mathgen/polynomial.hpp"

namespace mathgen {

struct ValueSlot {
  Expression expr;  // literal, entity name or inline call like "e(9)"
  int node = -1;    // plan node that introduced it (-1 for a literal)
  std::string text() const { return expr.render(); }
};

struct FunctionSlot {
  FunctionDef def;
  int node = -1;
};

/// Phrases integer `v`. Depth 0 gives the literal; otherwise clauses are
/// appended to the plan (value arithmetic, function evaluation, one- or
/// two-variable Suppose) nesting up to `depth` producers. Draws are sized
/// by `alpha_share` and credited.
ValueSlot describe_value(GenContext& ctx, const BigInt& v, int depth, double alpha_share = 2.0);

/// A polynomial function of degree at most `max_degree`, defined directly
/// (depth 0) or as a linear combination, composition or derivative.
FunctionSlot define_function(GenContext& ctx, int depth, unsigned max_degree, double alpha_share = 3.0);

/// "f(arg)".
Expression call_of(const FunctionSlot& f, Expression arg);

/// Splits ctx.depth() across `slots` consumers at random (uncredited).
std::vector<int> spread_depth(GenContext& ctx, int slots);

/// Builds a plan for `final_module` at a fixed depth (one attempt, no
/// retries; throws RetrySignal or ContractViolation on a dud draw).
CompositionPlan build_plan(const Module& final_module, RandomStream rng, double alpha, int depth,
                           Split split = Split::Train);
/// Re-solves a plan from its phrased text.
std::string solve_plan(const CompositionPlan& plan, const Module& final_module);

}  // namespace mathgen
