#pragma once

// Helpers shared by the module sources.

#include <string>
#include <vector>

#include "mathgen/algebra.hpp"
#include "mathgen/catalog.hpp"
#include "mathgen/composition.hpp"
#include "mathgen/errors.hpp"
#include "mathgen/numeric.hpp"

namespace mathgen::modules {

/// Integer, else terminating decimal, else reduced fraction.
std::string format_number(const Rational& r);

/// "two" .. "twenty"; capitalised on request.
std::string count_word(unsigned n, bool capital = false);
unsigned count_from_word(std::string_view w);
/// "first" .. "twentieth".
std::string ordinal_word(unsigned k);
unsigned ordinal_from_word(std::string_view w);

/// Uniform integer with exactly `digits` digits (credited).
BigInt sample_digits(GenContext& ctx, unsigned digits, const char* label);
/// Random sign (credited, factor 2).
BigInt signed_value(GenContext& ctx, const BigInt& v);

/// Decimal with exactly `scale` places (last digit nonzero) and a random
/// sign; magnitude sized by `alpha_share`. Credited.
ExactDecimal sample_decimal(GenContext& ctx, double alpha_share, unsigned scale, const char* label);

/// k*e rendered as "e", "-e" or "k*e".
Expression scaled(const BigInt& k, Expression e);

/// Splits "a, b and c" / "a, b, c" into items.
std::vector<std::string> split_list(std::string_view text);

/// Sets the plan's final question and answer.
void finish(GenContext& ctx, std::string question, std::string answer, long controlled = 0);

/// Picks one template index (uncredited).
std::size_t pick_template(GenContext& ctx, const std::vector<std::string>& templates);
/// Picks among an explicit subset of template indices.
std::size_t pick_from(GenContext& ctx, std::initializer_list<std::size_t> indices);

/// Width of an integer part in digits (0 counts as one digit).
unsigned integer_digits(const Rational& r);

/// Named module spec with common defaults.
ModuleSpec spec(std::string area, std::string name, ModuleGroup group, std::vector<std::string> templates);

}  // namespace mathgen::modules
