#include "mathgen/generators.hpp"

#include <optional>

#include "mathgen/errors.hpp"
#include "mathgen/number_theory.hpp"

namespace mathgen {

namespace {

enum class Op { Add, Sub, Mul, Div };

struct ArithBuilder {
  RandomStream& rng;
  EntropyBudget& budget;
  const ArithmeticOptions& opt;

  BigInt leaf() { return sample_integer(rng, budget, Symmetric{symmetric_width_for(opt.leaf_alpha)}, "operand"); }

  BigInt factor() {
    BigInt w = symmetric_width_for(opt.factor_alpha);
    if (w < BigInt(2)) w = BigInt(2);
    return sample_integer(rng, budget, Nonzero{-w, w}, "factor");
  }

  // Nonzero multiple of m with the multiplier sized like a factor.
  BigInt multiple_of(const BigInt& m) { return factor() * m; }

  Expression build(const Rational& v, int leaves) {
    if (leaves == 1) {
      if (!v.is_integer()) throw std::logic_error("non-integer leaf in backward arithmetic");
      return Expression::integer(v.num());
    }
    int left = static_cast<int>(rng.range(1, leaves - 1));
    int right = leaves - left;

    std::vector<Op> ops;
    if (opt.add_sub) {
      ops.push_back(Op::Add);
      ops.push_back(Op::Sub);
    }
    if (opt.mul_div) {
      ops.push_back(Op::Mul);
      ops.push_back(Op::Div);
    }
    // A single-leaf side must come out integral.
    bool v_int = v.is_integer();
    Op op = rng.pick(ops);
    if (!v_int && left == 1 && right == 1 && opt.mul_div) op = Op::Div;
    if (!v_int && left == 1 && right == 1 && !opt.mul_div) {
      throw std::logic_error("cannot reach a fraction with additions of integers");
    }

    switch (op) {
      case Op::Add:
      case Op::Sub: {
        Rational r;
        Rational l;
        if (!v_int && left == 1) {
          // The integer goes left; the fractional part lives on the right.
          BigInt a = leaf();
          l = Rational(a);
          r = op == Op::Add ? v - l : l - v;
        } else {
          r = Rational(leaf());
          l = op == Op::Add ? v - r : v + r;
        }
        if (!r.is_integer() && right == 1) throw std::logic_error("fractional right leaf");
        Expression le = build(l, left), re = build(r, right);
        return op == Op::Add ? Expression::add(le, re) : Expression::sub(le, re);
      }
      case Op::Mul: {
        // v = l * r.
        if (v.is_zero()) return Expression::mul(build(Rational(0), left), build(Rational(factor()), right));
        if (right > 1) {
          BigInt a = factor();
          return Expression::mul(build(Rational(a), left), build(v / Rational(a), right));
        }
        if (!v_int) {
          if (left == 1) return build_div(v, left, right);
          BigInt r = factor();
          return Expression::mul(build(v / Rational(r), left), build(Rational(r), right));
        }
        if (v.num().abs() < BigInt(1000000000000LL)) {
          BigInt r = divisor_of(v.num());
          return Expression::mul(build(v / Rational(r), left), build(Rational(r), right));
        }
        if (left > 1) {
          BigInt r = factor();
          return Expression::mul(build(v / Rational(r), left), build(Rational(r), right));
        }
        // Too large to factor quickly: split additively instead.
        Rational r(leaf());
        return Expression::add(build(v - r, left), build(r, right));
      }
      case Op::Div:
        return build_div(v, left, right);
    }
    throw std::logic_error("unreachable");
  }

  Expression build_div(const Rational& v, int left, int right) {
    // v = l / r with r nonzero.
    BigInt r = left == 1 && !v.is_integer() ? multiple_of(v.den()) : factor();
    Rational l = v * Rational(r);
    if (left == 1 && !l.is_integer()) throw std::logic_error("fractional numerator leaf");
    return Expression::div(build(l, left), build(Rational(r), right));
  }

  // Uniform divisor of n (either sign), credited with the divisor count.
  BigInt divisor_of(const BigInt& n) {
    std::vector<BigInt> divs{BigInt(1)};
    std::vector<PrimePower> factors;
    if (n.abs() > BigInt(1)) factors = prime_factorize(n.abs());
    for (const auto& pp : factors) {
      std::size_t base = divs.size();
      BigInt pk(1);
      for (unsigned k = 1; k <= pp.multiplicity; ++k) {
        pk *= pp.prime;
        for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
      }
    }
    std::uint64_t i = draw_from_set(rng, budget, static_cast<std::uint64_t>(divs.size() * 2), "divisor");
    BigInt d = divs[i / 2];
    return i % 2 ? -d : d;
  }
};

}  // namespace

Expression backward_generate_arithmetic(const Rational& answer, int op_count, RandomStream& rng,
                                        EntropyBudget& budget, const ArithmeticOptions& options) {
  if (op_count < 1) throw InvalidInput("backward arithmetic needs at least one operation");
  if (!options.add_sub && !options.mul_div) throw InvalidInput("no operations enabled");
  ArithBuilder b{rng, budget, options};
  return b.build(answer, op_count + 1);
}

LinearSystem2 backward_generate_linear_2d(const Rational& xv, const Rational& yv, char x, char y,
                                          RandomStream& rng, EntropyBudget& budget, double coeff_alpha) {
  BigInt w = symmetric_width_for(coeff_alpha);
  if (w < BigInt(2)) w = BigInt(2);
  LinearSystem2 s;
  s.x = x;
  s.y = y;
  BigInt a = sample_integer(rng, budget, Nonzero{-w, w}, "a");
  BigInt b = sample_integer(rng, budget, Nonzero{-w, w}, "b");
  BigInt c = sample_integer(rng, budget, Nonzero{-w, w}, "c");
  // d must avoid the single value b*c/a that makes the determinant zero;
  // credit only the members actually available.
  BigInt size = BigInt(2) * w;
  std::optional<BigInt> bad;
  if ((b * c) % a == BigInt(0)) {
    BigInt cand = b * c / a;
    if (!cand.is_zero() && cand.abs() <= w) bad = cand;
  }
  if (bad) size -= BigInt(1);
  BigInt idx = draw_from_set(rng, budget, size, "d");
  // Nonzero members of [-w, w] in order, with `bad` skipped.
  auto position = [&](const BigInt& v) { return v.sign() < 0 ? v + w : v + w - BigInt(1); };
  if (bad && position(*bad) <= idx) idx += BigInt(1);
  BigInt d = idx < w ? idx - w : idx - w + BigInt(1);
  s.a = Rational(a);
  s.b = Rational(b);
  s.c = Rational(c);
  s.d = Rational(d);
  s.e = s.a * xv + s.b * yv;
  s.f = s.c * xv + s.d * yv;
  if ((s.a * s.d - s.b * s.c).is_zero()) throw std::logic_error("singular system generated");
  return s;
}

Equation linear_row(const Rational& a, const Rational& b, const Rational& rhs, char x, char y) {
  // Keep x before y as given; the canonical polynomial order would sort them.
  std::vector<Expression> terms;
  if (!a.is_zero()) terms.push_back(to_expression(Polynomial::term(a, Monomial::var(x))));
  if (!b.is_zero()) terms.push_back(to_expression(Polynomial::term(b, Monomial::var(y))));
  if (terms.empty()) terms.push_back(Expression::integer(BigInt(0)));
  return {signed_sum(terms), Expression::rational(rhs)};
}

Polynomial random_polynomial(char var, unsigned degree, const BigInt& width, RandomStream& rng,
                             EntropyBudget& budget) {
  std::vector<Rational> coeffs;
  for (unsigned k = 0; k < degree; ++k) coeffs.emplace_back(sample_integer(rng, budget, Symmetric{width}, "coeff"));
  coeffs.emplace_back(sample_integer(rng, budget, Nonzero{-width, width}, "lead"));
  return Polynomial::from_coefficients(var, coeffs);
}

}  // namespace mathgen
