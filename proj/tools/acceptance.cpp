// Acceptance run: one PASS/FAIL line per criterion.
//
//   mathgen_acceptance --cli build/mathgen [--work DIR] [--only N]

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "mathgen/algebra.hpp"
#include "mathgen/catalog.hpp"
#include "mathgen/errors.hpp"
#include "mathgen/eval.hpp"
#include "mathgen/expression.hpp"
#include "mathgen/generators.hpp"
#include "mathgen/pipeline.hpp"
#include "mathgen/polynomial.hpp"
#include "mathgen/solvers.hpp"

using namespace mathgen;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fixed(double v, int prec) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(prec);
  o << v;
  return o.str();
}

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

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

Split split_for(const Module& m) {
  return m.spec().group == ModuleGroup::Extrapolate ? Split::Extrapolate : Split::Train;
}

// count spread over every module of the catalog, as evenly as possible.
std::vector<std::pair<const Module*, std::size_t>> spread(std::size_t count) {
  auto all = catalog().all();
  std::vector<std::pair<const Module*, std::size_t>> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    out.push_back({all[i], count / all.size() + (i < count % all.size() ? 1 : 0)});
  }
  return out;
}

// ---- 1 ----------------------------------------------------------------------

const std::vector<std::pair<std::string, std::string>> kShowcase = {
    {"Solve -42*r + 27*c = -1167 and 130*r + 4*c = 372 for r.", "4"},
    {"Calculate -841880142.544 + 411127.", "-841469015.544"},
    {"Let x(g) = 9*g + 1. Let q(c) = 2*c + 1. Let f(i) = 3*i - 39. Let w(j) = q(x(j)). Calculate f(w(a)).",
     "54*a - 30"},
    {"Let e(l) = l - 6. Is 2 a factor of both e(9) and 2?", "False"},
    {"Let u(n) = -n**3 - n**2. Let e(c) = -2*c**3 + c. Let l(j) = -118*e(j) + 54*u(j). What is the derivative of "
     "l(a)?",
     "546*a**2 - 108*a - 118"},
    {"Three letters picked without replacement from qqqkkklkqkkk. Give prob of sequence qql.", "1/110"},
};

Outcome showcase(const fs::path& work) {
  auto t0 = Clock::now();
  std::string bytes;
  for (const auto& [q, a] : kShowcase) bytes += q + "\n" + a + "\n";
  fs::path f = work / "showcase.txt";
  spit(f, bytes);
  VerifyReport r = verify_dataset(f);
  double dt = seconds_since(t0);
  bool ok = r.total == 6 && r.verified == 6 && dt < 1.0;
  return {ok, std::to_string(r.verified) + "/6 byte-exact, " + fixed(dt, 3) + " s (limit 1 s)"};
}

// ---- 2 ----------------------------------------------------------------------

Outcome golden() {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"Let f(x) = 2*x + 3. Let g(x) = 7*x - 4. Let h(x) = -5*x - 8. What is g(h(f(x)))?", "-70*x - 165"},
      {"Calculate 17 * 4.", "68"},
      {"Let k(c) = -611*c + 2188857. Is k(-103) != 2251790?", "False"},
      {"What are the prime factors of 235232673?", "3, 13, 19, 317453"},
  };
  int ok = 0;
  std::string bad;
  for (const auto& [q, a] : cases) {
    auto r = solve_any(q);
    if (r && r->second == a) {
      ++ok;
    } else {
      bad += " [" + q + " -> " + (r ? r->second : std::string("unsolved")) + "]";
    }
  }
  return {ok == 4, std::to_string(ok) + "/4 byte-exact" + bad};
}

// ---- 3 ----------------------------------------------------------------------

Outcome collisions(const fs::path& work) {
  const std::vector<std::string> modules = {"arithmetic/add_or_sub", "algebra/linear_1d", "numbers/gcd",
                                            "polynomials/expand", "probability/swr_p_sequence"};
  const std::size_t n_train = 200000, n_test = 10000;
  // Bound p = 0.02 plus three binomial standard deviations at n = 10^4.
  const double p = 0.02, bound = p + 3 * std::sqrt(p * (1 - p) / n_test);
  SplitOptions o;
  o.threads = 1;
  bool ok = true;
  std::string detail;
  for (const auto& id : modules) {
    auto t0 = Clock::now();
    fs::path dir = work / "collisions" / file_stem(id);
    generate_split(id, Split::Train, n_train, 1, dir, o);
    generate_split(id, Split::Interpolate, n_test, 2, dir, o);
    double frac = overlap_audit(dir / "train", dir / "interpolate");
    double dt = seconds_since(t0);
    bool pass = frac <= bound && dt < 600;
    ok = ok && pass;
    detail += " " + id + "=" + fixed(frac, 4) + "(" + fixed(dt, 1) + "s)";
    fs::remove_all(dir);
  }
  return {ok, "overlap <= " + fixed(bound, 4) + ", 1 core < 600 s each:" + detail};
}

// ---- 4 ----------------------------------------------------------------------

Outcome entropy(const fs::path& work) {
  SplitOptions o;
  o.audit_log = true;
  fs::path dir = work / "entropy";
  for (const auto& [m, n] : spread(10000)) generate_split(m->id(), split_for(*m), n, 4, dir, o);
  std::size_t replayed = 0, violations = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.path().extension() != ".audit") continue;
    for (const auto& line : lines_of(slurp(e.path()))) {
      std::vector<std::string> cols;
      std::istringstream in(line);
      for (std::string c; std::getline(in, c, '\t');) cols.push_back(c);
      std::vector<DrawRecord> draws;
      std::istringstream ds(cols.size() > 3 ? cols[3] : "");
      for (std::string d; std::getline(ds, d, ';');) {
        draws.push_back({BigInt::parse(d.substr(d.rfind('=') + 1)), d.substr(0, d.rfind('='))});
      }
      ++replayed;
      if (cols.size() < 4 || !certifies(draws, std::stod(cols[1]))) ++violations;
    }
  }
  fs::remove_all(dir);
  return {replayed == 10000 && violations == 0,
          std::to_string(replayed) + " questions replayed, " + std::to_string(violations) + " violations"};
}

// ---- 5 ----------------------------------------------------------------------

Outcome constraints(const fs::path& work) {
  fs::path dir = work / "constraints";
  for (const auto& [m, n] : spread(100000)) generate_split(m->id(), split_for(*m), n, 5, dir);
  std::size_t total = 0, violations = 0;
  for (const auto& ref : collect_shards(dir)) {
    // Re-read line by line so one bad line does not hide the rest.
    auto lines = lines_of(slurp(ref.path));
    for (std::size_t i = 0; i + 1 < lines.size(); i += 2) {
      ++total;
      if (!valid_question(lines[i]) || !valid_answer(lines[i + 1])) ++violations;
    }
    if (lines.size() % 2) ++violations;
  }
  fs::remove_all(dir);
  return {total == 100000 && violations == 0,
          std::to_string(total) + " pairs, " + std::to_string(violations) + " violations (160/30/95 printable)"};
}

// ---- 6 ----------------------------------------------------------------------

Outcome probability() {
  auto t0 = Clock::now();
  const std::string symbols = "abc";
  std::size_t bags = 0, checks = 0, failures = 0;
  for (unsigned na = 0; na <= 8; ++na) {
    for (unsigned nb = 0; na + nb <= 8; ++nb) {
      for (unsigned nc = 0; na + nb + nc <= 8; ++nc) {
        unsigned n = na + nb + nc;
        if (n == 0) continue;
        ++bags;
        LetterBag bag;
        std::string items;
        for (auto [c, k] : {std::pair{'a', na}, {'b', nb}, {'c', nc}}) {
          if (k) bag[c] = k;
          items += std::string(k, c);
        }
        for (unsigned len = 1; len <= std::min(3u, n); ++len) {
          // Every ordered choice of `len` distinct items is equally likely.
          std::map<std::string, long> seq_count;
          long outcomes = 0;
          std::vector<unsigned> idx(len);
          std::function<void(unsigned, unsigned)> walk = [&](unsigned depth, unsigned used) {
            if (depth == len) {
              std::string s;
              for (unsigned i : idx) s += items[i];
              ++seq_count[s];
              ++outcomes;
              return;
            }
            for (unsigned i = 0; i < n; ++i) {
              if (used & (1u << i)) continue;
              idx[depth] = i;
              walk(depth + 1, used | (1u << i));
            }
          };
          walk(0, 0);
          // All strings over the alphabet, including impossible ones.
          Rational total;
          std::map<std::map<char, unsigned>, long> level_count;
          std::string s(len, 'a');
          std::function<void(unsigned)> each = [&](unsigned pos) {
            if (pos == len) {
              long k = seq_count.count(s) ? seq_count[s] : 0;
              Rational got = prob_sequence_swr(bag, s);
              ++checks;
              if (got != Rational(BigInt(k), BigInt(outcomes))) ++failures;
              total += got;
              std::map<char, unsigned> counts;
              for (char c : s) ++counts[c];
              level_count[counts] += k;
              return;
            }
            for (char c : symbols) {
              s[pos] = c;
              each(pos + 1);
            }
          };
          each(0);
          ++checks;
          if (total != Rational(1)) ++failures;
          for (const auto& [counts, k] : level_count) {
            ++checks;
            if (prob_level_set_swr(bag, counts) != Rational(BigInt(k), BigInt(outcomes))) ++failures;
          }
        }
      }
    }
  }
  double dt = seconds_since(t0);
  return {failures == 0 && dt < 30, std::to_string(bags) + " bags, " + std::to_string(checks) + " exact checks, " +
                                        std::to_string(failures) + " failures, " + fixed(dt, 2) + " s (limit 30 s)"};
}

// ---- 7 ----------------------------------------------------------------------

Outcome symbolic() {
  auto t0 = Clock::now();
  const int n = 10000;
  RandomStream rng(2024);
  EntropyBudget budget;
  auto poly = [&](char v) {
    return random_polynomial(v, static_cast<unsigned>(rng.range(0, 4)), BigInt(20), rng, budget);
  };
  std::map<std::string, int> failures;
  for (int i = 0; i < n; ++i) {
    // derivative linearity
    Polynomial p = poly('x'), q = poly('x');
    Rational a(rng.range(-9, 9)), b(rng.range(-9, 9));
    if (differentiate(poly_add({{a, p}, {b, q}}), 'x') !=
        poly_add({{a, differentiate(p, 'x')}, {b, differentiate(q, 'x')}})) {
      ++failures["linearity"];
    }
    // composition associativity
    FunctionDef f{'f', 'x', p}, g{'g', 'x', q}, h{'h', 'x', poly('x')};
    FunctionDef gh{'k', 'x', compose(g, h)}, fg{'m', 'x', compose(f, g)};
    if (compose(f, gh) != compose(fg, h)) ++failures["associativity"];
    // roots back-substitute
    Polynomial r(Rational(rng.range(1, 5)));
    unsigned d = static_cast<unsigned>(rng.range(1, 4)), found = 0;
    for (unsigned k = 0; k < d; ++k) {
      Rational root(BigInt(rng.range(-30, 30)), BigInt(rng.range(1, 4)));
      r = r * Polynomial::from_coefficients('x', {-root, Rational(1)});
    }
    for (const auto& rt : poly_roots(r, 'x')) {
      if (!evaluate_poly(r, {{'x', rt.root}}).is_zero()) ++failures["roots"];
      found += rt.multiplicity;
    }
    if (found != d) ++failures["roots"];
    // surd squares
    long s = rng.range(1, 5000), c = rng.range(1, 12) * (rng.coin() ? 1 : -1);
    Surd surd = simplify_surd(parse_expression(std::to_string(c) + "*sqrt(" + std::to_string(s) + ")"));
    if (surd.squared() != Rational(BigInt(c * c * s)) || square_part(surd.radicand) != BigInt(1)) ++failures["surd"];
    // parse and format
    Polynomial m = poly('x') * poly('y') + poly('x');
    std::string text = format(m);
    if (to_polynomial(parse_expression(text)) != m || parse_expression(text).render() != text) ++failures["parse"];
  }
  double dt = seconds_since(t0);
  int total = 0;
  std::string bad;
  for (const auto& [k, v] : failures) {
    total += v;
    bad += " " + k + "=" + std::to_string(v);
  }
  return {total == 0 && dt < 120, std::to_string(n) + " draws x 5 properties, " + std::to_string(total) +
                                      " failures" + bad + ", " + fixed(dt, 2) + " s (limit 120 s)"};
}

// ---- 8 ----------------------------------------------------------------------

std::map<std::string, std::string> tree_digests(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = file_digest(e.path());
  }
  return out;
}

Outcome determinism(const fs::path& work, const std::string& cli) {
  if (cli.empty()) return {false, "no --cli binary given"};
  std::map<std::string, std::string> runs[2];
  for (int i = 0; i < 2; ++i) {
    fs::path out = work / ("determinism" + std::to_string(i));
    std::string cmd = "\"" + cli + "\" generate --module all --split interpolate --count 100 --seed 7 --out \"" +
                      out.string() + "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "generate run " + std::to_string(i) + " failed"};
    runs[i] = tree_digests(out);
    fs::remove_all(out);
  }
  bool same = runs[0] == runs[1] && !runs[0].empty();
  return {same, std::to_string(runs[0].size()) + " files, digests " + (same ? "identical" : "differ")};
}

// ---- 9 ----------------------------------------------------------------------

Outcome evaluator(const fs::path& work) {
  fs::path truth = work / "evaluator";
  const std::size_t per = 20;
  for (const Module* m : catalog().all()) {
    generate_split(m->id(), m->spec().group == ModuleGroup::Extrapolate ? Split::Extrapolate : Split::Interpolate,
                   per, 9, truth);
  }
  std::vector<std::string> answers;
  for (const auto& ref : collect_shards(truth)) {
    for (const auto& p : read_shard(ref.path)) answers.push_back(p.answer);
  }
  auto score = [&](const std::vector<std::string>& preds) {
    std::string bytes;
    for (const auto& a : preds) bytes += a + "\n";
    spit(work / "preds.txt", bytes);
    return evaluate(work / "preds.txt", truth);
  };

  ScoreReport self = score(answers);
  bool self_ok = self.macro == 1.0;
  for (const auto& m : self.modules) self_ok = self_ok && m.accuracy() == 1.0;

  // Module j (in shard order) gets j % 6 answers perturbed by one byte:
  // first character replaced, or a trailing space on its even entries.
  std::vector<std::string> preds = answers;
  std::vector<std::size_t> expect_correct;
  for (std::size_t j = 0; j * per < preds.size(); ++j) {
    std::size_t k = j % 6;
    for (std::size_t i = 0; i < k; ++i) {
      std::string& a = preds[j * per + 3 * i];
      if (i % 2) {
        a[0] = a[0] == '7' ? '8' : '7';
      } else {
        a += ' ';
      }
    }
    expect_correct.push_back(per - k);
  }
  ScoreReport bent = score(preds);
  bool bent_ok = bent.modules.size() == expect_correct.size();
  double expect_macro = 0;
  for (std::size_t j = 0; bent_ok && j < expect_correct.size(); ++j) {
    bent_ok = bent.modules[j].correct == expect_correct[j] && bent.modules[j].total == per;
    expect_macro += static_cast<double>(expect_correct[j]) / per;
  }
  expect_macro /= static_cast<double>(expect_correct.size());
  bent_ok = bent_ok && std::fabs(bent.macro - expect_macro) < 1e-12;
  fs::remove_all(truth);
  return {self_ok && bent_ok, "self-score macro " + fixed(self.macro, 4) + " over " +
                                  std::to_string(self.modules.size()) + " modules; perturbed macro " +
                                  fixed(bent.macro, 6) + " (predicted " + fixed(expect_macro, 6) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mathgen acceptance run"};
  std::string cli, work_arg;
  int only = 0;
  app.add_option("--cli", cli, "mathgen binary for the determinism check");
  app.add_option("--work", work_arg, "scratch directory (removed afterwards)");
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  fs::path work = work_arg.empty() ? fs::temp_directory_path() / ("mathgen_acceptance_" + std::to_string(std::random_device{}()))
                                   : fs::path(work_arg);
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"showcase questions", [&] { return showcase(work); }},
      {"golden cases", [&] { return golden(); }},
      {"collision bound", [&] { return collisions(work); }},
      {"entropy soundness", [&] { return entropy(work); }},
      {"constraint compliance", [&] { return constraints(work); }},
      {"probability oracle", [&] { return probability(); }},
      {"symbolic oracle", [&] { return symbolic(); }},
      {"determinism", [&] { return determinism(work, cli); }},
      {"evaluator fidelity", [&] { return evaluator(work); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<std::size_t>(only) != i + 1) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  fs::remove_all(work);
  return failed ? 1 : 0;
}
