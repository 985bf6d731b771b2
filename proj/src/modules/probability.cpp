#include "common.hpp"

#include <algorithm>
#include <cmath>

#include "mathgen/solvers.hpp"
#include "registry.hpp"

namespace mathgen::modules {

namespace {

const std::vector<std::string> kSequence = {
    "{count} letters picked without replacement from {letters}. Give prob of sequence {seq}.",
    "{count} letters picked without replacement from {letters}. What is prob of sequence {seq}?",
    "Calculate prob of sequence {seq} when {count} letters picked without replacement from {letters}.",
};

const std::vector<std::string> kLevelSet = {
    "{count} letters picked without replacement from {letters}. Give prob of picking {counts}.",
    "{count} letters picked without replacement from {letters}. What is prob of picking {counts}?",
    "What is prob of picking {counts} when {count} letters picked without replacement from {letters}?",
};

constexpr unsigned kMaxBag = 12;
constexpr unsigned kMaxKinds = 6;

struct Bag {
  LetterBag counts;
  std::string text;
};

double log10_binomial(unsigned n, unsigned k) { return binomial(n, k).log10(); }

// Letters, their counts and the surface form, all credited.
Bag sample_bag(GenContext& ctx, unsigned samples, bool sequence_event) {
  // Smallest number of distinct letters that can carry the target with
  // the bag written as {a: 1, ...}; the string form only adds entropy.
  double need = ctx.alpha();
  std::vector<unsigned> ok;
  for (unsigned k = 2; k <= kMaxKinds; ++k) {
    double event = sequence_event ? samples * std::log10(static_cast<double>(k)) : 0.0;
    if (log10_binomial(26, k) + log10_binomial(kMaxBag, k) + event >= need) ok.push_back(k);
  }
  unsigned k = ok.empty() ? kMaxKinds : ok[ctx.choose(std::min<std::size_t>(ok.size(), 3))];

  std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  std::vector<char> letters(alphabet.begin(), alphabet.end());
  ctx.rng().shuffle(letters);
  letters.resize(k);
  std::sort(letters.begin(), letters.end());
  ctx.budget().record(binomial(26, k), "letters");

  // Positive counts with total <= 12 correspond to k-subsets of 1..12 by
  // partial sums.
  std::vector<unsigned> cuts(kMaxBag);
  for (unsigned i = 0; i < kMaxBag; ++i) cuts[i] = i + 1;
  ctx.rng().shuffle(cuts);
  cuts.resize(k);
  std::sort(cuts.begin(), cuts.end());
  ctx.budget().record(binomial(kMaxBag, k), "counts");

  Bag bag;
  unsigned prev = 0;
  for (unsigned i = 0; i < k; ++i) {
    bag.counts[letters[i]] = cuts[i] - prev;
    prev = cuts[i];
  }
  if (bag_size(bag.counts) < samples) throw RetrySignal("bag smaller than the sample");

  if (ctx.coin()) {
    bag.text = format_bag(bag.counts);
  } else {
    std::vector<char> s;
    for (const auto& [c, n] : bag.counts) s.insert(s.end(), n, c);
    ctx.rng().shuffle(s);
    // Every arrangement of the multiset is equally likely.
    BigInt arrangements(1);
    for (unsigned i = 2; i <= s.size(); ++i) arrangements *= BigInt(i);
    for (const auto& [c, n] : bag.counts) {
      for (unsigned i = 2; i <= n; ++i) arrangements = arrangements / BigInt(i);
    }
    ctx.budget().record(arrangements, "arrangement");
    bag.text.assign(s.begin(), s.end());
  }
  return bag;
}

LetterBag parse_bag(const std::string& text) {
  if (text.empty()) throw ParseError("empty bag");
  if (text.front() != '{') {
    for (char c : text) {
      if (c < 'a' || c > 'z') throw ParseError("bad letter in bag");
    }
    return bag_from_letters(text);
  }
  if (text.back() != '}') throw ParseError("unterminated bag");
  LetterBag bag;
  for (const auto& item : split_list(text.substr(1, text.size() - 2))) {
    if (item.size() < 4 || item[1] != ':' || item[2] != ' ') throw ParseError("bad bag entry '" + item + "'");
    bag[item[0]] = static_cast<unsigned>(std::stoul(item.substr(3)));
  }
  return bag;
}

unsigned sample_count(GenContext& ctx) {
  return static_cast<unsigned>(ctx.extrapolate() ? ctx.choose_range(5, 6) : ctx.choose_range(2, 4));
}

// ---- sequence --------------------------------------------------------------

void gen_sequence(GenContext& ctx) {
  unsigned s = sample_count(ctx);
  Bag bag = sample_bag(ctx, s, true);
  std::vector<char> kinds;
  for (const auto& [c, n] : bag.counts) kinds.push_back(c);
  std::uint64_t k = kinds.size();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < s; ++i) total *= k;
  std::uint64_t idx = draw_from_set(ctx.rng(), ctx.budget(), total, "sequence");
  std::string seq;
  for (unsigned i = 0; i < s; ++i) {
    seq += kinds[idx % k];
    idx /= k;
  }
  std::size_t t = pick_template(ctx, kSequence);
  Slots slots{{"count", count_word(s, t != 2)}, {"letters", bag.text}, {"seq", seq}};
  finish(ctx, fill_template(kSequence[t], slots), format(prob_sequence_swr(bag.counts, seq)), s);
}

std::string solve_sequence(std::size_t, const Slots& s, const Environment&) {
  unsigned n = count_from_word(s.at("count"));
  const std::string& seq = s.at("seq");
  if (seq.size() != n) throw InvalidInput("sequence length differs from the sample size");
  return format(prob_sequence_swr(parse_bag(s.at("letters")), seq));
}

// ---- level set -------------------------------------------------------------

void feasible_counts(const std::vector<std::pair<char, unsigned>>& avail, std::size_t i, unsigned left,
                     std::map<char, unsigned>& cur, std::vector<std::map<char, unsigned>>& out) {
  if (i == avail.size()) {
    if (left == 0) out.push_back(cur);
    return;
  }
  for (unsigned x = 0; x <= std::min(left, avail[i].second); ++x) {
    if (x > 0) cur[avail[i].first] = x;
    feasible_counts(avail, i + 1, left - x, cur, out);
    cur.erase(avail[i].first);
  }
}

std::string render_counts(const std::map<char, unsigned>& counts, std::vector<char> order) {
  std::vector<std::string> items;
  for (char c : order) {
    auto it = counts.find(c);
    if (it != counts.end()) items.push_back(std::to_string(it->second) + " " + std::string(1, c));
  }
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += i + 1 == items.size() ? " and " : ", ";
    out += items[i];
  }
  return out;
}

void gen_level_set(GenContext& ctx) {
  unsigned s = sample_count(ctx);
  Bag bag = sample_bag(ctx, s, false);
  std::vector<std::pair<char, unsigned>> avail(bag.counts.begin(), bag.counts.end());
  std::vector<std::map<char, unsigned>> options;
  std::map<char, unsigned> cur;
  feasible_counts(avail, 0, s, cur, options);
  std::uint64_t pick = draw_from_set(ctx.rng(), ctx.budget(), options.size(), "event");
  const auto& counts = options[pick];
  std::vector<char> order;
  for (const auto& [c, n] : counts) order.push_back(c);
  ctx.rng().shuffle(order);
  std::size_t t = pick_template(ctx, kLevelSet);
  Slots slots{{"count", count_word(s, t != 2)}, {"letters", bag.text}, {"counts", render_counts(counts, order)}};
  finish(ctx, fill_template(kLevelSet[t], slots), format(prob_level_set_swr(bag.counts, counts)), s);
}

std::string solve_level_set(std::size_t, const Slots& s, const Environment&) {
  unsigned n = count_from_word(s.at("count"));
  std::map<char, unsigned> counts;
  unsigned total = 0;
  for (const auto& item : split_list(s.at("counts"))) {
    auto space = item.find(' ');
    if (space == std::string::npos || space + 2 != item.size()) throw ParseError("bad count '" + item + "'");
    unsigned c = static_cast<unsigned>(std::stoul(item.substr(0, space)));
    char letter = item.back();
    if (counts.count(letter)) throw ParseError("letter counted twice");
    counts[letter] = c;
    total += c;
  }
  if (total != n) throw InvalidInput("counts do not add up to the sample size");
  return format(prob_level_set_swr(parse_bag(s.at("letters")), counts));
}

}  // namespace

void register_probability(Catalog& c) {
  const auto T = ModuleGroup::Train;
  const auto X = ModuleGroup::Extrapolate;
  using K = EntityKind;
  auto add = [&](ModuleSpec sp, Module::Generate g, Module::Solve s) { c.add(Module(std::move(sp), g, s)); };
  auto variants = [&](const char* name, const char* more, const std::vector<std::string>& tpl, Module::Generate g,
                      Module::Solve sv) {
    auto s = spec("probability", name, T, tpl);
    s.inputs = {K::LetterBag};
    s.output = K::Rational;
    s.controlled = "samples";
    s.train_max = 4;
    add(s, g, sv);
    auto x = spec("probability", more, X, tpl);
    x.base = s.id;
    x.inputs = s.inputs;
    x.output = s.output;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, g, sv);
  };
  variants("swr_p_level_set", "swr_p_level_set_more_samples", kLevelSet, gen_level_set, solve_level_set);
  variants("swr_p_sequence", "swr_p_sequence_more_samples", kSequence, gen_sequence, solve_sequence);
}

}  // namespace mathgen::modules
