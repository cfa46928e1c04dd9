#include "s2t/word.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace s2t {

namespace {

struct Redex {
  std::size_t start = 0;
  std::size_t end = 0;
  Word replacement;
};

bool is_t(const Letter& l, const BaseGroup& base) { return l.is_base() && l.index == base.t(); }

bool cancels(const Letter& a, const Letter& b) {
  return a.is_generator() && a.kind == b.kind && a.index == b.index && a.sign == -b.sign;
}

void push_base(Word& out, ElementId g, const BaseGroup& base) {
  if (g != base.identity()) out.push_back(Letter::base(g));
}

// Redex starting at position i, if any. Rules:
//   g1 g2            -> (g1 g2)
//   x^e x^-e         -> 1            (x in S u R)
//   s^e t            -> t s^e
//   b1 w b2          -> (b1 t) w (t b2)  for w a nonempty S-block and
//                                         b1 not its left coset rep
std::optional<Redex> redex_at(std::span<const Letter> w, std::size_t i, const BaseGroup& base) {
  const std::size_t n = w.size();
  if (i + 1 < n) {
    const Letter& a = w[i];
    const Letter& b = w[i + 1];
    if (a.is_base() && b.is_base()) {
      Redex r{i, i + 2, {}};
      push_base(r.replacement, base.mul(a.index, b.index), base);
      return r;
    }
    if (cancels(a, b)) {
      return Redex{i, i + 2, {}};
    }
    if (a.is_s() && is_t(b, base)) {
      return Redex{i, i + 2, {b, a}};
    }
  }
  if (w[i].is_base() && base.left_coset_rep(w[i].index) != w[i].index) {
    std::size_t j = i + 1;
    while (j < n && w[j].is_s()) ++j;
    if (j > i + 1 && j < n && w[j].is_base()) {
      Redex r{i, j + 1, {}};
      push_base(r.replacement, base.mul(w[i].index, base.t()), base);
      r.replacement.insert(r.replacement.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 1),
                           w.begin() + static_cast<std::ptrdiff_t>(j));
      push_base(r.replacement, base.mul(base.t(), w[j].index), base);
      return r;
    }
  }
  return std::nullopt;
}

void apply_redex(Word& w, const Redex& r) {
  w.erase(w.begin() + static_cast<std::ptrdiff_t>(r.start), w.begin() + static_cast<std::ptrdiff_t>(r.end));
  w.insert(w.begin() + static_cast<std::ptrdiff_t>(r.start), r.replacement.begin(), r.replacement.end());
}

NormalForm take_suffix_to_front(const NormalForm& k, std::size_t len, NormalForm& conjugator,
                                const BaseGroup& base) {
  const auto split = k.letters().end() - static_cast<std::ptrdiff_t>(len);
  Word moved(split, k.letters().end());
  Word rotated = moved;
  rotated.insert(rotated.end(), k.letters().begin(), split);
  Word c = moved;
  c.insert(c.end(), conjugator.begin(), conjugator.end());
  conjugator = normalize(c, base);
  return normalize(rotated, base);
}

}  // namespace

void validate_word(std::span<const Letter> w, const BaseGroup& base) {
  for (const Letter& l : w) {
    if (!l.is_base()) {
      if (l.sign != 1 && l.sign != -1) throw WordError("generator letter with invalid sign");
      continue;
    }
    if (!base.contains(l.index)) {
      throw WordError("base element g" + std::to_string(l.index) + " is not in the group");
    }
    if (l.index == base.identity()) {
      throw WordError("base letter g" + std::to_string(l.index) + " is the identity");
    }
  }
}

NormalForm normalize(std::span<const Letter> input, const BaseGroup& base) {
  validate_word(input, base);
  Word w(input.begin(), input.end());
  std::size_t i = 0;
  while (i < w.size()) {
    auto r = redex_at(w, i, base);
    if (!r) {
      ++i;
      continue;
    }
    apply_redex(w, *r);
    // Every redex to the left of the rewritten span was absent before; the
    // earliest one that can appear starts at the base letter in front of
    // the S-block preceding r->start.
    i = r->start == 0 ? 0 : r->start - 1;
    while (i > 0 && w[i].is_s()) --i;
  }
  return NormalForm(std::move(w));
}

Word rewrite(std::span<const Letter> input, const BaseGroup& base, RewriteStrategy strategy) {
  validate_word(input, base);
  Word w(input.begin(), input.end());
  for (;;) {
    std::optional<Redex> found;
    if (strategy == RewriteStrategy::LeftmostFirst) {
      for (std::size_t i = 0; i < w.size() && !found; ++i) found = redex_at(w, i, base);
    } else {
      for (std::size_t i = w.size(); i-- > 0 && !found;) found = redex_at(w, i, base);
    }
    if (!found) return w;
    apply_redex(w, *found);
  }
}

bool is_normal(std::span<const Letter> w, const BaseGroup& base) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (redex_at(w, i, base)) return false;
  }
  return true;
}

bool extends_normal(std::span<const Letter> prefix, Letter next, const BaseGroup& base) {
  if (prefix.empty()) return true;
  const Letter& last = prefix.back();
  if (last.is_base() && next.is_base()) return false;
  if (cancels(last, next)) return false;
  if (last.is_s() && is_t(next, base)) return false;
  if (next.is_base()) {
    std::size_t j = prefix.size();
    while (j > 0 && prefix[j - 1].is_s()) --j;
    if (j < prefix.size() && j > 0) {
      const Letter& b1 = prefix[j - 1];
      if (b1.is_base() && base.left_coset_rep(b1.index) != b1.index) return false;
    }
  }
  return true;
}

Letter inverse_letter(Letter l, const BaseGroup& base) {
  if (l.is_base()) return Letter::base(base.inverse(l.index));
  return l.flipped();
}

NormalForm multiply(const NormalForm& a, const NormalForm& b, const BaseGroup& base) {
  Word w = a.letters();
  w.insert(w.end(), b.begin(), b.end());
  return normalize(w, base);
}

NormalForm invert(const NormalForm& a, const BaseGroup& base) {
  Word w;
  w.reserve(a.size());
  for (auto it = a.letters().rbegin(); it != a.letters().rend(); ++it) {
    w.push_back(inverse_letter(*it, base));
  }
  return normalize(w, base);
}

bool is_reduced(std::span<const Letter> w, const BaseGroup& base) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n) {
      if (w[i].is_base() && w[i + 1].is_base()) return false;
      if (cancels(w[i], w[i + 1])) return false;
    }
    if (is_t(w[i], base)) {
      std::size_t j = i + 1;
      while (j < n && w[j].is_s()) ++j;
      if (j > i + 1 && j < n && is_t(w[j], base)) return false;
    }
    if (i + 2 < n && w[i].is_s() && is_t(w[i + 1], base) && w[i + 2] == w[i].flipped()) return false;
  }
  return true;
}

bool is_cyclically_reduced(const NormalForm& w, const BaseGroup& base) {
  const Word& letters = w.letters();
  const std::size_t n = letters.size();
  Word rotation(n);
  for (std::size_t shift = 0; shift < n; ++shift) {
    std::rotate_copy(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(shift), letters.end(),
                     rotation.begin());
    if (!is_reduced(rotation, base)) return false;
  }

  // Swapping t with S letters may bring a t next to a base letter, next to
  // another t, or between two cancelling S letters. Check each maximal
  // cyclic run of S letters and t's for these.
  auto in_run = [&](const Letter& l) { return l.is_s() || is_t(l, base); };
  const auto outside = std::find_if_not(letters.begin(), letters.end(), in_run);
  if (outside == letters.end()) {
    Word s;
    std::size_t ts = 0;
    for (const Letter& l : letters) {
      if (l.is_s()) s.push_back(l); else ++ts;
    }
    if (ts > 1) return false;
    for (std::size_t i = 0; i < s.size() && s.size() > 1; ++i) {
      if (cancels(s[i], s[(i + 1) % s.size()])) return false;
    }
    return true;
  }
  std::rotate_copy(letters.begin(), outside, letters.end(), rotation.begin());
  for (std::size_t i = 1; i < n;) {
    if (!in_run(rotation[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    std::size_t ts = 0;
    std::optional<Letter> last_s;
    for (; j < n && in_run(rotation[j]); ++j) {
      if (!rotation[j].is_s()) {
        ++ts;
        continue;
      }
      if (last_s && cancels(*last_s, rotation[j])) return false;
      last_s = rotation[j];
    }
    const bool base_neighbour = rotation[i - 1].is_base() || (j < n ? rotation[j] : rotation[0]).is_base();
    if (ts > 1 || (ts == 1 && base_neighbour)) return false;
    i = j;
  }
  return true;
}

CyclicDecomposition cyclic_reduce(const NormalForm& w, const BaseGroup& base) {
  NormalForm core = w;
  NormalForm conjugator;
  // Each move merges two syllables or cancels letters; the bound only guards
  // against a broken invariant.
  const std::size_t max_moves = 4 * w.size() + 8;
  for (std::size_t moves = 0;; ++moves) {
    if (moves > max_moves) {
      throw std::logic_error("cyclic_reduce failed to terminate on " + format_word(w));
    }
    const Word& k = core.letters();
    if (k.empty()) break;

    // Free-product level: alternate runs of R letters and runs of G0/S letters.
    std::size_t runs = 1;
    for (std::size_t i = 1; i < k.size(); ++i) {
      if (k[i].is_r() != k[i - 1].is_r()) ++runs;
    }
    if (runs >= 2) {
      if (k.front().is_r() != k.back().is_r()) break;
      std::size_t len = 1;
      while (k[k.size() - 1 - len].is_r() == k.back().is_r()) ++len;
      core = take_suffix_to_front(core, len, conjugator, base);
      continue;
    }
    if (k.front().is_r()) {
      if (k.size() >= 2 && cancels(k.back(), k.front())) {
        core = take_suffix_to_front(core, 1, conjugator, base);
        continue;
      }
      break;
    }

    // Amalgamated level: syllables are single base letters or S-blocks, a
    // leading t in front of an S-block belonging to that block.
    struct Syllable {
      std::size_t len;
      bool in_base;
    };
    std::vector<Syllable> syllables;
    for (std::size_t i = 0; i < k.size();) {
      if (k[i].is_base() && !(i == 0 && is_t(k[i], base) && k.size() > 1 && k[1].is_s())) {
        syllables.push_back({1, true});
        ++i;
        continue;
      }
      std::size_t j = k[i].is_base() ? i + 1 : i;
      while (j < k.size() && k[j].is_s()) ++j;
      syllables.push_back({j - i, false});
      i = j;
    }
    if (syllables.size() >= 2) {
      const bool first_base = syllables.front().in_base;
      const bool last_base = syllables.back().in_base;
      if (first_base == last_base || (!first_base && is_t(k.front(), base))) {
        core = take_suffix_to_front(core, syllables.back().len, conjugator, base);
        continue;
      }
      break;
    }
    if (syllables.front().in_base) break;
    const std::size_t off = is_t(k.front(), base) ? 1 : 0;
    if (k.size() - off >= 2 && cancels(k.back(), k[off])) {
      core = take_suffix_to_front(core, 1, conjugator, base);
      continue;
    }
    break;
  }
  return {std::move(conjugator), std::move(core)};
}

bool is_conjugate_to_t(const NormalForm& w, const BaseGroup& base) {
  if (w.empty()) return false;
  const NormalForm core = cyclic_reduce(w, base).core;
  return core.size() == 1 && core[0].is_base() && base.is_involution(core[0].index);
}

Word parse_word(std::string_view text) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "e") continue;
    const char head = tok.front();
    std::uint32_t index = 0;
    const char* first = tok.data() + 1;
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, index);
    if (first == last || ec != std::errc() || ptr != last) {
      throw WordError("malformed letter '" + tok + "'");
    }
    switch (head) {
      case 'g': w.push_back(Letter::base(index)); break;
      case 's': w.push_back(Letter::s(index, 1)); break;
      case 'S': w.push_back(Letter::s(index, -1)); break;
      case 'r': w.push_back(Letter::r(index, 1)); break;
      case 'R': w.push_back(Letter::r(index, -1)); break;
      default: throw WordError("unknown letter kind in '" + tok + "'");
    }
  }
  return w;
}

Word parse_word(std::string_view text, const BaseGroup& base) {
  Word w = parse_word(text);
  validate_word(w, base);
  return w;
}

std::string format_letter(const Letter& l) {
  char head = 'g';
  if (l.is_s()) head = l.sign > 0 ? 's' : 'S';
  if (l.is_r()) head = l.sign > 0 ? 'r' : 'R';
  return head + std::to_string(l.index);
}

std::string format_word(std::span<const Letter> w) {
  if (w.empty()) return "e";
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ' ';
    out += format_letter(l);
  }
  return out;
}

}  // namespace s2t
