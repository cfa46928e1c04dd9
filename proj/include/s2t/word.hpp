#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "s2t/base_group.hpp"

namespace s2t {

enum class LetterKind : std::uint8_t { Base, S, R };

/// One letter of the alphabet (G0 \ 1) u R u R^-1 u S u S^-1.
/// For Base letters `index` is the element id and `sign` is +1.
struct Letter {
  LetterKind kind = LetterKind::Base;
  std::uint32_t index = 0;
  std::int8_t sign = 1;

  static Letter base(ElementId g) { return {LetterKind::Base, g, 1}; }
  static Letter s(std::uint32_t i, int sign = 1) { return {LetterKind::S, i, static_cast<std::int8_t>(sign)}; }
  static Letter r(std::uint32_t i, int sign = 1) { return {LetterKind::R, i, static_cast<std::int8_t>(sign)}; }

  bool is_base() const { return kind == LetterKind::Base; }
  bool is_s() const { return kind == LetterKind::S; }
  bool is_r() const { return kind == LetterKind::R; }
  bool is_generator() const { return kind != LetterKind::Base; }

  /// Generator letters only: the same generator with the opposite sign.
  Letter flipped() const { return {kind, index, static_cast<std::int8_t>(-sign)}; }

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Canonical reduced word. Two words denote the same element of
/// G = (G0 *_<t> (<t> x F(S))) * F(R) iff their normal forms are equal.
///
/// Irreducible words satisfy, besides free reduction and the absence of
/// adjacent base letters:
///   * no base letter t directly after an S letter (t is commuted left);
///   * a base letter b followed by an S-block and then another base letter
///     is the left coset representative of {b, b*t}.
/// The second rule fixes where the <t>-part of an H-syllable lives; without
/// it `s t g` has two irreducible forms, `t s g` and `s (t*g)`.
class NormalForm {
 public:
  NormalForm() = default;

  const Word& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
  friend auto operator<=>(const NormalForm& a, const NormalForm& b) { return a.letters_ <=> b.letters_; }

 private:
  explicit NormalForm(Word letters) : letters_(std::move(letters)) {}
  friend NormalForm normalize(std::span<const Letter>, const BaseGroup&);

  Word letters_;
};

struct CyclicDecomposition {
  NormalForm conjugator;
  NormalForm core;
};

enum class RewriteStrategy { LeftmostFirst, RightmostFirst };

/// Throws WordError if a base letter is out of range or the identity.
void validate_word(std::span<const Letter> w, const BaseGroup& base);

NormalForm normalize(std::span<const Letter> w, const BaseGroup& base);

/// Reference rewriting by repeatedly applying the leftmost (or rightmost)
/// redex. Slow; used to cross-check `normalize`.
Word rewrite(std::span<const Letter> w, const BaseGroup& base, RewriteStrategy strategy);

/// True iff `w` contains no redex of the normal-form rewriting system.
bool is_normal(std::span<const Letter> w, const BaseGroup& base);

/// True iff appending `next` to the normal word `prefix` keeps it normal.
bool extends_normal(std::span<const Letter> prefix, Letter next, const BaseGroup& base);

NormalForm multiply(const NormalForm& a, const NormalForm& b, const BaseGroup& base);
NormalForm invert(const NormalForm& a, const BaseGroup& base);
Letter inverse_letter(Letter l, const BaseGroup& base);

/// Reducedness in the weak sense: none of g1 g2, r^e r^-e, s^e s^-e,
/// t s1..sn t (n >= 1) or s^e t s^-e occurs as a subword.
bool is_reduced(std::span<const Letter> w, const BaseGroup& base);
/// Every cyclic permutation of every word obtained from w by swapping
/// adjacent t and S letters is reduced.
bool is_cyclically_reduced(const NormalForm& w, const BaseGroup& base);

/// Finds k, c with k cyclically reduced and c^-1 k c = w.
CyclicDecomposition cyclic_reduce(const NormalForm& w, const BaseGroup& base);

/// True iff w is conjugate to an involution of G0 (hence to t, given that
/// all involutions of G0 are conjugate).
bool is_conjugate_to_t(const NormalForm& w, const BaseGroup& base);

/// Text syntax: `g<i>`, `s<i>`/`S<i>`, `r<i>`/`R<i>`, whitespace separated;
/// `e` is the empty word.
Word parse_word(std::string_view text);
Word parse_word(std::string_view text, const BaseGroup& base);
std::string format_letter(const Letter& l);
std::string format_word(std::span<const Letter> w);
inline std::string format_word(const NormalForm& w) { return format_word(w.letters()); }

}  // namespace s2t
