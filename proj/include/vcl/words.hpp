// Copyright 2026 The vcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file
/// Reduced words in a free group F(x_0, ..., x_{k-1}), stored as syllables.
///
/// A Word is always freely reduced: adjacent syllables have distinct
/// generators and every exponent is nonzero. All operations return new
/// reduced words; values are immutable once built.

#pragma once

#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vcl/integer.hpp"

namespace vcl {

class Alphabet {
 public:
  explicit Alphabet(int rank) : rank_(rank) {
    if (rank < 1) throw PreconditionError("alphabet rank must be >= 1");
  }
  int rank() const { return rank_; }
  bool contains(int generator) const {
    return generator >= 0 && generator < rank_;
  }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  int rank_;
};

struct Syllable {
  int generator = 0;
  Integer exponent;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A single letter x_g^{sign}, sign = +1 or -1.
struct Letter {
  int generator = 0;
  int sign = 1;

  Letter inverse() const { return {generator, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

class Word {
 public:
  /// Placeholder: the identity over a rank-1 alphabet.
  Word() : rank_(1) {}
  explicit Word(Alphabet alphabet) : rank_(alphabet.rank()) {}

  static Word identity(Alphabet alphabet) { return Word(alphabet); }

  static Word generator(Alphabet alphabet, int g, Integer exponent = 1) {
    if (!alphabet.contains(g)) {
      throw PreconditionError("generator index " + std::to_string(g) +
                              " out of range");
    }
    Word w(alphabet);
    w.push(g, std::move(exponent));
    return w;
  }

  /// Reduces an arbitrary syllable sequence (zero exponents allowed).
  static Word from_syllables(Alphabet alphabet,
                             std::span<const Syllable> syllables) {
    Word w(alphabet);
    for (const auto& s : syllables) {
      if (!alphabet.contains(s.generator)) {
        throw PreconditionError("generator index " +
                                std::to_string(s.generator) + " out of range");
      }
      w.push(s.generator, s.exponent);
    }
    return w;
  }

  Alphabet alphabet() const { return Alphabet(rank_); }
  int rank() const { return rank_; }
  const std::vector<Syllable>& syllables() const { return syllables_; }
  std::size_t syllable_count() const { return syllables_.size(); }
  bool is_identity() const { return syllables_.empty(); }

  /// Letter length |w| over the standard basis.
  Integer length() const {
    Integer n = 0;
    for (const auto& s : syllables_) n += vcl::abs(s.exponent);
    return n;
  }

  friend bool operator==(const Word&, const Word&) = default;

  /// Appends x_g^e, merging with (or cancelling) the last syllable.
  void push(int g, Integer e) {
    if (e == 0) return;
    if (!syllables_.empty() && syllables_.back().generator == g) {
      syllables_.back().exponent += e;
      if (syllables_.back().exponent == 0) syllables_.pop_back();
      return;
    }
    syllables_.push_back({g, std::move(e)});
  }

 private:
  int rank_;
  std::vector<Syllable> syllables_;
};

/// Total order used for deterministic output: rank, then syllables
/// lexicographically by (generator, exponent), shorter prefix first.
inline std::strong_ordering compare(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) return u.rank() <=> v.rank();
  const auto& a = u.syllables();
  const auto& b = v.syllables();
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].generator != b[i].generator) {
      return a[i].generator <=> b[i].generator;
    }
    if (a[i].exponent != b[i].exponent) {
      return a[i].exponent < b[i].exponent ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
    }
  }
  return a.size() <=> b.size();
}

inline bool operator<(const Word& u, const Word& v) {
  return compare(u, v) < 0;
}

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = std::hash<int>{}(w.rank());
    for (const auto& s : w.syllables()) {
      std::size_t e;
      if (auto small = to_int64(s.exponent)) {
        e = std::hash<std::int64_t>{}(*small);
      } else {
        e = std::hash<std::string>{}(s.exponent.str());
      }
      h ^= std::hash<int>{}(s.generator) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
      h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

inline void require_same_alphabet(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) throw AlphabetMismatch(u.rank(), v.rank());
}

inline Word reduce(Alphabet alphabet, std::span<const Letter> letters) {
  Word w(alphabet);
  for (const auto& l : letters) {
    if (!alphabet.contains(l.generator)) {
      throw PreconditionError("generator index out of range");
    }
    w.push(l.generator, l.sign);
  }
  return w;
}

inline std::vector<Letter> letters(const Word& w) {
  std::vector<Letter> out;
  for (const auto& s : w.syllables()) {
    const int sg = s.exponent.sign();
    for (std::uint64_t i = 0, n = to_count(vcl::abs(s.exponent), "word length");
         i < n; ++i) {
      out.push_back({s.generator, sg});
    }
  }
  return out;
}

inline Word multiply(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  Word w = u;
  for (const auto& s : v.syllables()) w.push(s.generator, s.exponent);
  return w;
}

inline Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

inline Word invert(const Word& u) {
  Word w(u.alphabet());
  const auto& s = u.syllables();
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    w.push(it->generator, -it->exponent);
  }
  return w;
}

struct CyclicReduction {
  Word core;
  /// w = conjugator * core * conjugator^{-1}
  Word conjugator;
};

/// Splits w = u c u^{-1} with c cyclically reduced; |w| = |c| + 2|u|.
inline CyclicReduction cyclic_reduce(const Word& w) {
  const auto& s = w.syllables();
  Word u(w.alphabet());
  if (s.empty()) return {u, u};
  std::size_t i = 0, j = s.size() - 1;
  Integer first = s[i].exponent, last = s[j].exponent;
  // Adjacent syllables differ, so i < j with equal generators means j >= i+2
  // and peeling never makes the indices cross.
  while (i < j && s[i].generator == s[j].generator &&
         first.sign() != last.sign()) {
    Integer c = vcl::abs(first) <= vcl::abs(last) ? first : Integer(-last);
    u.push(s[i].generator, c);
    first -= c;
    last += c;
    if (first == 0) first = s[++i].exponent;
    if (last == 0) last = s[--j].exponent;
  }
  Word core(w.alphabet());
  if (i == j) {
    core.push(s[i].generator, first);
  } else {
    core.push(s[i].generator, first);
    for (std::size_t k = i + 1; k < j; ++k) {
      core.push(s[k].generator, s[k].exponent);
    }
    core.push(s[j].generator, last);
  }
  return {core, u};
}

inline bool is_cyclically_reduced(const Word& w) {
  const auto& s = w.syllables();
  if (s.size() < 2) return true;
  return !(s.front().generator == s.back().generator &&
           s.front().exponent.sign() != s.back().exponent.sign());
}

/// u^k; power(u, 0) is the identity.
inline Word power(const Word& u, const Integer& k) {
  if (k == 0 || u.is_identity()) return Word(u.alphabet());
  if (k < 0) return power(invert(u), -k);
  auto [core, conj] = cyclic_reduce(u);
  Word body(u.alphabet());
  if (core.syllable_count() == 1) {
    const auto& s = core.syllables().front();
    body.push(s.generator, s.exponent * k);
  } else {
    // Cyclically reduced, so repetition never cancels; only the seam
    // between copies may merge.
    const std::uint64_t n = to_count(k, "power exponent");
    for (std::uint64_t r = 0; r < n; ++r) {
      for (const auto& s : core.syllables()) body.push(s.generator, s.exponent);
    }
  }
  return multiply(multiply(conj, body), invert(conj));
}

/// g^{-1} w g.
inline Word conjugate(const Word& w, const Word& g) {
  return multiply(multiply(invert(g), w), g);
}

inline Integer exponent_sum(const Word& w, int generator) {
  Integer total = 0;
  for (const auto& s : w.syllables()) {
    if (s.generator == generator) total += s.exponent;
  }
  return total;
}

/// Exponent-sum vector (image in the abelianization Z^rank).
inline std::vector<Integer> abelianize(const Word& w) {
  std::vector<Integer> v(static_cast<std::size_t>(w.rank()), Integer(0));
  for (const auto& s : w.syllables()) {
    v[static_cast<std::size_t>(s.generator)] += s.exponent;
  }
  return v;
}

/// The first t letters of w (t <= |w|).
inline Word prefix(const Word& w, const Integer& t) {
  Word out(w.alphabet());
  Integer remaining = t;
  for (const auto& s : w.syllables()) {
    if (remaining <= 0) break;
    Integer len = vcl::abs(s.exponent);
    if (len <= remaining) {
      out.push(s.generator, s.exponent);
      remaining -= len;
    } else {
      out.push(s.generator, remaining * s.exponent.sign());
      remaining = 0;
    }
  }
  if (remaining > 0) throw PreconditionError("prefix longer than word");
  return out;
}

/// Re-expresses w over a larger alphabet (generator indices unchanged).
inline Word embed(const Word& w, Alphabet target) {
  if (target.rank() < w.rank()) {
    throw PreconditionError("cannot embed into a smaller alphabet");
  }
  return Word::from_syllables(target, w.syllables());
}

/// The homomorphic image of w under x_i -> images[i].
inline Word substitute(const Word& w, std::span<const Word> images,
                       Alphabet target) {
  if (images.size() < static_cast<std::size_t>(w.rank())) {
    throw PreconditionError("substitution does not cover every generator");
  }
  Word out(target);
  for (const auto& s : w.syllables()) {
    const Word& img = images[static_cast<std::size_t>(s.generator)];
    if (img.rank() != target.rank()) {
      throw AlphabetMismatch(img.rank(), target.rank());
    }
    out = multiply(out, power(img, s.exponent));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Word literals
//
//   word    := token*            (tokens may be separated by whitespace)
//   token   := name ('^' int)?   | '1'
//   name    := [a-z] | [A-Z] | 'g' digits | 'G' digits
//
// A lowercase letter is x_0..x_25, the uppercase letter its inverse. The
// g<i>/G<i> forms address any index. "" and "1" both denote the identity.
// ---------------------------------------------------------------------------

inline Word parse_word(std::string_view text, Alphabet alphabet) {
  Word w(alphabet);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("word literal \"" + std::string(text) + "\" at offset " +
                      std::to_string(i) + ": " + why);
  };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '1') {
      ++i;
      continue;
    }
    int generator = -1;
    int sg = 1;
    if ((c == 'g' || c == 'G') && i + 1 < text.size() && is_digit(text[i + 1])) {
      sg = c == 'g' ? 1 : -1;
      std::size_t j = i + 1;
      while (j < text.size() && is_digit(text[j])) ++j;
      const auto digits = text.substr(i + 1, j - i - 1);
      if (digits.size() > 9) throw fail("generator index too large");
      generator = std::stoi(std::string(digits));
      i = j;
    } else if (c >= 'a' && c <= 'z') {
      generator = c - 'a';
      ++i;
    } else if (c >= 'A' && c <= 'Z') {
      generator = c - 'A';
      sg = -1;
      ++i;
    } else {
      throw fail(std::string("unexpected character '") + c + "'");
    }
    if (!alphabet.contains(generator)) {
      throw ParseError("generator index " + std::to_string(generator) +
                       " out of range for rank " +
                       std::to_string(alphabet.rank()));
    }
    Integer e = sg;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t j = i;
      if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
      const std::size_t digits_start = j;
      while (j < text.size() && is_digit(text[j])) ++j;
      if (j == digits_start) throw fail("expected integer after '^'");
      std::string num(text.substr(i, j - i));
      if (num.front() == '+') num.erase(0, 1);
      e = Integer(num) * sg;
      i = j;
    }
    w.push(generator, e);
  }
  return w;
}

inline std::string generator_name(int g, int rank, bool inverse) {
  if (rank <= 26) {
    return std::string(1, static_cast<char>((inverse ? 'A' : 'a') + g));
  }
  return (inverse ? "G" : "g") + std::to_string(g);
}

namespace detail {
inline std::string format_word(const Word& w, const char* sep) {
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += sep;
    if (s.exponent == 1) {
      out += generator_name(s.generator, w.rank(), false);
    } else if (s.exponent == -1) {
      out += generator_name(s.generator, w.rank(), true);
    } else {
      out += generator_name(s.generator, w.rank(), false);
      out += "^" + s.exponent.str();
    }
  }
  return out;
}
}  // namespace detail

/// Verbose form, e.g. "a^2 B c". The identity formats as "".
inline std::string format_word(const Word& w) {
  return detail::format_word(w, " ");
}

/// Compact form, e.g. "a^2Bc".
inline std::string format_compact(const Word& w) {
  return detail::format_word(w, "");
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Number of reduced words of length <= max_len in a free group of the
/// given rank: 1 + sum_{n=1..L} 2k(2k-1)^{n-1}.
inline Integer reduced_word_count(int rank, int max_len) {
  Integer total = max_len >= 0 ? 1 : 0;
  Integer level = 2 * rank;
  for (int n = 1; n <= max_len; ++n) {
    total += level;
    level *= 2 * rank - 1;
  }
  return total;
}

/// Streams every reduced word of length <= max_len exactly once, ordered by
/// length and then lexicographically by letter code (a < A < b < B < ...).
class ReducedWordStream {
 public:
  ReducedWordStream(Alphabet alphabet, int max_len)
      : alphabet_(alphabet), max_len_(max_len) {
    if (max_len < 0) throw PreconditionError("max_len must be >= 0");
  }

  std::optional<Word> next() {
    if (done_) return std::nullopt;
    if (!started_) {
      started_ = true;
      return Word(alphabet_);
    }
    if (!advance()) {
      if (static_cast<int>(codes_.size()) == max_len_) {
        done_ = true;
        return std::nullopt;
      }
      codes_.assign(codes_.size() + 1, 0);
      fill_from(0);
    }
    return current();
  }

 private:
  int letter_count() const { return 2 * alphabet_.rank(); }
  static int inverse_code(int c) { return c ^ 1; }

  int smallest_after(std::size_t pos) const {
    if (pos == 0) return 0;
    return codes_[pos - 1] == 1 ? 1 : 0;
  }

  void fill_from(std::size_t pos) {
    for (std::size_t p = pos; p < codes_.size(); ++p) {
      codes_[p] = smallest_after(p);
    }
  }

  bool advance() {
    for (std::size_t p = codes_.size(); p-- > 0;) {
      int c = codes_[p] + 1;
      if (p > 0 && c == inverse_code(codes_[p - 1])) ++c;
      if (c < letter_count()) {
        codes_[p] = c;
        fill_from(p + 1);
        return true;
      }
    }
    return false;
  }

  Word current() const {
    Word w(alphabet_);
    for (int c : codes_) w.push(c / 2, (c % 2 == 0) ? 1 : -1);
    return w;
  }

  Alphabet alphabet_;
  int max_len_;
  std::vector<int> codes_;
  bool started_ = false;
  bool done_ = false;
};

inline std::vector<Word> enumerate_reduced(Alphabet alphabet, int max_len) {
  std::vector<Word> out;
  ReducedWordStream stream(alphabet, max_len);
  while (auto w = stream.next()) out.push_back(std::move(*w));
  return out;
}

}  // namespace vcl
