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
/// Finite presentations over free targets: relator matrices, Smith normal
/// form with transforms, abelianization, the cyclic retract criterion and
/// the conjugation-corrected retraction built from a solution.

#pragma once

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vcl/integer.hpp"
#include "vcl/words.hpp"

namespace vcl {

struct Presentation {
  int generators = 0;
  std::vector<Word> relators;

  Alphabet alphabet() const { return Alphabet(generators); }

  static Presentation make(int n, std::vector<Word> rels) {
    for (const auto& r : rels) {
      if (r.rank() != n) throw AlphabetMismatch(r.rank(), n);
    }
    return {n, std::move(rels)};
  }
};

/// Reads `gens: <n>` followed by one relator literal per line. Blank lines
/// and lines starting with '#' are ignored.
inline Presentation parse_presentation(std::istream& in) {
  std::optional<int> n;
  std::vector<Word> rels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    auto text = line.substr(start);
    while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) {
      text.pop_back();
    }
    if (!n) {
      if (text.rfind("gens:", 0) != 0) {
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected 'gens: <n>'");
      }
      try {
        std::size_t used = 0;
        int value = std::stoi(text.substr(5), &used);
        if (value < 1) throw std::invalid_argument("rank");
        n = value;
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) +
                         ": bad generator count");
      }
      continue;
    }
    try {
      rels.push_back(parse_word(text, Alphabet(*n)));
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!n) throw ParseError("missing 'gens: <n>' header");
  return {*n, std::move(rels)};
}

inline Presentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  return parse_presentation(in);
}

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Integer(0)) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows) {
    if (rows.empty()) return {};
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) {
        throw PreconditionError("matrix rows must have equal length");
      }
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  std::vector<std::vector<Integer>> to_rows() const {
    std::vector<std::vector<Integer>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      out[i].assign(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                    a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    return out;
  }

  void swap_rows(std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  /// row_i += q * row_k
  void add_row(std::size_t i, std::size_t k, const Integer& q) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += q * (*this)(k, j);
  }
  /// col_j += q * col_k
  void add_col(std::size_t j, std::size_t k, const Integer& q) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += q * (*this)(i, k);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> a_;
};

inline IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols() != y.rows()) throw PreconditionError("matrix shape mismatch");
  IntMatrix out(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) += x(i, k) * y(k, j);
    }
  return out;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of non-square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Entry (i, j) is the exponent sum of generator j in relator i.
inline IntMatrix relator_matrix(const Presentation& p) {
  IntMatrix m(p.relators.size(), static_cast<std::size_t>(p.generators));
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    const auto ab = abelianize(p.relators[i]);
    for (std::size_t j = 0; j < ab.size(); ++j) m(i, j) = ab[j];
  }
  return m;
}

struct SNFResult {
  IntMatrix D;
  IntMatrix U;  // rows x rows
  IntMatrix V;  // cols x cols

  std::vector<Integer> diagonal() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) {
      out.push_back(D(i, i));
    }
    return out;
  }
};

/// U * M * V = D with D diagonal, nonnegative and d_1 | d_2 | ... .
inline SNFResult smith_normal_form(const IntMatrix& M) {
  SNFResult r{M, IntMatrix::identity(M.rows()), IntMatrix::identity(M.cols())};
  IntMatrix& D = r.D;
  const std::size_t rows = M.rows(), cols = M.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero |entry|; ties broken leftmost, then topmost.
      std::optional<std::pair<std::size_t, std::size_t>> piv;
      for (std::size_t j = t; j < cols; ++j)
        for (std::size_t i = t; i < rows; ++i) {
          if (D(i, j) == 0) continue;
          if (!piv || vcl::abs(D(i, j)) < vcl::abs(D(piv->first, piv->second))) {
            piv = {i, j};
          }
        }
      if (!piv) return r;
      if (piv->first != t) {
        D.swap_rows(t, piv->first);
        r.U.swap_rows(t, piv->first);
      }
      if (piv->second != t) {
        D.swap_cols(t, piv->second);
        r.V.swap_cols(t, piv->second);
      }
      const Integer p = D(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = D(i, t) / p;
        D.add_row(i, t, -q);
        r.U.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = D(t, j) / p;
        D.add_col(j, t, -q);
        r.V.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (D(i, j) % p != 0) {
            bad_row = i;
            break;
          }
        }
      if (bad_row) {
        D.add_row(t, *bad_row, 1);
        r.U.add_row(t, *bad_row, 1);
        continue;
      }
      if (p < 0) {
        D.negate_row(t);
        r.U.negate_row(t);
      }
      break;
    }
  }
  return r;
}

struct AbelianizationData {
  std::vector<Integer> invariant_factors;  // each > 1
  std::size_t free_rank = 0;
};

inline AbelianizationData abelianization_from_snf(const SNFResult& snf) {
  AbelianizationData out;
  std::size_t nonzero = 0;
  for (const auto& d : snf.diagonal()) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) out.invariant_factors.push_back(d);
  }
  out.free_rank = snf.D.cols() - nonzero;
  return out;
}

inline AbelianizationData abelianization(const Presentation& p) {
  return abelianization_from_snf(smith_normal_form(relator_matrix(p)));
}

struct CyclicRetractVerdict {
  bool primitive = false;
  /// Coordinates of h in the free part of the abelianization.
  std::vector<Integer> image;
  Integer gcd = 0;
  /// lambda on generator exponent sums with lambda(ab(h)) = 1 and lambda
  /// vanishing on every relator; g -> h^{lambda(ab(g))} is a retraction.
  std::optional<std::vector<Integer>> covector;

  /// The retraction's generator images.
  std::vector<Word> retraction(const Word& h) const {
    if (!covector) throw PreconditionError("no retraction: not primitive");
    std::vector<Word> out;
    for (const auto& c : *covector) out.push_back(power(h, c));
    return out;
  }
};

inline Integer apply_covector(const std::vector<Integer>& lambda,
                              const Word& w) {
  const auto ab = abelianize(w);
  Integer s = 0;
  for (std::size_t i = 0; i < ab.size(); ++i) s += lambda.at(i) * ab[i];
  return s;
}

inline CyclicRetractVerdict cyclic_retract_test(const Presentation& p,
                                                const Word& h) {
  if (h.rank() != p.generators) throw AlphabetMismatch(h.rank(), p.generators);
  if (h.is_identity()) throw PreconditionError("h must be nonidentity");
  const auto snf = smith_normal_form(relator_matrix(p));
  const std::size_t n = static_cast<std::size_t>(p.generators);
  const auto ab = abelianize(h);
  std::vector<Integer> y(n, 0);  // ab(h) * V
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += ab[j] * snf.V(j, i);
  std::vector<std::size_t> free_coords;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= snf.D.rows() || snf.D(i, i) == 0) free_coords.push_back(i);
  }
  CyclicRetractVerdict v;
  std::vector<Integer> coeff(n, 0);
  Integer g = 0;
  for (std::size_t i : free_coords) {
    v.image.push_back(y[i]);
    auto e = extended_gcd(g, y[i]);
    for (auto& c : coeff) c *= e.x;
    coeff[i] = e.y;
    g = e.g;
  }
  v.gcd = g;
  if (g != 1) return v;
  v.primitive = true;
  std::vector<Integer> lambda(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) lambda[j] += snf.V(j, i) * coeff[i];
  v.covector = std::move(lambda);
  return v;
}

struct RetractionVerdict {
  bool ok = false;
  std::optional<std::size_t> failed_relator;
  std::optional<std::size_t> failed_generator;
  std::string reason;
};

/// Checks that g_j -> images[j] defines a homomorphism into the free
/// target fixing every a_i = v_i(g).
inline RetractionVerdict verify_retraction(const Presentation& p,
                                           const std::vector<Word>& v_words,
                                           const std::vector<Word>& a_values,
                                           const std::vector<Word>& images) {
  if (images.size() != static_cast<std::size_t>(p.generators)) {
    throw PreconditionError("assignment must give one image per generator");
  }
  if (v_words.size() != a_values.size()) {
    throw PreconditionError("v_words and subgroup generators differ in count");
  }
  if (images.empty()) throw PreconditionError("empty assignment");
  const Alphabet target = images.front().alphabet();
  for (const auto& w : images) {
    if (w.rank() != target.rank()) throw AlphabetMismatch(w.rank(), target.rank());
  }
  for (const auto& a : a_values) {
    if (a.rank() != target.rank()) throw AlphabetMismatch(a.rank(), target.rank());
  }
  for (const auto& v : v_words) {
    if (v.rank() != p.generators) throw AlphabetMismatch(v.rank(), p.generators);
  }
  RetractionVerdict out;
  for (std::size_t j = 0; j < p.relators.size(); ++j) {
    if (!substitute(p.relators[j], images, target).is_identity()) {
      out.failed_relator = j;
      out.reason = "relator " + std::to_string(j) + " (" +
                   format_compact(p.relators[j]) +
                   ") does not map to the identity";
      return out;
    }
  }
  for (std::size_t i = 0; i < v_words.size(); ++i) {
    if (substitute(v_words[i], images, target) != a_values[i]) {
      out.failed_generator = i;
      out.reason = "subgroup generator " + std::to_string(i) + " is not fixed";
      return out;
    }
  }
  out.ok = true;
  return out;
}

struct RetractionFromSolution {
  std::vector<Word> images;
  RetractionVerdict verdict;
};

/// Given h = solution with R_j(h) = 1 and v_i(h) = a_i^{U^alpha}, returns
/// g_i -> h_i^{U^{-alpha}} and re-verifies it. The relator words play the
/// role of the u_j.
inline RetractionFromSolution retraction_from_solution(
    const Presentation& p, const std::vector<Word>& v_words,
    const std::vector<Word>& a_values, const std::vector<Word>& solution,
    const Word& U, const Integer& alpha) {
  if (solution.size() != static_cast<std::size_t>(p.generators)) {
    throw PreconditionError("solution must give one element per generator");
  }
  if (v_words.size() != a_values.size()) {
    throw PreconditionError("v_words and subgroup generators differ in count");
  }
  const Alphabet target = U.alphabet();
  for (std::size_t j = 0; j < p.relators.size(); ++j) {
    if (!substitute(p.relators[j], solution, target).is_identity()) {
      throw PreconditionError("relator condition fails at relator " +
                              std::to_string(j) + " (" +
                              format_compact(p.relators[j]) + ")");
    }
  }
  const Word ua = power(U, alpha);
  for (std::size_t i = 0; i < v_words.size(); ++i) {
    if (substitute(v_words[i], solution, target) != conjugate(a_values[i], ua)) {
      throw PreconditionError("conjugation condition fails at generator " +
                              std::to_string(i));
    }
  }
  RetractionFromSolution out;
  const Word correction = power(U, -alpha);
  for (const auto& h : solution) out.images.push_back(conjugate(h, correction));
  out.verdict = verify_retraction(p, v_words, a_values, out.images);
  return out;
}

}  // namespace vcl
