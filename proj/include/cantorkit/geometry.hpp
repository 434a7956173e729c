#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorkit/system.hpp"

namespace cantorkit {

inline constexpr std::size_t kDefaultEnumerationBudget = 100000;

/// Raised when an enumeration would exceed its configured size.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Digit indices eps_1..eps_k naming one basic interval of order k.
struct Word {
  std::vector<std::size_t> indices;

  [[nodiscard]] std::size_t k() const { return indices.size(); }
  std::size_t& operator[](std::size_t j) { return indices[j - 1]; }  // 1-based like the stages
  std::size_t operator[](std::size_t j) const { return indices[j - 1]; }

  [[nodiscard]] std::string str() const {
    std::string s = "(";
    for (std::size_t j = 0; j < indices.size(); ++j) s += (j ? "," : "") + std::to_string(indices[j]);
    return s + ")";
  }
  friend bool operator==(const Word&, const Word&) = default;
};

struct BasicInterval {
  Word word;
  Rational left;
  Rational length;
  [[nodiscard]] Rational right() const { return left + length; }
};

struct SimpleInterval {
  Word lower;
  Word upper;
  Rational length;
  BigInt count;
  std::vector<long> alphas;
};

inline void check_word(const CantorSystem& sys, const Word& w) {
  if (!sys.reachable(w.k())) throw DomainError("word longer than the system");
  for (std::size_t j = 1; j <= w.k(); ++j)
    if (w[j] >= sys.stage_at(j).m())
      throw DomainError("word index " + std::to_string(w[j]) + " out of range at stage " + std::to_string(j));
}

/// Left endpoint sum_j d_{j, eps_j} b(j).
inline Rational endpoint(const CantorSystem& sys, const Word& w) {
  check_word(sys, w);
  Rational x(0);
  Rational b(1);
  for (std::size_t j = 1; j <= w.k(); ++j) {
    const Stage& st = sys.stage_at(j);
    b *= st.beta();
    x += st.digit(w[j]) * b;
  }
  return x;
}

/// mu(k) as a machine integer, or BudgetExceeded when it is above `budget`.
inline std::size_t checked_count(const CantorSystem& sys, std::size_t k, std::size_t budget) {
  BigInt mu = scale(sys, k).mu;
  if (mu > BigInt(static_cast<unsigned long>(budget)))
    throw BudgetExceeded("stage " + std::to_string(k) + " has " + mu.get_str() + " basic intervals, budget is " +
                         std::to_string(budget));
  return mu.get_ui();
}

/// Word of the basic interval with the given position in left-to-right order.
inline Word word_at(const CantorSystem& sys, std::size_t k, std::uint64_t index) {
  Word w;
  w.indices.assign(k, 0);
  for (std::size_t j = k; j >= 1; --j) {
    const std::uint64_t m = sys.stage_at(j).m();
    w[j] = static_cast<std::size_t>(index % m);
    index /= m;
  }
  if (index != 0) throw DomainError("basic interval index out of range");
  return w;
}

/// All order-k basic intervals, left to right.
inline std::vector<BasicInterval> basic_intervals(const CantorSystem& sys, std::size_t k,
                                                  std::size_t budget = kDefaultEnumerationBudget) {
  checked_count(sys, k, budget);
  std::vector<BasicInterval> level{{Word{}, Rational(0), Rational(1)}};
  for (std::size_t j = 1; j <= k; ++j) {
    const Stage& st = sys.stage_at(j);
    const std::vector<Rational> d = st.digits().materialize();
    std::vector<BasicInterval> next;
    next.reserve(level.size() * d.size());
    for (const auto& parent : level) {
      const Rational len = parent.length * st.beta();
      for (std::size_t e = 0; e < d.size(); ++e) {
        BasicInterval child{parent.word, parent.left + d[e] * len, len};
        child.word.indices.push_back(e);
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  return level;
}

/// Left endpoints divided by b(k), left to right. Cheaper than basic_intervals
/// and exact; the oracle works in these units.
inline std::vector<Rational> scaled_lefts(const CantorSystem& sys, std::size_t k,
                                          std::size_t budget = kDefaultEnumerationBudget) {
  checked_count(sys, k, budget);
  std::vector<Rational> y{Rational(0)};
  for (std::size_t j = 1; j <= k; ++j) {
    const Stage& st = sys.stage_at(j);
    const std::vector<Rational> d = st.digits().materialize();
    const Rational inv = reciprocal(st.beta());
    std::vector<Rational> next;
    next.reserve(y.size() * d.size());
    for (const auto& p : y) {
      const Rational base = p * inv;
      for (const auto& e : d) next.push_back(base + e);
    }
    y = std::move(next);
  }
  return y;
}

/// Convex hull of the basic intervals named by `lower` and `upper`.
inline SimpleInterval make_simple(const CantorSystem& sys, const Word& lower, const Word& upper) {
  if (lower.k() != upper.k()) throw DomainError("simple interval words must have the same length");
  check_word(sys, lower);
  check_word(sys, upper);
  const std::size_t k = lower.k();
  SimpleInterval p{lower, upper, Rational(0), BigInt(1), std::vector<long>(k)};
  Rational b(1);
  Rational spread(0);
  for (std::size_t j = 1; j <= k; ++j) {
    const Stage& st = sys.stage_at(j);
    b *= st.beta();
    spread += (st.digit(upper[j]) - st.digit(lower[j])) * b;
    p.alphas[j - 1] = static_cast<long>(upper[j]) - static_cast<long>(lower[j]);
  }
  if (spread.sign() < 0) throw DomainError("lower word " + lower.str() + " lies right of upper word " + upper.str());
  p.length = b + spread;
  // Horner form of 1 + sum alpha_j m_{j+1}...m_k.
  BigInt c(0);
  for (std::size_t j = 1; j <= k; ++j) {
    c *= static_cast<unsigned long>(sys.stage_at(j).m());
    c += p.alphas[j - 1];
  }
  p.count = c + 1;
  return p;
}

struct GapInfo {
  Rational gap;
  std::size_t level;  // branching level l
  Rational bound;     // (d_{l,i} - (d_{l,i-1} + 1)) b(l)
};

/// Gap between the order-k basic intervals at positions index and index + 1.
inline GapInfo consecutive_gap_info(const CantorSystem& sys, std::size_t k, std::uint64_t index) {
  const Word a = word_at(sys, k, index);
  const Word c = word_at(sys, k, index + 1);
  std::size_t level = 1;
  while (level <= k && a[level] == c[level]) ++level;
  const Scale sc = scale(sys, k);
  const Rational gap = endpoint(sys, c) - endpoint(sys, a) - sc.b;
  const Stage& st = sys.stage_at(level);
  const Rational bound = (st.digit(c[level]) - st.digit(a[level]) - Rational(1)) * scale(sys, level).b;
  return {gap, level, bound};
}

inline Rational consecutive_gap(const CantorSystem& sys, std::size_t k, std::uint64_t index) {
  return consecutive_gap_info(sys, k, index).gap;
}

/// Rewrites P into a simple interval with the same count, no greater length
/// and only nonnegative increments. Needs consecutive digits at least 2 apart
/// on every stage up to k.
inline SimpleInterval normalize_positive(const CantorSystem& sys, const SimpleInterval& p) {
  const std::size_t k = p.lower.k();
  for (std::size_t j = 1; j <= k; ++j)
    if (min_digit_gap(sys.stage_at(j), 1) < Rational(2))
      throw DomainError("normalization needs digit gaps >= 2; stage " + std::to_string(j) + " has " +
                        min_digit_gap(sys.stage_at(j), 1).short_str());
  Word eps = p.lower;
  Word eta = p.upper;
  for (;;) {
    std::size_t kp = 0;
    for (std::size_t j = 1; j <= k && kp == 0; ++j)
      if (eta[j] < eps[j]) kp = j;
    if (kp == 0) break;
    std::size_t kpp = 0;
    for (std::size_t j = kp - 1; j >= 1 && kpp == 0; --j)
      if (eta[j] > eps[j]) kpp = j;
    if (kpp == 0) throw DomainError("normalization needs the lower word left of the upper word");
    const long alpha = static_cast<long>(eta[kp]) - static_cast<long>(eps[kp]);
    eta[kpp] -= 1;
    for (std::size_t j = kpp + 1; j <= kp; ++j) eps[j] = 0;
    for (std::size_t j = kpp + 1; j < kp; ++j) eta[j] = sys.stage_at(j).m() - 1;
    eta[kp] = static_cast<std::size_t>(static_cast<long>(sys.stage_at(kp).m()) + alpha);
  }
  return make_simple(sys, eps, eta);
}

}  // namespace cantorkit
