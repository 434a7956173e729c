#pragma once

// Named constructors for the standard families of linear Cantor sets.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorkit/system.hpp"

namespace cantorkit {

using PresetParams = std::map<std::string, std::string>;

struct PresetInfo {
  std::string name;
  std::string params;
  std::string summary;
};

inline const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = {
      {"middle_thirds", "", "beta 1/3, digits {0,2}"},
      {"example31", "n, d", "beta 1/n, digits {0,d,n-1}"},
      {"homogeneous", "beta, m (comma lists give a periodic tail)", "equal gaps, no end gaps"},
      {"harmonic", "K=100", "beta_k = k/(2(k+1)), extreme digits, dimension 1 in the limit"},
      {"pow_scaling", "q=2, alpha=1/2, K=20", "m_k = q^k, beta_k = q^(-k/alpha), evenly spaced digits"},
      {"example613", "beta, xi (comma lists), tail_beta=1/5, tail_xi=1", "digits {0,1+xi,(1-beta)/beta}"},
      {"remark614a", "n=5, p=1", "p three-digit stages then two-digit stages; homogeneous, fails the main theorem"},
      {"remark614b", "", "three-digit stages with a narrow first gap; A1 and A2a hold, A2b fails"},
  };
  return catalog;
}

namespace detail {

class ParamReader {
 public:
  ParamReader(std::string preset, const PresetParams& p) : preset_(std::move(preset)), params_(p) {}

  Rational rational(const std::string& key, const std::optional<Rational>& fallback = std::nullopt) {
    used_.push_back(key);
    const auto it = params_.find(key);
    if (it == params_.end()) {
      if (fallback) return *fallback;
      throw std::invalid_argument(preset_ + ": missing parameter '" + key + "'");
    }
    try {
      return Rational::parse(it->second);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(preset_ + ": parameter '" + key + "' is not a rational: " + it->second);
    }
  }

  long integer(const std::string& key, const std::optional<long>& fallback = std::nullopt) {
    const Rational r = rational(key, fallback ? std::optional<Rational>(Rational(*fallback)) : std::nullopt);
    if (!r.is_integer() || !r.num().fits_slong_p())
      throw std::invalid_argument(preset_ + ": parameter '" + key + "' must be an integer");
    return r.num().get_si();
  }

  std::vector<Rational> list(const std::string& key, const std::optional<std::string>& fallback = std::nullopt) {
    used_.push_back(key);
    const auto it = params_.find(key);
    std::string text;
    if (it != params_.end()) text = it->second;
    else if (fallback) text = *fallback;
    else throw std::invalid_argument(preset_ + ": missing parameter '" + key + "'");
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        out.push_back(Rational::parse(item));
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument(preset_ + ": parameter '" + key + "' has a bad entry: " + item);
      }
    }
    if (out.empty()) throw std::invalid_argument(preset_ + ": parameter '" + key + "' is empty");
    return out;
  }

  void finish() const {
    for (const auto& [k, v] : params_) {
      bool known = false;
      for (const auto& u : used_) known = known || u == k;
      if (!known) throw std::invalid_argument(preset_ + ": unknown parameter '" + k + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const { throw std::invalid_argument(preset_ + ": " + what); }

 private:
  std::string preset_;
  const PresetParams& params_;
  std::vector<std::string> used_;
};

inline Stage extreme_stage(const Rational& beta) {
  return Stage(beta, {Rational(0), (Rational(1) - beta) / beta});
}

inline Stage homogeneous_stage(const Rational& beta, long m) {
  const Rational d = (Rational(1) - beta) / (beta * Rational(m - 1));
  return Stage(beta, DigitSet::progression(Rational(0), d, static_cast<std::size_t>(m)));
}

inline void require_valid(const CantorSystem& sys, const std::string& name) {
  const auto v = validate_system(sys);
  if (!v.ok()) {
    const auto& first = v.violations.front();
    throw std::invalid_argument(name + ": parameters give an invalid system at stage " + std::to_string(first.stage) +
                                ": " + first.rule + (first.detail.empty() ? "" : " (" + first.detail + ")"));
  }
}

}  // namespace detail

/// Builds a named system. Throws std::invalid_argument when the parameters
/// fall outside the family's constraints.
inline CantorSystem preset(const std::string& name, const PresetParams& params = {}) {
  detail::ParamReader in(name, params);
  CantorSystem sys;
  if (name == "middle_thirds") {
    sys = CantorSystem({}, TailRule::constant(Stage(Rational(1, 3), {Rational(0), Rational(2)})), "middle thirds");
  } else if (name == "example31") {
    const long n = in.integer("n");
    const Rational d = in.rational("d");
    if (n < 5) in.fail("n must be at least 5");
    if (d <= Rational(1) || d >= Rational(n - 2)) in.fail("d must satisfy 1 < d < n-2");
    sys = CantorSystem({}, TailRule::constant(Stage(Rational(1, n), {Rational(0), d, Rational(n - 1)})),
                       "example31 n=" + std::to_string(n) + " d=" + d.short_str());
  } else if (name == "homogeneous") {
    std::vector<Rational> betas = in.list("beta");
    std::vector<Rational> ms = in.list("m");
    if (betas.size() != ms.size() && betas.size() != 1 && ms.size() != 1)
      in.fail("beta and m lists must have equal length or length one");
    const std::size_t n = std::max(betas.size(), ms.size());
    std::vector<Stage> cycle;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& beta = betas[betas.size() == 1 ? 0 : j];
      const Rational& mr = ms[ms.size() == 1 ? 0 : j];
      if (!mr.is_integer() || mr < Rational(2)) in.fail("m must be an integer >= 2");
      if (beta.sign() <= 0 || beta >= Rational(1, 2)) in.fail("beta must lie in (0, 1/2)");
      if (beta * mr >= Rational(1)) in.fail("beta * m must be < 1");
      cycle.push_back(detail::homogeneous_stage(beta, mr.num().get_si()));
    }
    TailRule tail = cycle.size() == 1 ? TailRule::constant(cycle.front()) : TailRule::periodic(cycle);
    sys = CantorSystem({}, tail, "homogeneous");
  } else if (name == "harmonic") {
    const long K = in.integer("K", 100);
    if (K < 1) in.fail("K must be positive");
    std::vector<Stage> stages;
    stages.reserve(static_cast<std::size_t>(K));
    for (long j = 1; j <= K; ++j) stages.push_back(detail::extreme_stage(Rational(j, 2 * (j + 1))));
    sys = CantorSystem(std::move(stages), TailRule::finite(), "harmonic K=" + std::to_string(K));
    sys.set_declared_dimension({LogExpr(1), "declared_limit"});
  } else if (name == "pow_scaling") {
    const long q = in.integer("q", 2);
    const Rational alpha = in.rational("alpha", Rational(1, 2));
    const long K = in.integer("K", 20);
    if (q < 2) in.fail("q must be an integer >= 2");
    if (K < 1) in.fail("K must be positive");
    if (alpha.num() != 1 || alpha.den() < 2) in.fail("alpha must be 1/n for an integer n >= 2");
    const long n = alpha.den().get_si();
    std::vector<Stage> stages;
    for (long k = 1; k <= K; ++k) {
      BigInt mk;
      mpz_ui_pow_ui(mk.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(k));
      if (!mk.fits_ulong_p()) in.fail("q^K does not fit a machine word");
      const Rational beta = reciprocal(pow(Rational(q), k * n));
      const Rational step = ((Rational(1) - beta) / beta) / Rational(BigInt(mk - 1));
      stages.emplace_back(beta, DigitSet::progression(Rational(0), step, mk.get_ui()));
    }
    sys = CantorSystem(std::move(stages), TailRule::finite(),
                       "pow_scaling q=" + std::to_string(q) + " alpha=" + alpha.short_str() + " K=" + std::to_string(K));
    sys.set_declared_dimension({LogExpr(alpha), "declared_limit"});
  } else if (name == "example613") {
    const std::vector<Rational> betas = in.list("beta");
    const std::vector<Rational> xis = in.list("xi");
    const Rational tail_beta = in.rational("tail_beta", Rational(1, 5));
    const Rational tail_xi = in.rational("tail_xi", Rational(1));
    if (betas.size() != xis.size()) in.fail("beta and xi lists must have equal length");
    auto make = [&](const Rational& beta, const Rational& xi) {
      if (beta.sign() <= 0 || beta > Rational(1, 5)) in.fail("beta must lie in (0, 1/5]");
      const Rational top = (Rational(1) - beta) / beta;
      if (xi.sign() <= 0 || Rational(2) * (Rational(1) + xi) > top) in.fail("xi must satisfy 0 < 1+xi <= top-(1+xi)");
      return Stage(beta, {Rational(0), Rational(1) + xi, top});
    };
    std::vector<Stage> stages;
    for (std::size_t j = 0; j < betas.size(); ++j) stages.push_back(make(betas[j], xis[j]));
    sys = CantorSystem(std::move(stages), TailRule::constant(make(tail_beta, tail_xi)), "example613");
  } else if (name == "remark614a") {
    const long n = in.integer("n", 5);
    const long p = in.integer("p", 1);
    if (n < 4) in.fail("n must be at least 4");
    if (p < 0) in.fail("p must be nonnegative");
    // Two-digit tail fixes 2^t = n, so the extreme digit is 2^t - 1 = n - 1.
    const Rational beta(1, n);
    std::vector<Stage> stages(static_cast<std::size_t>(p),
                              Stage(beta, {Rational(0), Rational(n - 1, 2), Rational(n - 1)}));
    sys = CantorSystem(std::move(stages), TailRule::constant(Stage(beta, {Rational(0), Rational(n - 1)})),
                       "remark614a n=" + std::to_string(n) + " p=" + std::to_string(p));
  } else if (name == "remark614b") {
    sys = CantorSystem({Stage(Rational(1, 5), {Rational(0), Rational(9, 5), Rational(4)}),
                        Stage(Rational(1, 10), {Rational(0), Rational(2), Rational(9)})},
                       TailRule::constant(Stage(Rational(1, 5), {Rational(0), Rational(2), Rational(4)})),
                       "remark614b");
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  in.finish();
  detail::require_valid(sys, name);
  return sys;
}

}  // namespace cantorkit
