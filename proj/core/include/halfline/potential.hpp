#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "halfline/scalar.hpp"

namespace halfline {

/// A two-sided potential v: Z -> R given by a finite description.
///
/// Every kind evaluates totally on Z and is immutable after construction, so
/// concurrent evaluation is safe. Values are stored in the declared regime;
/// an integer potential never rounds.
class Potential {
 public:
  /// v(n) = word[(n + phase) mod p].
  struct Periodic {
    std::vector<Scalar> word;
    Index phase = 0;
  };

  /// core occupies [core_start, core_start + |core|). Right of it the right
  /// word repeats starting at the core end; left of it the left word repeats
  /// so that its last letter sits at core_start - 1.
  struct EventuallyPeriodic {
    std::vector<Scalar> left_word;
    std::vector<Scalar> core;
    Index core_start = 0;
    std::vector<Scalar> right_word;

    Index core_end() const { return core_start + static_cast<Index>(core.size()); }
  };

  /// Fibonacci coding v(n) = chi_[1-a,1)(m a mod 1) with a = (sqrt5 - 1)/2 and
  /// m = (reflected ? -n : n) + offset.
  struct Sturmian {
    Index offset = 0;
    bool reflected = false;
  };

  /// window[k] at index start + k; `outside` everywhere else.
  struct Explicit {
    std::vector<Scalar> window;
    Index start = 0;
    Scalar outside;
  };

  /// Random letters from `values`, keyed on (seed, m) with m = (reflected ?
  /// -n : n) + offset. Inside m in [-left_length, right_length) when lengths
  /// are given; `outside` beyond them.
  struct Random {
    std::uint64_t seed = 0;
    std::vector<Scalar> values;
    std::optional<Index> left_length;
    std::optional<Index> right_length;
    Scalar outside;
    Index offset = 0;
    bool reflected = false;
  };

  using Kind = std::variant<Periodic, EventuallyPeriodic, Sturmian, Explicit, Random>;

  static Potential periodic(std::vector<Scalar> word, Index phase = 0,
                            std::optional<Regime> regime = std::nullopt);
  static Potential eventually_periodic(std::vector<Scalar> left_word, std::vector<Scalar> core,
                                       Index core_start, std::vector<Scalar> right_word,
                                       std::optional<Regime> regime = std::nullopt);
  static Potential sturmian(Index offset = 0, bool reflected = false);
  static Potential explicit_window(std::vector<Scalar> window, Index start, Scalar outside = 0,
                                   std::optional<Regime> regime = std::nullopt);
  static Potential random(std::uint64_t seed, std::vector<Scalar> values,
                          std::optional<Index> left_length = std::nullopt,
                          std::optional<Index> right_length = std::nullopt,
                          std::optional<Scalar> outside = std::nullopt,
                          std::optional<Regime> regime = std::nullopt);

  /// Convenience: periodic potential from integers.
  static Potential periodic_integers(const std::vector<long>& word, Index phase = 0);

  Scalar operator()(Index n) const { return eval(n); }
  Scalar eval(Index n) const;
  double eval_double(Index n) const { return eval(n).to_double(); }

  Regime regime() const { return regime_; }
  const Kind& kind() const { return kind_; }
  std::string kind_name() const;

  bool is_periodic() const { return std::holds_alternative<Periodic>(kind_); }
  bool is_eventually_periodic() const {
    return is_periodic() || std::holds_alternative<EventuallyPeriodic>(kind_);
  }
  /// Real exact regimes (integer, rational).
  bool is_exact_real() const {
    return regime_ == Regime::integer || regime_ == Regime::rational;
  }

  /// Period of a periodic potential (word length, not reduced).
  Index period() const;

  /// Periodic potentials rewritten as eventually periodic with an empty core
  /// at index 0. Throws InvalidInput for other kinds.
  EventuallyPeriodic as_eventually_periodic() const;

  /// Bounds [min v, max v] over all of Z (real regimes only).
  std::pair<double, double> value_range() const;

 private:
  friend Potential reflect(const Potential& p);
  friend Potential shift(const Potential& p, Index k);

  Potential(Kind kind, Regime regime) : kind_(std::move(kind)), regime_(regime) {}

  Kind kind_;
  Regime regime_;
};

/// eval(reflect(p), n) == eval(p, -n).
Potential reflect(const Potential& p);

/// eval(shift(p, k), n) == eval(p, n + k).
Potential shift(const Potential& p, Index k);

/// chi_[1-a,1)(n a mod 1) for the golden ratio a, in exact integer arithmetic:
/// floor((n+1)a) - floor(n a) with floor(n a) from an integer square root.
int fibonacci_value(Index n);

/// floor(n a) for a = (sqrt5 - 1)/2, exact for all 64-bit n.
mpz_class floor_golden_multiple(Index n);

/// Stateless 64-bit mixer used by random potentials.
std::uint64_t splitmix64(std::uint64_t x);

/// Shortest word w with the same periodic extension (w is a power of it).
std::vector<Scalar> primitive_word(const std::vector<Scalar>& word);

/// Cyclic rotation: result[i] = word[(i + k) mod p].
std::vector<Scalar> rotate_word(const std::vector<Scalar>& word, Index k);

/// Floor modulus with a non-negative result.
inline Index floor_mod(Index a, Index m) {
  Index r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace halfline
