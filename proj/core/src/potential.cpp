#include "halfline/potential.hpp"

#include <algorithm>
#include <limits>

#include "halfline/error.hpp"

namespace halfline {

namespace {

Regime infer_regime(std::initializer_list<const std::vector<Scalar>*> words,
                    std::optional<Regime> declared) {
  if (declared) return *declared;
  Regime r = Regime::integer;
  for (const auto* w : words) {
    for (const auto& s : *w) r = join(r, s.regime());
  }
  return r;
}

std::vector<Scalar> convert_all(std::vector<Scalar> w, Regime r) {
  for (auto& s : w) s = s.to_regime(r);
  return w;
}

void require_nonempty(const std::vector<Scalar>& w, const char* what) {
  if (w.empty()) throw InvalidInput(std::string(what) + " must be non-empty");
}

std::vector<Scalar> reversed(std::vector<Scalar> w) {
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

Potential Potential::periodic(std::vector<Scalar> word, Index phase,
                              std::optional<Regime> regime) {
  require_nonempty(word, "periodic word");
  Regime r = infer_regime({&word}, regime);
  return Potential(Periodic{convert_all(std::move(word), r), phase}, r);
}

Potential Potential::periodic_integers(const std::vector<long>& word, Index phase) {
  std::vector<Scalar> w;
  w.reserve(word.size());
  for (long x : word) w.emplace_back(x);
  return periodic(std::move(w), phase, Regime::integer);
}

Potential Potential::eventually_periodic(std::vector<Scalar> left_word, std::vector<Scalar> core,
                                         Index core_start, std::vector<Scalar> right_word,
                                         std::optional<Regime> regime) {
  require_nonempty(left_word, "left word");
  require_nonempty(right_word, "right word");
  Regime r = infer_regime({&left_word, &core, &right_word}, regime);
  return Potential(EventuallyPeriodic{convert_all(std::move(left_word), r),
                                      convert_all(std::move(core), r), core_start,
                                      convert_all(std::move(right_word), r)},
                   r);
}

Potential Potential::sturmian(Index offset, bool reflected) {
  return Potential(Sturmian{offset, reflected}, Regime::integer);
}

Potential Potential::explicit_window(std::vector<Scalar> window, Index start, Scalar outside,
                                     std::optional<Regime> regime) {
  std::vector<Scalar> out_vec{outside};
  Regime r = infer_regime({&window, &out_vec}, regime);
  return Potential(Explicit{convert_all(std::move(window), r), start, outside.to_regime(r)}, r);
}

Potential Potential::random(std::uint64_t seed, std::vector<Scalar> values,
                            std::optional<Index> left_length, std::optional<Index> right_length,
                            std::optional<Scalar> outside, std::optional<Regime> regime) {
  require_nonempty(values, "random value set");
  if ((left_length && *left_length < 0) || (right_length && *right_length < 0)) {
    throw InvalidInput("random side lengths must be non-negative");
  }
  Scalar out = outside.value_or(values.front());
  std::vector<Scalar> out_vec{out};
  Regime r = infer_regime({&values, &out_vec}, regime);
  return Potential(Random{seed, convert_all(std::move(values), r), left_length, right_length,
                          out.to_regime(r), 0, false},
                   r);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

mpz_class floor_golden_multiple(Index n) {
  if (n == 0) return 0;
  mpz_class m = n < 0 ? -mpz_class(static_cast<long>(n)) : mpz_class(static_cast<long>(n));
  mpz_class root;
  mpz_class five_m2 = 5 * m * m;
  mpz_sqrt(root.get_mpz_t(), five_m2.get_mpz_t());
  mpz_class diff = root - m;
  mpz_class fl;
  mpz_fdiv_q_2exp(fl.get_mpz_t(), diff.get_mpz_t(), 1);
  // m*a is irrational for m != 0, so floor(-m a) = -floor(m a) - 1.
  if (n < 0) return -fl - 1;
  return fl;
}

int fibonacci_value(Index n) {
  mpz_class d = floor_golden_multiple(n + 1) - floor_golden_multiple(n);
  return static_cast<int>(d.get_si());
}

Scalar Potential::eval(Index n) const {
  return std::visit(
      [n](const auto& k) -> Scalar {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Periodic>) {
          Index p = static_cast<Index>(k.word.size());
          return k.word[static_cast<std::size_t>(floor_mod(n + k.phase, p))];
        } else if constexpr (std::is_same_v<K, EventuallyPeriodic>) {
          if (n < k.core_start) {
            Index q = static_cast<Index>(k.left_word.size());
            return k.left_word[static_cast<std::size_t>(floor_mod(n - k.core_start, q))];
          }
          if (n >= k.core_end()) {
            Index p = static_cast<Index>(k.right_word.size());
            return k.right_word[static_cast<std::size_t>(floor_mod(n - k.core_end(), p))];
          }
          return k.core[static_cast<std::size_t>(n - k.core_start)];
        } else if constexpr (std::is_same_v<K, Sturmian>) {
          Index m = (k.reflected ? -n : n) + k.offset;
          return Scalar(fibonacci_value(m));
        } else if constexpr (std::is_same_v<K, Explicit>) {
          Index i = n - k.start;
          if (i >= 0 && i < static_cast<Index>(k.window.size())) {
            return k.window[static_cast<std::size_t>(i)];
          }
          return k.outside;
        } else {
          Index m = (k.reflected ? -n : n) + k.offset;
          if ((k.left_length && m < -*k.left_length) || (k.right_length && m >= *k.right_length)) {
            return k.outside;
          }
          std::uint64_t h = splitmix64(k.seed ^ splitmix64(static_cast<std::uint64_t>(m)));
          return k.values[static_cast<std::size_t>(h % k.values.size())];
        }
      },
      kind_);
}

std::string Potential::kind_name() const {
  static const char* kNames[] = {"periodic", "eventually_periodic", "sturmian", "explicit",
                                 "random"};
  return kNames[kind_.index()];
}

Index Potential::period() const {
  if (const auto* p = std::get_if<Periodic>(&kind_)) return static_cast<Index>(p->word.size());
  throw InvalidInput("potential of kind '" + kind_name() + "' has no period");
}

Potential::EventuallyPeriodic Potential::as_eventually_periodic() const {
  if (const auto* e = std::get_if<EventuallyPeriodic>(&kind_)) return *e;
  if (const auto* p = std::get_if<Periodic>(&kind_)) {
    // Both halves are the word rotated so that index 0 reads word[phase].
    auto w = rotate_word(p->word, p->phase);
    return EventuallyPeriodic{w, {}, 0, w};
  }
  throw InvalidInput("potential of kind '" + kind_name() + "' is not eventually periodic");
}

std::pair<double, double> Potential::value_range() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto take = [&](const Scalar& s) {
    double x = s.to_double();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  };
  auto take_all = [&](const std::vector<Scalar>& w) {
    for (const auto& s : w) take(s);
  };
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Periodic>) {
          take_all(k.word);
        } else if constexpr (std::is_same_v<K, EventuallyPeriodic>) {
          take_all(k.left_word);
          take_all(k.core);
          take_all(k.right_word);
        } else if constexpr (std::is_same_v<K, Sturmian>) {
          take(Scalar(0));
          take(Scalar(1));
        } else if constexpr (std::is_same_v<K, Explicit>) {
          take_all(k.window);
          take(k.outside);
        } else {
          take_all(k.values);
          if (k.left_length || k.right_length) take(k.outside);
        }
      },
      kind_);
  return {lo, hi};
}

Potential reflect(const Potential& p) {
  return std::visit(
      [&p](const auto& k) -> Potential {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Potential::Periodic>) {
          return Potential::periodic(reversed(k.word), -1 - k.phase, p.regime());
        } else if constexpr (std::is_same_v<K, Potential::EventuallyPeriodic>) {
          return Potential::eventually_periodic(reversed(k.right_word), reversed(k.core),
                                                1 - k.core_end(), reversed(k.left_word),
                                                p.regime());
        } else if constexpr (std::is_same_v<K, Potential::Sturmian>) {
          return Potential::sturmian(k.offset, !k.reflected);
        } else if constexpr (std::is_same_v<K, Potential::Explicit>) {
          Index len = static_cast<Index>(k.window.size());
          return Potential::explicit_window(reversed(k.window), -(k.start + len - 1), k.outside,
                                            p.regime());
        } else {
          Potential::Random r = k;
          r.reflected = !k.reflected;
          return Potential(std::move(r), p.regime());
        }
      },
      p.kind());
}

Potential shift(const Potential& p, Index by) {
  return std::visit(
      [&p, by](const auto& k) -> Potential {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Potential::Periodic>) {
          return Potential::periodic(k.word, k.phase + by, p.regime());
        } else if constexpr (std::is_same_v<K, Potential::EventuallyPeriodic>) {
          return Potential::eventually_periodic(k.left_word, k.core, k.core_start - by,
                                                k.right_word, p.regime());
        } else if constexpr (std::is_same_v<K, Potential::Sturmian>) {
          return Potential::sturmian(k.offset + (k.reflected ? -by : by), k.reflected);
        } else if constexpr (std::is_same_v<K, Potential::Explicit>) {
          return Potential::explicit_window(k.window, k.start - by, k.outside, p.regime());
        } else {
          Potential::Random r = k;
          r.offset = k.offset + (k.reflected ? -by : by);
          return Potential(std::move(r), p.regime());
        }
      },
      p.kind());
}

std::vector<Scalar> primitive_word(const std::vector<Scalar>& word) {
  std::size_t p = word.size();
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < p && ok; ++i) ok = word[i] == word[i - d];
    if (ok) return std::vector<Scalar>(word.begin(), word.begin() + static_cast<long>(d));
  }
  return word;
}

std::vector<Scalar> rotate_word(const std::vector<Scalar>& word, Index k) {
  Index p = static_cast<Index>(word.size());
  std::vector<Scalar> out;
  out.reserve(word.size());
  for (Index i = 0; i < p; ++i) out.push_back(word[static_cast<std::size_t>(floor_mod(i + k, p))]);
  return out;
}

}  // namespace halfline
