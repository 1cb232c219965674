#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccmnet/errors.hpp"

namespace ccmnet {

// Selection exponent: a finite nonnegative value or the explicit infinite
// variant (never a large-float sentinel).
class Exponent {
 public:
  Exponent() = default;

  static Exponent finite(double v) {
    if (!(v >= 0.0) || std::isinf(v))
      throw std::invalid_argument("exponent must be finite and >= 0");
    Exponent e;
    e.value_ = v;
    return e;
  }

  static Exponent infinity() {
    Exponent e;
    e.infinite_ = true;
    return e;
  }

  // Accepts a nonnegative number or the literal token "inf".
  static Exponent parse(const std::string& token);

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && value_ == 0.0; }

  double value() const {
    if (infinite_) throw std::logic_error("value() on infinite exponent");
    return value_;
  }

  std::string str() const;

  bool operator==(const Exponent&) const = default;

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

enum class InitialWealthMode { Equal, UniformRandom };

struct ModelParams {
  int n_traders = 0;
  Exponent alpha;
  Exponent beta;
  InitialWealthMode initial_wealth_mode = InitialWealthMode::Equal;
  double mean_initial_wealth = 1.0;

  void validate() const {
    if (n_traders < 2) throw std::invalid_argument("n_traders must be >= 2");
    if (!(mean_initial_wealth > 0.0))
      throw std::invalid_argument("mean_initial_wealth must be > 0");
  }
};

// Quenched saving propensities for one disorder realization.
struct SavingProfile {
  std::vector<double> lambdas;

  int size() const { return static_cast<int>(lambdas.size()); }
};

// Wealth vector plus the trade clock of one realization.
struct WealthState {
  std::vector<double> wealth;
  std::uint64_t trade_count = 0;

  int size() const { return static_cast<int>(wealth.size()); }

  double total() const {
    double s = 0.0;
    for (double x : wealth) s += x;
    return s;
  }

  double sum_sq() const {
    double s = 0.0;
    for (double x : wealth) s += x * x;
    return s;
  }
};

struct TradeEvent {
  int i = 0;
  int j = 0;
  double invested = 0.0;  // delta_ij, money units
  double epsilon = 0.0;   // division fraction in [0,1)
};

// Stationarity detector configuration: block statistics of the sum of
// squared wealths sampled every `sample_stride` trades.
struct QssConfig {
  int window = 100;
  double rel_tol = 1e-3;
  std::uint64_t sample_stride = 0;  // 0 -> 10 * N at run time
  std::uint64_t max_trades = 0;

  void validate() const {
    if (window < 2) throw std::invalid_argument("qss window must be >= 2");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("qss rel_tol must be > 0");
  }
};

}  // namespace ccmnet
