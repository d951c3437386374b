#pragma once

// Special functions shared by the channel and geometry code. Every routine
// that can underflow has a log-domain twin.

namespace latbound::special {

/// Regularized incomplete gamma pair, with logs carried separately so that
/// tails far below DBL_MIN stay representable.
struct IncompleteGamma {
  double p;
  double q;
  double log_p;
  double log_q;
};

/// P(a, x) and Q(a, x) for a > 0, x >= 0. Series below x = a + 1, Lentz
/// continued fraction above.
IncompleteGamma incomplete_gamma(double a, double x);

double gamma_p(double a, double x);
double gamma_q(double a, double x);
double log_gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b), 0 <= x <= 1.
double incomplete_beta(double a, double b, double x);

/// Same, with 1 - x supplied by the caller when it is known more accurately
/// than the rounded difference.
double incomplete_beta(double a, double b, double x, double one_minus_x);

/// Standard normal upper tail Q(x) = Pr(N(0,1) > x).
double normal_q(double x);

/// Compensated (Neumaier) accumulator.
class NeumaierSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace latbound::special
