#include "latbound/special.hpp"

#include <cmath>
#include <limits>

#include "latbound/error.hpp"

namespace latbound::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

// log of the sum in P(a,x) = x^a e^-x / Gamma(a+1) * sum_k x^k / (a+1)...(a+k)
double log_series_p(double a, double x) {
  double term = 1.0;
  double sum = 1.0;
  double ap = a;
  for (int k = 0; k < kMaxIterations; ++k) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return a * std::log(x) - x - std::lgamma(a + 1.0) + std::log(sum);
    }
  }
  throw Error(ErrorCode::NotConverged, "incomplete gamma series did not converge");
}

// Modified Lentz evaluation of the continued fraction for Q(a,x).
double log_continued_fraction_q(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return a * std::log(x) - x - std::lgamma(a) + std::log(h);
    }
  }
  throw Error(ErrorCode::NotConverged,
              "incomplete gamma continued fraction did not converge");
}

double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return h;
  }
  throw Error(ErrorCode::NotConverged,
              "incomplete beta continued fraction did not converge");
}

}  // namespace

IncompleteGamma incomplete_gamma(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "incomplete_gamma requires a > 0 and x >= 0");
  }
  if (x == 0.0) {
    return {0.0, 1.0, -std::numeric_limits<double>::infinity(), 0.0};
  }
  if (std::isinf(x)) {
    return {1.0, 0.0, 0.0, -std::numeric_limits<double>::infinity()};
  }
  IncompleteGamma out{};
  if (x < a + 1.0) {
    out.log_p = log_series_p(a, x);
    out.p = std::exp(out.log_p);
    out.q = -std::expm1(out.log_p);
    out.log_q = std::log1p(-out.p);
  } else {
    out.log_q = log_continued_fraction_q(a, x);
    out.q = std::exp(out.log_q);
    out.p = -std::expm1(out.log_q);
    out.log_p = std::log1p(-out.q);
  }
  return out;
}

double gamma_p(double a, double x) { return incomplete_gamma(a, x).p; }
double gamma_q(double a, double x) { return incomplete_gamma(a, x).q; }
double log_gamma_q(double a, double x) { return incomplete_gamma(a, x).log_q; }

double incomplete_beta(double a, double b, double x) {
  return incomplete_beta(a, b, x, 1.0 - x);
}

double incomplete_beta(double a, double b, double x, double one_minus_x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0) ||
      !(one_minus_x >= 0.0 && one_minus_x <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "incomplete_beta requires a, b > 0 and 0 <= x <= 1");
  }
  if (x == 0.0) return 0.0;
  if (one_minus_x == 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log(one_minus_x);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 -
         std::exp(log_front) * beta_continued_fraction(b, a, one_minus_x) / b;
}

double normal_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

void NeumaierSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace latbound::special
