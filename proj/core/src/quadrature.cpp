#include "hetnet/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "hetnet/error.hpp"

namespace hetnet {

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod21(const Integrand& f, double a, double b) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kUflow = std::numeric_limits<double>::min();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::abs(resk);
  std::array<double, 10> fv1{};
  std::array<double, 10> fv2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kUflow / (50.0 * kEps)) {
    err = std::max(kEps * 50.0 * resabs, err);
  }
  return {a, b, value, err};
}

[[noreturn]] void fail(const char* what, double a, double b, double err) {
  std::ostringstream os;
  os.precision(6);
  os << what << " on [" << a << ", " << b << "], error estimate " << err;
  throw Error(ErrorCode::kQuadratureFailure, os.str());
}

}  // namespace

QuadratureSettings QuadratureSettings::tightened(double factor) const {
  QuadratureSettings q = *this;
  q.rel_tol /= factor;
  q.abs_tol /= factor;
  return q;
}

void validate(const QuadratureSettings& q) {
  if (!(q.rel_tol > 0.0) || !(q.abs_tol > 0.0) || !(q.truncation_tol > 0.0) ||
      q.max_subdivisions < 1) {
    throw Error(ErrorCode::kInvalidSettings,
                "quadrature tolerances must be > 0 and max_subdivisions >= 1");
  }
}

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureSettings& q) {
  if (a == b) return {};
  std::size_t evals = 0;
  auto counted = [&](double x) {
    ++evals;
    return f(x);
  };
  const Integrand g = counted;

  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod21(g, a, b);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);

  // Relative tolerances tighter than ~50 eps cannot be met by the roundoff
  // floor of the error estimate.
  const double rel = std::max(q.rel_tol, 50.0 * std::numeric_limits<double>::epsilon());
  std::size_t intervals = 1;
  while (total_err > std::max(q.abs_tol, rel * std::abs(total))) {
    if (!std::isfinite(total) || !std::isfinite(total_err)) {
      fail("non-finite integrand", a, b, total_err);
    }
    if (intervals >= q.max_subdivisions) {
      fail("subdivision budget exhausted", a, b, total_err);
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      fail("interval too small to bisect", worst.a, worst.b, total_err);
    }
    Segment left = gauss_kronrod21(g, worst.a, mid);
    Segment right = gauss_kronrod21(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }

  // Resum to drop accumulated cancellation from the running updates.
  double sum = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  if (!std::isfinite(sum)) fail("non-finite integrand", a, b, err);
  return {sum, err, evals};
}

QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureSettings& q,
                                         double scale, double lower) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidArgument, "semi-infinite integral needs scale > 0");
  }
  double running_max = 0.0;
  auto tracked = [&](double x) {
    const double v = f(x);
    if (std::abs(v) > running_max) running_max = std::abs(v);
    return v;
  };
  const Integrand g = tracked;

  constexpr int kMaxPanels = 256;
  QuadratureResult out;
  double a = lower;
  double width = scale;
  QuadratureSettings panel_q = q;
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    const double b = a + width;
    panel_q.abs_tol = q.abs_tol * std::ldexp(1.0, -(panel + 1));
    // A panel whose total contribution is below rel_tol of what has been
    // accumulated only needs that much absolute accuracy.
    panel_q.abs_tol = std::max(panel_q.abs_tol, 0.5 * q.rel_tol * std::abs(out.value));
    const QuadratureResult r = integrate(g, a, b, panel_q);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    const double edge = std::abs(f(b));
    ++out.evaluations;
    if (!std::isfinite(edge)) fail("non-finite integrand", a, b, out.error);
    if (edge <= q.truncation_tol * running_max) return out;
    a = b;
    width *= 2.0;
  }
  fail("tail did not decay", lower, a, out.error);
}

}  // namespace hetnet
