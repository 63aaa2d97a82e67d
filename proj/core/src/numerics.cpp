#include "plap/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <utility>

#include "plap/error.hpp"

namespace plap::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxPanels = 20000;

// Gauss-Kronrod 7/15 abscissae on [-1, 1] (non-negative half) and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// A piece of the original interval expressed in a reference variable
// s in [0, 1]. The offset from the anchored end is h * s^m.
struct Segment {
  bool anchored_at_lo = true;
  double h = 0.0;
  double m = 1.0;
};

struct Panel {
  int segment = 0;
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  int depth = 0;

  bool operator<(const Panel& other) const { return error < other.error; }
};

class Engine {
 public:
  Engine(const OffsetIntegrand& f, Interval interval, std::vector<Segment> segments)
      : f_(f), interval_(interval), segments_(std::move(segments)) {}

  double mapped(int seg, double s) {
    const Segment& g = segments_[static_cast<std::size_t>(seg)];
    const double width = interval_.width();
    const double off = g.m == 1.0 ? g.h * s : g.h * std::pow(s, g.m);
    const double jac = g.m == 1.0 ? g.h : g.h * g.m * std::pow(s, g.m - 1.0);
    double x, from_lo, to_hi;
    if (g.anchored_at_lo) {
      from_lo = off;
      to_hi = width - off;
      x = interval_.lo + off;
    } else {
      to_hi = off;
      from_lo = width - off;
      x = interval_.hi - off;
    }
    ++evaluations_;
    const double v = f_(x, from_lo, to_hi) * jac;
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrand is not finite at x=" << x;
      throw Error(ErrorKind::NonIntegrable, msg.str());
    }
    return v;
  }

  Panel evaluate(int seg, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = mapped(seg, center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
      const double dx = half * kXgk[static_cast<std::size_t>(j)];
      f1[static_cast<std::size_t>(j)] = mapped(seg, center - dx);
      f2[static_cast<std::size_t>(j)] = mapped(seg, center + dx);
      const double sum = f1[static_cast<std::size_t>(j)] + f2[static_cast<std::size_t>(j)];
      resk += kWgk[static_cast<std::size_t>(j)] * sum;
      resabs += kWgk[static_cast<std::size_t>(j)] *
                (std::abs(f1[static_cast<std::size_t>(j)]) + std::abs(f2[static_cast<std::size_t>(j)]));
      if (j % 2 == 1) resg += kWg[static_cast<std::size_t>(j / 2)] * sum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (std::size_t j = 0; j < 7; ++j) {
      resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
    }
    resk *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    return Panel{seg, a, b, resk, err, depth};
  }

  QuadResult run(const QuadRule& rule) {
    std::priority_queue<Panel> queue;
    double total = 0.0;
    double total_err = 0.0;
    for (int s = 0; s < static_cast<int>(segments_.size()); ++s) {
      for (int k = 0; k < 2; ++k) {
        Panel p = evaluate(s, 0.5 * k, 0.5 * (k + 1), 1);
        total += p.value;
        total_err += p.error;
        queue.push(p);
      }
    }
    int panels = static_cast<int>(queue.size());
    while (total_err > std::max(rule.abs_tol, rule.rel_tol * std::abs(total))) {
      Panel worst = queue.top();
      queue.pop();
      // Pure roundoff panels cannot be improved further.
      if (worst.error <= 50.0 * kEps * std::abs(worst.value) && worst.depth > 8) {
        if (queue.empty() || queue.top().error <= 50.0 * kEps * std::abs(queue.top().value)) {
          total_err = 0.0;
          queue.push(worst);
          break;
        }
      }
      if (worst.depth >= rule.max_depth || panels >= kMaxPanels) {
        std::ostringstream msg;
        msg << "tolerance " << std::max(rule.abs_tol, rule.rel_tol * std::abs(total))
            << " not met on [" << interval_.lo << ", " << interval_.hi << "], error estimate " << total_err;
        throw Error(ErrorKind::NonConvergent, msg.str());
      }
      const double mid = 0.5 * (worst.a + worst.b);
      Panel left = evaluate(worst.segment, worst.a, mid, worst.depth + 1);
      Panel right = evaluate(worst.segment, mid, worst.b, worst.depth + 1);
      total += left.value + right.value - worst.value;
      total_err += left.error + right.error - worst.error;
      queue.push(left);
      queue.push(right);
      ++panels;
    }
    // Re-sum to shed accumulated cancellation in the running totals.
    double value = 0.0;
    double err = 0.0;
    while (!queue.empty()) {
      value += queue.top().value;
      err += queue.top().error;
      queue.pop();
    }
    return QuadResult{value, err, evaluations_};
  }

 private:
  const OffsetIntegrand& f_;
  Interval interval_;
  std::vector<Segment> segments_;
  int evaluations_ = 0;
};

double substitution_power(double order) {
  if (order >= 1.0) {
    std::ostringstream msg;
    msg << "endpoint blow-up of order " << order << " >= 1";
    throw Error(ErrorKind::NonIntegrable, msg.str());
  }
  return order > 0.0 ? 1.0 / (1.0 - order) : 1.0;
}

}  // namespace

void QuadRule::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_depth < 1) {
    throw Error(ErrorKind::InvalidArgument, "QuadRule requires abs_tol > 0, rel_tol > 0, max_depth >= 1");
  }
}

QuadResult integrate_with_error(const OffsetIntegrand& f, Interval interval, const QuadRule& rule,
                                EndpointOrders orders) {
  rule.validate();
  if (!(interval.hi >= interval.lo)) {
    throw Error(ErrorKind::InvalidArgument, "integration interval must satisfy lo <= hi");
  }
  const double m_lo = substitution_power(orders.lo);
  const double m_hi = substitution_power(orders.hi);
  if (interval.width() == 0.0) return {};

  std::vector<Segment> segments;
  const double width = interval.width();
  if (rule.kind == QuadKind::SingularEndpoint && (m_lo != 1.0 || m_hi != 1.0)) {
    segments.push_back(Segment{true, 0.5 * width, m_lo});
    segments.push_back(Segment{false, 0.5 * width, m_hi});
  } else {
    segments.push_back(Segment{true, width, 1.0});
  }
  Engine engine(f, interval, std::move(segments));
  return engine.run(rule);
}

double integrate(const OffsetIntegrand& f, Interval interval, const QuadRule& rule, EndpointOrders orders) {
  return integrate_with_error(f, interval, rule, orders).value;
}

double integrate(const Integrand& f, Interval interval, const QuadRule& rule, EndpointOrders orders) {
  const OffsetIntegrand wrapped = [&f](double x, double, double) { return f(x); };
  return integrate_with_error(wrapped, interval, rule, orders).value;
}

RootBracket::RootBracket(double lo, double hi, double f_lo, double f_hi)
    : lo_(lo), hi_(hi), f_lo_(f_lo), f_hi_(f_hi) {
  if (!(lo < hi) || !(f_lo * f_hi <= 0.0) || std::isnan(f_lo) || std::isnan(f_hi)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]: f(lo)=" << f_lo << ", f(hi)=" << f_hi;
    throw Error(ErrorKind::InvalidBracket, msg.str());
  }
}

RootBracket RootBracket::around(const Integrand& f, double lo, double hi) {
  return RootBracket(lo, hi, f(lo), f(hi));
}

double find_root(const Integrand& f, const RootBracket& bracket, double tol, int max_iter) {
  double a = bracket.lo();
  double b = bracket.hi();
  double fa = bracket.f_lo();
  double fb = bracket.f_hi();
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= tol || std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  throw Error(ErrorKind::NonConvergent, "find_root exceeded the iteration limit");
}

double pow_difference(double y, double d, double r) {
  return std::pow(y, r) * std::expm1(r * std::log1p(d / y));
}

MonotoneArc::MonotoneArc(OffsetIntegrand density, Interval interval, EndpointOrders orders, QuadRule rule)
    : density_(std::move(density)), interval_(interval), orders_(orders), rule_(rule) {
  duration_ = integrate(density_, interval_, rule_, orders_);
}

double MonotoneArc::elapsed(double x) const {
  if (x <= interval_.lo) return 0.0;
  if (x >= interval_.hi) return duration_;
  const double from_lo = x - interval_.lo;
  const double to_hi = interval_.hi - x;
  if (from_lo <= to_hi) {
    // Sub-interval [lo, x]: distances to the original hi are shifted by to_hi.
    const OffsetIntegrand piece = [&](double xx, double fl, double th) { return density_(xx, fl, th + to_hi); };
    return integrate(piece, Interval{interval_.lo, x}, rule_, EndpointOrders{orders_.lo, 0.0});
  }
  const OffsetIntegrand piece = [&](double xx, double fl, double th) { return density_(xx, fl + from_lo, th); };
  return duration_ - integrate(piece, Interval{x, interval_.hi}, rule_, EndpointOrders{0.0, orders_.hi});
}

double MonotoneArc::position(double r) const {
  if (r <= 0.0) return interval_.lo;
  if (r >= duration_) return interval_.hi;
  const Integrand residual = [&](double x) { return elapsed(x) - r; };
  const RootBracket bracket(interval_.lo, interval_.hi, -r, duration_ - r);
  const double xtol = 4.0 * kEps * std::max(std::abs(interval_.lo), std::abs(interval_.hi));
  // Brent's |f| test is in time units; keep it well below the quadrature accuracy.
  return find_root(residual, bracket, std::max(xtol, 1e-300), 400);
}

std::vector<double> MonotoneArc::positions(std::span<const double> times) const {
  std::vector<double> out;
  out.reserve(times.size());
  for (double r : times) out.push_back(position(r));
  return out;
}

}  // namespace plap::numerics
