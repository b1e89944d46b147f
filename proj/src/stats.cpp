#include "cutforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace cutforge {

std::string TestReport::to_json() const {
  nlohmann::json j;
  j["test"] = test;
  j["stat"] = stat;
  j["p"] = p;
  j["n"] = n;
  if (m > 0) j["m"] = m;
  j["verdict"] = verdict ? "pass" : "fail";
  j["alpha"] = alpha;
  j["seed"] = seed;
  j["notes"] = notes;
  return j.dump();
}

double ref_cdf_value(RefCdf which, double x, double rate) {
  if (x <= 0.0) return 0.0;
  switch (which) {
    case RefCdf::rayleigh:
      return 1.0 - std::exp(-0.5 * x * x);
    case RefCdf::uniform01:
      return x >= 1.0 ? 1.0 : x;
    case RefCdf::exponential:
      return 1.0 - std::exp(-rate * x);
    case RefCdf::sbml_half:
      // law of sqrt(2) * Rayleigh
      return 1.0 - std::exp(-0.25 * x * x);
  }
  return 0.0;
}

double kolmogorov_q(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-14) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_statistic(std::vector<double> xs,
                    const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double ks_p_value(double d, double n_eff) {
  // Stephens' small-sample adjustment of the asymptotic distribution
  const double lambda = (std::sqrt(n_eff) + 0.12 + 0.11 / std::sqrt(n_eff)) * d;
  return kolmogorov_q(lambda);
}

}  // namespace

TestReport ks_one_sample(std::span<const double> samples, RefCdf cdf,
                         double rate, double alpha) {
  return ks_one_sample(
      samples, [cdf, rate](double x) { return ref_cdf_value(cdf, x, rate); },
      alpha);
}

TestReport ks_one_sample(std::span<const double> samples,
                         const std::function<double(double)>& cdf,
                         double alpha) {
  if (samples.size() < 10) throw std::invalid_argument("need n >= 10");
  TestReport r;
  r.test = "ks_one_sample";
  r.n = samples.size();
  r.alpha = alpha;
  r.stat = ks_statistic({samples.begin(), samples.end()}, cdf);
  r.p = ks_p_value(r.stat, static_cast<double>(r.n));
  r.verdict = r.p > alpha;
  return r;
}

TestReport ks_two_sample(std::span<const double> a, std::span<const double> b,
                         double alpha) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
  std::vector<double> xs(a.begin(), a.end()), ys(b.begin(), b.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    const double x = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] <= x) ++i;
    while (j < ys.size() && ys[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  TestReport r;
  r.test = "ks_two_sample";
  r.n = xs.size();
  r.m = ys.size();
  r.alpha = alpha;
  r.stat = d;
  r.p = ks_p_value(d, na * nb / (na + nb));
  r.verdict = r.p > alpha;
  return r;
}

double mean(std::span<const double> xs) {
  double s = 0.0, c = 0.0;
  for (double x : xs) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("empty sample");
  const std::size_t k = xs.size() / 2;
  std::nth_element(xs.begin(), xs.begin() + k, xs.end());
  double hi = xs[k];
  if (xs.size() % 2 == 1) return hi;
  std::nth_element(xs.begin(), xs.begin() + k - 1, xs.begin() + k);
  return 0.5 * (hi + xs[k - 1]);
}

double moment_z(std::span<const double> samples, double p, double expected) {
  std::vector<double> pow_xs(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    pow_xs[i] = p == 1.0 ? samples[i] : std::pow(samples[i], p);
  const double m = mean(pow_xs);
  const double se =
      std::sqrt(variance(pow_xs) / static_cast<double>(samples.size()));
  if (se == 0.0) return m == expected ? 0.0 : INFINITY;
  return (m - expected) / se;
}

TestReport moment_summary(std::span<const double> samples,
                          std::span<const MomentTarget> targets, double z_max) {
  TestReport r;
  r.test = "moment_summary";
  r.n = samples.size();
  r.alpha = 0.01;
  double worst = 0.0;
  std::string notes;
  for (const auto& t : targets) {
    const double z = moment_z(samples, t.p, t.expected);
    worst = std::max(worst, std::fabs(z));
    notes += "p=" + std::to_string(t.p) + " z=" + std::to_string(z) + " (" +
             t.source + "); ";
  }
  r.stat = worst;
  r.p = worst;  // reported as max |z|
  r.notes = notes;
  r.verdict = worst < z_max;
  return r;
}

namespace {

double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

TestReport chi_square_gof(std::span<const std::uint64_t> counts,
                          std::span<const double> probs, double alpha) {
  if (counts.size() != probs.size() || counts.empty())
    throw std::invalid_argument("counts/probs mismatch");
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  double stat = 0.0;
  int dof = -1;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = total * probs[i];
    if (e <= 0.0) throw std::invalid_argument("zero expected count");
    const double diff = static_cast<double>(counts[i]) - e;
    stat += diff * diff / e;
    ++dof;
  }
  TestReport r;
  r.test = "chi_square_gof";
  r.n = static_cast<std::size_t>(total);
  r.alpha = alpha;
  r.stat = stat;
  r.p = gamma_q(dof / 2.0, stat / 2.0);
  r.verdict = r.p > alpha;
  return r;
}

TestReport chi_square_two_sample(std::span<const std::uint64_t> a,
                                 std::span<const std::uint64_t> b,
                                 double alpha) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("histogram mismatch");
  double na = 0.0, nb = 0.0;
  for (auto c : a) na += static_cast<double>(c);
  for (auto c : b) nb += static_cast<double>(c);
  double stat = 0.0;
  int dof = -1;
  const double ka = std::sqrt(nb / na), kb = std::sqrt(na / nb);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = static_cast<double>(a[i]), bi = static_cast<double>(b[i]);
    if (ai + bi == 0.0) continue;
    const double diff = ka * ai - kb * bi;
    stat += diff * diff / (ai + bi);
    ++dof;
  }
  TestReport r;
  r.test = "chi_square_two_sample";
  r.n = static_cast<std::size_t>(na);
  r.m = static_cast<std::size_t>(nb);
  r.alpha = alpha;
  r.stat = stat;
  r.p = dof <= 0 ? 1.0 : gamma_q(dof / 2.0, stat / 2.0);
  r.verdict = r.p > alpha;
  return r;
}

}  // namespace cutforge
