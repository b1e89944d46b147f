#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cutforge {

struct TestReport {
  std::string test;
  double stat = 0.0;
  double p = 1.0;
  std::size_t n = 0;
  std::size_t m = 0;  // second sample size, 0 when one-sample
  bool verdict = false;
  double alpha = 0.01;
  std::uint64_t seed = 0;
  std::string notes;

  std::string to_json() const;
};

// Named reference distributions for one-sample tests.
enum class RefCdf { rayleigh, uniform01, exponential, sbml_half };

double ref_cdf_value(RefCdf which, double x, double rate = 1.0);

// Kolmogorov tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

TestReport ks_one_sample(std::span<const double> samples, RefCdf cdf,
                         double rate = 1.0, double alpha = 0.01);
TestReport ks_one_sample(std::span<const double> samples,
                         const std::function<double(double)>& cdf,
                         double alpha = 0.01);
TestReport ks_two_sample(std::span<const double> a, std::span<const double> b,
                         double alpha = 0.01);

struct MomentTarget {
  double p;
  double expected;
  std::string source;
};

// z-scores of sample moments against targets; verdict is max |z| < z_max.
TestReport moment_summary(std::span<const double> samples,
                          std::span<const MomentTarget> targets,
                          double z_max = 3.0);
double moment_z(std::span<const double> samples, double p, double expected);

// Pearson goodness-of-fit of counts against a probability vector.
TestReport chi_square_gof(std::span<const std::uint64_t> counts,
                          std::span<const double> probs, double alpha = 0.01);
// Homogeneity of two histograms over the same bins.
TestReport chi_square_two_sample(std::span<const std::uint64_t> a,
                                 std::span<const std::uint64_t> b,
                                 double alpha = 0.01);

// Regularized incomplete gamma Q(a, x); chi-square upper tail is
// Q(k/2, x/2).
double gamma_q(double a, double x);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);
double median(std::vector<double> xs);

}  // namespace cutforge
