#pragma once

// 2pi-periodic functions sampled at x_j = 2 pi j / n, with sigma-averages as
// plain means and derivatives by trigonometric interpolation (FFT).

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace plap::grid {

class GridFunction {
 public:
  /// Requires n >= 16, n even and finite samples.
  explicit GridFunction(std::vector<double> values);

  static GridFunction sample(const std::function<double(double)>& f, std::size_t n);
  static GridFunction constant(double c, std::size_t n);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j % values_.size()]; }
  std::span<const double> values() const { return values_; }

  /// x_j = 2 pi j / n.
  double node(std::size_t j) const;

  double min() const;
  double max() const;
  double max_abs() const;

  /// min u > floor * max|u| (default floor 1e-8).
  bool is_positive(double floor = 1e-8) const;

  GridFunction map(const std::function<double(double)>& f) const;
  GridFunction scaled(double c) const;

 private:
  std::vector<double> values_;
};

/// One column of samples, optional header line; blank lines ignored.
GridFunction read_csv(std::istream& in);

/// Throws NonPositive unless min u > floor * max|u|.
void require_positive(const GridFunction& u, std::string_view what, double floor = 1e-8);

/// ∫ g dsigma as the arithmetic mean of the samples.
double mean(std::span<const double> g);
double mean(const GridFunction& u);

/// ||u||_{r,sigma}. Requires r >= 1.
double norm(const GridFunction& u, double r);

/// Spectral derivative; the Nyquist mode is dropped.
GridFunction derivative(const GridFunction& u);

/// Spectral derivative of raw samples (no size checks beyond n >= 2, even).
std::vector<double> spectral_derivative(std::span<const double> g);

/// L_p u = (|u'|^{p-2} u')' in divergence form.
GridFunction p_laplacian(const GridFunction& u, double p);

/// |s|^{p-2} s with the value 0 at s = 0.
double phi(double s, double p);

}  // namespace plap::grid
