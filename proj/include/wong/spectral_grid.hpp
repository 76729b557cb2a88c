#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace wong {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Uniform periodic grid over [-T/2, T/2)^n.
///
/// Samples sit at x_j = -T/2 + j*h (h = T/N) on every axis. Spectral data is
/// stored in FFT order: storage index j on an axis maps to the integer
/// wavenumber k = j for j < N/2 and k = j - N otherwise, so the wavenumbers
/// cover {-N/2, ..., N/2 - 1} and the angular frequency is xi_k = 2*pi*k/T.
/// Multi-dimensional data is row-major with axis 0 slowest.
class Grid {
 public:
  /// Throws std::invalid_argument unless n in {1,2}, N >= 8 a power of two
  /// and T > 0.
  static Grid make(int dimension, std::size_t resolution, double period);

  int dimension() const { return dimension_; }
  std::size_t resolution() const { return resolution_; }
  double period() const { return period_; }
  double spacing() const { return period_ / static_cast<double>(resolution_); }
  double cell_volume() const;
  std::size_t size() const;

  double coordinate(std::size_t j) const;
  std::int64_t wavenumber(std::size_t j) const;
  double frequency(std::size_t j) const;

  /// Per-axis storage indices of a flat index.
  std::array<std::size_t, 2> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const std::size_t> axes) const;

  /// Physical coordinates of the flat sample index (unused axes are 0).
  std::array<double, 2> point(std::size_t flat) const;
  /// Angular frequency vector of the flat spectral index (unused axes are 0).
  std::array<double, 2> frequency_vector(std::size_t flat) const;
  double frequency_norm_squared(std::size_t flat) const;
  /// Flat index of the spectral bin holding -xi (mod N per axis).
  std::size_t mirror_index(std::size_t flat) const;

  std::vector<double> sample_points() const;
  std::vector<double> frequencies() const;

  bool operator==(const Grid&) const = default;

 private:
  Grid(int dimension, std::size_t resolution, double period)
      : dimension_(dimension), resolution_(resolution), period_(period) {}

  int dimension_;
  std::size_t resolution_;
  double period_;
};

enum class Representation { physical, spectral };

/// Complex samples of a function on a grid, in physical or spectral form.
/// Immutable once built; operations return new fields.
class Field {
 public:
  Field(Grid grid, std::vector<Complex> values, Representation representation,
        bool real_valued = false);

  static Field zeros(const Grid& grid, Representation representation);
  /// Samples f at every grid point; the result is tagged real-valued when
  /// `real_valued` is set, in which case f must return real numbers.
  static Field sample(const Grid& grid,
                      const std::function<Complex(std::span<const double>)>& f,
                      bool real_valued = false);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  Representation representation() const { return representation_; }
  bool is_physical() const { return representation_ == Representation::physical; }
  bool real_valued() const { return real_valued_; }

  double max_abs() const;
  /// max |Im| / max |value|; 0 for the zero field.
  double imaginary_ratio() const;
  /// Spectral only: max |F(k) - conj F(-k)| / max |F|.
  double hermitian_defect() const;

  Field operator+(const Field& other) const;
  Field operator-(const Field& other) const;
  Field operator*(double scale) const;
  Field operator*(Complex scale) const;
  /// Pointwise product; both operands must share grid and representation.
  Field pointwise(const Field& other) const;

 private:
  void require_compatible(const Field& other) const;

  Grid grid_;
  std::vector<Complex> values_;
  Representation representation_;
  bool real_valued_;
};

inline Field operator*(double scale, const Field& f) { return f * scale; }
inline Field operator*(Complex scale, const Field& f) { return f * scale; }

/// F f(xi) ~ h^n sum_j exp(-i xi.x_j) f_j.
Field forward_transform(const Field& f);
/// Exact discrete inverse of forward_transform.
Field inverse_transform(const Field& spectrum);

/// (h^n sum |f_j|^p)^(1/p), or max |f_j| for p = inf. Requires p >= 1.
double lp_norm(const Field& f, double p);
/// sup |f - g| / sup |g| (absolute when g vanishes).
double relative_sup_error(const Field& f, const Field& reference);

using MultiplierFn = std::function<Complex(std::span<const double>)>;

/// Samples m on every frequency of the grid; throws std::domain_error on any
/// non-finite value.
Field sample_multiplier(const Grid& grid, const MultiplierFn& m);

/// inverse(weights * forward(f)). When f is tagged real and the weights are
/// Hermitian, the imaginary residue is checked against 1e-10 (relative) and
/// dropped, and the result is tagged real. A larger residue throws
/// std::runtime_error.
Field apply_multiplier(const Field& f, const Field& weights);
Field apply_multiplier(const Field& f, const MultiplierFn& m);

/// Real-valued trigonometric field with spectral coefficients drawn
/// uniformly from the square [-1/2, 1/2)^2, scaled by (1+|k|^2)^(-decay),
/// Hermitian-symmetrized and zeroed for |k_axis| >= 3N/8. Deterministic in
/// (grid, seed, decay).
Field random_band_limited(const Grid& grid, std::uint64_t seed, double decay);

}  // namespace wong
