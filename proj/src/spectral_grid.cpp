#include "wong/spectral_grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

namespace wong {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans live for the lifetime of the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int rank, std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(rank, n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t total = 1;
    for (int a = 0; a < rank; ++a) total *= n;
    auto* scratch = fftw_alloc_complex(total);
    int dims[2] = {static_cast<int>(n), static_cast<int>(n)};
    fftw_plan plan = fftw_plan_dft(rank, dims, scratch, scratch, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

void execute_in_place(const Grid& grid, std::vector<Complex>& data, int sign) {
  fftw_plan plan = PlanCache::instance().get(grid.dimension(), grid.resolution(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

// exp(i xi_k T/2) = (-1)^k on every axis.
bool odd_parity(const Grid& grid, std::size_t flat) {
  const auto idx = grid.unflatten(flat);
  std::size_t sum = 0;
  for (int a = 0; a < grid.dimension(); ++a) sum += idx[a];
  return (sum & 1U) != 0;
}

double unit_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

// ---------------------------------------------------------------- Grid

Grid Grid::make(int dimension, std::size_t resolution, double period) {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("grid dimension must be 1 or 2, got " +
                                std::to_string(dimension));
  if (resolution < 8 || !std::has_single_bit(resolution))
    throw std::invalid_argument("grid resolution must be a power of two >= 8, got " +
                                std::to_string(resolution));
  if (!(period > 0.0) || !std::isfinite(period))
    throw std::invalid_argument("grid period must be positive and finite");
  return Grid(dimension, resolution, period);
}

double Grid::cell_volume() const {
  const double h = spacing();
  return dimension_ == 1 ? h : h * h;
}

std::size_t Grid::size() const {
  return dimension_ == 1 ? resolution_ : resolution_ * resolution_;
}

double Grid::coordinate(std::size_t j) const {
  return -0.5 * period_ + static_cast<double>(j) * spacing();
}

std::int64_t Grid::wavenumber(std::size_t j) const {
  const auto n = static_cast<std::int64_t>(resolution_);
  const auto i = static_cast<std::int64_t>(j);
  return i < n / 2 ? i : i - n;
}

double Grid::frequency(std::size_t j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(wavenumber(j)) / period_;
}

std::array<std::size_t, 2> Grid::unflatten(std::size_t flat) const {
  if (dimension_ == 1) return {flat, 0};
  return {flat / resolution_, flat % resolution_};
}

std::size_t Grid::flatten(std::span<const std::size_t> axes) const {
  return dimension_ == 1 ? axes[0] : axes[0] * resolution_ + axes[1];
}

std::array<double, 2> Grid::point(std::size_t flat) const {
  const auto idx = unflatten(flat);
  std::array<double, 2> x{coordinate(idx[0]), 0.0};
  if (dimension_ == 2) x[1] = coordinate(idx[1]);
  return x;
}

std::array<double, 2> Grid::frequency_vector(std::size_t flat) const {
  const auto idx = unflatten(flat);
  std::array<double, 2> xi{frequency(idx[0]), 0.0};
  if (dimension_ == 2) xi[1] = frequency(idx[1]);
  return xi;
}

double Grid::frequency_norm_squared(std::size_t flat) const {
  const auto xi = frequency_vector(flat);
  return xi[0] * xi[0] + xi[1] * xi[1];
}

std::size_t Grid::mirror_index(std::size_t flat) const {
  auto idx = unflatten(flat);
  for (int a = 0; a < dimension_; ++a) idx[a] = (resolution_ - idx[a]) % resolution_;
  return flatten(std::span<const std::size_t>(idx.data(), 2));
}

std::vector<double> Grid::sample_points() const {
  std::vector<double> x(resolution_);
  for (std::size_t j = 0; j < resolution_; ++j) x[j] = coordinate(j);
  return x;
}

std::vector<double> Grid::frequencies() const {
  std::vector<double> xi(resolution_);
  for (std::size_t j = 0; j < resolution_; ++j) xi[j] = frequency(j);
  return xi;
}

// ---------------------------------------------------------------- Field

Field::Field(Grid grid, std::vector<Complex> values, Representation representation,
             bool real_valued)
    : grid_(grid),
      values_(std::move(values)),
      representation_(representation),
      real_valued_(real_valued) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("field size " + std::to_string(values_.size()) +
                                " does not match grid size " +
                                std::to_string(grid_.size()));
}

Field Field::zeros(const Grid& grid, Representation representation) {
  return Field(grid, std::vector<Complex>(grid.size()), representation, true);
}

Field Field::sample(const Grid& grid,
                    const std::function<Complex(std::span<const double>)>& f,
                    bool real_valued) {
  std::vector<Complex> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto x = grid.point(i);
    values[i] = f(std::span<const double>(x.data(), grid.dimension()));
  }
  return Field(grid, std::move(values), Representation::physical, real_valued);
}

double Field::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::imaginary_ratio() const {
  double im = 0.0;
  for (const auto& v : values_) im = std::max(im, std::abs(v.imag()));
  const double scale = max_abs();
  return scale == 0.0 ? 0.0 : im / scale;
}

double Field::hermitian_defect() const {
  if (representation_ != Representation::spectral)
    throw std::logic_error("hermitian_defect requires a spectral field");
  double defect = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    defect = std::max(defect,
                      std::abs(values_[i] - std::conj(values_[grid_.mirror_index(i)])));
  const double scale = max_abs();
  return scale == 0.0 ? 0.0 : defect / scale;
}

void Field::require_compatible(const Field& other) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("fields live on different grids");
  if (representation_ != other.representation_)
    throw std::invalid_argument("fields have different representations");
}

Field Field::operator+(const Field& other) const {
  require_compatible(other);
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] + other.values_[i];
  return Field(grid_, std::move(out), representation_, real_valued_ && other.real_valued_);
}

Field Field::operator-(const Field& other) const {
  require_compatible(other);
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] - other.values_[i];
  return Field(grid_, std::move(out), representation_, real_valued_ && other.real_valued_);
}

Field Field::operator*(double scale) const {
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * values_[i];
  return Field(grid_, std::move(out), representation_, real_valued_);
}

Field Field::operator*(Complex scale) const {
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * values_[i];
  return Field(grid_, std::move(out), representation_,
               real_valued_ && scale.imag() == 0.0);
}

Field Field::pointwise(const Field& other) const {
  require_compatible(other);
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] * other.values_[i];
  return Field(grid_, std::move(out), representation_, false);
}

// ---------------------------------------------------------------- transforms

Field forward_transform(const Field& f) {
  if (!f.is_physical()) throw std::invalid_argument("forward_transform expects a physical field");
  const Grid& grid = f.grid();
  std::vector<Complex> data(f.values().begin(), f.values().end());
  execute_in_place(grid, data, FFTW_FORWARD);
  const double h_n = grid.cell_volume();
  for (std::size_t i = 0; i < data.size(); ++i)
    data[i] *= odd_parity(grid, i) ? -h_n : h_n;
  return Field(grid, std::move(data), Representation::spectral, false);
}

Field inverse_transform(const Field& spectrum) {
  if (spectrum.is_physical())
    throw std::invalid_argument("inverse_transform expects a spectral field");
  const Grid& grid = spectrum.grid();
  std::vector<Complex> data(spectrum.values().begin(), spectrum.values().end());
  // 1 / (h^n N^n) = 1 / T^n
  const double scale = 1.0 / std::pow(grid.period(), grid.dimension());
  for (std::size_t i = 0; i < data.size(); ++i)
    data[i] *= odd_parity(grid, i) ? -scale : scale;
  execute_in_place(grid, data, FFTW_BACKWARD);
  return Field(grid, std::move(data), Representation::physical, false);
}

double lp_norm(const Field& f, double p) {
  if (!f.is_physical()) throw std::invalid_argument("lp_norm expects a physical field");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  if (std::isinf(p)) return f.max_abs();
  const double h_n = f.grid().cell_volume();
  double sum = 0.0;
  if (p == 1.0) {
    for (const auto& v : f.values()) sum += std::abs(v);
    return h_n * sum;
  }
  if (p == 2.0) {
    for (const auto& v : f.values()) sum += std::norm(v);
    return std::sqrt(h_n * sum);
  }
  for (const auto& v : f.values()) sum += std::pow(std::abs(v), p);
  return std::pow(h_n * sum, 1.0 / p);
}

double relative_sup_error(const Field& f, const Field& reference) {
  const double err = (f - reference).max_abs();
  const double scale = reference.max_abs();
  return scale == 0.0 ? err : err / scale;
}

Field sample_multiplier(const Grid& grid, const MultiplierFn& m) {
  std::vector<Complex> weights(grid.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto xi = grid.frequency_vector(i);
    const Complex w = m(std::span<const double>(xi.data(), grid.dimension()));
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
      throw std::domain_error("multiplier is not finite at grid frequency index " +
                              std::to_string(i));
    weights[i] = w;
  }
  return Field(grid, std::move(weights), Representation::spectral, false);
}

Field apply_multiplier(const Field& f, const Field& weights) {
  if (!f.is_physical()) throw std::invalid_argument("apply_multiplier expects a physical field");
  if (weights.is_physical())
    throw std::invalid_argument("multiplier weights must be spectral");
  if (!(f.grid() == weights.grid()))
    throw std::invalid_argument("multiplier weights live on a different grid");

  const Field product = forward_transform(f).pointwise(weights);
  if (!f.real_valued() || weights.hermitian_defect() > 1e-14) return inverse_transform(product);

  // Roundoff breaks the Hermitian symmetry of the product at the 1e-16 level;
  // growing weights (J_{-s}) would amplify that into the imaginary part.
  const Grid& grid = f.grid();
  std::vector<Complex> sym(product.size());
  for (std::size_t i = 0; i < sym.size(); ++i)
    sym[i] = 0.5 * (product[i] + std::conj(product[grid.mirror_index(i)]));
  const Field out = inverse_transform(Field(grid, std::move(sym), Representation::spectral));

  constexpr double kResidueTolerance = 1e-10;
  const double residue = out.imaginary_ratio();
  if (residue > kResidueTolerance)
    throw std::runtime_error("real pipeline left imaginary residue " + std::to_string(residue));
  std::vector<Complex> real(out.values().begin(), out.values().end());
  for (auto& v : real) v = Complex(v.real(), 0.0);
  return Field(f.grid(), std::move(real), Representation::physical, true);
}

Field apply_multiplier(const Field& f, const MultiplierFn& m) {
  return apply_multiplier(f, sample_multiplier(f.grid(), m));
}

Field random_band_limited(const Grid& grid, std::uint64_t seed, double decay) {
  if (!(decay > 0.0)) throw std::invalid_argument("random_band_limited requires decay > 0");
  std::mt19937_64 engine(seed);
  const auto cutoff = static_cast<std::int64_t>(3 * grid.resolution() / 8);
  std::vector<Complex> raw(grid.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double re = unit_uniform(engine) - 0.5;
    const double im = unit_uniform(engine) - 0.5;
    const auto idx = grid.unflatten(i);
    double k2 = 0.0;
    bool kept = true;
    for (int a = 0; a < grid.dimension(); ++a) {
      const auto k = grid.wavenumber(idx[a]);
      k2 += static_cast<double>(k * k);
      kept = kept && std::abs(k) < cutoff;
    }
    raw[i] = kept ? Complex(re, im) * std::pow(1.0 + k2, -decay) : Complex{};
  }
  std::vector<Complex> sym(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    sym[i] = 0.5 * (raw[i] + std::conj(raw[grid.mirror_index(i)]));

  Field physical = inverse_transform(Field(grid, std::move(sym), Representation::spectral));
  std::vector<Complex> real(physical.values().begin(), physical.values().end());
  for (auto& v : real) v = Complex(v.real(), 0.0);
  return Field(grid, std::move(real), Representation::physical, true);
}

}  // namespace wong
