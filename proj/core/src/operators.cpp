// Copyright 2026 The spinlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinlab/operators.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "spinlab/errors.hpp"

namespace spinlab {
namespace {

using Mat2 = std::array<Complex, 4>;  // row-major 2x2

constexpr Complex kI{0.0, 1.0};

Mat2 spin_half(SpinAxis axis) {
  Mat2 m{};
  switch (base_axis(axis)) {
    case SpinAxis::X: m = {0.0, 0.5, 0.5, 0.0}; break;
    case SpinAxis::Y: m = {0.0, -0.5 * kI, 0.5 * kI, 0.0}; break;
    default: m = {0.5, 0.0, 0.0, -0.5}; break;
  }
  if (is_negative(axis))
    for (auto& z : m) z = -z;
  return m;
}

// exp(-i angle I_axis) for a single spin-1/2:
// cos(angle/2) 1 - 2i sin(angle/2) I_axis.
Mat2 rotation2(double angle, SpinAxis axis) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const Mat2 op = spin_half(axis);
  Mat2 r{};
  for (int k = 0; k < 4; ++k) r[k] = -2.0 * kI * s * op[k];
  r[0] += c;
  r[3] += c;
  return r;
}

// Tensor product of per-spin 2x2 factors, spin 1 most significant.
ComplexMatrix tensor(const std::vector<Mat2>& factors) {
  const std::size_t n = factors.size();
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix out(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Complex v{1.0, 0.0};
      for (std::size_t k = 0; k < n && v != Complex{}; ++k) {
        const std::size_t shift = n - 1 - k;
        const std::size_t br = (r >> shift) & 1U;
        const std::size_t bc = (c >> shift) & 1U;
        v *= factors[k][br * 2 + bc];
      }
      out(r, c) = v;
    }
  }
  return out;
}

void check_spin_count(int n) {
  if (n < 1 || n > kMaxSpins) throw ArgumentError("spin count must be in [1, 5], got " + std::to_string(n));
}

}  // namespace

SpinAxis negate(SpinAxis axis) noexcept {
  switch (axis) {
    case SpinAxis::X: return SpinAxis::MinusX;
    case SpinAxis::Y: return SpinAxis::MinusY;
    case SpinAxis::Z: return SpinAxis::MinusZ;
    case SpinAxis::MinusX: return SpinAxis::X;
    case SpinAxis::MinusY: return SpinAxis::Y;
    case SpinAxis::MinusZ: return SpinAxis::Z;
  }
  return axis;
}

bool is_negative(SpinAxis axis) noexcept {
  return axis == SpinAxis::MinusX || axis == SpinAxis::MinusY || axis == SpinAxis::MinusZ;
}

SpinAxis base_axis(SpinAxis axis) noexcept { return is_negative(axis) ? negate(axis) : axis; }

std::string_view to_string(SpinAxis axis) noexcept {
  switch (axis) {
    case SpinAxis::X: return "x";
    case SpinAxis::Y: return "y";
    case SpinAxis::Z: return "z";
    case SpinAxis::MinusX: return "-x";
    case SpinAxis::MinusY: return "-y";
    case SpinAxis::MinusZ: return "-z";
  }
  return "?";
}

std::optional<SpinAxis> parse_axis(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  static constexpr std::array kAll{SpinAxis::X, SpinAxis::Y, SpinAxis::Z,
                                   SpinAxis::MinusX, SpinAxis::MinusY, SpinAxis::MinusZ};
  for (SpinAxis a : kAll)
    if (to_string(a) == lower) return a;
  if (lower == "+x") return SpinAxis::X;
  if (lower == "+y") return SpinAxis::Y;
  if (lower == "+z") return SpinAxis::Z;
  return std::nullopt;
}

SpinSet::SpinSet(std::initializer_list<int> spins) {
  for (int s : spins) insert(s);
}

SpinSet SpinSet::all(int n) {
  check_spin_count(n);
  return from_mask((1U << n) - 1U);
}

void SpinSet::insert(int spin) {
  if (spin < 1 || spin > kMaxSpins) throw ArgumentError("spin index out of range: " + std::to_string(spin));
  mask_ |= 1U << (spin - 1);
}

int SpinSet::size() const noexcept { return std::popcount(mask_); }

int SpinSet::max_index() const noexcept { return 32 - std::countl_zero(mask_); }

std::vector<int> SpinSet::indices() const {
  std::vector<int> out;
  for (int s = 1; s <= 32; ++s)
    if (contains(s)) out.push_back(s);
  return out;
}

ComplexMatrix single_spin_op(int n, int i, SpinAxis axis) {
  check_spin_count(n);
  if (i < 1 || i > n) {
    throw ArgumentError("spin index " + std::to_string(i) + " out of range for n=" + std::to_string(n));
  }
  std::vector<Mat2> factors(static_cast<std::size_t>(n), Mat2{1.0, 0.0, 0.0, 1.0});
  factors[static_cast<std::size_t>(i - 1)] = spin_half(axis);
  return tensor(factors);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da * db > kMaxDim) {
    throw CapacityError("kron result dimension " + std::to_string(da * db) + " exceeds " + std::to_string(kMaxDim));
  }
  ComplexMatrix out(da * db);
  for (std::size_t ra = 0; ra < da; ++ra)
    for (std::size_t ca = 0; ca < da; ++ca) {
      const Complex x = a(ra, ca);
      for (std::size_t rb = 0; rb < db; ++rb)
        for (std::size_t cb = 0; cb < db; ++cb) out(ra * db + rb, ca * db + cb) = x * b(rb, cb);
    }
  return out;
}

ComplexMatrix rotation_unitary(int n, SpinSet spins, double angle, SpinAxis axis) {
  check_spin_count(n);
  if (spins.empty()) throw ArgumentError("rotation needs a nonempty spin set");
  if (spins.max_index() > n) {
    throw ArgumentError("rotation addresses spin " + std::to_string(spins.max_index()) + " but n=" +
                        std::to_string(n));
  }
  const Mat2 r = rotation2(angle, axis);
  std::vector<Mat2> factors(static_cast<std::size_t>(n), Mat2{1.0, 0.0, 0.0, 1.0});
  for (int s : spins.indices()) factors[static_cast<std::size_t>(s - 1)] = r;
  return tensor(factors);
}

ComplexMatrix diagonal_evolution(std::span<const double> h_diag_hz, double t_seconds) {
  if (t_seconds < 0.0) throw ArgumentError("evolution time must be nonnegative");
  std::vector<Complex> d(h_diag_hz.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = std::polar(1.0, -2.0 * std::numbers::pi * h_diag_hz[k] * t_seconds);
  }
  return ComplexMatrix::diagonal(d);
}

PhaseComparison equal_up_to_global_phase(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw ArgumentError("global-phase comparison needs equal dimensions");
  const auto eb = b.entries();
  std::size_t pivot = 0;
  for (std::size_t k = 1; k < eb.size(); ++k)
    if (std::abs(eb[k]) > std::abs(eb[pivot])) pivot = k;
  if (std::abs(eb[pivot]) < 1e-14) throw DegenerateComparisonError("reference matrix is numerically zero");

  PhaseComparison result;
  const Complex ratio = a.entries()[pivot] / eb[pivot];
  result.phase = std::abs(ratio) > 0.0 ? ratio / std::abs(ratio) : Complex{1.0, 0.0};
  result.deviation = max_abs_diff(a, b * result.phase);
  result.equal = result.deviation <= tol;
  return result;
}

}  // namespace spinlab
