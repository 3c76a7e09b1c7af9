#include "krein/grid.hpp"

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/FFT>

#include "krein/errors.hpp"

namespace krein::qb {

Grid Grid::symmetric(double L, Index nodes) {
  if (!(L > 0.0)) throw InvalidInput("grid half-width must be positive");
  if (nodes < 2 || (nodes & (nodes - 1)) != 0)
    throw InvalidInput("grid node count must be a power of two");
  Grid g;
  g.L = L;
  g.nodes = nodes;
  g.h = 2.0 * L / double(nodes);
  g.x.resize(nodes);
  for (Index i = 0; i < nodes; ++i) g.x(i) = -L + (double(i) + 0.5) * g.h;
  return g;
}

double Grid::frequency_step() const { return 2.0 * std::numbers::pi / (double(nodes) * h); }

double Grid::nyquist() const { return std::numbers::pi / h; }

RealVector Grid::frequencies() const {
  RealVector xi(nodes);
  const double dxi = frequency_step();
  for (Index k = 0; k < nodes; ++k) xi(k) = dxi * double(k < nodes / 2 ? k : k - nodes);
  return xi;
}

cplx inner(const Grid& grid, const Vector& f, const Vector& g) { return grid.h * g.dot(f); }

double norm(const Grid& grid, const Vector& f) { return std::sqrt(grid.h) * f.norm(); }

Vector parity(const Grid& grid, const Vector& f) {
  (void)grid;
  return f.reverse();
}

Matrix parity(const Grid& grid, const Matrix& f) {
  (void)grid;
  return f.colwise().reverse();
}

namespace {

Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

Vector fourier(const Grid& grid, const Vector& f) {
  if (f.size() != grid.nodes) throw InvalidInput("fourier: sample count mismatch");
  Vector out(grid.nodes);
  Vector in = f;
  engine().fwd(out, in);
  const RealVector xi = grid.frequencies();
  const double x0 = grid.x(0);
  const double scale = grid.h / std::sqrt(2.0 * std::numbers::pi);
  for (Index k = 0; k < grid.nodes; ++k) out(k) *= scale * std::polar(1.0, -x0 * xi(k));
  return out;
}

Matrix fourier(const Grid& grid, const Matrix& f) {
  Matrix out(f.rows(), f.cols());
  for (Index c = 0; c < f.cols(); ++c) out.col(c) = fourier(grid, Vector(f.col(c)));
  return out;
}

Vector inverse_fourier(const Grid& grid, const Vector& fhat) {
  if (fhat.size() != grid.nodes) throw InvalidInput("inverse_fourier: sample count mismatch");
  const RealVector xi = grid.frequencies();
  const double x0 = grid.x(0);
  Vector in(grid.nodes);
  for (Index k = 0; k < grid.nodes; ++k) in(k) = fhat(k) * std::polar(1.0, x0 * xi(k));
  Vector out(grid.nodes);
  engine().inv(out, in);
  // inv() already divides by N.
  out *= grid.frequency_step() * double(grid.nodes) / std::sqrt(2.0 * std::numbers::pi);
  return out;
}

Vector fourier_multiplier(const Grid& grid, const Vector& f, const RealVector& m, double band) {
  Vector fhat = fourier(grid, f);
  const RealVector xi = grid.frequencies();
  for (Index k = 0; k < grid.nodes; ++k) fhat(k) *= std::abs(xi(k)) <= band ? m(k) : 0.0;
  return inverse_fourier(grid, fhat);
}

}  // namespace krein::qb
