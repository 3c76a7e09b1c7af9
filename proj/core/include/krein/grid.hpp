#pragma once

#include "krein/linalg.hpp"

namespace krein::qb {

/// Uniform midpoint grid x_i = -L + (i + 1/2) h on [-L, L], h = 2L / nodes.
/// Parity x -> -x maps node i to nodes - 1 - i.
struct Grid {
  double L = 0.0;
  Index nodes = 0;
  double h = 0.0;
  RealVector x;

  /// nodes must be an even power of two (FFT length).
  static Grid symmetric(double L, Index nodes);

  Index mirror(Index i) const { return nodes - 1 - i; }
  /// Frequencies 2 pi k / (nodes h) in FFT order.
  RealVector frequencies() const;
  double frequency_step() const;
  double nyquist() const;
};

/// (f, g) = h sum f conj(g).
cplx inner(const Grid& grid, const Vector& f, const Vector& g);
double norm(const Grid& grid, const Vector& f);

/// (Pf)(x) = f(-x).
Vector parity(const Grid& grid, const Vector& f);
Matrix parity(const Grid& grid, const Matrix& f);

/// Ff(xi) = (2 pi)^{-1/2} int e^{-i x xi} f(x) dx by the rectangle rule, at
/// the FFT frequencies. Columnwise on matrices.
Vector fourier(const Grid& grid, const Vector& f);
Matrix fourier(const Grid& grid, const Matrix& f);
Vector inverse_fourier(const Grid& grid, const Vector& fhat);

/// F^{-1} m(xi) F f with m set to zero where |xi| > band.
Vector fourier_multiplier(const Grid& grid, const Vector& f, const RealVector& m, double band);

}  // namespace krein::qb
