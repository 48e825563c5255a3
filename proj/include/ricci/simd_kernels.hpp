#pragma once

#include <cstddef>

// Low-level dense kernels for the symmetric eigensolver hot loops.
//
// Each kernel has a scalar reference implementation and (on x86) an AVX2
// one, selected once at startup by cpuid.  The variants are bitwise
// equivalent by construction:
//   * apply_rotation is purely elementwise mul/add (no FMA), so every lane
//     performs exactly the scalar arithmetic;
//   * the reductions fix a four-accumulator summation order which the AVX2
//     lanes realize and the scalar reference emulates.
// This is what keeps solver output independent of the dispatch decision;
// the equivalence tests check it bit for bit.

namespace ricci::kernels {

enum class Isa { scalar, avx2, neon };

/// Kernel set currently dispatched to.
Isa active_isa() noexcept;

/// Human-readable name ("scalar", "avx2", "neon").
const char* isa_name(Isa isa) noexcept;

/// Force a kernel set (used by the equivalence tests).  Unsupported
/// requests fall back to scalar.  Returns the previously active set.
Isa force_isa(Isa isa) noexcept;

/// (x[i], y[i]) <- (c*x[i] - s*y[i], s*x[i] + c*y[i]) for i in [0, n).
void apply_rotation(double* x, double* y, std::size_t n, double c, double s) noexcept;

/// Dot product, fixed 4-lane accumulation order.
double dot(const double* x, const double* y, std::size_t n) noexcept;

/// Sum of squares, fixed 4-lane accumulation order.
double sum_squares(const double* x, std::size_t n) noexcept;

/// Scalar reference versions (always available; dispatch fallback).
namespace scalar {
void apply_rotation(double* x, double* y, std::size_t n, double c, double s) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double sum_squares(const double* x, std::size_t n) noexcept;
} // namespace scalar

} // namespace ricci::kernels
