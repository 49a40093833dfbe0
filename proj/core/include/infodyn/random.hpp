#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "infodyn/channel.hpp"
#include "infodyn/density.hpp"
#include "infodyn/hilbert.hpp"

namespace infodyn {

/// All randomness flows through this engine. Uniform and normal variates are
/// derived from raw 64-bit draws so streams are identical across standard
/// library implementations.
using Rng = std::mt19937_64;

[[nodiscard]] double uniform01(Rng& rng);
[[nodiscard]] double standard_normal(Rng& rng);
[[nodiscard]] cplx complex_normal(Rng& rng);

[[nodiscard]] Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
[[nodiscard]] Matrix random_unitary(std::size_t n, Rng& rng);  // Haar
[[nodiscard]] Matrix random_hermitian(std::size_t n, Rng& rng);
[[nodiscard]] Vector random_unit_vector(std::size_t n, Rng& rng);

/// Full-rank (faithful) state with probability one.
[[nodiscard]] DensityOperator random_density(std::size_t n, Rng& rng);
[[nodiscard]] DensityOperator random_pure(std::size_t n, Rng& rng);
/// State whose spectrum has the prescribed weights in a Haar-random basis.
[[nodiscard]] DensityOperator random_density_with_spectrum(const RealVector& weights, Rng& rng);

/// Trace-preserving channel with `ops` random Kraus operators.
[[nodiscard]] Channel random_kraus_channel(std::size_t n_in, std::size_t n_out, std::size_t ops, Rng& rng);

}  // namespace infodyn
