#pragma once

#include <cstdint>
#include <vector>

#include "minusorder/dense_matrix.hpp"

namespace minusorder {

/// Deterministic PRNG (xoshiro256** seeded through splitmix64). Every suite
/// draws all randomness from one 64-bit seed; independent trials use
/// substream(seed, index) so reports are reproducible and mergeable by
/// trial index regardless of execution order.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Substream k of a master seed: splitmix64 applied to seed ^ mix(k).
    static Rng substream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double uniform();                           ///< [0, 1)
    double uniform(double lo, double hi);
    std::size_t uniform_index(std::size_t n);   ///< [0, n)
    double normal();                            ///< standard normal, Box-Muller

private:
    std::uint64_t s_[4];
    bool have_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

DenseMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);
DenseMatrix random_symmetric(Rng& rng, std::size_t n);
/// G G^T with G an n x k matrix of iid standard normals: rank k almost surely.
DenseMatrix random_psd_matrix(Rng& rng, std::size_t n, std::size_t k);
/// Gaussian matrix resampled until sigma_min / sigma_max >= min_sv_ratio.
DenseMatrix random_invertible(Rng& rng, std::size_t n, double min_sv_ratio = 1e-2);
DenseMatrix random_orthogonal(Rng& rng, std::size_t n);
std::vector<double> random_unit_vector(Rng& rng, std::size_t n);

}  // namespace minusorder
