#include "minusorder/rng.hpp"

#include <cmath>
#include <numbers>

#include "minusorder/linalg.hpp"

namespace minusorder {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64(sm);
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t sm = stream;
    return Rng(seed ^ splitmix64(sm));
}

std::uint64_t Rng::next_u64() {
    // xoshiro256**
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::uniform_index(std::size_t n) {
    return n == 0 ? 0 : static_cast<std::size_t>(next_u64() % n);
}

double Rng::normal() {
    if (have_cached_normal_) {
        have_cached_normal_ = false;
        return cached_normal_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    have_cached_normal_ = true;
    return radius * std::cos(angle);
}

DenseMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.normal();
    return m;
}

DenseMatrix random_symmetric(Rng& rng, std::size_t n) {
    return random_matrix(rng, n, n).symmetrized();
}

DenseMatrix random_psd_matrix(Rng& rng, std::size_t n, std::size_t k) {
    if (k == 0) return DenseMatrix(n, n);
    const DenseMatrix g = random_matrix(rng, n, k);
    return (g * g.transpose()).symmetrized();
}

DenseMatrix random_invertible(Rng& rng, std::size_t n, double min_sv_ratio) {
    for (;;) {
        DenseMatrix s = random_matrix(rng, n, n);
        const Svd f = svd(s);
        if (f.sigma.front() > 0.0 && f.sigma.back() / f.sigma.front() >= min_sv_ratio)
            return s;
    }
}

DenseMatrix random_orthogonal(Rng& rng, std::size_t n) {
    const DenseMatrix g = random_invertible(rng, n, 1e-3);
    const Svd f = svd(g);
    return f.u * f.v.transpose();
}

std::vector<double> random_unit_vector(Rng& rng, std::size_t n) {
    for (;;) {
        std::vector<double> x(n);
        for (auto& v : x) v = rng.normal();
        const double len = norm2(x);
        if (len > 1e-8) return scaled(x, 1.0 / len);
    }
}

}  // namespace minusorder
