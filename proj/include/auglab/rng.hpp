#pragma once

#include <cstdint>
#include <random>

#include "auglab/types.hpp"

namespace auglab {

/// splitmix64 step; used to derive independent stream seeds from a master seed
/// so per-trial results do not depend on evaluation order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = master ^ (0x632be59bd9b4e019ULL + stream * 0x9e3779b97f4a7c15ULL);
    std::uint64_t b = splitmix64(s);
    return a ^ b;
}

/// Thin deterministic wrapper over mt19937_64 with the draw helpers the
/// experiments need.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    bool bernoulli(double p) { return uniform() < p; }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    /// Index draw from an unnormalized nonnegative weight vector.
    int categorical(const Vector& weights) {
        double total = weights.sum();
        double u = uniform() * total;
        double acc = 0.0;
        for (Index i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size() - 1);
    }

    Vector gaussian_vector(Index n) {
        Vector v(n);
        for (Index i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    Matrix gaussian_matrix(Index rows, Index cols) {
        Matrix m(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) m(i, j) = normal();
        return m;
    }

    /// Random symmetric PSD matrix G'G/d with d factors.
    Matrix psd_matrix(Index dim) {
        Matrix g = gaussian_matrix(dim, dim);
        return Matrix((g.transpose() * g) / static_cast<double>(dim));
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace auglab
