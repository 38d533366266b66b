#pragma once

#include "arveson/linalg.hpp"

#include <cstdint>
#include <random>

namespace arveson {

/// Seeded source for every sampled quantity. Draw order is part of the
/// reproducibility contract: callers that share one Rng get identical
/// streams for identical call sequences.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi);
    double normal();
    Complex complex_normal();

    /// Standard complex Gaussian vector (i.i.d. real and imaginary parts).
    Vec gaussian_vector(int d);
    Mat gaussian_matrix(int rows, int cols);

    /// Uniformly distributed point on the unit sphere of C^d.
    Vec unit_vector(int d);

    /// Haar-distributed unitary via QR with phase correction.
    Mat unitary(int d);

    /// Point of the open ball with radius drawn uniformly from [0, r_max].
    Vec ball_point(int d, double r_max = 0.9);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace arveson
