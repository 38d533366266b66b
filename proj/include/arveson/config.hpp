#pragma once

#include "arveson/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arveson {

struct Deformation {
    std::string kind;  // "tilt" or "matrix-list"
    std::vector<double> epsilons;
    std::vector<Mat> matrices;
};

struct ExperimentConfig {
    int ambient_dim = 0;
    std::vector<std::vector<Vec>> arrangement;  // spanning vectors per part, as given
    std::optional<Deformation> deformation;
    std::optional<Mat> matrix;  // single map for maxrep / mult-norm
    int max_degree = 8;
    int gram_samples = 32;
    std::uint64_t seed = 0;
    double tol = kDefaultTol;
};

/// Raised by parse_config; `field` is a path such as "deformation.matrices[0]".
class ConfigError : public ValidationError {
public:
    ConfigError(std::string field, const std::string& message)
        : ValidationError(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

}  // namespace arveson
