#pragma once

#include "arveson/arrangement.hpp"

#include <vector>

namespace arveson {

struct MaximalRepresentation {
    std::vector<Subspace> parts_out;
    std::vector<int> t_map;  // input part index -> output index
    Subspace e_one;
};

struct PairCheck {
    int i = 0;
    int j = 0;
    int intersection_dim = 0;
    int e_ij_dim = 0;
    bool intersection_matches = false;
    bool spans = false;
    // filled when the pair spans C^d
    int dim_e_one_perp = 0;
    int proj_dim_i = 0;
    int proj_dim_j = 0;
    bool halves_ok = true;
};

struct PairwiseReport {
    bool equal_dims = false;
    bool intersection_is_e_one = false;
    bool all_ok = false;
    std::vector<PairCheck> pairs;
};

/// Largest subspace containing m0 on which a is isometric: E_1(a), m0, and
/// pairs of positive/negative directions of A*A - I balanced to be null.
Subspace null_extension(const Mat& a, const Subspace& m0, double tol = 1e-9);

MaximalRepresentation maximal_representation(const Mat& a, const Arrangement& arr, double tol = 1e-9);

PairwiseReport verify_pairwise(const Mat& a, const MaximalRepresentation& rep, double tol = 1e-9);

}  // namespace arveson
