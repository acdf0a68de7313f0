#pragma once

#include <vector>

#include "branchkit/cartan.hpp"

namespace branchkit {

/// One affine Weyl group element: its exact linear action on weight
/// coordinates (labels 0..r, dval) as an (r+2)x(r+2) integer matrix, its
/// length, and one reduced word reaching it.
class WeylElement {
public:
    WeylElement(int n, std::vector<long long> mat, int length, std::vector<int> word)
        : n_(n), mat_(std::move(mat)), length_(length), word_(std::move(word)) {}

    int length() const { return length_; }
    const std::vector<int>& word() const { return word_; }
    const std::vector<long long>& matrix() const { return mat_; }

    Weight apply(const Weight& w) const;  // plain (unshifted) action

    bool is_identity() const;

private:
    int n_;
    std::vector<long long> mat_;
    int length_;
    std::vector<int> word_;

    friend class WeylGroup;
};

/// Length-layered BFS enumeration of the affine Weyl group, deduplicated by
/// the exact action matrix.  Layers grow on demand and are immutable once
/// produced.
class WeylGroup {
public:
    explicit WeylGroup(const AffineAlgebra& alg);

    const AffineAlgebra& algebra() const { return *alg_; }

    WeylElement simple_reflection(int i) const;

    /// Ensure layers up to max_length exist and return the layer sizes.
    std::vector<size_t> layer_sizes(int max_length);

    const std::vector<WeylElement>& layer(int length);
    int layers_built() const { return (int)layers_.size() - 1; }

    /// Shifted action w * lambda = w(lambda + rho) - rho.
    Weight shifted_action(const WeylElement& w, const Weight& lambda) const;

    /// Exact length of the element given by the matrix, if it appears within
    /// the layers built so far; -1 otherwise.
    int known_length(const std::vector<long long>& matrix) const;

    /// Lower bound for (w * lambda)(d) over all w of the given length and any
    /// dominant integral lambda with lambda(d) = 0: the minimum of
    /// sum n_0(beta) over length-many distinct positive real roots.
    long long min_dshift(int length) const;

private:
    void ensure_layers(int max_length);
    std::vector<long long> reflection_matrix(int i) const;

    const AffineAlgebra* alg_;
    int n_;  // r + 2
    std::vector<std::vector<WeylElement>> layers_;
    std::map<std::vector<long long>, int> seen_;  // matrix -> length
};

}  // namespace branchkit
