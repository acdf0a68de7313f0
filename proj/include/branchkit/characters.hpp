#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>

#include "branchkit/cartan.hpp"
#include "branchkit/qseries.hpp"
#include "branchkit/weyl.hpp"

namespace branchkit {

/// Weight multiplicities of the integrable module L_lambda, truncated by
/// d-degree: every beta with n_0(beta) <= trunc and mult(lambda - beta) != 0
/// has an entry.  Entries are positive; beta = 0 maps to 1.
struct MultTable {
    std::string algebra;  // selector, for cache validation
    Weight lambda;
    long long trunc = 0;
    std::map<LabelVec, Int> entries;  // key: root coordinates n_0..n_r

    const Int& mult(const LabelVec& beta) const {
        static const Int zero = 0;
        auto it = entries.find(beta);
        return it == entries.end() ? zero : it->second;
    }
};

/// Truncated Freudenthal recursion over the affine root system.
MultTable weight_multiplicities(const AffineAlgebra& alg, const Weight& lambda, long long N);

/// Same, with an explicit positive-root list (order must not matter).
MultTable weight_multiplicities_with_roots(const AffineAlgebra& alg, const Weight& lambda,
                                           long long N, std::span<const PosRoot> roots);

/// ch_q (L_lambda)^{nu'}: the d-graded dimension series of the h'-weight
/// space nu', on the window [0, N] with N <= table.trunc.
QSeries weight_space_character(const AffineAlgebra& alg, const MultTable& table,
                               const LabelVec& nu_labels, long long N);

struct StringFunction {
    bool empty = false;  // no nonzero coefficient within the window
    long long offset = 0;
    QSeries series;
};

/// Offset-normalized variant: series * q^{-offset} starts at degree 0.
StringFunction string_function(const AffineAlgebra& alg, const MultTable& table,
                               const LabelVec& mu_labels, long long N);

/// Independent cross-check: the alternating Weyl sum over e^{w*lambda} minus
/// ch L_lambda times the product over positive roots of (1 - e^{-alpha})^mult,
/// expanded in root coordinates and truncated at d-degree N.  Returns the
/// nonzero residual entries; an empty map certifies the table and the Weyl
/// enumeration against each other.
std::map<LabelVec, Int> character_identity_residual(const AffineAlgebra& alg, WeylGroup& weyl,
                                                    const Weight& lambda, long long N);

/// Memoized MultTable access, optionally persisted to a cache directory.
/// Tables may be served at a larger truncation than requested.
class TableStore {
public:
    explicit TableStore(const AffineAlgebra& alg) : alg_(&alg) {}

    void set_cache_dir(std::optional<std::filesystem::path> dir) { cache_dir_ = std::move(dir); }
    const std::optional<std::filesystem::path>& cache_dir() const { return cache_dir_; }

    std::shared_ptr<const MultTable> get(const Weight& lambda, long long N);

private:
    const AffineAlgebra* alg_;
    std::optional<std::filesystem::path> cache_dir_;
    std::mutex mutex_;
    std::map<LabelVec, std::shared_ptr<const MultTable>> mem_;
};

}  // namespace branchkit
