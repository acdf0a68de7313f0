#pragma once

#include <map>
#include <memory>
#include <string>

#include "branchkit/characters.hpp"

namespace branchkit {

/// One branching-function request: dominant lambda1 (level k1), lambda2
/// (level k2) and mu' of level k1 + k2, all normalized to d-value 0,
/// truncated at q^N.
struct BranchingQuery {
    Weight lambda1;
    Weight lambda2;
    LabelVec mu;  // h'-labels of mu
    long long trunc = 0;
};

struct BranchingResult {
    QSeries series;
    std::string method;
    long long terms_used = 0;      // Weyl layers consumed, or peel steps
    long long certified_trunc = 0;
};

/// The four computation routes for branching functions and the coset-character
/// normalization.  One engine per algebra; MultTables and oracle peels are
/// memoized across queries.
class BranchingEngine {
public:
    explicit BranchingEngine(AffineAlgebra alg);

    const AffineAlgebra& algebra() const { return alg_; }
    WeylGroup& weyl() { return weyl_; }
    TableStore& tables() { return store_; }

    void validate(const BranchingQuery& q) const;

    /// Brute-force tensor decomposition: convolve the two weight-multiplicity
    /// tables over h'-weights and d-degrees, then peel irreducible-module
    /// contributions degree by degree, higher finite weights first.
    BranchingResult branch_oracle(const BranchingQuery& q);

    /// Alternating Weyl sum over q^{(w*lambda1)(d)} ch_q(L_lambda2)^{(mu - w*lambda1)'};
    /// with swap set, lambda1 and lambda2 exchange roles.
    BranchingResult branch_bosonic_product(const BranchingQuery& q, bool swap = false);

    /// Alternating Weyl sum over q^{-(w*mu)(d)} ch_q(L_lambda1)^{(w*mu - lambda2)'};
    /// with swap set, lambda1 and lambda2 exchange roles.  Requires a
    /// certifiable truncation bound (level of the subtracted weight >= 1).
    BranchingResult branch_bosonic_fraction(const BranchingQuery& q, bool swap = false);

    /// Closed sl2-hat forms, one sum over p in Z per formula; coordinates are
    /// h_0-eigenvalues (i1 <= k1, i2 <= k2, j <= k1+k2).
    BranchingResult branch_sl2_closed(int form, long long i1, long long k1, long long i2,
                                      long long k2, long long j, long long N);

    /// Conformal weight Delta of a dominant level-k weight.
    Rat conformal_data(const LabelVec& lambda_labels, long long k) const;

    /// (offset, series): offset = Delta_{l1} + Delta_{l2} - Delta_{mu}; the
    /// series is the branching function computed by the oracle.
    std::pair<Rat, QSeries> coset_character(const BranchingQuery& q);

    /// Largest (w*mu)(d) that can still contribute to degrees <= N in the
    /// fraction formula with character module L_a and subtracted weight b.
    /// Throws "truncation bound not certifiable" when level(b) = 0.
    long long fraction_shift_cap(const Weight& a, const Weight& b, const LabelVec& mu,
                                 long long N) const;

private:
    struct PeelResult {
        std::map<LabelVec, std::vector<Int>> coeffs;  // dominant nu' -> c_n
        long long terms_used = 0;
    };
    std::shared_ptr<const PeelResult> peel(const Weight& l1, const Weight& l2, long long N);

    Rat finite_norm2(const LabelVec& labels) const;  // |finite part|^2 from full labels

    AffineAlgebra alg_;
    WeylGroup weyl_;
    TableStore store_;
    std::map<std::tuple<LabelVec, LabelVec, long long>, std::shared_ptr<const PeelResult>>
        peel_cache_;
};

}  // namespace branchkit
