#pragma once

#include <optional>
#include <string>
#include <vector>

#include "branchkit/numeric.hpp"

namespace branchkit {

enum class FiniteSeries { A, B, C, D, E, F, G };

struct FiniteType {
    FiniteSeries series;
    int rank;
};

/// Element of h* in coroot-evaluation coordinates: labels[i] = lambda(alpha_i^vee)
/// for i = 0..r, plus the d-coordinate.  Restriction to h' drops dval.
struct Weight {
    LabelVec labels;
    long long dval = 0;

    bool operator==(const Weight& o) const { return labels == o.labels && dval == o.dval; }
    bool operator<(const Weight& o) const {
        if (labels != o.labels) return labels < o.labels;
        return dval < o.dval;
    }
};

/// beta = sum_i n_i alpha_i over the affine simple roots, all n_i >= 0.
/// Under the d-convention used throughout, beta(d) = -n_0, so the weight
/// lambda - beta sits at d-degree lambda(d) + n_0.
struct RootVec {
    LabelVec n;

    long long n0() const { return n.empty() ? 0 : n[0]; }
    long long dval() const { return -n0(); }
    long long depth() const {
        long long s = 0;
        for (long long v : n) s += v;
        return s;
    }
    bool is_zero() const {
        for (long long v : n)
            if (v != 0) return false;
        return true;
    }
    bool operator==(const RootVec& o) const { return n == o.n; }
    bool operator<(const RootVec& o) const { return n < o.n; }
};

struct PosRoot {
    RootVec beta;
    int mult;
};

/// Static data of an untwisted affine Kac-Moody algebra built from a finite
/// simple type: generalized Cartan matrix, symmetrizer, marks/comarks and the
/// invariant bilinear pairing, normalized so the highest root has norm 2.
class AffineAlgebra {
public:
    static AffineAlgebra build(FiniteType type);
    static AffineAlgebra from_selector(const std::string& selector);

    FiniteType finite_type() const { return type_; }
    int rank() const { return rank_; }          // finite rank r
    int nodes() const { return rank_ + 1; }     // affine nodes 0..r
    const std::string& selector() const { return selector_; }

    long long gcm(int i, int j) const { return gcm_[i][j]; }
    const std::vector<LabelVec>& gcm_rows() const { return gcm_; }
    const std::vector<Rat>& sym() const { return sym_; }
    const LabelVec& marks() const { return marks_; }
    const LabelVec& comarks() const { return comarks_; }
    int imaginary_mult() const { return rank_; }
    long long coxeter_number() const { return coxeter_; }
    long long dual_coxeter_number() const { return dual_coxeter_; }

    long long level(const Weight& w) const;
    bool is_dominant(const Weight& w) const;
    Weight rho() const;  // rho(alpha_i^vee) = 1, rho(d) = 0

    /// Labels of lambda - beta.
    LabelVec labels_minus(const LabelVec& labels, const RootVec& beta) const;

    /// Exactly the positive roots of depth <= max_depth; real roots carry
    /// multiplicity 1 and n*delta carries multiplicity r.
    std::vector<PosRoot> positive_roots_up_to(long long max_depth) const;

    /// All dominant integral weights of the given level, dval = 0.
    std::vector<Weight> dominant_weights(long long k) const;

    // Invariant bilinear form.  The scaled variants multiply by scale()
    // (the lcm of symmetrizer denominators) and are exact integers.
    long long scale() const { return scale_; }
    long long pair_rr_scaled(const RootVec& a, const RootVec& b) const;
    long long pair_wr_scaled(const LabelVec& labels, const RootVec& b) const;
    Rat pairing(const RootVec& a, const RootVec& b) const;
    Rat pairing(const Weight& w, const RootVec& b) const;

    /// Form on the finite part only: takes finite labels (lambda(alpha_i^vee),
    /// i = 1..r) of both arguments.
    Rat finite_pairing(const LabelVec& fin_a, const LabelVec& fin_b) const;
    LabelVec finite_labels(const Weight& w) const;

    /// Height of the finite part: sum of its coordinates over the finite
    /// simple roots.
    Rat finite_height(const LabelVec& fin) const;

    /// Solve lambda_labels - A.n = nu_labels for the root coordinates n with
    /// n_0 = 0; the full solution family is n + t * marks, t integral.
    /// Throws on level mismatch; returns nullopt when no rational solution.
    std::optional<std::vector<Rat>> delta_family_base(const LabelVec& lambda_labels,
                                                      const LabelVec& nu_labels) const;

    /// Root coordinates of a root-lattice vector given by labels and dval;
    /// nullopt when the vector is not in the integral root lattice.
    std::optional<RootVec> root_coordinates(const LabelVec& labels, long long dval) const;

    const std::vector<LabelVec>& finite_positive_roots() const { return fin_pos_roots_; }
    const LabelVec& highest_root() const { return theta_; }

private:
    AffineAlgebra() = default;
    void construct();

    FiniteType type_{FiniteSeries::A, 1};
    int rank_ = 0;
    std::string selector_;
    std::vector<LabelVec> fin_gcm_;
    std::vector<LabelVec> gcm_;
    std::vector<Rat> sym_;
    LabelVec marks_, comarks_;
    long long coxeter_ = 0, dual_coxeter_ = 0;
    std::vector<LabelVec> fin_pos_roots_;  // coords over alpha_1..alpha_r
    LabelVec theta_;
    long long scale_ = 1;
    std::vector<LabelVec> gram_scaled_;    // scale * (alpha_i, alpha_j)
    LabelVec dsym_scaled_;                 // scale * d_i
    std::vector<std::vector<Rat>> fin_gcm_inv_;
};

Weight weight_add(const Weight& a, const Weight& b);
Weight weight_sub(const Weight& a, const Weight& b);

/// sl2-hat bridge between paper coordinates (i,k,m) and labels (k-i, i), dval m.
Weight sl2_weight_from_ikm(long long i, long long k, long long m);
void sl2_ikm_from_weight(const Weight& w, long long& i, long long& k, long long& m);

std::string labels_to_string(const LabelVec& labels);
LabelVec parse_labels(const std::string& text);

}  // namespace branchkit
