#include "branchkit/characters.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "branchkit/cache.hpp"

namespace branchkit {

namespace {

// Support of L_lambda within d-degree <= N: close {0} under weight strings,
// processed by increasing depth.  For mu = lambda - beta and each i the
// alpha_i string through mu extends q = p + mu(alpha_i^vee) steps down, where
// p counts the known steps up; every weight is reached this way.
std::set<LabelVec> support_up_to(const AffineAlgebra& alg, const Weight& lambda, long long N) {
    const int nodes = alg.nodes();
    std::set<LabelVec> support;
    std::map<long long, std::set<LabelVec>> pending;
    LabelVec zero(nodes, 0);
    pending[0].insert(zero);
    while (!pending.empty()) {
        auto bucket = pending.begin();
        long long depth = bucket->first;
        std::set<LabelVec> batch = std::move(bucket->second);
        pending.erase(bucket);
        for (const auto& beta : batch) {
            if (!support.insert(beta).second) continue;
            for (int i = 0; i < nodes; ++i) {
                long long mu_i = lambda.labels[i];
                for (int j = 0; j < nodes; ++j) mu_i -= alg.gcm(i, j) * beta[j];
                long long p = 0;
                LabelVec up = beta;
                while (true) {
                    up[i] -= 1;
                    if (up[i] < 0 || !support.count(up)) break;
                    ++p;
                }
                long long q = p + mu_i;
                LabelVec down = beta;
                for (long long j = 1; j <= q; ++j) {
                    down[i] += 1;
                    if (down[0] > N) break;
                    long long d = depth + j;
                    if (!support.count(down)) pending[d].insert(down);
                }
            }
        }
    }
    return support;
}

void validate_highest_weight(const AffineAlgebra& alg, const Weight& lambda) {
    if ((int)lambda.labels.size() != alg.nodes())
        throw std::invalid_argument("highest weight has wrong number of labels");
    if (!alg.is_dominant(lambda))
        throw std::invalid_argument("highest weight must be dominant integral");
    if (lambda.dval != 0)
        throw std::invalid_argument("highest weight must be normalized to lambda(d) = 0");
}

}  // namespace

MultTable weight_multiplicities_with_roots(const AffineAlgebra& alg, const Weight& lambda,
                                           long long N, std::span<const PosRoot> roots) {
    validate_highest_weight(alg, lambda);
    if (N < 0) throw std::invalid_argument("truncation must be nonnegative");

    std::set<LabelVec> support = support_up_to(alg, lambda, N);

    // The inner loop walks roots shallowest-first; accept any input order.
    std::vector<PosRoot> sorted_roots(roots.begin(), roots.end());
    std::stable_sort(sorted_roots.begin(), sorted_roots.end(),
                     [](const PosRoot& a, const PosRoot& b) {
                         return a.beta.depth() < b.beta.depth();
                     });

    // Order by depth; the recursion only looks upward.
    std::vector<const LabelVec*> order;
    order.reserve(support.size());
    for (const auto& b : support) order.push_back(&b);
    std::stable_sort(order.begin(), order.end(), [](const LabelVec* a, const LabelVec* b) {
        long long da = 0, db = 0;
        for (long long v : *a) da += v;
        for (long long v : *b) db += v;
        if (da != db) return da < db;
        return *a < *b;
    });

    MultTable table;
    table.algebra = alg.selector();
    table.lambda = lambda;
    table.trunc = N;

    const int nodes = alg.nodes();
    RootVec beta_rv, gamma_rv;
    beta_rv.n.assign(nodes, 0);
    for (const LabelVec* bp : order) {
        const LabelVec& beta = *bp;
        beta_rv.n = beta;
        if (beta_rv.is_zero()) {
            table.entries[beta] = 1;
            continue;
        }
        long long depth = beta_rv.depth();
        // scale * [ (lambda+rho,lambda+rho) - (mu+rho,mu+rho) ]
        //   = scale * [ 2(lambda+rho, beta) - (beta,beta) ]
        LabelVec lam_rho(nodes);
        for (int i = 0; i < nodes; ++i) lam_rho[i] = lambda.labels[i] + 1;
        long long den = 2 * alg.pair_wr_scaled(lam_rho, beta_rv) - alg.pair_rr_scaled(beta_rv, beta_rv);
        if (den == 0)
            throw std::runtime_error(
                "internal error: zero Freudenthal denominator at a nonzero depth");

        Int num = 0;
        for (const PosRoot& root : sorted_roots) {
            if (root.beta.depth() > depth) break;  // roots sorted by depth
            // Walk mu + j*alpha upward; weight strings are contiguous, so stop
            // at the first miss.
            long long s_lambda_alpha = alg.pair_wr_scaled(lambda.labels, root.beta);
            long long s_beta_alpha = alg.pair_rr_scaled(beta_rv, root.beta);
            long long s_alpha_alpha = alg.pair_rr_scaled(root.beta, root.beta);
            gamma_rv.n = beta;
            for (long long j = 1;; ++j) {
                bool ok = true;
                for (int i = 0; i < nodes; ++i) {
                    gamma_rv.n[i] -= root.beta.n[i];
                    if (gamma_rv.n[i] < 0) ok = false;
                }
                if (!ok) break;
                auto it = table.entries.find(gamma_rv.n);
                if (it == table.entries.end()) break;
                long long pair = s_lambda_alpha - s_beta_alpha + j * s_alpha_alpha;
                if (pair != 0) num += Int(root.mult) * pair * it->second;
            }
        }
        num *= 2;
        Int q, rem;
        boost::multiprecision::divide_qr(num, Int(den), q, rem);
        if (rem != 0)
            throw std::runtime_error("internal error: non-integral Freudenthal multiplicity");
        if (q <= 0)
            throw std::runtime_error("internal error: non-positive multiplicity on a weight");
        table.entries[beta] = std::move(q);
    }
    return table;
}

MultTable weight_multiplicities(const AffineAlgebra& alg, const Weight& lambda, long long N) {
    validate_highest_weight(alg, lambda);
    if (N < 0) throw std::invalid_argument("truncation must be nonnegative");
    std::set<LabelVec> support = support_up_to(alg, lambda, N);
    long long max_depth = 0;
    for (const auto& b : support) {
        long long d = 0;
        for (long long v : b) d += v;
        max_depth = std::max(max_depth, d);
    }
    std::vector<PosRoot> roots = alg.positive_roots_up_to(max_depth);
    return weight_multiplicities_with_roots(alg, lambda, N, roots);
}

QSeries weight_space_character(const AffineAlgebra& alg, const MultTable& table,
                               const LabelVec& nu_labels, long long N) {
    if (N > table.trunc)
        throw std::invalid_argument("weight_space_character: window exceeds table truncation");
    auto base = alg.delta_family_base(table.lambda.labels, nu_labels);  // throws on level mismatch
    QSeries out(0, N);
    if (!base) return out;
    const auto& marks = alg.marks();
    const int nodes = alg.nodes();
    // beta(t) = base + t * marks with n_0 = t; one candidate per degree.
    LabelVec beta(nodes);
    for (long long t = 0; t <= N; ++t) {
        bool ok = true;
        for (int i = 0; i < nodes && ok; ++i) {
            Rat v = (*base)[i] + Rat(t) * marks[i];
            if (boost::multiprecision::denominator(v) != 1) {
                ok = false;
                break;
            }
            Int num = boost::multiprecision::numerator(v);
            if (num < 0) {
                ok = false;
                break;
            }
            beta[i] = static_cast<long long>(num);
        }
        if (!ok) continue;
        const Int& m = table.mult(beta);
        if (m != 0) out.set_coeff(t, m);
    }
    return out;
}

StringFunction string_function(const AffineAlgebra& alg, const MultTable& table,
                               const LabelVec& mu_labels, long long N) {
    QSeries raw = weight_space_character(alg, table, mu_labels, N);
    StringFunction sf;
    if (raw.is_zero()) {
        sf.empty = true;
        sf.series = raw;
        return sf;
    }
    sf.offset = raw.first_nonzero();
    sf.series = raw.shifted(-sf.offset);
    return sf;
}

namespace {

using Poly = std::map<LabelVec, Int>;

void poly_add(Poly& p, const LabelVec& key, const Int& v) {
    if (v == 0) return;
    Int& slot = p[key];
    slot += v;
    if (slot == 0) p.erase(key);
}

// Multiply p by (1 - e^{-alpha})^mult, truncating at n_0 <= N.
Poly multiply_denominator_factor(const Poly& p, const RootVec& alpha, int mult, long long N) {
    // Binomial coefficients of (1 - x)^mult.
    std::vector<Int> binom(mult + 1);
    binom[0] = 1;
    for (int j = 1; j <= mult; ++j) binom[j] = binom[j - 1] * (mult - j + 1) / j;
    Poly out;
    const int nodes = (int)alpha.n.size();
    for (const auto& [key, c] : p) {
        LabelVec shifted = key;
        for (int j = 0; j <= mult; ++j) {
            if (j > 0)
                for (int i = 0; i < nodes; ++i) shifted[i] += alpha.n[i];
            if (shifted[0] > N) break;
            Int term = binom[j] * c;
            if (j % 2 == 1) term = -term;
            poly_add(out, shifted, term);
        }
    }
    return out;
}

}  // namespace

std::map<LabelVec, Int> character_identity_residual(const AffineAlgebra& alg, WeylGroup& weyl,
                                                    const Weight& lambda, long long N) {
    MultTable table = weight_multiplicities(alg, lambda, N);

    // Right-hand side: ch L_lambda * prod over positive roots with n_0 <= N.
    long long theta_ht = 0;
    for (long long v : alg.highest_root()) theta_ht += v;
    std::vector<PosRoot> roots = alg.positive_roots_up_to(N * alg.coxeter_number() + theta_ht);
    Poly rhs;
    rhs[LabelVec(alg.nodes(), 0)] = 1;
    for (const auto& root : roots) {
        if (root.beta.n0() > N) continue;
        rhs = multiply_denominator_factor(rhs, root.beta, root.mult, N);
    }
    {
        Poly prod;
        for (const auto& [beta, m] : table.entries) {
            for (const auto& [key, c] : rhs) {
                LabelVec sum(alg.nodes());
                long long n0 = beta[0] + key[0];
                if (n0 > N) continue;
                for (int i = 0; i < alg.nodes(); ++i) sum[i] = beta[i] + key[i];
                poly_add(prod, sum, m * c);
            }
        }
        rhs = std::move(prod);
    }

    // Left-hand side: sum over w of (-1)^{l(w)} e^{w*lambda}, recorded at
    // kappa = lambda - w*lambda.  Lengths beyond the d-shift bound cannot
    // reach degrees <= N.
    Poly residual = std::move(rhs);
    for (auto& [key, c] : residual) c = -c;
    for (int len = 0; weyl.min_dshift(len) <= N; ++len) {
        for (const auto& w : weyl.layer(len)) {
            Weight ws = weyl.shifted_action(w, lambda);
            long long m = ws.dval;
            if (m > N) continue;
            Weight kappa = weight_sub(lambda, ws);
            auto coords = alg.root_coordinates(kappa.labels, kappa.dval);
            if (!coords)
                throw std::runtime_error("internal error: w*lambda not in lambda - Q");
            for (long long v : coords->n)
                if (v < 0)
                    throw std::runtime_error("internal error: lambda - w*lambda not in Q+");
            poly_add(residual, coords->n, (len % 2 == 0) ? Int(1) : Int(-1));
        }
    }
    return residual;
}

std::shared_ptr<const MultTable> TableStore::get(const Weight& lambda, long long N) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = mem_.find(lambda.labels);
    if (it != mem_.end() && it->second->trunc >= N) return it->second;
    if (cache_dir_) {
        auto loaded = cache_load_best(*cache_dir_, alg_->selector(), lambda.labels, N);
        if (loaded) {
            auto sp = std::make_shared<const MultTable>(std::move(*loaded));
            mem_[lambda.labels] = sp;
            return sp;
        }
    }
    auto sp = std::make_shared<const MultTable>(weight_multiplicities(*alg_, lambda, N));
    mem_[lambda.labels] = sp;
    if (cache_dir_) cache_store(*cache_dir_, *sp);
    return sp;
}

}  // namespace branchkit
