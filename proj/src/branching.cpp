#include "branchkit/branching.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace branchkit {

BranchingEngine::BranchingEngine(AffineAlgebra alg)
    : alg_(std::move(alg)), weyl_(alg_), store_(alg_) {}

void BranchingEngine::validate(const BranchingQuery& q) const {
    const size_t nodes = alg_.nodes();
    auto check = [&](const char* name, const LabelVec& labels) {
        if (labels.size() != nodes) {
            std::ostringstream os;
            os << name << " has " << labels.size() << " labels, " << alg_.selector()
               << " needs " << nodes;
            throw std::invalid_argument(os.str());
        }
        for (long long l : labels)
            if (l < 0)
                throw std::invalid_argument(std::string(name) + " must be dominant integral");
    };
    check("lambda1", q.lambda1.labels);
    check("lambda2", q.lambda2.labels);
    check("mu", q.mu);
    if (q.lambda1.dval != 0 || q.lambda2.dval != 0)
        throw std::invalid_argument("weights must be normalized to d-value 0");
    if (q.trunc < 0) throw std::invalid_argument("truncation must be nonnegative");
    long long k1 = alg_.level(q.lambda1);
    long long k2 = alg_.level(q.lambda2);
    long long kmu = alg_.level(Weight{q.mu, 0});
    if (kmu != k1 + k2) {
        std::ostringstream os;
        os << "level mismatch: level(mu) = " << kmu << " but level(lambda1) + level(lambda2) = "
           << k1 + k2;
        throw std::invalid_argument(os.str());
    }
}

Rat BranchingEngine::finite_norm2(const LabelVec& labels) const {
    LabelVec fin(labels.begin() + 1, labels.end());
    return alg_.finite_pairing(fin, fin);
}

std::shared_ptr<const BranchingEngine::PeelResult> BranchingEngine::peel(const Weight& l1,
                                                                         const Weight& l2,
                                                                         long long N) {
    auto key = std::make_tuple(l1.labels, l2.labels, N);
    auto cached = peel_cache_.find(key);
    if (cached != peel_cache_.end()) return cached->second;

    const int nodes = alg_.nodes();
    long long k = alg_.level(l1) + alg_.level(l2);
    std::vector<Weight> doms = alg_.dominant_weights(k);

    // Tensor-product weight multiplicities at dominant h'-weights.
    std::map<LabelVec, std::vector<Int>> tensor;
    {
        std::map<LabelVec, size_t> domset;
        for (size_t i = 0; i < doms.size(); ++i) domset[doms[i].labels] = i;
        auto t1 = store_.get(l1, N);
        auto t2 = store_.get(l2, N);
        LabelVec nu(nodes);
        for (const auto& [b1, m1] : t1->entries) {
            if (b1[0] > N) continue;
            // labels of l1 - b1, reused across the inner loop
            LabelVec part(nodes);
            for (int i = 0; i < nodes; ++i) {
                long long v = l1.labels[i] + l2.labels[i];
                for (int j = 0; j < nodes; ++j) v -= alg_.gcm(i, j) * b1[j];
                part[i] = v;
            }
            for (const auto& [b2, m2] : t2->entries) {
                long long n = b1[0] + b2[0];
                if (n > N) continue;
                for (int i = 0; i < nodes; ++i) {
                    long long v = part[i];
                    for (int j = 0; j < nodes; ++j) v -= alg_.gcm(i, j) * b2[j];
                    nu[i] = v;
                }
                auto it = domset.find(nu);
                if (it == domset.end()) continue;
                auto& vec = tensor[nu];
                if (vec.empty()) vec.assign(N + 1, Int(0));
                vec[n] += m1 * m2;
            }
        }
    }

    // Peel in an order compatible with finite dominance: higher finite
    // weights first (height descending, then lexicographically descending).
    std::vector<size_t> order(doms.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<Rat> heights(doms.size());
    for (size_t i = 0; i < doms.size(); ++i)
        heights[i] = alg_.finite_height(alg_.finite_labels(doms[i]));
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        if (heights[x] != heights[y]) return heights[x] > heights[y];
        return doms[x].labels > doms[y].labels;
    });

    // Weight-space characters of each L_{tau'} at each dominant nu'.
    std::vector<std::shared_ptr<const MultTable>> dom_tables(doms.size());
    for (size_t i = 0; i < doms.size(); ++i) dom_tables[i] = store_.get(doms[i], N);
    std::vector<std::vector<std::vector<Int>>> wsc(doms.size());
    for (size_t t = 0; t < doms.size(); ++t) {
        wsc[t].resize(doms.size());
        for (size_t v = 0; v < doms.size(); ++v) {
            QSeries s = weight_space_character(alg_, *dom_tables[t], doms[v].labels, N);
            std::vector<Int> coeffs(N + 1, Int(0));
            for (const auto& [d, cval] : s.coeffs()) coeffs[d] = cval;
            wsc[t][v] = std::move(coeffs);
        }
    }

    auto result = std::make_shared<PeelResult>();
    std::vector<std::vector<Int>> c(doms.size(), std::vector<Int>(N + 1, Int(0)));
    for (long long n = 0; n <= N; ++n) {
        for (size_t oi = 0; oi < order.size(); ++oi) {
            size_t v = order[oi];
            Int acc = 0;
            auto it = tensor.find(doms[v].labels);
            if (it != tensor.end()) acc = it->second[n];
            for (size_t t = 0; t < doms.size(); ++t) {
                for (long long m = 0; m <= n; ++m) {
                    if (c[t][m] == 0) continue;
                    const Int& w = wsc[t][v][n - m];
                    if (w != 0) acc -= c[t][m] * w;
                }
            }
            if (acc < 0)
                throw std::runtime_error(
                    "internal consistency failure: negative coefficient in oracle peel");
            c[v][n] = std::move(acc);
            ++result->terms_used;
        }
    }
    for (size_t v = 0; v < doms.size(); ++v) result->coeffs[doms[v].labels] = std::move(c[v]);

    auto sp = std::shared_ptr<const PeelResult>(result);
    peel_cache_[key] = sp;
    return sp;
}

BranchingResult BranchingEngine::branch_oracle(const BranchingQuery& q) {
    validate(q);
    auto pr = peel(q.lambda1, q.lambda2, q.trunc);
    QSeries out(0, q.trunc);
    auto it = pr->coeffs.find(q.mu);
    if (it != pr->coeffs.end())
        for (long long n = 0; n <= q.trunc; ++n)
            if (it->second[n] != 0) out.set_coeff(n, it->second[n]);
    return {out, "oracle", pr->terms_used, q.trunc};
}

BranchingResult BranchingEngine::branch_bosonic_product(const BranchingQuery& q, bool swap) {
    validate(q);
    const Weight& resolved = swap ? q.lambda2 : q.lambda1;
    const Weight& charmod = swap ? q.lambda1 : q.lambda2;
    const long long N = q.trunc;
    auto tbl = store_.get(charmod, N);
    QSeries res(0, N);
    int len = 0;
    for (; weyl_.min_dshift(len) <= N; ++len) {
        for (const auto& w : weyl_.layer(len)) {
            Weight wa = weyl_.shifted_action(w, resolved);
            long long m = wa.dval;
            if (m < 0)
                throw std::runtime_error("internal error: negative d-shift in Weyl sum");
            if (m > N) continue;
            LabelVec sigma(alg_.nodes());
            for (int i = 0; i < alg_.nodes(); ++i) sigma[i] = q.mu[i] - wa.labels[i];
            QSeries ser = weight_space_character(alg_, *tbl, sigma, N - m);
            if (ser.is_zero()) continue;
            QSeries term = ser.shifted(m);
            res = (len % 2 == 0) ? res + term : res - term;
        }
    }
    return {res, swap ? "bosonic1-swap" : "bosonic1", len, N};
}

long long BranchingEngine::fraction_shift_cap(const Weight& a, const Weight& b,
                                              const LabelVec& mu, long long N) const {
    long long ka = alg_.level(a);
    long long kb = alg_.level(b);
    long long k = ka + kb;
    long long hv = alg_.dual_coxeter_number();
    if (kb == 0)
        throw std::runtime_error(
            "truncation bound not certifiable: the subtracted weight has level 0");
    LabelVec mu_rho = mu;
    for (auto& l : mu_rho) l += 1;
    LabelVec a_rho = a.labels;
    for (auto& l : a_rho) l += 1;
    Rat F = finite_norm2(mu_rho);
    Rat G = F + finite_norm2(b.labels) - finite_norm2(a_rho);
    bool b_fin_zero = true;
    for (size_t i = 1; i < b.labels.size(); ++i)
        if (b.labels[i] != 0) b_fin_zero = false;
    Rat mstar;
    if (b_fin_zero) {
        mstar = (Rat(2 * N * (ka + hv)) - G) / Rat(2 * kb);
    } else {
        Rat H = Rat(2) * finite_norm2(b.labels) * (k + hv) / kb + Rat(kb) * F / (2 * (k + hv));
        mstar = (Rat(2 * N * (ka + hv)) - G + H) / Rat(kb);
    }
    return static_cast<long long>(rat_floor(mstar));
}

BranchingResult BranchingEngine::branch_bosonic_fraction(const BranchingQuery& q, bool swap) {
    validate(q);
    const Weight& charmod = swap ? q.lambda2 : q.lambda1;
    const Weight& subtracted = swap ? q.lambda1 : q.lambda2;
    const long long N = q.trunc;
    long long mcap = fraction_shift_cap(charmod, subtracted, q.mu, N);

    Weight muw{q.mu, 0};
    struct Term {
        int len;
        long long m;
        LabelVec sigma;
    };
    std::vector<Term> terms;
    long long maxm = 0;
    int len = 0;
    for (; weyl_.min_dshift(len) <= mcap; ++len) {
        for (const auto& w : weyl_.layer(len)) {
            Weight wm = weyl_.shifted_action(w, muw);
            long long m = wm.dval;
            if (m < 0)
                throw std::runtime_error("internal error: negative d-shift in Weyl sum");
            if (m > mcap) continue;
            LabelVec sigma(alg_.nodes());
            for (int i = 0; i < alg_.nodes(); ++i)
                sigma[i] = wm.labels[i] - subtracted.labels[i];
            terms.push_back({len, m, std::move(sigma)});
            maxm = std::max(maxm, m);
        }
    }
    auto tbl = store_.get(charmod, N + maxm);
    QSeries res(-maxm, N);
    for (const auto& t : terms) {
        QSeries ser = weight_space_character(alg_, *tbl, t.sigma, N + t.m);
        if (ser.is_zero()) continue;
        QSeries term = ser.shifted(-t.m);
        res = (t.len % 2 == 0) ? res + term : res - term;
    }
    for (const auto& [d, c] : res.coeffs())
        if (d < 0)
            throw std::runtime_error(
                "internal consistency failure: nonzero coefficient at negative degree");
    return {res.restricted_below(0), swap ? "bosonic2-swap" : "bosonic2", len, N};
}

BranchingResult BranchingEngine::branch_sl2_closed(int form, long long i1, long long k1,
                                                   long long i2, long long k2, long long j,
                                                   long long N) {
    if (alg_.selector() != "A1~1")
        throw std::invalid_argument("closed-form methods require algebra A1~1");
    if (i1 < 0 || i1 > k1 || i2 < 0 || i2 > k2)
        throw std::invalid_argument("coordinates out of range: need 0 <= i <= k");
    if (j < 0 || j > k1 + k2)
        throw std::invalid_argument("coordinates out of range: need 0 <= j <= k1+k2");
    if (N < 0) throw std::invalid_argument("truncation must be nonnegative");
    const long long k = k1 + k2;

    if (form == 1) {
        Weight l2 = sl2_weight_from_ikm(i2, k2, 0);
        auto tbl = store_.get(l2, N);
        QSeries res(0, N);
        long long used = 0;
        for (long long p = -(N + 1); p <= N + 1; ++p) {
            long long e = p * p * (k1 + 2) + p * (i1 + 1);
            if (e > N) continue;
            if (e < 0) throw std::runtime_error("internal error: negative exponent in closed form");
            long long up = 2 * p * (k1 + 2) - j + i1;
            long long dn = 2 * p * (k1 + 2) + j + i1 + 2;
            QSeries ser = weight_space_character(alg_, *tbl, LabelVec{k2 - up, up}, N - e) -
                          weight_space_character(alg_, *tbl, LabelVec{k2 - dn, dn}, N - e);
            if (!ser.is_zero()) res += ser.shifted(e);
            ++used;
        }
        return {res, "sl2-closed-1", used, N};
    }
    if (form == 2) {
        Weight a = sl2_weight_from_ikm(i1, k1, 0);
        Weight b = sl2_weight_from_ikm(i2, k2, 0);
        LabelVec mu{k - j, j};
        long long mcap = fraction_shift_cap(a, b, mu, N);
        struct PTerm {
            long long m;
            long long up, dn;
        };
        std::vector<PTerm> terms;
        long long maxm = 0;
        for (long long p = -(mcap + 2); p <= mcap + 2; ++p) {
            long long m = (k + 2) * p * p + (j + 1) * p;
            if (m < 0)
                throw std::runtime_error("internal error: negative d-shift in closed form");
            if (m > mcap) continue;
            terms.push_back({m, 2 * (k + 2) * p + j - i2, 2 * (k + 2) * p + j + i2 + 2});
            maxm = std::max(maxm, m);
        }
        auto tbl = store_.get(a, N + maxm);
        QSeries res(-maxm, N);
        for (const auto& t : terms) {
            QSeries ser =
                weight_space_character(alg_, *tbl, LabelVec{k1 - t.up, t.up}, N + t.m) -
                weight_space_character(alg_, *tbl, LabelVec{k1 - t.dn, t.dn}, N + t.m);
            if (!ser.is_zero()) res += ser.shifted(-t.m);
        }
        for (const auto& [d, c] : res.coeffs())
            if (d < 0)
                throw std::runtime_error(
                    "internal consistency failure: nonzero coefficient at negative degree");
        return {res.restricted_below(0), "sl2-closed-2", (long long)terms.size(), N};
    }
    throw std::invalid_argument("closed form must be 1 or 2");
}

Rat BranchingEngine::conformal_data(const LabelVec& lambda_labels, long long k) const {
    if ((int)lambda_labels.size() != alg_.nodes())
        throw std::invalid_argument("weight has wrong number of labels");
    for (long long l : lambda_labels)
        if (l < 0) throw std::invalid_argument("weight must be dominant");
    long long lv = alg_.level(Weight{lambda_labels, 0});
    if (lv != k) {
        std::ostringstream os;
        os << "level mismatch: weight has level " << lv << ", expected " << k;
        throw std::invalid_argument(os.str());
    }
    LabelVec fin(lambda_labels.begin() + 1, lambda_labels.end());
    LabelVec ones(alg_.rank(), 1);
    Rat num = alg_.finite_pairing(fin, fin) + 2 * alg_.finite_pairing(fin, ones);
    return num / (2 * Rat(k + alg_.dual_coxeter_number()));
}

std::pair<Rat, QSeries> BranchingEngine::coset_character(const BranchingQuery& q) {
    validate(q);
    long long k1 = alg_.level(q.lambda1);
    long long k2 = alg_.level(q.lambda2);
    Rat offset = conformal_data(q.lambda1.labels, k1) + conformal_data(q.lambda2.labels, k2) -
                 conformal_data(q.mu, k1 + k2);
    return {offset, branch_oracle(q).series};
}

}  // namespace branchkit
