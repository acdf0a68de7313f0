#include "branchkit/cartan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace branchkit {

namespace {

char series_letter(FiniteSeries s) {
    switch (s) {
        case FiniteSeries::A: return 'A';
        case FiniteSeries::B: return 'B';
        case FiniteSeries::C: return 'C';
        case FiniteSeries::D: return 'D';
        case FiniteSeries::E: return 'E';
        case FiniteSeries::F: return 'F';
        case FiniteSeries::G: return 'G';
    }
    return '?';
}

void check_type(FiniteType t) {
    int r = t.rank;
    bool ok = false;
    switch (t.series) {
        case FiniteSeries::A: ok = r >= 1; break;
        case FiniteSeries::B: ok = r >= 2; break;
        case FiniteSeries::C: ok = r >= 2; break;
        case FiniteSeries::D: ok = r >= 4; break;
        case FiniteSeries::E: ok = r >= 6 && r <= 8; break;
        case FiniteSeries::F: ok = r == 4; break;
        case FiniteSeries::G: ok = r == 2; break;
    }
    if (!ok) {
        std::ostringstream os;
        os << "invalid finite type " << series_letter(t.series) << r;
        throw std::invalid_argument(os.str());
    }
}

// Finite Cartan matrix a_{ij} = alpha_j(alpha_i^vee).  Node numbering is
// Bourbaki for the classical chains; G2 orders the long root first so that
// the affine marks come out as (1,2,3).
std::vector<LabelVec> finite_cartan(FiniteType t) {
    int r = t.rank;
    std::vector<LabelVec> a(r, LabelVec(r, 0));
    auto chain = [&](void) {
        for (int i = 0; i < r; ++i) {
            a[i][i] = 2;
            if (i + 1 < r) {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
    };
    switch (t.series) {
        case FiniteSeries::A:
            chain();
            break;
        case FiniteSeries::B:
            chain();
            a[r - 2][r - 1] = -1;
            a[r - 1][r - 2] = -2;  // alpha_r short
            break;
        case FiniteSeries::C:
            chain();
            a[r - 2][r - 1] = -2;  // alpha_r long
            a[r - 1][r - 2] = -1;
            break;
        case FiniteSeries::D:
            chain();
            a[r - 2][r - 1] = 0;
            a[r - 1][r - 2] = 0;
            a[r - 3][r - 1] = -1;
            a[r - 1][r - 3] = -1;
            break;
        case FiniteSeries::E: {
            // Bourbaki: node 2 attaches to node 4 of the chain 1-3-4-5-6(-7)(-8).
            chain();
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    if (i != j) a[i][j] = 0;
            auto link = [&](int i, int j) {
                a[i - 1][j - 1] = -1;
                a[j - 1][i - 1] = -1;
            };
            link(1, 3);
            link(3, 4);
            link(2, 4);
            link(4, 5);
            link(5, 6);
            if (r >= 7) link(6, 7);
            if (r >= 8) link(7, 8);
            break;
        }
        case FiniteSeries::F:
            chain();
            a[1][2] = -1;
            a[2][1] = -2;  // alpha_3, alpha_4 short
            break;
        case FiniteSeries::G:
            a[0][0] = 2;
            a[0][1] = -1;
            a[1][0] = -3;
            a[1][1] = 2;  // alpha_1 long, alpha_2 short
            break;
    }
    return a;
}

}  // namespace

AffineAlgebra AffineAlgebra::build(FiniteType type) {
    check_type(type);
    AffineAlgebra alg;
    alg.type_ = type;
    alg.rank_ = type.rank;
    {
        std::ostringstream os;
        os << series_letter(type.series) << type.rank << "~1";
        alg.selector_ = os.str();
    }
    alg.fin_gcm_ = finite_cartan(type);
    alg.construct();
    return alg;
}

AffineAlgebra AffineAlgebra::from_selector(const std::string& selector) {
    if (selector.size() < 4 || selector[selector.size() - 2] != '~')
        throw std::invalid_argument("unknown algebra selector '" + selector +
                                    "' (expected e.g. \"A1~1\")");
    char twist = selector.back();
    if (twist != '1')
        throw std::invalid_argument("only untwisted affine algebras (~1) are supported: '" +
                                    selector + "'");
    char letter = selector.front();
    FiniteSeries s;
    switch (letter) {
        case 'A': s = FiniteSeries::A; break;
        case 'B': s = FiniteSeries::B; break;
        case 'C': s = FiniteSeries::C; break;
        case 'D': s = FiniteSeries::D; break;
        case 'E': s = FiniteSeries::E; break;
        case 'F': s = FiniteSeries::F; break;
        case 'G': s = FiniteSeries::G; break;
        default:
            throw std::invalid_argument("unknown algebra selector '" + selector + "'");
    }
    std::string digits = selector.substr(1, selector.size() - 3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("unknown algebra selector '" + selector + "'");
    return build({s, std::stoi(digits)});
}

void AffineAlgebra::construct() {
    const int r = rank_;

    // Finite positive roots by height.  A root beta extends to beta + alpha_i
    // iff the alpha_i string through beta continues upward: q = p - <beta, alpha_i^vee>.
    std::set<LabelVec> roots;
    std::vector<LabelVec> frontier;
    for (int i = 0; i < r; ++i) {
        LabelVec e(r, 0);
        e[i] = 1;
        roots.insert(e);
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        std::vector<LabelVec> next;
        for (const auto& beta : frontier) {
            for (int i = 0; i < r; ++i) {
                long long pair = 0;  // <beta, alpha_i^vee>
                for (int j = 0; j < r; ++j) pair += fin_gcm_[i][j] * beta[j];
                long long p = 0;
                LabelVec down = beta;
                while (true) {
                    down[i] -= 1;
                    bool neg = down[i] < 0;
                    if (neg || !roots.count(down)) break;
                    ++p;
                }
                if (p - pair >= 1) {
                    LabelVec up = beta;
                    up[i] += 1;
                    if (roots.insert(up).second) next.push_back(up);
                }
            }
        }
        frontier = std::move(next);
    }
    fin_pos_roots_.assign(roots.begin(), roots.end());
    std::sort(fin_pos_roots_.begin(), fin_pos_roots_.end(),
              [](const LabelVec& a, const LabelVec& b) {
                  long long ha = 0, hb = 0;
                  for (long long v : a) ha += v;
                  for (long long v : b) hb += v;
                  if (ha != hb) return ha < hb;
                  return a < b;
              });

    // Highest root: the unique root of maximal height.
    theta_ = fin_pos_roots_.back();
    {
        long long top = 0;
        for (long long v : theta_) top += v;
        long long count = 0;
        for (const auto& rt : fin_pos_roots_) {
            long long h = 0;
            for (long long v : rt) h += v;
            if (h == top) ++count;
        }
        if (count != 1) throw std::logic_error("highest root is not unique");
    }

    // Symmetrizer: propagate d_j = d_i a_ij / a_ji along the Dynkin graph,
    // then rescale so (theta, theta) = 2.
    std::vector<Rat> dfin(r, Rat(0));
    dfin[0] = 1;
    std::vector<int> todo{0};
    std::vector<bool> seen(r, false);
    seen[0] = true;
    while (!todo.empty()) {
        int i = todo.back();
        todo.pop_back();
        for (int j = 0; j < r; ++j) {
            if (seen[j] || fin_gcm_[i][j] == 0) continue;
            dfin[j] = dfin[i] * fin_gcm_[i][j] / fin_gcm_[j][i];
            seen[j] = true;
            todo.push_back(j);
        }
    }
    for (bool s : seen)
        if (!s) throw std::logic_error("Dynkin diagram is disconnected");
    Rat theta_norm = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            theta_norm += Rat(theta_[i]) * theta_[j] * dfin[i] * fin_gcm_[i][j];
    for (auto& d : dfin) d *= Rat(2) / theta_norm;

    // Affinization: alpha_0 = delta - theta, alpha_0^vee = K - theta^vee.
    gcm_.assign(r + 1, LabelVec(r + 1, 0));
    gcm_[0][0] = 2;
    marks_.assign(r + 1, 0);
    comarks_.assign(r + 1, 0);
    marks_[0] = 1;
    comarks_[0] = 1;
    sym_.assign(r + 1, Rat(1));
    for (int i = 1; i <= r; ++i) {
        marks_[i] = theta_[i - 1];
        sym_[i] = dfin[i - 1];
        Rat cm = Rat(theta_[i - 1]) * dfin[i - 1];  // theta^vee coefficient
        Int num = boost::multiprecision::numerator(cm);
        Int den = boost::multiprecision::denominator(cm);
        if (den != 1) throw std::logic_error("comarks are not integral");
        comarks_[i] = static_cast<long long>(num);
        for (int j = 1; j <= r; ++j) gcm_[i][j] = fin_gcm_[i - 1][j - 1];
    }
    for (int j = 1; j <= r; ++j) {
        long long a0j = 0, aj0 = 0;
        for (int i = 1; i <= r; ++i) {
            a0j -= comarks_[i] * fin_gcm_[i - 1][j - 1];
            aj0 -= marks_[i] * fin_gcm_[j - 1][i - 1];
        }
        gcm_[0][j] = a0j;
        gcm_[j][0] = aj0;
    }
    coxeter_ = 0;
    dual_coxeter_ = 0;
    for (int i = 0; i <= r; ++i) {
        coxeter_ += marks_[i];
        dual_coxeter_ += comarks_[i];
    }

    // Kernel invariants: marks annihilate the GCM from the right, comarks
    // from the left, and the symmetrizer makes it symmetric.
    for (int i = 0; i <= r; ++i) {
        long long right = 0, left = 0;
        for (int j = 0; j <= r; ++j) {
            right += gcm_[i][j] * marks_[j];
            left += comarks_[j] * gcm_[j][i];
        }
        if (right != 0 || left != 0)
            throw std::logic_error("marks/comarks are not kernel vectors of the GCM");
    }
    for (int i = 0; i <= r; ++i)
        for (int j = 0; j <= r; ++j)
            if (sym_[i] * gcm_[i][j] != sym_[j] * gcm_[j][i])
                throw std::logic_error("symmetrizer fails on the affine GCM");

    // Integer-scaled Gram data for fast exact pairings.
    Int lcm = 1;
    for (const auto& d : sym_)
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(d));
    scale_ = static_cast<long long>(lcm);
    dsym_scaled_.assign(r + 1, 0);
    gram_scaled_.assign(r + 1, LabelVec(r + 1, 0));
    for (int i = 0; i <= r; ++i) {
        Rat v = sym_[i] * scale_;
        dsym_scaled_[i] =
            static_cast<long long>(Int(boost::multiprecision::numerator(v)));
        for (int j = 0; j <= r; ++j) gram_scaled_[i][j] = dsym_scaled_[i] * gcm_[i][j];
    }

    // Inverse of the finite Cartan matrix (exact Gauss-Jordan).
    std::vector<std::vector<Rat>> m(r, std::vector<Rat>(2 * r, Rat(0)));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) m[i][j] = fin_gcm_[i][j];
        m[i][r + i] = 1;
    }
    for (int col = 0; col < r; ++col) {
        int piv = -1;
        for (int i = col; i < r; ++i)
            if (m[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw std::logic_error("finite Cartan matrix is singular");
        std::swap(m[col], m[piv]);
        Rat inv = Rat(1) / m[col][col];
        for (auto& v : m[col]) v *= inv;
        for (int i = 0; i < r; ++i) {
            if (i == col || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (int j = 0; j < 2 * r; ++j) m[i][j] -= f * m[col][j];
        }
    }
    fin_gcm_inv_.assign(r, std::vector<Rat>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) fin_gcm_inv_[i][j] = m[i][r + j];
}

long long AffineAlgebra::level(const Weight& w) const {
    if ((int)w.labels.size() != rank_ + 1)
        throw std::invalid_argument("weight has wrong number of labels");
    long long lv = 0;
    for (int i = 0; i <= rank_; ++i) lv += comarks_[i] * w.labels[i];
    return lv;
}

bool AffineAlgebra::is_dominant(const Weight& w) const {
    if ((int)w.labels.size() != rank_ + 1) return false;
    for (long long l : w.labels)
        if (l < 0) return false;
    return true;
}

Weight AffineAlgebra::rho() const {
    return Weight{LabelVec(rank_ + 1, 1), 0};
}

LabelVec AffineAlgebra::labels_minus(const LabelVec& labels, const RootVec& beta) const {
    LabelVec out(rank_ + 1);
    for (int i = 0; i <= rank_; ++i) {
        long long v = labels[i];
        for (int j = 0; j <= rank_; ++j) v -= gcm_[i][j] * beta.n[j];
        out[i] = v;
    }
    return out;
}

std::vector<PosRoot> AffineAlgebra::positive_roots_up_to(long long max_depth) const {
    std::vector<PosRoot> out;
    long long theta_ht = 0;
    for (long long v : theta_) theta_ht += v;
    for (long long n = 0;; ++n) {
        long long base = n * coxeter_;
        if (base - theta_ht > max_depth) break;
        if (n >= 1 && base <= max_depth) {
            RootVec delta_n;
            delta_n.n.assign(rank_ + 1, 0);
            for (int i = 0; i <= rank_; ++i) delta_n.n[i] = n * marks_[i];
            out.push_back({delta_n, rank_});
        }
        for (const auto& fin : fin_pos_roots_) {
            long long ht = 0;
            for (long long v : fin) ht += v;
            // n*delta + alpha
            if (base + ht <= max_depth) {
                RootVec rv;
                rv.n.assign(rank_ + 1, 0);
                rv.n[0] = n;
                for (int i = 1; i <= rank_; ++i) rv.n[i] = n * marks_[i] + fin[i - 1];
                out.push_back({rv, 1});
            }
            // n*delta - alpha
            if (n >= 1 && base - ht <= max_depth) {
                RootVec rv;
                rv.n.assign(rank_ + 1, 0);
                rv.n[0] = n;
                bool ok = true;
                for (int i = 1; i <= rank_; ++i) {
                    rv.n[i] = n * marks_[i] - fin[i - 1];
                    if (rv.n[i] < 0) ok = false;
                }
                if (!ok) throw std::logic_error("negative coordinate in affine root");
                out.push_back({rv, 1});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const PosRoot& a, const PosRoot& b) {
        long long da = a.beta.depth(), db = b.beta.depth();
        if (da != db) return da < db;
        return a.beta.n < b.beta.n;
    });
    return out;
}

std::vector<Weight> AffineAlgebra::dominant_weights(long long k) const {
    if (k < 0) throw std::invalid_argument("level must be nonnegative");
    std::vector<Weight> out;
    LabelVec stack(rank_ + 1, 0);
    auto emit = [&](auto&& self, int pos, long long remaining) -> void {
        if (pos > rank_) {
            if (remaining == 0) out.push_back(Weight{stack, 0});
            return;
        }
        long long cm = comarks_[pos];
        for (long long v = 0; v * cm <= remaining; ++v) {
            stack[pos] = v;
            self(self, pos + 1, remaining - v * cm);
        }
        stack[pos] = 0;
    };
    emit(emit, 0, k);
    std::sort(out.begin(), out.end());
    return out;
}

long long AffineAlgebra::pair_rr_scaled(const RootVec& a, const RootVec& b) const {
    long long s = 0;
    for (int i = 0; i <= rank_; ++i) {
        if (a.n[i] == 0) continue;
        long long row = 0;
        for (int j = 0; j <= rank_; ++j) row += gram_scaled_[i][j] * b.n[j];
        s += a.n[i] * row;
    }
    return s;
}

long long AffineAlgebra::pair_wr_scaled(const LabelVec& labels, const RootVec& b) const {
    long long s = 0;
    for (int j = 0; j <= rank_; ++j) s += b.n[j] * dsym_scaled_[j] * labels[j];
    return s;
}

Rat AffineAlgebra::pairing(const RootVec& a, const RootVec& b) const {
    return Rat(pair_rr_scaled(a, b), scale_);
}

Rat AffineAlgebra::pairing(const Weight& w, const RootVec& b) const {
    if ((int)w.labels.size() != rank_ + 1)
        throw std::invalid_argument("weight has wrong number of labels");
    return Rat(pair_wr_scaled(w.labels, b), scale_);
}

LabelVec AffineAlgebra::finite_labels(const Weight& w) const {
    return LabelVec(w.labels.begin() + 1, w.labels.end());
}

Rat AffineAlgebra::finite_pairing(const LabelVec& fin_a, const LabelVec& fin_b) const {
    if ((int)fin_a.size() != rank_ || (int)fin_b.size() != rank_)
        throw std::invalid_argument("finite_pairing expects r labels");
    // (nu_a, nu_b) = sum_j c_j d_j b_j with c = Afin^{-1} a.
    Rat s = 0;
    for (int j = 0; j < rank_; ++j) {
        if (fin_b[j] == 0) continue;
        Rat cj = 0;
        for (int i = 0; i < rank_; ++i) cj += fin_gcm_inv_[j][i] * fin_a[i];
        s += cj * sym_[j + 1] * fin_b[j];
    }
    return s;
}

Rat AffineAlgebra::finite_height(const LabelVec& fin) const {
    if ((int)fin.size() != rank_)
        throw std::invalid_argument("finite_height expects r labels");
    Rat h = 0;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) h += fin_gcm_inv_[i][j] * fin[j];
    return h;
}

std::optional<std::vector<Rat>> AffineAlgebra::delta_family_base(
    const LabelVec& lambda_labels, const LabelVec& nu_labels) const {
    if ((int)lambda_labels.size() != rank_ + 1 || (int)nu_labels.size() != rank_ + 1)
        throw std::invalid_argument("weight has wrong number of labels");
    LabelVec g(rank_ + 1);
    long long level_diff = 0;
    for (int i = 0; i <= rank_; ++i) {
        g[i] = lambda_labels[i] - nu_labels[i];
        level_diff += comarks_[i] * g[i];
    }
    if (level_diff != 0) {
        std::ostringstream os;
        os << "level mismatch: target weight differs in level by " << level_diff;
        throw std::invalid_argument(os.str());
    }
    // With n_0 = 0 the finite rows decouple: Afin . n_fin = g_fin - g-column-0 part.
    std::vector<Rat> n(rank_ + 1, Rat(0));
    for (int i = 1; i <= rank_; ++i) {
        Rat v = 0;
        for (int j = 1; j <= rank_; ++j) v += fin_gcm_inv_[i - 1][j - 1] * g[j];
        n[i] = v;
    }
    // Row 0 must be consistent by the level match.
    Rat row0 = 0;
    for (int j = 1; j <= rank_; ++j) row0 += Rat(gcm_[0][j]) * n[j];
    if (row0 != g[0]) throw std::logic_error("inconsistent restriction system");
    return n;
}

std::optional<RootVec> AffineAlgebra::root_coordinates(const LabelVec& labels,
                                                       long long dval) const {
    // beta = sum n_i alpha_i with beta(d) = -n_0, so n_0 = -dval.
    long long n0 = -dval;
    std::vector<Rat> n(rank_ + 1, Rat(0));
    n[0] = n0;
    for (int i = 1; i <= rank_; ++i) {
        Rat v = 0;
        for (int j = 1; j <= rank_; ++j)
            v += fin_gcm_inv_[i - 1][j - 1] * (Rat(labels[j]) - Rat(gcm_[j][0]) * n0);
        n[i] = v;
    }
    RootVec rv;
    rv.n.assign(rank_ + 1, 0);
    for (int i = 0; i <= rank_; ++i) {
        if (boost::multiprecision::denominator(n[i]) != 1) return std::nullopt;
        rv.n[i] = static_cast<long long>(Int(boost::multiprecision::numerator(n[i])));
    }
    // Check row 0 too.
    long long row0 = 0;
    for (int j = 0; j <= rank_; ++j) row0 += gcm_[0][j] * rv.n[j];
    if (row0 != labels[0]) return std::nullopt;
    return rv;
}

Weight weight_add(const Weight& a, const Weight& b) {
    if (a.labels.size() != b.labels.size())
        throw std::invalid_argument("weight size mismatch");
    Weight w;
    w.labels.resize(a.labels.size());
    for (size_t i = 0; i < a.labels.size(); ++i) w.labels[i] = a.labels[i] + b.labels[i];
    w.dval = a.dval + b.dval;
    return w;
}

Weight weight_sub(const Weight& a, const Weight& b) {
    if (a.labels.size() != b.labels.size())
        throw std::invalid_argument("weight size mismatch");
    Weight w;
    w.labels.resize(a.labels.size());
    for (size_t i = 0; i < a.labels.size(); ++i) w.labels[i] = a.labels[i] - b.labels[i];
    w.dval = a.dval - b.dval;
    return w;
}

Weight sl2_weight_from_ikm(long long i, long long k, long long m) {
    return Weight{LabelVec{k - i, i}, m};
}

void sl2_ikm_from_weight(const Weight& w, long long& i, long long& k, long long& m) {
    if (w.labels.size() != 2) throw std::invalid_argument("not an sl2-hat weight");
    i = w.labels[1];
    k = w.labels[0] + w.labels[1];
    m = w.dval;
}

std::string labels_to_string(const LabelVec& labels) {
    std::ostringstream os;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) os << ",";
        os << labels[i];
    }
    return os.str();
}

LabelVec parse_labels(const std::string& text) {
    LabelVec out;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) throw std::invalid_argument("malformed weight '" + text + "'");
        size_t pos = 0;
        long long v = std::stoll(cur, &pos);
        if (pos != cur.size()) throw std::invalid_argument("malformed weight '" + text + "'");
        out.push_back(v);
        cur.clear();
    };
    for (char c : text) {
        if (c == ',')
            flush();
        else if (c == ' ')
            continue;
        else
            cur.push_back(c);
    }
    flush();
    return out;
}

}  // namespace branchkit
