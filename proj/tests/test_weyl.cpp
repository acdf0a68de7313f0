#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "branchkit/qseries.hpp"
#include "branchkit/weyl.hpp"

using namespace branchkit;

namespace {

std::vector<long long> matmul(const std::vector<long long>& a, const std::vector<long long>& b,
                              int n) {
    std::vector<long long> p(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            long long v = a[i * n + k];
            if (v == 0) continue;
            for (int j = 0; j < n; ++j) p[i * n + j] += v * b[k * n + j];
        }
    return p;
}

// Poincare series of the affine Weyl group: P_fin(t) / prod_i (1 - t^{m_i})
// with m_i the exponents of the finite group.  An independent oracle for the
// BFS layer sizes.
std::vector<long long> poincare_layer_sizes(const std::vector<int>& exponents, int L) {
    // P_fin = prod_i (1 + t + ... + t^{m_i})
    QSeries p = QSeries::one(L);
    for (int m : exponents) {
        std::map<Deg, Int> c;
        for (int j = 0; j <= m && j <= L; ++j) c[j] = 1;
        p = p * QSeries(0, L, std::move(c));
    }
    for (int m : exponents) {
        std::map<Deg, Int> c;
        for (int j = 0; j * m <= L; ++j) c[j * m] = 1;
        p = p * QSeries(0, L, std::move(c));
    }
    std::vector<long long> sizes(L + 1, 0);
    for (int l = 0; l <= L; ++l) sizes[l] = static_cast<long long>(p.coeff(l));
    return sizes;
}

struct IKM {
    long long i, k, m;
    bool operator==(const IKM& o) const { return i == o.i && k == o.k && m == o.m; }
    bool operator<(const IKM& o) const {
        return std::tie(i, k, m) < std::tie(o.i, o.k, o.m);
    }
};

IKM shifted_ikm(WeylGroup& weyl, const WeylElement& w, long long i, long long k, long long m) {
    Weight res = weyl.shifted_action(w, sl2_weight_from_ikm(i, k, m));
    IKM out;
    sl2_ikm_from_weight(res, out.i, out.k, out.m);
    return out;
}

// The two closed-form lines at length s.
IKM line_plus(long long s, long long i, long long k, long long m) {
    if (s % 2 == 0) {
        long long n = s / 2;
        return {i + 2 * n * (k + 2), k, m + n * (n * (k + 2) + i + 1)};
    }
    long long n = (s + 1) / 2;
    return {-i - 2 + 2 * n * (k + 2), k, m + n * (n * (k + 2) - i - 1)};
}

IKM line_minus(long long s, long long i, long long k, long long m) {
    if (s % 2 == 0) {
        long long n = s / 2;
        return {i - 2 * n * (k + 2), k, m + n * (n * (k + 2) - i - 1)};
    }
    long long n = (s - 1) / 2;
    return {-i - 2 - 2 * n * (k + 2), k, m + n * (n * (k + 2) + i + 1)};
}

}  // namespace

TEST_CASE("simple reflections are involutions fixing level") {
    for (const char* sel : {"A1~1", "A2~1", "G2~1"}) {
        AffineAlgebra alg = AffineAlgebra::from_selector(sel);
        WeylGroup weyl(alg);
        const int n = alg.nodes() + 1;
        for (int i = 0; i <= alg.rank(); ++i) {
            WeylElement s = weyl.simple_reflection(i);
            auto sq = matmul(s.matrix(), s.matrix(), n);
            std::vector<long long> id(n * n, 0);
            for (int d = 0; d < n; ++d) id[d * n + d] = 1;
            CHECK(sq == id);
            Weight w{LabelVec(alg.nodes(), 1), 3};
            Weight img = s.apply(w);
            CHECK(alg.level(img) == alg.level(w));
            if (i != 0) CHECK(img.dval == w.dval);
        }
        CHECK_THROWS_AS(weyl.simple_reflection(alg.rank() + 1), std::invalid_argument);
        CHECK_THROWS_AS(weyl.simple_reflection(-1), std::invalid_argument);
    }
}

TEST_CASE("s_1 negates the finite weight, s_0 shifts dval") {
    AffineAlgebra alg = AffineAlgebra::from_selector("A1~1");
    WeylGroup weyl(alg);
    // plain action in paper coordinates: s_1 sends i -> -i, m unchanged
    Weight w = sl2_weight_from_ikm(3, 5, 2);
    Weight s1w = weyl.simple_reflection(1).apply(w);
    long long i, k, m;
    sl2_ikm_from_weight(s1w, i, k, m);
    CHECK(i == -3);
    CHECK(k == 5);
    CHECK(m == 2);
    // s_0 on labels (k-i, i): dval gains l_0 = k-i
    Weight s0w = weyl.simple_reflection(0).apply(w);
    CHECK(s0w.dval == w.dval + (5 - 3));
    CHECK(alg.level(s0w) == 5);
}

TEST_CASE("A1~1 layer sizes are 1,2,2,2,...") {
    AffineAlgebra alg = AffineAlgebra::from_selector("A1~1");
    WeylGroup weyl(alg);
    auto sizes = weyl.layer_sizes(6);
    CHECK(sizes == std::vector<size_t>{1, 2, 2, 2, 2, 2, 2});
    CHECK(weyl.layer(0).size() == 1);
    CHECK(weyl.layer(0)[0].is_identity());
}

TEST_CASE("layer sizes match the Poincare series") {
    struct Case {
        const char* sel;
        std::vector<int> exponents;
        int L;
    };
    for (const Case& c : {Case{"A1~1", {1}, 10}, Case{"A2~1", {1, 2}, 8},
                          Case{"C2~1", {1, 3}, 8}, Case{"G2~1", {1, 5}, 8}}) {
        AffineAlgebra alg = AffineAlgebra::from_selector(c.sel);
        WeylGroup weyl(alg);
        auto sizes = weyl.layer_sizes(c.L);
        auto expect = poincare_layer_sizes(c.exponents, c.L);
        for (int l = 0; l <= c.L; ++l) {
            INFO(c.sel << " length " << l);
            CHECK((long long)sizes[l] == expect[l]);
        }
    }
}

TEST_CASE("A2~1 layer two has six elements") {
    AffineAlgebra alg = AffineAlgebra::from_selector("A2~1");
    WeylGroup weyl(alg);
    auto sizes = weyl.layer_sizes(4);
    CHECK(sizes == std::vector<size_t>{1, 3, 6, 9, 12});
}

TEST_CASE("shifted action on sl2-hat: fixed examples") {
    AffineAlgebra alg = AffineAlgebra::from_selector("A1~1");
    WeylGroup weyl(alg);
    // length 1: s_1 is the element matching (-i-2, k, m)
    const auto& layer1 = weyl.layer(1);
    REQUIRE(layer1.size() == 2);
    std::set<IKM> got1;
    for (const auto& w : layer1) got1.insert(shifted_ikm(weyl, w, 0, 1, 0));
    CHECK(got1 == std::set<IKM>{{-2, 1, 0}, {4, 1, 2}});
    // length 2
    std::set<IKM> got2;
    for (const auto& w : weyl.layer(2)) got2.insert(shifted_ikm(weyl, w, 0, 1, 0));
    CHECK(got2.count({6, 1, 4}) == 1);
}

TEST_CASE("shifted action matches the closed-form lines up to length 5") {
    AffineAlgebra alg = AffineAlgebra::from_selector("A1~1");
    WeylGroup weyl(alg);
    for (int s = 1; s <= 5; ++s) {
        const auto& layer = weyl.layer(s);
        REQUIRE(layer.size() == 2);
        bool direct = true, crossed = true;
        for (long long k = 0; k <= 3; ++k)
            for (long long i = 0; i <= k; ++i)
                for (long long m : {0LL, 1LL}) {
                    IKM a = shifted_ikm(weyl, layer[0], i, k, m);
                    IKM b = shifted_ikm(weyl, layer[1], i, k, m);
                    IKM p = line_plus(s, i, k, m);
                    IKM q = line_minus(s, i, k, m);
                    if (!(a == p && b == q)) direct = false;
                    if (!(a == q && b == p)) crossed = false;
                }
        INFO("length " << s);
        CHECK((direct || crossed));
    }
}

TEST_CASE("non-dominance of w*lambda for w != e") {
    for (const char* sel : {"A1~1", "A2~1"}) {
        AffineAlgebra alg = AffineAlgebra::from_selector(sel);
        WeylGroup weyl(alg);
        for (long long k = 0; k <= 2; ++k)
            for (const auto& lambda : alg.dominant_weights(k))
                for (int l = 1; l <= 4; ++l)
                    for (const auto& w : weyl.layer(l)) {
                        Weight img = weyl.shifted_action(w, lambda);
                        CHECK_FALSE(alg.is_dominant(img));
                        CHECK(alg.level(img) == k);
                    }
    }
}

TEST_CASE("negative label forces a length drop") {
    for (const char* sel : {"A1~1", "A2~1"}) {
        AffineAlgebra alg = AffineAlgebra::from_selector(sel);
        WeylGroup weyl(alg);
        const int n = alg.nodes() + 1;
        weyl.layer(5);  // make lengths <= 5 known
        for (long long k = 0; k <= 2; ++k)
            for (const auto& lambda : alg.dominant_weights(k))
                for (int l = 1; l <= 4; ++l)
                    for (const auto& w : weyl.layer(l))
                        for (int i = 0; i <= alg.rank(); ++i) {
                            Weight img = weyl.shifted_action(w, lambda);
                            if (img.labels[i] > -1) continue;
                            auto prod =
                                matmul(weyl.simple_reflection(i).matrix(), w.matrix(), n);
                            CHECK(weyl.known_length(prod) == l - 1);
                        }
    }
}

TEST_CASE("actions are faithful on the enumerated range") {
    AffineAlgebra alg = AffineAlgebra::from_selector("A2~1");
    WeylGroup weyl(alg);
    std::set<std::vector<long long>> mats;
    for (int l = 0; l <= 5; ++l)
        for (const auto& w : weyl.layer(l)) {
            CHECK(w.length() == l);
            CHECK((int)w.word().size() == l);
            CHECK(mats.insert(w.matrix()).second);
        }
}

TEST_CASE("min_dshift lower-bounds the observed d-shifts") {
    for (const char* sel : {"A1~1", "A2~1"}) {
        AffineAlgebra alg = AffineAlgebra::from_selector(sel);
        WeylGroup weyl(alg);
        for (long long k = 0; k <= 2; ++k)
            for (const auto& lambda : alg.dominant_weights(k))
                for (int l = 0; l <= 6; ++l) {
                    long long bound = weyl.min_dshift(l);
                    for (const auto& w : weyl.layer(l)) {
                        Weight img = weyl.shifted_action(w, lambda);
                        CHECK(img.dval >= bound);
                    }
                }
    }
    // and it certifies termination: the bound grows without bound
    AffineAlgebra alg = AffineAlgebra::from_selector("A2~1");
    WeylGroup weyl(alg);
    CHECK(weyl.min_dshift(200) > weyl.min_dshift(100));
}
