#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "branchkit/qseries.hpp"

using namespace branchkit;

namespace {

QSeries from_list(Deg trunc, std::initializer_list<std::pair<Deg, long long>> terms) {
    std::map<Deg, Int> m;
    Deg lo = 0;
    for (const auto& [d, c] : terms) lo = std::min(lo, d);
    for (const auto& [d, c] : terms)
        if (c != 0) m[d] = c;
    return QSeries(lo, trunc, std::move(m));
}

QSeries random_series(std::mt19937& rng, Deg trunc) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::map<Deg, Int> m;
    for (Deg d = 0; d <= trunc; ++d) {
        int c = coeff(rng);
        if (c != 0) m[d] = c;
    }
    return QSeries(0, trunc, std::move(m));
}

}  // namespace

TEST_CASE("difference of squares") {
    QSeries a = from_list(5, {{0, 1}, {1, 1}});
    QSeries b = from_list(5, {{0, 1}, {1, -1}});
    QSeries p = a * b;
    CHECK(p == from_list(5, {{0, 1}, {2, -1}}));
}

TEST_CASE("convolution of all-ones") {
    QSeries ones = from_list(5, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}});
    QSeries sq = ones * ones;
    CHECK(sq.trunc() == 5);
    for (Deg d = 0; d <= 5; ++d) CHECK(sq.coeff(d) == d + 1);
}

TEST_CASE("zero annihilates with the truncation rule") {
    QSeries zero(0, 7);
    QSeries s = from_list(4, {{1, 3}, {2, -2}});
    QSeries p = zero * s;
    CHECK(p.is_zero());
    CHECK(p.trunc() == std::min<Deg>(7 + 0, 4 + 0));
}

TEST_CASE("truncation narrows through products") {
    // (q^2 * a) only knows coefficients up to trunc+2
    QSeries a = from_list(3, {{0, 1}, {3, 5}});
    QSeries m = QSeries::monomial(2, 1, 10);
    QSeries p = a * m;
    CHECK(p.trunc() == 5);
    CHECK(p.coeff(5) == 5);
}

TEST_CASE("shift by q^m and back") {
    QSeries a = from_list(9, {{0, 1}, {2, 1}});
    QSeries s = qs_shift(a, 3, +1);
    CHECK(s.coeff(3) == 1);
    CHECK(s.coeff(5) == 1);
    CHECK(s.trunc() == 12);
    CHECK(qs_shift(s, -3, +1) == a);
    CHECK(qs_shift(a, 0, +1) == a);
}

TEST_CASE("exponent reversal with window") {
    QSeries a = from_list(1, {{0, 1}, {1, 1}});  // 1 + q known to order 1
    QSeries r = qs_shift(a, 0, -1, -1, 0);
    CHECK(r.coeff(-1) == 1);
    CHECK(r.coeff(0) == 1);
    CHECK(r.trunc() == 0);
}

TEST_CASE("reversal demands enough truncation") {
    QSeries a = from_list(2, {{0, 1}, {1, 1}});
    CHECK_THROWS_WITH_AS(qs_shift(a, 0, -1, -5, 0),
                         doctest::Contains("insufficient truncation"), std::invalid_argument);
}

TEST_CASE("coefficient above truncation is unknown") {
    QSeries a = from_list(4, {{0, 1}});
    CHECK_THROWS_AS(a.coeff(5), std::out_of_range);
}

TEST_CASE("canonical form drops zeros") {
    std::map<Deg, Int> m;
    m[0] = 1;
    m[2] = 0;
    QSeries a(0, 5, std::move(m));
    CHECK(a.coeffs().size() == 1);
    // re-canonicalizing is a no-op
    QSeries b(a.min_deg(), a.trunc(), a.coeffs());
    CHECK(b == a);
}

TEST_CASE("ring laws on identically-truncated operands") {
    std::mt19937 rng(20240817);
    for (int iter = 0; iter < 50; ++iter) {
        QSeries a = random_series(rng, 8);
        QSeries b = random_series(rng, 8);
        QSeries c = random_series(rng, 8);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("shift round trip on random series") {
    std::mt19937 rng(987);
    for (int iter = 0; iter < 20; ++iter) {
        QSeries a = random_series(rng, 12);
        for (Deg m : {-4, -1, 0, 2, 7})
            CHECK(qs_shift(qs_shift(a, m, +1), -m, +1) == a);
    }
}

TEST_CASE("json serialization") {
    QSeries a = from_list(3, {{0, 1}, {2, -12}});
    CHECK(qseries_to_json(a) == "{\"trunc\":3,\"series\":[[0,\"1\"],[2,\"-12\"]]}");
    Int big("123456789012345678901234567890");
    QSeries b = QSeries::monomial(1, big, 2);
    CHECK(qseries_to_json(b) ==
          "{\"trunc\":2,\"series\":[[1,\"123456789012345678901234567890\"]]}");
}
