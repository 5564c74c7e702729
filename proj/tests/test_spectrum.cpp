#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "equibif/errors.hpp"
#include "equibif/spectrum.hpp"

using namespace equibif;

namespace {

BoxDomain interval() {
    BoxDomain d;
    d.dimension = 1;
    d.lengths_sq = {Rational(1)};
    return d;
}

BoxDomain box2(const Rational& a, const Rational& b, bool incommensurable = false) {
    BoxDomain d;
    d.dimension = 2;
    d.lengths_sq = {a, b};
    d.incommensurable = incommensurable;
    return d;
}

// Oracle: plain nested-loop enumeration with independent grouping.
std::map<Rational, int> multiplicities_oracle(const BoxDomain& d, const Rational& cutoff) {
    std::map<Rational, int> out;
    const long long k1max = 200, k2max = 200;
    if (d.dimension == 1) {
        for (long long k = 0; k <= k1max; ++k) {
            const Rational v = Rational(k * k) / d.lengths_sq[0];
            if (v <= cutoff) ++out[v];
        }
        return out;
    }
    for (long long k = 0; k <= k1max; ++k)
        for (long long m = 0; m <= k2max; ++m) {
            const Rational v = Rational(k * k) / d.lengths_sq[0] + Rational(m * m) / d.lengths_sq[1];
            if (v <= cutoff) ++out[v];
        }
    return out;
}

}  // namespace

TEST_CASE("interval spectrum is the squares") {
    const auto sp = neumann_spectrum(interval(), Rational(30));
    REQUIRE(sp.size() == 6);  // 0,1,4,9,16,25
    for (std::size_t i = 0; i < sp.size(); ++i) {
        CHECK(sp[i].value == Rational(static_cast<long long>(i * i)));
        CHECK(sp[i].multiplicity() == 1);
    }
    CHECK(sp[0].indices == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("square multiplicities frozen from the oracle") {
    const auto d = box2(Rational(1), Rational(1));
    const auto sp = neumann_spectrum(d, Rational(60));
    // first entries: 0,1,2,4,5 with multiplicities 1,2,1,2,2
    REQUIRE(sp.size() >= 5);
    CHECK(sp[0].value == Rational(0));
    CHECK(sp[0].multiplicity() == 1);
    CHECK(sp[1].value == Rational(1));
    CHECK(sp[1].multiplicity() == 2);
    CHECK(sp[1].indices == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(sp[2].value == Rational(2));
    CHECK(sp[2].multiplicity() == 1);
    CHECK(sp[3].value == Rational(4));
    CHECK(sp[3].multiplicity() == 2);
    CHECK(sp[4].value == Rational(5));
    CHECK(sp[4].multiplicity() == 2);

    const auto oracle = multiplicities_oracle(d, Rational(60));
    for (const auto& e : sp) CHECK(e.multiplicity() == oracle.at(e.value));
    // the frequently misquoted entries: 25 has four index pairs, 50 is the
    // first triple
    auto find = [&](const Rational& v) {
        for (const auto& e : sp)
            if (e.value == v) return e.multiplicity();
        return -1;
    };
    CHECK(find(Rational(25)) == 4);
    CHECK(find(Rational(50)) == 3);
}

TEST_CASE("rational but non-square ratio keeps low modes simple") {
    const auto d = box2(Rational(1), Rational(2));
    const auto sp = neumann_spectrum(d, Rational(4));
    for (const auto& e : sp) {
        if (e.value == Rational(1)) {
            CHECK(e.multiplicity() == 1);
            CHECK(e.indices == std::vector<std::vector<int>>{{1, 0}});
        }
    }
    const auto oracle = multiplicities_oracle(d, Rational(4));
    for (const auto& e : sp) CHECK(e.multiplicity() == oracle.at(e.value));
}

TEST_CASE("eigenvalues are ascending and counts grow with the cutoff") {
    const auto d = box2(Rational(1), Rational(3, 2));
    const auto sp = neumann_spectrum(d, Rational(40));
    for (std::size_t i = 1; i < sp.size(); ++i) CHECK(sp[i - 1].value < sp[i].value);
    std::size_t prev = 0;
    for (int c = 5; c <= 40; c += 5) {
        const auto s = neumann_spectrum(d, Rational(c));
        std::size_t count = 0;
        for (const auto& e : s) count += e.indices.size();
        CHECK(count >= prev);
        prev = count;
    }
}

TEST_CASE("spectrum size guard") {
    CHECK_THROWS_AS(neumann_spectrum(interval(), Rational(4000000000000LL)), NumericalError);
}

TEST_CASE("eigenfunction evaluation") {
    const auto d = interval();
    const auto sp = neumann_spectrum(d, Rational(5));
    Eigen::VectorXd x(1);

    // constant mode
    x << 1.234;
    CHECK(eigenfunction_eval(sp[0], d, {0}, x) == doctest::Approx(1.0));
    // k = 1 endpoints
    x << 0.0;
    CHECK(eigenfunction_eval(sp[1], d, {1}, x) == doctest::Approx(1.0));
    x << d.side_length(0);
    CHECK(eigenfunction_eval(sp[1], d, {1}, x) == doctest::Approx(-1.0));
    // index not in the entry
    CHECK_THROWS_AS(eigenfunction_eval(sp[1], d, {2}, x), ContractViolation);

    SUBCASE("square midpoint zero of the (1,1) mode") {
        const auto sq = box2(Rational(1), Rational(1));
        const auto sp2 = neumann_spectrum(sq, Rational(3));
        Eigen::VectorXd mid(2);
        mid << sq.side_length(0) / 2, sq.side_length(1) / 2;
        CHECK(eigenfunction_eval(sp2[2], sq, {1, 1}, mid) == doctest::Approx(0.0));
    }
}

TEST_CASE("eigenfunction orthogonality under quadrature") {
    const auto d = box2(Rational(1), Rational(2));
    const auto sp = neumann_spectrum(d, Rational(8));
    // composite Simpson on a 400×400 grid is plenty for the first few cosines
    auto integrate2 = [&](auto&& f) {
        const int m = 400;
        const double lx = d.side_length(0), ly = d.side_length(1);
        double acc = 0.0;
        auto w1 = [&](int i, int mm) { return (i == 0 || i == mm) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j) {
                Eigen::VectorXd x(2);
                x << lx * i / m, ly * j / m;
                acc += w1(i, m) * w1(j, m) * f(x);
            }
        return acc * (lx / m / 3.0) * (ly / m / 3.0);
    };
    int checked = 0;
    for (std::size_t a = 0; a < sp.size() && checked < 6; ++a)
        for (std::size_t b = a + 1; b < sp.size() && checked < 6; ++b) {
            const auto ia = sp[a].indices[0];
            const auto ib = sp[b].indices[0];
            const double ip = integrate2([&](const Eigen::VectorXd& x) {
                return eigenfunction_value(d, ia, x) * eigenfunction_value(d, ib, x);
            });
            CHECK(std::abs(ip) < 1e-10);
            ++checked;
        }
}

TEST_CASE("simplicity report") {
    SUBCASE("incommensurable flag certifies simplicity") {
        const auto r = simplicity_report(box2(Rational(1), Rational(2), true), Rational(50));
        CHECK(r.simple);
        CHECK(r.certified_by_flag);
        CHECK(!r.first_violation.has_value());
    }
    SUBCASE("square fails at the first nonzero value") {
        const auto r = simplicity_report(box2(Rational(1), Rational(1)), Rational(50));
        CHECK(!r.simple);
        REQUIRE(r.first_violation.has_value());
        CHECK(r.first_violation->value == Rational(1));
        CHECK(r.first_violation->multiplicity() == 2);
    }
    SUBCASE("ratio 1:2 collides at 9/2, contrary to the quoted example") {
        // oracle: 2^2 + 1^2/2 = 9/2 = 0^2 + 3^2/2
        const auto r = simplicity_report(box2(Rational(1), Rational(2)), Rational(50));
        CHECK(!r.simple);
        REQUIRE(r.first_violation.has_value());
        CHECK(r.first_violation->value == Rational(9, 2));
        CHECK(r.first_violation->indices == std::vector<std::vector<int>>{{0, 3}, {2, 1}});
    }
    SUBCASE("only defined on two-dimensional boxes") {
        CHECK_THROWS_AS(simplicity_report(interval(), Rational(10)), ContractViolation);
    }
}
