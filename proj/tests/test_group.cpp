#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "equibif/errors.hpp"
#include "equibif/group.hpp"

using namespace equibif;

namespace {

// Oracle: every subset of G tested for the subgroup property directly.
// Feasible for |G| <= 12 or so; used on the desk-scale acceptance groups.
std::set<std::vector<int>> all_subgroups_bruteforce(const GroupDescriptor& g) {
    std::set<std::vector<int>> out;
    const int n = g.order;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (!(mask & (1u << g.identity))) continue;
        std::vector<int> elems;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) elems.push_back(i);
        bool closed = true;
        for (int a : elems) {
            if (!(mask & (1u << g.inv(a)))) { closed = false; break; }
            for (int b : elems)
                if (!(mask & (1u << g.op(a, b)))) { closed = false; break; }
            if (!closed) break;
        }
        if (closed) out.insert(elems);
    }
    return out;
}

// Oracle: mark |(G/H)^K| counted by scanning all group elements instead of
// coset representatives.
long long mark_bruteforce(const GroupDescriptor& g, const Subgroup& h, const Subgroup& k) {
    long long count = 0;
    for (int x = 0; x < g.order; ++x) {
        const int xi = g.inv(x);
        bool fixed = true;
        for (int e : k.elements)
            if (!h.contains(g.op(g.op(xi, e), x))) { fixed = false; break; }
        if (fixed) ++count;
    }
    return count / static_cast<long long>(h.elements.size());
}

int count_classes_bruteforce(const GroupDescriptor& g) {
    auto subs = all_subgroups_bruteforce(g);
    std::set<std::vector<int>> canon;
    for (const auto& s : subs) {
        std::vector<int> best = s;
        for (int x = 0; x < g.order; ++x) {
            auto c = conjugate_subgroup(g, Subgroup::finite(s), x).elements;
            if (c < best) best = c;
        }
        canon.insert(best);
    }
    return static_cast<int>(canon.size());
}

}  // namespace

TEST_CASE("presets") {
    CHECK(GroupDescriptor::cyclic(6).order == 6);
    CHECK(GroupDescriptor::dihedral(4).order == 8);
    CHECK(GroupDescriptor::symmetric(3).order == 6);
    CHECK(GroupDescriptor::from_preset("cyclic:5")->order == 5);
    CHECK(GroupDescriptor::from_preset("circle")->kind == GroupKind::Circle);
    CHECK(!GroupDescriptor::from_preset("sporadic:1").has_value());
    CHECK_THROWS_AS(GroupDescriptor::symmetric(7), ValidationError);
    CHECK_THROWS_AS(GroupDescriptor::cyclic(513), ValidationError);
}

TEST_CASE("invalid multiplication tables are rejected") {
    // constant table: no identity
    CHECK_THROWS_AS(GroupDescriptor::finite_from_table({{0, 0}, {0, 0}}), ValidationError);
    // identity exists but x*x lacks an inverse partner consistency; use a
    // non-associative magma on 3 elements
    CHECK_THROWS_AS(GroupDescriptor::finite_from_table({{0, 1, 2}, {1, 2, 2}, {2, 0, 1}}), ValidationError);
}

TEST_CASE("subgroup classes of small groups") {
    SUBCASE("Z2: exactly the trivial subgroup and the whole group") {
        auto classes = enumerate_subgroup_classes(GroupDescriptor::cyclic(2));
        REQUIRE(classes.size() == 2);
        CHECK(classes[0].representative.order() == 1);
        CHECK(classes[1].representative.order() == 2);
        CHECK(classes[0].name == "e");
        CHECK(classes[1].name == "G");
    }
    SUBCASE("Z4") {
        auto classes = enumerate_subgroup_classes(GroupDescriptor::cyclic(4));
        REQUIRE(classes.size() == 3);
        CHECK(classes[1].representative.order() == 2);
    }
    SUBCASE("S3") {
        const auto g = GroupDescriptor::symmetric(3);
        auto classes = enumerate_subgroup_classes(g);
        REQUIRE(classes.size() == 4);
        std::vector<int> orders;
        for (const auto& c : classes) orders.push_back(c.representative.order());
        CHECK(orders == std::vector<int>{1, 2, 3, 6});
        CHECK(count_classes_bruteforce(g) == 4);
    }
    SUBCASE("D4 against the brute-force lattice") {
        const auto g = GroupDescriptor::dihedral(4);
        auto classes = enumerate_subgroup_classes(g);
        CHECK(static_cast<int>(classes.size()) == count_classes_bruteforce(g));
        CHECK(classes.size() == 8);
        // total subgroup count matches the all-subsets oracle
        std::size_t total = 0;
        for (const auto& c : classes) total += c.members.size();
        CHECK(total == all_subgroups_bruteforce(g).size());
    }
    SUBCASE("class members partition and are conjugate") {
        const auto g = GroupDescriptor::symmetric(3);
        auto classes = enumerate_subgroup_classes(g);
        for (const auto& c : classes)
            for (const auto& m : c.members) {
                bool related = false;
                for (int x = 0; x < g.order && !related; ++x)
                    related = conjugate_subgroup(g, c.representative, x).elements == m.elements;
                CHECK(related);
            }
    }
}

TEST_CASE("circle subgroup lattice is cut off explicitly") {
    auto classes = enumerate_subgroup_classes(GroupDescriptor::circle(), 4);
    REQUIRE(classes.size() == 5);
    CHECK(classes[0].name == "e");
    CHECK(classes[3].representative.circle_order == 4);
    CHECK(classes[4].representative.is_full_circle());
    CHECK_THROWS_AS(enumerate_subgroup_classes(GroupDescriptor::circle()), ValidationError);
}

TEST_CASE("table of marks") {
    SUBCASE("Z2") {
        auto t = table_of_marks(GroupDescriptor::cyclic(2));
        REQUIRE(t.classes.size() == 2);
        CHECK(t.marks[0] == std::vector<long long>{2, 0});
        CHECK(t.marks[1] == std::vector<long long>{1, 1});
    }
    SUBCASE("S3 rows frozen from the coset-count oracle") {
        auto t = table_of_marks(GroupDescriptor::symmetric(3));
        REQUIRE(t.classes.size() == 4);
        CHECK(t.marks[0] == std::vector<long long>{6, 0, 0, 0});
        CHECK(t.marks[1] == std::vector<long long>{3, 1, 0, 0});
        CHECK(t.marks[2] == std::vector<long long>{2, 0, 2, 0});
        CHECK(t.marks[3] == std::vector<long long>{1, 1, 1, 1});
    }
    SUBCASE("marks match the element-scan oracle and subconjugacy") {
        for (const auto& g : {GroupDescriptor::symmetric(3), GroupDescriptor::dihedral(4),
                              GroupDescriptor::cyclic(6)}) {
            auto t = table_of_marks(g);
            const int nc = static_cast<int>(t.classes.size());
            for (int i = 0; i < nc; ++i)
                for (int j = 0; j < nc; ++j) {
                    const auto& h = t.classes[i].representative;
                    const auto& k = t.classes[j].representative;
                    CHECK(t.marks[i][j] == mark_bruteforce(g, h, k));
                    // positive mark iff some conjugate of K is contained in H
                    bool subconj = false;
                    for (int x = 0; x < g.order && !subconj; ++x)
                        subconj = subgroup_subset(conjugate_subgroup(g, k, x), h);
                    CHECK((t.marks[i][j] > 0) == subconj);
                }
            // last row is the one-point space
            for (int j = 0; j < nc; ++j) CHECK(t.marks[nc - 1][j] == 1);
            // first column is |G|/|H|
            for (int i = 0; i < nc; ++i)
                CHECK(t.marks[i][0] == g.order / t.classes[i].representative.order());
        }
    }
    SUBCASE("marks are conjugation invariant across representatives") {
        const auto g = GroupDescriptor::dihedral(4);
        auto t = table_of_marks(g);
        for (const auto& c : t.classes)
            for (const auto& member : c.members)
                for (const auto& kc : t.classes)
                    CHECK(mark_bruteforce(g, member, kc.representative) ==
                          mark_bruteforce(g, c.representative, kc.representative));
    }
    SUBCASE("triangularity under the deterministic order") {
        auto t = table_of_marks(GroupDescriptor::dihedral(4));
        for (std::size_t i = 0; i < t.classes.size(); ++i) {
            CHECK(t.marks[i][i] > 0);
            for (std::size_t j = i + 1; j < t.classes.size(); ++j) CHECK(t.marks[i][j] == 0);
        }
    }
}

TEST_CASE("marks to coordinates") {
    auto t = table_of_marks(GroupDescriptor::cyclic(2));
    // all-ones marks: the one-point space [G/G]
    CHECK(marks_to_coordinates(t, {Rational(1), Rational(1)}) == std::vector<long long>{0, 1});
    // free orbit
    CHECK(marks_to_coordinates(t, {Rational(2), Rational(0)}) == std::vector<long long>{1, 0});
    // mixed: marks (m_e, m_G) = (-1, 1) is [G/G] - [G/e]
    CHECK(marks_to_coordinates(t, {Rational(-1), Rational(1)}) == std::vector<long long>{-1, 1});
    // non-integral solution must be flagged
    CHECK_THROWS_AS(marks_to_coordinates(t, {Rational(1), Rational(0)}), NumericalError);

    SUBCASE("round trip on random integer vectors") {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> coeff(-9, 9);
        for (const auto& g : {GroupDescriptor::cyclic(4), GroupDescriptor::symmetric(3),
                              GroupDescriptor::dihedral(4)}) {
            auto tm = table_of_marks(g);
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<long long> x(tm.classes.size());
                for (auto& v : x) v = coeff(rng);
                const auto marks = coordinates_to_marks(tm, x);
                std::vector<Rational> mr(marks.begin(), marks.end());
                CHECK(marks_to_coordinates(tm, mr) == x);
            }
        }
    }
}

TEST_CASE("subgroup helpers") {
    const auto g = GroupDescriptor::symmetric(3);
    const auto whole = subgroup_closure(g, {1, 2, 3, 4, 5});
    CHECK(whole.order() == 6);
    const auto t = table_of_marks(g);
    for (const auto& c : t.classes) {
        auto reps = left_coset_representatives(g, c.representative);
        CHECK(static_cast<int>(reps.size()) == g.order / c.representative.order());
        auto local = subgroup_as_group(g, c.representative);
        CHECK(local.group.order == c.representative.order());
    }
    CHECK(t.class_index_of(t.classes[2].representative) == 2);
}
