#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "equibif/burnside.hpp"
#include "equibif/errors.hpp"

using namespace equibif;

namespace {

Eigen::MatrixXd mat1(double v) {
    Eigen::MatrixXd m(1, 1);
    m << v;
    return m;
}

// Independent oracle for the fixed dimension: stacked kernel solve.
int fixed_dim_oracle(const OrthogonalRepresentation& rep, const std::vector<int>& elems) {
    const int p = rep.dim;
    if (p == 0) return 0;
    Eigen::MatrixXd stacked(p * static_cast<int>(elems.size()), p);
    int row = 0;
    for (int e : elems) {
        stacked.middleRows(row, p) = rep.matrix(e) - Eigen::MatrixXd::Identity(p, p);
        row += p;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(stacked);
    lu.setThreshold(1e-9);
    return p - static_cast<int>(lu.rank());
}

// Independent oracle for the smash marks: scan all group elements instead of
// coset representatives and divide by |H|; fixed dimensions from the stacked
// kernel instead of the averaging projector.
std::vector<long long> smash_marks_oracle(const TableOfMarks& t, const Subgroup& h,
                                          const OrthogonalRepresentation& w) {
    const GroupDescriptor& g = t.group;
    const auto local = subgroup_as_group(g, h);
    std::vector<long long> marks(t.classes.size(), 0);
    for (std::size_t ci = 0; ci < t.classes.size(); ++ci) {
        const Subgroup& k = t.classes[ci].representative;
        long long acc = 0;
        for (int x = 0; x < g.order; ++x) {
            const int xi = g.inv(x);
            std::vector<int> conj;
            bool inside = true;
            for (int e : k.elements) {
                const int y = g.op(g.op(xi, e), x);
                if (local.local_of_parent[y] < 0) { inside = false; break; }
                conj.push_back(local.local_of_parent[y]);
            }
            if (!inside) continue;
            acc += fixed_dim_oracle(w, conj) % 2 == 0 ? 1 : -1;
        }
        marks[ci] = acc / h.order();
    }
    return marks;
}

// Random orthogonal representation of a (local) finite group: a direct sum
// of coset permutation representations, optionally with index-2 sign blocks.
OrthogonalRepresentation random_rep(const GroupDescriptor& local, std::mt19937& rng, int coset_summands,
                                    bool allow_sign) {
    const auto classes = enumerate_subgroup_classes(local);
    auto rep = OrthogonalRepresentation::trivial_rep(local, 0);
    std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
    for (int i = 0; i < coset_summands; ++i) {
        const auto& sub = classes[pick(rng)].representative;
        rep = OrthogonalRepresentation::direct_sum(rep,
                                                   OrthogonalRepresentation::coset_permutation(local, sub));
    }
    if (allow_sign && std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
        for (const auto& c : classes) {
            if (c.representative.order() * 2 != local.order) continue;
            std::vector<Eigen::MatrixXd> mats(local.order);
            for (int e = 0; e < local.order; ++e)
                mats[e] = mat1(c.representative.contains(e) ? 1.0 : -1.0);
            rep = OrthogonalRepresentation::direct_sum(
                rep, OrthogonalRepresentation::finite_from_matrices(local, std::move(mats)));
            break;
        }
    }
    return rep;
}

}  // namespace

TEST_CASE("smash characteristic on Z2") {
    const auto g = GroupDescriptor::cyclic(2);
    const auto t = table_of_marks(g);
    const Subgroup whole = Subgroup::finite({0, 1});
    const Subgroup trivial = Subgroup::finite({0});
    const auto local_whole = subgroup_as_group(g, whole);

    SUBCASE("sign slice gives [G/G] - [G/e]") {
        const auto sign =
            OrthogonalRepresentation::finite_from_generators(local_whole.group, {{1, mat1(-1.0)}});
        const auto marks = smash_marks(t, whole, sign);
        CHECK(marks == std::vector<long long>{-1, 1});
        const auto x = euler_characteristic_smash(t, whole, sign);
        CHECK(x.coords == std::vector<long long>{-1, 1});
    }
    SUBCASE("zero slice gives the unit") {
        const auto zero = OrthogonalRepresentation::trivial_rep(local_whole.group, 0);
        const auto x = euler_characteristic_smash(t, whole, zero);
        CHECK(x == burnside_unit(t));
    }
    SUBCASE("free one-dimensional slice gives -[G/e]") {
        const auto local_triv = subgroup_as_group(g, trivial);
        const auto line = OrthogonalRepresentation::trivial_rep(local_triv.group, 1);
        const auto marks = smash_marks(t, trivial, line);
        CHECK(marks == std::vector<long long>{-2, 0});
        const auto x = euler_characteristic_smash(t, trivial, line);
        CHECK(x.coords == std::vector<long long>{-1, 0});
    }
}

TEST_CASE("smash marks agree with the element-scan oracle") {
    std::mt19937 rng(101);
    for (const auto& g : {GroupDescriptor::cyclic(4), GroupDescriptor::symmetric(3),
                          GroupDescriptor::dihedral(4)}) {
        const auto t = table_of_marks(g);
        for (const auto& hc : t.classes) {
            const auto local = subgroup_as_group(g, hc.representative);
            for (int trial = 0; trial < 10; ++trial) {
                const auto w = random_rep(local.group, rng, trial % 4, true);
                CHECK(smash_marks(t, hc.representative, w) ==
                      smash_marks_oracle(t, hc.representative, w));
            }
        }
    }
}

TEST_CASE("the (H)-coordinate is the parity of the fixed dimension") {
    std::mt19937 rng(202);
    for (const auto& g : {GroupDescriptor::cyclic(3), GroupDescriptor::symmetric(3),
                          GroupDescriptor::dihedral(4)}) {
        const auto t = table_of_marks(g);
        for (const auto& hc : t.classes) {
            const auto local = subgroup_as_group(g, hc.representative);
            std::vector<int> all_local(local.group.order);
            for (int i = 0; i < local.group.order; ++i) all_local[i] = i;
            for (int trial = 0; trial < 8; ++trial) {
                const auto w = random_rep(local.group, rng, trial % 3, true);
                const int dim_wh = fixed_dim_oracle(w, all_local);
                const auto x = euler_characteristic_smash(t, hc.representative, w);
                const int hidx = t.class_index_of(hc.representative);
                CHECK(x.coords[hidx] == (dim_wh % 2 == 0 ? 1 : -1));
            }
        }
    }
}

TEST_CASE("ring structure") {
    const auto g = GroupDescriptor::cyclic(2);
    const auto t = table_of_marks(g);

    SUBCASE("free times free doubles") {
        BurnsideElement free_orbit{{1, 0}};
        const auto prod = burnside_multiply(t, free_orbit, free_orbit);
        CHECK(prod.coords == std::vector<long long>{2, 0});
    }
    SUBCASE("idempotent difference") {
        BurnsideElement x{{-1, 1}};  // [G/G] - [G/e]
        const auto prod = burnside_multiply(t, x, x);
        CHECK(prod == burnside_unit(t));
    }
    SUBCASE("unit, commutativity, associativity, distributivity on random triples") {
        std::mt19937 rng(303);
        std::uniform_int_distribution<int> coeff(-5, 5);
        for (const auto& grp : {GroupDescriptor::symmetric(3), GroupDescriptor::dihedral(4)}) {
            const auto tm = table_of_marks(grp);
            auto rand_elem = [&] {
                BurnsideElement e;
                e.coords.resize(tm.classes.size());
                for (auto& c : e.coords) c = coeff(rng);
                return e;
            };
            for (int trial = 0; trial < 50; ++trial) {
                const auto a = rand_elem(), b = rand_elem(), c = rand_elem();
                CHECK(burnside_multiply(tm, burnside_unit(tm), a) == a);
                CHECK(burnside_multiply(tm, a, b) == burnside_multiply(tm, b, a));
                CHECK(burnside_multiply(tm, a, burnside_multiply(tm, b, c)) ==
                      burnside_multiply(tm, burnside_multiply(tm, a, b), c));
                CHECK(burnside_multiply(tm, a, burnside_add(b, c)) ==
                      burnside_add(burnside_multiply(tm, a, b), burnside_multiply(tm, a, c)));
            }
        }
    }
    SUBCASE("wedge additivity of the characteristic") {
        std::mt19937 rng(404);
        const auto local = subgroup_as_group(g, Subgroup::finite({0, 1}));
        const auto w1 = random_rep(local.group, rng, 2, false);
        const auto w2 = random_rep(local.group, rng, 1, false);
        const auto sum = burnside_add(euler_characteristic_smash(t, Subgroup::finite({0, 1}), w1),
                                      euler_characteristic_smash(t, Subgroup::finite({0, 1}), w2));
        // marks of the wedge are the sums of marks
        const auto m1 = smash_marks(t, Subgroup::finite({0, 1}), w1);
        const auto m2 = smash_marks(t, Subgroup::finite({0, 1}), w2);
        std::vector<Rational> wedge(m1.size());
        for (std::size_t i = 0; i < m1.size(); ++i) wedge[i] = Rational(m1[i] + m2[i]);
        CHECK(marks_to_coordinates(t, wedge) == sum.coords);
    }
}

TEST_CASE("coordinate sign flip under odd augmentation") {
    const auto g = GroupDescriptor::cyclic(2);
    const auto t = table_of_marks(g);
    const Subgroup whole = Subgroup::finite({0, 1});
    const auto local = subgroup_as_group(g, whole);

    SUBCASE("trivial augmentation flips") {
        const auto w = OrthogonalRepresentation::trivial_rep(local.group, 0);
        const auto v = OrthogonalRepresentation::trivial_rep(local.group, 1);
        const auto rep = verify_main_theorem(t, whole, w, v);
        CHECK(rep.hypothesis_met);
        CHECK(rep.coord_base == 1);
        CHECK(rep.coord_with == -1);
        CHECK(rep.coords_differ_at_h);
    }
    SUBCASE("sign augmentation has even fixed dimension; hypothesis silent") {
        const auto w = OrthogonalRepresentation::trivial_rep(local.group, 0);
        const auto v = OrthogonalRepresentation::finite_from_generators(local.group, {{1, mat1(-1.0)}});
        const auto rep = verify_main_theorem(t, whole, w, v);
        CHECK(!rep.hypothesis_met);
        CHECK(rep.dim_VH == 0);
    }
    SUBCASE("random sweep over S3 subgroup classes") {
        std::mt19937 rng(505);
        const auto s3 = GroupDescriptor::symmetric(3);
        const auto ts3 = table_of_marks(s3);
        for (const auto& hc : ts3.classes) {
            const auto local_h = subgroup_as_group(s3, hc.representative);
            for (int trial = 0; trial < 25; ++trial) {
                const auto w = random_rep(local_h.group, rng, trial % 3, true);
                // odd count of coset summands makes dim V^H odd
                const auto v = random_rep(local_h.group, rng, 1 + 2 * (trial % 2), false);
                const auto rep = verify_main_theorem(ts3, hc.representative, w, v);
                REQUIRE(rep.hypothesis_met);
                CHECK(rep.coords_differ_at_h);
                CHECK(rep.coord_base == (rep.dim_WH % 2 == 0 ? 1 : -1));
                CHECK(rep.coord_with == ((rep.dim_WH + rep.dim_VH) % 2 == 0 ? 1 : -1));
            }
        }
    }
}
