#include "equibif/burnside.hpp"

#include <algorithm>
#include <map>

#include "equibif/errors.hpp"

namespace equibif {

BurnsideElement burnside_unit(const TableOfMarks& t) {
    BurnsideElement e;
    e.coords.assign(t.classes.size(), 0);
    e.coords.back() = 1;  // classes are ordered by subgroup order; G is last
    return e;
}

BurnsideElement burnside_add(const BurnsideElement& a, const BurnsideElement& b) {
    if (a.coords.size() != b.coords.size()) throw ContractViolation("Burnside elements over different groups");
    BurnsideElement out;
    out.coords.resize(a.coords.size());
    for (std::size_t i = 0; i < a.coords.size(); ++i) out.coords[i] = a.coords[i] + b.coords[i];
    return out;
}

BurnsideElement burnside_negate(const BurnsideElement& a) {
    BurnsideElement out = a;
    for (auto& c : out.coords) c = -c;
    return out;
}

BurnsideElement burnside_multiply(const TableOfMarks& t, const BurnsideElement& a, const BurnsideElement& b) {
    const auto ma = coordinates_to_marks(t, a.coords);
    const auto mb = coordinates_to_marks(t, b.coords);
    std::vector<Rational> prod(ma.size());
    for (std::size_t i = 0; i < ma.size(); ++i) prod[i] = Rational(ma[i] * mb[i]);
    BurnsideElement out;
    out.coords = marks_to_coordinates(t, prod);
    return out;
}

std::vector<long long> smash_marks(const TableOfMarks& t, const Subgroup& h,
                                   const OrthogonalRepresentation& w) {
    const GroupDescriptor& g = t.group;
    const SubgroupAsGroup local = subgroup_as_group(g, h);
    if (!w.group.is_finite() || w.group.order != local.group.order)
        throw ContractViolation("representation is not over the given subgroup");

    const auto cosets = left_coset_representatives(g, h);
    // fixed dimension per conjugated subgroup, memoized on the local element set
    std::map<std::vector<int>, int> fixed_dim;
    auto dim_fixed = [&](const std::vector<int>& local_elems) {
        auto it = fixed_dim.find(local_elems);
        if (it != fixed_dim.end()) return it->second;
        const int d = fixed_subspace(w, Subgroup::finite(local_elems)).dimension;
        fixed_dim.emplace(local_elems, d);
        return d;
    };

    std::vector<long long> marks(t.classes.size(), 0);
    for (std::size_t ci = 0; ci < t.classes.size(); ++ci) {
        const Subgroup& k = t.classes[ci].representative;
        long long mark = 0;
        for (int r : cosets) {
            // r^{-1} K r ⊆ H?
            const int ri = g.inv(r);
            std::vector<int> conj_local;
            conj_local.reserve(k.elements.size());
            bool inside = true;
            for (int x : k.elements) {
                const int y = g.op(g.op(ri, x), r);
                const int loc = local.local_of_parent[y];
                if (loc < 0) { inside = false; break; }
                conj_local.push_back(loc);
            }
            if (!inside) continue;
            std::sort(conj_local.begin(), conj_local.end());
            mark += (dim_fixed(conj_local) % 2 == 0) ? 1 : -1;
        }
        marks[ci] = mark;
    }
    return marks;
}

BurnsideElement euler_characteristic_smash(const TableOfMarks& t, const Subgroup& h,
                                           const OrthogonalRepresentation& w) {
    const auto m = smash_marks(t, h, w);
    std::vector<Rational> mr(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) mr[i] = Rational(m[i]);
    BurnsideElement out;
    out.coords = marks_to_coordinates(t, mr);
    return out;
}

MainTheoremReport verify_main_theorem(const TableOfMarks& t, const Subgroup& h,
                                      const OrthogonalRepresentation& w,
                                      const OrthogonalRepresentation& v) {
    MainTheoremReport rep;
    const SubgroupAsGroup local = subgroup_as_group(t.group, h);
    Subgroup all_of_h = Subgroup::finite([&] {
        std::vector<int> e(local.group.order);
        for (int i = 0; i < local.group.order; ++i) e[i] = i;
        return e;
    }());
    rep.dim_WH = fixed_subspace(w, all_of_h).dimension;
    rep.dim_VH = fixed_subspace(v, all_of_h).dimension;
    rep.hypothesis_met = rep.dim_VH % 2 == 1;

    rep.base = euler_characteristic_smash(t, h, w);
    rep.with_augmentation = euler_characteristic_smash(t, h, OrthogonalRepresentation::direct_sum(w, v));

    rep.h_class_index = t.class_index_of(h);
    if (rep.h_class_index < 0) throw ContractViolation("subgroup not found among conjugacy classes");
    rep.coord_base = rep.base.coords[rep.h_class_index];
    rep.coord_with = rep.with_augmentation.coords[rep.h_class_index];
    rep.coords_differ_at_h = rep.coord_base != rep.coord_with;
    return rep;
}

}  // namespace equibif
