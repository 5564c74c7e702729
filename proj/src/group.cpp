#include "equibif/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "equibif/errors.hpp"

namespace equibif {

namespace {

constexpr int kMaxOrder = 512;
constexpr std::size_t kMaxSubgroups = 20000;

void check_is_group(const GroupDescriptor& g) {
    const int n = g.order;
    if (n <= 0) throw ValidationError("group table is empty");
    if (n > kMaxOrder) throw ValidationError("group too large: order " + std::to_string(n) + " exceeds cap " + std::to_string(kMaxOrder));
    if (static_cast<int>(g.mul.size()) != n) throw ValidationError("group table is not square");
    for (const auto& row : g.mul) {
        if (static_cast<int>(row.size()) != n) throw ValidationError("group table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw ValidationError("group table entry out of range");
    }
    // identity
    int e = -1;
    for (int cand = 0; cand < n && e < 0; ++cand) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = g.mul[cand][a] == a && g.mul[a][cand] == a;
        if (ok) e = cand;
    }
    if (e < 0) throw ValidationError("group table has no identity");
    // inverses
    for (int a = 0; a < n; ++a) {
        bool found = false;
        for (int b = 0; b < n && !found; ++b)
            found = g.mul[a][b] == e && g.mul[b][a] == e;
        if (!found) throw ValidationError("group table: element " + std::to_string(a) + " has no inverse");
    }
    // associativity, brute force (n <= 512 by the cap)
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int ab = g.mul[a][b];
            for (int c = 0; c < n; ++c)
                if (g.mul[ab][c] != g.mul[a][g.mul[b][c]])
                    throw ValidationError("group table is not associative");
        }
}

void finish_descriptor(GroupDescriptor& g) {
    check_is_group(g);
    const int n = g.order;
    for (int cand = 0; cand < n; ++cand) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = g.mul[cand][a] == a && g.mul[a][cand] == a;
        if (ok) { g.identity = cand; break; }
    }
    g.inverse.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.mul[a][b] == g.identity && g.mul[b][a] == g.identity) { g.inverse[a] = b; break; }
}

}  // namespace

GroupDescriptor GroupDescriptor::finite_from_table(std::vector<std::vector<int>> table) {
    GroupDescriptor g;
    g.kind = GroupKind::Finite;
    g.order = static_cast<int>(table.size());
    g.mul = std::move(table);
    finish_descriptor(g);
    return g;
}

GroupDescriptor GroupDescriptor::cyclic(int n) {
    if (n < 1) throw ValidationError("cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return finite_from_table(std::move(t));
}

GroupDescriptor GroupDescriptor::dihedral(int n) {
    if (n < 1) throw ValidationError("dihedral parameter must be positive");
    // elements 0..n-1: rotations r^k; n..2n-1: reflections r^k s
    const int m = 2 * n;
    auto enc = [n](int rot, int flip) { return flip ? n + rot : rot; };
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int ra = a % n, fa = a / n, rb = b % n, fb = b / n;
            // (r^ra s^fa)(r^rb s^fb): s r^k = r^{-k} s
            int rot = fa ? (ra - rb % n + 2 * n) % n : (ra + rb) % n;
            int flip = fa ^ fb;
            t[a][b] = enc(rot, flip);
        }
    return finite_from_table(std::move(t));
}

GroupDescriptor GroupDescriptor::symmetric(int n) {
    if (n < 1) throw ValidationError("symmetric group parameter must be positive");
    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    if (fact > kMaxOrder) throw ValidationError("group too large: symmetric:" + std::to_string(n));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;
    const int m = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            std::vector<int> comp(n);
            for (int i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
            t[a][b] = index[comp];
        }
    return finite_from_table(std::move(t));
}

GroupDescriptor GroupDescriptor::circle() {
    GroupDescriptor g;
    g.kind = GroupKind::Circle;
    return g;
}

std::optional<GroupDescriptor> GroupDescriptor::from_preset(const std::string& name) {
    if (name == "circle") return circle();
    auto colon = name.find(':');
    if (colon == std::string::npos) return std::nullopt;
    const std::string head = name.substr(0, colon);
    int n = 0;
    try {
        n = std::stoi(name.substr(colon + 1));
    } catch (...) {
        return std::nullopt;
    }
    if (head == "cyclic") return cyclic(n);
    if (head == "dihedral") return dihedral(n);
    if (head == "symmetric") return symmetric(n);
    return std::nullopt;
}

Subgroup Subgroup::finite(std::vector<int> elems) {
    Subgroup s;
    s.kind = GroupKind::Finite;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    s.elements = std::move(elems);
    return s;
}

Subgroup Subgroup::circle_cyclic(int m) {
    if (m < 1) throw ValidationError("circle subgroup order must be positive");
    Subgroup s;
    s.kind = GroupKind::Circle;
    s.circle_order = m;
    return s;
}

Subgroup Subgroup::circle_full() {
    Subgroup s;
    s.kind = GroupKind::Circle;
    s.circle_order = 0;
    return s;
}

bool Subgroup::contains(int element) const {
    return std::binary_search(elements.begin(), elements.end(), element);
}

Subgroup subgroup_closure(const GroupDescriptor& g, const std::vector<int>& generators) {
    std::vector<char> in(g.order, 0);
    std::vector<int> queue;
    auto push = [&](int x) {
        if (!in[x]) { in[x] = 1; queue.push_back(x); }
    };
    push(g.identity);
    for (int x : generators) {
        if (x < 0 || x >= g.order) throw ValidationError("generator index out of range");
        push(x);
    }
    // queue doubles as worklist: products of visited pairs get appended
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            push(g.op(queue[i], queue[j]));
            push(g.op(queue[j], queue[i]));
        }
    std::vector<int> elems;
    for (int x = 0; x < g.order; ++x)
        if (in[x]) elems.push_back(x);
    return Subgroup::finite(std::move(elems));
}

Subgroup conjugate_subgroup(const GroupDescriptor& g, const Subgroup& h, int by) {
    std::vector<int> elems;
    elems.reserve(h.elements.size());
    const int byi = g.inv(by);
    for (int x : h.elements) elems.push_back(g.op(g.op(by, x), byi));
    return Subgroup::finite(std::move(elems));
}

bool subgroup_subset(const Subgroup& inner, const Subgroup& outer) {
    return std::includes(outer.elements.begin(), outer.elements.end(),
                         inner.elements.begin(), inner.elements.end());
}

std::vector<int> left_coset_representatives(const GroupDescriptor& g, const Subgroup& h) {
    std::vector<char> seen(g.order, 0);
    std::vector<int> reps;
    for (int x = 0; x < g.order; ++x) {
        if (seen[x]) continue;
        reps.push_back(x);
        for (int s : h.elements) seen[g.op(x, s)] = 1;
    }
    return reps;
}

SubgroupAsGroup subgroup_as_group(const GroupDescriptor& g, const Subgroup& h) {
    SubgroupAsGroup out;
    out.parent_of_local = h.elements;
    out.local_of_parent.assign(g.order, -1);
    for (int i = 0; i < static_cast<int>(h.elements.size()); ++i)
        out.local_of_parent[h.elements[i]] = i;
    const int m = static_cast<int>(h.elements.size());
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int prod = g.op(h.elements[a], h.elements[b]);
            int loc = out.local_of_parent[prod];
            if (loc < 0) throw ValidationError("element set is not closed under multiplication");
            t[a][b] = loc;
        }
    out.group = GroupDescriptor::finite_from_table(std::move(t));
    return out;
}

namespace {

std::string class_label(const GroupDescriptor& g, const Subgroup& rep, int index_within_order) {
    const int k = rep.order();
    if (g.is_finite() && k == g.order) return "G";
    if (k == 1) return "e";
    std::string base = "H" + std::to_string(k);
    if (index_within_order > 0) base += "." + std::to_string(index_within_order);
    return base;
}

}  // namespace

std::vector<ConjClass> enumerate_subgroup_classes(const GroupDescriptor& g, int circle_cutoff) {
    if (!g.is_finite()) {
        if (circle_cutoff < 1)
            throw ValidationError("circle subgroup enumeration needs a positive order cutoff");
        std::vector<ConjClass> classes;
        for (int m = 1; m <= circle_cutoff; ++m) {
            ConjClass c;
            c.representative = Subgroup::circle_cyclic(m);
            c.members = {c.representative};
            c.name = m == 1 ? "e" : "Z" + std::to_string(m);
            classes.push_back(std::move(c));
        }
        ConjClass full;
        full.representative = Subgroup::circle_full();
        full.members = {full.representative};
        full.name = "S1";
        classes.push_back(std::move(full));
        return classes;
    }

    // All subgroups by iterated generator extension, deduplicated by element set.
    std::set<std::vector<int>> known;
    std::vector<Subgroup> subs;
    auto add = [&](Subgroup s) {
        if (known.insert(s.elements).second) {
            subs.push_back(std::move(s));
            if (subs.size() > kMaxSubgroups)
                throw ValidationError("group too large: subgroup lattice exceeds limit");
            return true;
        }
        return false;
    };
    add(Subgroup::finite({g.identity}));
    for (int x = 0; x < g.order; ++x) add(subgroup_closure(g, {x}));
    for (std::size_t i = 0; i < subs.size(); ++i) {
        // copy: subs may be re-extended as it grows
        const Subgroup current = subs[i];
        if (current.order() == g.order) continue;
        for (int x = 0; x < g.order; ++x) {
            if (current.contains(x)) continue;
            std::vector<int> gens = current.elements;
            gens.push_back(x);
            add(subgroup_closure(g, gens));
        }
    }

    // group into conjugacy classes via canonical (lexicographically smallest) member
    std::map<std::vector<int>, std::vector<Subgroup>> by_canonical;
    for (const auto& s : subs) {
        std::set<std::vector<int>> orbit;
        for (int x = 0; x < g.order; ++x) orbit.insert(conjugate_subgroup(g, s, x).elements);
        const std::vector<int>& canon = *orbit.begin();
        if (by_canonical.count(canon)) continue;
        std::vector<Subgroup> members;
        for (const auto& e : orbit) members.push_back(Subgroup::finite(e));
        by_canonical.emplace(canon, std::move(members));
    }

    std::vector<ConjClass> classes;
    for (auto& [canon, members] : by_canonical) {
        ConjClass c;
        c.representative = Subgroup::finite(canon);
        c.members = std::move(members);
        classes.push_back(std::move(c));
    }
    std::sort(classes.begin(), classes.end(), [](const ConjClass& a, const ConjClass& b) {
        if (a.representative.order() != b.representative.order())
            return a.representative.order() < b.representative.order();
        return a.representative.elements < b.representative.elements;
    });
    // name classes; suffix only when several classes share an order
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const int ord = classes[i].representative.order();
        int within = 0, total = 0;
        for (std::size_t j = 0; j < classes.size(); ++j) {
            if (classes[j].representative.order() != ord) continue;
            ++total;
            if (j < i) ++within;
        }
        classes[i].name = class_label(g, classes[i].representative, total > 1 ? within + 1 : 0);
    }
    return classes;
}

TableOfMarks table_of_marks(const GroupDescriptor& g) {
    if (!g.is_finite()) throw ValidationError("table of marks is defined for finite groups only");
    TableOfMarks t;
    t.group = g;
    t.classes = enumerate_subgroup_classes(g);
    const int nc = static_cast<int>(t.classes.size());
    t.marks.assign(nc, std::vector<long long>(nc, 0));
    for (int i = 0; i < nc; ++i) {
        const Subgroup& h = t.classes[i].representative;
        const auto reps = left_coset_representatives(g, h);
        for (int j = 0; j < nc; ++j) {
            const Subgroup& k = t.classes[j].representative;
            long long count = 0;
            for (int r : reps) {
                // coset rH fixed by K  <=>  r^{-1} K r ⊆ H
                const int ri = g.inv(r);
                bool fixed = true;
                for (int x : k.elements)
                    if (!h.contains(g.op(g.op(ri, x), r))) { fixed = false; break; }
                if (fixed) ++count;
            }
            t.marks[i][j] = count;
        }
    }
    return t;
}

int TableOfMarks::class_index_of(const Subgroup& s) const {
    if (s.kind != GroupKind::Finite) return -1;
    for (int i = 0; i < static_cast<int>(classes.size()); ++i)
        for (const auto& m : classes[i].members)
            if (m.elements == s.elements) return i;
    return -1;
}

std::vector<long long> marks_to_coordinates(const TableOfMarks& t, const std::vector<Rational>& marks_in) {
    const int n = static_cast<int>(t.classes.size());
    if (static_cast<int>(marks_in.size()) != n)
        throw ContractViolation("mark vector length does not match class count");
    // sum_i x_i * marks[i][k] = m_k; marks is lower triangular with positive
    // diagonal, so solve from the last class (largest subgroups) downward.
    std::vector<Rational> x(n, Rational(0));
    for (int k = n - 1; k >= 0; --k) {
        Rational acc = marks_in[k];
        for (int i = k + 1; i < n; ++i) acc -= x[i] * Rational(t.marks[i][k]);
        x[k] = acc / Rational(t.marks[k][k]);
    }
    std::vector<long long> out(n);
    for (int i = 0; i < n; ++i) {
        if (x[i].denominator() != 1)
            throw NumericalError("not realizable as integral Burnside element (coordinate at class " +
                                 t.classes[i].name + " is " + to_string(x[i]) + ")");
        out[i] = x[i].numerator();
    }
    return out;
}

std::vector<long long> coordinates_to_marks(const TableOfMarks& t, const std::vector<long long>& coords) {
    const int n = static_cast<int>(t.classes.size());
    if (static_cast<int>(coords.size()) != n)
        throw ContractViolation("coordinate vector length does not match class count");
    std::vector<long long> m(n, 0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) m[k] += coords[i] * t.marks[i][k];
    return m;
}

}  // namespace equibif
