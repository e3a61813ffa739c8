#include "torface/homology.hpp"

#include <omp.h>

#include <algorithm>

namespace torface {

int Strand::dim_at(int index) const {
    int k = index - lo;
    if (k < 0 || k >= (int)basis.size()) return 0;
    return (int)basis[(size_t)k].size();
}

std::map<int, int> strand_cohomology(const Strand& s, const Field& f) {
    std::map<int, int> out;
    int m = (int)s.basis.size();
    std::vector<int> rk((size_t)m, 0); // rank of diff leaving index lo+k
    for (int k = 0; k + 1 < m; ++k) rk[(size_t)k] = rank_field(s.diff[(size_t)k], f);
    for (int k = 0; k < m; ++k) {
        int n = (int)s.basis[(size_t)k].size();
        int out_rank = (k + 1 < m) ? rk[(size_t)k] : 0;
        int in_rank = (k > 0) ? rk[(size_t)k - 1] : 0;
        int h = n - out_rank - in_rank;
        if (h < 0) throw Error("internal: negative cohomology rank");
        if (h > 0) out[s.lo + k] = h;
    }
    return out;
}

int CohomologyTable::rank_at(int index, const DegreeElem& d) const {
    for (auto& e : entries)
        if (e.index == index && e.deg == d) return e.rank;
    return 0;
}

// Cech strand: slot at sigma in position dim(sigma)+1 iff the degree lies in
// the localization's degree set; entries eps(tau,sigma) * map coefficient.
Strand HomologyEngine::cech_strand(const DegreeElem& a) const {
    const auto& cc = r_.complex();
    int d = r_.krull_dim();
    Strand s;
    s.tag = 'L';
    s.degree = a;
    s.lo = 0;
    s.basis.resize((size_t)d + 1);
    for (int c = 0; c < cc.size(); ++c) {
        Tri t = loc_.loc_member_tri(a, c);
        if (t == Tri::undecided) (void)loc_.loc_member(a, c); // raises
        if (t == Tri::yes) s.basis[(size_t)(cc.dim(c) + 1)].push_back(c);
    }
    for (auto& b : s.basis) std::sort(b.begin(), b.end());
    for (int k = 0; k < d; ++k) {
        const auto& cols = s.basis[(size_t)k];
        const auto& rows = s.basis[(size_t)k + 1];
        IMat m((int)rows.size(), (int)cols.size());
        for (int j = 0; j < (int)cols.size(); ++j)
            for (int i = 0; i < (int)rows.size(); ++i) {
                int eps = cc.incidence(rows[(size_t)i], cols[(size_t)j]);
                if (eps == 0) continue;
                m.at(i, j) = eps * loc_.loc_map_coeff(a, cols[(size_t)j], rows[(size_t)i]);
            }
        s.diff.push_back(std::move(m));
    }
    for (size_t k = 0; k + 1 < s.diff.size(); ++k) {
        IMat sq = imat_mul(s.diff[k + 1], s.diff[k]);
        for (i64 v : sq.a)
            if (v) throw Error("internal: Cech strand differential does not square to zero");
    }
    return s;
}

// Shared slot/matrix pattern of the dual and Ishida strands: a cell of
// dimension i-1 sits at cohomological index -i, and the differential maps
// each slot onto its facets with the incidence sign.
Strand HomologyEngine::poset_strand(char tag, const DegreeElem& a) const {
    const auto& cc = r_.complex();
    int d = r_.krull_dim();
    Strand s;
    s.tag = tag;
    s.degree = a;
    s.lo = -d;
    s.basis.resize((size_t)d + 1);
    for (int c = 0; c < cc.size(); ++c) {
        bool slot;
        if (tag == 'J') {
            Tri t = loc_.dual_member_tri(a, c);
            if (t == Tri::undecided) (void)loc_.dual_member(a, c); // raises
            slot = t == Tri::yes;
        } else {
            slot = r_.member_at(a, c);
        }
        if (slot) s.basis[(size_t)(d - cc.dim(c) - 1)].push_back(c);
    }
    for (auto& b : s.basis) std::sort(b.begin(), b.end());
    for (int k = 0; k < d; ++k) {
        const auto& cols = s.basis[(size_t)k];     // cells of dim d-k-1
        const auto& rows = s.basis[(size_t)k + 1]; // their facets
        IMat m((int)rows.size(), (int)cols.size());
        for (int j = 0; j < (int)cols.size(); ++j)
            for (int i = 0; i < (int)rows.size(); ++i)
                m.at(i, j) = cc.incidence(cols[(size_t)j], rows[(size_t)i]);
        s.diff.push_back(std::move(m));
    }
    return s;
}

Strand HomologyEngine::dual_strand(const DegreeElem& a) const {
    Strand s = poset_strand('J', a);
    // transpose identity against the Cech strand at the negated degree
    Strand l = cech_strand(r_.negate(a));
    int d = r_.krull_dim();
    for (int k = 0; k <= d; ++k)
        if (s.basis[(size_t)k] != l.basis[(size_t)(d - k)])
            throw Error("internal: dual strand slots differ from the negated Cech slots");
    for (int k = 0; k < d; ++k) {
        IMat t = l.diff[(size_t)(d - 1 - k)].transposed();
        if (!(s.diff[(size_t)k] == t))
            throw Error("internal: dual strand differential is not the transposed Cech matrix");
    }
    return s;
}

Strand HomologyEngine::ishida_strand(const DegreeElem& a) const {
    Strand s = poset_strand('I', a);
    for (size_t k = 0; k + 1 < s.diff.size(); ++k) {
        IMat sq = imat_mul(s.diff[k + 1], s.diff[k]);
        for (i64 v : sq.a)
            if (v) throw Error("internal: Ishida strand differential does not square to zero");
    }
    return s;
}

Strand HomologyEngine::strand(char tag, const DegreeElem& a) const {
    switch (tag) {
        case 'L': return cech_strand(a);
        case 'J': return dual_strand(a);
        case 'I': return ishida_strand(a);
        default: throw Error("unknown complex tag");
    }
}

void HomologyEngine::scan_degree(char tag, const DegreeElem& a, const Field& f,
                                 std::vector<TableEntry>& entries, bool& undecided) const {
    undecided = false;
    try {
        Strand s = strand(tag, a);
        for (auto& [idx, rank] : strand_cohomology(s, f)) {
            if (rank > s.dim_at(idx)) throw Error("internal: rank exceeds strand dimension");
            entries.push_back({idx, a, rank});
        }
    } catch (const UndecidedError&) {
        undecided = true;
        entries.clear();
    }
}

CohomologyTable HomologyEngine::box_scan(char tag, int box, const Field& f, int jobs) const {
    auto degrees = r_.box_degrees(box);
    int n = (int)degrees.size();
    std::vector<std::vector<TableEntry>> per((size_t)n);
    std::vector<char> und((size_t)n, 0);
    int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < n; ++i) {
        bool u = false;
        scan_degree(tag, degrees[(size_t)i], f, per[(size_t)i], u);
        und[(size_t)i] = u ? 1 : 0;
    }
    CohomologyTable t;
    t.tag = tag;
    t.box = box;
    t.field = f;
    for (int i = 0; i < n; ++i) {
        if (und[(size_t)i]) t.undecided.push_back(degrees[(size_t)i]);
        for (auto& e : per[(size_t)i]) t.entries.push_back(e);
    }
    std::sort(t.entries.begin(), t.entries.end(), [&](const TableEntry& x, const TableEntry& y) {
        if (x.index != y.index) return x.index < y.index;
        return r_.deg_less(x.deg, y.deg);
    });
    return t;
}

CohomologyTable HomologyEngine::box_scan_serial(char tag, int box, const Field& f) const {
    auto degrees = r_.box_degrees(box);
    CohomologyTable t;
    t.tag = tag;
    t.box = box;
    t.field = f;
    for (auto& a : degrees) {
        std::vector<TableEntry> entries;
        bool u = false;
        scan_degree(tag, a, f, entries, u);
        if (u) t.undecided.push_back(a);
        for (auto& e : entries) t.entries.push_back(e);
    }
    std::sort(t.entries.begin(), t.entries.end(), [&](const TableEntry& x, const TableEntry& y) {
        if (x.index != y.index) return x.index < y.index;
        return r_.deg_less(x.deg, y.deg);
    });
    return t;
}

CheckReport HomologyEngine::duality_check(int box, const Field& f, int jobs) const {
    CohomologyTable jt = box_scan('J', box, f, jobs);
    CohomologyTable lt = box_scan('L', box, f, jobs);
    CheckReport rep;
    rep.box = box;
    for (auto& a : jt.undecided) rep.undecided.push_back(a);
    auto degrees = r_.box_degrees(box);
    int d = r_.krull_dim();
    auto is_und = [&](const DegreeElem& a) {
        return std::find(jt.undecided.begin(), jt.undecided.end(), a) != jt.undecided.end() ||
               std::find(lt.undecided.begin(), lt.undecided.end(), r_.negate(a)) != lt.undecided.end();
    };
    for (auto& a : degrees) {
        if (is_und(a)) continue;
        DegreeElem na = r_.negate(a);
        for (int i = 0; i <= d; ++i) {
            int rj = jt.rank_at(-i, a);
            int rl = lt.rank_at(i, na);
            if (rj != rl) rep.violations.push_back({i, a, rj, rl});
        }
    }
    return rep;
}

CheckReport HomologyEngine::ishida_check(int box, const Field& f, int jobs) const {
    if (!r_.conewise_normal())
        throw ValidationError("NotConeWiseNormal",
                              "the Ishida comparison needs every cell semigroup saturated");
    CohomologyTable it = box_scan('I', box, f, jobs);
    CohomologyTable jt = box_scan('J', box, f, jobs);
    CheckReport rep;
    rep.box = box;
    for (auto& a : jt.undecided) rep.undecided.push_back(a);
    int d = r_.krull_dim();
    for (auto& a : r_.box_degrees(box)) {
        if (std::find(jt.undecided.begin(), jt.undecided.end(), a) != jt.undecided.end()) continue;
        for (int i = 0; i <= d; ++i) {
            int ri = it.rank_at(-i, a);
            int rj = jt.rank_at(-i, a);
            if (ri != rj) rep.violations.push_back({i, a, ri, rj});
        }
    }
    return rep;
}

CmReport HomologyEngine::cm_diagnostic(const CohomologyTable& jtable) const {
    CmReport rep;
    rep.dim = r_.krull_dim();
    for (auto& e : jtable.entries) {
        int i = -e.index;
        if (i != rep.dim && e.rank > 0) rep.witnesses.push_back({i, e.deg});
    }
    rep.undecided = jtable.undecided;
    if (!rep.witnesses.empty())
        rep.kind = CmKind::not_cm;
    else if (!rep.undecided.empty())
        rep.kind = CmKind::undecided;
    else
        rep.kind = CmKind::consistent;
    return rep;
}

} // namespace torface
