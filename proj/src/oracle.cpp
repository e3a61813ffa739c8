#include "torface/oracle.hpp"

#include <algorithm>
#include <deque>

namespace torface {

Oracle::Oracle(const ToricFaceRing& r, int bound) : r_(r), loc_(r), bound_(bound) {
    const auto& cc = r_.complex();
    int n = cc.size();
    members_.resize((size_t)n);
    locs_.resize((size_t)n);
    duals_.resize((size_t)n);
    fractions_.resize((size_t)n);

    // closure enumeration of each cell semigroup inside the coordinate ball
    for (int c = 0; c < n; ++c) {
        int rank = cc.dim(c) + 1;
        std::unordered_set<IVec, IVecHash> seen;
        std::deque<IVec> queue;
        IVec zero((size_t)rank, 0);
        seen.insert(zero);
        queue.push_back(zero);
        while (!queue.empty()) {
            IVec v = queue.front();
            queue.pop_front();
            for (auto& g : r_.semigroup(c).generators()) {
                IVec w = v;
                bool ok = true;
                for (int i = 0; i < rank; ++i) {
                    w[(size_t)i] = checked_i64((i128)w[(size_t)i] + g[(size_t)i]);
                    if (w[(size_t)i] > bound_ || w[(size_t)i] < -bound_) ok = false;
                }
                if (ok && seen.insert(w).second) queue.push_back(w);
            }
        }
        for (auto& v : seen) members_[(size_t)c].insert(r_.canonicalize(c, v));
    }
    std::unordered_set<DegreeElem, DegHash> uni;
    for (auto& s : members_) uni.insert(s.begin(), s.end());
    all_members_.assign(uni.begin(), uni.end());
    std::sort(all_members_.begin(), all_members_.end(),
              [&](auto& a, auto& b) { return r_.deg_less(a, b); });

    // difference sets and fraction representatives
    for (int site = 0; site < n; ++site) {
        for (int tau : cc.upper_set(site)) {
            for (auto& num : members_[(size_t)tau]) {
                for (auto& den : members_[(size_t)site]) {
                    auto diff = r_.sub(num, den);
                    if (!diff) continue;
                    locs_[(size_t)site].insert(*diff);
                    duals_[(size_t)site].insert(r_.negate(*diff));
                    Fraction f{num, den, site};
                    if (!loc_.fraction_is_zero(f))
                        fractions_[(size_t)site][*diff].push_back(f);
                }
            }
        }
        // consistency: all representatives of one degree agree
        for (auto& [deg, reps] : fractions_[(size_t)site])
            for (size_t i = 1; i < reps.size(); ++i)
                if (!loc_.equal_fractions(reps[0], reps[i]))
                    throw OracleBoundError("unequal fractions share degree " + r_.deg_str(deg));
    }
}

const std::unordered_set<DegreeElem, DegHash>& Oracle::members(int cell) const {
    return members_[(size_t)cell];
}
const std::vector<DegreeElem>& Oracle::all_members() const { return all_members_; }
const std::unordered_set<DegreeElem, DegHash>& Oracle::loc_degrees(int site) const {
    return locs_[(size_t)site];
}
const std::unordered_set<DegreeElem, DegHash>& Oracle::dual_degrees(int site) const {
    return duals_[(size_t)site];
}

Strand Oracle::brute_strand(char tag, const DegreeElem& a) const {
    const auto& cc = r_.complex();
    int d = r_.krull_dim();
    Strand s;
    s.tag = tag;
    s.degree = a;
    if (tag == 'L') {
        s.lo = 0;
        s.basis.resize((size_t)d + 1);
        for (int c = 0; c < cc.size(); ++c) {
            auto it = fractions_[(size_t)c].find(a);
            if (it != fractions_[(size_t)c].end() && !it->second.empty())
                s.basis[(size_t)(cc.dim(c) + 1)].push_back(c);
        }
        for (auto& b : s.basis) std::sort(b.begin(), b.end());
        for (int k = 0; k < d; ++k) {
            const auto& cols = s.basis[(size_t)k];
            const auto& rows = s.basis[(size_t)k + 1];
            IMat m((int)rows.size(), (int)cols.size());
            for (int j = 0; j < (int)cols.size(); ++j) {
                const Fraction& rep = fractions_[(size_t)cols[(size_t)j]].at(a).front();
                for (int i = 0; i < (int)rows.size(); ++i) {
                    int eps = cc.incidence(rows[(size_t)i], cols[(size_t)j]);
                    if (eps == 0) continue;
                    Fraction img = loc_.reinterpret(rep, rows[(size_t)i]);
                    m.at(i, j) = loc_.fraction_is_zero(img) ? 0 : eps;
                }
            }
            s.diff.push_back(std::move(m));
        }
        return s;
    }
    s.lo = -d;
    s.basis.resize((size_t)d + 1);
    for (int c = 0; c < cc.size(); ++c) {
        bool slot = tag == 'J' ? duals_[(size_t)c].count(a) > 0 : members_[(size_t)c].count(a) > 0;
        if (slot) s.basis[(size_t)(d - cc.dim(c) - 1)].push_back(c);
    }
    for (auto& b : s.basis) std::sort(b.begin(), b.end());
    for (int k = 0; k < d; ++k) {
        const auto& cols = s.basis[(size_t)k];
        const auto& rows = s.basis[(size_t)k + 1];
        IMat m((int)rows.size(), (int)cols.size());
        for (int j = 0; j < (int)cols.size(); ++j)
            for (int i = 0; i < (int)rows.size(); ++i)
                m.at(i, j) = cc.incidence(cols[(size_t)j], rows[(size_t)i]);
        s.diff.push_back(std::move(m));
    }
    return s;
}

std::vector<i64> numerical_semigroup_oracle(const std::vector<i64>& gens, i64 bound) {
    std::vector<char> in((size_t)bound + 1, 0);
    in[0] = 1;
    for (i64 x = 1; x <= bound; ++x)
        for (i64 g : gens)
            if (g <= x && in[(size_t)(x - g)]) { in[(size_t)x] = 1; break; }
    std::vector<i64> out;
    for (i64 a = -bound; a <= bound; ++a)
        if (a < 0 || !in[(size_t)a]) out.push_back(a);
    return out;
}

std::vector<OracleDiff> oracle_diff(const ToricFaceRing& r, const HomologyEngine& eng,
                                    const Oracle& oracle, int box, const Field& f) {
    std::vector<OracleDiff> diffs;
    int d = r.krull_dim();
    for (char tag : {'L', 'J', 'I'}) {
        for (auto& a : r.box_degrees(box)) {
            auto orc = strand_cohomology(oracle.brute_strand(tag, a), f);
            auto eng_ranks = strand_cohomology(eng.strand(tag, a), f);
            int lo = tag == 'L' ? 0 : -d;
            for (int k = 0; k <= d; ++k) {
                int idx = lo + k;
                int ro = orc.count(idx) ? orc.at(idx) : 0;
                int re = eng_ranks.count(idx) ? eng_ranks.at(idx) : 0;
                if (ro != re) diffs.push_back({tag, a, idx, ro, re});
            }
        }
    }
    return diffs;
}

} // namespace torface
