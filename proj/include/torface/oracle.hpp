#pragma once

#include <unordered_map>
#include <unordered_set>

#include "torface/homology.hpp"

namespace torface {

/// Ground-truth reconstructions by exhaustive materialization. Semigroup
/// points come from closure enumeration instead of the membership search,
/// localization slots from actual fraction representatives quotiented by
/// fraction equality, and dual slots from enumerated difference sets. The
/// only shared machinery is degree/fraction arithmetic and matrix ranks.
class Oracle {
public:
    Oracle(const ToricFaceRing& r, int bound);

    int bound() const { return bound_; }

    /// M_cell inside the enumeration ball, as canonical degrees.
    const std::unordered_set<DegreeElem, DegHash>& members(int cell) const;
    /// Union over cells, sorted.
    const std::vector<DegreeElem>& all_members() const;

    /// Degrees of the localization at the site (differences member - site
    /// member over common cells), enumerated.
    const std::unordered_set<DegreeElem, DegHash>& loc_degrees(int site) const;
    /// Degrees of the dual module at the site.
    const std::unordered_set<DegreeElem, DegHash>& dual_degrees(int site) const;

    Strand brute_strand(char tag, const DegreeElem& a) const;

private:
    const ToricFaceRing& r_;
    Localization loc_;
    int bound_;
    std::vector<std::unordered_set<DegreeElem, DegHash>> members_;
    std::vector<DegreeElem> all_members_;
    std::vector<std::unordered_set<DegreeElem, DegHash>> locs_, duals_;
    // nonzero fraction representatives at each site, keyed by their degree
    std::vector<std::unordered_map<DegreeElem, std::vector<Fraction>, DegHash>> fractions_;
};

/// Degrees in [-bound, bound] where the top local cohomology of a numerical
/// semigroup ring is nonzero: the complement of the semigroup.
std::vector<i64> numerical_semigroup_oracle(const std::vector<i64>& gens, i64 bound);

struct OracleDiff {
    char tag;
    DegreeElem deg;
    int index;
    int oracle_rank, engine_rank;
};

std::vector<OracleDiff> oracle_diff(const ToricFaceRing& r, const HomologyEngine& eng,
                                    const Oracle& oracle, int box, const Field& f);

} // namespace torface
