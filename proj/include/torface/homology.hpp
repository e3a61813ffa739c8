#pragma once

#include <map>

#include "torface/localization.hpp"

namespace torface {

/// One graded degree of a cellwise complex: basis slots are cells, the
/// differentials are signed 0/1 matrices between consecutive indices.
struct Strand {
    char tag = 'L';       // 'L' Cech, 'J' dual, 'I' Ishida
    DegreeElem degree;
    int lo = 0;                          // index of basis[0]
    std::vector<std::vector<int>> basis; // cells per cohomological index
    std::vector<IMat> diff;              // diff[k]: index lo+k -> lo+k+1

    int index_count() const { return (int)basis.size(); }
    int dim_at(int index) const;
};

/// Nonzero cohomology ranks by cohomological index.
std::map<int, int> strand_cohomology(const Strand& s, const Field& f);

struct TableEntry {
    int index;
    DegreeElem deg;
    int rank;
};

struct CohomologyTable {
    char tag = 'L';
    int box = 0;
    Field field;
    std::vector<TableEntry> entries;     // nonzero ranks, deterministic order
    std::vector<DegreeElem> undecided;   // degrees whose strand hit the cap

    int rank_at(int index, const DegreeElem& d) const;
};

struct Violation {
    int index;
    DegreeElem deg;
    int rank_a, rank_b;
};

struct CheckReport {
    int box = 0;
    std::vector<Violation> violations;
    std::vector<DegreeElem> undecided;
    bool pass() const { return violations.empty() && undecided.empty(); }
};

enum class CmKind { consistent, not_cm, undecided };

struct CmReport {
    CmKind kind = CmKind::consistent;
    int dim = 0;
    std::vector<std::pair<int, DegreeElem>> witnesses; // (i, a): H^{-i}(J)_a != 0, i != dim
    std::vector<DegreeElem> undecided;
};

/// Builds Cech, dual, and Ishida strands degree by degree and scans the
/// grading box. The scan distributes degrees over OpenMP workers; the
/// serial variant is the reference implementation the parallel path is
/// tested against. Tables come out in canonical order either way.
class HomologyEngine {
public:
    explicit HomologyEngine(const ToricFaceRing& r, int cap = 64) : r_(r), loc_(r, cap) {}

    const Localization& loc() const { return loc_; }
    const ToricFaceRing& ring() const { return r_; }

    Strand cech_strand(const DegreeElem& a) const;
    Strand dual_strand(const DegreeElem& a) const;  // checked against the transpose identity
    Strand ishida_strand(const DegreeElem& a) const;
    Strand strand(char tag, const DegreeElem& a) const;

    CohomologyTable box_scan(char tag, int box, const Field& f, int jobs = 0) const;
    CohomologyTable box_scan_serial(char tag, int box, const Field& f) const;

    CheckReport duality_check(int box, const Field& f, int jobs = 0) const;
    CheckReport ishida_check(int box, const Field& f, int jobs = 0) const;
    CmReport cm_diagnostic(const CohomologyTable& jtable) const;

private:
    const ToricFaceRing& r_;
    Localization loc_;

    Strand poset_strand(char tag, const DegreeElem& a) const;
    void scan_degree(char tag, const DegreeElem& a, const Field& f,
                     std::vector<TableEntry>& entries, bool& undecided) const;
};

} // namespace torface
