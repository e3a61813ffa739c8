#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "torface/cellcomplex.hpp"
#include "torface/concurrent.hpp"
#include "torface/semigroup.hpp"

namespace torface {

/// Canonical representative of an element of the glued degree lattice:
/// a cell together with coordinates in that cell's Z^{dim+1}, descended
/// as far as the face embeddings allow.
struct DegreeElem {
    int cell = -1;
    IVec coords;
    bool operator==(const DegreeElem& o) const { return cell == o.cell && coords == o.coords; }
    bool operator!=(const DegreeElem& o) const { return !(*this == o); }
};

struct DegHash {
    std::size_t operator()(const DegreeElem& d) const {
        std::size_t h = std::hash<int>{}(d.cell);
        hash_mix(h, IVecHash{}(d.coords));
        return h;
    }
};

/// Sparse ring element: (degree, coefficient) pairs sorted by degree order.
using RingElem = std::vector<std::pair<DegreeElem, Rat>>;

struct Variable {
    DegreeElem deg;
    std::string name;
};

/// Output of bounded word enumeration: minimal monomial and binomial
/// relations among the variables, up to the given total degree.
struct Presentation {
    std::vector<Variable> variables;
    std::vector<std::vector<int>> monomial_relations; // exponent vectors
    std::vector<std::pair<std::vector<int>, std::vector<int>>> binomial_relations; // lhs - rhs
    int degree_bound = 0;
    bool bound_hit = false; // new relations appeared at the bound
};

struct MonomialIdeal {
    int cell = -1; // the ideal of monomials outside this cell's semigroup
    std::vector<DegreeElem> gens; // minimal generators found inside the scan box
};

/// The toric face ring of a validated monoidal complex: the cell complex,
/// one affine semigroup per cell, and compatible integer face embeddings.
/// All degree arithmetic (canonical forms, partial addition, supports) and
/// the monomial side of the ring live here. Immutable after validation.
class ToricFaceRing {
public:
    /// Full validation of the monoidal-complex conditions: ranks, lattice
    /// saturation, pointedness, embedding injectivity and functoriality,
    /// the face condition, and the face/cell bijection.
    static ToricFaceRing validate_monoidal(
        CellComplex cc, std::vector<AffineSemigroup> semigroups,
        const std::vector<std::tuple<int, int, IMat>>& cover_embeddings); // (lower, upper, matrix)

    const CellComplex& complex() const { return cc_; }
    const AffineSemigroup& semigroup(int cell) const { return sg_[(size_t)cell]; }
    int krull_dim() const;
    bool conewise_normal() const;

    // -- degree arithmetic ------------------------------------------------
    DegreeElem canonicalize(int cell, IVec v) const;
    /// Same descent with a caller-shuffled facet order at every step;
    /// used to check that the canonical form is descent-order independent.
    DegreeElem canonicalize_seeded(int cell, IVec v, unsigned seed) const;
    DegreeElem zero() const { return {cc_.empty_cell(), {}}; }
    IVec lift(const DegreeElem& a, int to_cell) const;
    std::optional<DegreeElem> add(const DegreeElem& a, const DegreeElem& b) const;
    std::optional<DegreeElem> sub(const DegreeElem& a, const DegreeElem& b) const;
    DegreeElem negate(const DegreeElem& a) const;
    DegreeElem scale(const DegreeElem& a, i64 k) const;

    bool in_M(const DegreeElem& a) const;              // a canonical
    bool member_at(const DegreeElem& a, int cell) const; // a in M_cell
    int supp(const DegreeElem& a) const;               // throws NotInM
    DegreeElem s_elem(int cell) const;                 // generator-sum degree
    const IMat& embed(int lower, int upper) const;

    bool deg_less(const DegreeElem& a, const DegreeElem& b) const;
    std::string deg_str(const DegreeElem& a) const;

    /// All canonical degrees whose coordinates lie in the sup-norm ball of
    /// radius B of their own cell, sorted.
    std::vector<DegreeElem> box_degrees(int box) const;
    std::vector<DegreeElem> box_members(int box) const; // the |M| part

    // -- ring operations --------------------------------------------------
    RingElem r_monomial(const DegreeElem& a, const Rat& c) const;
    RingElem r_add(const RingElem& x, const RingElem& y) const;
    RingElem r_mul(const RingElem& x, const RingElem& y) const;

    Presentation presentation(int degree_bound, const std::vector<Variable>& labels = {}) const;
    std::vector<Variable> variables(const std::vector<Variable>& labels = {}) const;

    MonomialIdeal monomial_prime(int cell, int box) const;
    /// k[cell] viewed through degrees: membership and the surjection onto
    /// k[tau] for tau <= cell.
    bool quotient_member(int cell, const DegreeElem& a) const { return member_at(a, cell); }
    int quotient_map_coeff(int cell, int tau, const DegreeElem& a) const;
    std::vector<MonomialIdeal> minimal_primes(int box) const;

    ToricFaceRing(ToricFaceRing&&) = default;
    ToricFaceRing(const ToricFaceRing&) = delete;

private:
    CellComplex cc_;
    std::vector<AffineSemigroup> sg_;
    std::map<std::pair<int, int>, IMat> embed_; // (lower, upper) for all lower <= upper
    std::vector<DegreeElem> s_elems_;

    struct NormalCache {
        std::once_flag once;
        bool value = false;
    };
    mutable std::unique_ptr<NormalCache> normal_cache_;

    ToricFaceRing() : normal_cache_(std::make_unique<NormalCache>()) {}
};

std::vector<std::vector<int>> enumerate_words(int num_vars, int max_total);

} // namespace torface
