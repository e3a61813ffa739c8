#pragma once

#include <optional>

#include "torface/toricring.hpp"

namespace torface {

enum class Tri { no, yes, undecided };

/// One graded basis fraction of a monomial localization: numerator degree
/// in the glued semigroup, denominator degree in the site's semigroup.
struct Fraction {
    DegreeElem num;
    DegreeElem den;
    int site = -1;
};

/// Degreewise membership for the localization degree sets, the dual degree
/// sets, the connecting-map coefficients, and the module action on dual
/// basis elements. Decisions combine a bounded integral search along the
/// site's generator sum with an exact rational cone certificate; searches
/// that exhaust the cap surface as UndecidedError, never as `false`.
/// Results are memoized; the caches accept concurrent writers.
class Localization {
public:
    explicit Localization(const ToricFaceRing& r, int cap = 64) : r_(r), cap_(cap) {}

    const ToricFaceRing& ring() const { return r_; }
    int cap() const { return cap_; }

    /// a in M - M_site (degree set of the localization at the site)?
    Tri loc_member_tri(const DegreeElem& a, int site) const;
    bool loc_member(const DegreeElem& a, int site) const;

    /// a in M_site - M (degree set of the dual module): loc_member(-a).
    Tri dual_member_tri(const DegreeElem& a, int site) const;
    bool dual_member(const DegreeElem& a, int site) const;

    /// The degree-a basis fraction at the site, with the minimal witness
    /// exponent of the generator sum as denominator.
    Fraction unit_fraction(const DegreeElem& a, int site) const;
    bool fraction_is_zero(const Fraction& f) const;
    Fraction reinterpret(const Fraction& f, int new_site) const;
    bool equal_fractions(const Fraction& x, const Fraction& y) const;

    /// Coefficient {0,1} of the degree-a component of the natural map from
    /// the localization at sigma into the one at tau (sigma <= tau).
    /// Representative independence is asserted.
    int loc_map_coeff(const DegreeElem& a, int sigma, int tau) const;

    /// Action of the degree-a monomial on the dual basis element of degree
    /// c at the site; nullopt encodes zero.
    std::optional<DegreeElem> e_action(const DegreeElem& a, int site, const DegreeElem& c) const;

    /// Degree predicate of Hom(k[tau], E_sigma(M)): nonempty only for
    /// sigma <= tau, where it picks out {a - b : a in M_sigma, b in M_tau}.
    Tri hom_member_tri(const DegreeElem& c, int tau, int sigma) const;
    bool hom_member(const DegreeElem& c, int tau, int sigma) const;

private:
    const ToricFaceRing& r_;
    int cap_;

    struct Key {
        int site;
        int aux; // second cell for hom queries, -1 otherwise
        DegreeElem deg;
        bool operator==(const Key& o) const {
            return site == o.site && aux == o.aux && deg == o.deg;
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t h = std::hash<int>{}(k.site * 8191 + k.aux);
            hash_mix(h, DegHash{}(k.deg));
            return h;
        }
    };
    struct Verdict {
        Tri tri;
        int witness_n; // minimal exponent when tri == yes
    };
    mutable ConcurrentCache<Key, Verdict, KeyHash> loc_cache_;
    mutable ConcurrentCache<Key, Verdict, KeyHash> hom_cache_;

    Verdict decide_loc(const DegreeElem& a, int site) const;
    Verdict decide_hom(const DegreeElem& c, int tau, int sigma) const;
    bool cone_feasible(const DegreeElem& a, int site, int tau) const;
    [[noreturn]] void raise_undecided(const DegreeElem& a, int site) const;
};

} // namespace torface
