#include "torface/localization.hpp"

#include <algorithm>

namespace torface {

void Localization::raise_undecided(const DegreeElem& a, int site) const {
    throw UndecidedError(r_.complex().name(a.cell), a.coords, r_.complex().name(site));
}

// Feasibility of a + c in C_tau with c in C_sigma, over the rationals.
// a is given in tau coordinates via its lift.
bool Localization::cone_feasible(const DegreeElem& a, int site, int tau) const {
    const auto& cc = r_.complex();
    int dim = cc.dim(tau) + 1;
    IVec at = r_.lift(a, tau);
    std::vector<IVec> gt;
    for (auto& g : r_.semigroup(tau).generators()) gt.push_back(g);
    std::vector<IVec> gs;
    for (auto& g : r_.semigroup(site).generators())
        gs.push_back(imat_apply(r_.embed(site, tau), g));
    if (dim == 0) return true;
    QMat m(dim, (int)(gt.size() + gs.size()));
    QVec b((size_t)dim);
    for (int i = 0; i < dim; ++i) {
        int col = 0;
        for (auto& g : gt) m.at(i, col++) = Rat(g[(size_t)i]);
        for (auto& g : gs) m.at(i, col++) = Rat(-g[(size_t)i]);
        b[(size_t)i] = Rat(at[(size_t)i]);
    }
    return lp_feasible(m, b);
}

Localization::Verdict Localization::decide_loc(const DegreeElem& a, int site) const {
    const auto& cc = r_.complex();
    if (!cc.min_common_upper(a.cell, site)) return {Tri::no, -1};
    DegreeElem s = r_.s_elem(site);
    // integral search: membership of a + n*s stabilizes upward in n; probe a
    // few steps before paying for the rational certificate
    DegreeElem y = a;
    int probe = std::min(4, cap_);
    int n = 0;
    for (; n <= probe; ++n) {
        if (r_.in_M(y)) return {Tri::yes, n};
        auto next = r_.add(y, s);
        if (!next) throw Error("internal: translate along the site sum must exist");
        y = *next;
    }
    bool feasible = false;
    for (int tau : cc.upper_set(site))
        if (cc.leq(a.cell, tau) && cone_feasible(a, site, tau)) { feasible = true; break; }
    if (!feasible) return {Tri::no, -1};
    for (; n <= cap_; ++n) {
        if (r_.in_M(y)) return {Tri::yes, n};
        auto next = r_.add(y, s);
        if (!next) throw Error("internal: translate along the site sum must exist");
        y = *next;
    }
    if (r_.conewise_normal())
        throw Error("internal: search cap reached on a cone-wise normal complex");
    return {Tri::undecided, -1};
}

Tri Localization::loc_member_tri(const DegreeElem& a, int site) const {
    Verdict v = loc_cache_.get_or_compute({site, -1, a}, [&] { return decide_loc(a, site); });
    return v.tri;
}

bool Localization::loc_member(const DegreeElem& a, int site) const {
    Tri t = loc_member_tri(a, site);
    if (t == Tri::undecided) raise_undecided(a, site);
    return t == Tri::yes;
}

Tri Localization::dual_member_tri(const DegreeElem& a, int site) const {
    return loc_member_tri(r_.negate(a), site);
}

bool Localization::dual_member(const DegreeElem& a, int site) const {
    Tri t = dual_member_tri(a, site);
    if (t == Tri::undecided) raise_undecided(a, site);
    return t == Tri::yes;
}

Fraction Localization::unit_fraction(const DegreeElem& a, int site) const {
    Verdict v = loc_cache_.get_or_compute({site, -1, a}, [&] { return decide_loc(a, site); });
    if (v.tri == Tri::undecided) raise_undecided(a, site);
    if (v.tri == Tri::no)
        throw Error("unit_fraction: degree " + r_.deg_str(a) + " not in the localization at '" +
                    r_.complex().name(site) + "'");
    DegreeElem den = r_.scale(r_.s_elem(site), v.witness_n);
    auto num = r_.add(a, den);
    if (!num || !r_.in_M(*num)) throw Error("internal: bad localization witness");
    return {*num, den, site};
}

bool Localization::fraction_is_zero(const Fraction& f) const {
    // t^b / t^c dies iff no cell holds both the numerator and the site;
    // the site's generator sum witnesses any annihilating denominator
    return !r_.complex().min_common_upper(f.num.cell, f.site).has_value();
}

Fraction Localization::reinterpret(const Fraction& f, int new_site) const {
    if (!r_.complex().leq(f.site, new_site))
        throw Error("fraction reinterpretation requires a larger site");
    if (!r_.member_at(f.den, new_site)) throw Error("internal: denominator leaves the site");
    return {f.num, f.den, new_site};
}

bool Localization::equal_fractions(const Fraction& x, const Fraction& y) const {
    if (x.site != y.site) throw Error("fractions at different sites are incomparable");
    bool zx = fraction_is_zero(x), zy = fraction_is_zero(y);
    if (zx || zy) return zx == zy;
    auto p = r_.add(x.num, y.den);
    auto q = r_.add(y.num, x.den);
    if (!p || !q) throw Error("internal: cross product of nonzero fractions must exist");
    return *p == *q;
}

int Localization::loc_map_coeff(const DegreeElem& a, int sigma, int tau) const {
    if (!r_.complex().leq(sigma, tau)) throw Error("loc_map_coeff requires sigma <= tau");
    Fraction f = unit_fraction(a, sigma);
    bool zero = fraction_is_zero(reinterpret(f, tau));
    // a second representative must give the same verdict
    auto num2 = r_.add(f.num, r_.s_elem(sigma));
    auto den2 = r_.add(f.den, r_.s_elem(sigma));
    if (!num2 || !den2) throw Error("internal: translated representative must exist");
    bool zero2 = fraction_is_zero(reinterpret({*num2, *den2, sigma}, tau));
    if (zero != zero2)
        throw Error("internal: localization map coefficient depends on the representative at " +
                    r_.deg_str(a));
    return zero ? 0 : 1;
}

std::optional<DegreeElem> Localization::e_action(const DegreeElem& a, int site,
                                                 const DegreeElem& c) const {
    const auto& cc = r_.complex();
    if (!r_.in_M(a)) throw Error("e_action needs a monomial degree");
    bool common = false;
    for (int t = 0; t < cc.size(); ++t)
        if (cc.leq(site, t) && cc.leq(a.cell, t) && cc.leq(c.cell, t)) { common = true; break; }
    if (!common) return std::nullopt;
    auto sum = r_.add(a, c);
    if (!sum) throw Error("internal: sum must exist inside a common cell");
    Tri t = dual_member_tri(*sum, site);
    if (t == Tri::undecided) raise_undecided(*sum, site);
    return t == Tri::yes ? std::optional<DegreeElem>(*sum) : std::nullopt;
}

Localization::Verdict Localization::decide_hom(const DegreeElem& c, int tau, int sigma) const {
    const auto& cc = r_.complex();
    DegreeElem neg = r_.negate(c);
    if (!cc.leq(neg.cell, tau)) return {Tri::no, -1};
    DegreeElem s = r_.s_elem(sigma);
    DegreeElem y = neg;
    int probe = std::min(4, cap_);
    int n = 0;
    for (; n <= probe; ++n) {
        if (r_.member_at(y, tau)) return {Tri::yes, n};
        auto next = r_.add(y, s);
        if (!next) throw Error("internal: translate along the site sum must exist");
        y = *next;
    }
    if (!cone_feasible(neg, sigma, tau)) return {Tri::no, -1};
    for (; n <= cap_; ++n) {
        if (r_.member_at(y, tau)) return {Tri::yes, n};
        auto next = r_.add(y, s);
        if (!next) throw Error("internal: translate along the site sum must exist");
        y = *next;
    }
    if (r_.conewise_normal())
        throw Error("internal: search cap reached on a cone-wise normal complex");
    return {Tri::undecided, -1};
}

Tri Localization::hom_member_tri(const DegreeElem& c, int tau, int sigma) const {
    if (!r_.complex().leq(sigma, tau)) return Tri::no;
    Verdict v =
        hom_cache_.get_or_compute({sigma, tau, c}, [&] { return decide_hom(c, tau, sigma); });
    return v.tri;
}

bool Localization::hom_member(const DegreeElem& c, int tau, int sigma) const {
    Tri t = hom_member_tri(c, tau, sigma);
    if (t == Tri::undecided) raise_undecided(c, sigma);
    return t == Tri::yes;
}

} // namespace torface
