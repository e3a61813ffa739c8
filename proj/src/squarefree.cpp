#include "torface/squarefree.hpp"

#include <algorithm>
#include <memory>

namespace torface {

static QMat qmat_mul(const QMat& x, const QMat& y) {
    if (x.cols != y.rows) throw Error("matrix shape mismatch in product");
    QMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.at(i, k).is_zero()) continue;
            for (int j = 0; j < y.cols; ++j)
                r.at(i, j) = r.at(i, j) + x.at(i, k) * y.at(k, j);
        }
    return r;
}

static bool in_window(const DegreeElem& d, int window) {
    for (i64 x : d.coords)
        if (x > window || x < -window) return false;
    return true;
}

BoxedModule ring_module(const ToricFaceRing& r, int window) {
    BoxedModule m;
    m.window = window;
    m.support = r.box_members(window);
    m.dim = [&r, window](const DegreeElem& a) {
        return (in_window(a, window) && r.in_M(a)) ? 1 : 0;
    };
    m.mult = [&r, window](const DegreeElem& b, const DegreeElem& a) {
        auto s = r.add(a, b);
        bool from = in_window(a, window) && r.in_M(a);
        bool to = s && in_window(*s, window) && r.in_M(*s);
        QMat q(to ? 1 : 0, from ? 1 : 0);
        if (from && to) q.at(0, 0) = Rat(1);
        return q;
    };
    return m;
}

BoxedModule quotient_module(const ToricFaceRing& r, int cell, int window) {
    BoxedModule m;
    m.window = window;
    for (auto& a : r.box_members(window))
        if (r.member_at(a, cell)) m.support.push_back(a);
    m.dim = [&r, cell, window](const DegreeElem& a) {
        return (in_window(a, window) && r.member_at(a, cell)) ? 1 : 0;
    };
    m.mult = [&r, cell, window](const DegreeElem& b, const DegreeElem& a) {
        auto s = r.add(a, b);
        bool from = in_window(a, window) && r.member_at(a, cell);
        bool to = s && in_window(*s, window) && r.member_at(*s, cell);
        QMat q(to ? 1 : 0, from ? 1 : 0);
        if (from && to) q.at(0, 0) = Rat(1);
        return q;
    };
    return m;
}

BoxedModule prime_module(const ToricFaceRing& r, int cell, int window) {
    BoxedModule m;
    m.window = window;
    for (auto& a : r.box_members(window))
        if (!r.member_at(a, cell)) m.support.push_back(a);
    m.dim = [&r, cell, window](const DegreeElem& a) {
        return (in_window(a, window) && r.in_M(a) && !r.member_at(a, cell)) ? 1 : 0;
    };
    m.mult = [&r, cell, window](const DegreeElem& b, const DegreeElem& a) {
        auto s = r.add(a, b);
        bool from = in_window(a, window) && r.in_M(a) && !r.member_at(a, cell);
        bool to = s && in_window(*s, window) && r.in_M(*s) && !r.member_at(*s, cell);
        if (from && s && in_window(*s, window) && r.member_at(*s, cell))
            throw Error("internal: monomial prime is not an ideal");
        QMat q(to ? 1 : 0, from ? 1 : 0);
        if (from && to) q.at(0, 0) = Rat(1);
        return q;
    };
    return m;
}

BoxedModule explicit_module(
    const ToricFaceRing& r, int window, std::map<std::pair<int, IVec>, int> dims,
    std::map<std::pair<std::pair<int, IVec>, std::pair<int, IVec>>, QMat> mults) {
    BoxedModule m;
    m.window = window;
    auto dim_map = std::make_shared<decltype(dims)>(std::move(dims));
    auto mult_map = std::make_shared<decltype(mults)>(std::move(mults));
    std::vector<DegreeElem> support;
    for (auto& [key, d] : *dim_map) {
        if (d <= 0) continue;
        DegreeElem deg{key.first, key.second};
        if (!r.in_M(deg))
            throw ValidationError("NotInM", "module degree " + r.deg_str(deg) +
                                  " lies outside the glued semigroup");
        support.push_back(deg);
    }
    std::sort(support.begin(), support.end(),
              [&r](auto& a, auto& b) { return r.deg_less(a, b); });
    m.support = std::move(support);
    m.dim = [dim_map](const DegreeElem& a) {
        auto it = dim_map->find({a.cell, a.coords});
        return it == dim_map->end() ? 0 : it->second;
    };
    m.mult = [&r, dim_map, mult_map](const DegreeElem& b, const DegreeElem& a) {
        auto dim_of = [&](const DegreeElem& d) {
            auto it = dim_map->find({d.cell, d.coords});
            return it == dim_map->end() ? 0 : it->second;
        };
        auto s = r.add(a, b);
        int from = dim_of(a);
        int to = s ? dim_of(*s) : 0;
        auto it = mult_map->find({{b.cell, b.coords}, {a.cell, a.coords}});
        if (it != mult_map->end()) {
            if (it->second.rows != to || it->second.cols != from)
                throw ValidationError("ModuleShape", "multiplication matrix shape mismatch");
            return it->second;
        }
        return QMat(to, from); // unspecified maps are zero
    };
    return m;
}

SqResult check_squarefree(const ToricFaceRing& r, const BoxedModule& m, int box) {
    SqResult res;
    auto members = r.box_members(box);
    for (auto& a : members) {
        for (auto& b : members) {
            if (b == r.zero()) continue;
            auto s = r.add(a, b);
            if (!s || !in_window(*s, m.window)) continue;
            if (s->cell != a.cell) continue; // support must be preserved
            ++res.pairs_checked;
            QMat f = m.mult(b, a);
            int da = m.dim(a), ds = m.dim(*s);
            if (da != ds) {
                res.squarefree = false;
                res.witness = {a, b, "dimensions differ along a support-preserving multiplication"};
                return res;
            }
            if (da == 0) continue;
            if (rank_q_mat(f) < da) {
                res.squarefree = false;
                res.witness = {a, b, "multiplication map is not bijective"};
                return res;
            }
        }
    }
    res.box_too_small = res.pairs_checked == 0;
    return res;
}

QMat phi_map(const ToricFaceRing& r, const BoxedModule& m, const DegreeElem& a,
             const DegreeElem& b) {
    if (!r.complex().leq(r.supp(b), r.supp(a)))
        throw ValidationError("SuppOrderViolated", "phi needs supp(b) <= supp(a)");
    auto s = r.add(a, b);
    if (!s) throw ValidationError("SuppOrderViolated", "phi needs a+b to exist");
    if (!in_window(a, m.window) || !in_window(b, m.window) || !in_window(*s, m.window))
        throw ValidationError("OutOfBox", "phi degrees leave the module window");
    if (s->cell != a.cell)
        throw Error("internal: support must be preserved when supp(b) <= supp(a)");
    QMat up_from_b = m.mult(a, b);  // M_b -> M_{a+b}, multiply by t^a
    QMat up_from_a = m.mult(b, a);  // M_a -> M_{a+b}, multiply by t^b
    auto inv = inverse_q(up_from_a);
    if (!inv)
        throw ValidationError("SuppOrderViolated",
                              "multiplication up to a+b is not invertible; module not squarefree");
    return qmat_mul(*inv, up_from_b);
}

SquarefreeModule to_incidence_module_at(const ToricFaceRing& r, const BoxedModule& m,
                                        const std::function<DegreeElem(int)>& choice) {
    const auto& cc = r.complex();
    SquarefreeModule out;
    std::vector<DegreeElem> rep((size_t)cc.size());
    for (int c = 0; c < cc.size(); ++c) {
        rep[(size_t)c] = choice(c);
        if (r.supp(rep[(size_t)c]) != c)
            throw ValidationError("NoDegreeWithSupport",
                                  "chosen degree for cell '" + cc.name(c) + "' has wrong support");
        out.dims[c] = m.dim(rep[(size_t)c]);
    }
    for (int tau = 0; tau < cc.size(); ++tau)
        for (int sigma = 0; sigma < cc.size(); ++sigma) {
            if (!cc.leq(tau, sigma)) continue;
            out.maps[{tau, sigma}] = phi_map(r, m, rep[(size_t)sigma], rep[(size_t)tau]);
        }
    // functoriality of the collected maps
    for (auto& [key, f] : out.maps) {
        auto [tau, sigma] = key;
        for (int mid = 0; mid < cc.size(); ++mid) {
            if (!cc.leq(tau, mid) || !cc.leq(mid, sigma)) continue;
            QMat comp = qmat_mul(out.maps.at({mid, sigma}), out.maps.at({tau, mid}));
            if (!(comp == f))
                throw Error("internal: incidence-module maps fail functoriality between '" +
                            cc.name(tau) + "' and '" + cc.name(sigma) + "'");
        }
    }
    return out;
}

SquarefreeModule to_incidence_module(const ToricFaceRing& r, const BoxedModule& m, int box) {
    const auto& cc = r.complex();
    return to_incidence_module_at(r, m, [&](int c) {
        DegreeElem s = r.s_elem(c);
        if (in_window(s, box)) return s;
        for (auto& d : r.box_members(box))
            if (d.cell == c) return d;
        throw ValidationError("NoDegreeWithSupport", "no in-box degree with support '" +
                              cc.name(c) + "'");
    });
}

} // namespace torface
