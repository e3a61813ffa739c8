#include "torface/semigroup.hpp"

#include <algorithm>
#include <functional>

#include "torface/concurrent.hpp"

namespace torface {

static bool is_zero_vec(const IVec& v) {
    for (i64 x : v)
        if (x) return false;
    return true;
}

AffineSemigroup::AffineSemigroup(int rank, std::vector<IVec> generators)
    : rank_(rank), caches_(std::make_unique<Caches>()) {
    for (auto& g : generators) {
        if ((int)g.size() != rank)
            throw ValidationError("RankMismatch", "generator arity differs from rank");
        if (is_zero_vec(g)) continue;
        if (std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(g);
    }
}

AffineSemigroup::AffineSemigroup(const AffineSemigroup& o)
    : rank_(o.rank_), gens_(o.gens_), caches_(std::make_unique<Caches>()) {}

void AffineSemigroup::validate() const {
    IMat cols(rank_, (int)gens_.size());
    for (int j = 0; j < (int)gens_.size(); ++j)
        for (int i = 0; i < rank_; ++i) cols.at(i, j) = gens_[(size_t)j][(size_t)i];
    if (rank_q(cols) < rank_)
        throw ValidationError("RankMismatch", "generators do not span a full-dimensional cone");
    if (!lattice_saturated(cols))
        throw ValidationError("GroupNotSaturated", "generators span a proper sublattice of Z^rank");
    positive_functional(); // throws NotPointed when the cone contains a line
}

const QVec& AffineSemigroup::positive_functional() const {
    std::call_once(caches_->ell_once, [&] {
        if (rank_ == 0 || gens_.empty()) {
            caches_->ell = QVec((size_t)rank_, Rat(0));
            if (!gens_.empty())
                throw ValidationError("NotPointed", "rank-0 semigroup with nonzero generators");
            return;
        }
        int m = (int)gens_.size();
        // feasibility of l . g >= 1 for all g, l free: l = u - w, slack s
        QMat a(m, 2 * rank_ + m);
        QVec b((size_t)m, Rat(1));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < rank_; ++j) {
                a.at(i, j) = Rat(gens_[(size_t)i][(size_t)j]);
                a.at(i, rank_ + j) = Rat(-gens_[(size_t)i][(size_t)j]);
            }
            a.at(i, 2 * rank_ + i) = Rat(-1);
        }
        auto sol = lp_solve(a, b);
        if (!sol)
            throw ValidationError("NotPointed", "no strictly positive functional exists");
        i64 kmax = 1;
        for (int j = 0; j < rank_; ++j) {
            Rat lj = (*sol)[(size_t)j] - (*sol)[(size_t)(rank_ + j)];
            i64 c = lj.num / lj.den;
            if (c < 0) c = -c;
            kmax = std::max(kmax, c + 1);
        }
        // smallest sup-norm, then lexicographically smallest, integer witness
        for (i64 k = 1; k <= kmax; ++k) {
            IVec ell((size_t)rank_, -k);
            while (true) {
                bool ok = true;
                for (auto& g : gens_) {
                    i128 dot = 0;
                    for (int j = 0; j < rank_; ++j) dot += (i128)ell[(size_t)j] * g[(size_t)j];
                    if (dot < 1) { ok = false; break; }
                }
                if (ok) {
                    QVec out((size_t)rank_);
                    for (int j = 0; j < rank_; ++j) out[(size_t)j] = Rat(ell[(size_t)j]);
                    caches_->ell = out;
                    return;
                }
                int pos = rank_ - 1;
                while (pos >= 0 && ell[(size_t)pos] == k) { ell[(size_t)pos] = -k; --pos; }
                if (pos < 0) break;
                ++ell[(size_t)pos];
            }
        }
        throw ValidationError("NotPointed", "integer witness search failed");
    });
    return caches_->ell;
}

static Rat dot_q(const QVec& ell, const IVec& v) {
    Rat s(0);
    for (size_t i = 0; i < v.size(); ++i) s = s + ell[i] * Rat(v[i]);
    return s;
}

bool AffineSemigroup::contains_rec(const IVec& a) const {
    if (is_zero_vec(a)) return true;
    {
        std::lock_guard<std::mutex> lk(caches_->member_mu);
        auto it = caches_->member.find(a);
        if (it != caches_->member.end()) return it->second;
    }
    const QVec& ell = positive_functional();
    bool found = false;
    for (auto& g : gens_) {
        IVec rest((size_t)rank_);
        for (int i = 0; i < rank_; ++i)
            rest[(size_t)i] = checked_i64((i128)a[(size_t)i] - g[(size_t)i]);
        if (dot_q(ell, rest) < Rat(0)) continue;
        if (contains_rec(rest)) { found = true; break; }
    }
    std::lock_guard<std::mutex> lk(caches_->member_mu);
    caches_->member.emplace(a, found);
    return found;
}

bool AffineSemigroup::contains(const IVec& a) const {
    if ((int)a.size() != rank_)
        throw ValidationError("RankMismatch", "membership query arity differs from rank");
    return contains_rec(a);
}

bool AffineSemigroup::cone_contains(const IVec& a) const {
    if (rank_ == 0) return true;
    QMat m(rank_, (int)gens_.size());
    QVec b((size_t)rank_);
    for (int i = 0; i < rank_; ++i) {
        for (int j = 0; j < (int)gens_.size(); ++j) m.at(i, j) = Rat(gens_[(size_t)j][(size_t)i]);
        b[(size_t)i] = Rat(a[(size_t)i]);
    }
    return lp_feasible(m, b);
}

static IVec primitive(IVec v) {
    i64 g = 0;
    for (i64 x : v) g = gcd_i64(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

std::vector<IVec> AffineSemigroup::extreme_rays() const {
    std::vector<IVec> prim;
    for (auto& g : gens_) {
        IVec p = primitive(g);
        if (std::find(prim.begin(), prim.end(), p) == prim.end()) prim.push_back(p);
    }
    std::vector<IVec> rays;
    for (size_t i = 0; i < prim.size(); ++i) {
        std::vector<IVec> others;
        for (size_t j = 0; j < prim.size(); ++j)
            if (j != i) others.push_back(prim[j]);
        if (others.empty()) { rays.push_back(prim[i]); continue; }
        QMat m(rank_, (int)others.size());
        QVec b((size_t)rank_);
        for (int r = 0; r < rank_; ++r) {
            for (int j = 0; j < (int)others.size(); ++j) m.at(r, j) = Rat(others[(size_t)j][(size_t)r]);
            b[(size_t)r] = Rat(prim[i][(size_t)r]);
        }
        if (!lp_feasible(m, b)) rays.push_back(prim[i]);
    }
    std::sort(rays.begin(), rays.end());
    return rays;
}

const std::vector<IVec>& AffineSemigroup::hilbert_basis() const {
    std::call_once(caches_->hb_once, [&] {
        if (rank_ == 0 || gens_.empty()) return;
        std::vector<IVec> rays = extreme_rays();
        std::vector<IVec> candidates = rays;
        // lattice points of the fundamental parallelepipeds of every
        // full-rank ray subset (covers any triangulation of the cone)
        int nr = (int)rays.size();
        std::vector<int> comb((size_t)rank_);
        auto push = [&](const IVec& v) {
            if (is_zero_vec(v)) return;
            if (std::find(candidates.begin(), candidates.end(), v) == candidates.end())
                candidates.push_back(v);
        };
        std::function<void(int, int)> subsets = [&](int pos, int start) {
            if (pos == rank_) {
                IMat vmat(rank_, rank_);
                for (int j = 0; j < rank_; ++j)
                    for (int i = 0; i < rank_; ++i)
                        vmat.at(i, j) = rays[(size_t)comb[(size_t)j]][(size_t)i];
                if (rank_q(vmat) < rank_) return;
                QMat q(rank_, rank_);
                for (int i = 0; i < rank_; ++i)
                    for (int j = 0; j < rank_; ++j) q.at(i, j) = Rat(vmat.at(i, j));
                auto inv = inverse_q(q);
                IVec lo((size_t)rank_, 0), hi((size_t)rank_, 0);
                for (int i = 0; i < rank_; ++i)
                    for (int j = 0; j < rank_; ++j) {
                        i64 e = vmat.at(i, j);
                        if (e < 0) lo[(size_t)i] += e;
                        else hi[(size_t)i] += e;
                    }
                IVec z = lo;
                while (true) {
                    // z in parallelepiped iff all barycentric coords in [0,1)
                    bool inside = true;
                    for (int i = 0; i < rank_ && inside; ++i) {
                        Rat t(0);
                        for (int j = 0; j < rank_; ++j) t = t + inv->at(i, j) * Rat(z[(size_t)j]);
                        if (t < Rat(0) || !(t < Rat(1))) inside = false;
                    }
                    if (inside) push(z);
                    int pos2 = rank_ - 1;
                    while (pos2 >= 0 && z[(size_t)pos2] == hi[(size_t)pos2]) {
                        z[(size_t)pos2] = lo[(size_t)pos2];
                        --pos2;
                    }
                    if (pos2 < 0) break;
                    ++z[(size_t)pos2];
                }
                return;
            }
            for (int i = start; i <= nr - (rank_ - pos); ++i) {
                comb[(size_t)pos] = i;
                subsets(pos + 1, i + 1);
            }
        };
        subsets(0, 0);

        // saturation membership: integer point of the cone
        auto in_saturation = [&](const IVec& v) {
            QMat m(rank_, nr);
            QVec b((size_t)rank_);
            for (int i = 0; i < rank_; ++i) {
                for (int j = 0; j < nr; ++j) m.at(i, j) = Rat(rays[(size_t)j][(size_t)i]);
                b[(size_t)i] = Rat(v[(size_t)i]);
            }
            return lp_feasible(m, b);
        };
        // drop reducible candidates until stable
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < candidates.size(); ++i) {
                const QVec& ell = positive_functional();
                bool reducible = false;
                for (size_t j = 0; j < candidates.size() && !reducible; ++j) {
                    if (i == j) continue;
                    IVec diff((size_t)rank_);
                    for (int k = 0; k < rank_; ++k)
                        diff[(size_t)k] = candidates[i][(size_t)k] - candidates[j][(size_t)k];
                    if (is_zero_vec(diff)) continue;
                    if (!(dot_q(ell, diff) < Rat(0)) && in_saturation(diff)) reducible = true;
                }
                if (reducible) {
                    candidates.erase(candidates.begin() + (long)i);
                    changed = true;
                    break;
                }
            }
        }
        const QVec& ell = positive_functional();
        std::sort(candidates.begin(), candidates.end(), [&](const IVec& x, const IVec& y) {
            Rat lx = dot_q(ell, x), ly = dot_q(ell, y);
            if (lx != ly) return lx < ly;
            return x < y;
        });
        caches_->hb = candidates;
    });
    return caches_->hb;
}

bool AffineSemigroup::is_normal() const {
    for (auto& h : hilbert_basis())
        if (!contains(h)) return false;
    return true;
}

IVec AffineSemigroup::generator_sum() const {
    IVec s((size_t)rank_, 0);
    for (auto& g : gens_)
        for (int i = 0; i < rank_; ++i) s[(size_t)i] = checked_i64((i128)s[(size_t)i] + g[(size_t)i]);
    return s;
}

std::vector<IVec> AffineSemigroup::atoms() const {
    const QVec& ell = positive_functional();
    std::vector<IVec> out;
    for (auto& g : gens_) {
        bool reducible = false;
        for (auto& h : gens_) {
            IVec rest((size_t)rank_);
            for (int i = 0; i < rank_; ++i) rest[(size_t)i] = g[(size_t)i] - h[(size_t)i];
            if (is_zero_vec(rest)) continue;
            if (dot_q(ell, rest) < Rat(0)) continue;
            if (contains(rest)) { reducible = true; break; }
        }
        if (!reducible && std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace torface
