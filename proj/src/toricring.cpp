#include "torface/toricring.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace torface {

// ---------------------------------------------------------------------------
// validation

static bool in_rational_cone(const std::vector<IVec>& gens, const IVec& p, int dim) {
    if (dim == 0) return true;
    QMat m(dim, (int)gens.size());
    QVec b((size_t)dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < (int)gens.size(); ++j) m.at(i, j) = Rat(gens[(size_t)j][(size_t)i]);
        b[(size_t)i] = Rat(p[(size_t)i]);
    }
    return lp_feasible(m, b);
}

// subsets of extreme rays that span a face of the cone: there is a
// functional vanishing on the subset and strictly positive off it
static std::vector<std::vector<int>> face_subsets(const std::vector<IVec>& rays, int dim) {
    std::vector<std::vector<int>> faces;
    int n = (int)rays.size();
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> in, out;
        for (int i = 0; i < n; ++i) (mask & (1 << i) ? in : out).push_back(i);
        // h free (u - w), equalities on `in`, h.r - s = 1 on `out`
        int rows = n;
        int cols = 2 * dim + (int)out.size();
        QMat a(rows, cols);
        QVec b((size_t)rows);
        int row = 0;
        for (int i : in) {
            for (int j = 0; j < dim; ++j) {
                a.at(row, j) = Rat(rays[(size_t)i][(size_t)j]);
                a.at(row, dim + j) = Rat(-rays[(size_t)i][(size_t)j]);
            }
            b[(size_t)row] = Rat(0);
            ++row;
        }
        int k = 0;
        for (int i : out) {
            for (int j = 0; j < dim; ++j) {
                a.at(row, j) = Rat(rays[(size_t)i][(size_t)j]);
                a.at(row, dim + j) = Rat(-rays[(size_t)i][(size_t)j]);
            }
            a.at(row, 2 * dim + k) = Rat(-1);
            b[(size_t)row] = Rat(1);
            ++row;
            ++k;
        }
        if (lp_feasible(a, b)) faces.push_back(in);
    }
    return faces;
}

ToricFaceRing ToricFaceRing::validate_monoidal(
    CellComplex cc, std::vector<AffineSemigroup> semigroups,
    const std::vector<std::tuple<int, int, IMat>>& cover_embeddings) {
    ToricFaceRing r;
    int n = cc.size();
    if ((int)semigroups.size() != n)
        throw ValidationError("RankMismatch", "one semigroup per cell is required");
    for (int c = 0; c < n; ++c) {
        if (semigroups[(size_t)c].rank() != cc.dim(c) + 1)
            throw ValidationError("RankMismatch", "cell '" + cc.name(c) + "' needs rank dim+1 = " +
                                  std::to_string(cc.dim(c) + 1));
        semigroups[(size_t)c].validate();
        if (cc.dim(c) >= 0 && semigroups[(size_t)c].generators().empty())
            throw ValidationError("RankMismatch", "cell '" + cc.name(c) + "' has no generators");
    }

    std::map<std::pair<int, int>, IMat> cover;
    for (auto& [lo, hi, m] : cover_embeddings) {
        bool is_cover = std::find(cc.covers_down(hi).begin(), cc.covers_down(hi).end(), lo) !=
                        cc.covers_down(hi).end();
        if (!is_cover)
            throw ValidationError("MissingEmbedding", "embedding given for non-covering pair ('" +
                                  cc.name(lo) + "','" + cc.name(hi) + "')");
        if (m.rows != cc.dim(hi) + 1 || m.cols != cc.dim(lo) + 1)
            throw ValidationError("MissingEmbedding", "embedding matrix for ('" + cc.name(lo) +
                                  "','" + cc.name(hi) + "') has wrong shape");
        cover[{lo, hi}] = m;
    }
    for (int hi = 0; hi < n; ++hi)
        for (int lo : cc.covers_down(hi)) {
            if (lo == cc.empty_cell()) {
                cover.insert({{lo, hi}, IMat(cc.dim(hi) + 1, 0)});
                continue;
            }
            if (!cover.count({lo, hi}))
                throw ValidationError("MissingEmbedding", "no embedding for covering pair ('" +
                                      cc.name(lo) + "','" + cc.name(hi) + "')");
        }
    for (auto& [key, m] : cover)
        if (rank_q(m) < m.cols)
            throw ValidationError("FaceConditionFails", "embedding ('" + cc.name(key.first) + "','" +
                                  cc.name(key.second) + "') is not injective");

    // composite embeddings, functoriality along every covering chain
    for (int c = 0; c < n; ++c) r.embed_[{c, c}] = imat_identity(cc.dim(c) + 1);
    std::vector<std::pair<int, int>> pairs;
    for (int lo = 0; lo < n; ++lo)
        for (int hi = 0; hi < n; ++hi)
            if (lo != hi && cc.leq(lo, hi)) pairs.push_back({lo, hi});
    std::sort(pairs.begin(), pairs.end(), [&](auto& a, auto& b) {
        return cc.dim(a.second) - cc.dim(a.first) < cc.dim(b.second) - cc.dim(b.first);
    });
    for (auto& [lo, hi] : pairs) {
        std::optional<IMat> comp;
        int first_mid = -1;
        for (int mid : cc.covers_up(lo)) {
            if (!cc.leq(mid, hi)) continue;
            IMat cand = imat_mul(r.embed_.at({mid, hi}), cover.at({lo, mid}));
            if (!comp) {
                comp = cand;
                first_mid = mid;
            } else if (!(cand == *comp)) {
                throw ValidationError("FunctorialityFails", "composite ('" + cc.name(lo) + "' -> '" +
                                      cc.name(hi) + "') differs through '" + cc.name(first_mid) +
                                      "' and '" + cc.name(mid) + "'");
            }
        }
        if (!comp)
            throw ValidationError("FunctorialityFails", "no covering chain from '" + cc.name(lo) +
                                  "' to '" + cc.name(hi) + "'");
        r.embed_[{lo, hi}] = *comp;
    }

    // face condition on covering pairs: generator images are members, and
    // generators rationally on the embedded face pull back integrally
    for (auto& [key, m] : cover) {
        auto [lo, hi] = key;
        const auto& mlo = semigroups[(size_t)lo];
        const auto& mhi = semigroups[(size_t)hi];
        std::vector<IVec> image;
        for (auto& g : mlo.generators()) {
            IVec img = imat_apply(m, g);
            image.push_back(img);
            if (!mhi.contains(img))
                throw ValidationError("FaceConditionFails", "generator of '" + cc.name(lo) +
                                      "' does not map into the semigroup of '" + cc.name(hi) + "'");
        }
        for (auto& g : mhi.generators()) {
            if (lo == cc.empty_cell()) continue;
            if (!in_rational_cone(image, g, mhi.rank())) continue;
            auto pre = solve_integral(m, g);
            if (!pre || !mlo.contains(*pre))
                throw ValidationError("FaceConditionFails", "generator of '" + cc.name(hi) +
                                      "' lies on the face of '" + cc.name(lo) +
                                      "' but has no preimage there");
        }
    }

    // face/cell bijection per cell
    for (int c = 0; c < n; ++c) {
        int dim = cc.dim(c) + 1;
        if (dim == 0) continue;
        std::vector<IVec> rays = semigroups[(size_t)c].extreme_rays();
        auto faces = face_subsets(rays, dim);
        std::vector<int> lowers = cc.lower_set(c);
        if (faces.size() != lowers.size())
            throw ValidationError("FaceWithoutCell", "cell '" + cc.name(c) + "' has " +
                                  std::to_string(faces.size()) + " cone faces but " +
                                  std::to_string(lowers.size()) + " faces in the complex");
        std::vector<bool> matched(faces.size(), false);
        for (int tau : lowers) {
            std::vector<IVec> img;
            if (tau != cc.empty_cell())
                for (auto& g : semigroups[(size_t)tau].generators())
                    img.push_back(imat_apply(r.embed_.at({tau, c}), g));
            int found = -1;
            for (size_t f = 0; f < faces.size(); ++f) {
                std::vector<IVec> fg;
                for (int i : faces[f]) fg.push_back(rays[(size_t)i]);
                bool eq = true;
                for (auto& v : img)
                    if (!in_rational_cone(fg, v, dim)) { eq = false; break; }
                if (eq && img.empty() && !fg.empty()) eq = false;
                if (eq)
                    for (auto& v : fg)
                        if (!in_rational_cone(img, v, dim)) { eq = false; break; }
                if (eq) { found = (int)f; break; }
            }
            if (found < 0)
                throw ValidationError("FaceConditionFails", "image of cell '" + cc.name(tau) +
                                      "' is not a face of the cone of '" + cc.name(c) + "'");
            if (matched[(size_t)found])
                throw ValidationError("FaceWithoutCell", "two cells map onto one face of '" +
                                      cc.name(c) + "'");
            matched[(size_t)found] = true;
        }
        for (size_t f = 0; f < faces.size(); ++f)
            if (!matched[f])
                throw ValidationError("FaceWithoutCell", "a face of the cone of '" + cc.name(c) +
                                      "' corresponds to no cell");
    }

    r.cc_ = std::move(cc);
    r.sg_ = std::move(semigroups);
    r.s_elems_.resize((size_t)n);
    for (int c = 0; c < n; ++c)
        r.s_elems_[(size_t)c] = r.canonicalize(c, r.sg_[(size_t)c].generator_sum());
    return r;
}

int ToricFaceRing::krull_dim() const {
    int d = 0;
    for (int c : cc_.maximal_cells()) d = std::max(d, cc_.dim(c) + 1);
    return d;
}

bool ToricFaceRing::conewise_normal() const {
    std::call_once(normal_cache_->once, [&] {
        normal_cache_->value = true;
        for (auto& sg : sg_)
            if (!sg.is_normal()) { normal_cache_->value = false; break; }
    });
    return normal_cache_->value;
}

// ---------------------------------------------------------------------------
// degree arithmetic

DegreeElem ToricFaceRing::canonicalize(int cell, IVec v) const {
    bool descended = true;
    while (descended) {
        descended = false;
        for (int tau : cc_.covers_down(cell)) {
            auto pre = solve_integral(embed_.at({tau, cell}), v);
            if (pre) {
                cell = tau;
                v = *pre;
                descended = true;
                break;
            }
        }
    }
    return {cell, std::move(v)};
}

DegreeElem ToricFaceRing::canonicalize_seeded(int cell, IVec v, unsigned seed) const {
    std::mt19937 rng(seed);
    bool descended = true;
    while (descended) {
        descended = false;
        std::vector<int> facets = cc_.covers_down(cell);
        std::shuffle(facets.begin(), facets.end(), rng);
        for (int tau : facets) {
            auto pre = solve_integral(embed_.at({tau, cell}), v);
            if (pre) {
                cell = tau;
                v = *pre;
                descended = true;
                break;
            }
        }
    }
    return {cell, std::move(v)};
}

IVec ToricFaceRing::lift(const DegreeElem& a, int to_cell) const {
    if (a.cell == to_cell) return a.coords;
    if (!cc_.leq(a.cell, to_cell)) throw Error("lift target does not contain the degree's cell");
    return imat_apply(embed_.at({a.cell, to_cell}), a.coords);
}

std::optional<DegreeElem> ToricFaceRing::add(const DegreeElem& a, const DegreeElem& b) const {
    auto up = cc_.min_common_upper(a.cell, b.cell);
    if (!up) return std::nullopt;
    IVec x = lift(a, *up), y = lift(b, *up);
    for (size_t i = 0; i < x.size(); ++i) x[i] = checked_i64((i128)x[i] + y[i]);
    return canonicalize(*up, std::move(x));
}

std::optional<DegreeElem> ToricFaceRing::sub(const DegreeElem& a, const DegreeElem& b) const {
    return add(a, negate(b));
}

DegreeElem ToricFaceRing::negate(const DegreeElem& a) const {
    IVec v = a.coords;
    for (auto& x : v) x = -x;
    // lattice preimages are stable under negation, so this stays canonical
    return {a.cell, std::move(v)};
}

DegreeElem ToricFaceRing::scale(const DegreeElem& a, i64 k) const {
    if (k == 0) return zero();
    IVec v = a.coords;
    for (auto& x : v) x = checked_i64((i128)x * k);
    return canonicalize(a.cell, std::move(v));
}

bool ToricFaceRing::in_M(const DegreeElem& a) const {
    return sg_[(size_t)a.cell].contains(a.coords);
}

bool ToricFaceRing::member_at(const DegreeElem& a, int cell) const {
    return cc_.leq(a.cell, cell) && in_M(a);
}

int ToricFaceRing::supp(const DegreeElem& a) const {
    if (!in_M(a))
        throw ValidationError("NotInM", "degree " + deg_str(a) + " lies outside the glued semigroup");
    return a.cell;
}

DegreeElem ToricFaceRing::s_elem(int cell) const { return s_elems_[(size_t)cell]; }

const IMat& ToricFaceRing::embed(int lower, int upper) const { return embed_.at({lower, upper}); }

bool ToricFaceRing::deg_less(const DegreeElem& a, const DegreeElem& b) const {
    int da = cc_.dim(a.cell), db = cc_.dim(b.cell);
    if (da != db) return da < db;
    if (a.cell != b.cell) return a.cell < b.cell;
    return a.coords < b.coords;
}

std::string ToricFaceRing::deg_str(const DegreeElem& a) const {
    std::string s = cc_.name(a.cell) + ":[";
    for (size_t i = 0; i < a.coords.size(); ++i)
        s += (i ? "," : "") + std::to_string(a.coords[i]);
    return s + "]";
}

std::vector<DegreeElem> ToricFaceRing::box_degrees(int box) const {
    std::vector<DegreeElem> out;
    for (int c = 0; c < cc_.size(); ++c) {
        int r = cc_.dim(c) + 1;
        IVec v((size_t)r, -box);
        while (true) {
            DegreeElem d{c, v};
            if (canonicalize(c, v) == d) out.push_back(d);
            int pos = r - 1;
            while (pos >= 0 && v[(size_t)pos] == box) { v[(size_t)pos] = -box; --pos; }
            if (pos < 0) break;
            ++v[(size_t)pos];
        }
    }
    std::sort(out.begin(), out.end(), [&](auto& a, auto& b) { return deg_less(a, b); });
    return out;
}

std::vector<DegreeElem> ToricFaceRing::box_members(int box) const {
    std::vector<DegreeElem> out;
    for (auto& d : box_degrees(box))
        if (in_M(d)) out.push_back(d);
    return out;
}

// ---------------------------------------------------------------------------
// ring operations

RingElem ToricFaceRing::r_monomial(const DegreeElem& a, const Rat& c) const {
    if (c.is_zero()) return {};
    return {{a, c}};
}

RingElem ToricFaceRing::r_add(const RingElem& x, const RingElem& y) const {
    RingElem out;
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && deg_less(x[i].first, y[j].first))) {
            out.push_back(x[i++]);
        } else if (i == x.size() || deg_less(y[j].first, x[i].first)) {
            out.push_back(y[j++]);
        } else {
            Rat c = x[i].second + y[j].second;
            if (!c.is_zero()) out.push_back({x[i].first, c});
            ++i;
            ++j;
        }
    }
    return out;
}

RingElem ToricFaceRing::r_mul(const RingElem& x, const RingElem& y) const {
    RingElem out;
    for (auto& [da, ca] : x)
        for (auto& [db, cb] : y) {
            auto s = add(da, db);
            if (!s) continue;
            out = r_add(out, r_monomial(*s, ca * cb));
        }
    return out;
}

// ---------------------------------------------------------------------------
// presentation by bounded word enumeration

std::vector<Variable> ToricFaceRing::variables(const std::vector<Variable>& labels) const {
    std::vector<DegreeElem> degs;
    std::unordered_set<DegreeElem, DegHash> seen;
    for (int c = 0; c < cc_.size(); ++c)
        for (auto& atom : sg_[(size_t)c].atoms()) {
            DegreeElem d = canonicalize(c, atom);
            if (seen.insert(d).second) degs.push_back(d);
        }
    std::sort(degs.begin(), degs.end(), [&](auto& a, auto& b) { return deg_less(a, b); });
    std::vector<Variable> out;
    for (size_t i = 0; i < degs.size(); ++i) {
        std::string name = "x" + std::to_string(i);
        for (auto& l : labels)
            if (l.deg == degs[i]) name = l.name;
        out.push_back({degs[i], name});
    }
    return out;
}

std::vector<std::vector<int>> enumerate_words(int num_vars, int max_total) {
    std::vector<std::vector<int>> out;
    std::vector<int> e((size_t)num_vars, 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == num_vars) {
            out.push_back(e);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            e[(size_t)pos] = k;
            rec(pos + 1, remaining - k);
        }
        e[(size_t)pos] = 0;
    };
    rec(0, max_total);
    return out;
}

namespace {

int word_degree(const std::vector<int>& w) {
    int d = 0;
    for (int e : w) d += e;
    return d;
}

// expanded index tuple (variables listed with multiplicity), compared
// lexicographically after total degree; this fixes all representative choices
bool word_less(const std::vector<int>& a, const std::vector<int>& b) {
    int da = word_degree(a), db = word_degree(b);
    if (da != db) return da < db;
    return a > b; // higher exponents on earlier variables first
}

// sparse vector over word indices with a running row-echelon span
struct Span {
    std::map<int, std::map<int, Rat>> rows; // lead word -> row

    static int lead(const std::map<int, Rat>& v) { return v.begin()->first; }

    std::map<int, Rat> reduce(std::map<int, Rat> v) const {
        while (!v.empty()) {
            auto it = rows.find(lead(v));
            if (it == rows.end()) break;
            Rat f = v.begin()->second;
            for (auto& [w, c] : it->second) {
                auto jt = v.find(w);
                Rat nc = (jt == v.end() ? Rat(0) : jt->second) - f * c;
                if (nc.is_zero()) {
                    if (jt != v.end()) v.erase(jt);
                } else {
                    v[w] = nc;
                }
            }
        }
        return v;
    }

    bool insert(std::map<int, Rat> v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        Rat f = v.begin()->second;
        for (auto& [w, c] : v) c = c / f;
        rows[lead(v)] = std::move(v);
        return true;
    }
};

} // namespace

Presentation ToricFaceRing::presentation(int degree_bound, const std::vector<Variable>& labels) const {
    Presentation p;
    p.degree_bound = degree_bound;
    p.variables = variables(labels);
    int nv = (int)p.variables.size();

    auto words = enumerate_words(nv, degree_bound);
    words.erase(std::remove_if(words.begin(), words.end(),
                               [](auto& w) { return word_degree(w) == 0; }),
                words.end());
    std::sort(words.begin(), words.end(), word_less);
    std::map<std::vector<int>, int> word_idx;
    for (size_t i = 0; i < words.size(); ++i) word_idx[words[i]] = (int)i;

    // evaluate each word in the ring
    std::vector<std::optional<DegreeElem>> value(words.size());
    for (size_t i = 0; i < words.size(); ++i) {
        std::optional<DegreeElem> v = zero();
        for (int j = 0; j < nv && v; ++j)
            for (int k = 0; k < words[i][(size_t)j] && v; ++k)
                v = add(*v, p.variables[(size_t)j].deg);
        value[i] = v;
    }

    // fibers of the evaluation, keyed by degree element
    std::unordered_map<DegreeElem, std::vector<int>, DegHash> fiber;
    std::vector<int> zero_words;
    for (size_t i = 0; i < words.size(); ++i) {
        if (value[i])
            fiber[*value[i]].push_back((int)i);
        else
            zero_words.push_back((int)i);
    }

    struct Gen {
        int degree;
        std::vector<int> w1, w2; // exponent vectors; w2 empty for monomials
        bool binomial;
    };
    std::vector<Gen> chosen;
    Span span;

    auto add_word = [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> s((size_t)nv);
        for (int i = 0; i < nv; ++i) s[(size_t)i] = a[(size_t)i] + b[(size_t)i];
        return s;
    };

    for (int level = 1; level <= degree_bound; ++level) {
        // multiples of already chosen generators entering this level
        for (auto& g : chosen) {
            int md = level - g.degree;
            if (md < 1) continue;
            for (auto& m : words) {
                if (word_degree(m) != md) continue;
                std::map<int, Rat> v;
                v[word_idx.at(add_word(g.w1, m))] = Rat(1);
                if (g.binomial) v[word_idx.at(add_word(g.w2, m))] = Rat(-1);
                span.insert(std::move(v));
            }
        }
        // monomial candidates
        for (int w : zero_words) {
            if (word_degree(words[(size_t)w]) != level) continue;
            std::map<int, Rat> v;
            v[w] = Rat(1);
            if (span.insert(std::move(v))) {
                chosen.push_back({level, words[(size_t)w], {}, false});
                p.monomial_relations.push_back(words[(size_t)w]);
                if (level == degree_bound) p.bound_hit = true;
            }
        }
        // binomial candidates: every fiber word against the fiber minimum
        std::vector<DegreeElem> fiber_keys;
        for (auto& [k, v] : fiber)
            if (v.size() > 1) fiber_keys.push_back(k);
        std::sort(fiber_keys.begin(), fiber_keys.end(),
                  [&](auto& a, auto& b) { return deg_less(a, b); });
        for (auto& key : fiber_keys) {
            auto& ws = fiber[key];
            std::sort(ws.begin(), ws.end());
            int w0 = ws[0];
            for (size_t i = 1; i < ws.size(); ++i) {
                int w = ws[i];
                int lvl = std::max(word_degree(words[(size_t)w]), word_degree(words[(size_t)w0]));
                if (lvl != level) continue;
                std::map<int, Rat> v;
                v[w] = Rat(1);
                v[w0] = Rat(-1);
                if (span.insert(std::move(v))) {
                    chosen.push_back({level, words[(size_t)w], words[(size_t)w0], true});
                    p.binomial_relations.push_back({words[(size_t)w], words[(size_t)w0]});
                    if (level == degree_bound) p.bound_hit = true;
                }
            }
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// monomial primes

MonomialIdeal ToricFaceRing::monomial_prime(int cell, int box) const {
    MonomialIdeal ideal;
    ideal.cell = cell;
    auto vars = variables();
    for (auto& a : box_members(box)) {
        if (member_at(a, cell)) continue;
        bool reducible = false;
        for (auto& v : vars) {
            auto rest = sub(a, v.deg);
            if (!rest || *rest == zero()) continue;
            if (in_M(*rest)) { reducible = true; break; }
        }
        if (!reducible) ideal.gens.push_back(a);
    }
    return ideal;
}

int ToricFaceRing::quotient_map_coeff(int cell, int tau, const DegreeElem& a) const {
    if (!cc_.leq(tau, cell)) throw Error("quotient surjection needs tau <= cell");
    if (!member_at(a, cell)) return 0;
    return member_at(a, tau) ? 1 : 0;
}

std::vector<MonomialIdeal> ToricFaceRing::minimal_primes(int box) const {
    for (auto& a : box_members(box)) {
        bool covered = false;
        for (int t : cc_.maximal_cells())
            if (member_at(a, t)) { covered = true; break; }
        if (!covered)
            throw Error("internal: monomial " + deg_str(a) + " outside every maximal cell");
    }
    std::vector<MonomialIdeal> out;
    for (int t : cc_.maximal_cells()) out.push_back(monomial_prime(t, box));
    return out;
}

} // namespace torface
