#include "torface/cellcomplex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace torface {

int CellComplex::cell_by_name(const std::string& n) const {
    for (int i = 0; i < size(); ++i)
        if (names_[(size_t)i] == n) return i;
    throw ValidationError("UnknownCell", "no cell with id '" + n + "'");
}

int CellComplex::incidence(int upper, int lower) const {
    auto it = eps_.find({upper, lower});
    return it == eps_.end() ? 0 : it->second;
}

std::vector<int> CellComplex::upper_set(int c) const {
    std::vector<int> r;
    for (int i = 0; i < size(); ++i)
        if (leq(c, i)) r.push_back(i);
    std::sort(r.begin(), r.end(), [&](int a, int b) {
        return dims_[(size_t)a] != dims_[(size_t)b] ? dims_[(size_t)a] < dims_[(size_t)b] : a < b;
    });
    return r;
}

std::vector<int> CellComplex::lower_set(int c) const {
    std::vector<int> r;
    for (int i = 0; i < size(); ++i)
        if (leq(i, c)) r.push_back(i);
    std::sort(r.begin(), r.end(), [&](int a, int b) {
        return dims_[(size_t)a] != dims_[(size_t)b] ? dims_[(size_t)a] < dims_[(size_t)b] : a < b;
    });
    return r;
}

std::optional<int> CellComplex::min_common_upper(int a, int b) const {
    int v = min_upper_[(size_t)a][(size_t)b];
    if (v < 0) return std::nullopt;
    return v;
}

std::vector<int> CellComplex::maximal_cells() const {
    std::vector<int> r;
    for (int i = 0; i < size(); ++i)
        if (covers_up_[(size_t)i].empty()) r.push_back(i);
    return r;
}

std::vector<int> CellComplex::cells_of_dim(int d) const {
    std::vector<int> r;
    for (int i = 0; i < size(); ++i)
        if (dims_[(size_t)i] == d) r.push_back(i);
    return r;
}

CellComplex CellComplex::validate(const RawComplex& raw) {
    CellComplex cc;
    std::map<std::string, int> index;
    for (auto& [id, d] : raw.cells) {
        if (index.count(id))
            throw ValidationError("DuplicateCell", "cell id '" + id + "' appears twice");
        if (d < -1) throw ValidationError("BadDimension", "cell '" + id + "' has dim < -1");
        index[id] = (int)cc.names_.size();
        cc.names_.push_back(id);
        cc.dims_.push_back(d);
    }
    int n = cc.size();
    for (int i = 0; i < n; ++i) {
        if (cc.dims_[(size_t)i] != -1) continue;
        if (cc.empty_ >= 0)
            throw ValidationError("MissingEmptyCell", "two cells of dim -1: '" +
                                  cc.names_[(size_t)cc.empty_] + "' and '" + cc.names_[(size_t)i] + "'");
        cc.empty_ = i;
    }
    if (cc.empty_ < 0)
        throw ValidationError("MissingEmptyCell", "no cell of dim -1");
    cc.max_dim_ = *std::max_element(cc.dims_.begin(), cc.dims_.end());

    auto lookup = [&](const std::string& id) {
        auto it = index.find(id);
        if (it == index.end())
            throw ValidationError("UnknownCell", "order/incidence refers to unknown id '" + id + "'");
        return it->second;
    };

    // reflexive-transitive closure; the empty cell sits below everything
    cc.leq_.assign((size_t)n, std::vector<char>((size_t)n, 0));
    for (int i = 0; i < n; ++i) {
        cc.leq_[(size_t)i][(size_t)i] = 1;
        cc.leq_[(size_t)cc.empty_][(size_t)i] = 1;
    }
    for (auto& [lo, hi] : raw.order) cc.leq_[(size_t)lookup(lo)][(size_t)lookup(hi)] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!cc.leq_[(size_t)i][(size_t)k]) continue;
            for (int j = 0; j < n; ++j)
                if (cc.leq_[(size_t)k][(size_t)j]) cc.leq_[(size_t)i][(size_t)j] = 1;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !cc.leq_[(size_t)i][(size_t)j]) continue;
            if (cc.leq_[(size_t)j][(size_t)i])
                throw ValidationError("NotAPoset", "cycle through '" + cc.names_[(size_t)i] +
                                      "' and '" + cc.names_[(size_t)j] + "'");
            if (cc.dims_[(size_t)i] >= cc.dims_[(size_t)j])
                throw ValidationError("DimGap", "'" + cc.names_[(size_t)i] + "' < '" +
                                      cc.names_[(size_t)j] + "' but dimensions do not increase");
        }

    // covering relation
    cc.covers_up_.assign((size_t)n, {});
    cc.covers_down_.assign((size_t)n, {});
    for (int lo = 0; lo < n; ++lo)
        for (int hi = 0; hi < n; ++hi) {
            if (lo == hi || !cc.leq_[(size_t)lo][(size_t)hi]) continue;
            bool cover = true;
            for (int m = 0; m < n && cover; ++m)
                if (m != lo && m != hi && cc.leq_[(size_t)lo][(size_t)m] && cc.leq_[(size_t)m][(size_t)hi])
                    cover = false;
            if (!cover) continue;
            if (cc.dims_[(size_t)hi] != cc.dims_[(size_t)lo] + 1)
                throw ValidationError("DimGap", "covering pair '" + cc.names_[(size_t)lo] + "' < '" +
                                      cc.names_[(size_t)hi] + "' skips a dimension");
            cc.covers_up_[(size_t)lo].push_back(hi);
            cc.covers_down_[(size_t)hi].push_back(lo);
        }
    for (int i = 0; i < n; ++i) {
        std::sort(cc.covers_up_[(size_t)i].begin(), cc.covers_up_[(size_t)i].end());
        std::sort(cc.covers_down_[(size_t)i].begin(), cc.covers_down_[(size_t)i].end());
    }

    // meets: unique maximal common lower bound (the intersection property)
    cc.meet_.assign((size_t)n, std::vector<int>((size_t)n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> lows;
            for (int c = 0; c < n; ++c)
                if (cc.leq_[(size_t)c][(size_t)a] && cc.leq_[(size_t)c][(size_t)b]) lows.push_back(c);
            std::vector<int> maximal;
            for (int c : lows) {
                bool top = true;
                for (int d : lows)
                    if (d != c && cc.leq_[(size_t)c][(size_t)d]) { top = false; break; }
                if (top) maximal.push_back(c);
            }
            if (maximal.size() != 1)
                throw ValidationError("NoMeet", "cells '" + cc.names_[(size_t)a] + "' and '" +
                                      cc.names_[(size_t)b] + "' have no unique maximal common face");
            cc.meet_[(size_t)a][(size_t)b] = maximal[0];
        }

    // minimal common upper bound (may not exist; unique when it does)
    cc.min_upper_.assign((size_t)n, std::vector<int>((size_t)n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> ups;
            for (int c = 0; c < n; ++c)
                if (cc.leq_[(size_t)a][(size_t)c] && cc.leq_[(size_t)b][(size_t)c]) ups.push_back(c);
            if (ups.empty()) continue;
            std::vector<int> minimal;
            for (int c : ups) {
                bool bottom = true;
                for (int d : ups)
                    if (d != c && cc.leq_[(size_t)d][(size_t)c]) { bottom = false; break; }
                if (bottom) minimal.push_back(c);
            }
            if (minimal.size() != 1)
                throw ValidationError("NoMeet", "common upper cells of '" + cc.names_[(size_t)a] +
                                      "' and '" + cc.names_[(size_t)b] + "' have no unique minimum");
            cc.min_upper_[(size_t)a][(size_t)b] = minimal[0];
        }

    // incidence function
    for (auto& [up, lo, sg] : raw.incidence) {
        int u = lookup(up), l = lookup(lo);
        bool cover = std::find(cc.covers_down_[(size_t)u].begin(), cc.covers_down_[(size_t)u].end(), l) !=
                     cc.covers_down_[(size_t)u].end();
        if (!cover)
            throw ValidationError("BadIncidence", "incidence entry on non-covering pair ('" + up +
                                  "','" + lo + "')");
        if (sg != 1 && sg != -1)
            throw ValidationError("BadIncidence", "incidence value for ('" + up + "','" + lo +
                                  "') must be +1 or -1");
        if (l == cc.empty_ && sg != 1)
            throw ValidationError("BadIncidence", "convention requires incidence('" + up +
                                  "', empty) = 1");
        if (cc.eps_.count({u, l}))
            throw ValidationError("BadIncidence", "duplicate incidence entry for ('" + up + "','" +
                                  lo + "')");
        cc.eps_[{u, l}] = sg;
    }
    // vertices over the empty cell default to +1
    for (int v = 0; v < n; ++v)
        if (cc.dims_[(size_t)v] == 0 && !cc.eps_.count({v, cc.empty_})) cc.eps_[{v, cc.empty_}] = 1;
    for (int u = 0; u < n; ++u)
        for (int l : cc.covers_down_[(size_t)u])
            if (!cc.eps_.count({u, l}))
                throw ValidationError("BadIncidence", "missing incidence for covering pair ('" +
                                      cc.names_[(size_t)u] + "','" + cc.names_[(size_t)l] + "')");

    // boundary-of-boundary: for every dim-2 interval the signed sum vanishes
    for (int hi = 0; hi < n; ++hi)
        for (int lo = 0; lo < n; ++lo) {
            if (!cc.leq_[(size_t)lo][(size_t)hi] || cc.dims_[(size_t)hi] != cc.dims_[(size_t)lo] + 2)
                continue;
            long long s = 0;
            for (int mid = 0; mid < n; ++mid)
                s += (long long)cc.incidence(hi, mid) * cc.incidence(mid, lo);
            if (s != 0)
                throw ValidationError("BadIncidence", "interval ('" + cc.names_[(size_t)hi] + "','" +
                                      cc.names_[(size_t)lo] + "') has nonzero incidence square");
        }

    return cc;
}

RawComplex make_simplicial(const std::vector<std::vector<std::string>>& facets,
                           const std::string& empty_id) {
    std::set<std::vector<std::string>> faces;
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        int m = (int)f.size();
        for (int mask = 1; mask < (1 << m); ++mask) {
            std::vector<std::string> sub;
            for (int i = 0; i < m; ++i)
                if (mask & (1 << i)) sub.push_back(f[(size_t)i]);
            faces.insert(sub);
        }
    }
    RawComplex raw;
    raw.cells.push_back({empty_id, -1});
    auto face_id = [](const std::vector<std::string>& f) {
        std::string s;
        for (size_t i = 0; i < f.size(); ++i) s += (i ? "|" : "") + f[i];
        return s;
    };
    std::vector<std::vector<std::string>> ordered(faces.begin(), faces.end());
    std::sort(ordered.begin(), ordered.end(), [](auto& a, auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (auto& f : ordered) raw.cells.push_back({face_id(f), (int)f.size() - 1});
    for (auto& f : ordered) {
        if (f.size() == 1) continue;
        for (size_t i = 0; i < f.size(); ++i) {
            std::vector<std::string> sub = f;
            sub.erase(sub.begin() + (long)i);
            raw.order.push_back({face_id(sub), face_id(f)});
            raw.incidence.push_back({face_id(f), face_id(sub), (i % 2 == 0) ? 1 : -1});
        }
    }
    return raw;
}

} // namespace torface
