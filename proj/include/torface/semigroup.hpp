#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "torface/linalg.hpp"

namespace torface {

struct IVecHash {
    std::size_t operator()(const IVec& v) const {
        std::size_t h = 0x811c9dc5u;
        for (i64 x : v) hash_mix(h, std::hash<i64>{}((long long)x));
        return h;
    }
};

/// A finitely generated submonoid of Z^rank whose cone is pointed and whose
/// group closure is all of Z^rank. Membership is exact (pruned search),
/// the positive functional is a deterministic pointedness witness, and the
/// Hilbert basis describes the saturation Z^rank n cone.
/// Immutable after construction; the lazy caches are thread-safe.
class AffineSemigroup {
public:
    AffineSemigroup(int rank, std::vector<IVec> generators);
    AffineSemigroup(const AffineSemigroup& o);
    AffineSemigroup& operator=(const AffineSemigroup&) = delete;

    int rank() const { return rank_; }
    const std::vector<IVec>& generators() const { return gens_; }

    /// Checks pointedness + group saturation; throws ValidationError.
    void validate() const;

    /// a in M? Depth-first subtraction of generators, pruned by the
    /// positive functional and memoized.
    bool contains(const IVec& a) const;

    /// Deterministic positive covector: minimal sup-norm, then lexicographic,
    /// among integer covectors with l(g) >= 1 for every generator.
    const QVec& positive_functional() const;

    /// Generators of the saturation, sorted by (l-value, lex).
    const std::vector<IVec>& hilbert_basis() const;

    bool is_normal() const;

    IVec generator_sum() const;

    /// Generators that are not sums of two nonzero members; sorted.
    std::vector<IVec> atoms() const;

    /// Rational test: a in cone(generators)?
    bool cone_contains(const IVec& a) const;

    /// Primitive extreme rays of the cone, sorted.
    std::vector<IVec> extreme_rays() const;

private:
    int rank_;
    std::vector<IVec> gens_; // deduplicated, nonzero, input order otherwise

    struct Caches {
        std::once_flag ell_once, hb_once;
        QVec ell;
        std::vector<IVec> hb;
        std::mutex member_mu;
        std::unordered_map<IVec, bool, IVecHash> member;
    };
    mutable std::unique_ptr<Caches> caches_;

    bool contains_rec(const IVec& a) const;
};

} // namespace torface
