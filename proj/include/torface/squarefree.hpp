#pragma once

#include <functional>
#include <map>
#include <optional>

#include "torface/toricring.hpp"

namespace torface {

/// A graded module presented through a finite degree window: dimensions per
/// degree and the multiplication matrices t^b : M_a -> M_{a+b}. Builtin
/// constructors cover the ring itself, the cell quotients, and the monomial
/// primes; explicit data comes from module files.
struct BoxedModule {
    int window = 0;                      // degrees live in this sup-norm ball
    std::vector<DegreeElem> support;     // degrees with nonzero space, sorted
    std::function<int(const DegreeElem&)> dim;
    std::function<QMat(const DegreeElem& b, const DegreeElem& a)> mult;
};

BoxedModule ring_module(const ToricFaceRing& r, int window);
BoxedModule quotient_module(const ToricFaceRing& r, int cell, int window);
BoxedModule prime_module(const ToricFaceRing& r, int cell, int window);
BoxedModule explicit_module(const ToricFaceRing& r, int window,
                            std::map<std::pair<int, IVec>, int> dims,
                            std::map<std::pair<std::pair<int, IVec>, std::pair<int, IVec>>, QMat> mults);

struct SqWitness {
    DegreeElem a, b;
    std::string reason;
};

struct SqResult {
    bool squarefree = true;
    std::optional<SqWitness> witness;
    bool box_too_small = false; // no nontrivial pair was checkable
    long long pairs_checked = 0;
};

/// Verifies bijectivity of multiplication on every in-box pair whose sum
/// keeps the support, reporting the first violation in canonical order.
SqResult check_squarefree(const ToricFaceRing& r, const BoxedModule& m, int box);

/// The structure map M_b -> M_a for supp(a) >= supp(b): inverse of the
/// multiplication up to a+b composed with the other multiplication.
QMat phi_map(const ToricFaceRing& r, const BoxedModule& m, const DegreeElem& a,
             const DegreeElem& b);

/// Finite poset representation: a space per cell and a structure map up
/// every comparable pair, functorial by construction.
struct SquarefreeModule {
    std::map<int, int> dims;                  // cell -> dimension
    std::map<std::pair<int, int>, QMat> maps; // (tau, sigma), tau <= sigma: V_tau -> V_sigma
};

SquarefreeModule to_incidence_module(const ToricFaceRing& r, const BoxedModule& m, int box);
SquarefreeModule to_incidence_module_at(const ToricFaceRing& r, const BoxedModule& m,
                                        const std::function<DegreeElem(int)>& choice);

} // namespace torface
