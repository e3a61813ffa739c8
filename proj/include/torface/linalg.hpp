#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torface/errors.hpp"

namespace torface {

using i64 = long long;
using i128 = __int128;

i64 checked_i64(i128 v);
i64 gcd_i64(i64 a, i64 b);

/// Exact rational scalar on 64-bit numerator/denominator, gcd-normalized,
/// denominator always positive. Arithmetic goes through 128-bit
/// intermediates and throws OverflowError when a result leaves 64 bits.
struct Rat {
    i64 num = 0;
    i64 den = 1;

    Rat() = default;
    Rat(i64 n) : num(n), den(1) {}
    Rat(i128 n, i128 d);

    bool is_zero() const { return num == 0; }
    Rat operator-() const { return Rat(-(i128)num, (i128)den); }
    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const;
    bool operator<=(const Rat& o) const { return *this < o || *this == o; }
    std::string str() const;
};

template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c, T(0)) {}
    T& at(int r, int c) { return a[(size_t)r * cols + c]; }
    const T& at(int r, int c) const { return a[(size_t)r * cols + c]; }
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    Mat transposed() const {
        Mat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }
};

using IMat = Mat<i64>;
using QMat = Mat<Rat>;
using IVec = std::vector<i64>;
using QVec = std::vector<Rat>;

IMat imat_mul(const IMat& x, const IMat& y);
IVec imat_apply(const IMat& m, const IVec& v);
IMat imat_identity(int n);

/// Rank over Q of an integer matrix, by fraction-free (Bareiss) elimination.
int rank_q(IMat m);
/// Rank over the prime field F_p.
int rank_fp(IMat m, i64 p);

enum class FieldKind { rationals, prime };
struct Field {
    FieldKind kind = FieldKind::rationals;
    i64 p = 32003;
    static Field q() { return {FieldKind::rationals, 0}; }
    static Field fp(i64 p) { return {FieldKind::prime, p}; }
    std::string str() const { return kind == FieldKind::rationals ? "q" : "fp:" + std::to_string(p); }
};
int rank_field(const IMat& m, const Field& f);
int rank_field(const QMat& m, const Field& f);

/// Solve E x = v for integer x; E must have full column rank. Returns
/// nullopt when no rational solution exists or the solution is not integral.
std::optional<IVec> solve_integral(const IMat& e, const IVec& v);

int rank_q_mat(const QMat& m);
std::optional<QMat> inverse_q(const QMat& m);

/// Exact phase-I simplex with Bland's rule: does { x >= 0 : A x = b }
/// have a point? `lp_solve` additionally returns one.
bool lp_feasible(const QMat& a, const QVec& b);
std::optional<QVec> lp_solve(const QMat& a, const QVec& b);

/// True when the columns of `gens` generate Z^rows as a group
/// (all elementary divisors 1, checked through maximal-minor gcd).
bool lattice_saturated(const IMat& gens_cols);

} // namespace torface
