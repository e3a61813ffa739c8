#include "torface/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace torface {

i64 checked_i64(i128 v) {
    if (v > (i128)INT64_MAX || v < (i128)INT64_MIN)
        throw OverflowError("integer out of 64-bit range");
    return (i64)v;
}

i64 gcd_i64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { i64 t = a % b; a = b; b = t; }
    return a;
}

static i128 gcd_i128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { i128 t = a % b; a = b; b = t; }
    return a;
}

Rat::Rat(i128 n, i128 d) {
    if (d == 0) throw Error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd_i128(n, d);
    if (g > 1) { n /= g; d /= g; }
    num = checked_i64(n);
    den = checked_i64(d);
}

Rat Rat::operator+(const Rat& o) const {
    return Rat((i128)num * o.den + (i128)o.num * den, (i128)den * o.den);
}
Rat Rat::operator-(const Rat& o) const {
    return Rat((i128)num * o.den - (i128)o.num * den, (i128)den * o.den);
}
Rat Rat::operator*(const Rat& o) const {
    return Rat((i128)num * o.num, (i128)den * o.den);
}
Rat Rat::operator/(const Rat& o) const {
    if (o.num == 0) throw Error("rational division by zero");
    return Rat((i128)num * o.den, (i128)den * o.num);
}
bool Rat::operator<(const Rat& o) const {
    return (i128)num * o.den < (i128)o.num * den;
}
std::string Rat::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

IMat imat_mul(const IMat& x, const IMat& y) {
    if (x.cols != y.rows) throw Error("matrix shape mismatch in product");
    IMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) {
                i128 v = (i128)r.at(i, j) + (i128)x.at(i, k) * y.at(k, j);
                r.at(i, j) = checked_i64(v);
            }
        }
    return r;
}

IVec imat_apply(const IMat& m, const IVec& v) {
    if ((int)v.size() != m.cols) throw Error("matrix/vector shape mismatch");
    IVec r(m.rows, 0);
    for (int i = 0; i < m.rows; ++i) {
        i128 s = 0;
        for (int j = 0; j < m.cols; ++j) s += (i128)m.at(i, j) * v[j];
        r[i] = checked_i64(s);
    }
    return r;
}

IMat imat_identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

int rank_q(IMat m) {
    // Bareiss: intermediate entries are minors of the input, exact division.
    int r = 0;
    i128 prev = 1;
    std::vector<i128> a(m.a.begin(), m.a.end());
    auto at = [&](int i, int j) -> i128& { return a[(size_t)i * m.cols + j]; };
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(at(piv, j), at(r, j));
        for (int i = r + 1; i < m.rows; ++i) {
            for (int j = c + 1; j < m.cols; ++j)
                at(i, j) = (at(r, c) * at(i, j) - at(i, c) * at(r, j)) / prev;
            at(i, c) = 0;
        }
        prev = at(r, c);
        ++r;
    }
    return r;
}

static i64 mod_pos(i128 v, i64 p) {
    i64 r = (i64)(v % p);
    return r < 0 ? r + p : r;
}

static i64 inv_mod(i64 a, i64 p) {
    // extended Euclid
    i64 t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr) {
        i64 q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw Error("element not invertible mod p");
    return t < 0 ? t + p : t;
}

int rank_fp(IMat m, i64 p) {
    for (auto& v : m.a) v = mod_pos(v, p);
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        i64 inv = inv_mod(m.at(r, c), p);
        for (int i = r + 1; i < m.rows; ++i) {
            if (m.at(i, c) == 0) continue;
            i64 f = mod_pos((i128)m.at(i, c) * inv, p);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = mod_pos((i128)m.at(i, j) - (i128)f * m.at(r, j), p);
        }
        ++r;
    }
    return r;
}

int rank_field(const IMat& m, const Field& f) {
    return f.kind == FieldKind::rationals ? rank_q(m) : rank_fp(m, f.p);
}

static IMat clear_denominators(const QMat& m) {
    IMat r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i) {
        i128 l = 1;
        for (int j = 0; j < m.cols; ++j) {
            i64 d = m.at(i, j).den;
            l = l / gcd_i128(l, d) * d;
        }
        for (int j = 0; j < m.cols; ++j)
            r.at(i, j) = checked_i64((i128)m.at(i, j).num * (l / m.at(i, j).den));
    }
    return r;
}

int rank_field(const QMat& m, const Field& f) { return rank_field(clear_denominators(m), f); }
int rank_q_mat(const QMat& m) { return rank_q(clear_denominators(m)); }

std::optional<IVec> solve_integral(const IMat& e, const IVec& v) {
    // Gaussian elimination over Q on [E | v]; E has full column rank, so a
    // rational solution, when consistent, is unique.
    int m = e.rows, n = e.cols;
    QMat t(m, n + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t.at(i, j) = Rat(e.at(i, j));
        t.at(i, n) = Rat(v[(size_t)i]);
    }
    int r = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < n && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (!t.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j <= n; ++j) std::swap(t.at(piv, j), t.at(r, j));
        Rat d = t.at(r, c);
        for (int j = c; j <= n; ++j) t.at(r, j) = t.at(r, j) / d;
        for (int i = 0; i < m; ++i) {
            if (i == r || t.at(i, c).is_zero()) continue;
            Rat f = t.at(i, c);
            for (int j = c; j <= n; ++j) t.at(i, j) = t.at(i, j) - f * t.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (r < n) throw Error("solve_integral: matrix without full column rank");
    for (int i = r; i < m; ++i)
        if (!t.at(i, n).is_zero()) return std::nullopt;
    IVec x(n, 0);
    for (int k = 0; k < r; ++k) {
        Rat val = t.at(k, n);
        if (val.den != 1) return std::nullopt;
        x[(size_t)pivot_col[(size_t)k]] = val.num;
    }
    return x;
}

std::optional<QMat> inverse_q(const QMat& m) {
    if (m.rows != m.cols) return std::nullopt;
    int n = m.rows;
    QMat t(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) t.at(i, j) = m.at(i, j);
        t.at(i, n + i) = Rat(1);
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!t.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) return std::nullopt;
        for (int j = 0; j < 2 * n; ++j) std::swap(t.at(piv, j), t.at(c, j));
        Rat d = t.at(c, c);
        for (int j = 0; j < 2 * n; ++j) t.at(c, j) = t.at(c, j) / d;
        for (int i = 0; i < n; ++i) {
            if (i == c || t.at(i, c).is_zero()) continue;
            Rat f = t.at(i, c);
            for (int j = 0; j < 2 * n; ++j) t.at(i, j) = t.at(i, j) - f * t.at(c, j);
        }
    }
    QMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = t.at(i, n + j);
    return inv;
}

std::optional<QVec> lp_solve(const QMat& a, const QVec& b) {
    int m = a.rows, n = a.cols;
    // tableau with artificial basis; phase-I objective = sum of artificials
    QMat t(m, n + m + 1);
    for (int i = 0; i < m; ++i) {
        bool neg = b[(size_t)i] < Rat(0);
        for (int j = 0; j < n; ++j) t.at(i, j) = neg ? -a.at(i, j) : a.at(i, j);
        t.at(i, n + i) = Rat(1);
        t.at(i, n + m) = neg ? -b[(size_t)i] : b[(size_t)i];
    }
    std::vector<int> basis(m);
    QVec obj(n + m + 1, Rat(0));
    for (int i = 0; i < m; ++i) {
        basis[(size_t)i] = n + i;
        for (int j = 0; j <= n + m; ++j) obj[(size_t)j] = obj[(size_t)j] + t.at(i, j);
    }
    for (int i = 0; i < m; ++i) obj[(size_t)(n + i)] = Rat(0);

    while (true) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j)
            if (Rat(0) < obj[(size_t)j]) { enter = j; break; } // Bland
        if (enter < 0) break;
        int leave = -1;
        Rat best(0);
        for (int i = 0; i < m; ++i) {
            if (!(Rat(0) < t.at(i, enter))) continue;
            Rat ratio = t.at(i, n + m) / t.at(i, enter);
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[(size_t)i] < basis[(size_t)leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) throw Error("phase-I simplex unbounded");
        Rat d = t.at(leave, enter);
        for (int j = 0; j <= n + m; ++j) t.at(leave, j) = t.at(leave, j) / d;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t.at(i, enter).is_zero()) continue;
            Rat f = t.at(i, enter);
            for (int j = 0; j <= n + m; ++j) t.at(i, j) = t.at(i, j) - f * t.at(leave, j);
        }
        {
            Rat f = obj[(size_t)enter];
            if (!f.is_zero())
                for (int j = 0; j <= n + m; ++j)
                    obj[(size_t)j] = obj[(size_t)j] - f * t.at(leave, j);
        }
        basis[(size_t)leave] = enter;
    }
    if (!obj[(size_t)(n + m)].is_zero()) return std::nullopt;
    QVec x((size_t)n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (basis[(size_t)i] < n) x[(size_t)basis[(size_t)i]] = t.at(i, n + m);
    return x;
}

bool lp_feasible(const QMat& a, const QVec& b) { return lp_solve(a, b).has_value(); }

bool lattice_saturated(const IMat& gens_cols) {
    int r = gens_cols.rows;
    if (r == 0) return true;
    if (rank_q(gens_cols) < r) return false;
    // gcd over all r x r minors; 1 iff elementary divisors are all 1
    i64 g = 0;
    std::vector<int> comb(r);
    for (int i = 0; i < r; ++i) comb[(size_t)i] = i;
    auto det = [&](const std::vector<int>& cols) -> i64 {
        std::vector<i128> a((size_t)r * r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) a[(size_t)i * r + j] = gens_cols.at(i, cols[(size_t)j]);
        // Bareiss determinant
        i128 prev = 1, sign = 1;
        for (int c = 0; c < r; ++c) {
            int piv = -1;
            for (int i = c; i < r; ++i)
                if (a[(size_t)i * r + c] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            if (piv != c) {
                for (int j = 0; j < r; ++j) std::swap(a[(size_t)piv * r + j], a[(size_t)c * r + j]);
                sign = -sign;
            }
            for (int i = c + 1; i < r; ++i) {
                for (int j = c + 1; j < r; ++j)
                    a[(size_t)i * r + j] =
                        (a[(size_t)c * r + c] * a[(size_t)i * r + j] -
                         a[(size_t)i * r + c] * a[(size_t)c * r + j]) / prev;
                a[(size_t)i * r + c] = 0;
            }
            prev = a[(size_t)c * r + c];
        }
        return checked_i64(sign * a[(size_t)(r - 1) * r + (r - 1)]);
    };
    while (true) {
        i64 d = det(comb);
        g = gcd_i64(g, d);
        if (g == 1) return true;
        int k = r - 1;
        while (k >= 0 && comb[(size_t)k] == gens_cols.cols - r + k) --k;
        if (k < 0) break;
        ++comb[(size_t)k];
        for (int i = k + 1; i < r; ++i) comb[(size_t)i] = comb[(size_t)i - 1] + 1;
    }
    return g == 1;
}

} // namespace torface
