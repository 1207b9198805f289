#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "unitri/error.hpp"
#include "unitri/scalar_rings.hpp"

namespace unitri {

/// An element of U_n over `Ring`: unit diagonal, zeros below, the strict upper
/// triangle stored densely row by row. All indices are 1-based.
template <CoefficientRing Ring>
class UnipotentMatrix {
public:
    using ring_type = Ring;
    using value_type = typename Ring::value_type;

    UnipotentMatrix(Ring ring, int n) : ring_(std::move(ring)), n_(n)
    {
        if (n < 1)
            fail(ErrorKind::BadDimension, "dimension must be at least 1");
        upper_.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                upper_.push_back(ring_.zero(i, j));
    }

    static UnipotentMatrix identity(Ring ring, int n) { return UnipotentMatrix(std::move(ring), n); }

    int dim() const noexcept { return n_; }
    const Ring& ring() const noexcept { return ring_; }

    const value_type& at(int i, int j) const { return upper_[index(i, j)]; }
    value_type& at(int i, int j) { return upper_[index(i, j)]; }
    void set(int i, int j, value_type v) { upper_[index(i, j)] = std::move(v); }

    bool is_identity() const
    {
        for (const auto& v : upper_)
            if (!ring_.is_zero(v))
                return false;
        return true;
    }

    /// Raw strict upper triangle, row-major.
    const std::vector<value_type>& upper() const noexcept { return upper_; }

    friend bool operator==(const UnipotentMatrix& a, const UnipotentMatrix& b)
    {
        if (a.n_ != b.n_ || !(a.ring_ == b.ring_))
            return false;
        for (std::size_t k = 0; k < a.upper_.size(); ++k)
            if (!a.ring_.equal(a.upper_[k], b.upper_[k]))
                return false;
        return true;
    }

    std::size_t index(int i, int j) const
    {
        if (i < 1 || j > n_ || i >= j)
            fail(ErrorKind::BadIndex, "position (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") is not strictly upper in U_" + std::to_string(n_));
        return unchecked_index(i, j);
    }

    std::size_t unchecked_index(int i, int j) const noexcept
    {
        // rows 1..i-1 hold (n-1) + ... + (n-i+1) entries
        const auto row = static_cast<std::size_t>(i - 1);
        const auto n = static_cast<std::size_t>(n_);
        return row * n - row * (row + 1) / 2 + static_cast<std::size_t>(j - i - 1);
    }

private:
    Ring ring_;
    int n_;
    std::vector<value_type> upper_;
};

template <CoefficientRing Ring>
void require_compatible(const UnipotentMatrix<Ring>& a, const UnipotentMatrix<Ring>& b)
{
    if (a.dim() != b.dim())
        fail(ErrorKind::Mismatch, "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    if (!(a.ring() == b.ring()))
        fail(ErrorKind::Mismatch, "matrices over different rings");
}

/// X_{i,j} scaled: the identity plus `value` at (i, j).
template <CoefficientRing Ring>
UnipotentMatrix<Ring> transvection(const Ring& ring, int n, int i, int j, typename Ring::value_type value)
{
    if (i < 1 || i >= j || j > n)
        fail(ErrorKind::BadIndex, "transvection needs 1 <= i < j <= n");
    UnipotentMatrix<Ring> x(ring, n);
    x.set(i, j, std::move(value));
    return x;
}

template <CoefficientRing Ring>
    requires requires(const Ring r) { r.one(); }
UnipotentMatrix<Ring> transvection(const Ring& ring, int n, int i, int j)
{
    return transvection(ring, n, i, j, ring.one());
}

template <CoefficientRing Ring>
UnipotentMatrix<Ring> multiply(const UnipotentMatrix<Ring>& a, const UnipotentMatrix<Ring>& b)
{
    require_compatible(a, b);
    const Ring& ring = a.ring();
    const int n = a.dim();
    UnipotentMatrix<Ring> c = b; // the A-diagonal times B term
    for (int i = 1; i <= n; ++i) {
        for (int k = i + 1; k <= n; ++k) {
            const auto& aik = a.at(i, k);
            if (ring.is_zero(aik))
                continue;
            auto& cik = c.at(i, k);
            cik = ring.add(cik, aik);
            for (int j = k + 1; j <= n; ++j) {
                const auto& bkj = b.at(k, j);
                if (ring.is_zero(bkj))
                    continue;
                auto& cij = c.at(i, j);
                cij = ring.mul_add(cij, aik, bkj);
            }
        }
    }
    return c;
}

/// Back-substitution: X(i,j) = -A(i,j) - sum_{i<k<j} A(i,k) X(k,j), rows bottom-up.
template <CoefficientRing Ring>
UnipotentMatrix<Ring> invert(const UnipotentMatrix<Ring>& a)
{
    const Ring& ring = a.ring();
    const int n = a.dim();
    UnipotentMatrix<Ring> x(ring, n);
    for (int i = n - 1; i >= 1; --i) {
        for (int j = i + 1; j <= n; ++j)
            x.at(i, j) = ring.neg(a.at(i, j));
        for (int k = i + 1; k <= n; ++k) {
            const auto& aik = a.at(i, k);
            if (ring.is_zero(aik))
                continue;
            for (int j = k + 1; j <= n; ++j) {
                const auto& xkj = x.at(k, j);
                if (ring.is_zero(xkj))
                    continue;
                x.at(i, j) = ring.sub(x.at(i, j), ring.mul(aik, xkj));
            }
        }
    }
    return x;
}

/// [A, B] = A^{-1} B^{-1} A B, computed as (BA)^{-1} (AB).
template <CoefficientRing Ring>
UnipotentMatrix<Ring> commutator(const UnipotentMatrix<Ring>& a, const UnipotentMatrix<Ring>& b)
{
    require_compatible(a, b);
    return multiply(invert(multiply(b, a)), multiply(a, b));
}

/// A^e for any integer e.
template <CoefficientRing Ring>
UnipotentMatrix<Ring> power(const UnipotentMatrix<Ring>& a, long long e)
{
    UnipotentMatrix<Ring> base = e < 0 ? invert(a) : a;
    unsigned long long k = e < 0 ? 0ULL - static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
    UnipotentMatrix<Ring> result(a.ring(), a.dim());
    while (k) {
        if (k & 1U)
            result = multiply(result, base);
        k >>= 1U;
        if (k)
            base = multiply(base, base);
    }
    return result;
}

/// Largest k <= n with A in gamma_k(U_n); the identity gives n.
template <CoefficientRing Ring>
int gamma_index(const UnipotentMatrix<Ring>& a)
{
    const int n = a.dim();
    for (int dist = 1; dist < n; ++dist)
        for (int i = 1; i + dist <= n; ++i)
            if (!a.ring().is_zero(a.at(i, i + dist)))
                return dist;
    return n;
}

/// pi(A) = (upper-left m x m block, lower-right m x m block) for A in U_{2m-1}.
template <CoefficientRing Ring>
std::pair<UnipotentMatrix<Ring>, UnipotentMatrix<Ring>> project_pi(const UnipotentMatrix<Ring>& a)
{
    const int big = a.dim();
    if (big < 3 || big % 2 == 0)
        fail(ErrorKind::BadDimension, "project_pi needs odd dimension 2m-1 with m >= 2");
    const int m = (big + 1) / 2;
    UnipotentMatrix<Ring> left(a.ring(), m), right(a.ring(), m);
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            left.at(i, j) = a.at(i, j);
            right.at(i, j) = a.at(i + m - 1, j + m - 1);
        }
    return {std::move(left), std::move(right)};
}

/// The preimage of (L, R) under pi whose free top-right block is zero.
template <CoefficientRing Ring>
UnipotentMatrix<Ring> lift_pi(const UnipotentMatrix<Ring>& left, const UnipotentMatrix<Ring>& right)
{
    require_compatible(left, right);
    const int m = left.dim();
    if (m < 2)
        fail(ErrorKind::BadDimension, "lift_pi needs blocks of dimension >= 2");
    UnipotentMatrix<Ring> a(left.ring(), 2 * m - 1);
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            a.at(i, j) = left.at(i, j);
            a.at(i + m - 1, j + m - 1) = right.at(i, j);
        }
    return a;
}

/// T_{r,n}(tau_1..tau_{n-r}): the coset of gamma_{r+1}(U_n) whose members vanish
/// below distance r and carry tau_i at (i, i + r).
template <CoefficientRing Ring>
struct CosetPattern {
    Ring ring;
    int n = 0;
    int level = 1;
    std::vector<typename Ring::value_type> tau;

    friend bool operator==(const CosetPattern& a, const CosetPattern& b)
    {
        if (a.n != b.n || a.level != b.level || !(a.ring == b.ring) || a.tau.size() != b.tau.size())
            return false;
        for (std::size_t i = 0; i < a.tau.size(); ++i)
            if (!a.ring.equal(a.tau[i], b.tau[i]))
                return false;
        return true;
    }
};

/// Distance-`level` diagonal of A. A must lie in gamma_level(U_n).
template <CoefficientRing Ring>
CosetPattern<Ring> coset_of(const UnipotentMatrix<Ring>& a, int level)
{
    const int n = a.dim();
    if (level < 1 || level >= n)
        fail(ErrorKind::LevelOverflow, "level must lie in [1, n)");
    if (gamma_index(a) < level)
        fail(ErrorKind::InvalidInput, "matrix is not in gamma_" + std::to_string(level));
    CosetPattern<Ring> out{a.ring(), n, level, {}};
    for (int i = 1; i + level <= n; ++i)
        out.tau.push_back(a.at(i, i + level));
    return out;
}

/// The zero-filled representative of a coset pattern.
template <CoefficientRing Ring>
UnipotentMatrix<Ring> representative(const CosetPattern<Ring>& c)
{
    UnipotentMatrix<Ring> a(c.ring, c.n);
    for (int i = 1; i + c.level <= c.n; ++i)
        a.at(i, i + c.level) = c.tau[static_cast<std::size_t>(i - 1)];
    return a;
}

/// [T_{r,n}(alpha), T_{s,n}(beta)] lies in T_{r+s,n}(tau') with
/// tau'_i = alpha_i beta_{i+r} - alpha_{i+s} beta_i.
template <CoefficientRing Ring>
CosetPattern<Ring> coset_commutator(const CosetPattern<Ring>& s_pat, const CosetPattern<Ring>& t_pat)
{
    if (s_pat.n != t_pat.n || !(s_pat.ring == t_pat.ring))
        fail(ErrorKind::Mismatch, "coset patterns over different U_n");
    const int n = s_pat.n;
    const int r = s_pat.level;
    const int s = t_pat.level;
    if (static_cast<int>(s_pat.tau.size()) != n - r || static_cast<int>(t_pat.tau.size()) != n - s)
        fail(ErrorKind::InvalidInput, "pattern length does not match its level");
    if (r + s >= n)
        fail(ErrorKind::LevelOverflow, "r + s must be below n");
    const Ring& ring = s_pat.ring;
    CosetPattern<Ring> out{ring, n, r + s, {}};
    const auto alpha = [&](int i) -> const auto& { return s_pat.tau[static_cast<std::size_t>(i - 1)]; };
    const auto beta = [&](int i) -> const auto& { return t_pat.tau[static_cast<std::size_t>(i - 1)]; };
    for (int i = 1; i <= n - r - s; ++i)
        out.tau.push_back(ring.sub(ring.mul(alpha(i), beta(i + r)), ring.mul(alpha(i + s), beta(i))));
    return out;
}

} // namespace unitri
