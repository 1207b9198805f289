#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "unitri/error.hpp"
#include "unitri/multilinear_poly.hpp"

namespace unitri {

// A coefficient ring is a small value object; its elements are plain values.
// zero(i, j) is the additive identity for matrix position (i, j): graded rings
// (PolyRing) tag it with the support [i, j - 1], the others ignore the position.
template <class R>
concept CoefficientRing = std::equality_comparable<R> && requires(const R ring, const typename R::value_type a,
                                                                  const typename R::value_type b, long long k) {
    { ring.zero(1, 2) } -> std::same_as<typename R::value_type>;
    { ring.add(a, b) } -> std::same_as<typename R::value_type>;
    { ring.sub(a, b) } -> std::same_as<typename R::value_type>;
    { ring.neg(a) } -> std::same_as<typename R::value_type>;
    { ring.mul(a, b) } -> std::same_as<typename R::value_type>;
    { ring.is_zero(a) } -> std::same_as<bool>;
    { ring.equal(a, b) } -> std::same_as<bool>;
    { ring.to_string(a) } -> std::same_as<std::string>;
};

inline bool is_prime(std::uint64_t p) noexcept
{
    if (p < 2)
        return false;
    for (std::uint64_t q = 2; q * q <= p; ++q)
        if (p % q == 0)
            return false;
    return true;
}

/// F_p for a prime p < 2^31. Elements are always reduced.
class PrimeField {
public:
    using value_type = std::uint32_t;

    explicit PrimeField(std::uint32_t p) : p_(p)
    {
        if (p >= (1U << 31) || !is_prime(p))
            fail(ErrorKind::InvalidInput, "modulus " + std::to_string(p) + " is not a prime below 2^31");
    }

    std::uint32_t modulus() const noexcept { return p_; }

    value_type zero(int, int) const noexcept { return 0; }
    value_type one() const noexcept { return 1; }

    value_type from_int(long long v) const noexcept
    {
        long long r = v % static_cast<long long>(p_);
        if (r < 0)
            r += p_;
        return static_cast<value_type>(r);
    }

    value_type from_mpz(const mpz_class& v) const
    {
        mpz_class r = v % p_;
        if (r < 0)
            r += p_;
        return static_cast<value_type>(r.get_ui());
    }

    value_type add(value_type a, value_type b) const noexcept
    {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
    value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const noexcept
    {
        return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
    }
    /// acc + a * b
    value_type mul_add(value_type acc, value_type a, value_type b) const noexcept
    {
        return static_cast<value_type>((static_cast<std::uint64_t>(a) * b + acc) % p_);
    }
    bool is_zero(value_type a) const noexcept { return a == 0; }
    bool equal(value_type a, value_type b) const noexcept { return a == b; }

    value_type pow(value_type a, std::uint64_t e) const noexcept
    {
        value_type result = 1;
        while (e) {
            if (e & 1U)
                result = mul(result, a);
            a = mul(a, a);
            e >>= 1U;
        }
        return result;
    }

    value_type inverse(value_type a) const
    {
        if (a == 0)
            fail(ErrorKind::InvalidInput, "zero has no inverse");
        return pow(a, p_ - 2);
    }

    std::string to_string(value_type a) const { return std::to_string(a); }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

/// The integers, unbounded.
class IntegerRing {
public:
    using value_type = mpz_class;

    value_type zero(int, int) const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const { return mpz_class(static_cast<long>(v)); }
    value_type from_mpz(const mpz_class& v) const { return v; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type mul_add(const value_type& acc, const value_type& a, const value_type& b) const
    {
        value_type r = acc;
        mpz_addmul(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
    std::string to_string(const value_type& a) const { return a.get_str(); }

    friend bool operator==(const IntegerRing&, const IntegerRing&) = default;
};

/// Z[alpha_i, beta_i] restricted to consecutive-support multilinear elements.
/// Matrix entry (i, j) lives on the support [i, j - 1]; products of entries
/// are taken in whichever order makes the supports adjacent (the ring is commutative).
class PolyRing {
public:
    using value_type = MultilinearPoly;

    value_type zero(int i, int j) const { return MultilinearPoly::zero(i, j - 1); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const
    {
        if (a.hi() + 1 == b.lo())
            return poly_mul(a, b);
        if (b.hi() + 1 == a.lo())
            return poly_mul(b, a);
        fail(ErrorKind::IntervalMismatch, "factors do not have adjacent supports");
    }
    value_type mul_add(const value_type& acc, const value_type& a, const value_type& b) const
    {
        return acc + mul(a, b);
    }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
    std::string to_string(const value_type& a) const
    {
        std::string s;
        for (const auto& t : a.term_strings()) {
            if (!s.empty())
                s += " ";
            s += t;
        }
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const PolyRing&, const PolyRing&) = default;
};

static_assert(CoefficientRing<PrimeField>);
static_assert(CoefficientRing<IntegerRing>);
static_assert(CoefficientRing<PolyRing>);

/// Solves r a + s b + t c = 1, r b + s c + t a = 0, r c + s a + t b = 0 over F_p,
/// or over Q when p == 0. The system is singular exactly when
/// r^3 + s^3 + t^3 - 3rst vanishes in the target field.
inline std::array<mpq_class, 3> solve_circulant(long long r, long long s, long long t, std::uint32_t p)
{
    const mpz_class R(static_cast<long>(r)), S(static_cast<long>(s)), T(static_cast<long>(t));
    const mpz_class det = R * R * R + S * S * S + T * T * T - 3 * R * S * T;
    // Cramer's rule on the circulant; cofactors of the first column.
    const mpz_class na = R * R - S * T;
    const mpz_class nb = S * S - R * T;
    const mpz_class nc = T * T - R * S;
    if (p == 0) {
        if (det == 0)
            fail(ErrorKind::SingularBaseCase, "r^3+s^3+t^3-3rst = 0 over Q");
        std::array<mpq_class, 3> out{mpq_class(na, det), mpq_class(nb, det), mpq_class(nc, det)};
        for (auto& q : out)
            q.canonicalize();
        return out;
    }
    const PrimeField f(p);
    const auto d = f.from_mpz(det);
    if (d == 0)
        fail(ErrorKind::SingularBaseCase,
             "r^3+s^3+t^3-3rst = 0 in F_" + std::to_string(p));
    const auto dinv = f.inverse(d);
    return {mpq_class(f.mul(f.from_mpz(na), dinv)), mpq_class(f.mul(f.from_mpz(nb), dinv)),
            mpq_class(f.mul(f.from_mpz(nc), dinv))};
}

} // namespace unitri
