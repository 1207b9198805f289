#pragma once

// Symbolic evaluation of two-generator words at
//   A in T_{1,n}(alpha_1..alpha_{n-1}),  B in T_{1,n}(beta_1..beta_{n-1})
// (superdiagonal variables, zeros above). Entry (i, j) of any word value is a
// multilinear polynomial on the support [i, j - 1], so it is stored as a dense
// coefficient array indexed by the alpha/beta pattern (2^(j-i) slots).

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "unitri/error.hpp"
#include "unitri/free_words.hpp"
#include "unitri/multilinear_poly.hpp"

namespace unitri {

inline constexpr std::uint64_t kDefaultTermCap = std::uint64_t{1} << 22;

namespace detail {

struct CoefficientOverflow {};

template <class Coef>
struct CoefOps;

template <>
struct CoefOps<std::int64_t> {
    static void add(std::int64_t& acc, std::int64_t v)
    {
        if (__builtin_add_overflow(acc, v, &acc))
            throw CoefficientOverflow{};
    }
    static void sub(std::int64_t& acc, std::int64_t v)
    {
        if (__builtin_sub_overflow(acc, v, &acc))
            throw CoefficientOverflow{};
    }
    static void add_mul(std::int64_t& acc, std::int64_t a, std::int64_t b)
    {
        std::int64_t p;
        if (__builtin_mul_overflow(a, b, &p) || __builtin_add_overflow(acc, p, &acc))
            throw CoefficientOverflow{};
    }
    static void sub_mul(std::int64_t& acc, std::int64_t a, std::int64_t b)
    {
        std::int64_t p;
        if (__builtin_mul_overflow(a, b, &p) || __builtin_sub_overflow(acc, p, &acc))
            throw CoefficientOverflow{};
    }
    static bool is_zero(std::int64_t v) { return v == 0; }
    static mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }
};

template <>
struct CoefOps<mpz_class> {
    static void add(mpz_class& acc, const mpz_class& v) { acc += v; }
    static void sub(mpz_class& acc, const mpz_class& v) { acc -= v; }
    static void add_mul(mpz_class& acc, const mpz_class& a, const mpz_class& b)
    {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    static void sub_mul(mpz_class& acc, const mpz_class& a, const mpz_class& b)
    {
        mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    static bool is_zero(const mpz_class& v) { return sgn(v) == 0; }
    static mpz_class to_mpz(const mpz_class& v) { return v; }
};

} // namespace detail

/// U_n over the multilinear polynomial ring, one dense coefficient array per
/// entry; an empty array is the zero entry.
template <class Coef>
class SymbolicMatrix {
public:
    using Ops = detail::CoefOps<Coef>;
    using Entry = std::vector<Coef>;

    explicit SymbolicMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * (n - 1) / 2) {}

    /// The generic pair: superdiagonal alpha_i (which = Alpha) or beta_i.
    static SymbolicMatrix generator(int n, Flag which)
    {
        SymbolicMatrix m(n);
        for (int i = 1; i < n; ++i) {
            Entry e(2, Coef(0));
            e[which == Flag::Alpha ? 0 : 1] = Coef(1);
            m.entry(i, i + 1) = std::move(e);
        }
        return m;
    }

    int dim() const noexcept { return n_; }

    const Entry& entry(int i, int j) const { return entries_[index(i, j)]; }
    Entry& entry(int i, int j) { return entries_[index(i, j)]; }

    MultilinearPoly poly(int i, int j) const
    {
        MultilinearPoly p = MultilinearPoly::zero(i, j - 1);
        const Entry& e = entry(i, j);
        for (std::size_t bits = 0; bits < e.size(); ++bits)
            if (!Ops::is_zero(e[bits]))
                p.add_term(bits, Ops::to_mpz(e[bits]));
        return p;
    }

    friend SymbolicMatrix multiply(const SymbolicMatrix& a, const SymbolicMatrix& b)
    {
        const int n = a.n_;
        SymbolicMatrix c(n);
        for (int i = 1; i < n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                Entry acc;
                auto ensure = [&] {
                    if (acc.empty())
                        acc.assign(std::size_t{1} << (j - i), Coef(0));
                };
                for (const Entry* e : {&a.entry(i, j), &b.entry(i, j)}) {
                    if (e->empty())
                        continue;
                    ensure();
                    for (std::size_t t = 0; t < e->size(); ++t)
                        Ops::add(acc[t], (*e)[t]);
                }
                for (int k = i + 1; k < j; ++k) {
                    const Entry& l = a.entry(i, k);
                    const Entry& r = b.entry(k, j);
                    if (l.empty() || r.empty())
                        continue;
                    ensure();
                    outer_accumulate(acc, l, r, k - i, false);
                }
                c.entry(i, j) = normalized(std::move(acc));
            }
        }
        return c;
    }

    friend SymbolicMatrix invert(const SymbolicMatrix& a)
    {
        const int n = a.n_;
        SymbolicMatrix x(n);
        for (int i = n - 1; i >= 1; --i) {
            for (int j = i + 1; j <= n; ++j) {
                Entry acc;
                const Entry& aij = a.entry(i, j);
                if (!aij.empty()) {
                    acc.assign(aij.size(), Coef(0));
                    for (std::size_t t = 0; t < aij.size(); ++t)
                        Ops::sub(acc[t], aij[t]);
                }
                for (int k = i + 1; k < j; ++k) {
                    const Entry& l = a.entry(i, k);
                    const Entry& r = x.entry(k, j);
                    if (l.empty() || r.empty())
                        continue;
                    if (acc.empty())
                        acc.assign(std::size_t{1} << (j - i), Coef(0));
                    outer_accumulate(acc, l, r, k - i, true);
                }
                x.entry(i, j) = normalized(std::move(acc));
            }
        }
        return x;
    }

    friend SymbolicMatrix commutator(const SymbolicMatrix& a, const SymbolicMatrix& b)
    {
        SymbolicMatrix ab = multiply(a, b);
        SymbolicMatrix ba_inv = invert(multiply(b, a));
        return multiply(ba_inv, ab);
    }

private:
    std::size_t index(int i, int j) const
    {
        if (i < 1 || j > n_ || i >= j)
            fail(ErrorKind::BadIndex, "symbolic entry outside the strict upper triangle");
        const auto row = static_cast<std::size_t>(i - 1);
        return row * static_cast<std::size_t>(n_) - row * (row + 1) / 2 + static_cast<std::size_t>(j - i - 1);
    }

    // acc[pa | pb << shift] (+/-)= l[pa] * r[pb]
    static void outer_accumulate(Entry& acc, const Entry& l, const Entry& r, int shift, bool subtract)
    {
        const std::size_t width = l.size();
        for (std::size_t pb = 0; pb < r.size(); ++pb) {
            const Coef& rv = r[pb];
            if (Ops::is_zero(rv))
                continue;
            Coef* out = acc.data() + (pb << shift);
            for (std::size_t pa = 0; pa < width; ++pa) {
                if (Ops::is_zero(l[pa]))
                    continue;
                if (subtract)
                    Ops::sub_mul(out[pa], l[pa], rv);
                else
                    Ops::add_mul(out[pa], l[pa], rv);
            }
        }
    }

    static Entry normalized(Entry e)
    {
        for (const auto& v : e)
            if (!Ops::is_zero(v))
                return e;
        return {};
    }

    int n_;
    std::vector<Entry> entries_;
};

namespace detail {

inline void require_two_generator(const Word& w)
{
    for (const auto& name : w.alphabet())
        if (name != "a" && name != "b")
            fail(ErrorKind::InvalidInput, "symbolic evaluation needs a word over {a, b}, found '" + name + "'");
}

template <class Coef>
SymbolicMatrix<Coef> symbolic_value(const Word& w, int n)
{
    Assignment<SymbolicMatrix<Coef>> env;
    env.emplace("a", SymbolicMatrix<Coef>::generator(n, Flag::Alpha));
    env.emplace("b", SymbolicMatrix<Coef>::generator(n, Flag::Beta));
    return evaluate(w, env);
}

} // namespace detail

/// Entry (i, j) of w(A, B) as an exact polynomial on [i, j - 1]. Only the
/// principal block on rows/columns i..j influences that entry, so the word is
/// evaluated at dimension j - i + 1 and the result shifted by i - 1.
inline MultilinearPoly entry_poly(const Word& w, int n, int i, int j, std::uint64_t cap = kDefaultTermCap)
{
    if (i < 1 || i >= j || j > n)
        fail(ErrorKind::BadIndex, "entry_poly needs 1 <= i < j <= n");
    detail::require_two_generator(w);
    const int dist = j - i;
    if (dist > MultilinearPoly::kMaxDegree || (std::uint64_t{1} << dist) > cap)
        fail(ErrorKind::CapExceeded, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") may hold 2^" +
                                         std::to_string(dist) + " terms, above the cap");
    const int m = dist + 1;
    MultilinearPoly p;
    try {
        p = detail::symbolic_value<std::int64_t>(w, m).poly(1, m);
    } catch (const detail::CoefficientOverflow&) {
        p = detail::symbolic_value<mpz_class>(w, m).poly(1, m);
    }
    return i == 1 ? p : poly_shift(p, i - 1);
}

/// Full symbolic value of w at dimension n with unbounded coefficients.
inline SymbolicMatrix<mpz_class> symbolic_evaluate(const Word& w, int n, std::uint64_t cap = kDefaultTermCap)
{
    detail::require_two_generator(w);
    if (n - 1 > MultilinearPoly::kMaxDegree || (std::uint64_t{1} << (n - 1)) > cap)
        fail(ErrorKind::CapExceeded, "symbolic matrix of dimension " + std::to_string(n) + " exceeds the cap");
    return detail::symbolic_value<mpz_class>(w, n);
}

/// Coefficient of m in entry (1, n) of w(A, B), n = deg(m) + 1, by full expansion.
inline mpz_class monomial_coefficient(const Word& w, int n, const Monomial& m, std::uint64_t cap = kDefaultTermCap)
{
    if (m.lo() != 1 || m.degree() != n - 1)
        fail(ErrorKind::InvalidInput, "monomial must have support [1, n-1]");
    return entry_poly(w, n, 1, n, cap).coefficient(m);
}

struct LemmaWitness {
    Monomial product;          // m * psi_r(m')
    mpz_class coefficient;     // coeff(m) * coeff(m')
    bool confirmed = false;    // product coefficient re-checked by expansion of [w, w']
};

/// Applies the multiplication lemma to w (weight r) and w' (weight s <= r):
/// checks that m, m' are summands of the leading entries, that no summand of
/// [w'(A,B)]_{1,1+s} equals the first s variables of m, and returns
/// m psi_r(m'). When 2^(r+s) fits the cap the claim is confirmed by expanding
/// [w, w'] directly.
inline LemmaWitness multiplication_lemma_check(const Word& w, const Word& w2, const Monomial& m,
                                               const Monomial& m2, std::uint64_t cap = kDefaultTermCap)
{
    const int r = w.weight();
    const int s = w2.weight();
    if (r < s)
        fail(ErrorKind::BadOrder, "weights must satisfy r >= s (r=" + std::to_string(r) + ", s=" + std::to_string(s) + ")");
    if (m.lo() != 1 || m.degree() != r)
        fail(ErrorKind::NotASummand, "m must have support [1, r]");
    if (m2.lo() != 1 || m2.degree() != s)
        fail(ErrorKind::NotASummand, "m' must have support [1, s]");

    const MultilinearPoly pw = entry_poly(w, r + 1, 1, r + 1, cap);
    const mpz_class cm = pw.coefficient(m);
    if (cm == 0)
        fail(ErrorKind::NotASummand, m.to_string() + " is not a summand of the leading entry of w");
    const MultilinearPoly pw2 = entry_poly(w2, s + 1, 1, s + 1, cap);
    const mpz_class cm2 = pw2.coefficient(m2);
    if (cm2 == 0)
        fail(ErrorKind::NotASummand, m2.to_string() + " is not a summand of the leading entry of w'");

    const Pattern head = m.prefix(s).pattern();
    if (pw2.coefficient(head) != 0)
        fail(ErrorKind::HypothesisViolated,
             "summand " + m.prefix(s).to_string() + " of w' divides " + m.to_string());

    LemmaWitness out{m.times(m2.shifted(r)), cm * cm2, false};
    if (r + s <= MultilinearPoly::kMaxDegree && (std::uint64_t{1} << (r + s)) <= cap) {
        const mpz_class direct = monomial_coefficient(comm(w, w2), r + s + 1, out.product, cap);
        if (direct != out.coefficient)
            fail(ErrorKind::ConstructionBug, "expansion of [w, w'] gives coefficient " + direct.get_str() +
                                                 " for " + out.product.to_string() + ", expected " +
                                                 out.coefficient.get_str());
        out.confirmed = true;
    }
    return out;
}

struct Homogeneity {
    std::optional<int> alpha_count;                               // empty for the zero polynomial
    std::optional<std::pair<Monomial, Monomial>> violation;       // two summands with different counts

    bool homogeneous() const noexcept { return !violation.has_value(); }
};

/// Whether every summand of entry (1, n) of w(A, B) has the same number of alphas.
inline Homogeneity alpha_count_homogeneous(const Word& w, int n, std::uint64_t cap = kDefaultTermCap)
{
    const MultilinearPoly p = entry_poly(w, n, 1, n, cap);
    Homogeneity h;
    std::optional<Pattern> first;
    for (const auto& [bits, c] : p.terms()) {
        const int alphas = p.degree() - std::popcount(bits);
        if (!first) {
            first = bits;
            h.alpha_count = alphas;
        } else if (alphas != *h.alpha_count) {
            h.violation.emplace(Monomial::from_pattern(p.lo(), p.degree(), *first),
                                Monomial::from_pattern(p.lo(), p.degree(), bits));
            break;
        }
    }
    return h;
}

} // namespace unitri
