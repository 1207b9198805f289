#pragma once

// Certified generating sets of subgroups of U_n with maximal derived length:
// three generators for every d, two generators for n = 6, 11 and
// n = 21 * 2^(d-5) + 1, and the proportion of n <= N admitting two.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "unitri/error.hpp"
#include "unitri/free_words.hpp"
#include "unitri/multilinear_poly.hpp"
#include "unitri/scalar_rings.hpp"
#include "unitri/symbolic_oracle.hpp"
#include "unitri/unitriangular.hpp"

namespace unitri {

namespace detail {

template <CoefficientRing Ring>
typename Ring::value_type from_rational(const Ring& ring, const mpq_class& q)
{
    if (q.get_den() != 1)
        fail(ErrorKind::Unsupported, "base solution " + q.get_str() + " is not integral");
    return ring.from_mpz(q.get_num());
}

inline std::uint32_t characteristic(const PrimeField& f) { return f.modulus(); }
inline std::uint32_t characteristic(const IntegerRing&) { return 0; }

} // namespace detail

template <CoefficientRing Ring>
struct TripleWitness {
    int d = 1;
    int n = 2;
    UnipotentMatrix<Ring> a, b, c;
    Word w;
    std::array<long long, 3> base_exponents{1, 0, 0};
};

/// Checks w(A,B,C) = X_{1,n}, w(B,C,A) = I, w(C,A,B) = I and depth(w) >= d - 1.
template <CoefficientRing Ring>
bool triple_equations_hold(const TripleWitness<Ring>& t)
{
    const auto target = transvection(t.a.ring(), t.n, 1, t.n);
    const auto eval = [&](const auto& x1, const auto& x2, const auto& x3) {
        return evaluate(t.w, Assignment<UnipotentMatrix<Ring>>{{"x1", x1}, {"x2", x2}, {"x3", x3}});
    };
    return t.w.depth() >= t.d - 1 && eval(t.a, t.b, t.c) == target && eval(t.b, t.c, t.a).is_identity() &&
           eval(t.c, t.a, t.b).is_identity();
}

/// Builds the recursive triple for n = 2^(d-1) + 1. The U_2 base solves the
/// circulant system for the exponents (r, s, t); each doubling lifts
/// (A,B), (B,C), (C,A) through pi with a zero top-right block.
template <CoefficientRing Ring>
TripleWitness<Ring> three_gen_triple(int d, const Ring& ring, std::array<long long, 3> rst = {1, 0, 0})
{
    if (d < 1 || d > 16)
        fail(ErrorKind::Unsupported, "three-generator triples are built for 1 <= d <= 16");
    const auto base = solve_circulant(rst[0], rst[1], rst[2], detail::characteristic(ring));
    auto a = transvection(ring, 2, 1, 2, detail::from_rational(ring, base[0]));
    auto b = transvection(ring, 2, 1, 2, detail::from_rational(ring, base[1]));
    auto c = transvection(ring, 2, 1, 2, detail::from_rational(ring, base[2]));
    for (int level = 2; level <= d; ++level) {
        auto na = lift_pi(a, b);
        auto nb = lift_pi(b, c);
        auto nc = lift_pi(c, a);
        a = std::move(na);
        b = std::move(nb);
        c = std::move(nc);
    }
    TripleWitness<Ring> t{d, (1 << (d - 1)) + 1, std::move(a), std::move(b), std::move(c), build_w(d, rst), rst};
    if (!triple_equations_hold(t))
        fail(ErrorKind::ConstructionBug, "triple for d=" + std::to_string(d) + " fails its defining equations");
    return t;
}

/// Three monomials with signs for the word triple at `level`; entry k is a
/// summand of the k-th word with coefficient signs[k].
struct MonomialTriple {
    int level = 5;
    std::array<Monomial, 3> monos;
    std::array<int, 3> signs{1, 1, 1};

    std::array<int, 3> alpha_counts() const
    {
        return {monos[0].alpha_count(), monos[1].alpha_count(), monos[2].alpha_count()};
    }
};

namespace detail {

inline int sign_of(const mpz_class& c)
{
    if (c == 1)
        return 1;
    if (c == -1)
        return -1;
    fail(ErrorKind::ConstructionBug, "tracked coefficient " + c.get_str() + " is not +-1");
}

inline void require_distinct_mod3(const MonomialTriple& t)
{
    const auto k = t.alpha_counts();
    const int r0 = k[0] % 3, r1 = k[1] % 3, r2 = k[2] % 3;
    if (r0 == r1 || r1 == r2 || r0 == r2)
        fail(ErrorKind::DistinctnessViolated, "alpha counts " + std::to_string(k[0]) + ", " + std::to_string(k[1]) +
                                                  ", " + std::to_string(k[2]) + " at level " +
                                                  std::to_string(t.level) + " are not distinct mod 3");
}

// Expansions at dimension <= 2^12 + 1 only; the final products are certified
// by the lemma hypothesis and later by numeric evaluation.
inline constexpr std::uint64_t kChainCap = std::uint64_t{1} << 12;

} // namespace detail

/// m_10 = m_5 psi_5(m'_5) in [c10]_{1,11}, with m_5 = b1b2a3a4b5 from
/// [[b,a,b],[b,a]] and m'_5 = a1a2b3b4a5 from c5.
inline LemmaWitness m10_witness()
{
    const auto& f = two_gen_family();
    return multiplication_lemma_check(f.bab_ba, f.c5, Monomial::parse("bbaab"), Monomial::parse("aabba"),
                                      detail::kChainCap);
}

/// The level-5 triple for (c21, c21', c21''), each obtained by three
/// multiplication-lemma steps: a weight-6 head, then c5 via m'_5, then c10 via m_10.
inline MonomialTriple level5_triple()
{
    const auto& f = two_gen_family();
    const Monomial m5p = Monomial::parse("aabba");
    const LemmaWitness m10 = m10_witness();
    struct Head {
        const Word* four;
        const Word* six;
        const char* four_mono;
        const char* ba_mono;
    };
    const std::array<Head, 3> heads{Head{&f.baaa, &f.head6, "aaab", "ba"}, Head{&f.baab, &f.head6p, "aabb", "ba"},
                                    Head{&f.babb, &f.head6pp, "bbba", "ab"}};
    MonomialTriple out;
    out.level = 5;
    for (std::size_t k = 0; k < 3; ++k) {
        const Head& h = heads[k];
        const LemmaWitness six = multiplication_lemma_check(*h.four, f.ba, Monomial::parse(h.four_mono),
                                                            Monomial::parse(h.ba_mono), detail::kChainCap);
        const LemmaWitness eleven =
            multiplication_lemma_check(*h.six, f.c5, six.product, m5p, detail::kChainCap);
        const LemmaWitness full =
            multiplication_lemma_check(comm(*h.six, f.c5), f.c10, eleven.product, m10.product, detail::kChainCap);
        out.monos[k] = full.product;
        out.signs[k] = detail::sign_of(full.coefficient);
    }
    detail::require_distinct_mod3(out);
    return out;
}

/// (m, m', m'') -> (m' psi(m''), m'' psi(m), m psi(m')), signs multiplied.
/// Distinct alpha counts make the lemma hypothesis automatic: the leading
/// entries are homogeneous, so m cannot be a summand of the other word.
inline MonomialTriple monomial_recursion(int steps)
{
    if (steps < 0 || steps > 7)
        fail(ErrorKind::Unsupported, "monomial recursion is run for 0 <= steps <= 7");
    MonomialTriple t = level5_triple();
    for (int k = 0; k < steps; ++k) {
        const int w = t.monos[0].degree();
        MonomialTriple next;
        next.level = t.level + 1;
        next.monos = {t.monos[1].times(t.monos[2].shifted(w)), t.monos[2].times(t.monos[0].shifted(w)),
                      t.monos[0].times(t.monos[1].shifted(w))};
        next.signs = {t.signs[1] * t.signs[2], t.signs[2] * t.signs[0], t.signs[0] * t.signs[1]};
        detail::require_distinct_mod3(next);
        t = std::move(next);
    }
    return t;
}

template <CoefficientRing Ring>
struct PairWitness {
    int d = 3;
    int n = 6;
    int component = 0;
    UnipotentMatrix<Ring> a, b;
    Word word;
    Monomial tracked;
    int sign = 1;
};

/// A has 1 on the superdiagonal at the alpha subscripts of m, B at the beta
/// subscripts; everything above the superdiagonal is zero.
template <CoefficientRing Ring>
std::pair<UnipotentMatrix<Ring>, UnipotentMatrix<Ring>> pair_from_monomial(const Ring& ring, const Monomial& m)
{
    const int n = m.hi() + 1;
    UnipotentMatrix<Ring> a(ring, n), b(ring, n);
    for (int i = 1; i < n; ++i)
        (m.at(i) == Flag::Alpha ? a : b).at(i, i + 1) = ring.from_int(1);
    return {std::move(a), std::move(b)};
}

/// The tracked monomial and sign for depth d (component picks the member of
/// the word triple for d >= 5).
inline std::pair<Monomial, int> tracked_monomial(int d, int component = 0)
{
    if (d < 3 || d > 12)
        fail(ErrorKind::Unsupported, "two-generator pairs are built for 3 <= d <= 12");
    if (component < 0 || component > 2)
        fail(ErrorKind::InvalidInput, "component must be 0, 1 or 2");
    if (d == 3) {
        const Monomial m = Monomial::parse("aabab");
        return {m, detail::sign_of(monomial_coefficient(two_gen_family().c5, 6, m))};
    }
    if (d == 4) {
        const LemmaWitness w = m10_witness();
        return {w.product, detail::sign_of(w.coefficient)};
    }
    const MonomialTriple t = monomial_recursion(d - 5);
    const auto k = static_cast<std::size_t>(component);
    return {t.monos[k], t.signs[k]};
}

template <CoefficientRing Ring>
bool pair_evaluates_correctly(const PairWitness<Ring>& p)
{
    const Ring& ring = p.a.ring();
    const auto value = evaluate(p.word, Assignment<UnipotentMatrix<Ring>>{{"a", p.a}, {"b", p.b}});
    return value == transvection(ring, p.n, 1, p.n, ring.from_int(p.sign));
}

/// Two generators of a subgroup of U_n with derived length d, n = weight + 1.
template <CoefficientRing Ring>
PairWitness<Ring> two_gen_pair(int d, const Ring& ring, int component = 0)
{
    const auto [mono, sign] = tracked_monomial(d, component);
    const Word word = build_two_gen_word(d, component);
    if (word.weight() != mono.degree() || word.depth() < d - 1)
        fail(ErrorKind::ConstructionBug, "word certificate does not match the tracked monomial");
    auto [a, b] = pair_from_monomial(ring, mono);
    PairWitness<Ring> p{d, mono.degree() + 1, component, std::move(a), std::move(b), word, mono, sign};
    if (!pair_evaluates_correctly(p))
        fail(ErrorKind::ConstructionBug, "pair for d=" + std::to_string(d) + " does not evaluate to X_{1,n}^" +
                                             std::to_string(sign));
    return p;
}

/// A = X_{1,2} X_{5,6}, B = X_{2,3} X_{3,4}^{-1} X_{4,5} in U_6: a metabelian
/// pair for p = 2 whose group has derived length 3 for odd p.
template <CoefficientRing Ring>
std::pair<UnipotentMatrix<Ring>, UnipotentMatrix<Ring>> small_example_pair(const Ring& ring)
{
    const auto x = [&](int i, int j, long long v) { return transvection(ring, 6, i, j, ring.from_int(v)); };
    return {multiply(x(1, 2, 1), x(5, 6, 1)), multiply(multiply(x(2, 3, 1), x(3, 4, -1)), x(4, 5, 1))};
}

/// Number of n <= N with 32 n > 21 * 2^ceil(log2 n).
inline mpz_class count_good(const mpz_class& N)
{
    mpz_class count = 0;
    if (N < 1)
        return count;
    count = 1; // n = 1, d = 0
    for (unsigned long d = 1;; ++d) {
        mpz_class lo = 1, hi = 1;
        mpz_mul_2exp(lo.get_mpz_t(), lo.get_mpz_t(), d - 1);
        mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), d);
        lo += 1; // segment (2^(d-1), 2^d]
        if (lo > N)
            break;
        // smallest good n in the segment: floor(21 * 2^d / 32) + 1
        mpz_class first = 21 * hi;
        mpz_fdiv_q_2exp(first.get_mpz_t(), first.get_mpz_t(), 5);
        first += 1;
        if (first < lo)
            first = lo;
        const mpz_class last = hi < N ? hi : N;
        if (last >= first)
            count += last - first + 1;
    }
    return count;
}

/// pi(N): the exact proportion of n <= N for which U_n has a two-generated
/// subgroup of maximal derived length.
inline mpq_class proportion_good(const mpz_class& N)
{
    if (N < 1)
        fail(ErrorKind::InvalidInput, "N must be at least 1");
    mpq_class q(count_good(N), N);
    q.canonicalize();
    return q;
}

} // namespace unitri
