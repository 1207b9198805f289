#include <gtest/gtest.h>

#include "test_support.hpp"

namespace unitri {
namespace {

using testing::random_matrix;
using testing::random_poly_matrix;
using testing::uniform;
using testing::x;

const PrimeField F2(2);
const PrimeField F3(3);
const IntegerRing Z;

template <class Ring>
UnipotentMatrix<Ring> from_entries(const Ring& ring, int n, std::initializer_list<std::tuple<int, int, long long>> es)
{
    UnipotentMatrix<Ring> m(ring, n);
    for (const auto& [i, j, v] : es)
        m.at(i, j) = ring.from_int(v);
    return m;
}

TEST(Transvection, Examples)
{
    const auto x12 = x(Z, 2, 1, 2);
    EXPECT_EQ(x12.at(1, 2), 1);
    const auto x13 = x(Z, 3, 1, 3);
    EXPECT_EQ(x13, from_entries(Z, 3, {{1, 3, 1}}));
    try {
        transvection(Z, 5, 2, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadIndex);
    }
    EXPECT_THROW(transvection(Z, 3, 1, 4), Error);
    EXPECT_THROW(UnipotentMatrix<IntegerRing>(Z, 0), Error);
}

TEST(Multiply, Examples)
{
    EXPECT_TRUE(multiply(x(F2, 2, 1, 2), x(F2, 2, 1, 2)).is_identity());
    EXPECT_EQ(multiply(x(Z, 3, 1, 2), x(Z, 3, 2, 3)), from_entries(Z, 3, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}}));
    const auto a = random_matrix(Z, 6);
    EXPECT_EQ(multiply(a, UnipotentMatrix<IntegerRing>(Z, 6)), a);
}

TEST(Multiply, RejectsMismatch)
{
    try {
        multiply(x(Z, 3, 1, 2), x(Z, 4, 1, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Mismatch);
    }
    EXPECT_THROW(multiply(x(F2, 3, 1, 2), x(F3, 3, 1, 2)), Error);
}

TEST(Invert, Examples)
{
    EXPECT_EQ(invert(x(Z, 4, 2, 4)), x(Z, 4, 2, 4, -1));
    EXPECT_TRUE(invert(UnipotentMatrix<IntegerRing>(Z, 5)).is_identity());
    const auto m = multiply(x(Z, 3, 1, 2), x(Z, 3, 2, 3));
    const auto inv = invert(m);
    EXPECT_TRUE(multiply(m, inv).is_identity());
    // (1,3) of the inverse is -a13 + a12 a23 = 0
    EXPECT_EQ(inv, from_entries(Z, 3, {{1, 2, -1}, {2, 3, -1}}));
}

TEST(Commutator, Examples)
{
    EXPECT_EQ(commutator(x(Z, 3, 1, 2), x(Z, 3, 2, 3)), x(Z, 3, 1, 3));
    EXPECT_TRUE(commutator(x(Z, 4, 1, 2), x(Z, 4, 3, 4)).is_identity());
    const auto a = random_matrix(Z, 5);
    EXPECT_TRUE(commutator(a, UnipotentMatrix<IntegerRing>(Z, 5)).is_identity());
    // convention: [X_{2,3}, X_{1,2}] = X_{1,3}^{-1}
    EXPECT_EQ(commutator(x(Z, 3, 2, 3), x(Z, 3, 1, 2)), x(Z, 3, 1, 3, -1));
}

TEST(Commutator, MatchesDefinition)
{
    for (int k = 0; k < 50; ++k) {
        const auto a = random_matrix(Z, 5), b = random_matrix(Z, 5);
        EXPECT_EQ(commutator(a, b), multiply(multiply(invert(a), invert(b)), multiply(a, b)));
    }
}

template <class Ring>
void check_group_laws(const Ring& ring)
{
    for (int k = 0; k < 60; ++k) {
        const int n = static_cast<int>(uniform(1, 7));
        const auto a = random_matrix(ring, n), b = random_matrix(ring, n), c = random_matrix(ring, n);
        EXPECT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
        EXPECT_TRUE(multiply(a, invert(a)).is_identity());
        EXPECT_TRUE(multiply(invert(a), a).is_identity());
    }
}

TEST(GroupLaws, PrimeFields)
{
    check_group_laws(F2);
    check_group_laws(F3);
    check_group_laws(PrimeField(7));
}

TEST(GroupLaws, Integers) { check_group_laws(Z); }

TEST(GroupLaws, Polynomials)
{
    for (int k = 0; k < 20; ++k) {
        const int n = static_cast<int>(uniform(2, 5));
        const auto a = random_poly_matrix(n), b = random_poly_matrix(n), c = random_poly_matrix(n);
        EXPECT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
        EXPECT_TRUE(multiply(a, invert(a)).is_identity());
        EXPECT_TRUE(multiply(invert(a), a).is_identity());
    }
}

TEST(Power, AgreesWithRepeatedProducts)
{
    const auto a = random_matrix(Z, 5);
    auto acc = UnipotentMatrix<IntegerRing>(Z, 5);
    for (int e = 0; e <= 6; ++e) {
        EXPECT_EQ(power(a, e), acc);
        EXPECT_EQ(power(a, -e), invert(acc));
        acc = multiply(acc, a);
    }
    for (int k = 0; k < 20; ++k) {
        const auto b = random_matrix(F2, 4);
        EXPECT_TRUE(power(b, 4).is_identity()); // exponent of U_4(F_2) divides 4
    }
}

TEST(GammaIndex, Examples)
{
    for (int n = 2; n <= 7; ++n) {
        EXPECT_EQ(gamma_index(x(Z, n, 1, n)), n - 1);
        EXPECT_EQ(gamma_index(UnipotentMatrix<IntegerRing>(Z, n)), n);
    }
    EXPECT_EQ(gamma_index(multiply(x(Z, 4, 1, 2), x(Z, 4, 3, 4))), 1);
}

TEST(GammaIndex, CommutatorsClimbTheFiltration)
{
    for (int k = 0; k < 300; ++k) {
        const int n = static_cast<int>(uniform(2, 8));
        auto a = random_matrix(Z, n), b = random_matrix(Z, n);
        // kill a random number of low diagonals to vary the levels
        const int la = static_cast<int>(uniform(1, n)), lb = static_cast<int>(uniform(1, n));
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                if (j - i < la)
                    a.at(i, j) = 0;
                if (j - i < lb)
                    b.at(i, j) = 0;
            }
        EXPECT_GE(gamma_index(commutator(a, b)), std::min(n, gamma_index(a) + gamma_index(b)));
    }
}

TEST(ProjectPi, Examples)
{
    for (int m = 2; m <= 5; ++m) {
        const int big = 2 * m - 1;
        auto [l1, r1] = project_pi(x(Z, big, 1, m));
        EXPECT_EQ(l1, x(Z, m, 1, m));
        EXPECT_TRUE(r1.is_identity());
        auto [l2, r2] = project_pi(x(Z, big, m, big));
        EXPECT_TRUE(l2.is_identity());
        EXPECT_EQ(r2, x(Z, m, 1, m));
        auto [l3, r3] = project_pi(UnipotentMatrix<IntegerRing>(Z, big));
        EXPECT_TRUE(l3.is_identity());
        EXPECT_TRUE(r3.is_identity());
    }
    try {
        project_pi(UnipotentMatrix<IntegerRing>(Z, 4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadDimension);
    }
}

TEST(ProjectPi, IsAHomomorphism)
{
    for (int k = 0; k < 100; ++k) {
        const int big = 2 * static_cast<int>(uniform(2, 5)) - 1;
        const auto a = random_matrix(Z, big), b = random_matrix(Z, big);
        const auto [la, ra] = project_pi(a);
        const auto [lb, rb] = project_pi(b);
        const auto [lab, rab] = project_pi(multiply(a, b));
        EXPECT_EQ(lab, multiply(la, lb));
        EXPECT_EQ(rab, multiply(ra, rb));
    }
}

TEST(LiftPi, Examples)
{
    // zero fill of (X12, X12) is I + E12 + E23, i.e. X23 X12
    const auto lifted = lift_pi(x(Z, 2, 1, 2), x(Z, 2, 1, 2));
    EXPECT_EQ(lifted, from_entries(Z, 3, {{1, 2, 1}, {2, 3, 1}}));
    EXPECT_EQ(lifted, multiply(x(Z, 3, 2, 3), x(Z, 3, 1, 2)));
    EXPECT_TRUE(lift_pi(UnipotentMatrix<IntegerRing>(Z, 4), UnipotentMatrix<IntegerRing>(Z, 4)).is_identity());
    for (int m = 2; m <= 5; ++m)
        EXPECT_EQ(lift_pi(x(Z, m, 1, m), UnipotentMatrix<IntegerRing>(Z, m)), x(Z, 2 * m - 1, 1, m));
    EXPECT_THROW(lift_pi(x(Z, 2, 1, 2), x(Z, 3, 1, 2)), Error);
}

TEST(LiftPi, ProjectsBack)
{
    for (int k = 0; k < 100; ++k) {
        const int m = static_cast<int>(uniform(2, 6));
        const auto l = random_matrix(F3, m), r = random_matrix(F3, m);
        const auto lifted = lift_pi(l, r);
        const auto [l2, r2] = project_pi(lifted);
        EXPECT_EQ(l2, l);
        EXPECT_EQ(r2, r);
        for (int i = 1; i < m; ++i)
            for (int j = m + 1; j <= 2 * m - 1; ++j)
                EXPECT_EQ(lifted.at(i, j), 0U);
    }
}

TEST(CosetCommutator, SmallExample)
{
    const CosetPattern<IntegerRing> s{Z, 3, 1, {1, 0}};
    const CosetPattern<IntegerRing> t{Z, 3, 1, {0, 1}};
    const auto c = coset_commutator(s, t);
    EXPECT_EQ(c.level, 2);
    ASSERT_EQ(c.tau.size(), 1U);
    EXPECT_EQ(c.tau[0], 1);
    EXPECT_EQ(coset_of(commutator(representative(s), representative(t)), 2), c);
}

TEST(CosetCommutator, ZeroPatternAnnihilates)
{
    for (int k = 0; k < 30; ++k) {
        const int n = static_cast<int>(uniform(3, 8));
        const int r = static_cast<int>(uniform(1, n - 2));
        const int s = static_cast<int>(uniform(1, n - 1 - r));
        CosetPattern<IntegerRing> a{Z, n, r, {}}, zero{Z, n, s, {}};
        for (int i = 1; i <= n - r; ++i)
            a.tau.push_back(testing::random_scalar(Z));
        zero.tau.assign(static_cast<std::size_t>(n - s), 0);
        for (const auto& v : coset_commutator(a, zero).tau)
            EXPECT_EQ(v, 0);
    }
}

TEST(CosetCommutator, SymbolicLevelOne)
{
    const PolyRing ring;
    const int n = 6;
    CosetPattern<PolyRing> s{ring, n, 1, {}}, t{ring, n, 1, {}};
    for (int i = 1; i < n; ++i) {
        s.tau.push_back(MultilinearPoly::variable(i, Flag::Alpha));
        t.tau.push_back(MultilinearPoly::variable(i, Flag::Beta));
    }
    const auto c = coset_commutator(s, t);
    ASSERT_EQ(c.tau.size(), 4U);
    for (int i = 1; i <= 4; ++i) {
        // alpha_i beta_{i+1} - alpha_{i+1} beta_i
        MultilinearPoly expected = MultilinearPoly::zero(i, i + 1);
        expected.add_term(Monomial::parse("ab@" + std::to_string(i)).pattern(), 1);
        expected.add_term(Monomial::parse("ba@" + std::to_string(i)).pattern(), -1);
        EXPECT_EQ(c.tau[static_cast<std::size_t>(i - 1)], expected);
    }
    EXPECT_EQ(coset_of(commutator(representative(s), representative(t)), 2), c);
}

TEST(CosetCommutator, RejectsOverflow)
{
    const CosetPattern<IntegerRing> s{Z, 4, 2, {1, 1}};
    const CosetPattern<IntegerRing> t{Z, 4, 2, {1, 1}};
    try {
        coset_commutator(s, t);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::LevelOverflow);
    }
}

template <class Ring>
UnipotentMatrix<Ring> random_coset_member(const CosetPattern<Ring>& c)
{
    auto m = representative(c);
    for (int i = 1; i <= c.n; ++i)
        for (int j = i + c.level + 1; j <= c.n; ++j)
            m.at(i, j) = testing::random_scalar(c.ring);
    return m;
}

template <class Ring>
void check_coset_oracle(const Ring& ring, int trials)
{
    for (int k = 0; k < trials; ++k) {
        const int n = static_cast<int>(uniform(3, 8));
        const int r = static_cast<int>(uniform(1, n - 2));
        const int s = static_cast<int>(uniform(1, n - 1 - r));
        CosetPattern<Ring> a{ring, n, r, {}}, b{ring, n, s, {}};
        for (int i = 1; i <= n - r; ++i)
            a.tau.push_back(testing::random_scalar(ring));
        for (int i = 1; i <= n - s; ++i)
            b.tau.push_back(testing::random_scalar(ring));
        const auto direct = commutator(random_coset_member(a), random_coset_member(b));
        EXPECT_EQ(coset_of(direct, r + s), coset_commutator(a, b));
    }
}

TEST(CosetCommutator, AgreesWithMatrixCommutator)
{
    check_coset_oracle(Z, 400);
    check_coset_oracle(F2, 200);
    check_coset_oracle(PrimeField(5), 200);
    check_coset_oracle(PrimeField(7), 200);
}

template <class Ring>
void check_nested_identity(const Ring& ring)
{
    std::vector<UnipotentMatrix<Ring>> xs;
    for (int i = 1; i <= 8; ++i)
        xs.push_back(x(ring, 9, i, i + 1));
    const auto c = [](const auto& a, const auto& b) { return commutator(a, b); };
    const auto left = c(c(xs[0], xs[1]), c(xs[2], xs[3]));
    const auto right = c(c(xs[4], xs[5]), c(xs[6], xs[7]));
    EXPECT_EQ(left, x(ring, 9, 1, 5));
    EXPECT_EQ(right, x(ring, 9, 5, 9));
    EXPECT_EQ(c(left, right), x(ring, 9, 1, 9));
}

TEST(NestedIdentity, HoldsOverEveryRing)
{
    check_nested_identity(F2);
    check_nested_identity(F3);
    check_nested_identity(PrimeField(5));
    check_nested_identity(Z);
}

} // namespace
} // namespace unitri
