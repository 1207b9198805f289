#include <gtest/gtest.h>

#include "test_support.hpp"

namespace unitri {
namespace {

using testing::random_matrix;
using testing::uniform;
using testing::x;

const IntegerRing Z;
const std::map<std::string, std::string> kCycle{{"x1", "x3"}, {"x2", "x1"}, {"x3", "x2"}};

TEST(Word, WeightAndDepthRecurrences)
{
    const Word a = gen("a"), b = gen("b");
    EXPECT_EQ(a.weight(), 1);
    EXPECT_EQ(a.depth(), 0);
    const Word ba = comm(b, a);
    EXPECT_EQ(ba.weight(), 2);
    EXPECT_EQ(ba.depth(), 1);
    EXPECT_EQ(inv(ba).weight(), 2);
    EXPECT_EQ(inv(ba).depth(), 1);
    EXPECT_EQ(prod(ba, a).weight(), 1);
    EXPECT_EQ(prod(ba, comm(ba, b)).depth(), 1);
    EXPECT_EQ(comm(ba, comm(ba, b)).depth(), 2);
    EXPECT_EQ(comm(ba, comm(ba, b)).weight(), 5);
    EXPECT_THROW(gen(""), Error);
}

TEST(Word, Alphabet)
{
    const Word w = comm(prod(gen("x3"), gen("x1")), inv(gen("x1")));
    EXPECT_EQ(w.alphabet(), (std::vector<std::string>{"x1", "x3"}));
}

TEST(LeftNormed, Examples)
{
    const Word ba = left_normed(std::vector<std::string>{"b", "a"});
    EXPECT_EQ(ba, comm(gen("b"), gen("a")));
    EXPECT_EQ(ba.weight(), 2);
    const Word baa = left_normed(std::vector<std::string>{"b", "a", "a"});
    EXPECT_EQ(baa, comm(comm(gen("b"), gen("a")), gen("a")));
    EXPECT_EQ(baa.weight(), 3);
    EXPECT_EQ(baa.depth(), 1);
    const Word baaa = left_normed(std::vector<std::string>{"b", "a", "a", "a"});
    EXPECT_EQ(baaa, comm(baa, gen("a")));
    EXPECT_EQ(baaa.weight(), 4);
    try {
        left_normed(std::vector<std::string>{"b"});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TooShort);
    }
}

TEST(Substitute, Examples)
{
    EXPECT_EQ(substitute(gen("x1"), kCycle), gen("x3"));
    const Word w3 = comm(gen("x1"), gen("x3"));
    const Word renamed = substitute(w3, kCycle);
    EXPECT_EQ(renamed, comm(gen("x3"), gen("x2")));
    EXPECT_EQ(renamed.weight(), w3.weight());
    EXPECT_EQ(renamed.depth(), w3.depth());
    const std::map<std::string, std::string> id{{"x1", "x1"}, {"x2", "x2"}, {"x3", "x3"}};
    EXPECT_EQ(substitute(build_w(4), id), build_w(4));
    try {
        substitute(w3, {{"x1", "x2"}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadSubstitution);
    }
}

TEST(Sexpr, PrintsLeftNormedChains)
{
    const auto& f = two_gen_family();
    EXPECT_EQ(to_sexpr(f.c5), "(comm (comm b a a) (comm b a))");
    EXPECT_EQ(to_sexpr(f.c10), "(comm (comm (comm b a b) (comm b a)) (comm (comm b a a) (comm b a)))");
    EXPECT_EQ(to_sexpr(prod(inv(gen("x")), gen("y"))), "(mul (inv x) y)");
}

TEST(Sexpr, RoundTrips)
{
    const auto& f = two_gen_family();
    for (const Word& w : {f.c5, f.c10, f.c21, f.c21p, f.c21pp, build_w(5), build_w(3, {2, -1, 1}),
                          build_two_gen_word(7)}) {
        const Word back = parse_sexpr(to_sexpr(w));
        EXPECT_EQ(back, w);
        EXPECT_EQ(back.weight(), w.weight());
        EXPECT_EQ(back.depth(), w.depth());
    }
    EXPECT_EQ(parse_sexpr("(comm b a a)"), comm(comm(gen("b"), gen("a")), gen("a")));
    EXPECT_EQ(parse_sexpr("  (mul x (inv y) z)"), prod(prod(gen("x"), inv(gen("y"))), gen("z")));
}

TEST(Sexpr, RejectsMalformedText)
{
    for (const char* bad : {"", "(", "(comm a)", "(foo a b)", "(comm a b))", "(inv a b)", ")", "(comm a (b))"})
        EXPECT_THROW(parse_sexpr(bad), Error) << bad;
}

TEST(Sexpr, SharesRepeatedSubterms)
{
    const Word w = parse_sexpr("(comm (comm (comm b a a) (comm b a)) (comm (comm b a a) (comm b a)))");
    EXPECT_EQ(w.left().id(), w.right().id());
}

TEST(Evaluate, Examples)
{
    const auto m = random_matrix(Z, 4);
    EXPECT_EQ(evaluate(gen("x1"), Assignment<UnipotentMatrix<IntegerRing>>{{"x1", m}}), m);
    const Assignment<UnipotentMatrix<IntegerRing>> asg{
        {"x1", x(Z, 3, 1, 2)}, {"x2", UnipotentMatrix<IntegerRing>(Z, 3)}, {"x3", x(Z, 3, 2, 3)}};
    EXPECT_EQ(evaluate(comm(gen("x1"), gen("x3")), asg), x(Z, 3, 1, 3));
}

TEST(Evaluate, NestedTransvectionWord)
{
    std::vector<Word> g;
    Assignment<UnipotentMatrix<IntegerRing>> asg;
    for (int i = 1; i <= 8; ++i) {
        g.push_back(gen("g" + std::to_string(i)));
        asg.emplace("g" + std::to_string(i), x(Z, 9, i, i + 1));
    }
    const Word w = comm(comm(comm(g[0], g[1]), comm(g[2], g[3])), comm(comm(g[4], g[5]), comm(g[6], g[7])));
    EXPECT_EQ(w.depth(), 3);
    EXPECT_EQ(evaluate(w, asg), x(Z, 9, 1, 9));
}

TEST(Evaluate, MissingGenerator)
{
    try {
        evaluate(comm(gen("a"), gen("b")), Assignment<UnipotentMatrix<IntegerRing>>{{"a", x(Z, 3, 1, 2)}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadSubstitution);
    }
}

TEST(Evaluate, MismatchedDimensions)
{
    try {
        evaluate(comm(gen("a"), gen("b")),
                 Assignment<UnipotentMatrix<IntegerRing>>{{"a", x(Z, 3, 1, 2)}, {"b", x(Z, 4, 1, 2)}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Mismatch);
    }
}

TEST(Evaluate, IsHomomorphic)
{
    const Word u = comm(gen("a"), prod(gen("b"), gen("a"))), v = inv(comm(gen("b"), gen("a")));
    for (int k = 0; k < 100; ++k) {
        const int n = static_cast<int>(uniform(2, 6));
        const Assignment<UnipotentMatrix<IntegerRing>> asg{{"a", random_matrix(Z, n)}, {"b", random_matrix(Z, n)}};
        const auto eu = evaluate(u, asg), ev = evaluate(v, asg);
        EXPECT_EQ(evaluate(prod(u, v), asg), multiply(eu, ev));
        EXPECT_EQ(evaluate(comm(u, v), asg), commutator(eu, ev));
        EXPECT_EQ(evaluate(inv(u), asg), invert(eu));
    }
}

TEST(Evaluate, SessionMatchesOneShot)
{
    const auto& f = two_gen_family();
    const Assignment<UnipotentMatrix<IntegerRing>> asg{{"a", random_matrix(Z, 11)}, {"b", random_matrix(Z, 11)}};
    EvaluationSession<UnipotentMatrix<IntegerRing>> session(asg);
    EXPECT_EQ(session.evaluate(f.c5), evaluate(f.c5, asg));
    EXPECT_EQ(session.evaluate(f.c10), evaluate(f.c10, asg));
}

TEST(Evaluate, WeightIsSound)
{
    const auto& f = two_gen_family();
    for (int k = 0; k < 40; ++k) {
        const int n = static_cast<int>(uniform(3, 12));
        const Assignment<UnipotentMatrix<IntegerRing>> asg{{"a", random_matrix(Z, n)}, {"b", random_matrix(Z, n)}};
        for (const Word& w : {f.ba, f.baa, f.bab, f.c5, f.bab_ba, f.c10, f.head6})
            EXPECT_GE(gamma_index(evaluate(w, asg)), std::min(n, w.weight()));
    }
}

TEST(BuildW, Examples)
{
    EXPECT_EQ(build_w(1), gen("x1"));
    EXPECT_EQ(build_w(2), comm(gen("x1"), gen("x3")));
    EXPECT_EQ(build_w(3), comm(comm(gen("x1"), gen("x3")), comm(gen("x3"), gen("x2"))));
    for (int d = 1; d <= 9; ++d) {
        EXPECT_EQ(build_w(d).weight(), 1 << (d - 1));
        EXPECT_GE(build_w(d).depth(), d - 1);
    }
    EXPECT_EQ(build_w(1, {1, 1, 0}), prod(gen("x1"), gen("x2")));
    EXPECT_THROW(build_w(0), Error);
}

TEST(BuildTwoGenWord, Examples)
{
    const auto& f = two_gen_family();
    const Word c5 = build_two_gen_word(3);
    EXPECT_EQ(c5, comm(left_normed(std::vector<std::string>{"b", "a", "a"}), left_normed(std::vector<std::string>{"b", "a"})));
    EXPECT_EQ(c5.weight(), 5);
    EXPECT_EQ(c5.depth(), 2);
    const Word c10 = build_two_gen_word(4);
    EXPECT_EQ(c10, comm(comm(left_normed(std::vector<std::string>{"b", "a", "b"}), f.ba), f.c5));
    EXPECT_EQ(c10.weight(), 10);
    EXPECT_EQ(c10.depth(), 3);
    EXPECT_EQ(build_two_gen_word(5), f.c21);
    EXPECT_EQ(build_two_gen_word(5, 1), f.c21p);
    EXPECT_EQ(build_two_gen_word(5, 2), f.c21pp);
    const Word d6 = build_two_gen_word(6);
    EXPECT_EQ(d6, comm(f.c21p, f.c21pp));
    EXPECT_EQ(d6.weight(), 42);
    EXPECT_GE(d6.depth(), 5);
    for (int d = 5; d <= 12; ++d) {
        for (int c = 0; c < 3; ++c) {
            const Word w = build_two_gen_word(d, c);
            EXPECT_EQ(w.weight(), 21 << (d - 5));
            EXPECT_GE(w.depth(), d - 1);
        }
    }
    EXPECT_THROW(build_two_gen_word(2), Error);
    EXPECT_THROW(build_two_gen_word(13), Error);
}

TEST(WordTriple, CyclicStep)
{
    const auto t0 = word_triple(0);
    const auto t1 = word_triple(1);
    EXPECT_EQ(t1[0], comm(t0[1], t0[2]));
    EXPECT_EQ(t1[1], comm(t0[2], t0[0]));
    EXPECT_EQ(t1[2], comm(t0[0], t0[1]));
}

} // namespace
} // namespace unitri
