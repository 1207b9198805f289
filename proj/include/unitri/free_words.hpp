#pragma once

// Words in a free group as immutable DAGs. Each node caches a lower bound for
// its lower-central weight (w lies in gamma_weight(F)) and for its derived
// depth (w lies in F^(depth)). Commutators are [x, y] = x^-1 y^-1 x y.

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "unitri/error.hpp"

namespace unitri {

class Word {
public:
    enum class Kind { Gen, Inv, Prod, Comm };

    static Word gen(std::string name)
    {
        if (name.empty())
            fail(ErrorKind::InvalidInput, "generator names must be non-empty");
        auto node = std::make_shared<Node>();
        node->kind = Kind::Gen;
        node->weight = 1;
        node->depth = 0;
        node->alphabet = {name};
        node->name = std::move(name);
        return Word(std::move(node));
    }

    static Word inv(const Word& w)
    {
        auto node = std::make_shared<Node>();
        node->kind = Kind::Inv;
        node->left = w.node_;
        node->weight = w.weight();
        node->depth = w.depth();
        node->alphabet = w.alphabet();
        return Word(std::move(node));
    }

    static Word prod(const Word& u, const Word& v) { return binary(Kind::Prod, u, v); }
    static Word comm(const Word& u, const Word& v) { return binary(Kind::Comm, u, v); }

    Kind kind() const noexcept { return node_->kind; }
    const std::string& name() const noexcept { return node_->name; }
    Word left() const { return Word(node_->left); }
    Word right() const { return Word(node_->right); }
    int weight() const noexcept { return node_->weight; }
    int depth() const noexcept { return node_->depth; }
    /// Sorted generator names occurring in the word.
    const std::vector<std::string>& alphabet() const noexcept { return node_->alphabet; }

    /// Identity of the shared node; equal ids imply equal words.
    const void* id() const noexcept { return node_.get(); }

    /// Structural equality (sharing is irrelevant).
    friend bool operator==(const Word& a, const Word& b)
    {
        std::map<std::pair<const void*, const void*>, bool> memo;
        return equal_nodes(a.node_.get(), b.node_.get(), memo);
    }

    /// Number of distinct nodes reachable from this word.
    std::size_t node_count() const
    {
        std::unordered_map<const void*, bool> seen;
        std::vector<const Node*> stack{node_.get()};
        while (!stack.empty()) {
            const Node* n = stack.back();
            stack.pop_back();
            if (!n || !seen.emplace(n, true).second)
                continue;
            stack.push_back(n->left.get());
            stack.push_back(n->right.get());
        }
        return seen.size();
    }

private:
    struct Node {
        Kind kind = Kind::Gen;
        std::string name;
        std::shared_ptr<const Node> left, right;
        int weight = 1;
        int depth = 0;
        std::vector<std::string> alphabet;
    };

    explicit Word(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static Word binary(Kind kind, const Word& u, const Word& v)
    {
        auto node = std::make_shared<Node>();
        node->kind = kind;
        node->left = u.node_;
        node->right = v.node_;
        if (kind == Kind::Comm) {
            node->weight = u.weight() + v.weight();
            node->depth = std::min(u.depth(), v.depth()) + 1;
        } else {
            node->weight = std::min(u.weight(), v.weight());
            node->depth = std::min(u.depth(), v.depth());
        }
        std::set_union(u.alphabet().begin(), u.alphabet().end(), v.alphabet().begin(), v.alphabet().end(),
                       std::back_inserter(node->alphabet));
        return Word(std::move(node));
    }

    static bool equal_nodes(const Node* a, const Node* b, std::map<std::pair<const void*, const void*>, bool>& memo)
    {
        if (a == b)
            return true;
        if (!a || !b || a->kind != b->kind || a->weight != b->weight || a->depth != b->depth)
            return false;
        if (a->kind == Kind::Gen)
            return a->name == b->name;
        auto key = std::make_pair(static_cast<const void*>(a), static_cast<const void*>(b));
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        bool eq = equal_nodes(a->left.get(), b->left.get(), memo) &&
                  equal_nodes(a->right.get(), b->right.get(), memo);
        memo.emplace(key, eq);
        return eq;
    }

    std::shared_ptr<const Node> node_;
};

inline Word gen(std::string name) { return Word::gen(std::move(name)); }
inline Word inv(const Word& w) { return Word::inv(w); }
inline Word prod(const Word& u, const Word& v) { return Word::prod(u, v); }
inline Word comm(const Word& u, const Word& v) { return Word::comm(u, v); }

/// [[...[w1, w2], ...], wk]
inline Word left_normed(const std::vector<Word>& words)
{
    if (words.size() < 2)
        fail(ErrorKind::TooShort, "a left-normed commutator needs at least two entries");
    Word acc = words.front();
    for (std::size_t k = 1; k < words.size(); ++k)
        acc = comm(acc, words[k]);
    return acc;
}

inline Word left_normed(const std::vector<std::string>& names)
{
    std::vector<Word> words;
    words.reserve(names.size());
    for (const auto& n : names)
        words.push_back(gen(n));
    return left_normed(words);
}

/// Renames generators; sharing inside the word is preserved.
inline Word substitute(const Word& w, const std::map<std::string, std::string>& rename)
{
    for (const auto& name : w.alphabet())
        if (!rename.contains(name))
            fail(ErrorKind::BadSubstitution, "no image for generator '" + name + "'");
    std::unordered_map<const void*, Word> memo;
    auto go = [&](auto&& self, const Word& x) -> Word {
        if (auto it = memo.find(x.id()); it != memo.end())
            return it->second;
        Word out = [&] {
            switch (x.kind()) {
            case Word::Kind::Gen: return gen(rename.at(x.name()));
            case Word::Kind::Inv: return inv(self(self, x.left()));
            case Word::Kind::Prod: return prod(self(self, x.left()), self(self, x.right()));
            case Word::Kind::Comm: break;
            }
            return comm(self(self, x.left()), self(self, x.right()));
        }();
        memo.emplace(x.id(), out);
        return out;
    };
    return go(go, w);
}

// ---------------------------------------------------------------------------
// s-expressions: NAME | (comm w1 w2 ...) | (mul w1 w2 ...) | (inv w)
// (comm u v w) is the left-normed [[u, v], w].

inline std::string to_sexpr(const Word& w)
{
    switch (w.kind()) {
    case Word::Kind::Gen: return w.name();
    case Word::Kind::Inv: return "(inv " + to_sexpr(w.left()) + ")";
    case Word::Kind::Prod: {
        std::vector<Word> factors{w.right()};
        Word head = w.left();
        while (head.kind() == Word::Kind::Prod) {
            factors.push_back(head.right());
            head = head.left();
        }
        std::string s = "(mul " + to_sexpr(head);
        for (auto it = factors.rbegin(); it != factors.rend(); ++it)
            s += " " + to_sexpr(*it);
        return s + ")";
    }
    case Word::Kind::Comm: break;
    }
    // Flatten the left spine while the appended entries are generators.
    std::vector<Word> tail{w.right()};
    Word head = w.left();
    if (w.right().kind() == Word::Kind::Gen) {
        while (head.kind() == Word::Kind::Comm && head.right().kind() == Word::Kind::Gen) {
            tail.push_back(head.right());
            head = head.left();
        }
    }
    std::string s = "(comm " + to_sexpr(head);
    for (auto it = tail.rbegin(); it != tail.rend(); ++it)
        s += " " + to_sexpr(*it);
    return s + ")";
}

namespace detail {

class SexprParser {
public:
    explicit SexprParser(std::string_view text) : text_(text) {}

    Word parse()
    {
        Word w = expr();
        skip_space();
        if (pos_ != text_.size())
            error("trailing input");
        return w;
    }

private:
    // Identical subterms map to one node, so parsed words share work during evaluation.
    using Key = std::tuple<int, std::string, const void*, const void*>;

    Word intern(Word w)
    {
        Key key{static_cast<int>(w.kind()), w.kind() == Word::Kind::Gen ? w.name() : std::string(),
                w.kind() == Word::Kind::Gen ? nullptr : w.left().id(),
                (w.kind() == Word::Kind::Prod || w.kind() == Word::Kind::Comm) ? w.right().id() : nullptr};
        auto [it, inserted] = table_.try_emplace(key, w);
        return it->second;
    }

    Word expr()
    {
        skip_space();
        if (pos_ >= text_.size())
            error("unexpected end of input");
        if (text_[pos_] == '(') {
            ++pos_;
            const std::string op = identifier();
            std::vector<Word> args;
            for (;;) {
                skip_space();
                if (pos_ >= text_.size())
                    error("missing ')'");
                if (text_[pos_] == ')') {
                    ++pos_;
                    break;
                }
                args.push_back(expr());
            }
            if (op == "comm") {
                if (args.size() < 2)
                    error("comm needs at least two arguments");
                Word acc = args[0];
                for (std::size_t k = 1; k < args.size(); ++k)
                    acc = intern(comm(acc, args[k]));
                return acc;
            }
            if (op == "mul") {
                if (args.size() < 2)
                    error("mul needs at least two arguments");
                Word acc = args[0];
                for (std::size_t k = 1; k < args.size(); ++k)
                    acc = intern(prod(acc, args[k]));
                return acc;
            }
            if (op == "inv") {
                if (args.size() != 1)
                    error("inv takes one argument");
                return intern(inv(args[0]));
            }
            error("unknown operator '" + op + "'");
        }
        return intern(gen(identifier()));
    }

    std::string identifier()
    {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
                ++pos_;
            else
                break;
        }
        if (start == pos_)
            error("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void error(const std::string& what) const
    {
        fail(ErrorKind::InvalidInput, "s-expression at offset " + std::to_string(pos_) + ": " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::map<Key, Word> table_;
};

} // namespace detail

inline Word parse_sexpr(std::string_view text) { return detail::SexprParser(text).parse(); }

// ---------------------------------------------------------------------------
// Evaluation. M needs multiply, invert and commutator found by ADL.

template <class M>
using Assignment = std::map<std::string, M>;

/// Evaluates several words against one assignment, sharing the memo table.
template <class M>
class EvaluationSession {
public:
    explicit EvaluationSession(const Assignment<M>& assignment) : assignment_(assignment) {}

    M evaluate(const Word& w)
    {
        for (const auto& name : w.alphabet())
            if (!assignment_.contains(name))
                fail(ErrorKind::BadSubstitution, "no value for generator '" + name + "'");
        return value(w);
    }

private:
    const M& value(const Word& w)
    {
        if (auto it = memo_.find(w.id()); it != memo_.end())
            return it->second;
        M result = [&]() -> M {
            switch (w.kind()) {
            case Word::Kind::Gen: return assignment_.at(w.name());
            case Word::Kind::Inv: return invert(value(w.left()));
            case Word::Kind::Prod: {
                const M& l = value(w.left());
                return multiply(l, value(w.right()));
            }
            case Word::Kind::Comm: break;
            }
            const M& l = value(w.left());
            return commutator(l, value(w.right()));
        }();
        keep_.push_back(w); // pins the node so its address stays unique
        return memo_.emplace(w.id(), std::move(result)).first->second;
    }

    const Assignment<M>& assignment_;
    std::unordered_map<const void*, M> memo_;
    std::vector<Word> keep_;
};

/// Homomorphic image of w. Shared subwords are computed once; a value is
/// released as soon as every parent that needs it has been computed.
template <class M>
M evaluate(const Word& w, const Assignment<M>& assignment)
{
    for (const auto& name : w.alphabet())
        if (!assignment.contains(name))
            fail(ErrorKind::BadSubstitution, "no value for generator '" + name + "'");

    // Post-order over distinct nodes plus in-DAG parent counts.
    std::vector<Word> order;
    std::unordered_map<const void*, int> parents;
    {
        std::unordered_map<const void*, bool> visited;
        std::vector<std::pair<Word, bool>> stack{{w, false}};
        while (!stack.empty()) {
            auto [x, expanded] = stack.back();
            stack.pop_back();
            if (expanded) {
                order.push_back(x);
                continue;
            }
            if (!visited.emplace(x.id(), true).second)
                continue;
            stack.emplace_back(x, true);
            if (x.kind() == Word::Kind::Gen)
                continue;
            std::vector<Word> kids{x.left()};
            if (x.kind() != Word::Kind::Inv)
                kids.push_back(x.right());
            for (const auto& k : kids) {
                ++parents[k.id()];
                if (!visited.contains(k.id()))
                    stack.emplace_back(k, false);
            }
        }
    }

    std::unordered_map<const void*, M> memo;
    auto release = [&](const Word& child) {
        if (--parents[child.id()] == 0)
            memo.erase(child.id());
    };
    for (const auto& x : order) {
        switch (x.kind()) {
        case Word::Kind::Gen: memo.emplace(x.id(), assignment.at(x.name())); break;
        case Word::Kind::Inv:
            memo.emplace(x.id(), invert(memo.at(x.left().id())));
            release(x.left());
            break;
        case Word::Kind::Prod:
            memo.emplace(x.id(), multiply(memo.at(x.left().id()), memo.at(x.right().id())));
            release(x.left());
            release(x.right());
            break;
        case Word::Kind::Comm:
            memo.emplace(x.id(), commutator(memo.at(x.left().id()), memo.at(x.right().id())));
            release(x.left());
            release(x.right());
            break;
        }
    }
    return std::move(memo.at(w.id()));
}

// ---------------------------------------------------------------------------
// Word families.

/// w for n = 2^(d-1) + 1 over {x1, x2, x3}: the base x1^r x2^s x3^t, then
/// w_{2n-1} = [w_n(x1, x2, x3), w_n(x3, x1, x2)].
inline Word build_w(int d, std::array<long long, 3> exponents = {1, 0, 0})
{
    if (d < 1)
        fail(ErrorKind::InvalidInput, "d must be at least 1");
    static const std::array<const char*, 3> names{"x1", "x2", "x3"};
    std::vector<Word> factors;
    for (std::size_t k = 0; k < 3; ++k) {
        const long long e = exponents[k];
        const Word g = e < 0 ? inv(gen(names[k])) : gen(names[k]);
        for (long long c = 0; c < (e < 0 ? -e : e); ++c)
            factors.push_back(g);
    }
    if (factors.empty())
        fail(ErrorKind::SingularBaseCase, "base exponents (0,0,0)");
    Word w = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k)
        w = prod(w, factors[k]);
    const std::map<std::string, std::string> cycle{{"x1", "x3"}, {"x2", "x1"}, {"x3", "x2"}};
    for (int level = 2; level <= d; ++level)
        w = comm(w, substitute(w, cycle));
    return w;
}

/// The two-generator words over {a, b}.
struct TwoGenFamily {
    Word a = gen("a");
    Word b = gen("b");
    Word ba = comm(b, a);
    Word baa = comm(ba, a);
    Word bab = comm(ba, b);
    Word c5 = comm(baa, ba);            // [[b,a,a],[b,a]]
    Word bab_ba = comm(bab, ba);        // [[b,a,b],[b,a]]
    Word c10 = comm(bab_ba, c5);        // [[[b,a,b],[b,a]], c5]
    Word baaa = comm(baa, a);
    Word baab = comm(baa, b);
    Word babb = comm(bab, b);
    Word head6 = comm(baaa, ba);        // [[b,a,a,a],[b,a]]
    Word head6p = comm(baab, ba);
    Word head6pp = comm(babb, ba);
    Word c21 = comm(comm(head6, c5), c10);
    Word c21p = comm(comm(head6p, c5), c10);
    Word c21pp = comm(comm(head6pp, c5), c10);
};

inline const TwoGenFamily& two_gen_family()
{
    static const TwoGenFamily family;
    return family;
}

using WordTriple = std::array<Word, 3>;

/// (u, u', u'') -> ([u', u''], [u'', u], [u, u'])
inline WordTriple cyclic_step(const WordTriple& t)
{
    return {comm(t[1], t[2]), comm(t[2], t[0]), comm(t[0], t[1])};
}

/// The triple (c21, c21', c21'') after `steps` cyclic steps.
inline WordTriple word_triple(int steps)
{
    const auto& f = two_gen_family();
    WordTriple t{f.c21, f.c21p, f.c21pp};
    for (int k = 0; k < steps; ++k)
        t = cyclic_step(t);
    return t;
}

/// Word of weight n - 1 and derived depth >= d - 1 whose value at a suitable
/// pair is X_{1,n}^{+-1}: c5, c10, c21 (component selects a primed variant for
/// d >= 5), then the cyclic recursion.
inline Word build_two_gen_word(int d, int component = 0)
{
    if (d < 3 || d > 12)
        fail(ErrorKind::Unsupported, "two-generator words are built for 3 <= d <= 12");
    if (component < 0 || component > 2)
        fail(ErrorKind::InvalidInput, "component must be 0, 1 or 2");
    const auto& f = two_gen_family();
    if (d == 3)
        return f.c5;
    if (d == 4)
        return f.c10;
    return word_triple(d - 5)[static_cast<std::size_t>(component)];
}

} // namespace unitri
