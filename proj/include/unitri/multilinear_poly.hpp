#pragma once

// Multilinear polynomials in the variables alpha_i, beta_i whose monomials use
// every subscript of one consecutive interval exactly once.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "unitri/error.hpp"

namespace unitri {

enum class Flag : std::uint8_t { Alpha = 0, Beta = 1 };

inline char flag_char(Flag f) noexcept { return f == Flag::Alpha ? 'a' : 'b'; }

/// Bit t of a pattern is the flag of subscript lo + t (Alpha = 0, Beta = 1).
using Pattern = std::uint64_t;

/// A product of one variable per subscript over [lo, hi]. Degree may exceed 64;
/// only polynomials are limited by the width of Pattern.
class Monomial {
public:
    Monomial() = default;

    Monomial(int lo, std::vector<Flag> flags) : lo_(lo), flags_(std::move(flags))
    {
        if (lo_ < 1)
            fail(ErrorKind::InvalidInput, "monomial subscripts start at 1");
    }

    /// Accepts "aabab" (low subscript 1) or "aabab@7".
    static Monomial parse(std::string_view text)
    {
        int lo = 1;
        if (auto at = text.find('@'); at != std::string_view::npos) {
            const std::string tail(text.substr(at + 1));
            std::size_t used = 0;
            try {
                lo = std::stoi(tail, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != tail.size())
                fail(ErrorKind::InvalidInput, "bad monomial subscript in '" + std::string(text) + "'");
            text = text.substr(0, at);
        }
        std::vector<Flag> flags;
        flags.reserve(text.size());
        for (char c : text) {
            if (c == 'a' || c == 'A')
                flags.push_back(Flag::Alpha);
            else if (c == 'b' || c == 'B')
                flags.push_back(Flag::Beta);
            else
                fail(ErrorKind::InvalidInput, "monomial patterns use only 'a' and 'b': '" + std::string(text) + "'");
        }
        return Monomial(lo, std::move(flags));
    }

    static Monomial from_pattern(int lo, int degree, Pattern bits)
    {
        std::vector<Flag> flags(static_cast<std::size_t>(degree));
        for (int t = 0; t < degree; ++t)
            flags[static_cast<std::size_t>(t)] = ((bits >> t) & 1U) ? Flag::Beta : Flag::Alpha;
        return Monomial(lo, std::move(flags));
    }

    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return lo_ + degree() - 1; }
    int degree() const noexcept { return static_cast<int>(flags_.size()); }
    const std::vector<Flag>& flags() const noexcept { return flags_; }

    Flag at(int subscript) const
    {
        if (subscript < lo_ || subscript > hi())
            fail(ErrorKind::BadIndex, "subscript outside monomial support");
        return flags_[static_cast<std::size_t>(subscript - lo_)];
    }

    int alpha_count() const noexcept
    {
        return static_cast<int>(std::count(flags_.begin(), flags_.end(), Flag::Alpha));
    }

    Pattern pattern() const
    {
        if (degree() > 62)
            fail(ErrorKind::CapExceeded, "monomial too long for a polynomial pattern");
        Pattern bits = 0;
        for (int t = 0; t < degree(); ++t)
            if (flags_[static_cast<std::size_t>(t)] == Flag::Beta)
                bits |= Pattern{1} << t;
        return bits;
    }

    /// psi_r
    Monomial shifted(int r) const
    {
        if (r < 0)
            fail(ErrorKind::InvalidInput, "shift must be non-negative");
        return Monomial(lo_ + r, flags_);
    }

    /// Product with a monomial whose support starts right after this one.
    Monomial times(const Monomial& next) const
    {
        if (next.lo_ != hi() + 1)
            fail(ErrorKind::IntervalMismatch, "monomial supports are not adjacent");
        std::vector<Flag> flags = flags_;
        flags.insert(flags.end(), next.flags_.begin(), next.flags_.end());
        return Monomial(lo_, std::move(flags));
    }

    /// The first k variables, as a monomial on [lo, lo + k - 1].
    Monomial prefix(int k) const
    {
        if (k < 0 || k > degree())
            fail(ErrorKind::BadIndex, "prefix longer than monomial");
        return Monomial(lo_, std::vector<Flag>(flags_.begin(), flags_.begin() + k));
    }

    std::string letters() const
    {
        std::string s;
        s.reserve(flags_.size());
        for (Flag f : flags_)
            s.push_back(flag_char(f));
        return s;
    }

    std::string to_string() const { return letters() + "@" + std::to_string(lo_); }

    /// Variables set to 1 by the 0/1 assignment that singles out this monomial.
    std::vector<std::pair<int, Flag>> assignment() const
    {
        std::vector<std::pair<int, Flag>> ones;
        for (int t = 0; t < degree(); ++t)
            ones.emplace_back(lo_ + t, flags_[static_cast<std::size_t>(t)]);
        return ones;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    int lo_ = 1;
    std::vector<Flag> flags_;
};

inline std::string pattern_letters(Pattern bits, int degree)
{
    std::string s(static_cast<std::size_t>(degree), 'a');
    for (int t = 0; t < degree; ++t)
        if ((bits >> t) & 1U)
            s[static_cast<std::size_t>(t)] = 'b';
    return s;
}

/// Integer combination of monomials sharing the support [lo, hi]. The zero
/// polynomial keeps its interval so that adjacency checks still apply.
class MultilinearPoly {
public:
    static constexpr int kMaxDegree = 62;
    using TermMap = std::map<Pattern, mpz_class>;

    MultilinearPoly() = default;

    static MultilinearPoly zero(int lo, int hi)
    {
        MultilinearPoly p;
        p.set_interval(lo, hi);
        return p;
    }

    /// Degree-0 polynomial on the empty interval [lo, lo - 1].
    static MultilinearPoly constant(int lo, const mpz_class& c)
    {
        MultilinearPoly p = zero(lo, lo - 1);
        p.add_term(0, c);
        return p;
    }

    static MultilinearPoly variable(int subscript, Flag f, const mpz_class& coef = 1)
    {
        MultilinearPoly p = zero(subscript, subscript);
        p.add_term(f == Flag::Beta ? 1 : 0, coef);
        return p;
    }

    static MultilinearPoly monomial(const Monomial& m, const mpz_class& coef = 1)
    {
        MultilinearPoly p = zero(m.lo(), m.hi());
        p.add_term(m.pattern(), coef);
        return p;
    }

    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return hi_; }
    int degree() const noexcept { return hi_ - lo_ + 1; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }
    const TermMap& terms() const noexcept { return terms_; }

    mpz_class coefficient(Pattern bits) const
    {
        auto it = terms_.find(bits);
        return it == terms_.end() ? mpz_class(0) : it->second;
    }

    mpz_class coefficient(const Monomial& m) const
    {
        if (m.lo() != lo_ || m.hi() != hi_)
            return 0;
        return coefficient(m.pattern());
    }

    void add_term(Pattern bits, const mpz_class& c)
    {
        if (degree() < 64 && (bits >> degree()) != 0)
            fail(ErrorKind::IntervalMismatch, "pattern wider than polynomial support");
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(bits, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    std::vector<Monomial> monomials() const
    {
        std::vector<Monomial> out;
        out.reserve(terms_.size());
        for (const auto& [bits, c] : terms_)
            out.push_back(Monomial::from_pattern(lo_, degree(), bits));
        return out;
    }

    MultilinearPoly& operator+=(const MultilinearPoly& o)
    {
        require_same_interval(o);
        for (const auto& [bits, c] : o.terms_)
            add_term(bits, c);
        return *this;
    }

    MultilinearPoly& operator-=(const MultilinearPoly& o)
    {
        require_same_interval(o);
        for (const auto& [bits, c] : o.terms_)
            add_term(bits, -c);
        return *this;
    }

    friend MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly& b) { return a += b; }
    friend MultilinearPoly operator-(MultilinearPoly a, const MultilinearPoly& b) { return a -= b; }

    friend MultilinearPoly operator-(MultilinearPoly a)
    {
        for (auto& [bits, c] : a.terms_)
            c = -c;
        return a;
    }

    friend bool operator==(const MultilinearPoly& a, const MultilinearPoly& b)
    {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.terms_ == b.terms_;
    }

    /// One `coef*letters@lo` term per line, in lexicographic order of the letters.
    std::string to_text() const
    {
        std::vector<std::string> lines = term_strings();
        std::string out;
        for (const auto& line : lines) {
            out += line;
            out += '\n';
        }
        return out;
    }

    std::vector<std::string> term_strings() const
    {
        std::vector<std::pair<std::string, const mpz_class*>> sorted;
        sorted.reserve(terms_.size());
        for (const auto& [bits, c] : terms_)
            sorted.emplace_back(pattern_letters(bits, degree()), &c);
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<std::string> lines;
        lines.reserve(sorted.size());
        for (const auto& [letters, c] : sorted)
            lines.push_back(c->get_str() + "*" + letters + "@" + std::to_string(lo_));
        return lines;
    }

    /// Inverse of to_text. An empty text has no interval and is rejected.
    static MultilinearPoly from_text(std::string_view text)
    {
        MultilinearPoly p;
        bool first = true;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos)
                end = text.size();
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            if (line.empty())
                continue;
            const auto star = line.find('*');
            if (star == std::string_view::npos)
                fail(ErrorKind::InvalidInput, "polynomial term without '*': " + std::string(line));
            mpz_class coef;
            if (coef.set_str(std::string(line.substr(0, star)), 10) != 0)
                fail(ErrorKind::InvalidInput, "bad coefficient in: " + std::string(line));
            const Monomial m = Monomial::parse(line.substr(star + 1));
            if (first) {
                p.set_interval(m.lo(), m.hi());
                first = false;
            } else if (m.lo() != p.lo_ || m.hi() != p.hi_) {
                fail(ErrorKind::IntervalMismatch, "terms have different supports");
            }
            p.add_term(m.pattern(), coef);
        }
        if (first)
            fail(ErrorKind::InvalidInput, "empty polynomial text");
        return p;
    }

private:
    void set_interval(int lo, int hi)
    {
        if (lo < 1 || hi < lo - 1)
            fail(ErrorKind::IntervalMismatch, "invalid support interval");
        if (hi - lo + 1 > kMaxDegree)
            fail(ErrorKind::CapExceeded, "polynomial degree above " + std::to_string(kMaxDegree));
        lo_ = lo;
        hi_ = hi;
    }

    void require_same_interval(const MultilinearPoly& o) const
    {
        if (o.lo_ != lo_ || o.hi_ != hi_)
            fail(ErrorKind::IntervalMismatch,
                 "supports [" + std::to_string(lo_) + "," + std::to_string(hi_) + "] and [" +
                     std::to_string(o.lo_) + "," + std::to_string(o.hi_) + "] differ");
    }

    int lo_ = 1;
    int hi_ = 0;
    TermMap terms_;
};

/// Product of P on [lo, k-1] with Q on [k, hi]; the supports must be adjacent in this order.
inline MultilinearPoly poly_mul(const MultilinearPoly& p, const MultilinearPoly& q)
{
    if (p.hi() + 1 != q.lo())
        fail(ErrorKind::IntervalMismatch, "poly_mul needs P.hi + 1 == Q.lo");
    MultilinearPoly out = MultilinearPoly::zero(p.lo(), q.hi());
    const int shift = p.degree();
    for (const auto& [pb, pc] : p.terms())
        for (const auto& [qb, qc] : q.terms())
            out.add_term(pb | (qb << shift), pc * qc);
    return out;
}

/// psi_r: adds r to every subscript.
inline MultilinearPoly poly_shift(const MultilinearPoly& p, int r)
{
    if (r < 0)
        fail(ErrorKind::InvalidInput, "shift must be non-negative");
    MultilinearPoly out = MultilinearPoly::zero(p.lo() + r, p.hi() + r);
    for (const auto& [bits, c] : p.terms())
        out.add_term(bits, c);
    return out;
}

/// Value of P when the listed variables are 1 and every other variable is 0.
/// `ones` must name exactly one variable for each subscript of P's support.
inline mpz_class poly_eval01(const MultilinearPoly& p, const std::vector<std::pair<int, Flag>>& ones)
{
    Pattern bits = 0;
    std::set<int> seen;
    for (const auto& [sub, f] : ones) {
        if (sub < p.lo() || sub > p.hi())
            continue;
        if (!seen.insert(sub).second)
            fail(ErrorKind::IncompleteAssignment,
                 "subscript " + std::to_string(sub) + " assigned twice");
        if (f == Flag::Beta)
            bits |= Pattern{1} << (sub - p.lo());
    }
    if (static_cast<int>(seen.size()) != p.degree())
        fail(ErrorKind::IncompleteAssignment, "assignment does not cover the support");
    return p.coefficient(bits);
}

} // namespace unitri
