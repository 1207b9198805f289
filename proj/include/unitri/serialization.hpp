#pragma once

// JSON forms of matrices and witnesses, and a verifier that re-checks a
// witness file using nothing but the parsed word and the matrix kernel.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "unitri/constructions.hpp"
#include "unitri/error.hpp"
#include "unitri/free_words.hpp"
#include "unitri/multilinear_poly.hpp"
#include "unitri/scalar_rings.hpp"
#include "unitri/unitriangular.hpp"

#ifndef UNITRI_VERSION
#define UNITRI_VERSION "unknown"
#endif

namespace unitri {

using Json = nlohmann::ordered_json;

inline std::string version() { return UNITRI_VERSION; }

/// "fp:P" or "int".
struct RingSpec {
    bool integer = false;
    std::uint32_t p = 2;

    static RingSpec parse(const std::string& text)
    {
        if (text == "int" || text == "Z")
            return {true, 0};
        if (text.rfind("fp:", 0) == 0) {
            const std::string digits = text.substr(3);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
                fail(ErrorKind::InvalidInput, "bad prime in ring spec '" + text + "'");
            const unsigned long long p = std::stoull(digits);
            if (p > 0x7FFFFFFFULL)
                fail(ErrorKind::InvalidInput, "prime too large in ring spec '" + text + "'");
            PrimeField check(static_cast<std::uint32_t>(p)); // rejects composites
            return {false, static_cast<std::uint32_t>(p)};
        }
        fail(ErrorKind::InvalidInput, "ring spec must be fp:P or int, got '" + text + "'");
    }

    std::string to_string() const { return integer ? "int" : "fp:" + std::to_string(p); }

    Json to_json() const
    {
        Json j;
        if (integer) {
            j["kind"] = "int";
        } else {
            j["kind"] = "fp";
            j["p"] = p;
        }
        return j;
    }

    static RingSpec from_json(const Json& j)
    {
        if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
            fail(ErrorKind::InvalidInput, "ring must be an object with a kind");
        const std::string kind = j["kind"].get<std::string>();
        if (kind == "int")
            return {true, 0};
        if (kind == "fp" && j.contains("p") && j["p"].is_number_unsigned())
            return parse("fp:" + std::to_string(j["p"].get<std::uint64_t>()));
        fail(ErrorKind::InvalidInput, "unknown ring in JSON");
    }
};

inline RingSpec ring_spec_of(const PrimeField& f) { return {false, f.modulus()}; }
inline RingSpec ring_spec_of(const IntegerRing&) { return {true, 0}; }

namespace detail {

inline mpz_class parse_integer(const Json& v)
{
    mpz_class out;
    if (v.is_string()) {
        if (out.set_str(v.get<std::string>(), 10) != 0)
            fail(ErrorKind::InvalidInput, "bad integer '" + v.get<std::string>() + "'");
        return out;
    }
    if (v.is_number_integer())
        return mpz_class(std::to_string(v.get<long long>()));
    fail(ErrorKind::InvalidInput, "expected an integer or a decimal string");
}

inline Json integer_json(const mpz_class& v)
{
    if (v.fits_slong_p())
        return Json(v.get_si());
    return Json(v.get_str());
}

} // namespace detail

/// {"n": n, "ring": {...}, "entries": [[i, j, "value"], ...]}, nonzero entries row-major.
template <CoefficientRing Ring>
Json matrix_to_json(const UnipotentMatrix<Ring>& m)
{
    Json j;
    j["n"] = m.dim();
    j["ring"] = ring_spec_of(m.ring()).to_json();
    Json entries = Json::array();
    for (int i = 1; i <= m.dim(); ++i)
        for (int k = i + 1; k <= m.dim(); ++k)
            if (!m.ring().is_zero(m.at(i, k)))
                entries.push_back(Json::array({i, k, m.ring().to_string(m.at(i, k))}));
    j["entries"] = std::move(entries);
    return j;
}

/// Entries are read as integers and mapped into `ring` (reduced mod p for F_p).
template <CoefficientRing Ring>
UnipotentMatrix<Ring> matrix_from_json(const Json& j, const Ring& ring)
{
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer() || !j.contains("entries") ||
        !j["entries"].is_array())
        fail(ErrorKind::InvalidInput, "matrix JSON needs n and entries");
    const long long n = j["n"].get<long long>();
    if (n < 1 || n > 100000)
        fail(ErrorKind::InvalidInput, "matrix dimension out of range");
    UnipotentMatrix<Ring> m(ring, static_cast<int>(n));
    for (const auto& e : j["entries"]) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
            fail(ErrorKind::InvalidInput, "matrix entry must be [i, j, value]");
        const long long r = e[0].get<long long>();
        const long long c = e[1].get<long long>();
        if (r < 1 || r >= c || c > n)
            fail(ErrorKind::InvalidInput, "entry position is not strictly upper");
        m.at(static_cast<int>(r), static_cast<int>(c)) = ring.from_mpz(detail::parse_integer(e[2]));
    }
    return m;
}

template <CoefficientRing Ring>
Json witness_to_json(const TripleWitness<Ring>& t)
{
    Json j;
    j["kind"] = "triple";
    j["d"] = t.d;
    j["n"] = t.n;
    j["ring"] = ring_spec_of(t.a.ring()).to_json();
    j["rst"] = Json::array({t.base_exponents[0], t.base_exponents[1], t.base_exponents[2]});
    j["matrices"] = Json::array({matrix_to_json(t.a), matrix_to_json(t.b), matrix_to_json(t.c)});
    j["word"] = to_sexpr(t.w);
    j["monomial"] = nullptr;
    j["sign"] = 1;
    j["version"] = version();
    return j;
}

template <CoefficientRing Ring>
Json witness_to_json(const PairWitness<Ring>& p)
{
    Json j;
    j["kind"] = "pair";
    j["d"] = p.d;
    j["n"] = p.n;
    j["ring"] = ring_spec_of(p.a.ring()).to_json();
    j["component"] = p.component;
    j["matrices"] = Json::array({matrix_to_json(p.a), matrix_to_json(p.b)});
    j["word"] = to_sexpr(p.word);
    j["monomial"] = p.tracked.letters();
    j["sign"] = p.sign;
    j["version"] = version();
    return j;
}

struct VerifyResult {
    bool ok = true;
    std::vector<std::string> failures;

    void check(bool cond, std::string what)
    {
        if (!cond) {
            ok = false;
            failures.push_back(std::move(what));
        }
    }
};

namespace detail {

// Plain memoised recursion, kept apart from evaluate() on purpose.
template <CoefficientRing Ring>
class NaiveEvaluator {
public:
    using M = UnipotentMatrix<Ring>;
    explicit NaiveEvaluator(std::map<std::string, M> gens) : gens_(std::move(gens)) {}

    M operator()(const Word& w)
    {
        if (auto it = memo_.find(w.id()); it != memo_.end())
            return it->second;
        M v = [&]() -> M {
            switch (w.kind()) {
            case Word::Kind::Gen: {
                auto it = gens_.find(w.name());
                if (it == gens_.end())
                    fail(ErrorKind::BadSubstitution, "word uses unknown generator '" + w.name() + "'");
                return it->second;
            }
            case Word::Kind::Inv: return invert((*this)(w.left()));
            case Word::Kind::Prod: return multiply((*this)(w.left()), (*this)(w.right()));
            case Word::Kind::Comm: break;
            }
            const M x = (*this)(w.left());
            const M y = (*this)(w.right());
            return multiply(multiply(invert(x), invert(y)), multiply(x, y));
        }();
        keep_.push_back(w);
        return memo_.emplace(w.id(), std::move(v)).first->second;
    }

private:
    std::map<std::string, M> gens_;
    std::unordered_map<const void*, M> memo_;
    std::vector<Word> keep_;
};

template <CoefficientRing Ring>
void verify_with_ring(const Json& j, const Ring& ring, VerifyResult& out)
{
    using M = UnipotentMatrix<Ring>;
    const std::string kind = j.at("kind").get<std::string>();
    const int d = j.at("d").get<int>();
    const int n = j.at("n").get<int>();
    const Word word = parse_sexpr(j.at("word").get<std::string>());
    std::vector<M> mats;
    for (const auto& mj : j.at("matrices")) {
        if (mj.contains("ring") && !(RingSpec::from_json(mj["ring"]).to_string() == ring_spec_of(ring).to_string()))
            fail(ErrorKind::InvalidInput, "matrix ring differs from witness ring");
        mats.push_back(matrix_from_json(mj, ring));
        if (mats.back().dim() != n)
            fail(ErrorKind::InvalidInput, "matrix dimension differs from n");
    }
    const M target_one = transvection(ring, n, 1, n, ring.from_int(1));

    if (kind == "triple") {
        if (mats.size() != 3)
            fail(ErrorKind::InvalidInput, "a triple witness carries three matrices");
        out.check(d >= 1 && d < 31 && n == (1 << (d - 1)) + 1, "n is not 2^(d-1) + 1");
        out.check(word.depth() >= d - 1, "word depth " + std::to_string(word.depth()) + " below d - 1");
        const std::array<std::array<std::size_t, 3>, 3> rotations{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
        for (std::size_t r = 0; r < 3; ++r) {
            NaiveEvaluator<Ring> eval({{"x1", mats[rotations[r][0]]},
                                       {"x2", mats[rotations[r][1]]},
                                       {"x3", mats[rotations[r][2]]}});
            const M v = eval(word);
            if (r == 0)
                out.check(v == target_one, "w(A,B,C) is not X_{1,n}");
            else
                out.check(v.is_identity(), "rotated evaluation " + std::to_string(r) + " is not I");
        }
        return;
    }
    if (kind != "pair")
        fail(ErrorKind::InvalidInput, "witness kind must be triple or pair");
    if (mats.size() != 2)
        fail(ErrorKind::InvalidInput, "a pair witness carries two matrices");
    const int sign = j.at("sign").get<int>();
    if (sign != 1 && sign != -1)
        fail(ErrorKind::InvalidInput, "sign must be +1 or -1");
    const Monomial mono = Monomial::parse(j.at("monomial").get<std::string>());
    out.check(word.weight() == n - 1, "word weight " + std::to_string(word.weight()) + " is not n - 1");
    out.check(word.depth() >= d - 1, "word depth " + std::to_string(word.depth()) + " below d - 1");
    out.check(mono.lo() == 1 && mono.degree() == n - 1, "monomial support is not [1, n-1]");
    if (mono.lo() == 1 && mono.degree() == n - 1) {
        bool shape = true;
        for (int i = 1; i < n; ++i) {
            const bool alpha = mono.at(i) == Flag::Alpha;
            shape = shape && ring.equal(mats[0].at(i, i + 1), ring.from_int(alpha ? 1 : 0)) &&
                    ring.equal(mats[1].at(i, i + 1), ring.from_int(alpha ? 0 : 1));
            for (int k = i + 2; k <= n; ++k)
                shape = shape && ring.is_zero(mats[0].at(i, k)) && ring.is_zero(mats[1].at(i, k));
        }
        out.check(shape, "matrices do not match the monomial's superdiagonal pattern");
    }
    NaiveEvaluator<Ring> eval({{"a", mats[0]}, {"b", mats[1]}});
    out.check(eval(word) == transvection(ring, n, 1, n, ring.from_int(sign)),
              "word does not evaluate to X_{1,n}^" + std::to_string(sign));
}

} // namespace detail

/// Re-checks every claim in a witness. Malformed input throws InvalidInput;
/// well-formed but false claims come back with ok = false.
inline VerifyResult verify_witness(const Json& j)
{
    VerifyResult out;
    try {
        if (!j.is_object() || !j.contains("ring") || !j.contains("matrices") || !j["matrices"].is_array())
            fail(ErrorKind::InvalidInput, "witness needs kind, d, n, ring, matrices, word");
        const RingSpec spec = RingSpec::from_json(j["ring"]);
        if (spec.integer)
            detail::verify_with_ring(j, IntegerRing{}, out);
        else
            detail::verify_with_ring(j, PrimeField(spec.p), out);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidInput, std::string("malformed witness: ") + e.what());
    }
    return out;
}

} // namespace unitri
