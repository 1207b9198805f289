#pragma once

// Finite subgroups of U_n(F_p): explicit element sets for small groups and a
// polycyclic representation (one pivot per matrix position) for the larger
// subgroups met while sampling generator pairs.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "unitri/error.hpp"
#include "unitri/scalar_rings.hpp"
#include "unitri/unitriangular.hpp"

namespace unitri {

using FpMatrix = UnipotentMatrix<PrimeField>;

inline constexpr std::size_t kDefaultClosureCap = std::size_t{1} << 20;

namespace detail {

// F_2 elements hash through their packed upper-triangle bits, other p through
// the little-endian bytes of each entry.
inline std::string element_key(const FpMatrix& m)
{
    const auto& up = m.upper();
    std::string key;
    if (m.ring().modulus() == 2) {
        key.assign((up.size() + 7) / 8, '\0');
        for (std::size_t k = 0; k < up.size(); ++k)
            if (up[k])
                key[k / 8] = static_cast<char>(static_cast<unsigned char>(key[k / 8]) | (1U << (k % 8)));
    } else {
        key.resize(up.size() * 4);
        for (std::size_t k = 0; k < up.size(); ++k)
            for (int byte = 0; byte < 4; ++byte)
                key[4 * k + byte] = static_cast<char>((up[k] >> (8 * byte)) & 0xFFU);
    }
    return key;
}

} // namespace detail

/// An explicitly enumerated subgroup: every element is stored once.
class FiniteSubgroup {
public:
    FiniteSubgroup(PrimeField field, int n) : field_(field), n_(n)
    {
        insert(FpMatrix(field_, n_));
    }

    int dim() const noexcept { return n_; }
    const PrimeField& field() const noexcept { return field_; }
    std::size_t order() const noexcept { return elements_.size(); }
    const std::vector<FpMatrix>& elements() const noexcept { return elements_; }
    const std::vector<FpMatrix>& generators() const noexcept { return generators_; }
    bool contains(const FpMatrix& m) const { return index_.contains(detail::element_key(m)); }
    bool is_trivial() const noexcept { return elements_.size() == 1; }

    /// Same element set (generators are ignored).
    friend bool operator==(const FiniteSubgroup& a, const FiniteSubgroup& b)
    {
        if (a.order() != b.order() || a.n_ != b.n_ || !(a.field_ == b.field_))
            return false;
        return std::all_of(a.elements_.begin(), a.elements_.end(), [&](const FpMatrix& m) { return b.contains(m); });
    }

private:
    friend class SubgroupBuilder;

    bool insert(FpMatrix m)
    {
        auto [it, inserted] = index_.try_emplace(detail::element_key(m), elements_.size());
        if (inserted)
            elements_.push_back(std::move(m));
        return inserted;
    }

    PrimeField field_;
    int n_;
    std::vector<FpMatrix> elements_;
    std::vector<FpMatrix> generators_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Worklist saturation: starting from I, close under x -> x s (s in `right`)
/// and x -> g^-1 x g (g in `conjugators`). With no conjugators this is the
/// subgroup generated by `right`; otherwise it is the normal closure of
/// `right` under the group generated by `conjugators`.
class SubgroupBuilder {
public:
    static FiniteSubgroup saturate(const PrimeField& field, int n, const std::vector<FpMatrix>& right,
                                   const std::vector<FpMatrix>& conjugators, std::size_t cap)
    {
        FiniteSubgroup g(field, n);
        std::vector<FpMatrix> conj_inv;
        conj_inv.reserve(conjugators.size());
        for (const auto& c : conjugators)
            conj_inv.push_back(invert(c));
        for (std::size_t next = 0; next < g.elements_.size(); ++next) {
            const FpMatrix x = g.elements_[next];
            auto visit = [&](FpMatrix y) {
                if (g.insert(std::move(y)) && g.elements_.size() > cap)
                    fail(ErrorKind::CapExceeded, "subgroup has more than " + std::to_string(cap) + " elements");
            };
            for (const auto& s : right)
                visit(multiply(x, s));
            for (std::size_t k = 0; k < conjugators.size(); ++k)
                visit(multiply(multiply(conj_inv[k], x), conjugators[k]));
        }
        return g;
    }

    static void set_generators(FiniteSubgroup& g, std::vector<FpMatrix> gens) { g.generators_ = std::move(gens); }
};

namespace detail {

inline void require_same_space(const PrimeField& field, int n, const std::vector<FpMatrix>& gens)
{
    for (const auto& g : gens)
        if (g.dim() != n || !(g.ring() == field))
            fail(ErrorKind::Mismatch, "generators must share n and p");
}

// Greedy generating set: walk the elements, keep those outside the span so far.
inline std::vector<FpMatrix> extract_generators(const FiniteSubgroup& g, std::size_t cap)
{
    std::vector<FpMatrix> gens;
    FiniteSubgroup span(g.field(), g.dim());
    for (const auto& x : g.elements()) {
        if (span.contains(x))
            continue;
        gens.push_back(x);
        span = SubgroupBuilder::saturate(g.field(), g.dim(), gens, {}, cap);
        if (span.order() == g.order())
            break;
    }
    return gens;
}

} // namespace detail

/// <gens> as an explicit element set.
inline FiniteSubgroup closure(const PrimeField& field, int n, const std::vector<FpMatrix>& gens,
                              std::size_t cap = kDefaultClosureCap)
{
    detail::require_same_space(field, n, gens);
    FiniteSubgroup g = SubgroupBuilder::saturate(field, n, gens, {}, cap);
    SubgroupBuilder::set_generators(g, gens);
    return g;
}

inline FiniteSubgroup closure(const std::vector<FpMatrix>& gens, std::size_t cap = kDefaultClosureCap)
{
    if (gens.empty())
        fail(ErrorKind::InvalidInput, "closure of an empty list needs an explicit n and p");
    return closure(gens.front().ring(), gens.front().dim(), gens, cap);
}

/// [G, G] as the normal closure in G of the commutators of generator pairs.
inline FiniteSubgroup derived_subgroup(const FiniteSubgroup& g, std::size_t cap = kDefaultClosureCap)
{
    std::vector<FpMatrix> seeds;
    const auto& gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            FpMatrix c = commutator(gens[i], gens[j]);
            if (!c.is_identity())
                seeds.push_back(std::move(c));
        }
    FiniteSubgroup d = SubgroupBuilder::saturate(g.field(), g.dim(), seeds, gens, cap);
    SubgroupBuilder::set_generators(d, detail::extract_generators(d, cap));
    return d;
}

/// [G, G] generated by the commutators of all element pairs. Quadratic in |G|.
inline FiniteSubgroup derived_subgroup_all_pairs(const FiniteSubgroup& g, std::size_t cap = kDefaultClosureCap)
{
    std::vector<FpMatrix> comms;
    FiniteSubgroup seen(g.field(), g.dim());
    for (const auto& x : g.elements())
        for (const auto& y : g.elements()) {
            FpMatrix c = commutator(x, y);
            if (!c.is_identity() && !seen.contains(c)) {
                comms.push_back(c);
                seen = SubgroupBuilder::saturate(g.field(), g.dim(), comms, {}, cap);
            }
        }
    return closure(g.field(), g.dim(), comms, cap);
}

/// G = G^(0) > G^(1) > ... ending with the trivial group; derived length is size() - 1.
inline std::vector<FiniteSubgroup> derived_series(const FiniteSubgroup& g, std::size_t cap = kDefaultClosureCap)
{
    std::vector<FiniteSubgroup> series{g};
    while (!series.back().is_trivial())
        series.push_back(derived_subgroup(series.back(), cap));
    return series;
}

/// gamma_1(G) > gamma_2(G) > ... ending with the trivial group.
inline std::vector<FiniteSubgroup> lower_central_series(const FiniteSubgroup& g,
                                                        std::size_t cap = kDefaultClosureCap)
{
    std::vector<FiniteSubgroup> series{g};
    while (!series.back().is_trivial()) {
        std::vector<FpMatrix> seeds;
        for (const auto& x : series.back().generators())
            for (const auto& y : g.generators()) {
                FpMatrix c = commutator(x, y);
                if (!c.is_identity())
                    seeds.push_back(std::move(c));
            }
        FiniteSubgroup next = SubgroupBuilder::saturate(g.field(), g.dim(), seeds, g.generators(), cap);
        if (next.order() == series.back().order())
            fail(ErrorKind::ConstructionBug, "lower central series is not descending");
        SubgroupBuilder::set_generators(next, detail::extract_generators(next, cap));
        series.push_back(std::move(next));
    }
    return series;
}

inline std::size_t subgroup_order(const std::vector<FpMatrix>& gens, std::size_t cap = kDefaultClosureCap)
{
    return closure(gens, cap).order();
}

// ---------------------------------------------------------------------------
// Polycyclic representation.
//
// Order the positions (i, j) by distance j - i, then by row. The matrices
// vanishing before a given position form a normal subgroup, and consecutive
// terms differ by one entry, so each subgroup H has at most one pivot per
// position: an element of H whose first nonzero entry sits there and equals 1.
// |H| = p^(number of pivots).

/// U_n(F_2) with n <= 64; row i is a bit mask of its entries above the diagonal.
class PackedF2Matrix {
public:
    explicit PackedF2Matrix(int n = 1) : rows_(static_cast<std::size_t>(n), 0)
    {
        if (n < 1 || n > 64)
            fail(ErrorKind::Unsupported, "packed F_2 matrices support 1 <= n <= 64");
    }

    static PackedF2Matrix from(const FpMatrix& m)
    {
        if (m.ring().modulus() != 2)
            fail(ErrorKind::Mismatch, "packing needs p = 2");
        PackedF2Matrix out(m.dim());
        for (int i = 1; i <= m.dim(); ++i)
            for (int j = i + 1; j <= m.dim(); ++j)
                if (m.at(i, j))
                    out.rows_[static_cast<std::size_t>(i - 1)] |= std::uint64_t{1} << (j - 1);
        return out;
    }

    FpMatrix unpack() const
    {
        FpMatrix m(PrimeField(2), dim());
        for (int i = 1; i <= dim(); ++i)
            for (int j = i + 1; j <= dim(); ++j)
                m.at(i, j) = bit(i, j);
        return m;
    }

    int dim() const noexcept { return static_cast<int>(rows_.size()); }
    std::uint32_t bit(int i, int j) const noexcept
    {
        return static_cast<std::uint32_t>((rows_[static_cast<std::size_t>(i - 1)] >> (j - 1)) & 1U);
    }

    bool is_identity() const noexcept
    {
        return std::all_of(rows_.begin(), rows_.end(), [](std::uint64_t r) { return r == 0; });
    }

    // (I + N)(I + M) = I + N + M + NM
    friend PackedF2Matrix multiply(const PackedF2Matrix& a, const PackedF2Matrix& b)
    {
        PackedF2Matrix c(a.dim());
        for (std::size_t i = 0; i < a.rows_.size(); ++i) {
            std::uint64_t row = a.rows_[i] ^ b.rows_[i];
            for (std::uint64_t bits = a.rows_[i]; bits; bits &= bits - 1)
                row ^= b.rows_[static_cast<std::size_t>(std::countr_zero(bits))];
            c.rows_[i] = row;
        }
        return c;
    }

    friend PackedF2Matrix invert(const PackedF2Matrix& a)
    {
        PackedF2Matrix x(a.dim());
        for (std::size_t i = a.rows_.size(); i-- > 0;) {
            std::uint64_t row = a.rows_[i];
            for (std::uint64_t bits = a.rows_[i]; bits; bits &= bits - 1)
                row ^= x.rows_[static_cast<std::size_t>(std::countr_zero(bits))];
            x.rows_[i] = row;
        }
        return x;
    }

    friend PackedF2Matrix commutator(const PackedF2Matrix& a, const PackedF2Matrix& b)
    {
        return multiply(invert(multiply(b, a)), multiply(a, b));
    }

    friend bool operator==(const PackedF2Matrix&, const PackedF2Matrix&) = default;

private:
    std::vector<std::uint64_t> rows_;
};

struct F2Policy {
    using Elem = PackedF2Matrix;
    int n;
    std::uint32_t modulus() const noexcept { return 2; }
    Elem identity() const { return Elem(n); }
    std::uint32_t entry(const Elem& x, int i, int j) const noexcept { return x.bit(i, j); }
    Elem power(Elem x, std::uint32_t k) const
    {
        Elem result(n);
        for (; k; k >>= 1U) {
            if (k & 1U)
                result = multiply(result, x);
            if (k > 1)
                x = multiply(x, x);
        }
        return result;
    }
};

struct FpPolicy {
    using Elem = FpMatrix;
    PrimeField field;
    int n;
    std::uint32_t modulus() const noexcept { return field.modulus(); }
    Elem identity() const { return Elem(field, n); }
    std::uint32_t entry(const Elem& x, int i, int j) const { return x.at(i, j); }
    Elem power(const Elem& x, std::uint32_t k) const { return unitri::power(x, k); }
};

template <class Policy>
class PcSubgroup {
public:
    using Elem = typename Policy::Elem;

    explicit PcSubgroup(Policy policy) : policy_(std::move(policy))
    {
        const int n = policy_.n;
        for (int dist = 1; dist < n; ++dist)
            for (int i = 1; i + dist <= n; ++i)
                positions_.emplace_back(i, i + dist);
        pivots_.resize(positions_.size());
        pivot_inv_.resize(positions_.size());
    }

    /// Subgroup generated by `gens`, normalised by `conjugators` when given.
    static PcSubgroup generated_by(const Policy& policy, const std::vector<Elem>& gens,
                                   const std::vector<Elem>& conjugators = {})
    {
        PcSubgroup h(policy);
        h.conjugators_ = conjugators;
        for (const auto& g : gens)
            h.absorb(g);
        h.close();
        return h;
    }

    std::vector<Elem> generators() const
    {
        std::vector<Elem> out;
        for (const auto& p : pivots_)
            if (p)
                out.push_back(*p);
        return out;
    }

    /// log_p |H|
    int log_order() const
    {
        return static_cast<int>(std::count_if(pivots_.begin(), pivots_.end(), [](const auto& p) { return p.has_value(); }));
    }

    mpz_class order() const
    {
        mpz_class o;
        mpz_ui_pow_ui(o.get_mpz_t(), policy_.modulus(), static_cast<unsigned long>(log_order()));
        return o;
    }

    bool is_trivial() const { return log_order() == 0; }

    bool contains(const Elem& x) const { return !sift(x).has_value(); }

    PcSubgroup derived_subgroup() const
    {
        const auto gens = generators();
        std::vector<Elem> seeds;
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j)
                seeds.push_back(commutator(gens[i], gens[j]));
        return generated_by(policy_, seeds, gens);
    }

    /// [this, top] for a normal subgroup `this` of `top`.
    PcSubgroup commutator_with(const PcSubgroup& top) const
    {
        const auto top_gens = top.generators();
        std::vector<Elem> seeds;
        for (const auto& x : generators())
            for (const auto& y : top_gens)
                seeds.push_back(commutator(x, y));
        return generated_by(policy_, seeds, top_gens);
    }

private:
    // Residue of x after dividing out pivots, with the position of its leading entry.
    std::optional<std::pair<Elem, std::size_t>> sift(Elem x) const
    {
        const std::uint32_t p = policy_.modulus();
        for (std::size_t q = 0; q < positions_.size(); ++q) {
            const auto [i, j] = positions_[q];
            const std::uint32_t c = policy_.entry(x, i, j);
            if (c == 0)
                continue;
            if (!pivots_[q])
                return std::make_pair(std::move(x), q);
            x = multiply(x, policy_.power(*pivot_inv_[q], c % p));
        }
        return std::nullopt;
    }

    void absorb(const Elem& x)
    {
        auto residue = sift(x);
        if (!residue)
            return;
        auto& [y, q] = *residue;
        const auto [i, j] = positions_[q];
        const std::uint32_t c = policy_.entry(y, i, j);
        const PrimeField f(policy_.modulus());
        Elem normalised = policy_.power(y, f.inverse(c));
        pivot_inv_[q] = invert(normalised);
        pivots_[q] = std::move(normalised);
        pending_.push_back(q);
    }

    void close()
    {
        const std::uint32_t p = policy_.modulus();
        while (!pending_.empty()) {
            const std::size_t q = pending_.front();
            pending_.pop_front();
            const Elem h = *pivots_[q];
            absorb(policy_.power(h, p));
            for (std::size_t r = 0; r < pivots_.size(); ++r)
                if (r != q && pivots_[r])
                    absorb(commutator(h, *pivots_[r]));
            for (const auto& g : conjugators_)
                absorb(commutator(h, g));
        }
    }

    Policy policy_;
    std::vector<std::pair<int, int>> positions_;
    std::vector<std::optional<Elem>> pivots_;
    std::vector<std::optional<Elem>> pivot_inv_;
    std::vector<Elem> conjugators_;
    std::deque<std::size_t> pending_;
};

/// log_p of the orders of the derived series, ending with 0 (the trivial term).
template <class Policy>
std::vector<int> derived_series_log_orders(const Policy& policy, const std::vector<typename Policy::Elem>& gens)
{
    auto h = PcSubgroup<Policy>::generated_by(policy, gens);
    std::vector<int> out{h.log_order()};
    while (!h.is_trivial()) {
        h = h.derived_subgroup();
        out.push_back(h.log_order());
    }
    return out;
}

template <class Policy>
std::vector<int> lower_central_log_orders(const Policy& policy, const std::vector<typename Policy::Elem>& gens)
{
    const auto top = PcSubgroup<Policy>::generated_by(policy, gens);
    auto h = top;
    std::vector<int> out{h.log_order()};
    while (!h.is_trivial()) {
        h = h.commutator_with(top);
        if (h.log_order() == out.back())
            fail(ErrorKind::ConstructionBug, "lower central series is not descending");
        out.push_back(h.log_order());
    }
    return out;
}

/// Derived length of <gens> in U_n(F_p), with the packed kernel for p = 2.
inline int derived_length_pc(const std::vector<FpMatrix>& gens)
{
    if (gens.empty())
        return 0;
    const int n = gens.front().dim();
    const PrimeField& field = gens.front().ring();
    detail::require_same_space(field, n, gens);
    if (field.modulus() == 2 && n <= 64) {
        std::vector<PackedF2Matrix> packed;
        for (const auto& g : gens)
            packed.push_back(PackedF2Matrix::from(g));
        return static_cast<int>(derived_series_log_orders(F2Policy{n}, packed).size()) - 1;
    }
    return static_cast<int>(derived_series_log_orders(FpPolicy{field, n}, gens).size()) - 1;
}

// ---------------------------------------------------------------------------
// Pair search.

enum class SearchMode { Exhaustive, Random };

inline std::string to_string(SearchMode m) { return m == SearchMode::Exhaustive ? "exhaustive" : "random"; }

struct SearchReport {
    int n = 0;
    std::uint32_t p = 2;
    SearchMode mode = SearchMode::Random;
    std::uint64_t seed = 0;
    int target_depth = 0;
    std::uint64_t examined = 0;
    int max_length = 0;
    std::map<int, std::uint64_t> length_histogram;
    std::optional<std::pair<FpMatrix, FpMatrix>> witness;
    std::uint64_t witness_index = 0;

    bool found() const noexcept { return witness.has_value(); }

    /// Exhaustive reports settle the question; sampled ones are evidence only.
    std::string evidence() const { return mode == SearchMode::Exhaustive ? "exhaustive" : "sampled evidence"; }
};

inline constexpr std::uint64_t kExhaustivePairLimit = std::uint64_t{1} << 26;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Sample `index` depends only on (seed, index), never on the worker split.
inline std::pair<FpMatrix, FpMatrix> random_pair(const PrimeField& f, int n, std::uint64_t seed, std::uint64_t index)
{
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
    std::uniform_int_distribution<std::uint32_t> dist(0, f.modulus() - 1);
    FpMatrix a(f, n), b(f, n);
    for (auto* m : {&a, &b})
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                m->at(i, j) = dist(rng);
    return {std::move(a), std::move(b)};
}

inline FpMatrix element_from_index(const PrimeField& f, int n, std::uint64_t index)
{
    FpMatrix m(f, n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            m.at(i, j) = static_cast<std::uint32_t>(index % f.modulus());
            index /= f.modulus();
        }
    return m;
}

inline void record(SearchReport& r, std::uint64_t index, const FpMatrix& a, const FpMatrix& b)
{
    const int len = derived_length_pc({a, b});
    ++r.examined;
    ++r.length_histogram[len];
    r.max_length = std::max(r.max_length, len);
    if (len >= r.target_depth && (!r.witness || index < r.witness_index)) {
        r.witness.emplace(a, b);
        r.witness_index = index;
    }
}

inline void merge_into(SearchReport& into, const SearchReport& part)
{
    into.examined += part.examined;
    into.max_length = std::max(into.max_length, part.max_length);
    for (const auto& [len, count] : part.length_histogram)
        into.length_histogram[len] += count;
    if (part.witness && (!into.witness || part.witness_index < into.witness_index)) {
        into.witness = part.witness;
        into.witness_index = part.witness_index;
    }
}

} // namespace detail

/// Examines generator pairs of U_n(F_p) and reports the largest derived length
/// of <A, B>. `extra` pairs are examined first (indices 0..extra-1). Random
/// mode draws `samples` pairs; exhaustive mode walks every ordered pair.
inline SearchReport search_pairs(int n, std::uint32_t p, SearchMode mode, std::uint64_t samples, int target_depth,
                                 std::uint64_t seed,
                                 const std::vector<std::pair<FpMatrix, FpMatrix>>& extra = {},
                                 bool force = false, unsigned threads = 1)
{
    if (n < 1 || n > 64)
        fail(ErrorKind::Unsupported, "search supports 1 <= n <= 64");
    const PrimeField field(p);
    SearchReport report;
    report.n = n;
    report.p = p;
    report.mode = mode;
    report.seed = seed;
    report.target_depth = target_depth;

    for (std::size_t k = 0; k < extra.size(); ++k) {
        if (extra[k].first.dim() != n || extra[k].second.dim() != n || !(extra[k].first.ring() == field) ||
            !(extra[k].second.ring() == field))
            fail(ErrorKind::Mismatch, "extra pair does not live in U_n(F_p)");
        detail::record(report, k, extra[k].first, extra[k].second);
    }

    std::uint64_t total = samples;
    std::uint64_t group_size = 0;
    if (mode == SearchMode::Exhaustive) {
        const int entries = n * (n - 1) / 2;
        mpz_class pairs;
        mpz_ui_pow_ui(pairs.get_mpz_t(), p, static_cast<unsigned long>(2 * entries));
        if (pairs > mpz_class(static_cast<unsigned long>(kExhaustivePairLimit)) && !force)
            fail(ErrorKind::NeedsRandomMode, "pair space p^(n(n-1)) = " + pairs.get_str() + " exceeds 2^26");
        if (pairs > mpz_class(static_cast<unsigned long>(std::uint64_t{1} << 62)))
            fail(ErrorKind::CapExceeded, "pair space too large to enumerate");
        total = pairs.get_ui();
        mpz_class g;
        mpz_ui_pow_ui(g.get_mpz_t(), p, static_cast<unsigned long>(entries));
        group_size = g.get_ui();
    }

    const std::uint64_t offset = extra.size();
    auto run = [&](std::uint64_t begin, std::uint64_t end, SearchReport& part) {
        for (std::uint64_t k = begin; k < end; ++k) {
            if (mode == SearchMode::Exhaustive) {
                const FpMatrix a = detail::element_from_index(field, n, k / group_size);
                const FpMatrix b = detail::element_from_index(field, n, k % group_size);
                detail::record(part, offset + k, a, b);
            } else {
                const auto [a, b] = detail::random_pair(field, n, seed, k);
                detail::record(part, offset + k, a, b);
            }
        }
    };

    if (threads == 0)
        threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, total)));
    std::vector<SearchReport> parts(threads, report);
    for (auto& part : parts) {
        part.examined = 0;
        part.max_length = 0;
        part.length_histogram.clear();
        part.witness.reset();
    }
    if (threads == 1) {
        run(0, total, parts[0]);
    } else {
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t begin = total * t / threads;
            const std::uint64_t end = total * (t + 1) / threads;
            workers.emplace_back([&, begin, end, t] { run(begin, end, parts[t]); });
        }
        for (auto& w : workers)
            w.join();
    }
    for (const auto& part : parts)
        detail::merge_into(report, part);
    return report;
}

} // namespace unitri
