#pragma once

// Random generators shared by the property tests.

#include <cstdint>
#include <random>

#include "unitri/unitri.hpp"

namespace unitri::testing {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 engine(20240611);
    return engine;
}

inline long long uniform(long long lo, long long hi)
{
    return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline typename PrimeField::value_type random_scalar(const PrimeField& f)
{
    return static_cast<std::uint32_t>(uniform(0, f.modulus() - 1));
}

inline mpz_class random_scalar(const IntegerRing&) { return mpz_class(static_cast<long>(uniform(-5, 5))); }

/// Random polynomial on [lo, hi] with up to four terms.
inline MultilinearPoly random_poly(int lo, int hi)
{
    MultilinearPoly p = MultilinearPoly::zero(lo, hi);
    const int deg = hi - lo + 1;
    const int terms = static_cast<int>(uniform(0, 4));
    for (int k = 0; k < terms; ++k) {
        const Pattern bits = deg == 0 ? 0 : static_cast<Pattern>(uniform(0, (1LL << deg) - 1));
        p.add_term(bits, mpz_class(static_cast<long>(uniform(-3, 3))));
    }
    return p;
}

/// Random element of U_n over F_p or Z; `density` in percent.
template <class Ring>
UnipotentMatrix<Ring> random_matrix(const Ring& ring, int n, int density = 60)
{
    UnipotentMatrix<Ring> m(ring, n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (uniform(1, 100) <= density)
                m.at(i, j) = random_scalar(ring);
    return m;
}

inline UnipotentMatrix<PolyRing> random_poly_matrix(int n)
{
    UnipotentMatrix<PolyRing> m(PolyRing{}, n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            m.at(i, j) = random_poly(i, j - 1);
    return m;
}

template <class Ring>
UnipotentMatrix<Ring> x(const Ring& ring, int n, int i, int j, long long v = 1)
{
    return transvection(ring, n, i, j, ring.from_int(v));
}

} // namespace unitri::testing
