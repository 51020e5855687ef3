#pragma once

#include "casimir/minkowski.hpp"
#include "casimir/real.hpp"

#include <doctest.h>

#include <random>

namespace casimir::test {

inline Real absdiff(const Real& a, const Real& b) { return boost::multiprecision::abs(a - b); }

inline Real reldiff(const Real& a, const Real& b) {
    const Real scale = boost::multiprecision::max(boost::multiprecision::abs(b), Real("1e-300"));
    return absdiff(a, b) / scale;
}

inline Real uniform(std::mt19937_64& rng, double lo, double hi) {
    return Real(std::uniform_real_distribution<double>(lo, hi)(rng));
}

/// boost . rotation . boost with rapidities in [-2, 2].
inline LorentzTransform random_transform(std::mt19937_64& rng) {
    return casimir::boost(BoostPlane::tx, uniform(rng, -2, 2)) * rotation_xy(uniform(rng, 0, 6.283185307179586)) *
           casimir::boost(BoostPlane::ty, uniform(rng, -2, 2));
}

/// Spacelike separation in the (t, x, y) subspace with |eps| of order `scale`.
inline SeparationVector random_separation(std::mt19937_64& rng, double scale) {
    for (;;) {
        const Real t = uniform(rng, -scale, scale);
        const Real x = uniform(rng, -scale, scale);
        const Real y = uniform(rng, -scale, scale);
        if (x * x + y * y - t * t > Real(0.05 * scale * scale)) return SeparationVector(FourVector(t, x, y, Real(0)));
    }
}

}  // namespace casimir::test

#define CHECK_ABS(actual, expected, tol)                                                                          \
    do {                                                                                                          \
        const ::casimir::Real actual_ = (actual);                                                                 \
        const ::casimir::Real expected_ = (expected);                                                             \
        INFO("actual = ", ::casimir::to_string(actual_, 30), ", expected = ", ::casimir::to_string(expected_, 30)); \
        CHECK(::casimir::test::absdiff(actual_, expected_) <= ::casimir::Real(tol));                              \
    } while (0)

#define CHECK_REL(actual, expected, tol)                                                                          \
    do {                                                                                                          \
        const ::casimir::Real actual_ = (actual);                                                                 \
        const ::casimir::Real expected_ = (expected);                                                             \
        INFO("actual = ", ::casimir::to_string(actual_, 30), ", expected = ", ::casimir::to_string(expected_, 30)); \
        CHECK(::casimir::test::reldiff(actual_, expected_) <= ::casimir::Real(tol));                              \
    } while (0)

#define CHECK_ERROR_CODE(expr, expected_code)                          \
    do {                                                               \
        bool thrown_ = false;                                          \
        try {                                                          \
            (void)(expr);                                              \
        } catch (const ::casimir::Error& e_) {                         \
            thrown_ = true;                                            \
            CHECK(e_.code() == (expected_code));                       \
        }                                                              \
        CHECK_MESSAGE(thrown_, "expected casimir::Error: " #expected_code); \
    } while (0)
