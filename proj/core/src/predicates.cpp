#include "specgeo/predicates.hpp"

#include <algorithm>
#include <cmath>

#include <gmpxx.h>

#include "specgeo/error.hpp"

namespace specgeo {
namespace {

// Conservative relative filter bounds; anything smaller falls through to the
// exact rational evaluation. Doubles convert to rationals losslessly, so the
// fallback is free of rounding.
constexpr double kOrientFilter = 1e-12;
constexpr double kIncircleFilter = 1e-12;

int sign_of(const mpq_class& v) { return sgn(v); }

int orient2d_exact(const Vec2& a, const Vec2& b, const Vec2& c) {
    const mpq_class ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    const mpq_class det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
    return sign_of(det);
}

int incircle_exact(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const mpq_class adx = mpq_class(a.x) - mpq_class(d.x);
    const mpq_class ady = mpq_class(a.y) - mpq_class(d.y);
    const mpq_class bdx = mpq_class(b.x) - mpq_class(d.x);
    const mpq_class bdy = mpq_class(b.y) - mpq_class(d.y);
    const mpq_class cdx = mpq_class(c.x) - mpq_class(d.x);
    const mpq_class cdy = mpq_class(c.y) - mpq_class(d.y);

    const mpq_class alift = adx * adx + ady * ady;
    const mpq_class blift = bdx * bdx + bdy * bdy;
    const mpq_class clift = cdx * cdx + cdy * cdy;

    const mpq_class det = alift * (bdx * cdy - bdy * cdx) -
                          blift * (adx * cdy - ady * cdx) +
                          clift * (adx * bdy - ady * bdx);
    return sign_of(det);
}

bool lex_less(const Vec2& p, const Vec2& q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
}

}  // namespace

int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double detl = (a.x - c.x) * (b.y - c.y);
    const double detr = (a.y - c.y) * (b.x - c.x);
    const double det = detl - detr;
    const double mag = std::abs(detl) + std::abs(detr);
    if (std::abs(det) > kOrientFilter * mag) return det > 0 ? 1 : -1;
    if (mag == 0.0) return 0;  // all points identical in one coordinate pattern
    return orient2d_exact(a, b, c);
}

int incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;

    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;

    const double t1 = alift * (bdx * cdy - bdy * cdx);
    const double t2 = blift * (adx * cdy - ady * cdx);
    const double t3 = clift * (adx * bdy - ady * bdx);
    const double det = t1 - t2 + t3;
    const double mag = std::abs(t1) + std::abs(t2) + std::abs(t3);
    if (std::abs(det) > kIncircleFilter * mag) return det > 0 ? 1 : -1;
    return incircle_exact(a, b, c, d);
}

int incircle_perturbed(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const int base = incircle(a, b, c, d);
    if (base != 0) return base;

    // Cofactors of the lift column; the perturbation subtracts an
    // infinitesimal from each lift, largest for the lexicographically
    // smallest point, so the first nonzero cofactor decides the sign.
    struct Entry {
        const Vec2* p;
        int cofactor_sign;
    };
    const Entry entries[4] = {
        {&a, orient2d(b, c, d)},
        {&b, -orient2d(a, c, d)},
        {&c, orient2d(a, b, d)},
        {&d, -orient2d(a, b, c)},
    };
    int order[4] = {0, 1, 2, 3};
    std::sort(order, order + 4,
              [&](int i, int j) { return lex_less(*entries[i].p, *entries[j].p); });
    for (int idx : order) {
        if (entries[idx].cofactor_sign != 0) return -entries[idx].cofactor_sign;
    }
    raise(ErrorCode::internal, "perturbed incircle on a degenerate triangle");
}

}  // namespace specgeo
