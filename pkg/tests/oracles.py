"""Independent reference computations used to freeze expected values.

Nothing here imports ``wallcross``. Central charges are evaluated straight
from the divisor ``D = s*H0 + u*G0`` and the Gram matrix, and wall
coefficients are recovered by exact interpolation over sample points.
"""
from fractions import Fraction as Q
from itertools import product


def dot(gram, x, y):
    return sum(Q(gram[i][j]) * x[i] * y[j] for i in range(len(x)) for j in range(len(y)))


def charge(gram, ch, h0, g0, s, u, t):
    """Z_{D, tH0}(E) with D = s*h0 + u*g0, computed from the integral formula."""
    r, c1, c = ch
    D = [s * a + u * b for a, b in zip(h0, g0)]
    Ht = [t * a for a in h0]
    re = -Q(c) + dot(gram, c1, D) - Q(r, 2) * (dot(gram, D, D) - dot(gram, Ht, Ht))
    im = dot(gram, c1, Ht) - r * dot(gram, D, Ht)
    return re, im


def wall_value(gram, ch_e, ch_b, h0, g0, s, u, t):
    re_e, im_e = charge(gram, ch_e, h0, g0, s, u, t)
    re_b, im_b = charge(gram, ch_b, h0, g0, s, u, t)
    return re_e * im_b - re_b * im_e


def _solve(rows, rhs):
    n = len(rows[0])
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_row = 0
    where = [-1] * n
    for col in range(n):
        sel = next((i for i in range(piv_row, len(m)) if m[i][col] != 0), None)
        if sel is None:
            continue
        m[piv_row], m[sel] = m[sel], m[piv_row]
        for i in range(len(m)):
            if i != piv_row and m[i][col] != 0:
                f = m[i][col] / m[piv_row][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[piv_row])]
        where[col] = piv_row
        piv_row += 1
    return [m[where[c]][n] / m[where[c]][c] if where[c] >= 0 else Q(0) for c in range(n)]


MONOMIALS = ("s2+t2", "su", "u2", "s", "u", "1")


def interpolate_wall(gram, ch_e, ch_b, h0, g0):
    """Coefficients of (wall value)/t in the monomials s^2+t^2, su, u^2, s, u, 1.

    Fits a general basis {s^2, t^2, su, u^2, s, u, 1} and checks the s^2 and t^2
    coefficients agree, so the semicircle shape is verified, not assumed.
    """
    pts = [(Q(a), Q(b), Q(c)) for a, b, c in product((-2, -1, 1, 3), (-1, 2, 5), (1, 2))]
    rows, rhs = [], []
    for s, u, t in pts:
        rows.append([s * s, t * t, s * u, u * u, s, u, Q(1)])
        rhs.append(wall_value(gram, ch_e, ch_b, h0, g0, s, u, t) / t)
    s2, t2, su, u2, s1, u1, k = _solve(rows, rhs)
    assert s2 == t2, (s2, t2)
    for s, u, t in pts:
        assert s2 * (s * s + t * t) + su * s * u + u2 * u * u + s1 * s + u1 * u + k == \
            wall_value(gram, ch_e, ch_b, h0, g0, s, u, t) / t
    return (s2, su, u2, s1, u1, k)


def canonical(coeffs):
    """Scale to coprime integers with the first nonzero entry positive."""
    from math import gcd, lcm
    fr = [Q(x) for x in coeffs]
    if not any(fr):
        return tuple(Q(0) for _ in fr)
    den = lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    sign = 1 if next(x for x in ints if x) > 0 else -1
    return tuple(Q(sign * x) for x in ints)


def vertical_tangent_point(a, b, c, q):
    """Second vertical tangent of the t = 0 wall of (a, b, c) against O, by direct elimination.

    On the wall -a(s^2+u^2 q) + 2b s u + 2c s = 0 the u-derivative vanishes
    where u = b s / (a q); substituting leaves a linear equation in s.
    """
    a, b, c, q = map(Q, (a, b, c, q))
    s = -2 * c * a * q / (b * b - a * a * q)
    return s, b * s / (a * q)


def slice_endpoints(coeffs, u, digits=60):
    """Endpoints of the t = 0 roots in the plane of fixed u, as high precision decimals.

    Returns None when the section has no point with t > 0.
    """
    from decimal import Decimal, localcontext
    A, B2, C2, D1, E1, F0 = map(Q, coeffs)
    u = Q(u)
    b = B2 * u + D1
    c = C2 * u * u + E1 * u + F0
    disc = b * b - 4 * A * c
    if A == 0 or disc <= 0:
        return None
    with localcontext() as ctx:
        ctx.prec = digits
        dec = lambda x: Decimal(x.numerator) / Decimal(x.denominator)  # noqa: E731
        root = dec(disc).sqrt()
        lo, hi = (-dec(b) - root) / (2 * dec(A)), (-dec(b) + root) / (2 * dec(A))
    return (min(lo, hi), max(lo, hi))


if __name__ == "__main__":
    # F_1 in basis (F, E)
    g1 = [[0, 1], [1, -1]]
    h0, g0 = [Q(2), Q(1)], [Q(1), Q(-1)]
    print("H0^2", dot(g1, h0, h0), "G0^2", dot(g1, g0, g0), "H0.G0", dot(g1, h0, g0))
    O = (1, [Q(0), Q(0)], Q(0))
    OmE = (1, [Q(0), Q(-1)], Q(-1, 2))
    OmF = (1, [Q(-1), Q(0)], Q(0))
    print("a,b of O(-E):", dot(g1, OmE[1], h0), -dot(g1, OmE[1], g0))
    print("a,b of O(-F):", dot(g1, OmF[1], h0), -dot(g1, OmF[1], g0))
    w = interpolate_wall(g1, OmE, O, h0, g0)
    scale = w[0]
    print("W(O(-E),O) normalized:", [x / scale for x in w])
    wf = interpolate_wall(g1, OmF, O, h0, g0)
    print("W(O(-F),O):", [x / wf[0] for x in wf])
    print("t^2 check at Pi_{2/3}: roots", [wall_value(g1, OmE, O, h0, g0, s, Q(2, 3), Q(0)) for s in (Q(-1, 3), Q(-4, 3))])
    print("top of semicircle", wall_value(g1, OmE, O, h0, g0, Q(-5, 6), Q(2, 3), Q(1, 2)))
    print("Z(O) at (-1,0,1):", charge(g1, O, h0, g0, Q(-1), Q(0), Q(1)))
