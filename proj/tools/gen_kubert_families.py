#!/usr/bin/env python3
"""Regenerate data/kubert_families.json from Tate normal forms E(b, c).

    y^2 + (1 - c) x y - b y = x^3 - b x^2

Each (b, c) pair is Kubert's parameterization of the modular curve X1(G).
The curve is moved to short Weierstrass form (A, B) = (-27 c4, -54 c6),
denominators are cleared with a polynomial twist u(t), common twelfth-power
factors are removed, and the rational content is normalized so that f and g
have integer coefficients.
"""
import json
import sys
from functools import reduce

import sympy as sp

t = sp.symbols("t")


def tate(b, c):
    return (1 - c, -b, -b, 0, 0)


def kubert():
    s = t
    out = {}
    out["Z/5"] = tate(s, s)
    out["Z/6"] = tate(s + s**2, s)
    out["Z/7"] = tate(s**3 - s**2, s**2 - s)
    out["Z/8"] = tate((2 * s - 1) * (s - 1), (2 * s - 1) * (s - 1) / s)
    f, d = s, s * (s - 1) + 1
    out["Z/9"] = tate(f * (d - 1) * d, f * (d - 1))
    f, d = s, s**2 / (s - (s - 1) ** 2)
    out["Z/10"] = tate(f * (d - 1) * d, f * (d - 1))
    m = (3 * s - 3 * s**2 - 1) / (s - 1)
    f, d = m / (1 - s), m + s
    out["Z/12"] = tate(f * (d - 1) * d, f * (d - 1))
    out["Z/2xZ/4"] = tate(s**2 - sp.Rational(1, 16), 0)
    c = (10 - 2 * s) / (s**2 - 9)
    out["Z/2xZ/6"] = tate(c + c**2, c)
    tau = s * (8 * s + 2) / (8 * s**2 - 1)
    out["Z/2xZ/8"] = tate((2 * tau - 1) * (tau - 1), (2 * tau - 1) * (tau - 1) / tau)
    return out


def short_form(a1, a2, a3, a4, a6):
    b2 = a1**2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3**2 + 4 * a6
    c4 = b2**2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    return sp.cancel(-27 * c4), sp.cancel(-54 * c6)


def ceil_div(a, b):
    return -((-a) // b)


def to_polys(A, B):
    na, da = sp.fraction(sp.factor(A))
    nb, db = sp.fraction(sp.factor(B))
    u = sp.Integer(1)
    dens = set(sp.factor_list(da)[1]) | set(sp.factor_list(db)[1])
    for h, _ in dens:
        if h.free_symbols:
            ea = multiplicity(h, da)
            eb = multiplicity(h, db)
            u *= h ** max(ceil_div(ea, 4), ceil_div(eb, 6))
    f = sp.cancel(A * u**4)
    g = sp.cancel(B * u**6)
    # drop polynomial factors h with h^4 | f and h^6 | g
    for h, _ in sp.factor_list(sp.gcd(sp.numer(f), sp.numer(g)))[1]:
        if not h.free_symbols:
            continue
        k = min(multiplicity(h, f) // 4, multiplicity(h, g) // 6)
        if k:
            f = sp.cancel(f / h ** (4 * k))
            g = sp.cancel(g / h ** (6 * k))
    return sp.Poly(f, t), sp.Poly(g, t)


def multiplicity(h, p):
    p = sp.Poly(p, t)
    h = sp.Poly(h, t)
    k = 0
    while True:
        q, r = sp.div(p, h)
        if not r.is_zero:
            return k
        p, k = q, k + 1


def normalize_content(f, g):
    # rational scaling u: f -> u^4 f, g -> u^6 g, integral and 12th-power-free
    den = reduce(sp.ilcm, [sp.Rational(c).q for c in f.all_coeffs() + g.all_coeffs()], 1)
    f, g = f * den**4, g * den**6
    cf = reduce(sp.igcd, [int(c) for c in f.all_coeffs()])
    cg = reduce(sp.igcd, [int(c) for c in g.all_coeffs()])
    for p in sp.primefactors(sp.igcd(cf, cg)):
        k = min(sp.multiplicity(p, cf) // 4, sp.multiplicity(p, cg) // 6)
        f, g = f * sp.Rational(1, p ** (4 * k)), g * sp.Rational(1, p ** (6 * k))
    return f, g


def main():
    entries = []
    for group, coeffs in kubert().items():
        A, B = short_form(*[sp.sympify(x) for x in coeffs])
        f, g = to_polys(A, B)
        f, g = normalize_content(f, g)
        assert sp.gcd(f, g).degree() == 0, group
        entry = {
            "group": group,
            "weight": [4, 6],
            "f": [str(c) for c in reversed(f.all_coeffs())],
            "g": [str(c) for c in reversed(g.all_coeffs())],
        }
        print(group, "deg f =", f.degree(), "deg g =", g.degree(), file=sys.stderr)
        entries.append(entry)
    json.dump(entries, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
