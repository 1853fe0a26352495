"""Independent reference values for the Groebner tests, computed with sympy.

Run from the repository root:
    python3 crates/core/tests/oracles/groebner_goldens.py
Writes crates/core/data/goldens/groebner.txt in the canonical text format.
"""

from fractions import Fraction
from pathlib import Path

import sympy as sp

OUT = Path(__file__).resolve().parent.parent.parent / "data" / "goldens" / "groebner.txt"


def grevlex_key(exps):
    # larger key = larger monomial
    return (sum(exps), tuple(-e for e in reversed(exps)))


def fmt(poly, gens):
    p = sp.Poly(sp.expand(poly), *gens, domain="QQ")
    terms = sorted(p.terms(), key=lambda t: grevlex_key(t[0]), reverse=True)
    if not terms:
        return "0"
    out = []
    for k, (exps, c) in enumerate(terms):
        c = Fraction(int(c.p), int(c.q))
        neg = c < 0
        a = abs(c)
        mono = "*".join(
            (str(g) if e == 1 else f"{g}^{e}") for g, e in zip(gens, exps) if e
        )
        ctext = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        if not mono:
            body = ctext
        elif a == 1:
            body = mono
        else:
            body = f"{ctext}*{mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def reduced(polys, gens):
    """Monic reduced grevlex basis, largest leading monomial first."""
    g = sp.groebner(polys, *gens, order="grevlex", domain="QQ")
    out = []
    for b in g.exprs:
        p = sp.Poly(b, *gens, domain="QQ")
        lm = max(p.monoms(), key=grevlex_key)
        out.append((grevlex_key(lm), sp.expand(p.as_expr() / p.coeff_monomial(lm))))
    out.sort(key=lambda t: t[0], reverse=True)
    return [e for _, e in out]


def basis(gens_polys, gens):
    return [fmt(b, gens) for b in reduced(gens_polys, gens)]


def quotient(ideal, f, gens):
    t = sp.Symbol("t_aux")
    elim = sp.groebner([t * g for g in ideal] + [(1 - t) * f], t, *gens, order="lex")
    inter = [e for e in elim.exprs if not e.has(t)]
    quo = [sp.cancel(e / f) for e in inter]
    return reduced(quo, gens)


def main():
    x, y, z, u, v, w = sp.symbols("x y z u v w")
    lines = []

    def emit(name, vars_, polys):
        lines.append(f"[{name}] vars: {' '.join(str(s) for s in vars_)}")
        lines.extend(polys)

    emit("x2y2-y3", (x, y), basis([x**2 + y**2, y**3], (x, y)))
    IC = [u**3 - v * w, v**2 - u * w, w**2 - u**2 * v]
    emit("curve", (u, v, w), basis(IC, (u, v, w)))
    IG = [sp.expand(g.subs({u: x**2, v: y**2, w: z**2 + 1}, simultaneous=True)) for g in IC]
    emit("curve-pullback", (x, y, z), basis(IG, (x, y, z)))

    f1 = u**5 + u * v**3 + w**3 - 3 * u**2 * v * w
    IC2 = [sp.expand(a * b) for i, a in enumerate(IC) for b in IC[i:]]
    q = quotient(IC2, f1, (u, v, w))
    emit("curve-square-quotient", (u, v, w), [fmt(e, (u, v, w)) for e in q])
    lines.append("# values at the origin: " + " ".join(str(e.subs({u: 0, v: 0, w: 0})) for e in q))

    f = sp.expand(f1.subs({u: x**2, v: y**2, w: z**2 + 1}, simultaneous=True))
    IG2 = [sp.expand(a * b) for i, a in enumerate(IG) for b in IG[i:]]
    q = quotient(IG2, f, (x, y, z))
    emit("pullback-square-quotient", (x, y, z), [fmt(e, (x, y, z)) for e in q])
    lines.append(
        "# values at (0,0,i): " + " ".join(str(sp.expand(e.subs({x: 0, y: 0, z: sp.I}))) for e in q)
    )

    h = y**8 - y**10 + y**11
    ID = [sp.expand(g.subs({u: x**2, v: h, w: -z**2 + 2 * z**3}, simultaneous=True)) for g in IC]
    emit("hat-curve", (x, y, z), basis(ID, (x, y, z)))

    OUT.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
