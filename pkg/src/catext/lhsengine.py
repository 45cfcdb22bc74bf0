"""Two-sided verification data for the LHS-style spectral sequences.

For the extension  fibers -> Gr(A, N) -> Gr(A)  the engine computes, fully
independently:

  * the E2 page  Ext^p over Gr(A) with coefficients in the degree-q fiber
    cohomology local system, and
  * the abutment  Ext^(p+q) over Gr(A, N),

then compares dimensions per total degree.  First-quadrant convergence forces
sum(E2 diagonal) >= abutment in every degree, with equality whenever the
computed page is supported on a single row or column (nothing for the
differentials to do).  Differentials of the pages r >= 2 are never computed.

Coefficient modules carry their own field, which may differ from the prime
field the coefficient systems A and N live over: the constructions only use
the finite category structure.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coeffsys import AlgebraPrecosheaf, PrecosheafRightModule
from .extcheck import CatExtension, fiber_extension
from .fincat import FinCategory, linearize
from .homengine import (CatModule, FiniteAbelianGroup, GroupModule, Subquotient,
                        bar_cochain_complex, cat_ext_dims, ext_dims_from_resolution,
                        free_resolution, restrict, subquotient, to_algebra_module)


@dataclass(eq=False)
class HLocalSystem:
    degree: int
    module: CatModule  # over Gr(A)


@dataclass(eq=False)
class SpectralReport:
    caps: tuple  # (P, Q, N)
    e2: dict  # (p, q) -> dim
    abutment_dims: list  # n -> dim
    verdicts: list  # n -> "equal" | "bounded" | "violation"
    collapse: str  # "row" | "column" | "empty" | "none"

    @property
    def ok(self) -> bool:
        return "violation" not in self.verdicts

    def e2_diagonal_sum(self, n: int) -> int:
        return sum(d for (p, q), d in self.e2.items() if p + q == n)

    def as_dict(self) -> dict:
        return {
            "caps": {"p": self.caps[0], "q": self.caps[1], "n": self.caps[2]},
            "e2": {f"{p},{q}": int(d) for (p, q), d in sorted(self.e2.items())},
            "abutment": [int(d) for d in self.abutment_dims],
            "verdicts": list(self.verdicts),
            "collapse": self.collapse,
            "ok": self.ok,
        }


class _LhsContext:
    """Caches the extension, per-object fiber complexes and subquotients."""

    def __init__(self, c: FinCategory, a: AlgebraPrecosheaf,
                 n: PrecosheafRightModule, f: CatModule, qmax: int):
        self.c, self.a, self.n = c, a, n
        self.f = f
        self.qmax = qmax
        self.ext: CatExtension = fiber_extension(c, a, n)
        if set(f.cat.mor) != set(self.ext.total.mor):
            raise ValueError("coefficient module is not over Gr(A, N)")
        self.k = f.field
        self.groups = {}
        self.gmodules = {}
        self.bars = {}
        self.subqs = {}
        for x in c.objects:
            grp, gmod = fiber_restriction(c, a, n, f, x, _ext=self.ext)
            bar = bar_cochain_complex(grp, gmod, qmax)
            self.groups[x] = grp
            self.gmodules[x] = gmod
            self.bars[x] = bar
            self.subqs[x] = [
                subquotient(self.k, bar.d[q], bar.d[q - 1] if q else None)
                for q in range(qmax + 1)
            ]

    # -- induced maps -----------------------------------------------------
    def alpha(self, x, y, fbase, r: tuple):
        """Group homomorphism N(x) -> N(y): m -> N(f)(m) . r."""
        kc = self.a.field  # construction field
        nf = self.n.on(fbase)
        right_r = self.n.at(y).right_of(kc.array(r)) if self.n.at(y).dim else None
        def apply(m: tuple) -> tuple:
            if self.n.at(y).dim == 0:
                return ()
            img = kc.matmul(right_r, kc.matmul(nf, kc.array(m)))
            return tuple(int(v) for v in img)
        return apply

    def pullback_matrix(self, lift, q: int) -> np.ndarray:
        """Cochain-level map C^q(N(y); F(y)) -> C^q(N(x); F(x)) for a lift
        (r, m, f) of the Gr(A)-morphism (r, f)."""
        r, _, fbase = lift
        x, y = self.c.mor[fbase]
        k = self.k
        phi = self.f.on(lift)
        gx, gy = self.groups[x], self.groups[y]
        al = self.alpha(x, y, fbase, r)
        nvx, nvy = self.f.dims[x], self.f.dims[y]
        from itertools import product as iproduct
        tx = list(iproduct(gx.elements, repeat=q))
        ty = list(iproduct(gy.elements, repeat=q))
        iy = {t: i for i, t in enumerate(ty)}
        mat = k.zeros(len(tx) * nvx, len(ty) * nvy)
        if nvx and nvy:
            for i, t in enumerate(tx):
                j = iy[tuple(al(m) for m in t)]
                mat[i * nvx:(i + 1) * nvx, j * nvy:(j + 1) * nvy] = phi
        return mat

    def induced_class_map(self, lift, q: int) -> np.ndarray:
        """Map on H^q classes induced by an arbitrary lift; shape
        (dim H^q at x, dim H^q at y)."""
        _, _, fbase = lift
        x, y = self.c.mor[fbase]
        sx: Subquotient = self.subqs[x][q]
        sy: Subquotient = self.subqs[y][q]
        if sx.dim == 0 or sy.dim == 0:
            return self.k.zeros(sx.dim, sy.dim)
        pulled = self.k.matmul(self.pullback_matrix(lift, q), sy.reps)
        return sx.project(pulled)

    def canonical_lift(self, base_mor):
        r, fbase = base_mor
        y = self.c.cod(fbase)
        zero = tuple(0 for _ in range(self.n.at(y).dim))
        return (r, zero, fbase)

    def local_system(self, q: int) -> HLocalSystem:
        gr_a = self.ext.base
        dims = {x: self.subqs[x][q].dim for x in self.c.objects}
        mats = {}
        for u in gr_a.mor:
            mats[u] = self.induced_class_map(self.canonical_lift(u), q)
        return HLocalSystem(q, CatModule(gr_a, self.k, dims, mats, name=f"H^{q}(fibers)"))


def fiber_restriction(c: FinCategory, a: AlgebraPrecosheaf, n: PrecosheafRightModule,
                      f: CatModule, x, _ext: CatExtension | None = None):
    """Additive group of N(x) together with F(x) acted on through iota."""
    ext = _ext if _ext is not None else fiber_extension(c, a, n)
    kc = a.field
    dim_fiber = n.at(x).dim
    grp = FiniteAbelianGroup((kc.characteristic,) * dim_fiber)
    action = {}
    for m in grp.elements:
        lift = ext.iota.on_mor((x, m))
        action[m] = np.array(f.on(lift), copy=True)
    return grp, GroupModule(f.field, f.dims[x], action)


def h_local_system(c: FinCategory, a: AlgebraPrecosheaf, n: PrecosheafRightModule,
                   f: CatModule, q: int) -> HLocalSystem:
    ctx = _LhsContext(c, a, n, f, qmax=q)
    return ctx.local_system(q)


def e2_page(c: FinCategory, a: AlgebraPrecosheaf, n: PrecosheafRightModule,
            g: CatModule, f: CatModule, cap_p: int, cap_q: int) -> dict:
    """E2[(p, q)] = dim Ext^p over Gr(A) of g against the fiber H^q system."""
    ctx = _LhsContext(c, a, n, f, qmax=cap_q)
    gr_a = ctx.ext.base
    if set(g.cat.mor) != set(gr_a.mor):
        raise ValueError("weight module is not over Gr(A)")
    alg = linearize(gr_a, g.field)
    res = free_resolution(alg, to_algebra_module(g, alg), cap_p + 1)
    table = {}
    for q in range(cap_q + 1):
        hq = ctx.local_system(q).module
        dims = ext_dims_from_resolution(res, to_algebra_module(hq, alg), cap_p)
        for p in range(cap_p + 1):
            table[(p, q)] = int(dims[p])
    return table


def abutment(c: FinCategory, a: AlgebraPrecosheaf, n: PrecosheafRightModule,
             g: CatModule, f: CatModule, cap_n: int) -> list:
    """dim Ext^m over Gr(A, N) of the pullback of g against f, m <= cap_n."""
    ext = fiber_extension(c, a, n)
    res_g = restrict(g, ext.pi)
    return [int(v) for v in cat_ext_dims(ext.total, res_g, f, cap_n)]


def lhs_report(c: FinCategory, a: AlgebraPrecosheaf, n: PrecosheafRightModule,
               g: CatModule, f: CatModule, caps: tuple = (2, 2, 2)) -> SpectralReport:
    """Compare E2 diagonals against the abutment, degree by degree.

    Verdicts: "equal" when the sums match, "bounded" when the E2 sum strictly
    dominates (differentials may be collapsing classes), "violation" when the
    abutment exceeds the E2 bound or when equality is forced by single-row /
    single-column support but fails.
    """
    cap_p, cap_q, cap_n = caps
    cap_p = max(cap_p, cap_n)
    cap_q = max(cap_q, cap_n)
    table = e2_page(c, a, n, g, f, cap_p, cap_q)
    abut = abutment(c, a, n, g, f, cap_n)
    rows = {q for (p, q), d in table.items() if d}
    cols = {p for (p, q), d in table.items() if d}
    if not rows:
        collapse = "empty"
    elif len(rows) == 1:
        collapse = "row"
    elif len(cols) == 1:
        collapse = "column"
    else:
        collapse = "none"
    verdicts = []
    for m in range(cap_n + 1):
        total = sum(d for (p, q), d in table.items() if p + q == m)
        if total < abut[m]:
            verdicts.append("violation")
        elif total == abut[m]:
            verdicts.append("equal")
        else:
            verdicts.append("bounded" if collapse == "none" else "violation")
    return SpectralReport((cap_p, cap_q, cap_n), table, abut, verdicts, collapse)
