"""Extensions of categories: kernel -> total -> base with torsor fibers.

An extension is a pair of functors iota: K -> E and pi: E -> B, all three
categories sharing one object set, with iota injective and pi surjective on
morphisms, both the identity on objects, and: pi(f) = pi(g) iff there is a
unique h in Mor K with (f then iota(h)) = g.  The checker is exhaustive over
all morphism pairs and verifies the iff in both directions.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .coeffsys import AlgebraPrecosheaf, PrecosheafRightModule, disjoint_fiber_category
from .constructions import gr_algebra, gr_right_module
from .fincat import CatFunctor, FinCategory, validate_category, validate_functor
from .validation import Report


@dataclass(eq=False)
class CatExtension:
    kernel: FinCategory
    total: FinCategory
    base: FinCategory
    iota: CatFunctor
    pi: CatFunctor


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("CATEXT_WORKERS", "1")))
    except ValueError:
        return 1


def connecting_morphisms(e: CatExtension, f, g) -> list:
    """All h in Mor K with (f then iota(h)) = g in the total category."""
    total = e.total
    out = []
    for h in e.kernel.mor:
        ih = e.iota.on_mor(h)
        if total.composable(f, ih) and total.then(f, ih) == g:
            out.append(h)
    return out


def check_extension(e: CatExtension, workers: int | None = None) -> Report:
    rep = Report()
    if not (set(e.kernel.objects) == set(e.total.objects) == set(e.base.objects)):
        raise ValueError("extension categories must share one object set")
    for cat, nm in ((e.kernel, "kernel"), (e.total, "total"), (e.base, "base")):
        sub = validate_category(cat)
        if not sub.ok:
            rep.add("category", f"{nm} category invalid", first=sub.violations[0].code)
    if not rep.ok:
        return rep
    for fun, nm in ((e.iota, "iota"), (e.pi, "pi")):
        sub = validate_functor(fun)
        if not sub.ok:
            rep.add("functor", f"{nm} is not a functor", first=sub.violations[0].code)
        for x in fun.source.objects:
            if fun.obj_map.get(x) != x:
                rep.add("objects", f"{nm} is not the identity on objects", object=x)
    if not rep.ok:
        return rep
    images = [e.iota.on_mor(h) for h in e.kernel.mor]
    if len(set(images)) != len(images):
        rep.add("injective", "iota identifies distinct kernel morphisms")
    if set(e.pi.on_mor(f) for f in e.total.mor) != set(e.base.mor):
        rep.add("surjective", "pi misses base morphisms")
    if not rep.ok:
        return rep

    mors = list(e.total.mor)
    pi_of = {f: e.pi.on_mor(f) for f in mors}
    # group by (dom, cod): pairs elsewhere can satisfy neither side of the iff
    def check_block(block: list) -> list:
        found = []
        for f in block:
            for g in mors:
                if e.total.mor[f] != e.total.mor[g]:
                    # f then iota(h) never equals g; require pi(f) != pi(g)
                    if pi_of[f] == pi_of[g]:
                        found.append(("exists", f, g, 0))
                    continue
                hs = connecting_morphisms(e, f, g)
                same_image = pi_of[f] == pi_of[g]
                if same_image and len(hs) != 1:
                    found.append(("exists" if not hs else "unique", f, g, len(hs)))
                if not same_image and len(hs) == 1:
                    found.append(("converse", f, g, 1))
        return found

    nworkers = workers if workers is not None else default_workers()
    if nworkers > 1 and len(mors) > 1:
        chunks = [mors[i::nworkers] for i in range(nworkers)]
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            results = list(pool.map(check_block, chunks))
        failures = [item for sub in results for item in sub]
    else:
        failures = check_block(mors)
    for code, f, g, count in failures:
        if code == "exists":
            rep.add("torsor-existence", "pi(f)=pi(g) but no connecting kernel morphism",
                    f=f, g=g)
        elif code == "unique":
            rep.add("torsor-uniqueness", "connecting kernel morphism not unique",
                    f=f, g=g, count=count)
        else:
            rep.add("torsor-converse", "connecting morphism exists but pi(f) != pi(g)",
                    f=f, g=g)
    return rep


def fiber_extension(c: FinCategory, a: AlgebraPrecosheaf,
                    n: PrecosheafRightModule) -> CatExtension:
    """The extension  N_fibers -> Gr(A, N) -> Gr(A).

    iota sends the fiber element m at x to (1_{A(x)}, m, 1_x); pi forgets the
    module component.
    """
    kernel = disjoint_fiber_category(n)
    total = gr_right_module(c, a, n)
    base = gr_algebra(c, a)
    unit_of = {x: tuple(int(v) for v in a.at(x).unit) for x in c.objects}
    iota = CatFunctor(kernel, total,
                      obj_map={x: x for x in kernel.objects},
                      mor_map={(x, m): (unit_of[x], m, c.identity[x])
                               for (x, m) in kernel.mor})
    pi = CatFunctor(total, base,
                    obj_map={x: x for x in total.objects},
                    mor_map={(r, m, f): (r, f) for (r, m, f) in total.mor})
    return CatExtension(kernel, total, base, iota, pi)
