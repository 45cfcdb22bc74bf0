"""Named fixtures: small categories, algebras and coefficient systems.

These are the desk-scale inputs used by the test suite, the CLI presets and
the demo scripts.  Everything is generated into explicit structure-constant /
composition-table form.
"""
from __future__ import annotations

import numpy as np

from .coeffsys import AlgebraPrecosheaf, PrecosheafBimodule, PrecosheafRightModule
from .exactlin import FieldSpec
from .fdalgebra import (AlgHom, AlgModule, FDAlgebra, field_algebra, group_algebra,
                        regular_bimodule)
from .fincat import FinCategory

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
QQ = FieldSpec.rationals()


# -- categories ------------------------------------------------------------

def trivial_category() -> FinCategory:
    return FinCategory(("*",), {"id": ("*", "*")}, {"*": "id"},
                       {("id", "id"): "id"}, name="pt")


def discrete_category(n: int) -> FinCategory:
    objs = tuple(str(i) for i in range(n))
    mor = {f"id{i}": (str(i), str(i)) for i in range(n)}
    ident = {str(i): f"id{i}" for i in range(n)}
    compose = {(f"id{i}", f"id{i}"): f"id{i}" for i in range(n)}
    return FinCategory(objs, mor, ident, compose, name=f"discrete({n})")


def poset_a2() -> FinCategory:
    """Two objects 0 -> 1 with a single non-identity arrow."""
    mor = {"i0": ("0", "0"), "i1": ("1", "1"), "a": ("0", "1")}
    compose = {("i0", "i0"): "i0", ("i1", "i1"): "i1",
               ("i0", "a"): "a", ("a", "i1"): "a"}
    return FinCategory(("0", "1"), mor, {"0": "i0", "1": "i1"}, compose, name="A2")


def cyclic_monoid(n: int, r: int) -> FinCategory:
    """One object; endomorphisms 1, t, ..., t^(n-1) with t^n = t^r."""
    if not (0 <= r < n):
        raise ValueError("need 0 <= r < n")
    def norm(e: int) -> int:
        period = n - r
        return e if e < n else r + (e - r) % period
    mor = {f"t{e}": ("*", "*") for e in range(n)}
    compose = {(f"t{e}", f"t{d}"): f"t{norm(e + d)}" for e in range(n) for d in range(n)}
    return FinCategory(("*",), mor, {"*": "t0"}, compose, name=f"cyclic({n},{r})")


def one_object_group(n: int) -> FinCategory:
    """B(Z/n): the cyclic group of order n as a one-object groupoid."""
    return cyclic_monoid(n, 0)


def broken_category() -> FinCategory:
    """A2 with one composite deliberately wrong (t then identity != t)."""
    c = poset_a2()
    compose = dict(c.compose)
    compose[("a", "i1")] = "i1"  # violates identity law and dom/cod coherence
    return FinCategory(c.objects, dict(c.mor), dict(c.identity), compose, name="A2-broken")


# -- algebras ----------------------------------------------------------------

def field_product(k: FieldSpec, n: int) -> FDAlgebra:
    """k x k x ... x k with the idempotent coordinate basis."""
    c = k.zeros(n, n, n)
    for i in range(n):
        c[i, i, i] = k.one
    unit = k.zeros(n)
    for i in range(n):
        unit[i] = k.one
    return FDAlgebra(field=k, dim=n, structure=c, unit=unit,
                     basis_labels=tuple(f"e{i}" for i in range(n)), name=f"k^{n}")


# -- precosheaves ------------------------------------------------------------

def constant_precosheaf(cat: FinCategory, alg: FDAlgebra) -> AlgebraPrecosheaf:
    eye = alg.field.eye(alg.dim)
    maps = {f: AlgHom(alg, alg, eye) for f in cat.mor}
    return AlgebraPrecosheaf(cat, {x: alg for x in cat.objects}, maps,
                             name=f"const({alg.name})")


def precosheaf_from(cat: FinCategory, algebras: dict, edge_maps: dict) -> AlgebraPrecosheaf:
    """Fill identity maps automatically; edge_maps covers the rest by id."""
    maps = {}
    for f, (x, y) in cat.mor.items():
        if f in edge_maps:
            maps[f] = edge_maps[f]
        elif f == cat.identity[x] and x == y:
            a = algebras[x]
            maps[f] = AlgHom(a, a, a.field.eye(a.dim))
        else:
            raise ValueError(f"no algebra map supplied for morphism {f!r}")
    return AlgebraPrecosheaf(cat, algebras, maps)


def a2_augmentation_precosheaf(k: FieldSpec) -> AlgebraPrecosheaf:
    """A2 with k[Z/2] at the source, k at the sink, augmentation along the arrow."""
    cat = poset_a2()
    kz2 = group_algebra([2], k)
    kk = field_algebra(k)
    aug = AlgHom(kz2, kk, k.array([[1, 1]]))
    return precosheaf_from(cat, {"0": kz2, "1": kk}, {"a": aug})


# -- bimodule / right-module systems ------------------------------------------

def regular_bimodule_system(pre: AlgebraPrecosheaf) -> PrecosheafBimodule:
    mods = {x: regular_bimodule(pre.at(x)) for x in pre.base.objects}
    maps = {f: np.array(pre.on(f).matrix, copy=True) for f in pre.base.mor}
    return PrecosheafBimodule(pre, mods, maps, name="regular")


def zero_bimodule_system(pre: AlgebraPrecosheaf) -> PrecosheafBimodule:
    k = pre.field
    mods = {x: AlgModule(pre.at(x), 0, "bi",
                         right_action=[k.zeros(0, 0)] * pre.at(x).dim,
                         left_action=[k.zeros(0, 0)] * pre.at(x).dim)
            for x in pre.base.objects}
    maps = {f: k.zeros(0, 0) for f in pre.base.mor}
    return PrecosheafBimodule(pre, mods, maps, name="zero")


def regular_right_module_system(pre: AlgebraPrecosheaf) -> PrecosheafRightModule:
    mods = {}
    for x in pre.base.objects:
        a = pre.at(x)
        mods[x] = AlgModule(a, a.dim, "right",
                            right_action=[a.right_mult_matrix(a.basis_vector(i))
                                          for i in range(a.dim)])
    maps = {f: np.array(pre.on(f).matrix, copy=True) for f in pre.base.mor}
    return PrecosheafRightModule(pre, mods, maps, name="regular")


def zero_right_module_system(pre: AlgebraPrecosheaf) -> PrecosheafRightModule:
    k = pre.field
    mods = {x: AlgModule(pre.at(x), 0, "right",
                         right_action=[k.zeros(0, 0)] * pre.at(x).dim)
            for x in pre.base.objects}
    maps = {f: k.zeros(0, 0) for f in pre.base.mor}
    return PrecosheafRightModule(pre, mods, maps, name="zero")


def projection_bimodule_system(k: FieldSpec) -> PrecosheafBimodule:
    """Trivial category, algebra k x k, carrier k.

    Left action through the first coordinate, right action through the
    second: e0 . m = m and m . e1 = m, all other basis actions vanish.
    """
    cat = trivial_category()
    kk = field_product(k, 2)
    pre = constant_precosheaf(cat, kk)
    mod = AlgModule(kk, 1, "bi",
                    left_action=[k.array([[1]]), k.array([[0]])],
                    right_action=[k.array([[0]]), k.array([[1]])])
    maps = {f: k.eye(1) for f in cat.mor}
    return PrecosheafBimodule(pre, {"*": mod}, maps, name="projection")


def corrupt_bimodule(m: PrecosheafBimodule) -> PrecosheafBimodule:
    """Flip one left-action entry at the first object; breaks compatibility."""
    k = m.precosheaf.field
    x = m.base.objects[0]
    mods = dict(m.modules)
    old = mods[x]
    left = [np.array(a, copy=True) for a in old.left_action]
    if old.dim == 0 or not left:
        raise ValueError("cannot corrupt an empty bimodule")
    left[0][0, 0] = k.coerce(left[0][0, 0] + 1)
    mods[x] = AlgModule(old.algebra, old.dim, "bi",
                        right_action=[np.array(a, copy=True) for a in old.right_action],
                        left_action=left)
    return PrecosheafBimodule(m.precosheaf, mods, dict(m.maps), name=f"{m.name}-corrupt")
