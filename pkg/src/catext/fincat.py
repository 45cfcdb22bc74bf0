"""Finite categories as explicit data: objects, morphisms, composition tables.

Composition is stored diagrammatically: compose[(f, g)] is "f then g" and is
defined exactly when cod(f) == dom(g).  Morphism and object ids are arbitrary
hashables (strings in hand-built fixtures, tuples in generated categories).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dfield
from typing import Hashable

from .exactlin import FieldSpec
from .validation import Report

ObjId = Hashable
MorId = Hashable


@dataclass(eq=False)
class FinCategory:
    objects: tuple
    mor: dict  # MorId -> (dom, cod)
    identity: dict  # ObjId -> MorId
    compose: dict  # (MorId f, MorId g) -> MorId, defined iff cod f == dom g
    name: str = ""

    @property
    def morphisms(self) -> list:
        return list(self.mor)

    def dom(self, f: MorId) -> ObjId:
        return self.mor[f][0]

    def cod(self, f: MorId) -> ObjId:
        return self.mor[f][1]

    def then(self, f: MorId, g: MorId) -> MorId:
        """Composite "f then g"."""
        return self.compose[(f, g)]

    def composable(self, f: MorId, g: MorId) -> bool:
        return self.cod(f) == self.dom(g)

    def hom(self, x: ObjId, y: ObjId) -> list:
        return [f for f, (d, c) in self.mor.items() if d == x and c == y]

    def endos(self, x: ObjId) -> list:
        return self.hom(x, x)


def validate_category(c: FinCategory) -> Report:
    """Check every category axiom; violations are reported with witnesses."""
    rep = Report()
    for f, (d, cod_) in c.mor.items():
        if d not in c.objects or cod_ not in c.objects:
            rep.add("dom-cod", "morphism endpoints not objects", f=f, dom=d, cod=cod_)
    for x in c.objects:
        i = c.identity.get(x)
        if i is None or i not in c.mor:
            rep.add("identity", "missing identity morphism", object=x)
            continue
        if c.mor[i] != (x, x):
            rep.add("identity", "identity is not an endomorphism", object=x, id=i)
    # the composition table must be total on composable pairs and empty elsewhere
    for f in c.mor:
        for g in c.mor:
            defined = (f, g) in c.compose
            if c.composable(f, g) and not defined:
                rep.add("composition", "missing composite", f=f, g=g)
            if not c.composable(f, g) and defined:
                rep.add("composition", "composite defined for non-composable pair", f=f, g=g)
    for (f, g), h in c.compose.items():
        if h not in c.mor:
            rep.add("composition", "composite not a morphism", f=f, g=g, h=h)
            continue
        if c.composable(f, g) and c.mor[h] != (c.dom(f), c.cod(g)):
            rep.add("dom-cod", "composite has wrong endpoints", f=f, g=g, h=h)
    if not rep.ok:
        return rep  # structural damage; law checks below assume a total table
    for f, (d, cod_) in c.mor.items():
        if c.then(c.identity[d], f) != f:
            rep.add("identity-law", "left identity fails", f=f)
        if c.then(f, c.identity[cod_]) != f:
            rep.add("identity-law", "right identity fails", f=f)
    for f in c.mor:
        for g in c.mor:
            if not c.composable(f, g):
                continue
            fg = c.then(f, g)
            for h in c.mor:
                if not c.composable(g, h):
                    continue
                if c.then(fg, h) != c.then(f, c.then(g, h)):
                    rep.add("associativity", "(fg)h != f(gh)", f=f, g=g, h=h)
    return rep


def opposite(c: FinCategory) -> FinCategory:
    """Reverse all arrows; involutive."""
    rep = validate_category(c)
    if not rep.ok:
        raise ValueError(f"opposite of invalid category: {rep.summary()}")
    mor = {f: (cod_, d) for f, (d, cod_) in c.mor.items()}
    compose = {(g, f): h for (f, g), h in c.compose.items()}
    return FinCategory(c.objects, mor, dict(c.identity), compose,
                       name=f"{c.name}^op" if c.name else "op")


def nerve_chains(c: FinCategory, n: int, normalized: bool = False,
                 limit: int = 500_000) -> list[tuple]:
    """All length-n composable morphism sequences (x0 -> x1 -> ... -> xn).

    Degree 0 chains are the objects, returned as 1-tuples (x,).  The
    unnormalized nerve (identities included) is the default; normalized=True
    drops every chain containing an identity.  Enumeration beyond `limit`
    chains aborts: the nerve route is a desk-scale oracle.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    if n == 0:
        return [(x,) for x in c.objects]
    idents = set(c.identity.values())
    mors = [f for f in c.mor if not (normalized and f in idents)]
    chains = [(f,) for f in mors]
    for _ in range(n - 1):
        chains = [ch + (g,) for ch in chains for g in mors
                  if c.cod(ch[-1]) == c.dom(g)]
        if len(chains) > limit:
            raise ValueError(f"nerve enumeration exceeds desk-scale limit {limit}")
    return chains


def linearize(c: FinCategory, k: FieldSpec):
    """Category algebra of c over k: basis indexed by the morphisms.

    The product follows the algebra-side order used by the skew and extension
    category algebras (right-to-left relative to the diagrammatic composition
    table): e_f * e_g = e_{gf} when dom(f) == cod(g), else 0.  With this
    orientation a contravariant functor on c becomes a right module on the
    nose, and the skew algebra of the constant coefficient system coincides
    with linearize structure-constant-for-structure-constant.
    """
    from .fdalgebra import FDAlgebra

    rep = validate_category(c)
    if not rep.ok:
        raise ValueError(f"cannot linearize invalid category: {rep.summary()}")
    labels = list(c.mor)
    index = {f: i for i, f in enumerate(labels)}
    d = len(labels)
    structure = k.zeros(d, d, d)
    for (g, f), h in c.compose.items():  # table entry: g then f
        structure[index[f], index[g], index[h]] = k.one
    unit = k.zeros(d)
    for x in c.objects:
        unit[index[c.identity[x]]] = k.one
    return FDAlgebra(field=k, dim=d, structure=structure, unit=unit,
                     basis_labels=tuple(labels),
                     name=f"k[{c.name}]" if c.name else "k[C]")


@dataclass(eq=False)
class CatFunctor:
    source: FinCategory
    target: FinCategory
    obj_map: dict = dfield(default_factory=dict)
    mor_map: dict = dfield(default_factory=dict)

    def on_obj(self, x: ObjId) -> ObjId:
        return self.obj_map[x]

    def on_mor(self, f: MorId) -> MorId:
        return self.mor_map[f]


def validate_functor(fun: CatFunctor) -> Report:
    rep = Report()
    s, t = fun.source, fun.target
    for x in s.objects:
        if fun.obj_map.get(x) not in t.objects:
            rep.add("functor", "object image missing", object=x)
    for f in s.mor:
        img = fun.mor_map.get(f)
        if img not in t.mor:
            rep.add("functor", "morphism image missing", f=f)
            continue
        if t.mor[img] != (fun.obj_map.get(s.dom(f)), fun.obj_map.get(s.cod(f))):
            rep.add("functor", "image endpoints wrong", f=f, image=img)
    if not rep.ok:
        return rep
    for x in s.objects:
        if fun.on_mor(s.identity[x]) != t.identity[fun.on_obj(x)]:
            rep.add("functor", "identity not preserved", object=x)
    for (f, g), h in s.compose.items():
        if t.then(fun.on_mor(f), fun.on_mor(g)) != fun.on_mor(h):
            rep.add("functor", "composition not preserved", f=f, g=g)
    return rep


def is_isomorphism(fun: CatFunctor) -> bool:
    """True iff fun is bijective on objects and morphisms and a functor."""
    if not validate_functor(fun).ok:
        return False
    s, t = fun.source, fun.target
    objs = set(fun.obj_map[x] for x in s.objects)
    mors = set(fun.mor_map[f] for f in s.mor)
    return len(objs) == len(s.objects) == len(t.objects) \
        and len(mors) == len(s.mor) == len(t.mor)
