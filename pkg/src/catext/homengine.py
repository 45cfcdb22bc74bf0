"""Modules over finite categories, free resolutions, Ext and cohomology.

Three independent routes to the same numbers are implemented and cross-checked
in the test suite:

  * resolution route: convert a contravariant functor to a right module over
    the category algebra, resolve by free covers on generators, take Ext as
    cohomology of the Hom complex;
  * nerve route: the simplicial cochain complex on composable chains;
  * bar route: unnormalized group cochains, for one-object groupoids.

Degree caps are explicit everywhere; nothing is computed to unbounded degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from .exactlin import Echelon, FieldSpec, Matrix, kernel_basis, rank, solve_matrix
from .fdalgebra import AlgModule, FDAlgebra, free_module
from .fincat import CatFunctor, FinCategory, linearize, nerve_chains
from .validation import Report


# -- modules over a category ---------------------------------------------------

@dataclass(eq=False)
class CatModule:
    """Contravariant functor to k-spaces: for f: x -> y a matrix
    F(f): F(y) -> F(x), with F(fg) = F(f) @ F(g)."""

    cat: FinCategory
    field: FieldSpec
    dims: dict  # ObjId -> int
    mats: dict  # MorId -> ndarray
    name: str = ""

    def dim_at(self, x) -> int:
        return self.dims[x]

    def on(self, f) -> np.ndarray:
        return self.mats[f]

    @property
    def total_dim(self) -> int:
        return sum(self.dims[x] for x in self.cat.objects)


def validate_cat_module(m: CatModule) -> Report:
    rep = Report()
    c = m.cat
    k = m.field
    for f, (x, y) in c.mor.items():
        mat = m.mats.get(f)
        if mat is None or mat.shape != (m.dims[x], m.dims[y]):
            rep.add("shape", "matrix missing or mis-shaped", f=f)
    if not rep.ok:
        return rep
    for x in c.objects:
        if not k.equal(m.on(c.identity[x]), k.eye(m.dims[x])):
            rep.add("functor", "F(1_x) != id", object=x)
    for (f, g), h in c.compose.items():
        if not k.equal(m.on(h), k.matmul(m.on(f), m.on(g))):
            rep.add("functor", "F(fg) != F(f) F(g)", f=f, g=g)
    return rep


def constant_module(c: FinCategory, k: FieldSpec) -> CatModule:
    one = k.eye(1)
    return CatModule(c, k, {x: 1 for x in c.objects},
                     {f: np.array(one, copy=True) for f in c.mor}, name="k")


def zero_cat_module(c: FinCategory, k: FieldSpec) -> CatModule:
    return CatModule(c, k, {x: 0 for x in c.objects},
                     {f: k.zeros(0, 0) for f in c.mor}, name="0")


def representable_module(c: FinCategory, k: FieldSpec, y0) -> CatModule:
    """Linearized Hom(-, y0); the projective right module at y0."""
    hom = {x: c.hom(x, y0) for x in c.objects}
    idx = {x: {u: i for i, u in enumerate(hom[x])} for x in c.objects}
    dims = {x: len(hom[x]) for x in c.objects}
    mats = {}
    for f, (x, y) in c.mor.items():
        mat = k.zeros(dims[x], dims[y])
        for u in hom[y]:
            mat[idx[x][c.then(f, u)], idx[y][u]] = k.one
        mats[f] = mat
    return CatModule(c, k, dims, mats, name=f"Hom(-,{y0})")


def restrict(g: CatModule, pi: CatFunctor) -> CatModule:
    """Pull a module on the target of pi back to its source."""
    if g.cat is not pi.target and set(g.cat.mor) != set(pi.target.mor):
        raise ValueError("module is not over the functor target")
    c = pi.source
    dims = {x: g.dims[pi.on_obj(x)] for x in c.objects}
    mats = {f: np.array(g.on(pi.on_mor(f)), copy=True) for f in c.mor}
    return CatModule(c, g.field, dims, mats, name=f"Res({g.name})" if g.name else "Res")


def to_algebra_module(f: CatModule, algebra: FDAlgebra | None = None) -> AlgModule:
    """Right module over linearize(f.cat): the morphism basis element h routes
    the cod(h)-component through F(h) into the dom(h)-component."""
    c = f.cat
    k = f.field
    alg = algebra if algebra is not None else linearize(c, k)
    if tuple(alg.basis_labels) != tuple(c.mor):
        raise ValueError("algebra basis does not enumerate the category morphisms")
    offs = {}
    total = 0
    for x in c.objects:
        offs[x] = total
        total += f.dims[x]
    action = []
    for h in c.mor:
        x, y = c.mor[h]
        mat = k.zeros(total, total)
        if f.dims[x] and f.dims[y]:
            mat[offs[x]:offs[x] + f.dims[x], offs[y]:offs[y] + f.dims[y]] = f.on(h)
        action.append(mat)
    return AlgModule(alg, total, "right", right_action=action)


def hom_space_dim(g: AlgModule, f: AlgModule) -> int:
    """dim Hom_A(g, f) by solving the commuting linear system directly."""
    if g.side != "right" or f.side != "right":
        raise ValueError("hom spaces implemented for right modules")
    k = g.algebra.field
    ng, nf = g.dim, f.dim
    if ng == 0 or nf == 0:
        return 0
    rows = []
    eyeg = k.eye(ng)
    eyef = k.eye(nf)
    for i in range(g.algebra.dim):
        block = np.kron(f.right_action[i], eyeg) - np.kron(eyef, g.right_action[i].T)
        rows.append(k.reduce(block))
    system = Matrix(k, np.concatenate(rows, axis=0))
    return nf * ng - rank(system)


# -- generators and free resolutions --------------------------------------------

def _closure(mod: AlgModule, ech: Echelon, seeds: list) -> None:
    """Extend ech to span the submodule generated by its span plus seeds.

    v.A = span{rho_j v} is already action-closed (rho is a representation of
    a unital algebra), so one pass through the action matrices suffices.
    """
    k = mod.algebra.field
    vecs = [np.asarray(k.array(v)).reshape(-1) for v in seeds]
    if not vecs:
        return
    block = np.stack(vecs, axis=1)
    for rho in mod.right_action:
        images = k.matmul(rho, block)
        for j in range(images.shape[1]):
            ech.add(images[:, j])


def _generated_rank(mod: AlgModule, vectors: list) -> int:
    ech = Echelon(mod.algebra.field, mod.dim)
    _closure(mod, ech, vectors)
    return ech.rank


def module_generators(mod: AlgModule, span_rows: np.ndarray | None = None) -> list:
    """A small generating set of a right module (or of the submodule spanned
    by span_rows), found greedily and then pruned.

    Candidates are scanned in a fixed order: block unit vectors first (these
    recover the generators of modules laid out as free blocks), then the
    span basis.  A redundant-generator drop pass and a one-element sum
    compression keep the result close to minimal without any radical
    machinery.
    """
    k = mod.algebra.field
    if span_rows is None:
        full_rank = mod.dim
        basis_rows = k.eye(mod.dim)
    else:
        target = Echelon(k, mod.dim)
        for row in span_rows:
            target.add(row)
        full_rank = target.rank
        basis_rows = target.basis_matrix().a
    if full_rank == 0:
        return []

    candidates = []
    d = mod.algebra.dim
    if span_rows is None and d > 0 and mod.dim % d == 0:
        for off in range(0, mod.dim, d):
            v = k.zeros(mod.dim)
            v[off:off + d] = mod.algebra.unit
            candidates.append(v)
    candidates.extend(np.array(row, copy=True) for row in basis_rows)

    gens: list = []
    ech = Echelon(k, mod.dim)
    for v in candidates:
        if ech.rank == full_rank:
            break
        if not ech.contains(v):
            gens.append(v)
            _closure(mod, ech, [v])
    if ech.rank != full_rank:
        raise AssertionError("generator search failed to span the module")

    # drop generators made redundant by later picks
    i = 0
    while i < len(gens) and len(gens) > 1:
        rest = gens[:i] + gens[i + 1:]
        if _generated_rank(mod, rest) == full_rank:
            gens = rest
        else:
            i += 1
    if len(gens) > 1:
        summed = k.reduce(sum(gens[1:], start=np.array(gens[0], copy=True)))
        if _generated_rank(mod, [summed]) == full_rank:
            gens = [summed]
    return gens


@dataclass(eq=False)
class Resolution:
    """Free right modules F_0 <- F_1 <- ... <- F_L over `algebra`,
    augmented onto `module`.

    gens[i] holds the generator images of F_{i+1} inside F_i as columns;
    boundaries[i] is the full k-linear matrix of F_{i+1} -> F_i.
    """

    algebra: FDAlgebra
    module: AlgModule
    ranks: list
    aug: np.ndarray  # (dim module, ranks[0] * dim algebra)
    gens: list  # gens[i]: (ranks[i] * d, ranks[i+1])
    boundaries: list  # boundaries[i]: (ranks[i] * d, ranks[i+1] * d)

    @property
    def length(self) -> int:
        return len(self.ranks) - 1


def _free_action_matrix(algebra: FDAlgebra, imgs: np.ndarray) -> np.ndarray:
    """k-matrix of the module map F -> F' sending generator t to imgs[:, t],
    where F is free of rank imgs.shape[1]."""
    k = algebra.field
    d = algebra.dim
    rank_src = imgs.shape[1]
    out = k.zeros(imgs.shape[0], rank_src * d)
    rmats = [algebra.right_mult_matrix(algebra.basis_vector(j)).T for j in range(d)]
    for t in range(rank_src):
        v = imgs[:, t]
        blocks = v.reshape(-1, d)
        for j in range(d):
            col = k.reduce(blocks @ rmats[j]).reshape(-1)
            out[:, t * d + j] = col
    return out


def free_resolution(algebra: FDAlgebra, module: AlgModule, length: int) -> Resolution:
    """Resolve by free covers on generators; exact at every computed stage."""
    if module.side != "right":
        raise ValueError("resolutions implemented for right modules")
    k = algebra.field
    d = algebra.dim
    g0 = module_generators(module)
    ranks = [len(g0)]
    aug = k.zeros(module.dim, ranks[0] * d)
    for t, v in enumerate(g0):
        for j in range(d):
            aug[:, t * d + j] = k.matmul(module.right_of(algebra.basis_vector(j)), v)
    gens: list = []
    boundaries: list = []
    prev_matrix = aug
    prev_rank = ranks[0]
    for _ in range(length):
        ker = kernel_basis(Matrix(k, prev_matrix))
        if prev_rank == 0 or ker.rows == 0:
            ranks.append(0)
            gens.append(k.zeros(prev_rank * d, 0))
            boundaries.append(k.zeros(prev_rank * d, 0))
            prev_matrix = k.zeros(prev_rank * d, 0)
            prev_rank = 0
            continue
        fmod = free_module(algebra, prev_rank, side="right")
        kgens = module_generators(fmod, span_rows=ker.a)
        r_new = len(kgens)
        imgs = k.zeros(prev_rank * d, r_new)
        for t, v in enumerate(kgens):
            imgs[:, t] = v
        bnd = _free_action_matrix(algebra, imgs)
        ranks.append(r_new)
        gens.append(imgs)
        boundaries.append(bnd)
        prev_matrix = bnd
        prev_rank = r_new
    return Resolution(algebra, module, ranks, aug, gens, boundaries)


def validate_resolution(res: Resolution) -> Report:
    rep = Report()
    k = res.algebra.field
    mats = [res.aug] + res.boundaries
    for i in range(len(mats) - 1):
        if mats[i].shape[1] != mats[i + 1].shape[0]:
            rep.add("shape", "boundary shapes do not chain", stage=i)
            return rep
        comp = k.matmul(mats[i], mats[i + 1])
        if not k.is_zero(comp):
            rep.add("dd", "consecutive boundaries do not compose to zero", stage=i)
    if rank(Matrix(k, res.aug)) != res.module.dim:
        rep.add("surjectivity", "augmentation is not onto the module")
    for i in range(len(mats) - 1):
        need = mats[i].shape[1] - rank(Matrix(k, mats[i]))
        have = rank(Matrix(k, mats[i + 1]))
        if need != have:
            rep.add("exactness", "image does not fill the kernel",
                    stage=i, kernel=need, image=have)
    return rep


def ext_dims_from_resolution(res: Resolution, f: AlgModule, max_n: int) -> list:
    """dim Ext^i for i <= max_n as cohomology of Hom(F_., f)."""
    if res.length < max_n + 1:
        raise ValueError("resolution too short for the requested degree")
    k = res.algebra.field
    d = res.algebra.dim
    nf = f.dim
    diffs = []
    for i in range(max_n + 1):
        r_src, r_tgt = res.ranks[i], res.ranks[i + 1]
        mat = k.zeros(r_tgt * nf, r_src * nf)
        imgs = res.gens[i]
        for t in range(r_tgt):
            coords = imgs[:, t].reshape(r_src, d)
            for s in range(r_src):
                mat[t * nf:(t + 1) * nf, s * nf:(s + 1) * nf] = f.right_of(coords[s])
        diffs.append(mat)
    out = []
    prev_rank = 0
    for i in range(max_n + 1):
        dim_i = res.ranks[i] * nf
        r_i = rank(Matrix(k, diffs[i]))
        out.append(dim_i - r_i - prev_rank)
        prev_rank = r_i
    return out


def ext_dims(algebra: FDAlgebra, g: AlgModule, f: AlgModule, max_n: int) -> list:
    if g.side != f.side:
        raise ValueError("modules must live on the same side")
    res = free_resolution(algebra, g, max_n + 1)
    return ext_dims_from_resolution(res, f, max_n)


# -- cochain complexes -----------------------------------------------------------

@dataclass(eq=False)
class CochainComplex:
    field: FieldSpec
    dims: list
    d: list  # d[q]: C^q -> C^{q+1}

    def validate(self) -> Report:
        rep = Report()
        for q, mat in enumerate(self.d):
            if mat.shape != (self.dims[q + 1], self.dims[q]):
                rep.add("shape", "differential shape mismatch", q=q)
                return rep
        for q in range(len(self.d) - 1):
            if not self.field.is_zero(self.field.matmul(self.d[q + 1], self.d[q])):
                rep.add("dd", "d o d != 0", q=q)
        return rep

    def cohomology_dims(self) -> list:
        """dim H^q for q = 0 .. len(d) - 1."""
        out = []
        prev_rank = 0
        for q in range(len(self.d)):
            r = rank(Matrix(self.field, self.d[q]))
            out.append(self.dims[q] - r - prev_rank)
            prev_rank = r
        return out


def nerve_cochain_complex(c: FinCategory, f: CatModule, max_n: int,
                          normalized: bool = False) -> CochainComplex:
    """C^q = sum over q-chains x0 -> ... -> xq of F(x0), with the simplicial
    differential (F acts on the x0-face, adjacent arrows compose, ends drop)."""
    k = f.field
    chains = [nerve_chains(c, q, normalized=normalized) for q in range(max_n + 2)]

    def start_of(q: int, ch: tuple):
        return ch[0] if q == 0 else c.dom(ch[0])

    offsets = []
    dims = []
    for q in range(max_n + 2):
        offs = {}
        total = 0
        for ch in chains[q]:
            offs[ch] = total
            total += f.dims[start_of(q, ch)]
        offsets.append(offs)
        dims.append(total)

    diffs = []
    minus = k.coerce(-1)
    for q in range(max_n + 1):
        mat = k.zeros(dims[q + 1], dims[q])
        for ch in chains[q + 1]:
            r0 = offsets[q + 1][ch]
            nrow = f.dims[start_of(q + 1, ch)]
            if nrow == 0:
                continue

            def accumulate(target, block):
                if target not in offsets[q]:
                    return  # normalized complex: degenerate face, cochain is 0 there
                c0 = offsets[q][target]
                ncol = f.dims[start_of(q, target)]
                if ncol:
                    mat[r0:r0 + nrow, c0:c0 + ncol] = k.reduce(
                        mat[r0:r0 + nrow, c0:c0 + ncol] + block)

            first = ch[0]
            tail = ch[1:] if q >= 1 else (c.cod(first),)
            accumulate(tail, f.on(first))
            sign = k.one
            for i in range(1, q + 1):
                sign = k.coerce(sign * minus)
                merged = ch[:i - 1] + (c.then(ch[i - 1], ch[i]),) + ch[i + 1:]
                accumulate(merged, sign * k.eye(nrow))
            sign = k.coerce(sign * minus)
            head = ch[:q] if q >= 1 else (c.dom(first),)
            accumulate(head, sign * k.eye(nrow))
        diffs.append(mat)
    return CochainComplex(k, dims, diffs)


def nerve_cohomology_dims(c: FinCategory, f: CatModule, max_n: int,
                          normalized: bool = False) -> list:
    return nerve_cochain_complex(c, f, max_n, normalized=normalized).cohomology_dims()


def cat_ext_dims(c: FinCategory, g: CatModule, f: CatModule, max_n: int) -> list:
    """Ext over the category algebra of c, via the resolution route."""
    if g.field != f.field:
        raise ValueError("modules over different fields")
    alg = linearize(c, g.field)
    return ext_dims(alg, to_algebra_module(g, alg), to_algebra_module(f, alg), max_n)


def cohomology_dims(c: FinCategory, f: CatModule, max_n: int) -> list:
    return cat_ext_dims(c, constant_module(c, f.field), f, max_n)


# -- group cohomology --------------------------------------------------------------

@dataclass(eq=False)
class FiniteAbelianGroup:
    orders: tuple

    def __post_init__(self):
        if any(n < 1 for n in self.orders):
            raise ValueError("cyclic orders must be >= 1")
        self.elements = [t for t in iproduct(*(range(n) for n in self.orders))]

    @property
    def zero(self) -> tuple:
        return tuple(0 for _ in self.orders)

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a: tuple) -> tuple:
        return tuple((-x) % n for x, n in zip(a, self.orders))

    @property
    def order(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out


@dataclass(eq=False)
class GroupModule:
    field: FieldSpec
    dim: int
    action: dict  # group element tuple -> ndarray

    def on(self, g: tuple) -> np.ndarray:
        return self.action[g]


def validate_group_module(group: FiniteAbelianGroup, module: GroupModule) -> Report:
    rep = Report()
    k = module.field
    for g in group.elements:
        mat = module.action.get(g)
        if mat is None or mat.shape != (module.dim, module.dim):
            rep.add("shape", "action matrix missing or mis-shaped", g=g)
    if not rep.ok:
        return rep
    if not k.equal(module.on(group.zero), k.eye(module.dim)):
        rep.add("unit", "action of 0 is not the identity")
    for g in group.elements:
        for h in group.elements:
            if not k.equal(module.on(group.add(g, h)),
                           k.matmul(module.on(g), module.on(h))):
                rep.add("action", "action is not a homomorphism", g=g, h=h)
    return rep


def trivial_group_module(group: FiniteAbelianGroup, k: FieldSpec, dim: int = 1) -> GroupModule:
    return GroupModule(k, dim, {g: k.eye(dim) for g in group.elements})


def bar_cochain_complex(group: FiniteAbelianGroup, module: GroupModule,
                        max_q: int) -> CochainComplex:
    """Unnormalized bar cochains: C^q = maps(G^q, V)."""
    k = module.field
    nv = module.dim
    tuples = [list(iproduct(group.elements, repeat=q)) for q in range(max_q + 2)]
    index = [{t: i for i, t in enumerate(ts)} for ts in tuples]
    dims = [len(ts) * nv for ts in tuples]
    diffs = []
    minus = k.coerce(-1)
    for q in range(max_q + 1):
        mat = k.zeros(dims[q + 1], dims[q])
        if nv:
            for t_new in tuples[q + 1]:
                r0 = index[q + 1][t_new] * nv

                def accumulate(t_old, block):
                    c0 = index[q][t_old] * nv
                    mat[r0:r0 + nv, c0:c0 + nv] = k.reduce(
                        mat[r0:r0 + nv, c0:c0 + nv] + block)

                accumulate(t_new[1:], module.on(t_new[0]))
                sign = k.one
                for i in range(1, q + 1):
                    sign = k.coerce(sign * minus)
                    merged = t_new[:i - 1] + (group.add(t_new[i - 1], t_new[i]),) + t_new[i + 1:]
                    accumulate(merged, sign * k.eye(nv))
                sign = k.coerce(sign * minus)
                accumulate(t_new[:q], sign * k.eye(nv))
        diffs.append(mat)
    return CochainComplex(k, dims, diffs)


def group_cohomology_dims(group: FiniteAbelianGroup, module: GroupModule,
                          max_q: int) -> list:
    return bar_cochain_complex(group, module, max_q).cohomology_dims()


# -- subquotients (cohomology classes with chosen representatives) ------------------

@dataclass(eq=False)
class Subquotient:
    """ker(d_out) / im(d_in) with a fixed representative basis, supporting
    exact projection of cocycles onto class coordinates."""

    field: FieldSpec
    ambient_dim: int
    reps: np.ndarray  # (ambient, h_dim) columns are class representatives
    _solver: Matrix  # [image basis | reps]
    _n_image: int

    @property
    def dim(self) -> int:
        return self.reps.shape[1]

    def project(self, vecs: np.ndarray) -> np.ndarray:
        """Class coordinates of cocycle columns; raises if not cocycles."""
        k = self.field
        if vecs.ndim == 1:
            vecs = vecs.reshape(-1, 1)
        if self.dim == 0:
            return k.zeros(0, vecs.shape[1])
        sol = solve_matrix(self._solver, Matrix(k, vecs))
        if sol is None:
            raise ValueError("vector is not a cocycle modulo boundaries")
        return sol.a[self._n_image:, :]


def subquotient(field: FieldSpec, d_out: np.ndarray, d_in: np.ndarray | None) -> Subquotient:
    ambient = d_out.shape[1]
    ker = kernel_basis(Matrix(field, d_out))
    ech = Echelon(field, ambient)
    image_cols = []
    if d_in is not None:
        for j in range(d_in.shape[1]):
            col = d_in[:, j]
            if ech.add(col):
                image_cols.append(np.array(col, copy=True))
    reps = []
    for i in range(ker.rows):
        row = ker.a[i]
        if ech.add(row):
            reps.append(np.array(row, copy=True))
    n_img = len(image_cols)
    h = len(reps)
    cols = image_cols + reps
    if cols:
        solver = Matrix(field, np.stack(cols, axis=1))
    else:
        solver = Matrix.zeros(field, ambient, 0)
    reps_mat = np.stack(reps, axis=1) if reps else field.zeros(ambient, 0)
    return Subquotient(field, ambient, reps_mat, solver, n_img)
