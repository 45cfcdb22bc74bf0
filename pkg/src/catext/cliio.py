"""Declarative problem files, canonical emission, and command dispatch.

One human-writable YAML format describes everything: the field, a category
(preset or explicit composition table), a precosheaf of algebras, optional
bimodule / right-module systems, coefficient modules, and a task.  parse()
normalizes and schema-checks the document (reporting every error with its
path); emit() writes the canonical form back, so emit . parse is idempotent.

Reports are emitted as deterministic JSON (structured) or aligned text
(table).  Exit codes: 0 clean, 1 mathematical violation found, 2 input error.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dfield

import yaml

from . import constructions, extcheck, lhsengine, presets
from .coeffsys import (PrecosheafBimodule, PrecosheafRightModule, validate_bimodule,
                       validate_precosheaf, validate_right_module)
from .exactlin import FieldSpec
from .fdalgebra import (AlgHom, AlgModule, FDAlgebra, dual_numbers, field_algebra,
                        group_algebra, upper_triangular_algebra, validate_algebra)
from .fincat import FinCategory, validate_category
from .homengine import (CatModule, cat_ext_dims, cohomology_dims, constant_module,
                        nerve_cohomology_dims, representable_module, validate_cat_module)
from .validation import Report

COMMANDS = ("validate", "build-algebra", "check-theorem-a", "check-extension",
            "cohomology", "ext", "lhs-report")

CATEGORY_PRESETS = ("trivial", "poset-a2", "discrete", "cyclic-monoid", "one-object-group")
ALGEBRA_PRESETS = ("field", "dual-numbers", "group-algebra", "upper-triangular",
                   "field-product", "explicit")


class InputError(Exception):
    """Schema or reference errors, each tagged with its document path."""

    def __init__(self, errors: list):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass
class ProblemSpec:
    payload: dict


# -- parsing -------------------------------------------------------------------

def _err(errors, path, msg):
    errors.append(f"{path}: {msg}")


def _check_matrix(errors, path, m, rows=None, cols=None):
    if not isinstance(m, list) or any(not isinstance(r, list) for r in m):
        _err(errors, path, "expected a list of rows")
        return
    widths = {len(r) for r in m}
    if len(widths) > 1:
        _err(errors, path, "ragged matrix")
        return
    if rows is not None and len(m) != rows:
        _err(errors, path, f"expected {rows} rows, got {len(m)}")
    if cols is not None and m and len(m[0]) != cols:
        _err(errors, path, f"expected {cols} columns, got {len(m[0])}")
    for r in m:
        for v in r:
            if not isinstance(v, int):
                _err(errors, path, f"matrix entries must be integers, got {v!r}")
                return


def _norm_field(errors, path, block, default=None):
    if block is None:
        if default is not None:
            return dict(default)
        _err(errors, path, "missing field block")
        return None
    kind = block.get("kind")
    if kind in ("prime", "prime-field"):
        p = block.get("characteristic")
        if not isinstance(p, int) or p < 2:
            _err(errors, path + ".characteristic", "need a prime integer >= 2")
            return None
        return {"kind": "prime-field", "characteristic": p}
    if kind == "rationals":
        return {"kind": "rationals"}
    _err(errors, path + ".kind", f"unknown field kind {kind!r}")
    return None


def _norm_category(errors, path, block):
    if block is None:
        _err(errors, path, "missing category block")
        return None
    if "preset" in block:
        preset = block["preset"]
        if preset not in CATEGORY_PRESETS:
            _err(errors, path + ".preset", f"unknown preset {preset!r}")
            return None
        out = {"preset": preset}
        if preset == "discrete":
            out["count"] = int(block.get("count", 2))
        if preset == "cyclic-monoid":
            out["size"] = int(block.get("size", 3))
            out["loop"] = int(block.get("loop", 1))
        if preset == "one-object-group":
            out["order"] = int(block.get("order", 2))
        return out
    objs = block.get("objects")
    mors = block.get("morphisms")
    idents = block.get("identities")
    table = block.get("compose")
    if not isinstance(objs, list) or not objs:
        _err(errors, path + ".objects", "need a non-empty object list")
        return None
    if not isinstance(mors, list):
        _err(errors, path + ".morphisms", "need a morphism list")
        return None
    ids = set()
    for i, m in enumerate(mors):
        if not isinstance(m, dict) or not {"id", "dom", "cod"} <= set(m):
            _err(errors, path + f".morphisms[{i}]", "need id/dom/cod")
            continue
        if m["id"] in ids:
            _err(errors, path + f".morphisms[{i}]", f"duplicate morphism id {m['id']!r}")
        ids.add(m["id"])
        for end in ("dom", "cod"):
            if m[end] not in objs:
                _err(errors, path + f".morphisms[{i}].{end}",
                     f"dangling object reference {m[end]!r}")
    if not isinstance(idents, dict):
        _err(errors, path + ".identities", "need an object -> morphism map")
        idents = {}
    for x, f in idents.items():
        if x not in objs:
            _err(errors, path + ".identities", f"dangling object reference {x!r}")
        if f not in ids:
            _err(errors, path + ".identities", f"dangling morphism reference {f!r}")
    if not isinstance(table, list):
        _err(errors, path + ".compose", "need a list of {first, then, equals}")
        table = []
    for i, row in enumerate(table):
        if not isinstance(row, dict) or not {"first", "then", "equals"} <= set(row):
            _err(errors, path + f".compose[{i}]", "need first/then/equals")
            continue
        for kk in ("first", "then", "equals"):
            if row[kk] not in ids:
                _err(errors, path + f".compose[{i}].{kk}",
                     f"dangling morphism reference {row[kk]!r}")
    return {"objects": list(objs),
            "morphisms": [dict(m) for m in mors],
            "identities": dict(idents),
            "compose": [dict(r) for r in table]}


def _norm_algebra(errors, path, block):
    if not isinstance(block, dict) or "preset" not in block:
        _err(errors, path, "need an algebra block with a preset")
        return None
    preset = block["preset"]
    if preset not in ALGEBRA_PRESETS:
        _err(errors, path + ".preset", f"unknown algebra preset {preset!r}")
        return None
    out = {"preset": preset}
    if preset == "group-algebra":
        orders = block.get("orders", [2])
        if not isinstance(orders, list) or any(not isinstance(n, int) or n < 1 for n in orders):
            _err(errors, path + ".orders", "need positive integer orders")
        out["orders"] = list(orders)
    if preset == "upper-triangular":
        out["size"] = int(block.get("size", 2))
    if preset == "field-product":
        out["count"] = int(block.get("count", 2))
    if preset == "explicit":
        dim = block.get("dim")
        if not isinstance(dim, int) or dim < 0:
            _err(errors, path + ".dim", "need a nonnegative dimension")
            return None
        out["dim"] = dim
        tensor = block.get("tensor")
        if not isinstance(tensor, list) or len(tensor) != dim:
            _err(errors, path + ".tensor", f"need {dim} slabs of a {dim}^3 tensor")
        else:
            for i, slab in enumerate(tensor):
                _check_matrix(errors, path + f".tensor[{i}]", slab, dim, dim)
        unit = block.get("unit")
        if not isinstance(unit, list) or len(unit) != dim \
                or any(not isinstance(v, int) for v in unit):
            _err(errors, path + ".unit", f"need an integer vector of length {dim}")
        out["tensor"] = tensor
        out["unit"] = unit
    return out


def parse(text: str) -> ProblemSpec:
    """Normalize and schema-check a problem document."""
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        loc = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "document"
        raise InputError([f"{loc}: YAML syntax error: {getattr(exc, 'problem', exc)}"])
    if not isinstance(raw, dict):
        raise InputError(["document: expected a mapping at the top level"])
    errors: list = []
    out: dict = {}
    out["field"] = _norm_field(errors, "field", raw.get("field"))
    if "coefficient_field" in raw:
        out["coefficient_field"] = _norm_field(errors, "coefficient_field",
                                               raw.get("coefficient_field"))
    out["category"] = _norm_category(errors, "category", raw.get("category"))

    alg = raw.get("algebra")
    if alg is not None:
        if not isinstance(alg, dict):
            _err(errors, "algebra", "expected a mapping")
        elif "constant" in alg:
            out["algebra"] = {"constant": _norm_algebra(errors, "algebra.constant",
                                                        alg["constant"])}
        elif "at" in alg:
            entry = {"at": {}, "maps": {}}
            for x, blk in alg["at"].items():
                entry["at"][x] = _norm_algebra(errors, f"algebra.at.{x}", blk)
            for f, mat in (alg.get("maps") or {}).items():
                _check_matrix(errors, f"algebra.maps.{f}", mat)
                entry["maps"][f] = mat
            out["algebra"] = entry
        else:
            _err(errors, "algebra", "need 'constant' or per-object 'at'")

    for key in ("bimodule", "right_module"):
        blk = raw.get(key)
        if blk is None:
            continue
        if not isinstance(blk, dict):
            _err(errors, key, "expected a mapping")
            continue
        if "preset" in blk:
            if blk["preset"] not in ("regular", "zero"):
                _err(errors, key + ".preset", f"unknown preset {blk['preset']!r}")
            else:
                out[key] = {"preset": blk["preset"]}
            continue
        if "at" not in blk:
            _err(errors, key, "need a preset or per-object 'at'")
            continue
        entry = {"at": {}, "maps": {}}
        sides = ("left", "right") if key == "bimodule" else ("right",)
        for x, data in blk["at"].items():
            path = f"{key}.at.{x}"
            if not isinstance(data, dict) or "dim" not in data:
                _err(errors, path, "need dim plus per-basis action matrices")
                continue
            dim = int(data["dim"])
            entry["at"][x] = {"dim": dim}
            for side in sides:
                mats = data.get(side)
                if not isinstance(mats, list):
                    _err(errors, path + f".{side}", "need one matrix per algebra basis element")
                    continue
                for i, mat in enumerate(mats):
                    _check_matrix(errors, path + f".{side}[{i}]", mat, dim, dim)
                entry["at"][x][side] = mats
        for f, mat in (blk.get("maps") or {}).items():
            _check_matrix(errors, f"{key}.maps.{f}", mat)
            entry["maps"][f] = mat
        out[key] = entry

    mods = raw.get("modules")
    if mods is not None:
        if not isinstance(mods, dict):
            _err(errors, "modules", "expected a name -> module mapping")
        else:
            out["modules"] = {}
            for name, blk in mods.items():
                path = f"modules.{name}"
                if not isinstance(blk, dict):
                    _err(errors, path, "expected a mapping")
                    continue
                over = blk.get("over", "base")
                if over not in ("base", "gr-a", "gr-an"):
                    _err(errors, path + ".over", f"unknown category {over!r}")
                preset = blk.get("preset", "constant")
                if preset not in ("constant", "representable", "explicit"):
                    _err(errors, path + ".preset", f"unknown module preset {preset!r}")
                    continue
                entry = {"over": over, "preset": preset}
                if preset == "representable":
                    entry["at"] = blk.get("at")
                if preset == "explicit":
                    if over != "base":
                        _err(errors, path, "explicit modules are supported over 'base' only")
                    entry["dims"] = dict(blk.get("dims") or {})
                    entry["mats"] = {}
                    for f, mat in (blk.get("mats") or {}).items():
                        _check_matrix(errors, path + f".mats.{f}", mat)
                        entry["mats"][f] = mat
                out["modules"][name] = entry

    task = raw.get("task") or {}
    if not isinstance(task, dict):
        _err(errors, "task", "expected a mapping")
        task = {}
    command = task.get("command", "validate")
    if command not in COMMANDS:
        _err(errors, "task.command", f"unknown command {command!r}")
    caps = task.get("caps") or {}
    norm_task = {"command": command,
                 "caps": {"p": int(caps.get("p", 2)), "q": int(caps.get("q", 2)),
                          "n": int(caps.get("n", 2))}}
    for key in ("module", "modules", "category", "weight", "coefficients", "kind"):
        if key in task:
            norm_task[key] = task[key]
    out["task"] = norm_task
    if errors:
        raise InputError(errors)
    return ProblemSpec(out)


def emit(spec: ProblemSpec) -> str:
    """Canonical text form; emit(parse(emit(parse(t)))) == emit(parse(t))."""
    return yaml.safe_dump(spec.payload, sort_keys=True, default_flow_style=None)


# -- building ---------------------------------------------------------------------

@dataclass(eq=False)
class Built:
    field: FieldSpec
    coeff_field: FieldSpec
    category: FinCategory
    precosheaf: object = None
    bimodule: PrecosheafBimodule | None = None
    right_module: PrecosheafRightModule | None = None
    modules: dict = dfield(default_factory=dict)  # name -> (over, builder)
    task: dict = dfield(default_factory=dict)


def _build_field(block) -> FieldSpec:
    if block["kind"] == "rationals":
        return FieldSpec.rationals()
    return FieldSpec.prime(block["characteristic"])


def _build_category(block) -> FinCategory:
    if "preset" in block:
        preset = block["preset"]
        if preset == "trivial":
            return presets.trivial_category()
        if preset == "poset-a2":
            return presets.poset_a2()
        if preset == "discrete":
            return presets.discrete_category(block["count"])
        if preset == "cyclic-monoid":
            return presets.cyclic_monoid(block["size"], block["loop"])
        if preset == "one-object-group":
            return presets.one_object_group(block["order"])
        raise InputError([f"category.preset: unhandled preset {preset!r}"])
    mor = {m["id"]: (m["dom"], m["cod"]) for m in block["morphisms"]}
    compose = {(r["first"], r["then"]): r["equals"] for r in block["compose"]}
    return FinCategory(tuple(block["objects"]), mor, dict(block["identities"]),
                       compose, name="explicit")


def _build_algebra(block, k: FieldSpec) -> FDAlgebra:
    preset = block["preset"]
    if preset == "field":
        return field_algebra(k)
    if preset == "dual-numbers":
        return dual_numbers(k)
    if preset == "group-algebra":
        return group_algebra(block["orders"], k)
    if preset == "upper-triangular":
        return upper_triangular_algebra(block["size"], k)
    if preset == "field-product":
        return presets.field_product(k, block["count"])
    if preset == "explicit":
        dim = block["dim"]
        return FDAlgebra(field=k, dim=dim, structure=k.array(block["tensor"]),
                         unit=k.array(block["unit"]), name="explicit")
    raise InputError([f"algebra.preset: unhandled preset {preset!r}"])


def _explicit_system(built: Built, blk: dict, key: str):
    """Per-object modules plus morphism maps; identity maps default to eye."""
    k = built.field
    cat = built.category
    pre = built.precosheaf
    mods = {}
    for x in cat.objects:
        if x not in blk["at"]:
            raise InputError([f"{key}.at: no module at object {x!r}"])
        data = blk["at"][x]
        dim = data["dim"]
        alg = pre.at(x)
        def mats_of(side):
            mats = data.get(side)
            if mats is None or len(mats) != alg.dim:
                raise InputError([f"{key}.at.{x}.{side}: need {alg.dim} matrices"])
            return [k.array(m) for m in mats]
        if key == "bimodule":
            mods[x] = AlgModule(alg, dim, "bi", right_action=mats_of("right"),
                                left_action=mats_of("left"))
        else:
            mods[x] = AlgModule(alg, dim, "right", right_action=mats_of("right"))
    maps = {}
    for f, (x, y) in cat.mor.items():
        if f in blk["maps"]:
            maps[f] = k.array(blk["maps"][f])
        elif f == cat.identity[x] and x == y:
            maps[f] = k.eye(mods[x].dim)
        else:
            raise InputError([f"{key}.maps: no map at morphism {f!r}"])
    cls = PrecosheafBimodule if key == "bimodule" else PrecosheafRightModule
    return cls(pre, mods, maps, name="explicit")


def build(spec: ProblemSpec) -> Built:
    p = spec.payload
    k = _build_field(p["field"])
    kc = _build_field(p["coefficient_field"]) if "coefficient_field" in p else k
    cat = _build_category(p["category"])
    built = Built(field=k, coeff_field=kc, category=cat, task=dict(p["task"]))
    alg_block = p.get("algebra")
    if alg_block:
        if "constant" in alg_block:
            built.precosheaf = presets.constant_precosheaf(
                cat, _build_algebra(alg_block["constant"], k))
        else:
            algebras = {x: _build_algebra(blk, k) for x, blk in alg_block["at"].items()}
            missing = [x for x in cat.objects if x not in algebras]
            if missing:
                raise InputError([f"algebra.at: no algebra at object {missing[0]!r}"])
            edge_maps = {}
            for f, mat in alg_block["maps"].items():
                if f not in cat.mor:
                    raise InputError([f"algebra.maps.{f}: dangling morphism reference"])
                x, y = cat.mor[f]
                edge_maps[f] = AlgHom(algebras[x], algebras[y], k.array(mat))
            try:
                built.precosheaf = presets.precosheaf_from(cat, algebras, edge_maps)
            except ValueError as exc:
                raise InputError([f"algebra.maps: {exc}"])
    if "bimodule" in p:
        if built.precosheaf is None:
            raise InputError(["bimodule: needs an algebra block"])
        blk = p["bimodule"]
        if "preset" in blk:
            builder = (presets.regular_bimodule_system if blk["preset"] == "regular"
                       else presets.zero_bimodule_system)
            built.bimodule = builder(built.precosheaf)
        else:
            built.bimodule = _explicit_system(built, blk, "bimodule")
    if "right_module" in p:
        if built.precosheaf is None:
            raise InputError(["right_module: needs an algebra block"])
        blk = p["right_module"]
        if "preset" in blk:
            builder = (presets.regular_right_module_system
                       if blk["preset"] == "regular"
                       else presets.zero_right_module_system)
            built.right_module = builder(built.precosheaf)
        else:
            built.right_module = _explicit_system(built, blk, "right_module")
    built.modules = dict(p.get("modules") or {})
    return built


# -- running ---------------------------------------------------------------------

def _category_for(built: Built, over: str) -> FinCategory:
    if over == "base":
        return built.category
    if built.precosheaf is None:
        raise InputError([f"task: category '{over}' needs an algebra block"])
    if over == "gr-a":
        return constructions.gr_algebra(built.category, built.precosheaf)
    if over == "gr-an":
        if built.right_module is None:
            raise InputError(["task: category 'gr-an' needs a right_module block"])
        return constructions.gr_right_module(built.category, built.precosheaf,
                                             built.right_module)
    raise InputError([f"task: unknown category {over!r}"])


def _build_module(built: Built, name: str, cats: dict) -> CatModule:
    if name not in built.modules:
        raise InputError([f"task: dangling module reference {name!r}"])
    blk = built.modules[name]
    over = blk["over"]
    if over not in cats:
        cats[over] = _category_for(built, over)
    cat = cats[over]
    kc = built.coeff_field
    if blk["preset"] == "constant":
        return constant_module(cat, kc)
    if blk["preset"] == "representable":
        at = blk.get("at")
        if over != "base":
            raise InputError([f"modules.{name}: representable modules are supported "
                              "over 'base' only"])
        if at not in cat.objects:
            raise InputError([f"modules.{name}.at: dangling object reference {at!r}"])
        return representable_module(cat, kc, at)
    dims = blk["dims"]
    missing = [x for x in cat.objects if x not in dims]
    if missing:
        raise InputError([f"modules.{name}.dims: no dimension at object {missing[0]!r}"])
    mats = {}
    for f in cat.mor:
        if f not in blk["mats"]:
            raise InputError([f"modules.{name}.mats: no matrix at morphism {f!r}"])
        mats[f] = kc.array(blk["mats"][f])
    return CatModule(cat, kc, {x: int(dims[x]) for x in cat.objects}, mats, name=name)


def _validate_all(built: Built) -> Report:
    rep = Report()
    rep.extend(validate_category(built.category))
    if built.precosheaf is not None:
        rep.extend(validate_precosheaf(built.precosheaf))
        if built.bimodule is not None:
            rep.extend(validate_bimodule(built.bimodule))
        if built.right_module is not None:
            rep.extend(validate_right_module(built.right_module))
    cats: dict = {}
    if rep.ok:
        for name in built.modules:
            mod = _build_module(built, name, cats)
            sub = validate_cat_module(mod)
            for v in sub.violations:
                rep.add(v.code, f"module {name}: {v.message}", **v.witness)
    return rep


def _algebra_payload(alg: FDAlgebra) -> dict:
    entries = []
    k = alg.field
    for i in range(alg.dim):
        for j in range(alg.dim):
            for l in range(alg.dim):
                v = alg.structure[i, j, l]
                if v != 0:
                    entries.append([i, j, l, str(v)])
    return {"dim": alg.dim,
            "basis": [str(b) for b in alg.basis_labels],
            "unit": [str(v) for v in alg.unit],
            "products": entries}


def run(spec: ProblemSpec, command: str | None = None,
        caps: dict | None = None) -> tuple[dict, int]:
    """Execute the task; returns (report document, exit code)."""
    try:
        built = build(spec)
    except InputError as exc:
        return {"command": command or spec.payload["task"]["command"],
                "input_errors": exc.errors}, 2
    cmd = command or built.task["command"]
    caps_eff = dict(built.task["caps"])
    if caps:
        caps_eff.update({k2: v for k2, v in caps.items() if v is not None})
    doc: dict = {"command": cmd, "caps": caps_eff}
    try:
        if cmd == "validate":
            rep = _validate_all(built)
            doc["validation"] = rep.as_dict()
            return doc, 0 if rep.ok else 1

        rep = _validate_all(built)
        if not rep.ok:
            doc["validation"] = rep.as_dict()
            return doc, 1

        if cmd == "build-algebra":
            if built.precosheaf is None:
                raise InputError(["build-algebra: needs an algebra block"])
            if built.bimodule is not None:
                alg = constructions.extension_algebra(built.category, built.precosheaf,
                                                      built.bimodule)
                doc["kind"] = "extension-category-algebra"
            else:
                alg = constructions.skew_algebra(built.category, built.precosheaf)
                doc["kind"] = "skew-category-algebra"
            doc["algebra"] = _algebra_payload(alg)
            arep = validate_algebra(alg)
            doc["validation"] = arep.as_dict()
            return doc, 0 if arep.ok else 1

        if cmd == "check-theorem-a":
            if built.precosheaf is None or built.bimodule is None:
                raise InputError(["check-theorem-a: needs algebra and bimodule blocks"])
            checks = {}
            ok = True
            if len(built.category.mor) == 1:
                v = constructions.check_degeneration("trivial-ext", built.category,
                                                     built.precosheaf, built.bimodule)
                checks["trivial-extension-degeneration"] = v.as_dict()
                ok = ok and v.passed
            if all(built.bimodule.at(x).dim == 0 for x in built.category.objects):
                v = constructions.check_degeneration("skew", built.category,
                                                     built.precosheaf, built.bimodule)
                checks["skew-degeneration"] = v.as_dict()
                ok = ok and v.passed
            ext_alg = constructions.extension_algebra(built.category, built.precosheaf,
                                                      built.bimodule)
            arep = validate_algebra(ext_alg)
            checks["extension-algebra-axioms"] = arep.as_dict()
            ok = ok and arep.ok
            if built.field.is_prime_field:
                v = constructions.check_composition_antihom(built.category,
                                                            built.precosheaf,
                                                            built.bimodule, ext=ext_alg)
                checks["composition-antihomomorphism"] = v.as_dict()
                ok = ok and v.passed
            doc["checks"] = checks
            return doc, 0 if ok else 1

        if cmd == "check-extension":
            if built.precosheaf is None or built.right_module is None:
                raise InputError(["check-extension: needs algebra and right_module blocks"])
            ext = extcheck.fiber_extension(built.category, built.precosheaf,
                                           built.right_module)
            erep = extcheck.check_extension(ext)
            doc["sizes"] = {"kernel": len(ext.kernel.mor), "total": len(ext.total.mor),
                            "base": len(ext.base.mor)}
            doc["extension"] = erep.as_dict()
            return doc, 0 if erep.ok else 1

        if cmd == "cohomology":
            name = built.task.get("module")
            if not name:
                raise InputError(["task.module: cohomology needs a module name"])
            cats: dict = {}
            mod = _build_module(built, name, cats)
            n = caps_eff["n"]
            res_route = cohomology_dims(mod.cat, mod, n)
            nerve_route = nerve_cohomology_dims(mod.cat, mod, n)
            doc["dims"] = [int(v) for v in res_route]
            doc["nerve_dims"] = [int(v) for v in nerve_route]
            doc["routes_agree"] = res_route == nerve_route
            return doc, 0 if res_route == nerve_route else 1

        if cmd == "ext":
            names = built.task.get("modules")
            if not names or len(names) != 2:
                raise InputError(["task.modules: ext needs exactly two module names"])
            cats = {}
            gmod = _build_module(built, names[0], cats)
            fmod = _build_module(built, names[1], cats)
            if gmod.cat is not fmod.cat:
                raise InputError(["task.modules: ext modules must live over one category"])
            doc["dims"] = [int(v) for v in cat_ext_dims(gmod.cat, gmod, fmod,
                                                        caps_eff["n"])]
            return doc, 0

        if cmd == "lhs-report":
            if built.precosheaf is None or built.right_module is None:
                raise InputError(["lhs-report: needs algebra and right_module blocks"])
            wname = built.task.get("weight")
            fname = built.task.get("coefficients")
            cats = {}
            if wname:
                g = _build_module(built, wname, cats)
            else:
                g = constant_module(_category_for(built, "gr-a"), built.coeff_field)
            if fname:
                f = _build_module(built, fname, cats)
            else:
                f = constant_module(_category_for(built, "gr-an"), built.coeff_field)
            report = lhsengine.lhs_report(built.category, built.precosheaf,
                                          built.right_module, g, f,
                                          (caps_eff["p"], caps_eff["q"], caps_eff["n"]))
            doc["report"] = report.as_dict()
            return doc, 0 if report.ok else 1

        raise InputError([f"task.command: unhandled command {cmd!r}"])
    except InputError as exc:
        doc["input_errors"] = exc.errors
        return doc, 2
    except ValueError as exc:
        doc["input_errors"] = [str(exc)]
        return doc, 2


# -- rendering ---------------------------------------------------------------------

def render(doc: dict, fmt: str = "structured") -> str:
    if fmt == "structured":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    lines = [f"command: {doc.get('command')}"]
    if "input_errors" in doc:
        lines.append("input errors:")
        lines.extend(f"  - {e}" for e in doc["input_errors"])
        return "\n".join(lines) + "\n"
    if "validation" in doc:
        v = doc["validation"]
        lines.append(f"validation: {'ok' if v['ok'] else 'FAILED'}")
        for item in v["violations"]:
            w = ", ".join(f"{k}={val}" for k, val in sorted(item["witness"].items()))
            lines.append(f"  [{item['code']}] {item['message']}  ({w})")
    if "algebra" in doc:
        a = doc["algebra"]
        lines.append(f"kind: {doc.get('kind')}")
        lines.append(f"dim: {a['dim']}")
        lines.append("unit: " + " ".join(a["unit"]))
        lines.append("nonzero products (i j -> l : coeff):")
        for i, j, l, cval in a["products"]:
            lines.append(f"  {i} {j} -> {l} : {cval}")
    if "checks" in doc:
        for name, chk in sorted(doc["checks"].items()):
            if "passed" in chk:
                status = "pass" if chk["passed"] else "FAIL"
                extra = f" ({chk.get('detail', '')})" if chk.get("detail") else ""
            else:
                status = "pass" if chk["ok"] else "FAIL"
                extra = ""
            lines.append(f"{name}: {status}{extra}")
    if "sizes" in doc:
        s = doc["sizes"]
        lines.append(f"kernel/total/base morphisms: {s['kernel']}/{s['total']}/{s['base']}")
    if "extension" in doc:
        e = doc["extension"]
        lines.append(f"extension axioms: {'ok' if e['ok'] else 'FAILED'}")
        for item in e["violations"]:
            w = ", ".join(f"{k}={val}" for k, val in sorted(item["witness"].items()))
            lines.append(f"  [{item['code']}] {item['message']}  ({w})")
    if "dims" in doc:
        lines.append("dims: " + " ".join(str(v) for v in doc["dims"]))
    if "nerve_dims" in doc:
        lines.append("nerve dims: " + " ".join(str(v) for v in doc["nerve_dims"]))
        lines.append(f"routes agree: {doc['routes_agree']}")
    if "report" in doc:
        r = doc["report"]
        caps = r["caps"]
        lines.append(f"caps: p<={caps['p']} q<={caps['q']} n<={caps['n']}")
        lines.append("E2 page (rows q, columns p):")
        for q in range(caps["q"], -1, -1):
            row = [str(r["e2"].get(f"{p},{q}", 0)) for p in range(caps["p"] + 1)]
            lines.append(f"  q={q}: " + " ".join(row))
        lines.append("abutment: " + " ".join(str(v) for v in r["abutment"]))
        lines.append("verdicts: " + " ".join(r["verdicts"]))
        lines.append(f"collapse: {r['collapse']}   ok: {r['ok']}")
    return "\n".join(lines) + "\n"
