"""JSON configuration schemas for fields, modules, and group descriptors.

Every config file carries `"schema": 1`.  Field configs look like
{"p": 2, "k": 2} with an optional explicit "modulus" (coefficients
low-to-high); an omitted modulus means the deterministic default, and p = 0
selects the rationals.  Scalars serialize as ints (prime subfield), "a/b"
strings (char 0), or coefficient lists (proper extensions).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .bounds import GroupDescriptor, SubgroupFact, SubquotientFact
from .fields import FieldConstructionError, FieldSpec, Scalar
from .linalg import mat_from_rows
from .reps import (GroupElements, ParametricAction, Representation,
                   cyclic_module, dihedral_module, dual_sym_module,
                   enumerate_group, induced_module, permutation_module,
                   regular_representation, right_cosets, subgroup_closure,
                   torus_module, twist_pair_module, SubgroupAction)

SCHEMA_VERSION = 1

DEFAULT_GROUP_CAP = 10000


class ConfigError(ValueError):
    """Malformed or inconsistent configuration data."""


def _require(cfg: dict, key: str, context: str):
    if key not in cfg:
        raise ConfigError(f"{context}: missing required key {key!r}")
    return cfg[key]


def check_schema(cfg: dict, context: str):
    version = _require(cfg, "schema", context)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"{context}: unsupported schema version {version!r}")


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}")


# ---------------------------------------------------------------------------
# Fields and scalars
# ---------------------------------------------------------------------------

def field_from_config(cfg: dict) -> FieldSpec:
    if not isinstance(cfg, dict):
        raise ConfigError("field config must be an object")
    p = cfg.get("p")
    if not isinstance(p, int) or p < 0:
        raise ConfigError("field config needs a nonnegative integer 'p'")
    k = cfg.get("k", 1)
    modulus = cfg.get("modulus")
    try:
        return FieldSpec.get(p, k, tuple(modulus) if modulus is not None else None)
    except FieldConstructionError as exc:
        raise ConfigError(f"invalid field config: {exc}")


def field_to_config(field: FieldSpec) -> dict:
    out = {"p": field.p, "k": field.k}
    if field.modulus is not None:
        out["modulus"] = list(field.modulus)
    return out


def scalar_from_json(value, field: FieldSpec) -> Scalar:
    if isinstance(value, bool):
        raise ConfigError("booleans are not scalars")
    if isinstance(value, int):
        return field.scalar(value)
    if isinstance(value, str):
        try:
            num, _, den = value.partition("/")
            frac = Fraction(int(num), int(den)) if den else Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"cannot parse scalar {value!r}")
        return field.scalar(frac)
    if isinstance(value, list):
        if field.p == 0:
            raise ConfigError("coefficient lists only encode finite-field scalars")
        return field.from_coeffs(value)
    raise ConfigError(f"cannot parse scalar {value!r}")


def scalar_to_json(x: Scalar):
    f = x.field
    if f.p == 0:
        frac: Fraction = x.rep
        return int(frac) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"
    if f.k == 1:
        return x.rep
    return list(f.coeffs(x))


def point_from_json(values: Sequence, field: FieldSpec) -> Tuple[Scalar, ...]:
    return tuple(scalar_from_json(v, field) for v in values)


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------

@dataclass
class ModuleHandle:
    """A loaded module: either a finite matrix group with its enumeration, or
    a parametric (additive/torus) action."""

    kind: str                                   # "finite" | "parametric"
    field: FieldSpec
    rep: Optional[Representation] = None
    group: Optional[GroupElements] = None
    action: Optional[ParametricAction] = None
    label: str = ""

    @property
    def dim(self) -> int:
        return self.rep.dim if self.rep is not None else self.action.dim


def module_from_config(cfg: dict, cap: int = DEFAULT_GROUP_CAP,
                       top_level: bool = True) -> ModuleHandle:
    if not isinstance(cfg, dict):
        raise ConfigError("module config must be an object")
    if top_level:
        check_schema(cfg, "module config")
    mtype = _require(cfg, "type", "module config")
    field = field_from_config(_require(cfg, "field", "module config"))
    params = cfg.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("module params must be an object")

    if mtype == "cyclic":
        rep = cyclic_module(_int_param(params, "r"), _int_param(params, "p"),
                            _int_param(params, "k"), field)
    elif mtype == "dihedral":
        rep = dihedral_module(_int_param(params, "p"), _int_param(params, "r"), field)
    elif mtype == "permutation":
        n = _int_param(params, "n")
        gens = _require(params, "generators", "permutation module")
        rep = permutation_module(field, n, gens)
    elif mtype == "matrix":
        n = _int_param(params, "n")
        gens_cfg = _require(params, "generators", "matrix module")
        gens = []
        for g in gens_cfg:
            if len(g) != n * n:
                raise ConfigError(f"matrix generator needs {n * n} row-major entries")
            rows = [[scalar_from_json(g[i * n + j], field) for j in range(n)]
                    for i in range(n)]
            gens.append(mat_from_rows(rows))
        rep = Representation(field, n, tuple(gens), label="matrix")
    elif mtype == "regular":
        inner_cfg = _require(params, "of", "regular module")
        inner = module_from_config({**inner_cfg, "field": inner_cfg.get("field", field_to_config(field))},
                                   cap, top_level=False)
        if inner.kind != "finite":
            raise ConfigError("regular modules require a finite inner module")
        rep = regular_representation(inner.group, label=f"regular({inner.label})")
    elif mtype == "induced":
        inner_cfg = _require(params, "group", "induced module")
        inner = module_from_config({**inner_cfg, "field": inner_cfg.get("field", field_to_config(field))},
                                   cap, top_level=False)
        if inner.kind != "finite":
            raise ConfigError("induced modules require a finite ambient group")
        idx = params.get("subgroup_generator_indices", [])
        try:
            h_gens = [inner.group.elements[i] for i in idx]
        except (IndexError, TypeError):
            raise ConfigError("subgroup_generator_indices must index enumerated elements")
        h_elements = subgroup_closure(inner.group, h_gens)
        cosets = right_cosets(inner.group, h_elements)
        block = params.get("block", "trivial")
        if block == "trivial":
            sub = SubgroupAction.trivial(h_elements, field)
        elif block == "restriction":
            sub = SubgroupAction.restriction(h_elements, field)
        else:
            raise ConfigError("induced block must be 'trivial' or 'restriction'")
        induced = induced_module(sub, inner.group, cosets)
        rep = induced.rep
    elif mtype == "additive":
        family = _require(params, "family", "additive module")
        n = _int_param(params, "n")
        if family == "twist-pair":
            action = twist_pair_module(field, n)
        elif family == "dual-sym":
            action = dual_sym_module(field, n)
        else:
            raise ConfigError(f"unknown additive family {family!r}")
        return ModuleHandle("parametric", field, action=action, label=action.label)
    elif mtype == "torus":
        weights = _require(params, "weights", "torus module")
        action = torus_module(weights, field)
        return ModuleHandle("parametric", field, action=action, label=action.label)
    else:
        raise ConfigError(f"unknown module type {mtype!r}")

    try:
        group = enumerate_group(rep, cap)
    except Exception as exc:
        from .reps import GroupCapExceededError
        if isinstance(exc, GroupCapExceededError):
            raise
        raise ConfigError(f"module enumeration failed: {exc}")
    return ModuleHandle("finite", field, rep=rep, group=group,
                        label=rep.label or mtype)


def _int_param(params: dict, key: str) -> int:
    value = _require(params, key, "module params")
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"param {key!r} must be an integer")
    return value


# ---------------------------------------------------------------------------
# Group descriptors
# ---------------------------------------------------------------------------

def descriptor_from_config(cfg: dict, top_level: bool = True) -> GroupDescriptor:
    if not isinstance(cfg, dict):
        raise ConfigError("descriptor must be an object")
    if top_level:
        check_schema(cfg, "descriptor config")
    try:
        subgroups = []
        for h in cfg.get("subgroups", []):
            subgroups.append(SubgroupFact(
                order=_require(h, "order", "subgroup fact"),
                index=_require(h, "index", "subgroup fact"),
                normal=h.get("normal", False),
                cyclic=h.get("cyclic", False),
                p_group=h.get("p_group", False),
                descriptor=(descriptor_from_config(h["descriptor"], top_level=False)
                            if h.get("descriptor") else None),
                quotient=(descriptor_from_config(h["quotient"], top_level=False)
                          if h.get("quotient") else None),
                name=h.get("name", "")))
        subquotients = tuple(SubquotientFact(s=_require(sq, "s", "subquotient fact"))
                             for sq in cfg.get("subquotients", []))
        return GroupDescriptor(
            order=_require(cfg, "order", "descriptor"),
            char=_require(cfg, "char", "descriptor"),
            name=cfg.get("name", ""),
            cyclic=cfg.get("cyclic", False),
            p_group=cfg.get("p_group", False),
            symmetric=cfg.get("symmetric"),
            dihedral_n=cfg.get("dihedral_n"),
            max_element_order=cfg.get("max_element_order"),
            subgroups=tuple(subgroups),
            subquotients=subquotients)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid descriptor: {exc}")
