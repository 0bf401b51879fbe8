"""Relative degree-bound calculus for the minimal separating degree.

Consumes declarative structural facts about a finite group (order, element
orders, subgroup entries, coprime non-cyclic subquotients) and derives the
best upper and lower bounds obtainable from:

  * the group-order ceiling,
  * exact values for the covered families (cyclic groups, p-groups in
    characteristic p, dihedral groups of order 2p^r in odd characteristic p,
    and the order-6 symmetric group in characteristic 2),
  * index multiplicativity over a subgroup,
  * quotient multiplicativity over a normal subgroup,
  * the 3/4 (s even) and 5/8 (s odd) fractions for groups with a non-cyclic
    subquotient of order s coprime to the characteristic,
  * the maximal element order and the characteristic-part of |G| as lower
    bounds.

Every bound carries a replayable certificate chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from typing import List, Optional, Sequence, Tuple

from .fields import is_prime


class DescriptorError(ValueError):
    """Structurally inconsistent group descriptor."""


@dataclass(frozen=True)
class SubquotientFact:
    """A subquotient H/N that is non-cyclic of order s coprime to the
    characteristic (s > 1)."""

    s: int


@dataclass(frozen=True)
class SubgroupFact:
    """Declared facts about one subgroup H of the group."""

    order: int
    index: int
    normal: bool = False
    cyclic: bool = False
    p_group: bool = False
    descriptor: Optional["GroupDescriptor"] = None       # structure of H itself
    quotient: Optional["GroupDescriptor"] = None         # structure of G/H (normal only)
    name: str = ""


@dataclass(frozen=True)
class GroupDescriptor:
    """Declarative structural facts about a finite group over a field of the
    given characteristic."""

    order: int
    char: int
    name: str = ""
    cyclic: bool = False
    p_group: bool = False
    symmetric: Optional[int] = None      # the group is S_k
    dihedral_n: Optional[int] = None     # the group is D_{2n}
    max_element_order: Optional[int] = None
    subgroups: Tuple[SubgroupFact, ...] = ()
    subquotients: Tuple[SubquotientFact, ...] = ()

    def __post_init__(self):
        if self.order < 1:
            raise DescriptorError("group order must be positive")
        if self.char and not is_prime(self.char):
            raise DescriptorError("characteristic must be zero or a prime")
        for h in self.subgroups:
            if h.order * h.index != self.order:
                raise DescriptorError(
                    f"subgroup order {h.order} times index {h.index} is not |G| = {self.order}")
            if h.quotient is not None and not h.normal:
                raise DescriptorError("quotient structure requires a normal subgroup")
            if h.quotient is not None and h.quotient.order != h.index:
                raise DescriptorError("quotient order must equal the subgroup index")
            if h.descriptor is not None and h.descriptor.order != h.order:
                raise DescriptorError("nested subgroup descriptor order mismatch")
        if self.p_group and not _is_prime_power(self.order):
            raise DescriptorError("a p-group must have prime-power order")
        if self.max_element_order is not None and self.max_element_order > self.order:
            raise DescriptorError("maximal element order cannot exceed the group order")
        for sq in self.subquotients:
            if sq.s <= 1:
                raise DescriptorError("subquotient order must exceed 1")
            if self.char and sq.s % self.char == 0:
                raise DescriptorError("subquotient order must be coprime to the characteristic")


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1 and is_prime(p)
    return False


def _char_part(order: int, char: int) -> int:
    part = 1
    while char and order % char == 0:
        part *= char
        order //= char
    return part


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainStep:
    rule: str
    inputs: Tuple[Tuple[str, int], ...]
    output: int

    def to_json(self) -> dict:
        return {"rule": self.rule, "ref": RULE_REFS.get(self.rule, self.rule),
                "inputs": dict(self.inputs), "output": self.output}


@dataclass(frozen=True)
class BoundCertificate:
    value: int
    direction: str                      # "upper" | "lower"
    chain: Tuple[ChainStep, ...]

    def to_json(self) -> dict:
        return {"value": self.value, "direction": self.direction,
                "chain": [s.to_json() for s in self.chain]}


RULE_REFS = {
    "order-ceiling": "separating degree never exceeds the group order",
    "cyclic-exact": "cyclic groups attain their order",
    "p-group-exact": "p-groups in characteristic p attain their order",
    "dihedral-exact": "dihedral groups of order 2p^r in odd characteristic p attain 2p^r",
    "symmetric3-char2-exact": "the order-6 symmetric group in characteristic 2 attains 4",
    "index-multiplicativity": "bound(G) <= [G:H] * bound(H)",
    "quotient-multiplicativity": "bound(G) <= bound(G/H) * bound(H) for normal H",
    "coprime-subquotient-even": "non-cyclic coprime subquotient of even order: <= 3|G|/4",
    "coprime-subquotient-odd": "non-cyclic coprime subquotient of odd order: <= 5|G|/8",
    "max-element-order": "bound(G) >= the maximal element order",
    "char-part": "bound(G) >= the characteristic-part of |G|",
    "subgroup-lower": "bound(G) >= bound(H) for any subgroup H",
    "trivial-lower": "bound(G) >= 1",
}

_RULE_ARITH = {
    "order-ceiling": lambda i: i["order"],
    "cyclic-exact": lambda i: i["order"],
    "p-group-exact": lambda i: i["order"],
    "dihedral-exact": lambda i: i["order"],
    "symmetric3-char2-exact": lambda i: 4,
    "index-multiplicativity": lambda i: i["index"] * i["subgroup_bound"],
    "quotient-multiplicativity": lambda i: i["quotient_bound"] * i["subgroup_bound"],
    "coprime-subquotient-even": lambda i: (3 * i["order"]) // 4,
    "coprime-subquotient-odd": lambda i: (5 * i["order"]) // 8,
    "max-element-order": lambda i: i["max_element_order"],
    "char-part": lambda i: i["char_part"],
    "subgroup-lower": lambda i: i["subgroup_bound"],
    "trivial-lower": lambda i: 1,
}


def replay_chain(chain: Sequence[ChainStep]) -> int:
    """Recompute every step's arithmetic; returns the final value.

    Raises ValueError when any step's recorded output disagrees with the
    rule's arithmetic on its recorded inputs."""
    if not chain:
        raise ValueError("empty certificate chain")
    for step in chain:
        arith = _RULE_ARITH.get(step.rule)
        if arith is None:
            raise ValueError(f"unknown rule {step.rule!r}")
        expected = arith(dict(step.inputs))
        if expected != step.output:
            raise ValueError(
                f"chain step {step.rule} recomputes to {expected}, recorded {step.output}")
    return chain[-1].output


def _step(rule: str, output: int, **inputs: int) -> ChainStep:
    return ChainStep(rule, tuple(sorted(inputs.items())), output)


# ---------------------------------------------------------------------------
# Exact family lookup
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExactValue:
    value: int
    rule: str


def exact_value_lookup(desc: GroupDescriptor) -> Optional[ExactValue]:
    """Exact separating degree when the descriptor matches a covered family."""
    if desc.symmetric == 3 and desc.char == 2:
        return ExactValue(4, "symmetric3-char2-exact")
    if desc.cyclic:
        return ExactValue(desc.order, "cyclic-exact")
    if desc.p_group and desc.char > 1 and _char_part(desc.order, desc.char) == desc.order:
        return ExactValue(desc.order, "p-group-exact")
    if desc.dihedral_n is not None:
        n = desc.dihedral_n
        if desc.char > 2 and desc.char % 2 == 1 and _char_part(n, desc.char) == n:
            return ExactValue(2 * n, "dihedral-exact")
        if desc.char == 2 and _char_part(2 * n, 2) == 2 * n:
            # a dihedral 2-group in characteristic 2
            return ExactValue(2 * n, "p-group-exact")
    return None


# ---------------------------------------------------------------------------
# Rule search
# ---------------------------------------------------------------------------

def _subgroup_descriptor(h: SubgroupFact, char: int) -> GroupDescriptor:
    if h.descriptor is not None:
        return h.descriptor
    return GroupDescriptor(order=h.order, char=char, cyclic=h.cyclic,
                           p_group=h.p_group, name=h.name)


def _best_upper(desc: GroupDescriptor, depth: int) -> Tuple[int, Tuple[ChainStep, ...]]:
    candidates: List[Tuple[int, Tuple[ChainStep, ...]]] = [
        (desc.order, (_step("order-ceiling", desc.order, order=desc.order),))]
    exact = exact_value_lookup(desc)
    if exact is not None:
        candidates.append((exact.value, (_step(exact.rule, exact.value, order=desc.order),)))
    for sq in desc.subquotients:
        if sq.s % 2 == 0:
            val = (3 * desc.order) // 4
            candidates.append((val, (_step("coprime-subquotient-even", val,
                                           order=desc.order, s=sq.s),)))
        else:
            val = (5 * desc.order) // 8
            candidates.append((val, (_step("coprime-subquotient-odd", val,
                                           order=desc.order, s=sq.s),)))
    if depth > 0:
        for h in desc.subgroups:
            h_desc = _subgroup_descriptor(h, desc.char)
            h_val, h_chain = _best_upper(h_desc, depth - 1)
            candidates.append((h.index * h_val, h_chain + (
                _step("index-multiplicativity", h.index * h_val,
                      index=h.index, subgroup_bound=h_val),)))
            if h.normal and h.quotient is not None:
                q_val, q_chain = _best_upper(h.quotient, depth - 1)
                candidates.append((q_val * h_val, h_chain + q_chain + (
                    _step("quotient-multiplicativity", q_val * h_val,
                          quotient_bound=q_val, subgroup_bound=h_val),)))
    return min(candidates, key=lambda c: (c[0], len(c[1])))


def _best_lower(desc: GroupDescriptor, depth: int) -> Tuple[int, Tuple[ChainStep, ...]]:
    candidates: List[Tuple[int, Tuple[ChainStep, ...]]] = [
        (1, (_step("trivial-lower", 1),))]
    exact = exact_value_lookup(desc)
    if exact is not None:
        candidates.append((exact.value, (_step(exact.rule, exact.value, order=desc.order),)))
    if desc.max_element_order is not None:
        candidates.append((desc.max_element_order,
                           (_step("max-element-order", desc.max_element_order,
                                  max_element_order=desc.max_element_order),)))
    if desc.char > 1:
        part = _char_part(desc.order, desc.char)
        if part > 1:
            candidates.append((part, (_step("char-part", part,
                                            order=desc.order, char_part=part),)))
    if depth > 0:
        for h in desc.subgroups:
            h_desc = _subgroup_descriptor(h, desc.char)
            h_val, h_chain = _best_lower(h_desc, depth - 1)
            if h_val > 1:
                candidates.append((h_val, h_chain + (
                    _step("subgroup-lower", h_val, subgroup_bound=h_val),)))
    return max(candidates, key=lambda c: (c[0], -len(c[1])))


def apply_rules(desc: GroupDescriptor) -> Tuple[BoundCertificate, BoundCertificate]:
    """Best derivable (upper, lower) certificates for the descriptor.

    The rule-composition depth is capped at the number of declared subgroup
    entries plus two; chains at that depth are exhausted."""
    depth = len(desc.subgroups) + 2
    up_val, up_chain = _best_upper(desc, depth)
    lo_val, lo_chain = _best_lower(desc, depth)
    upper = BoundCertificate(up_val, "upper", up_chain)
    lower = BoundCertificate(lo_val, "lower", lo_chain)
    if lo_val > up_val:
        raise DescriptorError(
            f"inconsistent descriptor: derived lower {lo_val} exceeds upper {up_val}")
    return upper, lower


# ---------------------------------------------------------------------------
# Auto-extraction from an enumerated matrix group
# ---------------------------------------------------------------------------

def descriptor_from_group(group, char: int, name: str = "",
                          subgroup_generator_sets: Sequence[Sequence] = ()) -> GroupDescriptor:
    """Extract declarative facts from a small enumerated matrix group
    (|G| <= 24): order, maximal element order, cyclic and p-group flags, and
    order/index/normality facts for each supplied subgroup generator set."""
    from .reps import element_orders, is_normal, subgroup_closure

    if group.order > 24:
        raise DescriptorError("automatic extraction is limited to groups of order <= 24")
    orders = element_orders(group)
    max_ord = max(orders)
    subs = []
    for gens in subgroup_generator_sets:
        h_elements = subgroup_closure(group, gens)
        h_order = len(h_elements)
        if group.order % h_order:
            raise DescriptorError("subgroup order does not divide the group order")
        subs.append(SubgroupFact(
            order=h_order,
            index=group.order // h_order,
            normal=is_normal(group, h_elements),
            cyclic=max(element_orders_of(group, h_elements)) == h_order,
            p_group=_is_prime_power(h_order)))
    return GroupDescriptor(
        order=group.order, char=char, name=name,
        cyclic=max_ord == group.order,
        p_group=_is_prime_power(group.order),
        max_element_order=max_ord,
        subgroups=tuple(subs))


def element_orders_of(group, elements) -> List[int]:
    from .linalg import mat_mul

    ident = group.identity()
    out = []
    for g in elements:
        power = g
        n = 1
        while power != ident:
            power = mat_mul(power, g, group.field)
            n += 1
        out.append(n)
    return out
