"""Congruence-class level trees for v_2(S(n, k)).

For fixed k the residue class C_{m,j} = {2^m i + j >= k} splits into
C_{m+1,j} and C_{m+1,j+2^m}. A class is constant when v_2(S(n,k)) takes one
value on all of its members. Starting from the two classes modulo 2, the
non-constant classes are split level by level; the non-constant classes
modulo 2^m form the m-level.

For k = 5 constancy is decided exactly from the periodic closed form modulo
2^M. For other k it is decided empirically from the first few members.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from .exact import StirlingRowPair, vp
from .padic import (
    DEFAULT_PRECISION_CAP,
    PrecisionExceeded,
    s5_numerator_mod,
    v2_stirling5,
)

CONSTANT = "constant"
NONCONSTANT = "nonconstant"
UNDETERMINED = "undetermined"
EXACT = "exact"
EMPIRICAL = "empirical"


class PolicyMismatch(ValueError):
    pass


class OutOfRange(IndexError):
    pass


@dataclass(frozen=True, order=True)
class ClassId:
    k: int
    m: int
    j: int

    def __post_init__(self):
        if self.m < 0 or not 0 <= self.j < (1 << self.m):
            raise ValueError(f"invalid class C_{{{self.m},{self.j}}}")

    @property
    def label(self) -> str:
        return f"C_{{{self.m},{self.j}}}"

    @property
    def modulus(self) -> int:
        return 1 << self.m

    def first_member(self) -> int:
        if self.j >= self.k:
            return self.j
        steps = -(-(self.k - self.j) // self.modulus)
        return self.j + steps * self.modulus

    def contains(self, n: int) -> bool:
        return n >= self.k and n % self.modulus == self.j

    def children(self) -> tuple[ClassId, ClassId]:
        return (
            ClassId(self.k, self.m + 1, self.j),
            ClassId(self.k, self.m + 1, self.j + self.modulus),
        )


def class_members(cid: ClassId, count: int) -> list[int]:
    """The first ``count`` members of the class, ascending."""
    start = cid.first_member()
    return [start + i * cid.modulus for i in range(count)]


@dataclass(frozen=True)
class ClassStatus:
    kind: str
    certainty: str
    value: int | None = None  # the constant, or the sample bound when undetermined
    witnesses: tuple[int, int] | None = None

    @classmethod
    def constant(cls, c: int, certainty: str) -> ClassStatus:
        return cls(CONSTANT, certainty, value=c)

    @classmethod
    def nonconstant(cls, lo: int, hi: int, certainty: str) -> ClassStatus:
        return cls(NONCONSTANT, certainty, witnesses=(lo, hi))

    @classmethod
    def undetermined(cls, bound: int) -> ClassStatus:
        return cls(UNDETERMINED, EMPIRICAL, value=bound)

    @property
    def is_constant(self) -> bool:
        return self.kind == CONSTANT

    @property
    def is_nonconstant(self) -> bool:
        return self.kind == NONCONSTANT

    def describe(self) -> str:
        suffix = "" if self.certainty == EXACT else " (empirical)"
        if self.kind == CONSTANT:
            return f"const {self.value}{suffix}"
        if self.kind == NONCONSTANT:
            lo, hi = self.witnesses
            return f"nonconstant [{lo}, {hi}]{suffix}"
        return f"undetermined after {self.value} samples"


@dataclass(frozen=True)
class ExactPeriodic:
    """Exact classification for k = 5 from the closed form modulo 2^M."""

    cap: int = DEFAULT_PRECISION_CAP


@dataclass(frozen=True)
class Sampled:
    """Empirical classification from the first ``sample_count`` members.

    Agreeing samples only count as constant when there are at least
    ``minimum`` of them; otherwise the class is left undetermined.
    """

    sample_count: int = 64
    minimum: int = 16

    def __post_init__(self):
        if self.sample_count < 2:
            raise ValueError("sample_count must be >= 2")


ClassifyPolicy = Union[ExactPeriodic, Sampled]


class ValuationColumn:
    """Lazily extended list of exact v_2(S(n, k)) for n = 0, 1, 2, ..."""

    def __init__(self, k: int):
        self.k = k
        self._rows = StirlingRowPair(k)
        self._vals = [vp(self._rows.row_n[k], 2)]

    def __getitem__(self, n: int):
        while len(self._vals) <= n:
            self._vals.append(vp(self._rows.advance()[self.k], 2))
        return self._vals[n]


def _witness_pair(cid: ClassId, valuation) -> tuple[int, int]:
    # lexicographically smallest: the first member paired with the first
    # member whose valuation differs from it
    first = cid.first_member()
    v_first = valuation(first)
    n = first + cid.modulus
    while valuation(n) == v_first:
        n += cid.modulus
    return first, n


def _classify_exact(cid: ClassId, cap: int) -> ClassStatus:
    """Decide constancy of C_{m,j} for k = 5 exactly.

    At precision M >= m + 2 the numerator modulo 2^M is periodic with period
    2^(M-2) for n >= M, so one period of class members decides every
    member >= M. Members below M are evaluated individually. A zero residue
    only says v_2 >= M - 3, so M is raised until the question is settled.
    """
    step = cid.modulus
    first = cid.first_member()
    M = cid.m + 2
    while M <= cap:
        values = set()
        n = first
        while n < M:
            values.add(v2_stirling5(n, cap))
            n += step
        unresolved = False
        period = 1 << (M - 2)
        for t in range(period // step):
            res = s5_numerator_mod(n + t * step, M)
            if res.value:
                values.add(res.valuation() - 3)
            else:
                unresolved = True
        if len(values) > 1 or (values and unresolved):
            lo, hi = _witness_pair(cid, lambda x: v2_stirling5(x, cap))
            return ClassStatus.nonconstant(lo, hi, EXACT)
        if values:
            return ClassStatus.constant(values.pop(), EXACT)
        M += 1
    raise PrecisionExceeded(first, cap)


def _classify_sampled(cid: ClassId, policy: Sampled, column: ValuationColumn) -> ClassStatus:
    members = class_members(cid, policy.sample_count)
    vals = [column[n] for n in members]
    for n, v in zip(members, vals):
        if v != vals[0]:
            return ClassStatus.nonconstant(members[0], n, EMPIRICAL)
    if policy.sample_count < policy.minimum:
        return ClassStatus.undetermined(policy.sample_count)
    return ClassStatus.constant(vals[0], EMPIRICAL)


def classify(
    cid: ClassId, policy: ClassifyPolicy, column: ValuationColumn | None = None
) -> ClassStatus:
    if isinstance(policy, ExactPeriodic):
        if cid.k != 5:
            raise PolicyMismatch(f"exact periodic classification needs k = 5, got k = {cid.k}")
        return _classify_exact(cid, policy.cap)
    if column is None:
        column = ValuationColumn(cid.k)
    return _classify_sampled(cid, policy, column)


@dataclass
class LevelTree:
    k: int
    max_level: int
    nodes: dict[ClassId, ClassStatus] = field(default_factory=dict)
    levels: dict[int, list[ClassId]] = field(default_factory=dict)
    root_level: int = 1

    def children(self, cid: ClassId) -> tuple[ClassId, ClassId] | None:
        if self.nodes[cid].is_nonconstant and cid.m < self.max_level:
            return cid.children()
        return None

    def sorted_nodes(self) -> list[tuple[ClassId, ClassStatus]]:
        return sorted(self.nodes.items())


def build_level_tree(k: int, max_level: int, policy: ClassifyPolicy) -> LevelTree:
    if k < 1:
        raise ValueError("k must be >= 1")
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    if isinstance(policy, ExactPeriodic) and k != 5:
        raise PolicyMismatch(f"exact periodic classification needs k = 5, got k = {k}")
    column = ValuationColumn(k) if isinstance(policy, Sampled) else None
    tree = LevelTree(k, max_level)
    frontier = [ClassId(k, 1, 0), ClassId(k, 1, 1)]
    for m in range(1, max_level + 1):
        for cid in frontier:
            tree.nodes[cid] = classify(cid, policy, column)
        level = sorted((c for c in frontier if tree.nodes[c].is_nonconstant), key=lambda c: c.j)
        tree.levels[m] = level
        frontier = sorted((ch for c in level for ch in c.children()), key=lambda c: c.j)
    return tree


def m_level(tree: LevelTree, m: int) -> list[ClassId]:
    if m not in tree.levels:
        raise OutOfRange(f"level {m} not built (tree has levels 1..{tree.max_level})")
    return list(tree.levels[m])


def to_dot(tree: LevelTree) -> str:
    lines = [f"digraph level_tree_k{tree.k} {{", "  node [shape=box];"]
    for cid, status in tree.sorted_nodes():
        lines.append(f'  "{cid.label}" [label="{cid.label}: {status.describe()}"];')
    for cid, _ in tree.sorted_nodes():
        kids = tree.children(cid)
        if kids:
            for ch in kids:
                lines.append(f'  "{cid.label}" -> "{ch.label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(tree: LevelTree) -> str:
    nodes = []
    for cid, status in tree.sorted_nodes():
        kids = tree.children(cid)
        nodes.append({
            "m": cid.m,
            "j": cid.j,
            "status": status.kind,
            "value": status.value,
            "certainty": status.certainty,
            "witnesses": list(status.witnesses) if status.witnesses else None,
            "children": [[c.m, c.j] for c in kids] if kids else None,
        })
    doc = {"k": tree.k, "max_level": tree.max_level, "nodes": nodes}
    return json.dumps(doc, indent=2) + "\n"


def from_json(text: str) -> LevelTree:
    doc = json.loads(text)
    k = doc["k"]
    tree = LevelTree(k, doc["max_level"])
    for node in doc["nodes"]:
        cid = ClassId(k, node["m"], node["j"])
        wit = tuple(node["witnesses"]) if node["witnesses"] is not None else None
        tree.nodes[cid] = ClassStatus(node["status"], node["certainty"], node["value"], wit)
    for m in range(1, tree.max_level + 1):
        tree.levels[m] = sorted(
            (c for c, s in tree.nodes.items() if c.m == m and s.is_nonconstant),
            key=lambda c: c.j,
        )
    return tree


def export_tree(tree: LevelTree, fmt: str) -> str:
    fmt = fmt.lower()
    if fmt == "dot":
        return to_dot(tree)
    if fmt == "json":
        return to_json(tree)
    raise ValueError(f"unknown tree format {fmt!r}")


def level_summary(tree: LevelTree) -> str:
    rows = [f"{'m':>3}  {'classes':>7}  {'constant':>8}  level"]
    for m in range(1, tree.max_level + 1):
        at_m = [(c, s) for c, s in tree.sorted_nodes() if c.m == m]
        n_const = sum(s.is_constant for _, s in at_m)
        level = ", ".join(c.label for c in tree.levels.get(m, [])) or "-"
        rows.append(f"{m:>3}  {len(at_m):>7}  {n_const:>8}  {level}")
    return "\n".join(rows) + "\n"
