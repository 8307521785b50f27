"""Explicit finite posets and lattices with verified axioms.

Order relations are stored as full reflexive-transitive closures, one
bit-packed row per element, so order queries are O(1) word operations.
Meet/join tables are materialized on lattice construction and every
``meet_of_set``/``join_of_set`` answer is re-verified against the
universal property read off the order matrix; a corrupted table entry
can therefore never produce a silently wrong answer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bitset import bits, contains, full_mask, subsets
from .errors import (
    CycleDetected,
    LatticeIntegrityError,
    NoBottom,
    NotALattice,
    NoTop,
    UnknownElement,
)

_DISTRIBUTIVITY_EXHAUSTIVE_CAP = 512


@dataclass(frozen=True)
class FinitePoset:
    """A finite partial order on elements 0..n-1.

    ``up[i]`` is the bitmask of ``{j : i <= j}`` and ``down[i]`` the bitmask
    of ``{j : j <= i}``; both are full transitive closures.  Labels in
    ``names`` are display-only, indices are canonical.
    """

    n: int
    names: tuple[str, ...]
    up: tuple[int, ...]
    down: tuple[int, ...]

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.up[i] >> j & 1)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownElement(f"unknown element {name!r}") from None

    def verify_axioms(self) -> None:
        """Full matrix scan for reflexivity, antisymmetry, transitivity."""
        n, up, down = self.n, self.up, self.down
        for i in range(n):
            if not up[i] >> i & 1:
                raise CycleDetected(f"relation not reflexive at {self.names[i]}")
            if up[i] & down[i] != 1 << i:
                j = next(b for b in bits(up[i] & down[i]) if b != i)
                raise CycleDetected(
                    f"antisymmetry fails: {self.names[i]} <= {self.names[j]} <= {self.names[i]}"
                )
            for j in bits(up[i]):
                if up[j] & ~up[i]:
                    k = next(bits(up[j] & ~up[i]))
                    raise CycleDetected(
                        f"transitivity fails at ({self.names[i]},{self.names[j]},{self.names[k]})"
                    )

    def covers(self) -> list[tuple[int, int]]:
        """Edges (i, j) of the Hasse diagram: j covers i."""
        out = []
        for i in range(self.n):
            strict_up = self.up[i] & ~(1 << i)
            for j in bits(strict_up):
                if self.down[j] & strict_up == 1 << j:
                    out.append((i, j))
        return out

    def maximal_of(self, mask: int) -> int:
        """Bitmask of the maximal elements of the given subset."""
        out = 0
        for i in bits(mask):
            if self.up[i] & mask == 1 << i:
                out |= 1 << i
        return out

    def minimal_of(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            if self.down[i] & mask == 1 << i:
                out |= 1 << i
        return out

    def to_json_dict(self) -> dict:
        pairs = sorted((self.names[i], self.names[j]) for i, j in self.covers())
        return {
            "elements": list(self.names),
            "relation": [list(p) for p in pairs],
            "mode": "covers",
        }

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for i in range(self.n):
            lines.append(f'  n{i} [label="{_dot_escape(self.names[i])}"];')
        for i, j in self.covers():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_poset(
    names: Sequence[str], relation_pairs: Iterable[tuple[str, str]], mode: str = "covers"
) -> FinitePoset:
    """Build a verified poset from named pairs.

    ``mode="covers"`` treats pairs as Hasse edges, ``mode="leq"`` as arbitrary
    (a <= b) assertions; either way the reflexive-transitive closure is
    computed and the poset axioms are verified.
    """
    if mode not in ("covers", "leq"):
        raise ValueError(f"mode must be 'covers' or 'leq', got {mode!r}")
    names = tuple(names)
    if len(set(names)) != len(names):
        raise ValueError("element names must be distinct")
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    up = [1 << i for i in range(n)]
    for a, b in relation_pairs:
        if a not in index:
            raise UnknownElement(f"unknown element {a!r}")
        if b not in index:
            raise UnknownElement(f"unknown element {b!r}")
        up[index[a]] |= 1 << index[b]
    # Warshall closure on bit rows.
    for k in range(n):
        row_k = up[k]
        bit_k = 1 << k
        for i in range(n):
            if up[i] & bit_k:
                up[i] |= row_k
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i
    poset = FinitePoset(n=n, names=names, up=tuple(up), down=tuple(down))
    poset.verify_axioms()
    return poset


def poset_from_json(doc: dict) -> FinitePoset:
    pairs = [tuple(p) for p in doc["relation"]]
    return build_poset(doc["elements"], pairs, doc.get("mode", "covers"))


@dataclass(frozen=True)
class FiniteLattice:
    """A finite lattice: poset plus total meet/join tables and bottom.

    Instances are immutable after construction and safe to share across
    threads; every operation is read-only.
    """

    poset: FinitePoset
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    distributive: bool
    coframe: bool
    provenance: str = "lattice"

    # -- order plumbing -------------------------------------------------

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.poset.names

    def leq(self, i: int, j: int) -> bool:
        return bool(self.poset.up[i] >> j & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.poset.up[i] >> j & 1)

    def down_set(self, x: int) -> int:
        """Bitmask of {z : z <= x}."""
        return self.poset.down[x]

    def up_set(self, x: int) -> int:
        """Bitmask of {z : x <= z}."""
        return self.poset.up[x]

    def strictly_below(self, x: int) -> int:
        return self.poset.down[x] & ~(1 << x)

    def elements(self) -> range:
        return range(self.n)

    def full(self) -> int:
        return full_mask(self.n)

    def meet2(self, i: int, j: int) -> int:
        return self.meet[i][j]

    def join2(self, i: int, j: int) -> int:
        return self.join[i][j]

    # -- verified folds --------------------------------------------------

    def meet_of_set(self, xs: Iterable[int]) -> int:
        """Meet of a finite set, verified against the universal property."""
        xs = list(xs)
        if not xs:
            return self.top  # every finite lattice has one
        acc = xs[0]
        lower = self.poset.down[acc]
        for x in xs[1:]:
            acc = self.meet[acc][x]
            lower &= self.poset.down[x]
        if not (contains(lower, acc) and lower & ~self.poset.down[acc] == 0):
            raise LatticeIntegrityError(
                "meet table violates the universal property",
                witness={"set": [self.names[x] for x in xs], "folded": self.names[acc]},
            )
        return acc

    def join_of_set(self, xs: Iterable[int]) -> int:
        """Join of a finite set; the empty join is the bottom."""
        xs = list(xs)
        if not xs:
            return self.bottom
        acc = xs[0]
        upper = self.poset.up[acc]
        for x in xs[1:]:
            acc = self.join[acc][x]
            upper &= self.poset.up[x]
        if not (contains(upper, acc) and upper & ~self.poset.up[acc] == 0):
            raise LatticeIntegrityError(
                "join table violates the universal property",
                witness={"set": [self.names[x] for x in xs], "folded": self.names[acc]},
            )
        return acc

    # -- dual compactness -------------------------------------------------

    def dually_compact(self, x: int, definitional: bool = False) -> bool:
        """Every element of a finite lattice is dually compact.

        A finite filtered set contains its own minimum, which realizes the
        required member below x.  With ``definitional=True`` (n <= 10) the
        claim is re-established by exhausting all filtered subsets.
        """
        if definitional:
            if self.n > 10:
                raise ValueError("definitional dual-compactness check is capped at n <= 10")
            for sub in subsets(self.full()):
                if sub == 0 or not self._is_filtered(sub):
                    continue
                m = self.meet_of_set(list(bits(sub)))
                if self.leq(m, x) and not any(self.leq(f, x) for f in bits(sub)):
                    return False
        return True

    def _is_filtered(self, mask: int) -> bool:
        members = list(bits(mask))
        for a in members:
            for b in members:
                if not any(self.leq(c, a) and self.leq(c, b) for c in members):
                    return False
        return True

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return self.poset.to_json_dict()

    def to_dot(self) -> str:
        return self.poset.to_dot()

    def describe(self) -> str:
        return f"{self.provenance} (n={self.n})"


def as_lattice(p: FinitePoset, provenance: str = "lattice") -> FiniteLattice:
    """Compute meet/join tables from the order, or fail with a witness pair.

    Minima/maxima of bound sets are located by hashing up/down rows: the
    join of (i, j) exists iff the common upper bounds equal ``up[k]`` for
    some k, which is then the unique minimum.
    """
    n, up, down = p.n, p.up, p.down
    if n == 0:
        raise NoBottom("an empty poset has no bottom")
    up_index = {row: i for i, row in enumerate(up)}
    down_index = {row: i for i, row in enumerate(down)}
    join = []
    meet = []
    for i in range(n):
        jrow = []
        mrow = []
        for j in range(n):
            k = up_index.get(up[i] & up[j])
            if k is None:
                raise NotALattice(
                    f"{p.names[i]} and {p.names[j]} have no join", pair=(i, j)
                )
            jrow.append(k)
            k = down_index.get(down[i] & down[j])
            if k is None:
                raise NotALattice(
                    f"{p.names[i]} and {p.names[j]} have no meet", pair=(i, j)
                )
            mrow.append(k)
        join.append(tuple(jrow))
        meet.append(tuple(mrow))
    bottom = up_index.get(full_mask(n))
    if bottom is None:
        raise NoBottom("lattice has no bottom element")
    top = down_index[full_mask(n)]
    distributive = _is_distributive(n, meet, join)
    # For a finite lattice the coframe law (dual infinite distributivity)
    # reduces to plain distributivity: all meets/joins are finite.
    return FiniteLattice(
        poset=p,
        meet=tuple(meet),
        join=tuple(join),
        bottom=bottom,
        top=top,
        distributive=distributive,
        coframe=distributive,
        provenance=provenance,
    )


def _is_distributive(n: int, meet, join) -> bool:
    if n <= _DISTRIBUTIVITY_EXHAUSTIVE_CAP:
        return _distributivity_witness(n, meet, join) is None
    return _distributivity_witness_numpy(n, meet, join) is None


def _distributivity_witness(n: int, meet, join):
    """First triple with x ^ (y v z) != (x ^ y) v (x ^ z), or None."""
    for x in range(n):
        mx = meet[x]
        for y in range(n):
            mxy = mx[y]
            jrow = join[mxy]
            jy = join[y]
            for z in range(n):
                if mx[jy[z]] != jrow[mx[z]]:
                    return (x, y, z)
    return None


def _distributivity_witness_numpy(n: int, meet, join):
    import numpy as np

    m = np.asarray(meet, dtype=np.int32)
    j = np.asarray(join, dtype=np.int32)
    for x in range(n):
        lhs = m[x][j]
        rhs = j[np.ix_(m[x], m[x])]
        bad = lhs != rhs
        if bad.any():
            y, z = map(int, np.argwhere(bad)[0])
            return (x, y, z)
    return None


def distributivity_witness(L: FiniteLattice):
    """Public hook used by tests and the law suite shrinker."""
    if L.n <= _DISTRIBUTIVITY_EXHAUSTIVE_CAP:
        return _distributivity_witness(L.n, L.meet, L.join)
    return _distributivity_witness_numpy(L.n, L.meet, L.join)


def meet_of_set(L: FiniteLattice, mask_or_indices) -> int:
    """Meet of a subset; the empty meet is the top (NoTop if absent)."""
    idxs = _as_indices(mask_or_indices)
    if not idxs:
        if L.top is None:
            raise NoTop("empty meet in a top-less structure")
        return L.top
    return L.meet_of_set(idxs)


def join_of_set(L: FiniteLattice, mask_or_indices) -> int:
    idxs = _as_indices(mask_or_indices)
    return L.join_of_set(idxs)


def _as_indices(mask_or_indices) -> list[int]:
    if isinstance(mask_or_indices, int):
        return list(bits(mask_or_indices))
    return list(mask_or_indices)


def dually_compact_finite(L: FiniteLattice, x: int, definitional: bool = False) -> bool:
    """Dual compactness of an element of a finite lattice (always true;
    optionally re-derived from the definition for n <= 10)."""
    return L.dually_compact(x, definitional=definitional)


def lattice_from_json(doc: dict, provenance: str = "lattice") -> FiniteLattice:
    return as_lattice(poset_from_json(doc), provenance=provenance)


def canonical_json(obj) -> str:
    """Stable byte form: sorted keys, no whitespace drift, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def dual_distributivity_holds(L: FiniteLattice, subset_cap: int = 12, samples=None) -> bool:
    """Independent coframe test: x v /\\S == /\\(x v s) over subsets S.

    Exhaustive over all subsets when n <= subset_cap, over the supplied
    sample masks otherwise.
    """
    if L.n <= subset_cap:
        candidate_masks = list(subsets(L.full()))
    else:
        candidate_masks = list(samples or [])
    for x in L.elements():
        for mask in candidate_masks:
            members = list(bits(mask))
            if not members:
                continue
            lhs = L.join2(x, L.meet_of_set(members))
            rhs = L.meet_of_set([L.join2(x, s) for s in members])
            if lhs != rhs:
                return False
    return True


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


__all__ = [
    "FinitePoset",
    "FiniteLattice",
    "build_poset",
    "as_lattice",
    "poset_from_json",
    "lattice_from_json",
    "meet_of_set",
    "join_of_set",
    "dually_compact_finite",
    "canonical_json",
    "dual_distributivity_holds",
    "distributivity_witness",
]
