"""Finite topological spaces, Cantor-Bendixson machinery, dual Lawson topology.

A finite topology is fully determined by the minimal open neighborhood
N(x) of each point (the intersection of all subbase members containing
x).  Openness, isolation, CB derivatives and the order-compatibility
conditions are all answered through N(x), so spaces whose full open-set
family is astronomically large (the discrete topology on 64 points) stay
cheap.  The explicit open-set family is materialized lazily and only for
small point counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .bitset import bits, contains, full_mask, mask_of
from .errors import NotT1, TooLarge
from .lattice import FiniteLattice, FinitePoset, as_lattice
from .residual import residual_derivative

_OPENS_MATERIALIZATION_CAP = 20


@dataclass(frozen=True)
class FiniteTopology:
    """Points 0..n-1 with the topology generated by a subbase of subsets."""

    n: int
    subbase: tuple[int, ...]
    min_nbhd: tuple[int, ...]

    @classmethod
    def from_subbase(cls, n: int, subbase: Iterable) -> "FiniteTopology":
        """Smallest topology containing the subbase.

        Finite intersections of subbase members give the minimal
        neighborhoods; arbitrary unions are implicit.
        """
        masks = []
        everything = full_mask(n)
        for s in subbase:
            m = s if isinstance(s, int) else mask_of(s)
            if m & ~everything:
                raise ValueError("subbase member mentions a point outside 0..n-1")
            masks.append(m)
        nbhd = []
        for x in range(n):
            acc = everything
            for m in masks:
                if contains(m, x):
                    acc &= m
            nbhd.append(acc)
        return cls(n=n, subbase=tuple(sorted(set(masks))), min_nbhd=tuple(nbhd))

    # -- basic queries ----------------------------------------------------

    def is_open(self, mask: int) -> bool:
        return all(self.min_nbhd[x] & ~mask == 0 for x in bits(mask))

    def is_closed(self, mask: int) -> bool:
        return self.is_open(full_mask(self.n) & ~mask)

    @property
    def is_discrete(self) -> bool:
        return all(self.min_nbhd[x] == 1 << x for x in range(self.n))

    @property
    def is_t1(self) -> bool:
        """All singletons closed, i.e. no point sits in another's every neighborhood."""
        return all(
            self.is_closed(1 << x) for x in range(self.n)
        )

    @cached_property
    def opens(self) -> tuple[int, ...]:
        """The full open-set family, deduplicated and canonically sorted.

        Every open set is the union of the minimal neighborhoods of its
        points, so the family is enumerated from point subsets.  Capped:
        the family can have 2^n members.
        """
        if self.n > _OPENS_MATERIALIZATION_CAP:
            raise TooLarge(
                f"open-set family materialization is capped at {_OPENS_MATERIALIZATION_CAP} points"
            )
        found = {0}
        for t in range(1 << self.n):
            acc = 0
            for x in bits(t):
                acc |= self.min_nbhd[x]
            found.add(acc)
        return tuple(sorted(found))

    def verify_closure_properties(self) -> None:
        """Exhaustively confirm closure under union and finite intersection."""
        opens = set(self.opens)
        if 0 not in opens or full_mask(self.n) not in opens:
            raise AssertionError("topology must contain the empty set and the space")
        for a in opens:
            for b in opens:
                if a | b not in opens or a & b not in opens:
                    raise AssertionError("open family not closed under union/intersection")

    # -- isolation and CB -------------------------------------------------

    def isolated_points(self, s: int) -> int:
        """Points x of S with an open O such that O /\\ S = {x}.

        The minimal neighborhood is the best candidate, so the scan is
        exact.
        """
        out = 0
        for x in bits(s):
            if self.min_nbhd[x] & s == 1 << x:
                out |= 1 << x
        return out

    def to_json_dict(self) -> dict:
        return {
            "points": self.n,
            "subbase": [sorted(bits(m)) for m in self.subbase],
        }


@dataclass(frozen=True)
class CBSequence:
    """Iterated Cantor-Bendixson derivatives S_0 over ... until stabilization."""

    levels: tuple[int, ...]
    rank: int

    def to_json_dict(self) -> dict:
        return {
            "levels": [sorted(bits(m)) for m in self.levels],
            "rank": self.rank,
        }


def cb_sequence(t: FiniteTopology, s0: Optional[int] = None) -> CBSequence:
    """Remove isolated points (in the subspace topology) until nothing changes."""
    s = full_mask(t.n) if s0 is None else s0
    levels = [s]
    while True:
        nxt = levels[-1] & ~t.isolated_points(levels[-1])
        if nxt == levels[-1]:
            break
        levels.append(nxt)
    return CBSequence(levels=tuple(levels), rank=len(levels) - 1)


def dual_lawson(L: FiniteLattice) -> FiniteTopology:
    """Topology generated by all downsets of dually compact elements and
    their complements.  On a finite lattice every element is dually
    compact, and the result is discrete: {x} is the downset of x minus the
    downsets of its maximal subelements."""
    everything = full_mask(L.n)
    subbase = []
    for x in L.elements():
        d = L.down_set(x)
        subbase.append(d)
        subbase.append(everything & ~d)
    return FiniteTopology.from_subbase(L.n, subbase)


@dataclass(frozen=True)
class OrderCompatReport:
    """Per-condition verdicts for order-compatibility of a topology."""

    monotone_nets_converge: bool
    join_continuous: bool
    order_closed: bool
    witness: Optional[dict] = None

    @property
    def all_pass(self) -> bool:
        return self.monotone_nets_converge and self.join_continuous and self.order_closed

    def to_json_dict(self) -> dict:
        out = {
            "monotone_nets_converge": self.monotone_nets_converge,
            "join_continuous": self.join_continuous,
            "order_closed": self.order_closed,
        }
        if self.witness:
            out["witness"] = self.witness
        return out


def check_order_compatible(L: FiniteLattice, t: FiniteTopology) -> OrderCompatReport:
    """Check the three order-compatibility conditions on a finite lattice.

    (i) reduces on a finite lattice to eventually-constant monotone
    sequences: every chain, read as a monotone net, must converge to its
    meet/join, which is checked as "the minimal neighborhood of the limit
    contains a tail".  (ii) is the preimage test for continuity of the
    join map at every pair, with minimal neighborhoods standing in for
    arbitrary opens.  (iii) asks that the complement of the order relation
    be open in the product.
    """
    if L.n != t.n:
        raise ValueError("topology and lattice have different carriers")
    witness = None

    nets_ok = True
    for x in L.elements():
        for y in bits(L.up_set(x)):
            # Non-increasing net (y, x, x, ...) has meet x; tail {x} must
            # land in every open around x, and dually for the join y.
            if not contains(t.min_nbhd[x], x) or not contains(t.min_nbhd[y], y):
                nets_ok = False
                witness = {"condition": "nets", "pair": [L.names[x], L.names[y]]}

    join_ok = True
    for x in L.elements():
        if not join_ok:
            break
        for z in L.elements():
            target = t.min_nbhd[L.join2(x, z)]
            for x2 in bits(t.min_nbhd[x]):
                for z2 in bits(t.min_nbhd[z]):
                    if not contains(target, L.join2(x2, z2)):
                        join_ok = False
                        witness = witness or {
                            "condition": "join_continuity",
                            "pair": [L.names[x], L.names[z]],
                            "at": [L.names[x2], L.names[z2]],
                        }
                        break
                if not join_ok:
                    break
            if not join_ok:
                break

    order_ok = True
    up_union = []
    for x in L.elements():
        acc = 0
        for x2 in bits(t.min_nbhd[x]):
            acc |= L.up_set(x2)
        up_union.append(acc)
    for x in L.elements():
        if not order_ok:
            break
        for z in L.elements():
            if L.leq(x, z):
                continue
            # (x, z) is in the complement of <=; its product neighborhood
            # N(x) x N(z) must avoid <= entirely.
            if t.min_nbhd[z] & up_union[x]:
                order_ok = False
                witness = witness or {
                    "condition": "order_closed",
                    "pair": [L.names[x], L.names[z]],
                }
                break

    return OrderCompatReport(
        monotone_nets_converge=nets_ok,
        join_continuous=join_ok,
        order_closed=order_ok,
        witness=witness,
    )


def closed_set_lattice(t: FiniteTopology) -> tuple[FiniteLattice, list[int]]:
    """The lattice of closed sets ordered by inclusion.

    Returns the lattice together with the closed-set bitmask carried by
    each lattice element.
    """
    everything = full_mask(t.n)
    closeds = sorted(
        {everything & ~o for o in t.opens}, key=lambda m: (m.bit_count(), m)
    )
    names = tuple("{" + ",".join(map(str, bits(m))) + "}" for m in closeds)
    n = len(closeds)
    up = []
    down = []
    for i, a in enumerate(closeds):
        u = 0
        d = 0
        for j, b in enumerate(closeds):
            if a & ~b == 0:
                u |= 1 << j
            if b & ~a == 0:
                d |= 1 << j
        up.append(u)
        down.append(d)
    poset = FinitePoset(n=n, names=names, up=tuple(up), down=tuple(down))
    poset.verify_axioms()
    return as_lattice(poset, provenance=f"closed_sets(points={t.n})"), closeds


@dataclass(frozen=True)
class CBResidualReport:
    """Comparison of the topological derivative with the lattice derivative."""

    checked: int
    mismatches: tuple

    @property
    def all_match(self) -> bool:
        return not self.mismatches


def residual_equals_cb_closedsets(t: FiniteTopology) -> CBResidualReport:
    """On a T1 space, the derivative of every closed set in the closed-set
    lattice must equal its topological CB derivative."""
    if not t.is_t1:
        raise NotT1("space has a non-closed singleton")
    lat, closeds = closed_set_lattice(t)
    index = {m: i for i, m in enumerate(closeds)}
    mismatches = []
    for i, s in enumerate(closeds):
        mu = residual_derivative(lat, i)
        derived = s & ~t.isolated_points(s)
        if closeds[mu] != derived:
            mismatches.append(
                {
                    "closed_set": sorted(bits(s)),
                    "lattice_derivative": sorted(bits(closeds[mu])),
                    "cb_derivative": sorted(bits(derived)),
                }
            )
    return CBResidualReport(checked=len(closeds), mismatches=tuple(mismatches))


def is_order_convex(L: FiniteLattice, mask: int) -> bool:
    """x <= y <= z with x, z in the set forces y in the set."""
    for x in bits(mask):
        for z in bits(L.up_set(x) & mask):
            between = L.up_set(x) & L.down_set(z)
            if between & ~mask:
                return False
    return True


def locally_constant_core(L: FiniteLattice, t: FiniteTopology, x: int, cores) -> bool:
    """Is the core operator constant on some neighborhood of x outside its downset?

    The minimal neighborhood is the best possible witness, so the check
    is exact on finite spaces.  ``cores`` maps each element to its core.
    """
    region = t.min_nbhd[x] & ~L.down_set(x)
    return all(cores[z] == cores[x] for z in bits(region))


__all__ = [
    "FiniteTopology",
    "CBSequence",
    "cb_sequence",
    "dual_lawson",
    "OrderCompatReport",
    "check_order_compatible",
    "closed_set_lattice",
    "CBResidualReport",
    "residual_equals_cb_closedsets",
    "is_order_convex",
    "locally_constant_core",
]
