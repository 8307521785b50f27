"""Construction and ingestion of example lattices.

Covers the classical instances the residual derivative specializes to:
subgroup lattices (Frattini subgroup), ideal lattices of Z/n (Jacobson
radical), divisor lattices, Boolean lattices, downset lattices of finite
posets (which realize every finite distributive lattice), products, and
seeded random distributive lattices for fuzzing the law suite.
"""

from __future__ import annotations

import importlib.resources
import json
import random
from dataclasses import dataclass

from .bitset import bits, mask_of, popcount
from .errors import InvalidGroup, TooLarge
from .lattice import FiniteLattice, FinitePoset, as_lattice, build_poset
from .residual import residual_derivative
from .topology import FiniteTopology, closed_set_lattice

LATTICE_SIZE_CAP = 4096
GROUP_ORDER_CAP = 64
ZN_CAP = 10**6

CATALOG_NAMES = tuple(
    [f"z{n}" for n in range(1, 33)] + ["s3", "d4", "q8", "a4", "z2xz4", "z2xz2xz2"]
)


# -- finite groups -----------------------------------------------------------


@dataclass(frozen=True)
class CayleyTable:
    """A finite group given by its multiplication table on 0..n-1."""

    order: int
    table: tuple
    identity: int
    name: str = "group"

    @classmethod
    def from_json_dict(cls, doc: dict, name: str = "group") -> "CayleyTable":
        c = cls(
            order=doc["order"],
            table=tuple(tuple(row) for row in doc["table"]),
            identity=doc["identity"],
            name=name,
        )
        c.validate()
        return c

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def validate(self) -> None:
        n, t, e = self.order, self.table, self.identity
        if len(t) != n or any(len(row) != n for row in t):
            raise InvalidGroup(f"{self.name}: table is not {n}x{n}")
        if any(not 0 <= v < n for row in t for v in row):
            raise InvalidGroup(f"{self.name}: table entry out of range")
        if any(t[e][a] != a or t[a][e] != a for a in range(n)):
            raise InvalidGroup(f"{self.name}: {e} is not an identity")
        for a in range(n):
            if not any(t[a][b] == e for b in range(n)):
                raise InvalidGroup(f"{self.name}: element {a} has no inverse")
        for a in range(n):
            for b in range(n):
                tab = t[a][b]
                for c in range(n):
                    if t[tab][c] != t[a][t[b][c]]:
                        raise InvalidGroup(
                            f"{self.name}: associativity fails at ({a},{b},{c})"
                        )

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "identity": self.identity,
            "table": [list(row) for row in self.table],
        }


def load_catalog_group(name: str) -> CayleyTable:
    """Load one of the bundled Cayley tables by name (e.g. 'q8')."""
    if name not in CATALOG_NAMES:
        raise InvalidGroup(f"unknown catalog group {name!r}; see CATALOG_NAMES")
    ref = importlib.resources.files("residua.data.groups").joinpath(f"{name}.json")
    doc = json.loads(ref.read_text())
    return CayleyTable.from_json_dict(doc, name=name)


def _closure(c: CayleyTable, seed_mask: int) -> int:
    """Closure of a nonempty subset under the product (a subgroup, since
    the group is finite)."""
    members = seed_mask | 1 << c.identity
    frontier = list(bits(members))
    while frontier:
        nxt = []
        for a in frontier:
            for b in bits(members):
                for prod in (c.mul(a, b), c.mul(b, a)):
                    if not members >> prod & 1:
                        members |= 1 << prod
                        nxt.append(prod)
        frontier = nxt
    return members


def subgroups(c: CayleyTable) -> list[int]:
    """All subgroups as element bitmasks, by closing generator extensions."""
    if c.order > GROUP_ORDER_CAP:
        raise InvalidGroup(f"subgroup enumeration capped at order {GROUP_ORDER_CAP}")
    trivial = 1 << c.identity
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for h in frontier:
            for g in range(c.order):
                if h >> g & 1:
                    continue
                extended = _closure(c, h | 1 << g)
                if extended not in found:
                    found.add(extended)
                    nxt.append(extended)
        frontier = nxt
    return sorted(found, key=lambda m: (popcount(m), m))


def subgroup_lattice(c: CayleyTable) -> FiniteLattice:
    """Subgroup lattice ordered by inclusion; the meet is intersection."""
    subs = subgroups(c)
    names = tuple("{" + ",".join(map(str, bits(m))) + "}" for m in subs)
    n = len(subs)
    up = []
    down = []
    for i, a in enumerate(subs):
        u = d = 0
        for j, b in enumerate(subs):
            if a & ~b == 0:
                u |= 1 << j
            if b & ~a == 0:
                d |= 1 << j
        up.append(u)
        down.append(d)
    poset = FinitePoset(n=n, names=names, up=tuple(up), down=tuple(down))
    poset.verify_axioms()
    lat = as_lattice(poset, provenance=f"subgroup_lattice({c.name})")
    lat.__dict__["subgroup_masks"] = tuple(subs)
    return lat


@dataclass(frozen=True)
class FrattiniResult:
    lattice: FiniteLattice
    index: int
    members: tuple


def frattini(c: CayleyTable) -> FrattiniResult:
    """Frattini subgroup computed two independent ways and compared.

    Route one intersects the maximal proper subgroups directly on element
    bitmasks; route two takes the residual derivative of the top of the
    subgroup lattice.  The two must agree exactly.
    """
    lat = subgroup_lattice(c)
    subs = lat.__dict__["subgroup_masks"]
    whole = subs[lat.top]
    maximal_masks = [
        subs[i]
        for i in bits(lat.strictly_below(lat.top))
        if lat.down_set(lat.top) & lat.up_set(i) == mask_of([i, lat.top])
    ]
    direct = whole
    for m in maximal_masks:
        direct &= m
    mu = residual_derivative(lat, lat.top)
    if subs[mu] != direct:
        raise InvalidGroup(
            f"{c.name}: derivative route {sorted(bits(subs[mu]))} disagrees "
            f"with maximal-subgroup intersection {sorted(bits(direct))}"
        )
    return FrattiniResult(lattice=lat, index=mu, members=tuple(bits(direct)))


# -- rings Z/n ----------------------------------------------------------------


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def radical(n: int) -> int:
    """Product of the distinct primes dividing n."""
    r, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            r *= p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        r *= m
    return r


def ideal_lattice_zn(n: int) -> FiniteLattice:
    """Ideals of Z/n are dZ/n for d | n, ordered by inclusion.

    dZ/n is contained in eZ/n iff e divides d, so the top is (1) = R and
    the bottom is (n) = {0}.
    """
    if not 2 <= n <= ZN_CAP:
        raise TooLarge(f"n must be between 2 and {ZN_CAP}")
    divs = divisors(n)
    names = tuple(f"({d})" for d in divs)
    pairs = [
        (names[i], names[j])
        for i, di in enumerate(divs)
        for j, dj in enumerate(divs)
        if di % dj == 0
    ]
    poset = build_poset(names, pairs, mode="leq")
    lat = as_lattice(poset, provenance=f"ideal_lattice_zn({n})")
    lat.__dict__["ideal_generators"] = tuple(divs)
    return lat


@dataclass(frozen=True)
class JacobsonResult:
    lattice: FiniteLattice
    index: int
    generator: int


def jacobson_zn(n: int) -> JacobsonResult:
    """Jacobson radical of Z/n via the derivative, checked against rad(n)."""
    lat = ideal_lattice_zn(n)
    gens = lat.__dict__["ideal_generators"]
    mu = residual_derivative(lat, lat.top)
    expected = radical(n)
    if gens[mu] != expected:
        raise AssertionError(
            f"Z/{n}: derivative gives ({gens[mu]}), radical arithmetic gives ({expected})"
        )
    return JacobsonResult(lattice=lat, index=mu, generator=gens[mu])


# -- order-theoretic generators ------------------------------------------------


def chain(k: int) -> FiniteLattice:
    """The k-element chain 0 < 1 < ... < k-1."""
    if not 1 <= k <= LATTICE_SIZE_CAP:
        raise TooLarge(f"chain size must be between 1 and {LATTICE_SIZE_CAP}")
    names = tuple(str(i) for i in range(k))
    pairs = [(names[i], names[i + 1]) for i in range(k - 1)]
    return as_lattice(build_poset(names, pairs, "covers"), provenance=f"chain({k})")


def antichain_poset(k: int, prefix: str = "a") -> FinitePoset:
    names = tuple(f"{prefix}{i}" for i in range(k))
    return build_poset(names, [], "covers")


def downset_lattice(p: FinitePoset, provenance: str | None = None) -> FiniteLattice:
    """Lattice of downward-closed subsets of a poset, ordered by inclusion."""
    if p.n > 20:
        raise TooLarge("downset enumeration is capped at 20-element posets")
    downsets = [
        m
        for m in range(1 << p.n)
        if all(p.down[i] & ~m == 0 for i in bits(m))
    ]
    if len(downsets) > LATTICE_SIZE_CAP:
        raise TooLarge(f"downset lattice exceeds the size cap {LATTICE_SIZE_CAP}")
    downsets.sort(key=lambda m: (popcount(m), m))
    names = tuple(
        "{" + ",".join(p.names[i] for i in bits(m)) + "}" for m in downsets
    )
    n = len(downsets)
    up = []
    down = []
    for i, a in enumerate(downsets):
        u = d = 0
        for j, b in enumerate(downsets):
            if a & ~b == 0:
                u |= 1 << j
            if b & ~a == 0:
                d |= 1 << j
        up.append(u)
        down.append(d)
    poset = FinitePoset(n=n, names=names, up=tuple(up), down=tuple(down))
    poset.verify_axioms()
    return as_lattice(poset, provenance=provenance or f"downset(poset n={p.n})")


def boolean(k: int) -> FiniteLattice:
    """The Boolean lattice of subsets of a k-set."""
    if not 0 <= k <= 12:
        raise TooLarge("boolean lattices are capped at 2^12 elements")
    lat = downset_lattice(antichain_poset(k), provenance=f"boolean({k})")
    return lat


def divisor(n: int) -> FiniteLattice:
    """Divisors of n under divisibility; meet is gcd, join is lcm."""
    if n < 1:
        raise ValueError("n must be positive")
    divs = divisors(n)
    if len(divs) > LATTICE_SIZE_CAP:
        raise TooLarge("too many divisors")
    names = tuple(str(d) for d in divs)
    pairs = [
        (names[i], names[j])
        for i in range(len(divs))
        for j in range(len(divs))
        if divs[j] % divs[i] == 0
    ]
    poset = build_poset(names, pairs, "leq")
    return as_lattice(poset, provenance=f"divisor({n})")


def product(a: FiniteLattice, b: FiniteLattice) -> FiniteLattice:
    """Componentwise-ordered product lattice."""
    if a.n * b.n > LATTICE_SIZE_CAP:
        raise TooLarge(f"product exceeds the size cap {LATTICE_SIZE_CAP}")
    names = []
    up = []
    down = []
    n = a.n * b.n
    for i in range(a.n):
        for j in range(b.n):
            names.append(f"({a.names[i]},{b.names[j]})")
    for i in range(a.n):
        for j in range(b.n):
            u = d = 0
            for k in range(a.n):
                for l in range(b.n):
                    if a.leq(i, k) and b.leq(j, l):
                        u |= 1 << (k * b.n + l)
                    if a.leq(k, i) and b.leq(l, j):
                        d |= 1 << (k * b.n + l)
            up.append(u)
            down.append(d)
    poset = FinitePoset(n=n, names=tuple(names), up=tuple(up), down=tuple(down))
    poset.verify_axioms()
    return as_lattice(
        poset, provenance=f"product({a.provenance},{b.provenance})"
    )


def random_poset(rng: random.Random, size: int) -> FinitePoset:
    """Random poset: random upper-triangular covers, then closure."""
    names = tuple(f"p{i}" for i in range(size))
    prob = rng.uniform(0.15, 0.7)
    pairs = [
        (names[i], names[j])
        for i in range(size)
        for j in range(i + 1, size)
        if rng.random() < prob
    ]
    return build_poset(names, pairs, "leq")


def random_distributive(seed: int, target_size: int) -> FiniteLattice:
    """Seeded random downset lattice with at most target_size elements.

    Distributive by construction (and the flag is recomputed, not
    assumed).  Identical seeds give identical lattices.
    """
    if target_size > LATTICE_SIZE_CAP:
        raise TooLarge(f"target size exceeds {LATTICE_SIZE_CAP}")
    if target_size < 1:
        raise ValueError("target size must be positive")
    rng = random.Random(seed)
    while True:
        size = rng.randint(0, 9)
        p = random_poset(rng, size)
        lat = downset_lattice(
            p, provenance=f"random(seed={seed},size={target_size})"
        )
        if 1 <= lat.n <= target_size:
            if not lat.distributive:
                raise AssertionError("downset lattice must be distributive")
            return lat


def closed_sets(t: FiniteTopology) -> FiniteLattice:
    """Lattice of closed sets of a finite topology, ordered by inclusion."""
    lat, _ = closed_set_lattice(t)
    return lat


def antichain_count(p: FinitePoset) -> int:
    """Brute-force count of antichains (equals the downset count)."""
    count = 0
    for m in range(1 << p.n):
        if all(
            not p.lt(i, j) and not p.lt(j, i)
            for i in bits(m)
            for j in bits(m)
            if i < j
        ):
            count += 1
    return count


# -- generator-spec strings ----------------------------------------------------


def generate(spec: str) -> FiniteLattice:
    """Build a lattice from a spec string.

    Grammar: ``chain:K``, ``boolean:K``, ``divisor:N``, ``zn:N`` (ideal
    lattice), ``random:seed=S,size=T``, ``group:NAME`` or ``group:@file``
    (subgroup lattice), ``downset:@poset.json``, and
    ``product:SPEC|SPEC``.
    """
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "chain":
        return chain(int(arg))
    if kind == "boolean":
        return boolean(int(arg))
    if kind == "divisor":
        return divisor(int(arg))
    if kind == "zn":
        return ideal_lattice_zn(int(arg))
    if kind == "random":
        opts = dict(kv.split("=") for kv in arg.split(","))
        return random_distributive(int(opts["seed"]), int(opts["size"]))
    if kind == "group":
        if arg.startswith("@"):
            with open(arg[1:]) as f:
                table = CayleyTable.from_json_dict(json.load(f), name=arg[1:])
        else:
            table = load_catalog_group(arg.strip().lower())
        return subgroup_lattice(table)
    if kind == "downset":
        if not arg.startswith("@"):
            raise ValueError("downset spec takes a @file.json poset")
        from .lattice import poset_from_json

        with open(arg[1:]) as f:
            return downset_lattice(poset_from_json(json.load(f)))
    if kind == "product":
        left, sep, right = arg.partition("|")
        if not sep:
            raise ValueError("product spec is product:SPEC|SPEC")
        return product(generate(left), generate(right))
    raise ValueError(f"unknown generator kind {kind!r}")


__all__ = [
    "CayleyTable",
    "CATALOG_NAMES",
    "load_catalog_group",
    "subgroups",
    "subgroup_lattice",
    "frattini",
    "FrattiniResult",
    "divisors",
    "radical",
    "ideal_lattice_zn",
    "jacobson_zn",
    "JacobsonResult",
    "chain",
    "boolean",
    "divisor",
    "product",
    "downset_lattice",
    "antichain_poset",
    "random_poset",
    "random_distributive",
    "closed_sets",
    "antichain_count",
    "generate",
]
