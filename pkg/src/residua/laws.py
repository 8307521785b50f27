"""Executable registry of the residual-calculus laws.

Each law is a checker that quantifies over one lattice instance and
returns Pass, Fail (with a replayable witness) or Skipped (hypothesis
not met: most laws require the coframe law, which for finite lattices is
distributivity).  Element/pair quantifications within budget run
exhaustively; subset-valued quantifiers enumerate exhaustively for small
carriers and fall back to seeded sampling above, which the report
records.

Two structural laws (downset upper-completeness and the lower-semilattice
property of the dually compact elements) verify their joins/meets against
the universal property on the order matrix across all pairs, so any
corrupted meet or join table entry fails at least one registered law.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Optional

from .bitset import bits, contains, full_mask, mask_of
from .errors import LatticeIntegrityError
from .lattice import FiniteLattice, FinitePoset
from .residual import (
    classify_t,
    co_heyting_sub,
    delta_plus,
    family_is_lattice,
    family_is_upper_semilattice,
    maximal_subelements,
    outcasts,
    residual_derivative,
    residual_profile,
)


class LawId(Enum):
    COHEYTING_JOIN = "coheyting_join"
    MU_RESIDUE_DECOMP = "mu_residue_decomp"
    CORE_RESIDUE_DECOMP = "core_residue_decomp"
    MAXIMALS_JOIN = "maximals_join"
    MAXIMALS_MEET_MAXIMAL = "maximals_meet_maximal"
    RESIDUE_UNIQUE_MAXIMAL = "residue_unique_maximal"
    MAXIMAL_FORMULA = "maximal_formula"
    MU_RESIDUE_BOUND = "mu_residue_bound"
    OUTCAST_TRICHOTOMY = "outcast_trichotomy"
    STRATA_RANKED = "strata_ranked"
    STRATUM0_CHARACTERIZATION = "stratum0_characterization"
    DELTA_EQUALS_DELTA_PLUS = "delta_equals_delta_plus"
    TYPE_SUBADDITIVE = "type_subadditive"
    SUBELEMENT_DECOMP = "subelement_decomp"
    MU_MONOTONE = "mu_monotone"
    MU_JOIN_HOM = "mu_join_hom"
    MINMAX_BOUND = "minmax_bound"
    BOUNDARY_REMOVAL_DESCENT = "boundary_removal_descent"
    CORE_UNION = "core_union"
    CORE_DECOMP = "core_decomp"
    CORE_JOIN_HOM = "core_join_hom"
    T0_UPPER_SEMILATTICE = "t0_upper_semilattice"
    X_MINUS_BOUNDARY_T0 = "x_minus_boundary_t0"
    DOWNSET_UPPER_COMPLETE = "downset_upper_complete"
    K_LOWER_SEMILATTICE = "k_lower_semilattice"
    MAXIMALS_DUALLY_COMPACT = "maximals_dually_compact"


@dataclass(frozen=True)
class Budget:
    """Bounds on enumeration; instances within bounds run exhaustively."""

    max_pairs: int = 250_000
    subset_exhaustive_bits: int = 12
    max_sampled_subsets: int = 32
    testbed_bound: int = 4
    seed: int = 0


DEFAULT_BUDGET = Budget()


@dataclass
class LawReport:
    law: str
    instance: str
    verdict: str  # "pass" | "fail" | "skipped"
    checked: int = 0
    exhaustive: bool = True
    sampled_subsets: bool = False
    reason: Optional[str] = None
    witness: Optional[dict] = None
    elapsed_ms: int = 0

    def to_json_dict(self) -> dict:
        out = {
            "law": self.law,
            "instance": self.instance,
            "verdict": self.verdict,
            "checked": self.checked,
            "exhaustive": self.exhaustive,
            "sampled_subsets": self.sampled_subsets,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.reason is not None:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = {k: v for k, v in self.witness.items() if k != "indices"}
        return out


class _Ctx:
    """Per-run state: element list, profile cache, deterministic sampler."""

    def __init__(self, L, budget: Budget, law: LawId, family=None, profiles=None):
        self.L = L
        self.budget = budget
        self.family = family
        self.finite = isinstance(L, FiniteLattice)
        if self.finite:
            self.elements = list(L.elements())
        else:
            self.elements = L.box(budget.testbed_bound)
        self.rng = random.Random(f"{budget.seed}:{law.value}")
        share = profiles is not None and family is None
        self.profiles = profiles if share else {}
        self.exhaustive = True
        self.sampled_subsets = False
        self.checked = 0

    def name(self, x) -> str:
        if self.finite:
            return self.L.names[x]
        from .testbed import fmt_vec

        return fmt_vec(x)

    def profile(self, x):
        if x not in self.profiles:
            if self.finite:
                self.profiles[x] = residual_profile(self.L, x, self.family)
            else:
                self.profiles[x] = self.L.profile(x)
        return self.profiles[x]

    def pairs(self):
        n = len(self.elements)
        if n * n <= self.budget.max_pairs:
            return itertools.product(self.elements, self.elements)
        self.exhaustive = False
        return (
            (self.rng.choice(self.elements), self.rng.choice(self.elements))
            for _ in range(self.budget.max_pairs)
        )

    def below(self, x):
        if self.finite:
            return list(bits(self.L.down_set(x)))
        return [z for z in self.elements if self.L.leq(z, x)]

    def witness(self, _data: Optional[dict] = None, **elems) -> dict:
        out = {k: self.name(v) for k, v in elems.items()}
        if _data:
            out.update(_data)
        out["indices"] = dict(elems)
        return out


@dataclass(frozen=True)
class LawSpec:
    law: LawId
    invariant_key: str
    requires_coframe: bool
    requires_distributive: bool
    finite_only: bool
    fn: Callable


# -- checkers -------------------------------------------------------------
# Each returns (ok, witness): ok True/False, or None with a skip reason.


def _check_coheyting_join(ctx):
    L = ctx.L
    for x in ctx.elements:
        for z in ctx.below(x):
            ctx.checked += 1
            s = co_heyting_sub(L, x, z)
            if L.join2(z, s) != x:
                return False, ctx.witness(x=x, z=z, sub=s)
    return True, None


def _check_mu_residue_decomp(ctx):
    L = ctx.L
    for x in ctx.elements:
        ctx.checked += 1
        p = ctx.profile(x)
        got = L.join_of_set([p.mu, *p.residues.values()])
        if got != x:
            return False, ctx.witness(x=x, mu=p.mu, got=got)
    return True, None


def _check_core_residue_decomp(ctx):
    L = ctx.L
    for x in ctx.elements:
        ctx.checked += 1
        p = ctx.profile(x)
        got = L.join_of_set([p.core, *p.residues.values()])
        if got != x:
            return False, ctx.witness(x=x, core=p.core, got=got)
    return True, None


def _check_maximals_join(ctx):
    L = ctx.L
    for x in ctx.elements:
        maxes = maximal_subelements(L, x, ctx.family)
        for y, z in itertools.combinations(maxes, 2):
            ctx.checked += 1
            if L.join2(y, z) != x:
                return False, ctx.witness(x=x, y=y, z=z)
    return True, None


def _check_maximals_meet_maximal(ctx):
    L = ctx.L
    for x in ctx.elements:
        maxes = maximal_subelements(L, x, ctx.family)
        for y, z in itertools.combinations(maxes, 2):
            ctx.checked += 1
            w = L.meet2(y, z)
            if w not in maximal_subelements(L, y, ctx.family) or w not in maximal_subelements(
                L, z, ctx.family
            ):
                return False, ctx.witness(x=x, y=y, z=z, meet=w)
    return True, None


def _check_residue_unique_maximal(ctx):
    L = ctx.L
    for x in ctx.elements:
        for m in maximal_subelements(L, x, ctx.family):
            ctx.checked += 1
            r = co_heyting_sub(L, x, m)
            sub_max = maximal_subelements(L, r, ctx.family)
            if len(sub_max) != 1:
                return False, ctx.witness({"count": len(sub_max)}, x=x, m=m, residue=r)
            if not L.leq(residual_derivative(L, r, ctx.family), m):
                return False, ctx.witness({"violated": "derivative bound"}, x=x, m=m, residue=r)
            if outcasts(L, r, ctx.family):
                return False, ctx.witness({"violated": "no outcast"}, x=x, m=m, residue=r)
    return True, None


def _check_maximal_formula(ctx):
    L = ctx.L
    for x in ctx.elements:
        p = ctx.profile(x)
        for m in p.maximal:
            ctx.checked += 1
            others = [r for k, r in p.residues.items() if k != m]
            if L.join_of_set([p.mu, *others]) != m:
                return False, ctx.witness(x=x, m=m)
    return True, None


def _check_mu_residue_bound(ctx):
    L = ctx.L
    for x in ctx.elements:
        p = ctx.profile(x)
        bound = L.join_of_set(list(p.residues.values()))
        for m in maximal_subelements(L, p.mu):
            ctx.checked += 1
            if not L.leq(co_heyting_sub(L, p.mu, m), bound):
                return False, ctx.witness(x=x, mu=p.mu, m=m)
    return True, None


def _check_outcast_trichotomy(ctx):
    L = ctx.L
    for x in ctx.elements:
        ctx.checked += 1
        p = ctx.profile(x)
        outs = outcasts(L, x)
        has = bool(outs)
        core_escapes = not L.leq(p.core, p.boundary)
        boundary_strict = p.boundary != x
        if not (has == core_escapes == boundary_strict):
            return False, ctx.witness(
                {
                    "has_outcast": has,
                    "core_not_below_boundary": core_escapes,
                    "boundary_strict": boundary_strict,
                },
                x=x,
            )
        if has and ctx.finite:
            expected = sorted(bits(L.up_set(p.boundary) & L.strictly_below(x)))
            if expected != outs:
                return False, ctx.witness(
                    {"outcasts": [ctx.name(o) for o in outs]}, x=x
                )
    return True, None


def _check_strata_ranked(ctx):
    L = ctx.L
    for x in ctx.elements:
        ctx.checked += 1
        p = ctx.profile(x)
        seen = {}
        for a, stratum in enumerate(p.strata):
            for s in stratum:
                if s in seen:
                    return False, ctx.witness({"strata": [seen[s], a]}, x=x, s=s)
                seen[s] = a
            for s, t in itertools.combinations(stratum, 2):
                if L.leq(s, t) or L.leq(t, s):
                    return False, ctx.witness({"violated": "antichain"}, x=x, s=s, t=t)
        for s in p.boundary_poset:
            for t in p.boundary_poset:
                if L.lt(s, t) and not p.rho[s] > p.rho[t]:
                    return False, ctx.witness({"violated": "rank order"}, x=x, s=s, t=t)
    return True, None


def _check_stratum0_characterization(ctx):
    L = ctx.L
    for x in ctx.elements:
        ctx.checked += 1
        p = ctx.profile(x)
        dplus = delta_plus(L, x, core=p.core)
        expected = {
            s
            for s in dplus
            if not L.leq(s, L.join_of_set([t for t in dplus if t != s]))
        }
        s0 = set(p.strata[0]) if p.strata else set()
        if s0 != expected:
            return False, ctx.witness(
                {
                    "stratum0": [ctx.name(s) for s in sorted(s0)],
                    "characterized": [ctx.name(s) for s in sorted(expected)],
                },
                x=x,
            )
        for s in s0:
            m = L.join_of_set([p.core, *[t for t in dplus if t != s]])
            if m not in p.maximal or L.join2(s, m) != x:
                return False, ctx.witness(x=x, s=s, m=m)
            if any(mm != m and L.join2(s, mm) == x for mm in p.maximal):
                return False, ctx.witness({"violated": "uniqueness"}, x=x, s=s, m=m)
    return True, None


def _check_delta_equals_delta_plus(ctx):
    L = ctx.L
    for x in ctx.elements:
        ctx.checked += 1
        p = ctx.profile(x)
        dplus = sorted(delta_plus(L, x, core=p.core))
        if sorted(p.boundary_poset) != dplus:
            return False, ctx.witness(
                {
                    "delta": [ctx.name(s) for s in p.boundary_poset],
                    "delta_plus": [ctx.name(s) for s in dplus],
                },
                x=x,
            )
    return True, None


def _check_type_subadditive(ctx):
    L = ctx.L
    for x, z in ctx.pairs():
        ctx.checked += 1
        if classify_t(L, L.join2(x, z)) > classify_t(L, x) + classify_t(L, z):
            return False, ctx.witness(x=x, z=z)
    return True, None


def _check_subelement_decomp(ctx):
    L = ctx.L
    for x in ctx.elements:
        p = ctx.profile(x)
        for z in bits(L.down_set(x)):
            ctx.checked += 1
            parts = [L.meet2(z, p.core)]
            parts.extend(s for s in p.boundary_poset if L.leq(s, z))
            if L.join_of_set(parts) != z:
                return False, ctx.witness(x=x, z=z)
    return True, None


def _check_mu_monotone(ctx):
    L = ctx.L
    for x in ctx.elements:
        mu_x = ctx.profile(x).mu
        for z in ctx.below(x):
            ctx.checked += 1
            if not L.leq(ctx.profile(z).mu, mu_x):
                return False, ctx.witness(x=x, z=z)
    return True, None


def _check_mu_join_hom(ctx):
    L = ctx.L
    for x, z in ctx.pairs():
        ctx.checked += 1
        j = L.join2(x, z)
        expected = L.join2(ctx.profile(x).mu, ctx.profile(z).mu)
        got = residual_derivative(L, j)
        if got != expected:
            return False, ctx.witness(x=x, z=z, join=j, mu=got, mu_of_parts=expected)
    return True, None


def _check_minmax_bound(ctx):
    """Monotone-pair bound, sampled as constant pairs (every pair of
    elements, read as one-step monotone nets) plus ascending/descending
    chain pairs.  The constant-pair folds deliberately walk every join
    entry and the table diagonals."""
    L = ctx.L
    for u, v in ctx.pairs():
        hyp = L.join2(u, v)
        conclusion = L.join2(L.join2(u, u), L.meet2(v, v))
        for z in ctx.elements:
            if L.leq(z, hyp):
                ctx.checked += 1
                if not L.leq(z, conclusion):
                    return False, ctx.witness(u=u, v=v, z=z)
    for asc in _sample_chains(ctx):
        desc = list(reversed(asc))
        bound = L.join2(L.join_of_set(asc), L.meet_of_set(desc))
        for z in ctx.elements:
            if all(L.leq(z, L.join2(a, d)) for a, d in zip(asc, desc)):
                ctx.checked += 1
                if not L.leq(z, bound):
                    return False, ctx.witness(
                        {"chain": [ctx.name(c) for c in asc]}, z=z
                    )
    return True, None


def _sample_chains(ctx) -> list:
    L = ctx.L
    chains = []
    for _ in range(min(ctx.budget.max_sampled_subsets, 2 * len(ctx.elements))):
        x = ctx.rng.choice(ctx.elements)
        chain = [x]
        while True:
            ups = [v for v in bits(L.up_set(chain[-1])) if v != chain[-1]]
            if not ups:
                break
            chain.append(ctx.rng.choice(ups))
        if len(chain) > 1:
            chains.append(chain)
    return chains


def _check_boundary_removal_descent(ctx):
    L = ctx.L
    budget = ctx.budget
    for x in ctx.elements:
        p = ctx.profile(x)
        delta = list(p.boundary_poset)
        if len(delta) <= budget.subset_exhaustive_bits:
            removals = list(
                itertools.chain.from_iterable(
                    itertools.combinations(delta, k) for k in range(len(delta) + 1)
                )
            )
        else:
            ctx.sampled_subsets = True
            removals = [(), *((s,) for s in delta)]
            for _ in range(budget.max_sampled_subsets):
                k = ctx.rng.randint(0, len(delta))
                removals.append(tuple(ctx.rng.sample(delta, k)))
        for removed in removals:
            ctx.checked += 1
            target = L.join_of_set([p.core, *[s for s in delta if s not in removed]])
            if not _descends_to(L, x, target):
                return False, ctx.witness(
                    {"removed": [ctx.name(s) for s in removed]}, x=x, target=target
                )
    return True, None


def _descends_to(L, x, target) -> bool:
    """Can target be reached from x by steps into maximal subelements?"""
    seen = set()
    stack = [x]
    interval = L.up_set(target)
    while stack:
        cur = stack.pop()
        if cur == target:
            return True
        if cur in seen:
            continue
        seen.add(cur)
        for m in maximal_subelements(L, cur):
            if contains(interval, m):
                stack.append(m)
    return False


def _check_core_union(ctx):
    L = ctx.L
    t0 = [x for x in ctx.elements if classify_t(L, x) == 0]
    for x in ctx.elements:
        ctx.checked += 1
        got = L.join_of_set([z for z in t0 if L.leq(z, x)])
        core = ctx.profile(x).core
        if got != core:
            return False, ctx.witness(x=x, joined=got, core=core)
    return True, None


def _check_core_decomp(ctx):
    L = ctx.L
    t0 = [y for y in ctx.elements if classify_t(L, y) == 0]
    for x, z in ctx.pairs():
        j = L.join2(x, z)
        for y in t0:
            if not L.leq(y, j):
                continue
            ctx.checked += 1
            got = L.join2(
                ctx.profile(L.meet2(x, y)).core, ctx.profile(L.meet2(z, y)).core
            )
            if got != y:
                return False, ctx.witness(x=x, z=z, y=y, got=got)
    return True, None


def _check_core_join_hom(ctx):
    L = ctx.L
    for x, z in ctx.pairs():
        ctx.checked += 1
        got = ctx.profile(L.join2(x, z)).core
        expected = L.join2(ctx.profile(x).core, ctx.profile(z).core)
        if got != expected:
            return False, ctx.witness(x=x, z=z, got=got, expected=expected)
    return True, None


def _check_t0_upper_semilattice(ctx):
    """Finite reduction of completeness: the zero-maximal family contains
    the bottom and is closed under binary join."""
    L = ctx.L
    t0 = [x for x in ctx.elements if classify_t(L, x) == 0]
    if L.bottom not in t0:
        return False, ctx.witness(bottom=L.bottom)
    for a in t0:
        for b in t0:
            ctx.checked += 1
            if classify_t(L, L.join2(a, b)) != 0:
                return False, ctx.witness(a=a, b=b, join=L.join2(a, b))
    return True, None


def _check_x_minus_boundary_t0(ctx):
    L = ctx.L
    for x in ctx.elements:
        ctx.checked += 1
        p = ctx.profile(x)
        r = co_heyting_sub(L, x, p.boundary)
        if classify_t(L, r) != 0:
            return False, ctx.witness(x=x, sub=r)
        if not L.leq(r, p.core):
            return False, ctx.witness(x=x, sub=r, core=p.core)
    return True, None


def _check_downset_upper_complete(ctx):
    """Every subset of a downset has a least upper bound inside it.

    Verified against the universal property on the order matrix for the
    empty set, all singletons and all pairs, plus sampled larger subsets;
    this is also what makes the suite sensitive to any corrupted join
    entry."""
    L = ctx.L
    for x in ctx.elements:
        down = list(bits(L.down_set(x)))
        subsets = [[]]
        subsets.extend([d] for d in down)
        subsets.extend(list(p) for p in itertools.combinations(down, 2))
        if len(down) > 2:
            if len(down) > ctx.budget.subset_exhaustive_bits:
                ctx.sampled_subsets = True
            for _ in range(min(ctx.budget.max_sampled_subsets, 1 << min(len(down), 20))):
                k = ctx.rng.randint(3, len(down))
                subsets.append(ctx.rng.sample(down, k))
        for s in subsets:
            ctx.checked += 1
            try:
                j = L.join_of_set(s)
            except LatticeIntegrityError as e:
                return False, {**e.witness, "x": ctx.name(x)}
            common_up = L.down_set(x)
            for member in s:
                common_up &= L.up_set(member)
            if not contains(common_up, j) or common_up & ~L.up_set(j):
                return False, ctx.witness(
                    {"subset": [ctx.name(m) for m in s]}, x=x, join=j
                )
    return True, None


def _check_k_lower_semilattice(ctx):
    """Dually compact elements form a lower semilattice.

    On finite instances every element is dually compact and the induced
    meet is verified to be the true infimum, which makes the suite
    sensitive to any corrupted meet entry; on the testbed the closure of
    the all-finite vectors under meets is a genuine statement."""
    L = ctx.L
    if ctx.finite:
        for x, z in ctx.pairs():
            ctx.checked += 1
            m = L.meet2(x, z)
            common = L.down_set(x) & L.down_set(z)
            if not contains(common, m) or common & ~L.down_set(m):
                return False, ctx.witness(x=x, z=z, meet=m)
        return True, None
    for x, z in ctx.pairs():
        if L.dually_compact(x) and L.dually_compact(z):
            ctx.checked += 1
            if not L.dually_compact(L.meet2(x, z)):
                return False, ctx.witness(x=x, z=z)
    return True, None


def _check_maximals_dually_compact(ctx):
    L = ctx.L
    for x in ctx.elements:
        if not ctx.finite and not L.dually_compact(x):
            continue
        for m in maximal_subelements(L, x):
            ctx.checked += 1
            if not L.dually_compact(m):
                return False, ctx.witness(x=x, m=m)
    return True, None


REGISTRY: dict[LawId, LawSpec] = {
    spec.law: spec
    for spec in [
        LawSpec(LawId.COHEYTING_JOIN, "z v (x-z) = x for z <= x", True, False, False, _check_coheyting_join),
        LawSpec(LawId.MU_RESIDUE_DECOMP, "x = mu(x) v join of residues", True, False, False, _check_mu_residue_decomp),
        LawSpec(LawId.CORE_RESIDUE_DECOMP, "x = core(x) v join of residues", True, False, False, _check_core_residue_decomp),
        LawSpec(LawId.MAXIMALS_JOIN, "distinct maximal subelements join to x", False, False, False, _check_maximals_join),
        LawSpec(LawId.MAXIMALS_MEET_MAXIMAL, "meet of distinct maximals is maximal in each", False, True, False, _check_maximals_meet_maximal),
        LawSpec(LawId.RESIDUE_UNIQUE_MAXIMAL, "residues have one maximal, bounded derivative, no outcast", True, False, False, _check_residue_unique_maximal),
        LawSpec(LawId.MAXIMAL_FORMULA, "m = mu(x) v join of other residues", True, False, False, _check_maximal_formula),
        LawSpec(LawId.MU_RESIDUE_BOUND, "residues of mu(x) sit under the boundary", True, False, False, _check_mu_residue_bound),
        LawSpec(LawId.OUTCAST_TRICHOTOMY, "outcast iff core escapes boundary iff boundary strict", True, False, False, _check_outcast_trichotomy),
        LawSpec(LawId.STRATA_RANKED, "boundary poset is ranked; strata are antichains", True, False, True, _check_strata_ranked),
        LawSpec(LawId.STRATUM0_CHARACTERIZATION, "stratum 0 via join-irredundancy in delta-plus", True, False, True, _check_stratum0_characterization),
        LawSpec(LawId.DELTA_EQUALS_DELTA_PLUS, "boundary poset equals delta-plus", True, False, True, _check_delta_equals_delta_plus),
        LawSpec(LawId.TYPE_SUBADDITIVE, "|M(x v z)| <= |M(x)| + |M(z)|", True, False, False, _check_type_subadditive),
        LawSpec(LawId.SUBELEMENT_DECOMP, "z = (z ^ core) v boundary members under z", True, False, True, _check_subelement_decomp),
        LawSpec(LawId.MU_MONOTONE, "derivative is monotone", True, False, False, _check_mu_monotone),
        LawSpec(LawId.MU_JOIN_HOM, "derivative is a join homomorphism", True, False, False, _check_mu_join_hom),
        LawSpec(LawId.MINMAX_BOUND, "monotone pair bound", True, False, True, _check_minmax_bound),
        LawSpec(LawId.BOUNDARY_REMOVAL_DESCENT, "removing boundary members is a maximal descent", True, False, True, _check_boundary_removal_descent),
        LawSpec(LawId.CORE_UNION, "core is the join of zero-maximal elements below", True, False, True, _check_core_union),
        LawSpec(LawId.CORE_DECOMP, "zero-maximal y <= x v z splits into cores", True, False, True, _check_core_decomp),
        LawSpec(LawId.CORE_JOIN_HOM, "core is a join homomorphism", True, False, False, _check_core_join_hom),
        LawSpec(LawId.T0_UPPER_SEMILATTICE, "zero-maximal family closed under join with bottom", True, False, True, _check_t0_upper_semilattice),
        LawSpec(LawId.X_MINUS_BOUNDARY_T0, "x minus boundary is zero-maximal under the core", True, False, False, _check_x_minus_boundary_t0),
        LawSpec(LawId.DOWNSET_UPPER_COMPLETE, "downsets are upper complete", False, False, True, _check_downset_upper_complete),
        LawSpec(LawId.K_LOWER_SEMILATTICE, "dually compact elements form a lower semilattice", False, False, False, _check_k_lower_semilattice),
        LawSpec(LawId.MAXIMALS_DUALLY_COMPACT, "maximal subelements of compact elements are compact", True, False, False, _check_maximals_dually_compact),
    ]
}

# Laws whose statement mentions the family H; each maps to the hypotheses
# the source lemma puts on H.
FAMILY_HYPOTHESES = {
    LawId.MAXIMALS_JOIN: ("upper_semilattice",),
    LawId.MAXIMALS_MEET_MAXIMAL: ("lattice",),
    LawId.RESIDUE_UNIQUE_MAXIMAL: ("bottom", "upper_semilattice"),
    LawId.MU_RESIDUE_DECOMP: ("bottom", "upper_semilattice"),
}


def _family_skip_reason(L, law: LawId, family) -> Optional[str]:
    if family is None:
        return None
    fam = family if isinstance(family, int) else mask_of(family)
    needs = FAMILY_HYPOTHESES.get(law, ())
    if "bottom" in needs and not contains(fam, L.bottom):
        return "family does not contain the bottom"
    if "upper_semilattice" in needs and not family_is_upper_semilattice(L, fam):
        return "family is not an upper semilattice"
    if "lattice" in needs and not family_is_lattice(L, fam):
        return "family is not a lattice"
    return None


def run_law(L, law: LawId, budget: Budget = DEFAULT_BUDGET, family=None, _profiles=None) -> LawReport:
    """Run one law on one instance; deterministic for fixed inputs."""
    spec = REGISTRY[law]
    finite = isinstance(L, FiniteLattice)
    instance = L.describe() if finite else f"testbed(dims={L.dims})"
    start = time.perf_counter()

    def done(verdict, ctx=None, reason=None, witness=None):
        return LawReport(
            law=law.value,
            instance=instance,
            verdict=verdict,
            checked=ctx.checked if ctx else 0,
            exhaustive=ctx.exhaustive if ctx else True,
            sampled_subsets=ctx.sampled_subsets if ctx else False,
            reason=reason,
            witness=witness,
            elapsed_ms=int((time.perf_counter() - start) * 1000),
        )

    if spec.finite_only and not finite:
        return done("skipped", reason="requires finite enumeration")
    if spec.requires_coframe and not L.coframe:
        return done("skipped", reason="not a coframe")
    if spec.requires_distributive and not L.distributive:
        return done("skipped", reason="not distributive")
    use_family = family if law in FAMILY_HYPOTHESES else None
    if use_family is not None and finite:
        why = _family_skip_reason(L, law, use_family)
        if why is not None:
            return done("skipped", reason=why)
    ctx = _Ctx(L, budget, law, family=use_family, profiles=_profiles)
    try:
        ok, extra = spec.fn(ctx)
    except LatticeIntegrityError as e:
        return done("fail", ctx, reason=str(e), witness=e.witness)
    if ok is None:
        return done("skipped", ctx, reason=extra)
    if ok:
        return done("pass", ctx)
    return done("fail", ctx, witness=extra)


def run_all(L, budget: Budget = DEFAULT_BUDGET, laws=None, jobs: int = 1, family=None) -> list:
    """Run the registry (or a subset) and merge reports in registry order."""
    selected = list(REGISTRY) if laws is None else list(laws)
    profiles: dict = {}
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = {
                law: pool.submit(run_law, L, law, budget, family, profiles)
                for law in selected
            }
            return [futures[law].result() for law in selected]
    return [run_law(L, law, budget, family, profiles) for law in selected]


def all_pass(reports) -> bool:
    return all(r.verdict != "fail" for r in reports)


# -- fault injection and shrinking -----------------------------------------


def mutate_entry(L: FiniteLattice, table: str, i: int, j: int, value: int) -> FiniteLattice:
    """Copy of L with one meet/join table entry replaced (not symmetrized)."""
    if table not in ("meet", "join"):
        raise ValueError("table must be 'meet' or 'join'")
    rows = [list(row) for row in getattr(L, table)]
    rows[i][j] = value
    mutated = {table: tuple(tuple(r) for r in rows)}
    return replace(
        L, provenance=f"{L.provenance}+fault({table}[{i}][{j}]={value})", **mutated
    )


def _tables_distributive(n, meet, join) -> bool:
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    return False
    return True


def _sublattice(L: FiniteLattice, keep: list) -> FiniteLattice:
    """Restriction of L (tables included, as they are) to a table-closed subset."""
    keep = sorted(keep)
    pos = {e: i for i, e in enumerate(keep)}
    n = len(keep)
    up, down = [], []
    for e in keep:
        u = d = 0
        for f in keep:
            if L.leq(e, f):
                u |= 1 << pos[f]
            if L.leq(f, e):
                d |= 1 << pos[f]
        up.append(u)
        down.append(d)
    poset = FinitePoset(
        n=n, names=tuple(L.names[e] for e in keep), up=tuple(up), down=tuple(down)
    )
    meet = tuple(tuple(pos[L.meet[a][b]] for b in keep) for a in keep)
    join = tuple(tuple(pos[L.join[a][b]] for b in keep) for a in keep)
    bottom = next((i for i in range(n) if up[i] == full_mask(n)), 0)
    top = next((i for i in range(n) if down[i] == full_mask(n)), n - 1)
    distributive = _tables_distributive(n, meet, join)
    return FiniteLattice(
        poset=poset,
        meet=meet,
        join=join,
        bottom=bottom,
        top=top,
        distributive=distributive,
        coframe=distributive,
        provenance=f"shrunk({L.provenance})",
    )


def _table_closure(L: FiniteLattice, seed: set) -> set:
    members = set(seed)
    frontier = list(members)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(members):
                for c in (L.meet[a][b], L.join[a][b], L.meet[b][a], L.join[b][a]):
                    if c not in members:
                        members.add(c)
                        nxt.append(c)
        frontier = nxt
    return members


def _witness_indices(report: LawReport) -> set:
    out = set()
    if report.witness and "indices" in report.witness:
        for v in report.witness["indices"].values():
            if isinstance(v, int):
                out.add(v)
    return out


def shrink(L: FiniteLattice, law: LawId, report: LawReport, budget: Budget = DEFAULT_BUDGET):
    """Greedily remove elements (re-closing under the tables) while the
    failure persists; a passing report is returned unchanged.

    Starts from the table closure of the witness elements when that
    already reproduces the failure, then keeps dropping single elements
    whose removal leaves a table-closed proper subset."""
    if report.verdict != "fail":
        return L, report
    witness_elems = _witness_indices(report)
    current, current_report = L, report
    if witness_elems:
        seed = _table_closure(L, witness_elems)
        if len(seed) < L.n:
            candidate = _sublattice(L, sorted(seed))
            rep = run_law(candidate, law, budget)
            if rep.verdict == "fail":
                current, current_report = candidate, rep
                witness_elems = _witness_indices(rep)
    improved = True
    while improved:
        improved = False
        for e in sorted(range(current.n), reverse=True):
            if e in witness_elems:
                continue
            keep = _table_closure(current, set(range(current.n)) - {e})
            if len(keep) >= current.n:
                continue
            candidate = _sublattice(current, sorted(keep))
            rep = run_law(candidate, law, budget)
            if rep.verdict == "fail":
                current, current_report = candidate, rep
                witness_elems = _witness_indices(rep)
                improved = True
                break
    return current, current_report


__all__ = [
    "LawId",
    "LawSpec",
    "LawReport",
    "Budget",
    "DEFAULT_BUDGET",
    "REGISTRY",
    "FAMILY_HYPOTHESES",
    "run_law",
    "run_all",
    "all_pass",
    "mutate_entry",
    "shrink",
]
