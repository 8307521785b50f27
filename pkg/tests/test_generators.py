import json

import pytest

from residua.bitset import bits, popcount
from residua.errors import InvalidGroup, TooLarge
from residua.generators import (
    CATALOG_NAMES,
    CayleyTable,
    antichain_count,
    antichain_poset,
    boolean,
    chain,
    closed_sets,
    divisor,
    divisors,
    downset_lattice,
    frattini,
    generate,
    ideal_lattice_zn,
    jacobson_zn,
    load_catalog_group,
    product,
    radical,
    random_distributive,
    random_poset,
    subgroup_lattice,
    subgroups,
)
from residua.laws import all_pass, run_all
from residua.topology import FiniteTopology
import random


def brute_force_subgroups(c: CayleyTable):
    """All subsets closed under the product: the independent oracle."""
    out = set()
    for mask in range(1, 1 << c.order):
        members = list(bits(mask))
        if c.identity not in members:
            continue
        if all(c.mul(a, b) in members for a in members for b in members):
            out.add(mask)
    return sorted(out, key=lambda m: (popcount(m), m))


def cyclic_subgroups_oracle(c: CayleyTable):
    """For cyclic groups only: subgroups are single-generator closures."""
    out = set()
    for g in range(c.order):
        members = {c.identity}
        cur = g
        while cur not in members:
            members.add(cur)
            cur = c.mul(cur, g)
        out.add(sum(1 << m for m in members))
    return sorted(out, key=lambda m: (popcount(m), m))


def test_catalog_complete_and_valid():
    assert len(CATALOG_NAMES) == 38
    for name in CATALOG_NAMES:
        g = load_catalog_group(name)
        g.validate()
    assert load_catalog_group("z12").order == 12
    assert load_catalog_group("q8").order == 8
    with pytest.raises(InvalidGroup):
        load_catalog_group("nosuch")


def test_invalid_group_rejected():
    with pytest.raises(InvalidGroup):
        CayleyTable.from_json_dict({"order": 2, "identity": 0, "table": [[0, 1], [1, 1]]})


def test_subgroups_match_brute_force_small():
    for name in ["z1", "z4", "z6", "z8", "s3", "q8", "d4", "z2xz4", "z2xz2xz2"]:
        g = load_catalog_group(name)
        assert subgroups(g) == brute_force_subgroups(g), name


def test_subgroups_match_single_generator_oracle_for_cyclic():
    for n in (15, 24, 25, 32):
        g = load_catalog_group(f"z{n}")
        assert subgroups(g) == cyclic_subgroups_oracle(g)
        assert len(subgroups(g)) == len(divisors(n))


def test_z4_subgroup_chain():
    lat = subgroup_lattice(load_catalog_group("z4"))
    assert lat.n == 3
    subs = lat.__dict__["subgroup_masks"]
    assert [sorted(bits(m)) for m in subs] == [[0], [0, 2], [0, 1, 2, 3]]


def test_q8_has_six_subgroups_s3_structure():
    q8 = load_catalog_group("q8")
    subs = subgroups(q8)
    assert len(subs) == 6
    assert sorted(popcount(m) for m in subs) == [1, 2, 4, 4, 4, 8]
    s3 = load_catalog_group("s3")
    assert sorted(popcount(m) for m in subgroups(s3)) == [1, 2, 2, 2, 3, 6]
    a4 = load_catalog_group("a4")
    assert len(subgroups(a4)) == 10  # and none of order 6


def test_frattini_examples():
    assert frattini(load_catalog_group("z4")).members == (0, 2)
    s3 = frattini(load_catalog_group("s3"))
    assert s3.members == (load_catalog_group("s3").identity,)
    q8 = load_catalog_group("q8")
    fr = frattini(q8)
    assert len(fr.members) == 2  # the center {1, -1}
    center = tuple(
        a for a in range(q8.order) if all(q8.mul(a, b) == q8.mul(b, a) for b in range(q8.order))
    )
    assert fr.members == center


def test_frattini_of_prime_square_cyclics():
    for p in (2, 3, 5):
        g = load_catalog_group(f"z{p * p}")
        assert frattini(g).members == tuple(range(0, p * p, p))


def test_divisors_and_radical():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert radical(12) == 6
    assert radical(30) == 30
    assert radical(8) == 2
    assert radical(1) == 1


def test_ideal_lattice_and_jacobson():
    lat = ideal_lattice_zn(12)
    assert lat.n == 6
    assert lat.distributive
    assert jacobson_zn(12).generator == 6
    assert jacobson_zn(30).generator == 30
    assert jacobson_zn(8).generator == 2
    with pytest.raises(TooLarge):
        ideal_lattice_zn(1)


def test_divisor_lattice(div12):
    assert div12.n == 6
    assert div12.distributive
    assert div12.names == ("1", "2", "3", "4", "6", "12")


def test_boolean_and_chain():
    assert boolean(3).n == 8
    assert chain(4).n == 4
    assert boolean(0).n == 1
    assert chain(1).n == 1


def test_downset_of_antichain_is_diamond():
    lat = downset_lattice(antichain_poset(2))
    assert lat.n == 4
    assert lat.distributive


def test_downset_count_equals_antichain_count():
    rng = random.Random(9)
    for _ in range(12):
        p = random_poset(rng, rng.randint(0, 6))
        assert downset_lattice(p).n == antichain_count(p)


def test_random_distributive_deterministic_and_bounded():
    a = random_distributive(1, 32)
    b = random_distributive(1, 32)
    assert a.poset == b.poset and a.meet == b.meet and a.join == b.join
    assert 1 <= a.n <= 32
    assert a.distributive
    assert random_distributive(3, 1).n == 1  # empty poset gives the one-point lattice


def test_product_of_chains_is_grid():
    g = product(chain(2), chain(2))
    assert g.n == 4
    assert g.distributive
    big = product(chain(3), boolean(2))
    assert big.n == 12
    assert all_pass(run_all(big))


def test_closed_sets_generator():
    t = FiniteTopology.from_subbase(2, [[0]])
    lat = closed_sets(t)
    assert lat.n == 3  # {}, {1}, {0,1}


def test_generated_lattices_pass_laws_when_distributive():
    for L in (divisor(60), boolean(3), random_distributive(11, 40)):
        assert L.coframe
        assert all_pass(run_all(L))


def test_generate_spec_strings(tmp_path):
    assert generate("chain:4").n == 4
    assert generate("boolean:3").n == 8
    assert generate("divisor:12").n == 6
    assert generate("zn:12").n == 6
    assert generate("random:seed=7,size=50").n <= 50
    assert generate("group:q8").n == 6
    assert generate("product:chain:2|chain:3").n == 6
    poset_doc = {"elements": ["a", "b"], "relation": [], "mode": "covers"}
    path = tmp_path / "poset.json"
    path.write_text(json.dumps(poset_doc))
    assert generate(f"downset:@{path}").n == 4
    with pytest.raises(ValueError):
        generate("nosuch:1")


def test_caps_enforced():
    with pytest.raises(TooLarge):
        chain(5000)
    with pytest.raises(TooLarge):
        boolean(13)
    big = CayleyTable(
        order=65,
        table=tuple(tuple((a + b) % 65 for b in range(65)) for a in range(65)),
        identity=0,
    )
    with pytest.raises(InvalidGroup):
        subgroups(big)


def test_cayley_json_round_trip():
    g = load_catalog_group("s3")
    doc = g.to_json_dict()
    assert set(doc) == {"order", "identity", "table"}
    again = CayleyTable.from_json_dict(doc, name="s3")
    assert again.table == g.table
