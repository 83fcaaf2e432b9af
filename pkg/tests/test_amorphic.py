from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schemefusion import generators as gen
from schemefusion.amorphic import (
    brute_force_amorphic,
    canonical_check,
    decide,
    implication_audit,
    restricted_growth_strings,
    self_duality_check,
    set_partitions,
)
from schemefusion.errors import TooManyClasses
from schemefusion.exact import RatMatrix
from schemefusion.fusion import fusing_pairs
from schemefusion.scheme import spectrum, validate_table

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


def spec_of(kind, params):
    return spectrum(validate_table(gen.build(gen.GeneratorSpec(kind, params))))


def audit_rows(spec, amorphic):
    return {r["name"]: r for r in implication_audit(spec.P, spec.Q, amorphic)}


# --- partitions ---------------------------------------------------------------------

@pytest.mark.parametrize("n", range(len(BELL)))
def test_growth_strings_count_is_bell(n):
    assert sum(1 for _ in restricted_growth_strings(n)) == BELL[n]


@pytest.mark.parametrize("n", range(1, 7))
def test_growth_strings_are_valid_and_ordered(n):
    seen = list(restricted_growth_strings(n))
    assert seen == sorted(seen) and len(set(map(tuple, seen))) == len(seen)
    for a in seen:
        assert a[0] == 0
        assert all(a[i] <= max(a[:i]) + 1 for i in range(1, n))


def test_set_partitions_cover_every_index():
    for pi in set_partitions(4):
        assert sorted(i for part in pi.parts for i in part) == [1, 2, 3, 4]


# --- canonical form ------------------------------------------------------------------

def test_canonical_grid(grid_spec):
    assert canonical_check(grid_spec.P).amorphic


def test_canonical_rejects_chain(chain222_spec):
    res = canonical_check(chain222_spec.P)
    assert not res.amorphic and "column 2" in res.reason


def test_canonical_one_class():
    assert canonical_check(RatMatrix([[1, 3], [1, -1]])).amorphic


# --- brute force ---------------------------------------------------------------------

def test_oracle_grid(grid_spec):
    res = brute_force_amorphic(grid_spec.P, exhaustive=True)
    assert res.amorphic and res.checked == 5 and res.fusing == 5


def test_oracle_chain_witness(chain222_spec):
    res = brute_force_amorphic(chain222_spec.P)
    assert not res.amorphic and str(res.failing) == "1,3|2"


def test_oracle_one_class():
    assert brute_force_amorphic(RatMatrix([[1, 3], [1, -1]])).amorphic


def test_oracle_class_limit():
    spec = spec_of("latin", (11, 11))
    with pytest.raises(TooManyClasses):
        brute_force_amorphic(spec.P)


scheme_params = st.one_of(
    st.tuples(st.just("complete"), st.tuples(st.integers(2, 6))),
    st.tuples(st.just("chain"), st.lists(st.integers(2, 3), min_size=2, max_size=4).map(tuple)),
    st.tuples(st.just("latin"), st.sampled_from([(3, 2), (3, 3), (5, 2), (5, 3), (5, 4), (7, 3)])),
    st.tuples(st.just("wreath-latin"), st.sampled_from([(2, 3, 2), (2, 3, 3), (2, 5, 2)])),
)


@given(scheme_params)
@settings(max_examples=30, deadline=None)
def test_deciders_agree(kp):
    spec = spec_of(*kp)
    assert canonical_check(spec.P).amorphic == brute_force_amorphic(spec.P).amorphic
    assert canonical_check(spec.P).amorphic == canonical_check(spec.Q).amorphic


# --- self-duality --------------------------------------------------------------------

def check_sigma(P, Q, sigma):
    n = P.nrows
    return sigma[0] == 0 and all(P[sigma[a], b] == Q[a, sigma[b]] for a in range(n) for b in range(n))


def test_grid_is_self_dual(grid_spec):
    sigma = self_duality_check(grid_spec.P, grid_spec.Q)
    assert sigma is not None and check_sigma(grid_spec.P, grid_spec.Q, sigma)


def test_latin_five_three_is_self_dual():
    spec = spec_of("latin", (5, 3))
    sigma = self_duality_check(spec.P, spec.Q)
    assert sigma is not None and check_sigma(spec.P, spec.Q, sigma)


def test_binary_chain_is_self_dual_by_reversal(chain222_spec):
    sigma = self_duality_check(chain222_spec.P, chain222_spec.Q)
    assert sigma == (0, 3, 2, 1) and check_sigma(chain222_spec.P, chain222_spec.Q, sigma)


def test_johnson_is_not_self_dual(johnson7_spec):
    assert sorted(johnson7_spec.P.row(0)) != sorted(johnson7_spec.multiplicities)
    assert self_duality_check(johnson7_spec.P, johnson7_spec.Q) is None


# --- implication audit -----------------------------------------------------------------

def test_audit_clique_plus_vertex(clique_vertex_spec):
    rows = audit_rows(clique_vertex_spec, amorphic=False)
    row = rows["connected-not-path"]
    assert not row["hypothesis"] and not row["conclusion"] and row["consistent"]
    assert all(r["consistent"] for r in rows.values())


def test_audit_latin_five_four():
    spec = spec_of("latin", (5, 4))
    rows = audit_rows(spec, amorphic=True)
    row = rows["all-relation-pairs-fuse"]
    assert row["hypothesis"] and row["conclusion"]
    assert all(r["consistent"] for r in rows.values())


def test_audit_four_class_path():
    rows = audit_rows(spec_of("chain", (2, 2, 2, 2)), amorphic=False)
    assert not rows["connected-not-path"]["hypothesis"]
    assert all(r["consistent"] for r in rows.values())


def test_audit_flags_three_class_path_edge_count(chain222_spec):
    """A 3-class path has 2 > comb(2, 2) fusing pairs yet is not amorphic; the audit says so."""
    rows = audit_rows(chain222_spec, amorphic=False)
    row = rows["edge-count-bound"]
    assert len(fusing_pairs(chain222_spec.P)) == 2 > comb(2, 2)
    assert row["hypothesis"] and not row["conclusion"] and not row["consistent"]
    others = [r for name, r in rows.items() if name != "edge-count-bound"]
    assert all(r["consistent"] for r in others)


def test_decide_grid(grid_spec):
    v = decide(grid_spec.P, grid_spec.Q)
    assert v.canonical and v.oracle and v.selfDual
    assert check_sigma(grid_spec.P, grid_spec.Q, v.permutation)


def test_decide_two_class_skips_self_duality():
    spec = spec_of("chain", (2, 3))
    v = decide(spec.P, spec.Q)
    assert v.canonical and v.selfDual is None
