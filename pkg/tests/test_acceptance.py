"""End-to-end checks, one group of tests per acceptance criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS or FAIL line per criterion.
"""
import itertools
import time

import numpy as np
import pytest

from fuscat import io
from fuscat.characters import character_table, fusion_coefficients, rep_fusion_ring
from fuscat.cohomology import (
    coboundary,
    cohomologous,
    cyclic_representative,
    h3_order,
    is_coboundary,
    is_cocycle,
    random_2cochain,
)
from fuscat.errors import StructureError
from fuscat.equivariantization import (
    GroupAction,
    check_equivariant_sequence,
    equivariant_simples,
    forgetful_functor,
    trivial_action,
    validate_action,
)
from fuscat.functors import (
    fp_index,
    index2_check,
    is_dominant,
    is_normal,
    kernel_simples,
    monad_checks,
    monad_matrix,
    normality_witnesses,
    verify_exact_sequence,
)
from fuscat.fusion_ring import FusionRing, fpdim, generated_subring, is_pointed, trivial_ring, validate
from fuscat.groups import (
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    normal_subgroups,
    quaternion_group,
    symmetric_group,
)
from fuscat.pointed import PointedCategory, group_ring, is_simple_eno, is_simple_pointed, untwisted

from corpus import entities
from oracles import KNOWN_DEGREES, perron_dims, ring_axioms_hold

FUNCTORS = entities("functor")
ACTIONS = entities("action")
FUNCTOR_IDS = [n for n, _ in FUNCTORS]
ACTION_IDS = [n for n, _ in ACTIONS]


def ac(code):
    return pytest.mark.acceptance(code)


# ---------------------------------------------------------------- AC1

PIPELINES = {
    "A3-S3-Z2": ("s3_pipeline", "infl_Z2_S3", "res_S3_Z3", (2, 6, 3)),
    "Z2-Z4-Z2": ("z4_pipeline", "infl_Z2q_Z4", "res_Z4_Z2", (2, 4, 2)),
    "V4-A4-Z3": ("a4_pipeline", "infl_Z3_A4", "res_A4_V4", (3, 12, 4)),
}
_ac1_seconds = []


@ac("AC1")
@pytest.mark.parametrize("name", PIPELINES)
def test_ac1_group_sequences(name):
    start = time.perf_counter()
    file, embed, functor, dims = PIPELINES[name]
    ws = io.load(file)
    r = verify_exact_sequence(ws.get(embed, "functor"), ws.get(functor, "functor"))
    _ac1_seconds.append(time.perf_counter() - start)
    assert r.verdict
    assert r.embedding_valid and r.image_equals_kernel and r.dominant and r.normal
    assert r.multiplicativity_residual < 1e-6
    assert r.fpdimy_max_residual < 1e-6
    assert (r.fpdim_sub, r.fpdim_mid, r.fpdim_quot) == pytest.approx(dims, abs=1e-6)


@ac("AC1")
def test_ac1_runtime():
    if len(_ac1_seconds) < len(PIPELINES):
        for name in PIPELINES:
            test_ac1_group_sequences(name)
    assert sum(_ac1_seconds) < 5.0


# ---------------------------------------------------------------- AC2

@ac("AC2")
def test_ac2_normal_restriction():
    ws = io.load("s3_pipeline")
    f = ws.get("res_S3_Z3", "functor")
    assert is_dominant(f) and is_normal(f)
    degrees = fpdim(f.source).dims
    kernel = kernel_simples(f)
    assert len(kernel) == 2 and all(degrees[x] == pytest.approx(1) for x in kernel)
    # trivial and sign
    t = character_table(ws.get("S3"))
    assert sorted(kernel) == [i for i, d in enumerate(t.degrees) if d == 1]


@ac("AC2")
def test_ac2_non_normal_restriction():
    f = io.load("s3_pipeline").get("res_S3_Z2", "functor")
    assert is_dominant(f) and not is_normal(f)
    fp = fpdim(f.source)
    witnesses = normality_witnesses(f)
    assert len(witnesses) == 1
    x = witnesses[0]
    assert fp.dims[x] == pytest.approx(2)
    assert f.m[f.target.unit, x] == 1


# ---------------------------------------------------------------- AC3

@ac("AC3")
@pytest.mark.parametrize("file,functor", [("s3_pipeline", "res_S3_Z3"), ("d4_index2", "res_D4_Z4")])
def test_ac3_index_two(file, functor):
    f = io.load(file).get(functor, "functor")
    r = index2_check(f)
    assert r.passed
    assert r.fp_index == pytest.approx(2, abs=1e-6)
    assert len(r.unit_hits) == 1 and r.J == r.unit_hits[0]
    assert r.J_invertible and r.J_squared_unit and r.normal
    ring = f.source
    assert r.kernel == tuple(sorted((ring.unit, r.J)))
    # the kernel is the group ring of Z2
    sub = generated_subring(ring, [r.J])
    assert sub == frozenset(r.kernel)
    order = [ring.unit, r.J]
    table = [[order.index(int(np.argmax(ring.product(a, b)))) for b in order] for a in order]
    assert table == group_ring(cyclic_group(2)).N.argmax(axis=2).tolist()


# ---------------------------------------------------------------- AC4

DOMINANT = [(n, f) for n, f in FUNCTORS if is_dominant(f)]


@ac("AC4")
def test_ac4_enough_dominant_functors():
    assert len(DOMINANT) >= 6


@ac("AC4")
@pytest.mark.parametrize("name,f", DOMINANT, ids=[n for n, _ in DOMINANT])
def test_ac4_fp_index_identity(name, f):
    dims_c = perron_dims(f.source.N)
    dims_d = perron_dims(f.target.N)
    ratio = (dims_c ** 2).sum() / (dims_d ** 2).sum()
    weighted = sum(f.m[f.target.unit, x] * dims_c[x] for x in range(f.source.rank))
    assert abs(ratio - weighted) < 1e-6
    assert fp_index(f) == pytest.approx(ratio, abs=1e-6)


# ---------------------------------------------------------------- AC5

@ac("AC5")
@pytest.mark.parametrize("name,f", FUNCTORS, ids=FUNCTOR_IDS)
def test_ac5_monad_agreement(name, f):
    T = monad_matrix(f)
    assert np.array_equal(T, f.m @ f.m.T)
    u = f.target.unit
    unit_column_trivial = not np.delete(T[:, u], u).any()
    assert is_normal(f) == unit_column_trivial
    r = monad_checks(f)
    assert r.agrees and r.passed
    if is_dominant(f):
        dims_c = perron_dims(f.source.N)
        dims_d = perron_dims(f.target.N)
        index = (dims_c ** 2).sum() / (dims_d ** 2).sum()
        fp_t = dims_d @ T
        assert abs(fp_t[u] - index) < 1e-6
        assert np.abs(fp_t - fp_t[u] * dims_d).max() < 1e-6


# ---------------------------------------------------------------- AC6

_ac6_seconds = []


def timed(fn):
    start = time.perf_counter()
    try:
        return fn()
    finally:
        _ac6_seconds.append(time.perf_counter() - start)


@ac("AC6")
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_ac6_h3_of_cyclic(n):
    assert timed(lambda: h3_order(cyclic_group(n), n)) == n


@ac("AC6")
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_ac6_cyclic_representatives_distinct(n):
    reps = [cyclic_representative(n, q) for q in range(n)]
    assert all(is_cocycle(w) for w in reps)
    for q, r in itertools.combinations(range(n), 2):
        assert not timed(lambda: cohomologous(reps[q], reps[r]))


@ac("AC6")
def test_ac6_simplicity_verdicts():
    assert timed(lambda: is_simple_pointed(untwisted(cyclic_group(5)))).simple
    s3 = symmetric_group(3)
    r = timed(lambda: is_simple_pointed(untwisted(s3)))
    a3 = next(h for h in normal_subgroups(s3) if len(h) == 3)
    assert not r.simple and r.witness == a3
    z4 = cyclic_group(4)
    assert timed(lambda: is_simple_pointed(PointedCategory(z4, cyclic_representative(4, 1)))).simple


@ac("AC6")
def test_ac6_corpus_pointed_categories():
    ws = io.load("pointed_examples")
    expected = {"C_Z5": True, "C_S3": False, "C_Z4_omega1": True}
    for id, simple in expected.items():
        assert timed(lambda: is_simple_pointed(ws.get(id, "pointed"))).simple is simple


@ac("AC6")
@pytest.mark.parametrize("p", range(1, 14))
def test_ac6_eno_criterion(p):
    prime = p > 1 and all(p % d for d in range(2, p))
    assert timed(lambda: is_simple_eno(untwisted(cyclic_group(p)))) is prime


@ac("AC6")
def test_ac6_runtime():
    assert sum(_ac6_seconds) < 60.0


# ---------------------------------------------------------------- AC7

@ac("AC7")
def test_ac7_trivial_action_on_vec():
    a = trivial_action(cyclic_group(2), trivial_ring())
    es = equivariant_simples(a)
    assert es.fpdims == pytest.approx((1, 1))
    assert check_equivariant_sequence(a, es, forgetful_functor(a, es)).passed


@ac("AC7")
def test_ac7_inversion_on_z3():
    g = cyclic_group(3)
    a = GroupAction(cyclic_group(2), group_ring(g), [list(range(3)), [int(x) for x in g.inverse]])
    assert validate_action(a).ok
    es = equivariant_simples(a)
    assert sorted(es.fpdims) == pytest.approx([1, 1, 2])
    assert es.total == pytest.approx(6, abs=1e-9)
    assert sorted(round(d) for d in es.fpdims) == KNOWN_DEGREES["S3"]
    assert check_equivariant_sequence(a, es, forgetful_functor(a, es)).passed


@ac("AC7")
@pytest.mark.parametrize("name,a", ACTIONS, ids=ACTION_IDS)
def test_ac7_corpus_actions(name, a):
    es = equivariant_simples(a)
    ring_total = (perron_dims(a.ring.N) ** 2).sum()
    assert abs(es.total - a.group.order * ring_total) < 1e-6
    assert check_equivariant_sequence(a, es, forgetful_functor(a, es)).passed


# ---------------------------------------------------------------- AC8

NAMED_GROUPS = {
    **{f"Z{n}": (lambda n=n: cyclic_group(n)) for n in (1, 2, 3, 4, 5, 6, 7, 8)},
    "S3": lambda: symmetric_group(3),
    "D4": lambda: dihedral_group(4),
    "Q8": quaternion_group,
    "A4": lambda: alternating_group(4),
    "D5": lambda: dihedral_group(5),
    "S4": lambda: symmetric_group(4),
    "A5": lambda: alternating_group(5),
    "Z2xZ4": lambda: direct_product(cyclic_group(2), cyclic_group(4)),
}
CORPUS_GROUPS = [(n, g) for n, g in entities("group") if g.order <= 60]


def check_table(g, name=None):
    t = character_table(g)
    assert sum(d * d for d in t.degrees) == g.order
    assert t.orthogonality_residual() < 1e-6
    assert t.column_orthogonality_residual() < 1e-6
    if name in KNOWN_DEGREES:
        assert sorted(t.degrees) == KNOWN_DEGREES[name]
    raw = fusion_coefficients(t)
    assert np.abs(raw.imag).max() < 1e-6
    assert np.abs(raw.real - np.rint(raw.real)).max() < 1e-6
    ring = rep_fusion_ring(t)
    assert validate(ring).ok
    assert np.array_equal(ring.N, np.rint(raw.real).astype(np.int64))


@ac("AC8")
@pytest.mark.parametrize("name", NAMED_GROUPS)
def test_ac8_named_groups(name):
    check_table(NAMED_GROUPS[name](), name)


@ac("AC8")
@pytest.mark.parametrize("name,g", CORPUS_GROUPS, ids=[n for n, _ in CORPUS_GROUPS])
def test_ac8_corpus_groups(name, g):
    check_table(g)


# ---------------------------------------------------------------- AC9

def corpus_rings():
    seen = {}
    for name, ring in entities("ring"):
        if ring.rank <= 6:
            seen.setdefault(io.dumps(io.to_document(ring)), (name, ring))
    return sorted(seen.values(), key=lambda item: item[0])


RINGS = corpus_rings()


def bumped(ring, key, delta):
    n = dict(ring.n)
    n[key] = n.get(key, 0) + delta
    return FusionRing(ring.labels, ring.unit, ring.dual, {k: v for k, v in n.items() if v})


@ac("AC9")
@pytest.mark.parametrize("name,ring", RINGS, ids=[n for n, _ in RINGS])
def test_ac9_every_single_mutation_judged(name, ring):
    assert validate(ring).ok
    r = ring.rank
    for key in itertools.product(range(r), repeat=3):
        for delta in (1, -1):
            if ring.coefficient(*key) + delta < 0:
                continue
            mutated = bumped(ring, key, delta)
            ok = validate(mutated).ok
            assert ok == ring_axioms_hold(mutated.N, mutated.unit, mutated.dual), key
            i, j, k = key
            d = ring.dual
            if ring.unit in key or (d[i], k, j) != key or (k, d[j], i) != key:
                assert not ok, key


@ac("AC9")
@pytest.mark.parametrize("name,ring", RINGS, ids=[n for n, _ in RINGS])
def test_ac9_dual_mutations_flagged(name, ring):
    for a, b in itertools.combinations(range(ring.rank), 2):
        dual = list(ring.dual)
        dual[a], dual[b] = dual[b], dual[a]
        try:
            mutated = FusionRing(ring.labels, ring.unit, dual, ring.n)
        except StructureError:
            continue
        assert not validate(mutated).ok


SMALL_GROUPS = {
    **{f"Z{n}": (lambda n=n: cyclic_group(n)) for n in range(1, 9)},
    "V4": lambda: direct_product(cyclic_group(2), cyclic_group(2)),
    "S3": lambda: symmetric_group(3),
    "D4": lambda: dihedral_group(4),
    "Q8": quaternion_group,
    "Z2xZ4": lambda: direct_product(cyclic_group(2), cyclic_group(4)),
    "Z2^3": lambda: direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2)),
}


@ac("AC9")
@pytest.mark.parametrize("name", SMALL_GROUPS)
def test_ac9_d_squared_is_zero(name):
    g = SMALL_GROUPS[name]()
    rng = np.random.default_rng(sum(map(ord, name)))
    for _ in range(200):
        m = int(rng.integers(2, 13))
        a = coboundary(g, random_2cochain(g, m, rng), m)
        assert is_cocycle(a)
        assert is_coboundary(a)


@ac("AC9")
@pytest.mark.parametrize("name,f", FUNCTORS, ids=FUNCTOR_IDS)
def test_ac9_kernel_is_closed(name, f):
    kernel = kernel_simples(f)
    assert f.source.unit in kernel
    assert generated_subring(f.source, kernel) == kernel
    for x, y in itertools.product(kernel, repeat=2):
        assert set(np.nonzero(f.source.product(x, y))[0]) <= kernel
    for x in kernel:
        assert f.source.dual[x] in kernel


@ac("AC9")
@pytest.mark.parametrize("name,a", ACTIONS, ids=ACTION_IDS)
def test_ac9_fpdim_invariant_under_action(name, a):
    dims = perron_dims(a.ring.N)
    N = a.ring.N
    for perm in a.perms:
        p = np.asarray(perm)
        assert np.array_equal(N[np.ix_(p, p, p)], N)
        np.testing.assert_allclose(dims[p], dims, atol=1e-9)
        np.testing.assert_allclose(fpdim(a.ring).dims, perron_dims(N[np.ix_(p, p, p)]), atol=1e-9)


@ac("AC9")
def test_ac9_pointed_rings_from_corpus():
    for _, p in entities("pointed"):
        assert is_pointed(p.ring) and validate(p.ring).ok
