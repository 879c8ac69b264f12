"""Candidate enumeration, domination, the corner search, and canonical forms."""

from fractions import Fraction
from itertools import permutations
from math import ceil, comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latticegap import (
    EXTREMAL_GAP_DENOMINATOR,
    IntegerSet,
    IntPoly,
    LatticeSimplex,
    PairEncoding,
    apply_cube_symmetry,
    canonical_pair_key,
    canonicalize_pair,
    certify_coarse_bound_margin,
    certify_domination,
    certify_optimal_search,
    corner_map,
    corner_map_polynomials,
    cube_symmetries,
    domination_records,
    encode_pair,
    extremal_gap_squared,
    extremal_pair,
    gen_domination_candidates,
    gen_search_candidates,
    gram_det,
    reconstruct_pair,
    search_optimal_encodings,
    sq_distance,
)
from latticegap.certify import _abs_unit_set, _chunks, _nonneg_set

# The complete set of corner patterns the search must find, in candidate
# order.  Regeneration-checked: delete and re-run the search to re-derive.
OPTIMAL_PATTERNS = (
    (0, 1, 3, 1, 0, 0, 0, -1, -2),
    (0, 1, 3, 1, 0, 0, 1, 0, -1),
    (0, 3, 1, 1, 0, 0, 0, -2, -1),
    (0, 3, 1, 1, 0, 0, 1, -1, 0),
    (1, 0, 0, 0, 1, 3, 0, 1, 2),
    (1, 0, 0, 0, 1, 3, 1, 0, 1),
    (1, 0, 0, 0, 3, 1, 0, 2, 1),
    (1, 0, 0, 0, 3, 1, 1, 1, 0),
)


class TestCandidateSets:
    def test_domination_count_by_inclusion_exclusion(self):
        # six non-negatives summing to 6, minus assignments where a column
        # pair vanishes, two pairs, three pairs (impossible at sum 6)
        expected = comb(11, 5) - 3 * comb(9, 3) + 3 * comb(7, 1)
        cands = gen_domination_candidates()
        assert len(cands) == expected == 231

    def test_domination_structure(self):
        cands = gen_domination_candidates()
        assert len(set(cands)) == len(cands)
        assert list(cands) == sorted(cands)
        for pre in cands:
            assert sum(pre[:6]) == 6
            assert pre[6:] == (0, 0, 0)
            assert all(pre[i] >= 0 for i in range(6))
            assert all(pre[i] + pre[i + 3] >= 1 for i in range(3))

    def test_search_count_by_pair_sums(self):
        # group by the three column-pair sums s_i >= 1: each pair splits
        # s_i + 1 ways and allows s_i + 1 offsets, independently per axis
        expected = 0
        for s1 in range(1, 4):
            for s2 in range(1, 4):
                for s3 in range(1, 4):
                    if s1 + s2 + s3 <= 5:
                        expected += ((s1 + 1) * (s2 + 1) * (s3 + 1)) ** 2
        cands = gen_search_candidates()
        assert len(cands) == expected == 2236

    def test_search_structure(self):
        cands = gen_search_candidates()
        assert len(set(cands)) == len(cands)
        assert list(cands) == sorted(cands)
        for pre in cands:
            assert all(pre[i] >= 0 for i in range(6))
            assert sum(pre[:6]) <= 5
            assert all(pre[i] + pre[i + 3] >= 1 for i in range(3))
            assert 0 <= pre[6] <= pre[0] + pre[3]
            assert -pre[1] <= pre[7] <= pre[4]
            assert -pre[2] <= pre[8] <= pre[5]


class TestIntegerSet:
    def test_empty(self):
        assert IntegerSet().is_empty
        assert not IntegerSet((3,)).is_empty
        assert not IntegerSet((), 5).is_empty

    def test_contains(self):
        s = IntegerSet((2, 4), 10)
        assert s.contains(2) and s.contains(4) and s.contains(10)
        assert s.contains(11 ** 9)
        assert not s.contains(3) and not s.contains(9)

    def test_intersects(self):
        assert IntegerSet((), 5).intersects(IntegerSet((), 10 ** 9))
        assert IntegerSet((3,)).intersects(IntegerSet((), 3))
        assert IntegerSet((), 3).intersects(IntegerSet((7,)))
        assert not IntegerSet((1, 2)).intersects(IntegerSet((3,), None))
        assert not IntegerSet((1,)).intersects(IntegerSet((), 2))
        assert not IntegerSet().intersects(IntegerSet((), 0))

    @given(st.frozensets(st.integers(-5, 15), max_size=4),
           st.one_of(st.none(), st.integers(-5, 15)),
           st.frozensets(st.integers(-5, 15), max_size=4),
           st.one_of(st.none(), st.integers(-5, 15)))
    def test_intersects_is_symmetric(self, f1, t1, f2, t2):
        a = IntegerSet(tuple(sorted(f1)), t1)
        b = IntegerSet(tuple(sorted(f2)), t2)
        assert a.intersects(b) == b.intersects(a)
        if a.tail_start is None and b.tail_start is None:
            assert a.intersects(b) == bool(f1 & f2)

    def test_abs_unit_set(self):
        assert _abs_unit_set(IntPoly((0, 1)), 0).finite == (1,)
        always = _abs_unit_set(IntPoly((1,)), 6)
        assert always.tail_start == 6 and always.finite == ()
        assert _abs_unit_set(IntPoly((5,)), 0).is_empty

    def test_nonneg_set_membership(self):
        s = _nonneg_set(IntPoly((-50, 0, 1)), 0)
        assert not s.contains(7)
        assert s.contains(8) and s.contains(10 ** 6)
        bounded = _nonneg_set(IntPoly((100, 0, -1)), 0)
        assert bounded.contains(10) and not bounded.contains(11)
        assert bounded.tail_start is None
        assert _nonneg_set(IntPoly(), 3).tail_start == 3
        assert _nonneg_set(IntPoly((-5,)), 0).is_empty
        assert _nonneg_set(IntPoly((1, 0, 1)), 2).tail_start == 2
        assert _nonneg_set(IntPoly((-1, 0, -1)), 2).is_empty

    @given(st.lists(st.integers(-6, 6), min_size=1, max_size=4).map(IntPoly),
           st.integers(-4, 4))
    def test_nonneg_set_matches_evaluation(self, p, start):
        s = _nonneg_set(p, start)
        horizon = start + 2
        if p.degree >= 1:
            horizon = max(horizon, ceil(p.root_bound()) + 2)
        for j in range(start, horizon + 1):
            assert s.contains(j) == (p(j) >= 0)
        assert not any(j < start for j in s.finite)
        if s.tail_start is not None:
            assert s.tail_start >= start


class TestDomination:
    def test_certificate_passes_with_frozen_margins(self):
        cert = certify_domination()
        assert cert.passed
        assert cert.witnesses == ()
        assert cert.get("candidates") == 231
        assert cert.get("start") == 6
        assert cert.get("min_margin_at_start") == 74
        upper = cert.get("max_root_interval_upper")
        assert upper == Fraction(21, 4)
        assert upper < 6

    def test_records_match_the_polynomials(self):
        records = domination_records()
        assert len(records) == 231
        for pre, ok, margin, _ in records[:20]:
            assert ok
            _, gram_poly = corner_map_polynomials(pre)
            assert margin == (EXTREMAL_GAP_DENOMINATOR - gram_poly)(6)
            assert margin >= 74

    def test_tightened_target_shifts_every_margin_by_one(self):
        base = domination_records()
        tight = domination_records(target=EXTREMAL_GAP_DENOMINATOR - 1)
        assert len(base) == len(tight)
        for (pre_b, _, m_b, _), (pre_t, _, m_t, _) in zip(base, tight):
            assert pre_b == pre_t
            assert m_t == m_b - 1

    def test_domination_fails_at_small_cubes(self):
        cert = certify_domination(start=1)
        assert not cert.passed
        assert len(cert.witnesses) == 76
        assert (0, 0, 0, 1, 1, 4, 0, 0, 0) in cert.witnesses

    def test_workers_do_not_change_the_records(self):
        assert domination_records(workers=2) == domination_records()


class TestSearch:
    def test_finds_exactly_the_optimal_patterns(self):
        assert search_optimal_encodings() == OPTIMAL_PATTERNS

    def test_filter_order_commutes(self):
        assert search_optimal_encodings(g_first=True) == OPTIMAL_PATTERNS

    def test_workers_do_not_change_the_winners(self):
        assert search_optimal_encodings(workers=2) == OPTIMAL_PATTERNS

    def test_certificate_identifies_the_extremal_orbit(self):
        cert = certify_optimal_search()
        assert cert.passed
        assert cert.get("winner_count") == 8
        assert cert.get("winners") == OPTIMAL_PATTERNS
        assert cert.witnesses == OPTIMAL_PATTERNS

    def test_certificate_fails_without_winners(self):
        cert = certify_optimal_search(candidates=((1, 0, 0, 0, 1, 1, 0, 0, 0),))
        assert not cert.passed
        assert cert.get("winner_count") == 0

    def test_every_winner_realizes_the_closed_form(self):
        for pre in OPTIMAL_PATTERNS:
            for k in (6, 9):
                pair = reconstruct_pair(corner_map(pre, k))
                assert sq_distance(*pair) == extremal_gap_squared(k)


class TestReconstruction:
    def test_known_image_at_six(self):
        pair = reconstruct_pair(corner_map((1, 0, 0, 0, 1, 3, 0, 1, 2), 6))
        assert pair[0].vertices == ((6, 0, 0), (1, 6, 6))
        assert pair[1].vertices == ((0, 1, 2), (6, 6, 5))
        assert sq_distance(*pair) == Fraction(1, 6466)
        assert canonical_pair_key(*pair) == canonical_pair_key(*extremal_pair(6))

    def test_dependent_columns_rejected(self):
        with pytest.raises(ValueError):
            reconstruct_pair(PairEncoding((1, 0, 0, 2, 0, 0, 0, 0, 1), 2))

    def test_unrealizable_window_rejected(self):
        with pytest.raises(ValueError):
            reconstruct_pair(PairEncoding((2, 0, 0, 0, 2, 0, -2, 0, 0), 2))

    @given(st.tuples(*[st.integers(0, 2)] * 12))
    def test_encoding_roundtrip(self, raw):
        k = 2
        try:
            s1 = LatticeSimplex((raw[0:3], raw[3:6]), k)
            s2 = LatticeSimplex((raw[6:9], raw[9:12]), k)
        except ValueError:
            return
        enc = encode_pair(s1, s2)
        if gram_det(enc) == 0:
            with pytest.raises(ValueError):
                reconstruct_pair(enc)
            return
        rebuilt = reconstruct_pair(enc)
        assert encode_pair(*rebuilt).coords == enc.coords
        assert sq_distance(*rebuilt) == sq_distance(s1, s2)
        # the rebuilt pair sits at a lattice translation of the original
        shift = tuple(a - b for a, b in
                      zip(rebuilt[0].vertices[0], s1.vertices[0]))
        for orig, new in zip(s1.vertices + s2.vertices,
                             rebuilt[0].vertices + rebuilt[1].vertices):
            assert tuple(a + s for a, s in zip(orig, shift)) == new


class TestCanonicalForms:
    def test_rejects_mixed_cubes(self):
        with pytest.raises(ValueError):
            canonical_pair_key(LatticeSimplex(((0, 0, 0),), 1),
                               LatticeSimplex(((0, 0, 0),), 2))

    def test_swap_invariance(self):
        p, q = extremal_pair(4)
        assert canonical_pair_key(p, q) == canonical_pair_key(q, p)

    @given(st.integers(0, 47), st.booleans(), st.booleans(), st.booleans())
    def test_symmetry_invariance(self, idx, swap, flip1, flip2):
        k = 4
        p, q = extremal_pair(k)
        sym = cube_symmetries(3)[idx]

        def transform(s, flip):
            verts = tuple(apply_cube_symmetry(v, sym, k) for v in s.vertices)
            if flip:
                verts = verts[::-1]
            return LatticeSimplex(verts, k)

        a, b = transform(p, flip1), transform(q, flip2)
        if swap:
            a, b = b, a
        assert canonical_pair_key(a, b) == canonical_pair_key(p, q)

    def test_distinct_orbits_get_distinct_keys(self):
        p, q = extremal_pair(4)
        other = (LatticeSimplex(((0, 0, 0), (1, 0, 0)), 4),
                 LatticeSimplex(((0, 0, 1), (1, 1, 1)), 4))
        assert canonical_pair_key(p, q) != canonical_pair_key(*other)

    def test_canonicalize_is_idempotent(self):
        pair = canonicalize_pair(*extremal_pair(5))
        again = canonicalize_pair(*pair)
        assert (again[0].vertices, again[1].vertices) == \
            (pair[0].vertices, pair[1].vertices)
        assert canonical_pair_key(*pair) == canonical_pair_key(*extremal_pair(5))


class TestCoarseBound:
    def test_certificate_and_direct_check(self):
        cert = certify_coarse_bound_margin()
        assert cert.passed
        assert cert.subject == "coarse-bound-margin"
        for k in range(1, 51):
            assert extremal_gap_squared(k) < Fraction(1, 3 * k ** 4)


class TestChunks:
    @given(st.lists(st.integers(), max_size=30), st.integers(1, 8))
    def test_partition_properties(self, seq, n):
        chunks = _chunks(tuple(seq), n)
        assert [x for c in chunks for x in c] == seq
        assert len(chunks) <= n
        if seq:
            sizes = [len(c) for c in chunks]
            assert max(sizes) - min(sizes) <= 1
            assert all(s > 0 for s in sizes)
