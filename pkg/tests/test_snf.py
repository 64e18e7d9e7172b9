import random

from h4cert.snf import invariant_factors, smith_form, xgcd
from oracles import determinantal_invariant_factors


def _random_rows(rng, nrows, ncols):
    rows = []
    for _ in range(nrows):
        rows.append({c: rng.randint(-6, 6) for c in range(ncols) if rng.random() < 0.6})
    return rows


def _apply(row, W):
    out = {}
    for c, col in enumerate(W):
        v = sum(row.get(k, 0) * x for k, x in col.items())
        if v:
            out[c] = v
    return out


def test_xgcd():
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (0, 0)]:
        x, y, g = xgcd(a, b)
        assert x * a + y * b == g >= 0


def test_invariant_factors_against_minors():
    rng = random.Random(2024)
    for _ in range(300):
        nr, nc = rng.randint(1, 4), rng.randint(1, 4)
        rows = _random_rows(rng, nr, nc)
        assert invariant_factors(rows, nc) == determinantal_invariant_factors(rows, nc)


def test_column_transform_is_unimodular_and_diagonalizing():
    rng = random.Random(5)
    for _ in range(200):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        rows = _random_rows(rng, nr, nc)
        sf = smith_form(rows, nc)
        for i in range(nc):
            ident = _apply(sf.Winv[i], sf.W)
            assert ident == {i: 1}
        pivot_cols = {c for c, _ in sf.pivots}
        for r in rows:
            assert set(_apply(r, sf.W)) <= pivot_cols
        fs = sf.invariant_factors
        assert all(b % a == 0 for a, b in zip(fs, fs[1:]))


def test_known_example():
    rows = [{0: 2, 1: 4, 2: 4}, {0: -6, 1: 6, 2: 12}, {0: 10, 1: -4, 2: -16}]
    assert invariant_factors(rows, 3) == [2, 6, 12]
