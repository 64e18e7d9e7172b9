"""Exact integer lattices and Smith normal form on sparse rows.

Vectors and matrix rows are dicts ``{column: nonzero int}``.  Only column
transforms are tracked by :func:`smith_form`; row operations are free,
which is all that is needed to change coordinates on Z^n.
"""

from dataclasses import dataclass


def xgcd(a, b):
    """(x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def axpy(y, a, x):
    """y += a*x in place on sparse dicts."""
    if not a:
        return
    for k, v in x.items():
        t = y.get(k, 0) + a * v
        if t:
            y[k] = t
        else:
            y.pop(k, None)


def combine(a, x, b, y):
    """a*x + b*y as a new sparse dict."""
    out = {}
    if a:
        for k, v in x.items():
            out[k] = a * v
    if b:
        for k, v in y.items():
            t = out.get(k, 0) + b * v
            if t:
                out[k] = t
            else:
                out.pop(k, None)
    return {k: v for k, v in out.items() if v}


def dot(x, y):
    if len(x) > len(y):
        x, y = y, x
    return sum(v * y[k] for k, v in x.items() if k in y)


class Lattice:
    """Echelon basis of the Z-span of the vectors added so far."""

    def __init__(self):
        self.rows = {}

    def reduce(self, vec):
        """Reduce vec against the basis; returns (remainder, pivot or None)."""
        v = dict(vec)
        while v:
            j = min(v)
            row = self.rows.get(j)
            if row is None:
                return v, j
            a, b = row[j], v[j]
            if b % a:
                return v, j
            axpy(v, -(b // a), row)
        return v, None

    def add(self, vec):
        v = {k: c for k, c in vec.items() if c}
        while v:
            j = min(v)
            row = self.rows.get(j)
            if row is None:
                if v[j] < 0:
                    v = {k: -c for k, c in v.items()}
                self.rows[j] = v
                return
            a, b = row[j], v[j]
            if b % a == 0:
                axpy(v, -(b // a), row)
            else:
                x, y, g = xgcd(a, b)
                self.rows[j] = combine(x, row, y, v)
                v = combine(-(b // g), row, a // g, v)

    def __contains__(self, vec):
        rem, _ = self.reduce(vec)
        return not rem

    def basis(self):
        return [self.rows[j] for j in sorted(self.rows)]

    @property
    def rank(self):
        return len(self.rows)


def lattice_basis(vectors):
    lat = Lattice()
    for v in vectors:
        lat.add(v)
    return lat.basis()


@dataclass
class SmithForm:
    """Invariant factors of a matrix A (rows given) with a column transform.

    ``pivots`` lists (column, d) in divisibility-chain order; columns not
    listed span the kernel directions.  With W the tracked unimodular
    transform, every row of A*W is zero outside the pivot columns and the
    row space of A is spanned by d * (row c of W^-1) over the pivots.
    ``W`` is stored as column dicts, ``Winv`` as row dicts.
    """

    ncols: int
    pivots: list
    W: list
    Winv: list

    @property
    def rank(self):
        return len(self.pivots)

    @property
    def invariant_factors(self):
        return [d for _, d in self.pivots]

    def pivot_map(self):
        return dict(self.pivots)


def _col_op(W, Winv, j, c, q):
    # column_j += q * column_c
    if q and W is not None:
        axpy(W[j], q, W[c])
        axpy(Winv[c], -q, Winv[j])


def _col_pair(W, Winv, c, j, x, y, u, v):
    # (col_c, col_j) <- (x col_c + y col_j, u col_c + v col_j), det = x v - y u = 1
    if W is None:
        return
    wc, wj = W[c], W[j]
    W[c] = combine(x, wc, y, wj)
    W[j] = combine(u, wc, v, wj)
    ic, ij = Winv[c], Winv[j]
    Winv[c] = combine(v, ic, -u, ij)
    Winv[j] = combine(-y, ic, x, ij)


class _SparseMatrix:
    """Rows by id plus a column -> row-ids index, kept in sync on every update."""

    def __init__(self, rows):
        self.rows = {}
        self.cols = {}
        for i, r in enumerate(rows):
            r = {c: v for c, v in r.items() if v}
            if r:
                self.rows[i] = r
                for c in r:
                    self.cols.setdefault(c, set()).add(i)

    def pop_row(self, i):
        row = self.rows.pop(i)
        for c in row:
            self.cols[c].discard(i)
        return row

    def put_row(self, i, row):
        for c in row:
            self.cols.setdefault(c, set()).add(i)
        if row:
            self.rows[i] = row

    def axpy_row(self, i, q, src):
        row = self.rows[i]
        for c, v in src.items():
            t = row.get(c, 0) + q * v
            if t:
                if c not in row:
                    self.cols.setdefault(c, set()).add(i)
                row[c] = t
            elif c in row:
                del row[c]
                self.cols[c].discard(i)
        if not row:
            del self.rows[i]

    def set_entry(self, i, c, v):
        row = self.rows[i]
        if v:
            if c not in row:
                self.cols.setdefault(c, set()).add(i)
            row[c] = v
        elif c in row:
            del row[c]
            self.cols[c].discard(i)

    def choose_pivot(self):
        # Sparsest column first; inside it prefer a unit entry on a short row.
        best = None
        for c in sorted(self.cols, key=lambda c: (len(self.cols[c]), c)):
            ids = self.cols[c]
            if not ids:
                continue
            for i in ids:
                v = abs(self.rows[i][c])
                key = (v != 1, v, len(self.rows[i]), len(ids), i)
                if best is None or key < best[0]:
                    best = (key, i, c)
            if best[0][0] is False:
                return best[1], best[2]
        return best[1], best[2]


def smith_form(rows, ncols, track=True):
    """Smith normal form of the matrix whose rows are the given sparse dicts.

    Pivots favour unit entries in sparse columns (to limit fill-in); gcd
    steps use 2x2 unimodular transforms so everything stays exact.  Returns
    a :class:`SmithForm`.
    """
    M = _SparseMatrix(rows)
    W = [{i: 1} for i in range(ncols)] if track else None
    Winv = [{i: 1} for i in range(ncols)] if track else None
    pivots = []
    while M.rows:
        ri, c = M.choose_pivot()
        R = M.pop_row(ri)
        while True:
            # clear column c in the remaining rows
            for i in sorted(M.cols.get(c, ())):
                b = M.rows[i][c]
                a = R[c]
                if b % a == 0:
                    M.axpy_row(i, -(b // a), R)
                else:
                    x, y, g = xgcd(a, b)
                    row = M.pop_row(i)
                    newR = combine(x, R, y, row)
                    M.put_row(i, combine(-(b // g), R, a // g, row))
                    R = newR
            # clear row R outside column c with column operations
            dirty = False
            for j in sorted(k for k in R if k != c):
                b = R.get(j)
                if not b:
                    continue
                a = R[c]
                if b % a == 0:
                    del R[j]
                    _col_op(W, Winv, j, c, -(b // a))
                    continue
                x, y, g = xgcd(a, b)
                u, v = -(b // g), a // g
                R[c] = g
                del R[j]
                for i in sorted(M.cols.get(j, ())):
                    rj = M.rows[i][j]
                    rc = M.rows[i].get(c, 0)
                    nc, nj = x * rc + y * rj, u * rc + v * rj
                    M.set_entry(i, j, nj)
                    M.set_entry(i, c, nc)
                    if nc:
                        dirty = True
                    if not M.rows[i]:
                        del M.rows[i]
                _col_pair(W, Winv, c, j, x, y, u, v)
                if dirty:
                    # column c is no longer clean; clear it before more column ops
                    break
            if not dirty:
                break
        pivots.append([c, abs(R[c])])
    _fix_divisibility(pivots, W, Winv)
    return SmithForm(ncols, [tuple(p) for p in pivots], W, Winv)


def _fix_divisibility(pivots, W, Winv):
    pivots.sort(key=lambda p: (p[1], p[0]))
    n = len(pivots)
    for i in range(n):
        for j in range(i + 1, n):
            ca, a = pivots[i]
            cb, b = pivots[j]
            if b % a == 0:
                continue
            x, y, g = xgcd(a, b)
            # diag(a, b): col_a += col_b; row gcd step; col_b -= (y b / g) col_a
            _col_op(W, Winv, ca, cb, 1)
            _col_op(W, Winv, cb, ca, -(y * b // g))
            pivots[i][1] = g
            pivots[j][1] = a * b // g
    # entries equal to 1 first, then the chain; chain order is already sorted
    pivots.sort(key=lambda p: p[1])


def invariant_factors(rows, ncols):
    return smith_form(rows, ncols, track=False).invariant_factors
