"""Row-space arithmetic over the prime field GF(p).

Subspaces of GF(p)^k are represented as tuples of row vectors in reduced
row echelon form, which makes the representation canonical: two tuples are
equal iff the row spaces are equal.
"""

from itertools import combinations, product


def rref(rows, p):
    """Reduced row echelon form of the span of `rows`, as a canonical tuple."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    k = len(mat[0])
    out = []
    col = 0
    rows_left = mat
    while rows_left and col < k:
        pivot_row = next((r for r in rows_left if r[col] % p != 0), None)
        if pivot_row is None:
            col += 1
            continue
        rows_left.remove(pivot_row)
        inv = pow(pivot_row[col], p - 2, p)
        pivot_row = [(v * inv) % p for v in pivot_row]
        for r in rows_left:
            c = r[col] % p
            if c:
                for j in range(k):
                    r[j] = (r[j] - c * pivot_row[j]) % p
        for r in out:
            c = r[col] % p
            if c:
                for j in range(k):
                    r[j] = (r[j] - c * pivot_row[j]) % p
        out.append(pivot_row)
        rows_left = [r for r in rows_left if any(v % p for v in r)]
        col += 1
    return tuple(tuple(v % p for v in r) for r in out)


def dim(space):
    return len(space)


def contains(space, vector, p):
    """True if `vector` lies in the row space."""
    v = [x % p for x in vector]
    for row in space:
        lead = next(j for j, x in enumerate(row) if x)
        c = v[lead]
        if c:
            for j in range(len(v)):
                v[j] = (v[j] - c * row[j]) % p
    return not any(v)


def contains_space(outer, inner, p):
    return all(contains(outer, r, p) for r in inner)


def sum_space(a, b, p):
    return rref(list(a) + list(b), p)


def nullspace(rows, p, k):
    """Basis of {x in GF(p)^k : rows @ x = 0}, as a canonical rref tuple."""
    r = rref(rows, p)
    pivots = [next(j for j, x in enumerate(row) if x) for row in r]
    free = [j for j in range(k) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * k
        v[f] = 1
        for row, piv in zip(r, pivots):
            v[piv] = (-row[f]) % p
        basis.append(v)
    return rref(basis, p)


def intersect(a, b, p):
    """Intersection of two row spaces in GF(p)^k."""
    if not a or not b:
        return ()
    k = len(a[0])
    # Solve lam @ a = mu @ b: kernel of the (da+db) x k system stacked as rows,
    # working on coefficient vectors (lam, mu).
    da, db = len(a), len(b)
    cols = []
    for j in range(k):
        cols.append([a[i][j] for i in range(da)] + [(-b[i][j]) % p for i in range(db)])
    kern = nullspace(cols, p, da + db)
    vecs = []
    for coef in kern:
        v = [0] * k
        for i in range(da):
            for j in range(k):
                v[j] = (v[j] + coef[i] * a[i][j]) % p
        vecs.append(v)
    return rref(vecs, p)


def full_space(k, p):
    ident = []
    for i in range(k):
        row = [0] * k
        row[i] = 1
        ident.append(tuple(row))
    return tuple(ident)


def subspaces_of(space, d, p):
    """All d-dimensional subspaces of a row space, as canonical rref tuples.

    Enumerates rref matrices in the internal coordinates of `space` and maps
    back, so the count is the Gaussian binomial [dim(space), d]_p.
    """
    n = len(space)
    if d < 0 or d > n:
        return
    if d == 0:
        yield ()
        return
    k = len(space[0])
    for pivots in combinations(range(n), d):
        free_positions = []
        for i, piv in enumerate(pivots):
            for j in range(piv + 1, n):
                if j not in pivots:
                    free_positions.append((i, j))
        for values in product(range(p), repeat=len(free_positions)):
            coeffs = [[0] * n for _ in range(d)]
            for i, piv in enumerate(pivots):
                coeffs[i][piv] = 1
            for (i, j), v in zip(free_positions, values):
                coeffs[i][j] = v
            rows = []
            for crow in coeffs:
                v = [0] * k
                for c, srow in zip(crow, space):
                    if c:
                        for t in range(k):
                            v[t] = (v[t] + c * srow[t]) % p
                rows.append(v)
            yield rref(rows, p)
