"""Dense univariate polynomials and small matrices over commutative rings.

Polynomials are lists of coefficients in ascending degree.  Matrices are
lists of rows.  Nothing here knows which ring it works over; callers pass
``zero``/``one`` where an identity is needed, and everything else is done with
the operators of the coefficients.
"""
from __future__ import annotations

from typing import Sequence


def trim(p: Sequence, zero=0) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    p = trim(p)
    return len(p) - 1


def add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i < len(a) and i < len(b):
            out.append(a[i] + b[i])
        elif i < len(a):
            out.append(a[i])
        else:
            out.append(b[i])
    return out


def neg(a: Sequence) -> list:
    return [-c for c in a]


def sub(a: Sequence, b: Sequence) -> list:
    return add(a, neg(b))


def scale(a: Sequence, c) -> list:
    return [c * x for x in a]


def mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    zero = a[0] * 0
    return [zero if c is None else c for c in out]


def evaluate(p: Sequence, x, zero=0):
    acc = zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> list:
    return [i * p[i] for i in range(1, len(p))]


def divmod_monic(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Division by a polynomial whose leading coefficient is invertible."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = 1 / b[-1] if not _is_one(b[-1]) else None
    r = list(a)
    q = [b[0] * 0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1]
        if lead_inv is not None:
            c = c * lead_inv
        q[i] = c
        if c != 0:
            for j, bj in enumerate(b):
                r[i + j] = r[i + j] - c * bj
    return q, trim(r[: len(b) - 1])


def _is_one(x) -> bool:
    try:
        return x == 1
    except TypeError:
        return False


def monic(p: Sequence) -> list:
    p = trim(p)
    inv = 1 / p[-1]
    return [c * inv for c in p]


def gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over a field (empty list for gcd(0, 0))."""
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_monic(a, b)
        a, b = b, r
    return monic(a) if a else []


def pow_mod(base: Sequence, e: int, modulus: Sequence, one) -> list:
    result = [one]
    base = divmod_monic(base, modulus)[1]
    while e:
        if e & 1:
            result = divmod_monic(mul(result, base), modulus)[1]
        base = divmod_monic(mul(base, base), modulus)[1]
        e >>= 1
    return result


# -- matrices -------------------------------------------------------------


def identity(n: int, zero=0, one=1) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        acc = row[0] * v[0]
        for x, y in zip(row[1:], v[1:]):
            acc = acc + x * y
        out.append(acc)
    return out


def mat_map(f, m: Sequence[Sequence]) -> list[list]:
    return [[f(x) for x in row] for row in m]


def mat_add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in r] for r in a]


def charpoly_berkowitz(m: Sequence[Sequence], zero, one) -> list:
    """Characteristic polynomial det(tI - m), ascending, division-free.

    Valid over any commutative ring, which matters for towers whose
    intermediate levels are products of fields.
    """
    n = len(m)
    if n == 0:
        return [one]
    # Berkowitz: build the Toeplitz vectors bottom-up
    vect = [one, -m[0][0]]  # descending coefficients for the 1x1 leading block
    for r in range(1, n):
        # R = m[r][:r], C = column m[:r][r], A = leading r x r block
        R = [m[r][j] for j in range(r)]
        C = [m[i][r] for i in range(r)]
        A = [row[:r] for row in m[:r]]
        toep = [one, -m[r][r]]
        # successive R A^k C
        cur = C
        for _ in range(r):
            val = zero
            for x, y in zip(R, cur):
                val = val + x * y
            toep.append(-val)
            cur = matvec(A, cur)
        # multiply the (r+2) x (r+1) Toeplitz matrix by vect
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(r + 1):
                if 0 <= i - j < len(toep):
                    acc = acc + toep[i - j] * vect[j]
            new.append(acc)
        vect = new
    return list(reversed(vect))


def det(m: Sequence[Sequence], zero=0, one=1):
    n = len(m)
    if n == 0:
        return one
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    cp = charpoly_berkowitz(m, zero, one)
    return cp[0] if n % 2 == 0 else -cp[0]


def adjugate(m: Sequence[Sequence], zero=0, one=1) -> list[list]:
    n = len(m)
    if n == 1:
        return [[one]]
    if n == 2:
        return [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[m[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            d = det(minor, zero, one)
            out[j][i] = d if (i + j) % 2 == 0 else -d
    return out


def rank_and_solve(m: Sequence[Sequence], rhs: Sequence | None = None):
    """Gauss-Jordan over a field.  Returns ``(rank, solution)``; ``solution`` is
    ``None`` when no right-hand side is given or the system is inconsistent."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) + ([rhs[i]] if rhs is not None else []) for i, r in enumerate(m)]
    piv_cols = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    if rhs is None:
        return r, None
    for i in range(r, rows):
        if a[i][cols] != 0:
            return r, None
    zero = rhs[0] * 0
    sol = [zero] * cols
    for i, c in enumerate(piv_cols):
        sol[c] = a[i][cols]
    return r, sol


def nullspace(m: Sequence[Sequence], zero, one) -> list[list]:
    """Basis of the right kernel over a field."""
    rows = len(m)
    cols = len(m[0])
    a = [list(r) for r in m]
    piv_cols = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(cols) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [zero] * cols
        v[fc] = one
        for i, pc in enumerate(piv_cols):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def sylvester(f: Sequence, g: Sequence, zero) -> list[list]:
    """Sylvester matrix of f and g (ascending coefficient lists)."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fd = list(reversed(f))
    gd = list(reversed(g))
    for i in range(n):
        rows.append([zero] * i + fd + [zero] * (size - i - len(fd)))
    for i in range(m):
        rows.append([zero] * i + gd + [zero] * (size - i - len(gd)))
    return rows
