"""Exact integer and Z/N linear algebra.

Smith normal form over Z, Howell form over Z/N, canonical solves, kernels,
and invariant-factor presentations of finite abelian subquotients.  Every
routine is deterministic: identical inputs give identical outputs, including
all witness data.  Integer work uses arbitrary-precision Python ints; no
floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .errors import ContainmentError, DomainError, ValidationError


def xgcd(a, b):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def modinv(a, n):
    g, s, _ = xgcd(a % n, n)
    if g != 1:
        raise DomainError(f"{a} is not invertible mod {n}")
    return s % n


def stab_unit(a, n):
    """A unit u mod n with u*a = gcd(a, n) mod n."""
    a %= n
    if a == 0:
        return 1
    g = gcd(a, n)
    ap, np_ = a // g, n // g
    u = modinv(ap % np_, np_) if np_ > 1 else 1
    while gcd(u, n) != 1:
        u += np_
    return u % n


def annihilator(a, n):
    """Generator of {x : x*a = 0 mod n}, namely n // gcd(a, n)."""
    return n // gcd(a % n, n)


# ---------------------------------------------------------------------------
# matrix containers


def _as_rows(entries):
    rows = [list(map(int, r)) for r in entries]
    if rows:
        w = len(rows[0])
        if any(len(r) != w for r in rows):
            raise ValidationError("ragged matrix")
    return rows


@dataclass(frozen=True)
class IntMatrix:
    """Rectangular matrix over Z with arbitrary-precision entries."""

    entries: tuple

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(int(x) for x in r) for r in _as_rows(rows)))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    def to_lists(self):
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class ModMatrix:
    """Rectangular matrix over Z/N, entries reduced to [0, N)."""

    modulus: int
    entries: tuple

    @classmethod
    def from_rows(cls, rows, modulus):
        n = int(modulus)
        if n < 1:
            raise ValidationError("modulus must be >= 1")
        return cls(n, tuple(tuple(int(x) % n for x in r) for r in _as_rows(rows)))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    def to_lists(self):
        return [list(r) for r in self.entries]


def _identity(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def _mat_mul(a, b):
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bw = len(b[0])
    return [[sum(ra[k] * b[k][j] for k in range(len(ra))) for j in range(bw)] for ra in a]


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(matrix):
    """Smith normal form with transforms.

    Returns (U, D, V) as IntMatrix with U*M*V = D, U and V unimodular, D
    diagonal with d1 | d2 | ... >= 0.  Pivot choice: smallest nonzero
    absolute value, ties broken row-major.
    """
    if isinstance(matrix, IntMatrix):
        a = matrix.to_lists()
    else:
        a = _as_rows(matrix)
    m = len(a)
    n = len(a[0]) if a else 0
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        ad, asr = a[dst], a[src]
        for k in range(n):
            ad[k] += q * asr[k]
        ud, usr = u[dst], u[src]
        for k in range(m):
            ud[k] += q * usr[k]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return best

    t = 0
    while t < min(m, n):
        found = find_pivot(t)
        if found is None:
            break
        _, pi, pj = found
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        # clear column t and row t against the pivot; repeat while remainders
        # produce smaller entries
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // p
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // p
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        dirty = True
            if not dirty:
                break
            found = find_pivot(t)
            _, pi, pj = found
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
        # pivot must divide the rest of the submatrix
        p = a[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if p < 0:
            negate_row(t)
        t += 1

    return IntMatrix.from_rows(u), IntMatrix.from_rows(a), IntMatrix.from_rows(v)


def invariant_factors_of(matrix):
    """Diagonal of the SNF, zeros dropped, unit factors dropped."""
    _, d, _ = smith_normal_form(matrix)
    out = []
    for i in range(min(d.rows, d.cols)):
        x = d.entries[i][i]
        if x > 1:
            out.append(x)
        elif x == 0:
            out.append(0)
    return out


def _mat_inverse_exact(m):
    """Inverse of a unimodular integer matrix via exact Gaussian elimination."""
    k = len(m)
    aug = [[Fraction(m[i][j]) for j in range(k)] + [Fraction(int(i == j)) for j in range(k)]
           for i in range(k)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            raise DomainError("matrix not invertible")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = [[aug[i][k + j] for j in range(k)] for i in range(k)]
    res = []
    for row in out:
        ints = []
        for x in row:
            if x.denominator != 1:
                raise DomainError("matrix not unimodular")
            ints.append(int(x))
        res.append(ints)
    return res


# ---------------------------------------------------------------------------
# Hermite form over Z (internal work-horse for lattices)


def hnf_rows(rows):
    """Canonical row Hermite form of the lattice spanned by the given rows.

    Returns a list of nonzero rows with strictly increasing pivot columns,
    positive pivots, and entries above each pivot reduced to [0, pivot).
    """
    rows = [[int(x) for x in r] for r in rows]
    basis = {}  # pivot col -> row (list)
    width = len(rows[0]) if rows else 0

    def insert(vec):
        vec = list(vec)
        while True:
            p = next((j for j, x in enumerate(vec) if x != 0), None)
            if p is None:
                return
            if p not in basis:
                if vec[p] < 0:
                    vec = [-x for x in vec]
                basis[p] = vec
                return
            cur = basis[p]
            if vec[p] % cur[p] == 0:
                q = vec[p] // cur[p]
                vec = [x - q * y for x, y in zip(vec, cur)]
            else:
                g, s, t = xgcd(cur[p], vec[p])
                new_cur = [s * x + t * y for x, y in zip(cur, vec)]
                vec = [-(vec[p] // g) * x + (cur[p] // g) * y for x, y in zip(cur, vec)]
                basis[p] = new_cur

    for r in rows:
        insert(r)
    # reduce entries above pivots; ascending column order per row
    pivots = sorted(basis)
    for qi, q in enumerate(pivots):
        row = basis[q]
        for p in pivots[qi + 1 :]:
            f = row[p] // basis[p][p]
            if f:
                row = [x - f * y for x, y in zip(row, basis[p])]
        basis[q] = row
    del width
    return [basis[p] for p in pivots]


def hnf_solve(basis_rows, target):
    """Express target as an integer combination of canonical HNF rows.

    Returns the coefficient list or None when target is outside the lattice.
    """
    coeffs = [0] * len(basis_rows)
    res = [int(x) for x in target]
    pivots = [next(j for j, x in enumerate(r) if x != 0) for r in basis_rows]
    for i, (row, p) in enumerate(zip(basis_rows, pivots)):
        if res[p] % row[p] != 0:
            return None
        c = res[p] // row[p]
        if c:
            res = [x - c * y for x, y in zip(res, row)]
        coeffs[i] = c
    if any(res):
        return None
    return coeffs


def kernel_int(rows):
    """Generators of {x : x * M = 0} for the matrix with the given rows.

    Operates row-wise: returns integer row vectors y with sum_i y_i rows_i = 0,
    forming a basis of the left kernel lattice.
    """
    m = len(rows)
    if m == 0:
        return []
    width = len(rows[0])
    aug = [list(rows[i]) + [int(i == j) for j in range(m)] for i in range(m)]
    reduced = hnf_rows(aug)
    out = []
    for r in reduced:
        if all(x == 0 for x in r[:width]):
            out.append(r[width:])
    return out


def kernel_int_cols(rows):
    """Basis of {x : M x = 0} (right kernel) for an integer matrix."""
    cols = list(map(list, zip(*rows))) if rows else []
    return kernel_int(cols)


# ---------------------------------------------------------------------------
# Howell form over Z/N


def howell_rows(rows, n):
    """Canonical Howell form of the row span of `rows` over Z/n.

    The result is the unique minimal echelon generating set: strictly
    increasing pivot columns, each pivot a divisor of n, entries above a
    pivot reduced mod the pivot, and the span closed under leading-zero
    truncation (annihilator rows are included).
    """
    if n == 1:
        return []
    basis = {}  # pivot col -> row list, entries in [0, n)
    queue = [[int(x) % n for x in r] for r in rows]
    while queue:
        vec = queue.pop()
        while True:
            p = next((j for j, x in enumerate(vec) if x != 0), None)
            if p is None:
                break
            if p not in basis:
                u = stab_unit(vec[p], n)
                vec = [(u * x) % n for x in vec]  # pivot becomes gcd(vec[p], n)
                basis[p] = vec
                a = annihilator(vec[p], n)
                if a != n and a > 1:
                    queue.append([(a * x) % n for x in vec])
                break
            cur = basis[p]
            if vec[p] % cur[p] == 0:
                q = vec[p] // cur[p]
                vec = [(x - q * y) % n for x, y in zip(vec, cur)]
            else:
                g, s, t = xgcd(cur[p], vec[p])
                new_cur = [(s * x + t * y) % n for x, y in zip(cur, vec)]
                vec = [(-(vec[p] // g) * x + (cur[p] // g) * y) % n
                       for x, y in zip(cur, vec)]
                u = stab_unit(new_cur[p], n)
                if u != 1:
                    new_cur = [(u * x) % n for x in new_cur]
                basis[p] = new_cur
                a = annihilator(new_cur[p], n)
                if a != n and a > 1:
                    queue.append([(a * x) % n for x in new_cur])
    pivots = sorted(basis)
    # normalize entries above pivots; ascending column order per row, since
    # reducing at one column can alter entries at later columns
    for qi, q in enumerate(pivots):
        row = basis[q]
        for p in pivots[qi + 1 :]:
            f = row[p] // basis[p][p]
            if f:
                row = [(x - f * y) % n for x, y in zip(row, basis[p])]
        basis[q] = row
    return [basis[p] for p in pivots]


def howell_form(matrix):
    """Spec surface: canonical Howell form of a ModMatrix (same row span)."""
    if not isinstance(matrix, ModMatrix):
        raise ValidationError("howell_form expects a ModMatrix")
    rows = howell_rows(matrix.to_lists(), matrix.modulus)
    if not rows:
        rows = [[0] * matrix.cols] if matrix.cols else []
    return ModMatrix.from_rows(rows, matrix.modulus)


def howell_solve(basis_rows, target, n):
    """Express target in the span of canonical Howell rows over Z/n.

    Returns canonical (smallest nonnegative) coefficients, or None when the
    target is outside the span.
    """
    coeffs = [0] * len(basis_rows)
    res = [int(x) % n for x in target]
    for i, row in enumerate(basis_rows):
        p = next(j for j, x in enumerate(row) if x != 0)
        if res[p] == 0:
            continue
        g = gcd(row[p], n)
        if res[p] % g != 0:
            return None
        nn = n // g
        c = ((res[p] // g) * modinv(row[p] // g, nn)) % nn if nn > 1 else 0
        coeffs[i] = c
        if c:
            res = [(x - c * y) % n for x, y in zip(res, row)]
    if any(res):
        return None
    return coeffs


def kernel_mod(rows, n):
    """Generators of the left kernel {y : y * M = 0 over Z/n}."""
    m = len(rows)
    if m == 0 or n == 1:
        return []
    width = len(rows[0])
    aug = [[x % n for x in rows[i]] + [int(i == j) for j in range(m)] for i in range(m)]
    reduced = howell_rows(aug, n)
    out = []
    for r in reduced:
        if all(x == 0 for x in r[:width]):
            out.append(r[width:])
    return out


def kernel_mod_cols(rows, n):
    """Generators of the right kernel {x : M x = 0 over Z/n}."""
    cols = [list(c) for c in zip(*rows)] if rows else []
    return kernel_mod(cols, n)


# ---------------------------------------------------------------------------
# canonical solve (spec surface)


def solve(matrix, rhs):
    """Canonical solution x of M x = b over Z or Z/N, or None.

    Deterministic: the Howell/Hermite pivot walk yields the canonical
    smallest solution produced by minimal nonnegative coefficients.
    """
    if isinstance(matrix, ModMatrix):
        n = matrix.modulus
        rows = matrix.to_lists()
        if len(rhs) != len(rows):
            raise ValidationError("dimension mismatch in solve")
        cols = [list(c) for c in zip(*rows)] if rows else []
        m = len(cols)
        aug = [[x % n for x in cols[i]] + [int(i == j) for j in range(m)] for i in range(m)]
        reduced = howell_rows(aug, n)
        width = len(rows)
        pairs = [(r[:width], r[width:]) for r in reduced if any(r[:width])]
        span = [p[0] for p in pairs]
        carry = [p[1] for p in pairs]
        coeffs = howell_solve(span, list(rhs), n) if span else (None if any(x % n for x in rhs) else [])
        if coeffs is None:
            return None
        x = [0] * m
        for c, t in zip(coeffs, carry):
            if c:
                x = [(xi + c * ti) % n for xi, ti in zip(x, t)]
        return x
    if isinstance(matrix, IntMatrix):
        rows = matrix.to_lists()
        if len(rhs) != len(rows):
            raise ValidationError("dimension mismatch in solve")
        cols = [list(c) for c in zip(*rows)] if rows else []
        m = len(cols)
        aug = [list(cols[i]) + [int(i == j) for j in range(m)] for i in range(m)]
        reduced = hnf_rows(aug) if aug else []
        width = len(rows)
        span = [r[:width] for r in reduced if any(r[:width])]
        carry = [r[width:] for r in reduced if any(r[:width])]
        coeffs = hnf_solve(span, list(rhs)) if span else (None if any(rhs) else [])
        if coeffs is None:
            return None
        x = [0] * m
        for c, t in zip(coeffs, carry):
            if c:
                x = [xi + c * ti for xi, ti in zip(x, t)]
        return x
    raise ValidationError("solve expects IntMatrix or ModMatrix")


# ---------------------------------------------------------------------------
# invariant-factor presentation of subquotients


@dataclass(frozen=True)
class AbelianStructure:
    """Finite abelian group in invariant-factor form with witnesses.

    `witness_generators` are ambient vectors mapping onto the factor
    generators; `class_map` converts an ambient vector into coordinates in
    the direct sum of Z/d_i.
    """

    invariant_factors: tuple
    witness_generators: tuple
    class_map: object

    @property
    def order(self):
        return prod(self.invariant_factors) if self.invariant_factors else 1

    def coords(self, vector):
        return self.class_map(vector)

    def describe(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)

    def to_json(self):
        return list(self.invariant_factors)


def _trivial_structure():
    return AbelianStructure((), (), lambda v: ())


class _ModReducer:
    def __init__(self, kernel_basis, n, umat, factors_all, kept):
        self.kernel_basis = kernel_basis
        self.n = n
        self.umat = umat
        self.factors_all = factors_all
        self.kept = kept

    def __call__(self, vector):
        c = howell_solve(self.kernel_basis, list(vector), self.n)
        if c is None:
            raise ContainmentError("vector not in the kernel span", witness=list(vector))
        y = [sum(self.umat[i][j] * c[j] for j in range(len(c))) for i in range(len(self.umat))]
        return tuple(y[i] % self.factors_all[i] for i in self.kept)


class _IntReducer:
    def __init__(self, kernel_basis, umat, factors_all, kept):
        self.kernel_basis = kernel_basis
        self.umat = umat
        self.factors_all = factors_all
        self.kept = kept

    def __call__(self, vector):
        c = hnf_solve(self.kernel_basis, list(vector))
        if c is None:
            raise ContainmentError("vector not in the kernel lattice", witness=list(vector))
        y = [sum(self.umat[i][j] * c[j] for j in range(len(c))) for i in range(len(self.umat))]
        return tuple(y[i] % self.factors_all[i] for i in self.kept)


def subquotient_structure(ambient_dim, modulus, kernel_gens, image_gens):
    """Invariant factors of span(kernel_gens)/span(image_gens) with witnesses.

    `modulus` is an integer N >= 1 for Z/N ambient, or None for Z ambient
    (in which case the quotient must be finite).  Containment of the image
    in the kernel is verified; a violating generator is reported.
    """
    kernel_gens = [list(map(int, v)) for v in kernel_gens]
    image_gens = [list(map(int, v)) for v in image_gens]
    for v in kernel_gens + image_gens:
        if len(v) != ambient_dim:
            raise ValidationError("generator has wrong ambient dimension")

    if modulus is not None:
        n = int(modulus)
        if n == 1:
            return _trivial_structure()
        basis = howell_rows(kernel_gens, n)
        if not basis:
            for v in image_gens:
                if any(x % n for x in v):
                    raise ContainmentError("image generator outside kernel span", witness=v)
            return _trivial_structure()
        k = len(basis)
        img_coords = []
        for v in image_gens:
            c = howell_solve(basis, v, n)
            if c is None:
                raise ContainmentError("image generator outside kernel span", witness=v)
            img_coords.append(c)
        # relation lattice in kernel coordinates: combinations that vanish
        rel = [list(r) for r in kernel_mod(basis, n)]
        rel += [[n if i == j else 0 for j in range(k)] for i in range(k)]
        rel += img_coords
        rel_cols = [list(c) for c in zip(*rel)]  # k x (#rel) relation matrix
        u, d, _ = smith_normal_form(rel_cols)
        u = u.to_lists()
        dm = d.to_lists()
        factors_all = [dm[i][i] if i < len(dm[0]) else 0 for i in range(k)]
        if any(f == 0 for f in factors_all):
            raise DomainError("subquotient is not finite")
        kept = [i for i, f in enumerate(factors_all) if f > 1]
        uinv = _mat_inverse_exact(u)
        witnesses = []
        for i in kept:
            w = [0] * ambient_dim
            for j in range(k):
                cij = uinv[j][i]
                if cij:
                    w = [(x + cij * y) % n for x, y in zip(w, basis[j])]
            witnesses.append(tuple(w))
        reducer = _ModReducer(basis, n, u, factors_all, kept)
        return AbelianStructure(tuple(factors_all[i] for i in kept), tuple(witnesses), reducer)

    # integer ambient
    basis = hnf_rows(kernel_gens) if kernel_gens else []
    if not basis:
        for v in image_gens:
            if any(v):
                raise ContainmentError("image generator outside kernel lattice", witness=v)
        return _trivial_structure()
    k = len(basis)
    img_coords = []
    for v in image_gens:
        c = hnf_solve(basis, v)
        if c is None:
            raise ContainmentError("image generator outside kernel lattice", witness=v)
        img_coords.append(c)
    if not img_coords:
        raise DomainError("subquotient is not finite")
    rel_cols = [list(c) for c in zip(*img_coords)]  # k x (#img)
    u, d, _ = smith_normal_form(rel_cols)
    u = u.to_lists()
    dm = d.to_lists()
    factors_all = [dm[i][i] if i < len(dm[0]) else 0 for i in range(k)]
    if any(f == 0 for f in factors_all):
        raise DomainError("subquotient is not finite")
    kept = [i for i, f in enumerate(factors_all) if f > 1]
    uinv = _mat_inverse_exact(u)
    witnesses = []
    for i in kept:
        w = [0] * ambient_dim
        for j in range(k):
            cij = uinv[j][i]
            if cij:
                w = [x + cij * y for x, y in zip(w, basis[j])]
        witnesses.append(tuple(w))
    reducer = _IntReducer(basis, u, factors_all, kept)
    return AbelianStructure(tuple(factors_all[i] for i in kept), tuple(witnesses), reducer)


def quotient_of_structure(structure, relation_coord_vectors):
    """Quotient of a presented finite abelian group by extra relations.

    Relations are coordinate vectors in the structure's factor coordinates.
    Returns a new AbelianStructure whose ambient space is the old coordinate
    space (witnesses are coordinate vectors of the old structure).
    """
    factors = list(structure.invariant_factors)
    k = len(factors)
    if k == 0:
        return _trivial_structure()
    big = 1
    for f in factors:
        big = big * f // gcd(big, f)
    scaled_units = [[(big // factors[i]) if i == j else 0 for j in range(k)] for i in range(k)]
    image = []
    for rel in relation_coord_vectors:
        image.append([((big // factors[i]) * int(rel[i])) % big for i in range(k)])
    inner = subquotient_structure(k, big, scaled_units, image)

    def unscale(vec):
        return tuple((vec[i] // (big // factors[i])) % factors[i] for i in range(k))

    witnesses = tuple(unscale(w) for w in inner.witness_generators)
    inner_map = inner.class_map

    def cmap(coord_vec):
        scaled = [((big // factors[i]) * int(coord_vec[i])) % big for i in range(k)]
        return inner_map(scaled)

    return AbelianStructure(inner.invariant_factors, witnesses, cmap)


def direct_sum_structure(a, b):
    """Canonical invariant-factor form of a direct sum of two structures.

    Witnesses live in the concatenated coordinate space (len(a) + len(b)).
    """
    factors = list(a.invariant_factors) + list(b.invariant_factors)
    k = len(factors)
    if k == 0:
        return _trivial_structure()
    big = 1
    for f in factors:
        big = big * f // gcd(big, f)
    scaled_units = [[(big // factors[i]) if i == j else 0 for j in range(k)] for i in range(k)]
    inner = subquotient_structure(k, big, scaled_units, [])

    def unscale(vec):
        return tuple((vec[i] // (big // factors[i])) % factors[i] for i in range(k))

    witnesses = tuple(unscale(w) for w in inner.witness_generators)
    inner_map = inner.class_map

    def cmap(coord_vec):
        scaled = [((big // factors[i]) * int(coord_vec[i])) % big for i in range(k)]
        return inner_map(scaled)

    return AbelianStructure(inner.invariant_factors, witnesses, cmap)
