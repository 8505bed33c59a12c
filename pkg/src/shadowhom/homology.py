"""Exact homology of the rack, degeneracy and quandle complexes.

Integral computations go through a Smith normal form with explicit
unimodular transforms; prime-modulus computations use row reduction over
the field.  Every factorization and certificate is re-checked before it is
returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .chains import (DEGENERATE, QUANDLE, RACK, ZZ, Chain, Cochain, Ring,
                     all_tuples, boundary_terms, eval_cochain, is_degenerate)
from .errors import (DegreeZero, NonPrimeModulus, NotAQuandle,
                     ShadowHomError, TooLarge)

DEFAULT_CAP = 200_000


class IntegerMatrix:
    """Dense matrix of Python ints (arbitrary precision)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows, self.cols = rows, cols
        if entries is None:
            entries = [[0] * cols for _ in range(rows)]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("entries do not match the stated shape")
        self.entries = [list(r) for r in entries]

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        return cls(len(rows), len(rows[0]) if rows else 0, rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = [[sum(a * b for a, b in zip(row, col)) for col in cols]
               for row in self.entries]
        return IntegerMatrix(self.rows, other.cols, out)

    def apply(self, vec):
        return [sum(a * b for a, b in zip(row, vec)) for row in self.entries]

    def transpose(self):
        return IntegerMatrix(self.cols, self.rows,
                             [list(c) for c in zip(*self.entries)]
                             if self.rows else [[] for _ in range(self.cols)])

    def is_zero(self):
        return all(not v for row in self.entries for v in row)

    def diagonal(self):
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def __eq__(self, other):
        return (isinstance(other, IntegerMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols}, {self.entries})"


def smith_normal_form(M):
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` and ``d_1 | d_2 | ...``.

    Pivots are chosen by least absolute value; all arithmetic is on Python
    ints so entries never overflow.
    """
    m, n = M.rows, M.cols
    A = [list(r) for r in M.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]   # rows
    Vc = [[int(i == j) for i in range(n)] for j in range(n)]  # columns of V

    def row_add(dst, src, q):      # row dst -= q * row src
        ra, rs = A[dst], A[src]
        for j in range(n):
            if rs[j]:
                ra[j] -= q * rs[j]
        ua, us = U[dst], U[src]
        for j in range(m):
            if us[j]:
                ua[j] -= q * us[j]

    def col_add(dst, src, q):      # col dst -= q * col src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        va, vs = Vc[dst], Vc[src]
        for i in range(n):
            if vs[i]:
                va[i] -= q * vs[i]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        Vc[i], Vc[j] = Vc[j], Vc[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            moved = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, A[i][t] // p)
                    if A[i][t]:
                        swap_rows(t, i)
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, A[t][j] // p)
                    if A[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], -1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        t += 1

    D = IntegerMatrix(m, n, A)
    Um = IntegerMatrix(m, m, U)
    Vm = IntegerMatrix(n, n, [list(r) for r in zip(*Vc)] if n else [])
    if (Um @ M) @ Vm != D:
        raise AssertionError("Smith normal form failed re-multiplication check")
    return D, Um, Vm


def invariant_factors(M):
    D, _, _ = smith_normal_form(M)
    return [d for d in D.diagonal() if d]


# -- modular linear algebra ---------------------------------------------------

def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def rref_mod(rows, p):
    """Reduced row echelon form over GF(p); returns ``(rows, pivot_columns)``."""
    A = [[v % p for v in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [v * inv % p for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank_mod(M, p):
    if not M.rows or not M.cols:
        return 0
    return len(rref_mod(M.entries, p)[1])


def nullspace_mod(M, p):
    """Basis of ``{v : M v = 0}`` over GF(p)."""
    n = M.cols
    if M.rows == 0:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    R, pivots = rref_mod(M.entries, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def solve_mod(M, b, p):
    """One solution of ``M x = b`` over GF(p), or ``None``."""
    aug = [row + [bi] for row, bi in zip(M.entries, b)]
    if not aug:
        return [0] * M.cols
    R, pivots = rref_mod(aug, p)
    if M.cols in pivots:
        return None
    x = [0] * M.cols
    for row, pc in zip(R, pivots):
        x[pc] = row[-1]
    return x


# -- complexes ----------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`` with ``d_1 | d_2 | ...``."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        if any(d < 2 for d in t):
            raise ValueError("invariant factors must be at least 2")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"{t} is not a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_cyclic(cls, free_rank, orders):
        """Normalise an arbitrary list of cyclic orders into invariant factors."""
        primes = {}
        for d in orders:
            d = abs(d)
            if d in (0, 1):
                continue
            q = 2
            while d > 1:
                e = 0
                while d % q == 0:
                    d //= q
                    e += 1
                if e:
                    primes.setdefault(q, []).append(q ** e)
                q += 1
        width = max((len(v) for v in primes.values()), default=0)
        factors = [1] * width
        for powers in primes.values():
            for k, pe in enumerate(sorted(powers, reverse=True)):
                factors[width - 1 - k] *= pe
        return cls(free_rank, tuple(f for f in factors if f > 1))

    def __add__(self, other):
        return AbelianGroup.from_cyclic(self.free_rank + other.free_rank,
                                        self.torsion + other.torsion)

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) if parts else "0"

    def machine(self):
        return f"free {self.free_rank} torsion {','.join(map(str, self.torsion)) or '-'}"


def _basis(Q, n, theory, cap=DEFAULT_CAP):
    if theory in (QUANDLE, DEGENERATE) and not Q.is_quandle:
        raise NotAQuandle(f"{theory} theory needs a quandle")
    if Q.size ** n > cap:
        raise TooLarge(f"{Q.size}^{n} tuples exceed the cap of {cap}")
    if n == 0:
        return [] if theory == DEGENERATE else [()]
    return all_tuples(Q, n, theory)


@lru_cache(maxsize=64)
def _boundary_matrix_cached(Q, n, theory, cap):
    src = _basis(Q, n, theory, cap)
    dst = _basis(Q, n - 1, theory, cap)
    index = {t: i for i, t in enumerate(dst)}
    M = IntegerMatrix(len(dst), len(src))
    for j, t in enumerate(src):
        acc = {}
        for s, e in boundary_terms(Q, t):
            acc[s] = acc.get(s, 0) + e
        for s, e in acc.items():
            if not e:
                continue
            if s in index:
                M.entries[index[s]][j] += e
            elif theory != QUANDLE or not is_degenerate(s):
                raise AssertionError(f"∂{t} leaves the {theory} basis at {s}")
    return M, tuple(src), tuple(dst)


def boundary_matrix(Q, n, theory=RACK, cap=DEFAULT_CAP):
    """Matrix of ∂_n from the theory's degree-n basis to its degree-(n-1) basis.

    For the degenerate theory, closure of the subcomplex under ∂ is checked
    while the matrix is assembled.
    """
    if n < 1:
        raise DegreeZero("boundary matrices start at n = 1")
    M, _, _ = _boundary_matrix_cached(Q, n, theory, cap)
    return IntegerMatrix(M.rows, M.cols, M.entries)


def basis(Q, n, theory=RACK, cap=DEFAULT_CAP):
    return list(_basis(Q, n, theory, cap))


@lru_cache(maxsize=64)
def _snf_cached(Q, n, theory, cap):
    M, _, _ = _boundary_matrix_cached(Q, n, theory, cap)
    return smith_normal_form(M)


def _ranks_and_factors(Q, n, theory, cap):
    if n == 0:
        return 0, []
    if theory == DEGENERATE and n < 2:
        return 0, []
    D, _, _ = _snf_cached(Q, n, theory, cap)
    diag = [d for d in D.diagonal() if d]
    return len(diag), diag


def homology_group(Q, n, theory=RACK, ring=ZZ, cap=DEFAULT_CAP):
    """``H_n`` of the chosen complex with integer or modular coefficients.

    Over ``Z/m`` the result is returned as an abelian group with every
    factor of order dividing ``m``; composite moduli use the universal
    coefficient theorem on the integral result.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if ring.modulus is not None:
        m = ring.modulus
        if _is_prime(m):
            dim = homology_dimension_mod(Q, n, theory, m, cap)
            return AbelianGroup(0, (m,) * dim)
        Hn = homology_group(Q, n, theory, ZZ, cap)
        orders = [m] * Hn.free_rank + [gcd(d, m) for d in Hn.torsion]
        if n > 0:
            orders += [gcd(d, m) for d in homology_group(Q, n - 1, theory, ZZ, cap).torsion]
        return AbelianGroup.from_cyclic(0, orders)
    dim = len(_basis(Q, n, theory, cap))
    r_out, _ = _ranks_and_factors(Q, n, theory, cap)
    _basis(Q, n + 1, theory, cap)
    r_in, factors = _ranks_and_factors(Q, n + 1, theory, cap)
    return AbelianGroup(dim - r_out - r_in, tuple(d for d in factors if d > 1))


def homology_dimension_mod(Q, n, theory, p, cap=DEFAULT_CAP):
    if not _is_prime(p):
        raise NonPrimeModulus(f"{p} is not prime")
    dim = len(_basis(Q, n, theory, cap))
    r_out = rank_mod(boundary_matrix(Q, n, theory, cap), p) if n >= 1 else 0
    r_in = rank_mod(boundary_matrix(Q, n + 1, theory, cap), p)
    return dim - r_out - r_in


# -- certificates --------------------------------------------------------------

@dataclass
class BoundaryCertificate:
    """Outcome of deciding whether a chain is a boundary.

    ``witness`` satisfies ``∂ witness = chain`` when ``is_boundary``;
    otherwise ``obstruction`` is a δ-closed cochain pairing non-trivially
    with the chain (over ``Z`` for a free obstruction, over ``Z/d`` for a
    torsion one).
    """

    is_boundary: bool
    chain: Chain
    witness: Chain | None = None
    obstruction: Cochain | None = None
    description: str = ""

    def verify(self, Q):
        from .chains import boundary, coboundary
        c = self.chain
        if self.is_boundary:
            got = boundary(Q, self.witness)
            return _same_in_theory(got, c)
        f = self.obstruction
        if f is None:
            return False
        return coboundary(Q, f).is_zero() and eval_cochain(f, _lift(c, f.ring)) != 0


def _same_in_theory(a, b):
    if a.theory == QUANDLE or b.theory == QUANDLE:
        return (a.like(list(a.items()), theory=QUANDLE)
                == b.like(list(b.items()), theory=QUANDLE))
    return a == b


def _lift(c, ring):
    return Chain(c.degree, list(c.items()), c.theory, ring)


def in_boundary_image(Q, c, theory=None, cap=DEFAULT_CAP):
    """Decide whether ``c`` lies in ``im ∂_{n+1}`` of the chosen complex."""
    from .chains import boundary
    theory = theory or c.theory
    n = c.degree
    if n < 1 and theory != RACK:
        raise DegreeZero("degree must be at least 1")
    if theory == QUANDLE and c.theory != QUANDLE:
        c = c.like(list(c.items()), theory=QUANDLE)
    M, src, dst = _boundary_matrix_cached(Q, n + 1, theory, cap)
    index = {t: i for i, t in enumerate(dst)}
    b = [0] * len(dst)
    for t, k in c.items():
        if t not in index:
            raise ShadowHomError(f"{t} is not in the {theory} basis")
        b[index[t]] = k
    chain_theory = QUANDLE if theory == QUANDLE else RACK
    ring = c.ring

    if ring.modulus is not None:
        p = ring.modulus
        if not _is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        x = solve_mod(M, b, p)
        if x is not None:
            w = Chain(n + 1, zip(src, x), chain_theory, ring)
            cert = BoundaryCertificate(True, c, witness=w)
        else:
            # a left-null vector of M not orthogonal to b
            for y in nullspace_mod(M.transpose(), p):
                if sum(u * v for u, v in zip(y, b)) % p:
                    f = Cochain(n, zip(dst, y), theory, ring)
                    break
            cert = BoundaryCertificate(False, c, obstruction=f,
                                       description=f"cocycle mod {p}")
        _assert_cert(Q, cert)
        return cert

    D, U, V = _snf_cached(Q, n + 1, theory, cap)
    Ub = U.apply(b)
    diag = D.diagonal()
    y = [0] * M.cols
    for i, v in enumerate(Ub):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if v:
                f = Cochain(n, zip(dst, U.entries[i]), theory, ZZ)
                cert = BoundaryCertificate(
                    False, c, obstruction=f,
                    description="integral cocycle with nonzero pairing")
                _assert_cert(Q, cert)
                return cert
        elif v % d:
            f = Cochain(n, zip(dst, U.entries[i]), theory, Ring(d))
            cert = BoundaryCertificate(
                False, c, obstruction=f,
                description=f"torsion obstruction: cocycle mod {d}")
            _assert_cert(Q, cert)
            return cert
        else:
            y[i] = v // d
    x = V.apply(y)
    w = Chain(n + 1, zip(src, x), chain_theory, ZZ)
    if boundary(Q, w) != c.like(list(c.items()), theory=chain_theory):
        raise AssertionError("boundary witness failed re-check")
    cert = BoundaryCertificate(True, c, witness=w)
    return cert


def _assert_cert(Q, cert):
    if not cert.verify(Q):
        raise AssertionError(f"certificate failed its own check: {cert}")


def cocycle_space(Q, n, theory=QUANDLE, modulus=2, cap=DEFAULT_CAP):
    """Bases of ``Z^n = ker δ^{n+1}`` and ``B^n = im δ^n`` over GF(modulus)."""
    from .chains import coboundary
    if not _is_prime(modulus):
        raise NonPrimeModulus(f"{modulus} is not prime")
    ring = Ring(modulus)
    tuples = _basis(Q, n, theory, cap)
    _basis(Q, n + 1, theory, cap)
    if not tuples:
        return [], []
    M, _, dst = _boundary_matrix_cached(Q, n + 1, theory, cap)
    # δ^{n+1} is the transpose of ∂_{n+1}
    cocycles = [Cochain(n, zip(dst, v), theory, ring)
                for v in nullspace_mod(M.transpose(), modulus)]
    coboundaries = []
    if n >= 1:
        Mn, _, _ = _boundary_matrix_cached(Q, n, theory, cap)
        if Mn.rows and Mn.cols:
            # im δ^n is the row space of ∂_n
            rows, _ = rref_mod(Mn.entries, modulus)
            coboundaries = [Cochain(n, zip(tuples, r), theory, ring) for r in rows]
    for f in cocycles:
        if not coboundary(Q, f).is_zero():
            raise AssertionError("returned cocycle is not closed")
    return cocycles, coboundaries
