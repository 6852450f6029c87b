"""Exact linear algebra over Z and Z/m, and symplectic modules H = (Z/m)^2g.

All arithmetic is on Python ints; nothing here floats or overflows.  The
modulus m = 0 means working over Z itself; m = 1 is rejected everywhere.
Vectors are row tuples and matrices act on the right (x -> x*F).  The
symplectic basis is interleaved: a_1, b_1, a_2, b_2, ..., with <a_i, b_i> = 1.

Subgroups of (Z/m)^n are handled through their preimage lattices
L = span(lifts) + m*Z^n inside Z^n; the Hermite normal form of L is the
canonical representation, and Smith divisors of L drive the order, rank,
and direct-summand (primitivity) tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidInputError, LevelNerveError, ResourceLimitError


# ---------------------------------------------------------------------------
# integer matrices


def mat_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A or not B:
        return []
    n, k, c = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(c)]
            for i in range(n)]


def vec_mat(x, F):
    n = len(F)
    return tuple(sum(x[i] * F[i][j] for i in range(n)) for j in range(len(F[0])))


def hnf(rows):
    """Row Hermite normal form: positive pivots in staircase order, entries
    above each pivot reduced into [0, pivot), zero rows dropped."""
    M = [list(map(int, r)) for r in rows if any(r)]
    if not M:
        return []
    ncols = len(M[0])
    row = 0
    for col in range(ncols):
        if row >= len(M):
            break
        sel = [r for r in range(row, len(M)) if M[r][col]]
        if not sel:
            continue
        while len(sel) > 1:
            sel.sort(key=lambda r: abs(M[r][col]))
            r0 = sel[0]
            for r in sel[1:]:
                q = M[r][col] // M[r0][col]
                M[r] = [a - q * b for a, b in zip(M[r], M[r0])]
            sel = [r for r in range(row, len(M)) if M[r][col]]
        r0 = sel[0]
        M[row], M[r0] = M[r0], M[row]
        if M[row][col] < 0:
            M[row] = [-a for a in M[row]]
        for r in range(row):
            q = M[r][col] // M[row][col]
            if q:
                M[r] = [a - q * b for a, b in zip(M[r], M[row])]
        row += 1
    return [r for r in M if any(r)]


def snf(mat):
    """Smith normal form with transforms: returns (D, U, V) where
    U * mat * V = D, U and V unimodular, D diagonal (as a full matrix) with
    each diagonal entry nonnegative and dividing the next."""
    A = [list(map(int, r)) for r in mat]
    r = len(A)
    c = len(A[0]) if A else 0
    U = mat_identity(r)
    V = mat_identity(c)

    def row_op(i, j, q):
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):
        for row_ in A:
            row_[i] -= q * row_[j]
        for row_ in V:
            row_[i] -= q * row_[j]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row_ in A:
            row_[i], row_[j] = row_[j], row_[i]
        for row_ in V:
            row_[i], row_[j] = row_[j], row_[i]

    def clean(t):
        while True:
            piv = None
            for i in range(t, r):
                for j in range(t, c):
                    if A[i][j]:
                        if piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]]):
                            piv = (i, j)
            if piv is None:
                return False
            if piv != (t, t):
                if piv[0] != t:
                    row_swap(t, piv[0])
                if piv[1] != t:
                    col_swap(t, piv[1])
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_op(i, t, q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, c):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_op(j, t, q)
                    if A[t][j]:
                        dirty = True
            if not dirty and all(A[i][t] == 0 for i in range(t + 1, r)) \
                    and all(A[t][j] == 0 for j in range(t + 1, c)):
                if A[t][t] < 0:
                    A[t] = [-a for a in A[t]]
                    U[t] = [-a for a in U[t]]
                return True
        # unreachable

    t = 0
    while t < min(r, c):
        if not clean(t):
            break
        t += 1

    # enforce divisibility d_i | d_{i+1}: fold the offending entry into the
    # earlier pivot's row and rediagonalize the lower-right block
    mins = min(r, c)
    for _ in range(10000):
        viol = None
        for i in range(mins - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if b and (a == 0 or b % a != 0):
                viol = i
                break
        if viol is None:
            break
        A[viol] = [x + y for x, y in zip(A[viol], A[viol + 1])]
        U[viol] = [x + y for x, y in zip(U[viol], U[viol + 1])]
        for t2 in range(viol, mins):
            if not clean(t2):
                break
    else:
        raise LevelNerveError("Smith form divisibility pass did not settle")
    return A, U, V


def snf_diagonal(mat):
    D, _, _ = snf(mat)
    return tuple(D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)))


def int_row_kernel(mat):
    """Basis (list of rows) of {x in Z^r : x * mat = 0}."""
    r = len(mat)
    c = len(mat[0]) if mat else 0
    if r == 0:
        return []
    if c == 0:
        return mat_identity(r)
    D, U, V = snf(mat)
    out = []
    for i in range(r):
        d = D[i][i] if i < min(r, c) else 0
        if d == 0:
            out.append(list(U[i]))
    return out


def lattice_reduce(lattice_hnf, vec):
    """Reduce an integer vector modulo a lattice given by HNF rows;
    the result is zero iff the vector lies in the lattice."""
    v = list(map(int, vec))
    for row in lattice_hnf:
        col = next(j for j, a in enumerate(row) if a)
        if v[col] % row[col] == 0:
            q = v[col] // row[col]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


def mod_row_kernel(mat, m):
    """Generators of the lattice {x in Z^r : x * mat = 0 mod m}; for m > 0
    the lattice contains m*Z^r.  mat is r x c."""
    r = len(mat)
    c = len(mat[0]) if mat else 0
    if m == 0:
        return int_row_kernel(mat)
    stacked = [list(row) for row in mat]
    for j in range(c):
        stacked.append([m if t == j else 0 for t in range(c)])
    ker = int_row_kernel(stacked)
    return [row[:r] for row in ker]


def module_map_report(rows, n, m):
    """The Z/m-module map (Z/m)^k -> (Z/m)^n sending e_i to rows[i]:
    report injectivity and whether the cokernel is free, with its rank."""
    k = len(rows)
    mat = [list(map(int, r)) for r in rows]
    for r in mat:
        if len(r) != n:
            raise InvalidInputError("row length mismatch")
    ker = mod_row_kernel(mat, m)
    if m == 0:
        injective = not ker
    else:
        injective = hnf(ker) == [[m if j == i else 0 for j in range(k)]
                                 for i in range(k)] if ker else k == 0
    if m == 0:
        divs = [d for d in snf_diagonal(mat) if d]
        coker_free = all(d == 1 for d in divs)
        coker_rank = n - len(divs) if coker_free else None
    else:
        stacked = mat + [[m if j == i else 0 for j in range(n)]
                         for i in range(n)]
        divs = list(snf_diagonal(stacked))
        coker_free = all(d == m or d == 1 for d in divs)
        coker_rank = sum(1 for d in divs if d == m) if coker_free else None
    return {"injective": injective, "coker_free": coker_free,
            "coker_rank": coker_rank}


# ---------------------------------------------------------------------------
# symplectic spaces


class SympSpace:
    """H = (Z/m)^(2g) with the standard symplectic pairing; m = 0 means Z."""

    def __init__(self, g: int, m: int):
        if g < 0:
            raise InvalidInputError("genus must be nonnegative")
        if m < 0 or m == 1:
            raise InvalidInputError("modulus must be 0 or at least 2")
        self.g = g
        self.m = m
        self.dim = 2 * g
        J = [[0] * self.dim for _ in range(self.dim)]
        for i in range(g):
            J[2 * i][2 * i + 1] = 1
            J[2 * i + 1][2 * i] = -1
        self.J = J

    # -- vectors

    def reduce(self, vec):
        if len(vec) != self.dim:
            raise InvalidInputError("vector has wrong length")
        if self.m == 0:
            return tuple(int(x) for x in vec)
        return tuple(int(x) % self.m for x in vec)

    def zero(self):
        return (0,) * self.dim

    def basis_a(self, i):
        v = [0] * self.dim
        v[2 * (i - 1)] = 1
        return tuple(v)

    def basis_b(self, i):
        v = [0] * self.dim
        v[2 * (i - 1) + 1] = 1
        return tuple(v)

    def pairing(self, x, y):
        n = self.dim
        s = sum(x[i] * self.J[i][j] * y[j] for i in range(n) for j in range(n))
        return s % self.m if self.m else s

    def all_vectors(self):
        if self.m == 0:
            raise InvalidInputError("cannot enumerate vectors over Z")
        out = [()]
        for _ in range(self.dim):
            out = [v + (c,) for v in out for c in range(self.m)]
        return out

    # -- matrices

    def reduce_matrix(self, F):
        return tuple(self.reduce(row) for row in F)

    def identity_matrix(self):
        return self.reduce_matrix(mat_identity(self.dim))

    def mat_apply(self, x, F):
        return self.reduce(vec_mat(x, F))

    def mat_mul(self, F, G):
        return self.reduce_matrix(mat_mul([list(r) for r in F],
                                          [list(r) for r in G]))

    def is_symplectic(self, F) -> bool:
        n = self.dim
        FT = [[F[j][i] for j in range(n)] for i in range(n)]
        P = mat_mul(mat_mul([list(r) for r in F], self.J), FT)
        for i in range(n):
            for j in range(n):
                d = P[i][j] - self.J[i][j]
                if (d % self.m if self.m else d) != 0:
                    return False
        return True

    def transvection(self, v):
        """Matrix of x -> x + <x, v> v."""
        v = self.reduce(v)
        n = self.dim
        Jv = [sum(self.J[i][k] * v[k] for k in range(n)) for i in range(n)]
        F = [[(1 if i == j else 0) + Jv[i] * v[j] for j in range(n)]
             for i in range(n)]
        return self.reduce_matrix(F)

    def inverse_transvection(self, v):
        """Matrix of x -> x - <x, v> v; this is what a twist along a curve
        of class v induces under the conventions used by the surface layer."""
        v = self.reduce(v)
        n = self.dim
        Jv = [sum(self.J[i][k] * v[k] for k in range(n)) for i in range(n)]
        F = [[(1 if i == j else 0) - Jv[i] * v[j] for j in range(n)]
             for i in range(n)]
        return self.reduce_matrix(F)

    def chain_vectors(self):
        """2g+1 vectors (2 when g = 1) whose transvections generate the full
        symplectic group mod m: a_1, b_1, a_1+a_2, b_2, ..., plus a_g."""
        vs = []
        if self.g >= 1:
            vs = [self.basis_a(1), self.basis_b(1)]
            for i in range(1, self.g):
                va = tuple(x + y for x, y in
                           zip(self.basis_a(i), self.basis_a(i + 1)))
                vs.append(self.reduce(va))
                vs.append(self.basis_b(i + 1))
            if self.g >= 2:
                vs.append(self.basis_a(self.g))
        return vs

    def sp_closure(self, gens, cap=4_000_000):
        """All products of the given matrices (BFS closure).  Only sensible
        for m > 0 and desk-scale groups."""
        if self.m == 0:
            raise InvalidInputError("cannot enumerate a group over Z")
        gens = [self.reduce_matrix(F) for F in gens]
        for F in gens:
            if not self.is_symplectic(F):
                raise InvalidInputError("generator is not symplectic")
        start = self.identity_matrix()
        seen = {start}
        frontier = [start]
        while frontier:
            new = []
            for M in frontier:
                for G in gens:
                    P = self.mat_mul(M, G)
                    if P not in seen:
                        seen.add(P)
                        if len(seen) > cap:
                            raise LevelNerveError("group closure exceeded cap")
                        new.append(P)
            frontier = new
        return frozenset(seen)

    def orbit(self, vec, gens, cap=4_000_000):
        """Orbit of a vector under the group generated by the matrices."""
        gens = [self.reduce_matrix(F) for F in gens]
        v0 = self.reduce(vec)
        seen = {v0}
        frontier = [v0]
        while frontier:
            new = []
            for v in frontier:
                for G in gens:
                    w = self.mat_apply(v, G)
                    if w not in seen:
                        seen.add(w)
                        if len(seen) > cap:
                            raise LevelNerveError("orbit exceeded cap")
                        new.append(w)
            frontier = new
        return frozenset(seen)

    def subgroup(self, gens):
        return SympSubgroup(self, gens)


class SympSubgroup:
    """Subgroup of (Z/m)^n given by generators, canonicalized through the
    Hermite form of its preimage lattice in Z^n."""

    def __init__(self, space: SympSpace, gens):
        self.space = space
        n = space.dim
        m = space.m
        rows = [list(map(int, g)) for g in gens]
        for r in rows:
            if len(r) != n:
                raise InvalidInputError("generator has wrong length")
        if m:
            rows = rows + [[m if j == i else 0 for j in range(n)]
                           for i in range(n)]
        self.lattice = hnf(rows)
        if m:
            divs = snf_diagonal(self.lattice)
            self.lattice_divisors = tuple(divs)
            inv = [m // d for d in divs if m // d > 1]
            self.invariants = tuple(reversed(inv))
            self.rank = len(self.invariants)
            self.order = 1
            for q in self.invariants:
                self.order *= q
        else:
            divs = tuple(d for d in snf_diagonal(self.lattice) if d)
            self.lattice_divisors = divs
            self.rank = len(self.lattice)
            self.invariants = (0,) * self.rank
            self.order = 1 if self.rank == 0 else None

    def key(self):
        return tuple(tuple(r) for r in self.lattice)

    def __eq__(self, other):
        return (isinstance(other, SympSubgroup)
                and self.space.g == other.space.g
                and self.space.m == other.space.m
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.space.g, self.space.m, self.key()))

    def canonical_gens(self):
        """Generators read off the lattice Hermite form (lattice rows that
        survive reduction mod m)."""
        out = []
        for row in self.lattice:
            v = self.space.reduce(row)
            if any(v):
                out.append(v)
        return out

    def contains(self, vec) -> bool:
        v = self.space.reduce(vec)
        return not any(lattice_reduce(self.lattice, v))

    def is_trivial(self) -> bool:
        return self.rank == 0

    def is_cyclic(self) -> bool:
        return self.rank <= 1

    def is_primitive(self) -> bool:
        """Direct-summand test via unitary lattice divisors."""
        m = self.space.m
        if m == 0:
            return all(d == 1 for d in self.lattice_divisors)
        return all(math.gcd(d, m // d) == 1 for d in self.lattice_divisors)

    def is_isotropic(self) -> bool:
        gens = self.canonical_gens()
        return all(self.space.pairing(x, y) == 0 for x in gens for y in gens)

    def perp(self):
        """{x : <x, s> = 0 for all s in the subgroup}."""
        sp = self.space
        gens = self.canonical_gens()
        if not gens:
            return sp.subgroup([sp.basis_a(i + 1) for i in range(sp.g)]
                               + [sp.basis_b(i + 1) for i in range(sp.g)])
        n = sp.dim
        cols = [[sum(sp.J[i][k] * g[k] for k in range(n)) for g in gens]
                for i in range(n)]
        ker = mod_row_kernel(cols, sp.m)
        return sp.subgroup([row for row in ker])

    def intersection(self, other: "SympSubgroup"):
        if self.space is not other.space and \
                (self.space.g, self.space.m) != (other.space.g, other.space.m):
            raise InvalidInputError("subgroups live in different spaces")
        A = self.lattice
        B = other.lattice
        if not A or not B:
            return self.space.subgroup([])
        n = self.space.dim
        stacked = [list(r) for r in A] + [[-x for x in r] for r in B]
        ker = int_row_kernel(stacked)
        gens = []
        for row in ker:
            x = row[:len(A)]
            v = [sum(x[i] * A[i][j] for i in range(len(A))) for j in range(n)]
            gens.append(v)
        return self.space.subgroup(gens)

    def add(self, other: "SympSubgroup"):
        return self.space.subgroup(self.canonical_gens()
                                   + other.canonical_gens())

    def radical(self):
        """Subgroup pairing trivially with everything in the subgroup."""
        return self.intersection(self.perp())

    def apply(self, F):
        """Image subgroup under x -> x*F."""
        return self.space.subgroup(
            [self.space.mat_apply(v, F) for v in self.canonical_gens()])


# ---------------------------------------------------------------------------
# reporting and enumeration front ends


def smith_normal_form(M):
    """(U, D, V) with U*M*V = D, U and V unimodular, D diagonal with each
    entry nonnegative and dividing the next.  Deterministic; an empty
    matrix yields empty factors."""
    rows = [list(r) for r in M]
    width = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != width:
            raise InvalidInputError("ragged matrix")
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InvalidInputError("matrix entries must be integers")
    D, U, V = snf(rows)
    return U, D, V


@dataclass(frozen=True)
class SubgroupReport:
    """Canonical description of a subgroup of (Z/m)^2g.

    `generators` is the unique canonical generating set, so two reports
    agree exactly when the subgroups do.  `elementary_divisors` are the
    Smith divisors of the preimage lattice span(lifts) + m*Z^2g (for m = 0
    the nonzero divisors of the generator matrix itself); the subgroup is
    a direct summand iff every divisor is 1 over Z, respectively a unit
    divisor d of m (gcd(d, m/d) = 1) over Z/m."""

    ambient: object
    generators: tuple
    rank: int
    elementary_divisors: tuple
    is_primitive: bool
    is_isotropic: bool
    invariants: tuple = field(default=())

    def subgroup(self):
        return self.ambient.subgroup(list(self.generators))


def subgroup_report(gens, space: SympSpace) -> SubgroupReport:
    """Generating-set-independent report for the span of `gens`."""
    sub = space.subgroup(gens)
    return SubgroupReport(
        ambient=space,
        generators=tuple(tuple(v) for v in sub.canonical_gens()),
        rank=sub.rank,
        elementary_divisors=tuple(sub.lattice_divisors),
        is_primitive=sub.is_primitive(),
        is_isotropic=sub.is_isotropic(),
        invariants=tuple(sub.invariants),
    )


@dataclass(frozen=True)
class SpGroup:
    """Transvection generators of Sp_2g together with the two predicates
    that matter downstream: symplecticity and congruence level."""

    space: object
    generators: tuple

    def is_member(self, F) -> bool:
        """F^t J F = J over the ambient ring."""
        try:
            return self.space.is_symplectic(self.space.reduce_matrix(F))
        except (InvalidInputError, IndexError, TypeError):
            return False

    def in_congruence(self, F, level: int) -> bool:
        """F = identity entrywise mod `level`."""
        if level < 1:
            raise InvalidInputError("congruence level must be positive")
        m = self.space.m
        if m and level > 1 and m % level != 0:
            raise InvalidInputError(
                f"level {level} does not refine the ambient modulus {m}")
        F = self.space.reduce_matrix(F)
        n = self.space.dim
        return all((F[i][j] - (1 if i == j else 0)) % level == 0
                   for i in range(n) for j in range(n))


def sp_group(space: SympSpace) -> SpGroup:
    """Generators x -> x + <x,v>v over the chain vectors; they generate the
    full symplectic group over Z/m for every m >= 2 (and Sp_2g(Z) over Z)."""
    gens = tuple(space.transvection(v) for v in space.chain_vectors())
    return SpGroup(space=space, generators=gens)


@dataclass(frozen=True)
class OrbitResult:
    """Orbit sorted by canonical key, the transversal word that reaches
    each element from the seed, and Schreier generators of the stabilizer.

    Words are tuples of generator indices; a negative entry ~i denotes the
    inverse of generator i (inverses only ever appear in stabilizer words,
    reachability uses the given generators alone)."""

    elements: tuple
    words: tuple
    stabilizer_words: tuple


def _word_inverse(word):
    return tuple(~j for j in reversed(word))


def orbit_enumerate(seed, generators, action, key=None, cap=200_000):
    """Breadth-first orbit of `seed` under `action(gen, x)`.

    `key` maps an element to its hashable, orderable canonical encoding
    (default: the element itself).  Output is independent of traversal
    schedule: elements are sorted by key, transversal words come from the
    deterministic breadth-first tree, and stabilizer words are the
    deduplicated Schreier generators t_x * g * t_{g.x}^-1 in first-visit
    order.  Exceeding `cap` raises ResourceLimitError with the partial
    count."""
    generators = list(generators)
    if key is None:
        key = lambda x: x
    k0 = key(seed)
    reached = {k0: (seed, ())}
    frontier = [k0]
    stab = []
    stab_seen = set()
    while frontier:
        nxt = []
        for kx in frontier:
            x, wx = reached[kx]
            for i, g in enumerate(generators):
                y = action(g, x)
                ky = key(y)
                if ky not in reached:
                    if len(reached) >= cap:
                        raise ResourceLimitError(
                            f"orbit exceeded cap {cap} "
                            f"(partial count {len(reached)})")
                    reached[ky] = (y, wx + (i,))
                    nxt.append(ky)
                else:
                    word = wx + (i,) + _word_inverse(reached[ky][1])
                    if word and word not in stab_seen:
                        stab_seen.add(word)
                        stab.append(word)
        frontier = nxt
    order = sorted(reached)
    return OrbitResult(
        elements=tuple(reached[k][0] for k in order),
        words=tuple(reached[k][1] for k in order),
        stabilizer_words=tuple(stab),
    )
