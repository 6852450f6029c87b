"""Finite regular covers of a presented surface.

A cover of S_{g,n} is specified by images of the public letters in a finite
deck group G; the subgroup K is the kernel, presented through its coset
table (= the right translation action of G on itself, since the cover is
regular).  The module computes:

  * Euler characteristic / puncture bookkeeping of the cover (analyze_cover),
  * H_1 of the filled cover surface with its deck action (cover_homology),
  * preimages of catalog multicurves with the cut stable graph and the
    separating / cut-pair flags (lift_multicurve),
  * the mod-ell derived cover K -> [K,K]K^ell (derived_cover),
  * the matrix a twist induces on cover homology (mcg_action_on_cover),
    together with invariance_check.

Homology is computed from an explicit cell structure.  The once-punctured
base model is a one-vertex ribbon graph whose boundary cycles are exactly
the puncture words, so the rotation data lifts verbatim: faces of the
filled cover are the orbits of the dart successor map.  Contracting the
shortlex Schreier tree and merging all faces into a single polygon leaves
each surviving edge letter exactly once with each sign; those letters are
a free basis of H_1 of the closed cover surface.  The chord joining the
two occurrences of a letter is the loop dual to it, its crossing form is
read off from how occurrence pairs interleave, and the intersection form
of the letters themselves is minus the inverse of that crossing form.  An
integer change of basis then produces the standard symplectic frame.

Transversals, element orderings, merge order and basis extraction are all
deterministic, so every output is reproducible.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (LevelNerveError, InvalidInputError, InvalidCoverError,
                     ResourceLimitError, ValidationError)
from .words import wreduce, wmul, winv, wpow
from .surface import presentation
from .symplectic import SympSpace
from .stablegraph import StableGraph

DEFAULT_MAX_DEGREE = 4096
# cap on degree * letters for the homology cell complex
DEFAULT_MAX_CHAIN = 1024


def _check(cond, msg):
    if not cond:
        raise LevelNerveError(f"cover self-check failed: {msg}")


# --------------------------------------------------------------------------
# group backends


class PermOps:
    """Permutations of range(degree) as tuples; p*q applies p first."""

    kind = "perm"

    def __init__(self, degree: int):
        if degree < 1:
            raise InvalidInputError("permutation degree must be positive")
        self.degree = degree
        self.identity = tuple(range(degree))

    def validate(self, p):
        t = tuple(int(x) for x in p)
        if sorted(t) != list(range(self.degree)):
            raise InvalidInputError("not a permutation of the stated degree")
        return t

    def mul(self, p, q):
        return tuple(q[p[i]] for i in range(self.degree))

    def inv(self, p):
        out = [0] * self.degree
        for i, x in enumerate(p):
            out[x] = i
        return tuple(out)


class AbelianOps:
    """Tuples added componentwise modulo a fixed modulus vector."""

    kind = "abelian"

    def __init__(self, moduli):
        self.moduli = tuple(int(m) for m in moduli)
        if any(m < 2 for m in self.moduli):
            raise InvalidInputError("abelian moduli must be at least 2")
        self.identity = (0,) * len(self.moduli)

    def validate(self, v):
        v = tuple(int(x) for x in v)
        if len(v) != len(self.moduli):
            raise InvalidInputError("vector length does not match moduli")
        return tuple(x % m for x, m in zip(v, self.moduli))

    def mul(self, u, v):
        return tuple((x + y) % m for x, y, m in zip(u, v, self.moduli))

    def inv(self, v):
        return tuple((-x) % m for x, m in zip(v, self.moduli))


class DeckGroup:
    """Closure of the generator images, elements ordered by discovery."""

    def __init__(self, ops, gens, max_size):
        self.ops = ops
        self.elements = [ops.identity]
        self.index = {ops.identity: 0}
        queue = [ops.identity]
        while queue:
            nxt = []
            for e in queue:
                for s in gens:
                    f = ops.mul(e, s)
                    if f not in self.index:
                        if len(self.elements) >= max_size:
                            raise ResourceLimitError(
                                f"deck group exceeds {max_size} elements")
                        self.index[f] = len(self.elements)
                        self.elements.append(f)
                        nxt.append(f)
            queue = nxt
        self.d = len(self.elements)

    def mul(self, a, b):
        return self.ops.mul(a, b)

    def inv(self, a):
        return self.ops.inv(a)

    @property
    def identity(self):
        return self.ops.identity


# --------------------------------------------------------------------------
# cover specification


class CoverSpec:
    """Regular cover of S_{g,n} given by letter images in a deck group.

    For n = 0 the once-punctured model is used internally and the boundary
    word u_1 must map to the identity, so the cover of the closed surface
    is unramified.  The deck group is always the subgroup generated by the
    images; `proper_image` records whether a strictly larger group was
    declared.
    """

    def __init__(self, g: int, n: int, images, ops,
                 declared_order=None, max_degree=None):
        self.pres = presentation(g, n)
        self.g = g
        self.n = n
        N = self.pres.cover_rank()
        images = list(images)
        if len(images) != N:
            raise InvalidInputError(
                f"need {N} letter images for signature ({g},{n})")
        images = [ops.validate(x) for x in images]
        cap = max_degree if max_degree is not None else DEFAULT_MAX_DEGREE
        self.group = DeckGroup(ops, images, cap)
        self.images = tuple(images)
        self.inv_images = tuple(ops.inv(x) for x in images)
        self.declared_order = declared_order
        self.proper_image = (declared_order is not None
                             and declared_order != self.group.d)
        self._table = None
        self._chain = None
        self._homs = {}
        self._analysis = None
        if n == 0 and self.phi(self.pres.u1_word()) != ops.identity:
            raise InvalidCoverError(
                "boundary word of the closed base must map to the identity")

    @property
    def degree(self):
        return self.group.d

    @property
    def kind(self):
        return self.group.ops.kind

    def phi(self, word):
        e = self.group.ops.identity
        for x in wreduce(word):
            a = abs(x)
            if not (1 <= a <= len(self.images)):
                raise InvalidInputError(f"letter {x} outside cover alphabet")
            e = self.group.mul(e, self.images[a - 1] if x > 0
                               else self.inv_images[a - 1])
        return e

    def phi_index(self, word):
        return _table(self).trace(0, word)

    def order_of(self, word):
        """Order of the image of `word` in the deck group."""
        t = _table(self)
        k, cur = 1, t.trace(0, word)
        while cur != 0:
            cur = t.trace(cur, word)
            k += 1
        return k


def identity_cover(g: int, n: int) -> CoverSpec:
    ops = PermOps(1)
    N = presentation(g, n).cover_rank()
    return CoverSpec(g, n, [ops.identity] * N, ops)


def abelian_cover(g: int, n: int, moduli, vectors,
                  declared_order=None) -> CoverSpec:
    ops = AbelianOps(moduli)
    return CoverSpec(g, n, vectors, ops, declared_order=declared_order)


def homology_cover(g: int, n: int, ell: int) -> CoverSpec:
    """Cover defined by killing mod-ell homology of the closed surface."""
    if ell < 2:
        raise InvalidInputError("homology modulus must be at least 2")
    pres = presentation(g, n)
    vectors = []
    for j in range(1, pres.cover_rank() + 1):
        vectors.append(pres.homology_class((j,), ell))
    order = ell ** (2 * g)
    return abelian_cover(g, n, (ell,) * (2 * g), vectors,
                         declared_order=order)


def perm_cover(g: int, n: int, degree: int, perms,
               declared_order=None) -> CoverSpec:
    ops = PermOps(degree)
    return CoverSpec(g, n, perms, ops, declared_order=declared_order)


def cover_spec_to_data(spec: CoverSpec) -> dict:
    names = spec.pres.names
    images = {nm: list(img) for nm, img in zip(names, spec.images)}
    if spec.kind == "perm":
        group = {"kind": "perm", "degree": spec.group.ops.degree}
    else:
        group = {"kind": "abelian", "moduli": list(spec.group.ops.moduli)}
    if spec.declared_order is not None:
        group["order"] = spec.declared_order
    return {"base": {"g": spec.g, "n": spec.n},
            "group": group, "images": images}


def cover_spec_from_data(data: dict) -> CoverSpec:
    try:
        g = int(data["base"]["g"])
        n = int(data["base"]["n"])
        group = data["group"]
        kind = group["kind"]
        raw = data["images"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed cover data: {exc}")
    pres = presentation(g, n)
    missing = [nm for nm in pres.names if nm not in raw]
    if missing:
        raise InvalidInputError(f"missing letter images: {missing}")
    images = [raw[nm] for nm in pres.names]
    if kind == "perm":
        spec = perm_cover(g, n, int(group["degree"]), images,
                          declared_order=group.get("order"))
    elif kind == "abelian":
        spec = abelian_cover(g, n, group["moduli"], images,
                             declared_order=group.get("order"))
    else:
        raise InvalidInputError(f"unknown group kind {kind!r}")
    # optional redundant u1 image doubles as a consistency check
    if "u1" in raw:
        claimed = spec.group.ops.validate(raw["u1"])
        if spec.phi(pres.u1_word()) != claimed:
            raise InvalidCoverError("declared u1 image is inconsistent")
    return spec


# --------------------------------------------------------------------------
# coset table, Schreier transversal and generators


class _Table:
    def __init__(self, spec: CoverSpec):
        group = spec.group
        d, N = group.d, spec.pres.cover_rank()
        self.d, self.N = d, N
        idx = group.index
        self.fwd = [[idx[group.mul(e, spec.images[j])] for e in group.elements]
                    for j in range(N)]
        self.bwd = []
        for j in range(N):
            back = [0] * d
            for i, t in enumerate(self.fwd[j]):
                back[t] = i
            self.bwd.append(back)
        # shortlex BFS over the signed alphabet x1 < x1^-1 < x2 < ...
        self.twords = [None] * d
        self.twords[0] = ()
        self.tree = set()
        queue = [0]
        seen = {0}
        while queue:
            nxt = []
            for gidx in queue:
                for j in range(1, N + 1):
                    for s in (j, -j):
                        t = self.step(gidx, s)
                        if t not in seen:
                            seen.add(t)
                            self.twords[t] = self.twords[gidx] + (s,)
                            self.tree.add((gidx, j) if s > 0 else (t, j))
                            nxt.append(t)
            queue = nxt
        _check(len(seen) == d, "coset graph is connected")
        self.loops = {}
        self.loop_edges = []
        for gidx in range(d):
            for j in range(1, N + 1):
                if (gidx, j) not in self.tree:
                    self.loops[(gidx, j)] = len(self.loop_edges)
                    self.loop_edges.append((gidx, j))
        self.L = len(self.loop_edges)
        _check(self.L == d * (N - 1) + 1, "Schreier rank")
        self.loop_words = []
        for gidx, j in self.loop_edges:
            t = self.fwd[j - 1][gidx]
            self.loop_words.append(wmul(self.twords[gidx], (j,),
                                        winv(self.twords[t])))

    def step(self, gidx, s):
        return (self.fwd[s - 1][gidx] if s > 0 else self.bwd[-s - 1][gidx])

    def trace(self, start, word):
        g = start
        for x in wreduce(word):
            a = abs(x)
            if not (1 <= a <= self.N):
                raise InvalidInputError(f"letter {x} outside cover alphabet")
            g = self.step(g, x)
        return g

    def rewrite(self, start, word):
        """Trace `word`, emitting signed loop-edge ids; tree edges are
        silent.  Returns (end coset, tuple of signed ids, 1-based)."""
        g = start
        out = []
        for x in wreduce(word):
            a = abs(x)
            if x > 0:
                edge = (g, a)
                g = self.step(g, x)
                if edge not in self.tree:
                    out.append(self.loops[edge] + 1)
            else:
                g = self.step(g, x)
                edge = (g, a)
                if edge not in self.tree:
                    out.append(-(self.loops[edge] + 1))
        return g, tuple(out)


def _table(spec: CoverSpec) -> _Table:
    if spec._table is None:
        spec._table = _Table(spec)
    return spec._table


def shortlex_transversal(spec: CoverSpec):
    """Schreier transversal words, indexed like the deck group elements."""
    return tuple(_table(spec).twords)


def schreier_generators(spec: CoverSpec):
    """Free basis of the cover subgroup attached to the non-tree edges."""
    return tuple(_table(spec).loop_words)


# --------------------------------------------------------------------------
# Euler characteristic bookkeeping


@dataclass(frozen=True)
class CoverAnalysis:
    degree: int
    n_K: int
    g_K: int
    chi_open: int
    chi_closed: int
    punctures: tuple  # per base puncture: (component count, ramification)


def analyze_cover(spec: CoverSpec) -> CoverAnalysis:
    if spec._analysis is not None:
        return spec._analysis
    d = spec.degree
    g, n = spec.g, spec.n
    punctures = []
    for j in range(1, n + 1):
        r = spec.order_of(spec.pres.puncture_word(j))
        _check(d % r == 0, "ramification divides the degree")
        punctures.append((d // r, r))
    n_K = sum(c for c, _ in punctures)
    if n >= 1:
        chi_open = d * (2 - 2 * g - n)
        chi_closed = chi_open + n_K
    else:
        chi_closed = d * (2 - 2 * g)
        chi_open = chi_closed
    _check((2 - chi_closed) % 2 == 0, "closed cover characteristic is even")
    g_K = (2 - chi_closed) // 2
    _check(g_K >= 0, "cover genus nonnegative")
    spec._analysis = CoverAnalysis(d, n_K, g_K, chi_open, chi_closed,
                                   tuple(punctures))
    return spec._analysis


# --------------------------------------------------------------------------
# cell structure of the filled cover and its homology


def _base_rotation(pres):
    """Successor map on signed letters whose cycles are the puncture words
    of the once-punctured model; this encodes the ribbon structure of the
    base bouquet."""
    words = [wreduce(w) for w in pres.cover_puncture_words()]
    rho = {}
    owner = {}
    for fidx, w in enumerate(words):
        _check(len(w) > 0, "empty boundary word")
        for k, s in enumerate(w):
            _check(s not in rho, "each edge side on exactly one boundary")
            rho[s] = w[(k + 1) % len(w)]
            owner[s] = fidx
    N = pres.cover_rank()
    _check(len(rho) == 2 * N, "boundary words cover every edge side")
    return rho, owner, words


class _ChainData:
    """Polygon model of the filled cover: free homology basis, intersection
    form, symplectic frame and coordinates for arbitrary subgroup words."""

    def __init__(self, spec: CoverSpec):
        pres = spec.pres
        t = _table(spec)
        d, N, L = t.d, t.N, t.L
        rho, owner, base_words = _base_rotation(pres)

        # faces of the cover = orbits of the lifted successor map on darts
        signed = [s for j in range(1, N + 1) for s in (j, -j)]
        pos = {s: i for i, s in enumerate(signed)}
        seen = [False] * (d * 2 * N)
        faces = []
        self.peripheral = []
        for g0 in range(d):
            for s0 in signed:
                if seen[g0 * 2 * N + pos[s0]]:
                    continue
                darts = []
                g, s = g0, s0
                while not seen[g * 2 * N + pos[s]]:
                    seen[g * 2 * N + pos[s]] = True
                    darts.append((g, s))
                    g, s = t.step(g, s), rho[s]
                _check((g, s) == (g0, s0), "dart successor closes up")
                word = []
                for (gg, ss) in darts:
                    if ss > 0:
                        edge = (gg, ss)
                        if edge not in t.tree:
                            word.append(t.loops[edge] + 1)
                    else:
                        edge = (t.step(gg, ss), -ss)
                        if edge not in t.tree:
                            word.append(-(t.loops[edge] + 1))
                faces.append(word)
                fidx = owner[s0]
                blen = len(base_words[fidx])
                _check(len(darts) % blen == 0, "face length is a multiple")
                base_pk = fidx + 1 if pres.n >= 1 else 0
                rep = min(gg for gg, _ in darts)
                self.peripheral.append((base_pk, rep, len(darts) // blen))

        counts = {}
        for w in faces:
            for s in w:
                counts[s] = counts.get(s, 0) + 1
        _check(all(counts.get(i + 1, 0) == 1 and counts.get(-i - 1, 0) == 1
                   for i in range(L)), "each loop letter once with each sign")

        # merge all faces into a single polygon, recording how each
        # eliminated letter is expressed in the surviving ones
        self.records = []
        while len(faces) > 1:
            where = {}
            for fi, w in enumerate(faces):
                for s in w:
                    where.setdefault(abs(s), {})[1 if s > 0 else -1] = fi
            x = None
            for i in sorted(where):
                if where[i][1] != where[i][-1]:
                    x = i
                    break
            _check(x is not None, "face complex is connected")
            fa, fb = where[x][1], where[x][-1]
            A, B = faces[fa], faces[fb]
            A = A[A.index(x):] + A[:A.index(x)]
            B = B[B.index(-x):] + B[:B.index(-x)]
            rec = [0] * (L + 1)
            for s in A[1:]:
                rec[abs(s)] -= 1 if s > 0 else -1
            self.records.append((x, rec))
            merged = A[1:] + B[1:]
            faces = [w for fi, w in enumerate(faces) if fi not in (fa, fb)]
            faces.append(merged)
        self.polygon = tuple(faces[0]) if faces else ()

        occ = {}
        for p, s in enumerate(self.polygon):
            occ.setdefault(abs(s), [None, None])[0 if s > 0 else 1] = p
        self.survivors = sorted(occ)
        _check(all(a is not None and b is not None
                   for a, b in occ.values()), "polygon letters are paired")
        S = len(self.survivors)
        self.g_K = S // 2
        _check(S == 2 * self.g_K, "even rank")
        ana = analyze_cover(spec)
        _check(self.g_K == ana.g_K, "polygon rank matches Hurwitz count")
        if pres.n >= 1:
            _check(len(self.peripheral) == ana.n_K,
                   "face count matches puncture count")
        else:
            _check(len(self.peripheral) == d,
                   "closed base: one filled disk per sheet")

        # intersection numbers from interleaving of occurrence pairs
        Lp = len(self.polygon)

        def pairing(x, y):
            px, mx = occ[x]
            span = (mx - px) % Lp

            def inside(q):
                return 0 < (q - px) % Lp < span

            qy, my = occ[y]
            return (1 if inside(my) else 0) - (1 if inside(qy) else 0)

        chord = [[pairing(self.survivors[i], self.survivors[j])
                  for j in range(S)] for i in range(S)]
        _check(all(chord[i][i] == 0 for i in range(S)) and
               all(chord[i][j] == -chord[j][i]
                   for i in range(S) for j in range(S)),
               "chord form is alternating")
        # the chord through the two occurrences of letter x is the loop
        # dual to x, so the edge-class form is minus the inverse
        P = [[-x for x in row] for row in _unimodular_inverse(chord)]
        U, V = _symplectic_rows(P)
        self.U, self.Uinv = U, V
        self.t = t
        self.L = L
        # word representatives of the symplectic basis classes
        self.basis_words = []
        for row in U:
            parts = []
            for c, sid in zip(row, self.survivors):
                if c:
                    parts.append(wpow(t.loop_words[sid - 1], c))
            self.basis_words.append(wmul(*parts) if parts else ())

    # -- coordinates

    def loop_vector(self, word, start=0):
        end, rw = self.t.rewrite(start, word)
        _check(end == start, "word must lie in the cover subgroup")
        v = [0] * (self.L + 1)
        for s in rw:
            v[abs(s)] += 1 if s > 0 else -1
        return v

    def reduce_vector(self, v):
        for x, rec in self.records:
            c = v[x]
            if c:
                v[x] = 0
                for k in range(1, self.L + 1):
                    if rec[k]:
                        v[k] += c * rec[k]
        sv = [v[sid] for sid in self.survivors]
        return [sum(sv[k] * self.Uinv[k][i] for k in range(len(sv)))
                for i in range(len(sv))]

    def class_int(self, word):
        """Coordinates of a subgroup word in the symplectic frame of the
        closed cover surface, over Z."""
        return self.reduce_vector(self.loop_vector(word))


def _unimodular_inverse(P):
    """Exact inverse of a unimodular integer matrix."""
    n = len(P)
    A = [[Fraction(P[i][j]) for j in range(n)]
         + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        _check(piv is not None, "chord form is nondegenerate")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    out = [[x for x in row[n:]] for row in A]
    _check(all(x.denominator == 1 for row in out for x in row),
           "chord form is unimodular")
    return [[int(x) for x in row] for row in out]


def _symplectic_rows(P):
    """Integer basis change U (with inverse) taking the alternating
    unimodular Gram matrix P to the interleaved standard form."""
    S = len(P)
    U = [[1 if i == j else 0 for j in range(S)] for i in range(S)]
    V = [[1 if i == j else 0 for j in range(S)] for i in range(S)]
    Q = [row[:] for row in P]

    def rowadd(i, j, q):
        # v_i += q * v_j
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        for r in range(S):
            V[r][j] -= q * V[r][i]
        Q[i] = [a + q * b for a, b in zip(Q[i], Q[j])]
        for r in range(S):
            Q[r][i] += q * Q[r][j]

    def rowswap(i, j):
        U[i], U[j] = U[j], U[i]
        for r in range(S):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Q[i], Q[j] = Q[j], Q[i]
        for r in range(S):
            Q[r][i], Q[r][j] = Q[r][j], Q[r][i]

    for block in range(0, S, 2):
        guard = 0
        while True:
            guard += 1
            _check(guard < 10000, "symplectic reduction terminates")
            best = None
            for i in range(block, S):
                for j in range(i + 1, S):
                    if Q[i][j] and (best is None
                                    or abs(Q[i][j]) < abs(Q[best[0]][best[1]])):
                        best = (i, j)
            _check(best is not None, "form stays nondegenerate")
            bi, bj = best
            p = Q[bi][bj]
            if abs(p) == 1:
                break
            moved = False
            for r in range(block, S):
                if r != bi and r != bj and Q[r][bj] % p:
                    rowadd(r, bi, -(Q[r][bj] // p))
                    moved = True
                    break
                if r != bi and r != bj and Q[r][bi] % p:
                    rowadd(r, bj, -(Q[r][bi] // Q[bj][bi]))
                    moved = True
                    break
            if moved:
                continue
            mixed = False
            for r in range(block, S):
                if r in (bi, bj):
                    continue
                for c in range(r + 1, S):
                    if c in (bi, bj):
                        continue
                    if Q[r][c] % p:
                        rowadd(bi, r, 1)
                        mixed = True
                        break
                if mixed:
                    break
            _check(mixed, "gcd step makes progress")
        if bi != block:
            rowswap(block, bi)
        if bj != block + 1:
            rowswap(block + 1, bj)
        if Q[block][block + 1] == -1:
            rowswap(block, block + 1)
        for r in range(block + 2, S):
            alpha = Q[r][block + 1]
            beta = Q[r][block]
            if alpha:
                rowadd(r, block, -alpha)
            if beta:
                rowadd(r, block + 1, beta)
    J = SympSpace(S // 2, 0).J if S else []
    _check(Q == [list(r) for r in J], "reduced form is standard")
    iden = [[1 if i == j else 0 for j in range(S)] for i in range(S)]
    UV = [[sum(U[i][k] * V[k][j] for k in range(S)) for j in range(S)]
          for i in range(S)]
    _check(UV == iden, "tracked inverse is exact")
    return U, V


def _chain(spec: CoverSpec) -> _ChainData:
    if spec._chain is None:
        t = _table(spec)
        if t.d * t.N > DEFAULT_MAX_CHAIN:
            raise ResourceLimitError(
                "cover homology beyond the configured degree * rank limit")
        spec._chain = _ChainData(spec)
    return spec._chain


class DeckHomology:
    """H_1 of the filled cover over Z/m with the deck group action.

    Matrices act on row vectors and compose covariantly:
    matrix_of(g) . matrix_of(h) == matrix_of(g * h).
    """

    def __init__(self, spec, m):
        chain = _chain(spec)
        self.spec = spec
        self.m = m
        self.g_K = chain.g_K
        self.rank = 2 * chain.g_K
        self.space = SympSpace(chain.g_K, m)
        self.peripheral = tuple(chain.peripheral)
        self._chain = chain
        t = chain.t
        group = spec.group
        mats = []
        for h in group.elements:
            hidx = group.index[group.inv(h)]
            tw = t.twords[hidx]
            rows = []
            for rep in chain.basis_words:
                rows.append(self.space.reduce(
                    chain.class_int(wmul(tw, rep, winv(tw)))))
            M = tuple(rows)
            _check(self.space.is_symplectic(M), "deck matrix is symplectic")
            mats.append(M)
        self.matrices = tuple(mats)
        _check(self.matrices[0] == self.space.identity_matrix(),
               "identity element acts trivially")
        iden = self.space.identity_matrix()
        self.faithful = all(M != iden for M in self.matrices[1:])

    def class_of(self, word):
        """Class of a subgroup word in H_1 of the filled cover."""
        return self.space.reduce(self._chain.class_int(word))

    def matrix_of(self, element):
        return self.matrices[self.spec.group.index[element]]


def cover_homology(spec: CoverSpec, m: int) -> DeckHomology:
    if m != 0 and m < 2:
        raise InvalidInputError("modulus must be 0 or at least 2")
    if m not in spec._homs:
        spec._homs[m] = DeckHomology(spec, m)
    return spec._homs[m]


# --------------------------------------------------------------------------
# lifting multicurves


@dataclass(frozen=True)
class LiftedCurve:
    index: int
    component_count: int
    cycle_length: int
    classes: tuple  # one homology class per component, by smallest sheet


@dataclass(frozen=True)
class LiftResult:
    curves: tuple
    sigma: StableGraph
    has_separating_component: bool
    has_cut_pair: bool
    degree: int
    g_K: int


@dataclass(frozen=True)
class CutGraph:
    """Full record of the cut graph of a lifted multicurve.

    Vertices are copies of the complementary pieces (piece index plus the
    sheet orbit of its subgroup), edges are the curve components (curve
    index plus the smallest sheet of the cycle), and every edge carries its
    homology class in the filled cover.  `edge_copy_of[e][sheet]` is the
    orbit representative of the component of curve e through that sheet."""

    degree: int
    g_K: int
    n_K: int
    vert_piece: tuple
    vert_orbit: tuple
    vert_genus: tuple
    vert_marks: tuple
    edge_curve: tuple
    edge_rep: tuple
    edge_ends: tuple
    edge_class: tuple
    edge_copy_of: tuple
    curves: tuple
    sigma: StableGraph


def _word_cycles(table, word):
    """Orbits of right translation by the image of `word`, as sorted
    tuples of sheet indices, ordered by smallest element."""
    nxt = [table.trace(g, word) for g in range(table.d)]
    seen = [False] * table.d
    out = []
    for g0 in range(table.d):
        if seen[g0]:
            continue
        cyc = []
        g = g0
        while not seen[g]:
            seen[g] = True
            cyc.append(g)
            g = nxt[g]
        out.append(tuple(cyc))
    return out


def _subgroup_orbits(table, words):
    """Orbits of right translation by the subgroup the words generate."""
    d = table.d
    nxts = [[table.trace(g, w) for g in range(d)] for w in words]
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for nxt in nxts:
        for g in range(d):
            a, b = find(g), find(nxt[g])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for g in range(d):
        groups.setdefault(find(g), []).append(g)
    return [tuple(sorted(v)) for _, v in sorted(groups.items())]


def lift_cut_graph(spec: CoverSpec, mc, m: int) -> CutGraph:
    if (mc.g, mc.n) != (spec.g, spec.n):
        raise InvalidInputError("multicurve signature does not match cover")
    t = _table(spec)
    for w in mc.words:
        for x in wreduce(w):
            if not (1 <= abs(x) <= t.N):
                raise InvalidInputError("curve word outside cover alphabet")
    hom = cover_homology(spec, m)
    chain = hom._chain
    ana = analyze_cover(spec)
    d = spec.degree

    curves = []
    edge_copy_index = {}   # (edge, min sheet of orbit) -> global edge id
    edge_copy_of = []      # per edge: sheet -> orbit min
    edge_ends = []
    edge_curve = []
    edge_rep = []
    edge_class = []
    for e, w in enumerate(mc.words):
        c = spec.order_of(w)
        cycles = _word_cycles(t, w)
        _check(all(len(cy) == c for cy in cycles), "free orbits of a lift")
        _check(len(cycles) * c == d, "component count times length is degree")
        of = [0] * d
        classes = []
        for cy in cycles:
            rep = cy[0]
            for g in cy:
                of[g] = rep
            edge_copy_index[(e, rep)] = len(edge_ends)
            edge_ends.append([])
            edge_curve.append(e)
            edge_rep.append(rep)
            tw = t.twords[rep]
            cls = hom.space.reduce(
                chain.class_int(wmul(tw, wpow(w, c), winv(tw))))
            classes.append(cls)
            edge_class.append(cls)
        edge_copy_of.append(tuple(of))
        curves.append(LiftedCurve(e, len(cycles), c, tuple(classes)))

    # vertices of the cut graph: orbits of the complementary piece subgroups
    vert_index = {}
    vert_order = []
    for pi, piece in enumerate(mc.pieces):
        for orb in _subgroup_orbits(t, piece.gens):
            vert_index[(pi, orb[0])] = len(vert_order)
            vert_order.append((pi, orb))

    vert_of = {}
    for (pi, orb) in vert_order:
        for g in orb:
            vert_of[(pi, g)] = vert_index[(pi, orb[0])]

    # boundary circles attach piece copies to curve copies
    for e, w in enumerate(mc.words):
        for side in mc.sides[e]:
            loop = wmul(side.conj, wpow(w, side.sign), winv(side.conj))
            for cy in _word_cycles(t, loop):
                g = cy[0]
                v = vert_of[(side.piece, g)]
                ec = edge_copy_index[(e, edge_copy_of[e][t.trace(g, side.conj)])]
                edge_ends[ec].append(v)
    _check(all(len(ends) == 2 for ends in edge_ends),
           "every lifted curve bounds exactly two circles")

    # punctures of the cover, labelled by (base puncture, smallest sheet)
    mark_records = []
    for pi, piece in enumerate(mc.pieces):
        for (j, loop) in piece.marks:
            for cy in _word_cycles(t, loop):
                reps = [g for g in cy]
                mark_records.append((j, min(reps), vert_of[(pi, cy[0])]))
    mark_records.sort()
    _check(len(mark_records) == ana.n_K, "lift accounts for every puncture")
    vert_marks = [[] for _ in vert_order]
    for label, (_, _, v) in enumerate(mark_records, start=1):
        vert_marks[v].append(label)

    vert_degree = [0] * len(vert_order)
    for ends in edge_ends:
        for v in ends:
            vert_degree[v] += 1

    vertices = []
    for vi, (pi, orb) in enumerate(vert_order):
        piece = mc.pieces[pi]
        chi_open = len(orb) * piece.chi_filled
        total = vert_degree[vi] + len(vert_marks[vi])
        _check((2 - chi_open - total) % 2 == 0, "copy genus is integral")
        h = (2 - chi_open - total) // 2
        _check(h >= 0, "copy genus is nonnegative")
        vertices.append((h, tuple(vert_marks[vi])))
    edges = [tuple(ends) for ends in edge_ends]
    sigma = StableGraph(vertices, edges)
    _check(sigma.genus() == ana.g_K, "cut graph genus matches the cover")
    _check(sigma.is_stable(), "cut graph is stable")
    _check(sigma.marks() == tuple(range(1, ana.n_K + 1)),
           "cut graph marks enumerate the cover punctures")
    return CutGraph(d, ana.g_K, ana.n_K,
                    tuple(pi for pi, _ in vert_order),
                    tuple(orb for _, orb in vert_order),
                    tuple(h for h, _ in vertices),
                    tuple(mk for _, mk in vertices),
                    tuple(edge_curve), tuple(edge_rep),
                    tuple(edges), tuple(edge_class),
                    tuple(edge_copy_of), tuple(curves), sigma)


def lift_multicurve(spec: CoverSpec, mc, m: int) -> LiftResult:
    cg = lift_cut_graph(spec, mc, m)
    return LiftResult(cg.curves, cg.sigma,
                      bool(cg.sigma.bridges()),
                      bool(cg.sigma.minimal_two_cuts()),
                      cg.degree, cg.g_K)


# --------------------------------------------------------------------------
# derived covers K -> [K,K] K^ell


class _ExtensionOps:
    """Elements (deck index, vector over Z/ell); the vector part lives in
    the mod-ell abelianization of the cover subgroup."""

    kind = "extension"

    def __init__(self, spec, ell, cls, rank):
        self.spec = spec
        self.ell = ell
        self.rank = rank
        t = _table(spec)
        group = spec.group
        d = group.d
        self.mul_idx = [[group.index[group.mul(a, b)] for b in group.elements]
                        for a in group.elements]
        self.inv_idx = [group.index[group.inv(a)] for a in group.elements]
        # conjugation action of transversal lifts on the abelianization
        self.act = []
        for gidx in range(d):
            tw = t.twords[gidx]
            rows = []
            for k in range(rank):
                rows.append(cls(wmul(tw, self._gen_word(t, k), winv(tw))))
            self.act.append(rows)
        self._kappa = {}
        self._cls = cls
        self._t = t
        self.identity = (0, (0,) * rank)

    def _gen_word(self, t, k):
        if self.spec.n >= 1:
            return t.loop_words[k]
        chain = _chain(self.spec)
        return t.loop_words[chain.survivors[k] - 1]

    def kappa(self, g1, g2):
        key = (g1, g2)
        if key not in self._kappa:
            t = self._t
            g12 = self.mul_idx[g1][g2]
            self._kappa[key] = self._cls(
                wmul(t.twords[g1], t.twords[g2], winv(t.twords[g12])))
        return self._kappa[key]

    def validate(self, e):
        gidx, v = e
        v = tuple(int(x) % self.ell for x in v)
        if not (0 <= gidx < len(self.inv_idx)) or len(v) != self.rank:
            raise InvalidInputError("malformed extension element")
        return (gidx, v)

    def _apply(self, gidx, v):
        rows = self.act[gidx]
        out = [0] * self.rank
        for k, c in enumerate(v):
            if c:
                row = rows[k]
                for i in range(self.rank):
                    out[i] += c * row[i]
        return out

    def mul(self, a, b):
        g1, v1 = a
        g2, v2 = b
        av2 = self._apply(g1, v2)
        kap = self.kappa(g1, g2)
        vec = tuple((x + y + z) % self.ell
                    for x, y, z in zip(v1, av2, kap))
        return (self.mul_idx[g1][g2], vec)

    def inv(self, a):
        g, v = a
        gi = self.inv_idx[g]
        kap = self.kappa(g, gi)
        merged = [x + y for x, y in zip(v, kap)]
        out = self._apply(gi, merged)
        return (gi, tuple((-x) % self.ell for x in out))


def derived_cover(spec: CoverSpec, ell: int,
                  max_degree=None) -> CoverSpec:
    """Cover attached to [K,K] K^ell, returned with regular permutation
    images.  For a closed base the abelianization of K is taken in the
    filled cover surface, so the boundary relation stays killed."""
    if ell < 2:
        raise InvalidInputError("derived modulus must be at least 2")
    t = _table(spec)
    if spec.n >= 1:
        rank = t.L

        def cls(word):
            end, rw = t.rewrite(0, word)
            _check(end == 0, "abelianizing a non-subgroup word")
            v = [0] * rank
            for s in rw:
                v[abs(s) - 1] += 1 if s > 0 else -1
            return tuple(x % ell for x in v)
    else:
        chain = _chain(spec)
        rank = 2 * chain.g_K
        survivors = chain.survivors

        def cls(word):
            v = chain.loop_vector(word)
            for x, rec in chain.records:
                c = v[x]
                if c:
                    v[x] = 0
                    for k in range(1, chain.L + 1):
                        if rec[k]:
                            v[k] += c * rec[k]
            return tuple(v[sid] % ell for sid in survivors)

    cap = max_degree if max_degree is not None else DEFAULT_MAX_DEGREE
    degree = spec.degree * ell ** rank
    if degree > cap:
        raise ResourceLimitError(
            f"derived cover degree {degree} exceeds the bound {cap}")
    ops = _ExtensionOps(spec, ell, cls, rank)
    images = []
    for j in range(1, t.N + 1):
        gidx = t.fwd[j - 1][0]
        images.append((gidx, cls(wmul((j,), winv(t.twords[gidx])))))
    ext = DeckGroup(ops, images, cap)
    _check(ext.d == degree, "extension has the predicted order")
    perms = []
    for img in images:
        perms.append(tuple(ext.index[ops.mul(e, img)] for e in ext.elements))
    return perm_cover(spec.g, spec.n, degree, perms, declared_order=degree)


# --------------------------------------------------------------------------
# mapping classes acting on cover homology


def _twist_sequence(t):
    """Normalize a twist argument: a Twist, or a sequence of Twists and
    (Twist, sign) pairs, applied left to right."""
    if t is None:
        return []
    if hasattr(t, "apply"):
        return [(t, 1)]
    out = []
    for item in t:
        if hasattr(item, "apply"):
            out.append((item, 1))
        else:
            tw, sign = item
            if sign not in (1, -1):
                raise InvalidInputError("twist sign must be +1 or -1")
            out.append((tw, sign))
    return out


def _apply_sequence(seq, word):
    for tw, sign in seq:
        word = tw.apply(word) if sign > 0 else tw.apply_inv(word)
    return word


def invariance_check(spec: CoverSpec, twists) -> bool:
    """True iff each twist maps every Schreier generator of the cover
    subgroup back into the subgroup."""
    t = _table(spec)
    for item in twists:
        seq = _twist_sequence(item)
        for s in t.loop_words:
            if t.trace(0, _apply_sequence(seq, s)) != 0:
                return False
    return True


def deck_coset_representative(hom: DeckHomology, M):
    """Lexicographically least matrix in the deck-image coset of M."""
    best = None
    for D in hom.matrices:
        cand = hom.space.mat_mul(D, M)
        if best is None or cand < best:
            best = cand
    return best


def mcg_action_on_cover(spec: CoverSpec, t, m: int):
    """Matrix induced on H_1 of the filled cover by a twist or a twist
    sequence preserving the cover subgroup; deck-coset ambiguity is fixed
    by returning the lexicographically least representative."""
    if m < 2:
        raise InvalidInputError("modulus must be at least 2")
    seq = _twist_sequence(t)
    table = _table(spec)
    for s in table.loop_words:
        if table.trace(0, _apply_sequence(seq, s)) != 0:
            raise ValidationError("invariance",
                                  "twist does not preserve the cover subgroup")
    hom = cover_homology(spec, m)
    chain = hom._chain
    rows = [hom.space.reduce(chain.class_int(_apply_sequence(seq, rep)))
            for rep in chain.basis_words]
    M = tuple(rows)
    _check(hom.space.is_symplectic(M), "induced matrix is symplectic")
    return deck_coset_representative(hom, M)
