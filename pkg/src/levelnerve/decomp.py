"""Graphs of subgroups of a symplectic module, with validity conditions.

A decomposition is a finite connected graph (loops and parallel edges
allowed) whose vertices and edges carry subgroups of one ambient module
H = H_1(S_g, Z/m), together with a marking that distributes the puncture
labels {1..n} over the vertices.  The package meaning of "valid" is the
conjunction of six independently reported conditions:

  i.   gluing the vertex groups along all the edge groups embeds into H
       with free cokernel of rank b_1(Y);
  ii.  the markings partition {1..n};
  iii. the span E of all edge groups pairs to zero with every vertex group
       (so E is isotropic);
  iv.  edge groups are cyclic; every edge set whose removal keeps Y
       connected spans a primitive subgroup of matching rank, and every
       minimal disconnecting edge set admits generators summing to zero;
  v.   a vertex with at most two ends-plus-marks carries a group of rank
       at least two (a loop contributes two ends to its vertex);
  vi.  each vertex group splits as the span of its incident edge groups
       plus a nondegenerate symplectic complement.

Condition iv is decided exactly on the complements of spanning trees: the
family of connected-complement edge sets is downward closed, a subset of a
primitive basis spans primitively, so the tree complements are the only
maximal cases.  Framed decompositions add a generator per edge group,
stored modulo sign (lexicographically smallest of the pair).  Equivariant
decompositions add a finite group acting on the graph together with its
matrices on H; naturality of groups, marks and frames is checked per
element.

Equivalence is attribute-preserving graph isomorphism; canonical_form
returns a byte string that is equal exactly for equivalent plain or framed
decompositions (equivariant values are compared through their framed
part).  The partial order leq, the symplectic transport sp_action, and the
two constructors induced_from_multicurve / induced_from_lift realize
decompositions from catalog multicurves, directly on the base surface or
through a finite cover with its deck action.

All outputs are deterministic: trees, subgraph enumerations and canonical
forms depend only on the stored vertex and edge order.
"""

import itertools
import math

from .errors import (LevelNerveError, InvalidInputError, ResourceLimitError,
                     UnsupportedError, ValidationError)
from .symplectic import SympSpace, SympSubgroup, hnf, mod_row_kernel
from .surface import presentation
from .catalog import multicurve_catalog
from .words import winv, wmul
from . import covers

# caps for the exhaustive parts of validate
MAX_TREES = 4096
MAX_SUM_CHOICES = 65536
MAX_CANONICAL_PERMS = 362880

_CONDITIONS = ("i", "ii", "iii", "iv", "v", "vi", "frame", "action")


def _check(cond, msg):
    if not cond:
        raise LevelNerveError(f"decomposition self-check failed: {msg}")


# --------------------------------------------------------------------------
# integer linear algebra helpers


def _int_coords(rows, vec):
    """Integer coordinates of vec over the row lattice, or None.

    Echelonizes the rows augmented with an identity block, then reduces
    vec greedily; the collected coefficients express vec as an integer
    combination of the original rows whenever the residual vanishes."""
    k = len(rows)
    if k == 0:
        return () if not any(vec) else None
    n = len(rows[0])
    aug = hnf([list(r) + [1 if j == i else 0 for j in range(k)]
               for i, r in enumerate(rows)])
    v = list(vec)
    coeff = [0] * k
    for row in aug:
        head = row[:n]
        piv = next((j for j in range(n) if head[j]), None)
        if piv is None:
            continue
        q = v[piv] // head[piv]
        if q:
            for j in range(n):
                v[j] -= q * head[j]
            for j in range(k):
                coeff[j] += q * row[n + j]
    if any(v):
        return None
    return tuple(coeff)


def _express(space, gens, vec):
    """Coefficients x with sum x_i * gens_i = vec in the module, or None."""
    m = space.m
    rows = [list(g) for g in gens]
    if m:
        rows = rows + [[m if j == i else 0 for j in range(space.dim)]
                       for i in range(space.dim)]
    sol = _int_coords(rows, list(vec))
    if sol is None:
        return None
    return sol[:len(gens)]


def _quotient_profile(inner: SympSubgroup, outer: SympSubgroup):
    """(contained, quotient is free, free rank) for inner <= outer."""
    space = inner.space
    coords = []
    for row in inner.lattice:
        c = _int_coords(outer.lattice, row)
        if c is None:
            return (False, False, None)
        coords.append(list(c))
    if space.m:
        divs = _snf_divisors(coords)
        nonunit = sorted(d for d in divs if d != 1)
        free = all(d == space.m for d in nonunit)
        return (True, free, len(nonunit) if free else None)
    divs = [d for d in _snf_divisors(coords) if d]
    free = all(d == 1 for d in divs)
    rank = len(outer.lattice) - len(divs) if free else None
    return (True, free, rank)


def _snf_divisors(mat):
    from .symplectic import snf_diagonal
    return list(snf_diagonal([list(r) for r in mat]))


def _sign_normal(space, vec):
    v = space.reduce(vec)
    w = space.reduce([-x for x in v])
    return min(v, w)


def _symplectic_inverse(space, F):
    """Inverse of a symplectic matrix: F^-1 = -J F^T J in row convention."""
    n = space.dim
    FT = [[F[j][i] for j in range(n)] for i in range(n)]
    J = space.J
    JFT = [[sum(J[i][k] * FT[k][j] for k in range(n)) for j in range(n)]
           for i in range(n)]
    inv = space.reduce_matrix(
        [[-sum(JFT[i][k] * J[k][j] for k in range(n)) for j in range(n)]
         for i in range(n)])
    _check(space.mat_mul(F, inv) == space.identity_matrix(),
           "symplectic inverse")
    return inv


# --------------------------------------------------------------------------
# decomposition values


class GraphDecomposition:
    """Connected graph with subgroup data in one ambient symplectic module.

    Edges are unordered pairs of vertex indices; parallel edges and loops
    are allowed and keep their stored order.  Construction checks only
    well-formedness (shared ambient space, endpoints in range, marks within
    {1..n}, connectivity); the six validity conditions are the job of
    validate()."""

    kind = "plain"

    def __init__(self, space, vertex_groups, edge_groups, edges, marks=None,
                 n=0):
        self.space = space
        self.n = int(n)
        if self.n < 0:
            raise InvalidInputError("negative number of marks")
        self.vertex_groups = tuple(self._coerce(g) for g in vertex_groups)
        self.V = len(self.vertex_groups)
        if self.V == 0:
            raise InvalidInputError("decomposition needs at least one vertex")
        self.edge_groups = tuple(self._coerce(g) for g in edge_groups)
        es = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < self.V and 0 <= v < self.V):
                raise InvalidInputError("edge endpoint out of range")
            es.append((min(u, v), max(u, v)))
        self.edges = tuple(es)
        if len(self.edges) != len(self.edge_groups):
            raise InvalidInputError("edge group count mismatch")
        if marks is None:
            marks = [()] * self.V
        mk = []
        for s in marks:
            t = tuple(sorted(set(int(x) for x in s)))
            if any(not (1 <= x <= self.n) for x in t):
                raise InvalidInputError("mark label outside 1..n")
            mk.append(t)
        if len(mk) != self.V:
            raise InvalidInputError("marking count mismatch")
        self.marks = tuple(mk)
        seen = {0}
        frontier = [0]
        adj = [[] for _ in range(self.V)]
        for (u, v) in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        while frontier:
            frontier = [w for x in frontier for w in adj[x] if not
                        (w in seen or seen.add(w))]
        if len(seen) != self.V:
            raise InvalidInputError("decomposition graph is not connected")

    def _coerce(self, g):
        if isinstance(g, SympSubgroup):
            sub = g
        else:
            sub = self.space.subgroup(list(g))
        if (sub.space.g, sub.space.m) != (self.space.g, self.space.m):
            raise InvalidInputError("subgroup from a different ambient space")
        return sub

    def rank(self):
        return len(self.edges)

    def b1(self):
        return len(self.edges) - self.V + 1

    def degrees(self):
        """Edge ends per vertex; a loop contributes two."""
        d = [0] * self.V
        for (u, v) in self.edges:
            d[u] += 1
            d[v] += 1
        return tuple(d)

    def incident(self, v):
        return tuple(e for e, (a, b) in enumerate(self.edges)
                     if a == v or b == v)

    def _vertex_payload(self, v):
        return (self.vertex_groups[v].key(), self.marks[v])

    def _edge_payload(self, e):
        return (self.edge_groups[e].key(),)

    def __repr__(self):
        return (f"{type(self).__name__}(g={self.space.g}, m={self.space.m}, "
                f"{self.V} vertices, {len(self.edges)} edges)")


class FramedDecomposition(GraphDecomposition):
    """Graph decomposition with a chosen generator per edge group, stored
    modulo sign."""

    kind = "framed"

    def __init__(self, space, vertex_groups, edge_groups, edges, frames,
                 marks=None, n=0):
        super().__init__(space, vertex_groups, edge_groups, edges, marks, n)
        fr = [_sign_normal(space, f) for f in frames]
        if len(fr) != len(self.edges):
            raise InvalidInputError("frame count mismatch")
        self.frames = tuple(fr)

    def _edge_payload(self, e):
        return (self.edge_groups[e].key(), self.frames[e])


class EquivariantDecomposition(FramedDecomposition):
    """Framed decomposition with a finite group acting on the graph.

    For the element with index k, vperms[k]/eperms[k] permute vertices and
    edges while matrices[k] acts on the ambient module; the pairing is such
    that the group transported to the image vertex is the matrix image:
    D[vperm(v)] = D[v] * M.  rank() counts edge orbits."""

    kind = "equivariant"

    def __init__(self, space, vertex_groups, edge_groups, edges, frames,
                 marks=None, n=0, group=None, matrices=(), vperms=(),
                 eperms=()):
        super().__init__(space, vertex_groups, edge_groups, edges, frames,
                         marks, n)
        self.group = group
        self.matrices = tuple(tuple(self.space.reduce(r) for r in M)
                              for M in matrices)
        self.vperms = tuple(tuple(int(x) for x in p) for p in vperms)
        self.eperms = tuple(tuple(int(x) for x in p) for p in eperms)
        if not (len(self.matrices) == len(self.vperms) == len(self.eperms)):
            raise InvalidInputError("action tables have unequal lengths")
        for p in self.vperms:
            if sorted(p) != list(range(self.V)):
                raise InvalidInputError("vertex action is not a permutation")
        for p in self.eperms:
            if sorted(p) != list(range(len(self.edges))):
                raise InvalidInputError("edge action is not a permutation")

    def framed(self):
        """The underlying framed decomposition, action forgotten."""
        return FramedDecomposition(self.space, self.vertex_groups,
                                   self.edge_groups, self.edges, self.frames,
                                   self.marks, self.n)

    def edge_orbits(self):
        parent = list(range(len(self.edges)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p in self.eperms:
            for e, f in enumerate(p):
                a, b = find(e), find(f)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        orbits = {}
        for e in range(len(self.edges)):
            orbits.setdefault(find(e), []).append(e)
        return tuple(tuple(v) for _, v in sorted(orbits.items()))

    def rank(self):
        return len(self.edge_orbits())


# --------------------------------------------------------------------------
# validity


def _pushout_report(space, vgroups, edges, egroups, strict=False):
    """Glue the vertex groups along all the edges and map to the ambient.

    This computes the abelianized fundamental group of the graph of groups
    minus its free part: generators are the canonical generators of each
    vertex group, relations are each block's internal relations plus the
    identification of the two endpoint copies of every edge group (loops
    identify a copy with itself and contribute nothing).  An edge group
    not contained in an endpoint's group breaks the graph-of-groups
    structure: with strict=True that is reported as undefined, otherwise
    the edge is skipped and the containment failure is left to the local
    conditions.  Returns (defined, injective, image subgroup)."""
    gens = [vg.canonical_gens() for vg in vgroups]
    offs = [0]
    for gg in gens:
        offs.append(offs[-1] + len(gg))
    total = offs[-1]
    amb = [list(v) for gg in gens for v in gg]
    rel = []
    for v, gg in enumerate(gens):
        if not gg:
            continue
        for row in mod_row_kernel([list(x) for x in gg], space.m):
            r = [0] * total
            r[offs[v]:offs[v] + len(gg)] = row
            rel.append(r)
    for e, (u, v) in enumerate(edges):
        for x in egroups[e].canonical_gens():
            cu = _express(space, gens[u], x)
            cv = _express(space, gens[v], x)
            if cu is None or cv is None:
                if strict:
                    return (False, False, None)
                continue
            if u == v:
                continue
            r = [0] * total
            for j, c in enumerate(cu):
                r[offs[u] + j] += c
            for j, c in enumerate(cv):
                r[offs[v] + j] -= c
            rel.append(r)
    if total == 0:
        return (True, True, space.subgroup([]))
    ker = mod_row_kernel(amb, space.m)
    injective = hnf([list(r) for r in ker]) == hnf([list(r) for r in rel])
    image = space.subgroup([space.reduce(row) for row in amb])
    return (True, injective, image)


def _all_spanning_trees(edges, V, cap=MAX_TREES):
    """All spanning trees as sorted edge-index tuples, capped."""
    E = len(edges)
    need = V - 1
    out = []

    def connected_using(allowed):
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for e in allowed:
                u, v = edges[e]
                for a, b in ((u, v), (v, u)):
                    if a in seen and b not in seen:
                        seen.add(b)
                        nxt.append(b)
            if not nxt:
                break
            frontier = nxt
        return len(seen) == V

    def grow(chosen, start, comp):
        if len(out) > cap:
            raise ResourceLimitError("spanning tree enumeration cap")
        if len(chosen) == need:
            out.append(tuple(chosen))
            return
        for e in range(start, E):
            u, v = edges[e]
            if comp[u] == comp[v]:
                continue
            rest = chosen + [e]
            remaining = rest + list(range(e + 1, E))
            if not connected_using(remaining):
                continue
            nc = list(comp)
            old, new = max(nc[u], nc[v]), min(nc[u], nc[v])
            for i in range(V):
                if nc[i] == old:
                    nc[i] = new
            grow(rest, e + 1, nc)

    if V == 1:
        return [()]
    grow([], 0, list(range(V)))
    return out


def _bonds(edges, V):
    """Minimal disconnecting edge sets: crossing sets of bipartitions into
    two connected halves."""
    if V == 1:
        return []
    adj = [[] for _ in range(V)]
    for e, (u, v) in enumerate(edges):
        if u != v:
            adj[u].append((v, e))
            adj[v].append((u, e))

    def connected(verts):
        verts = set(verts)
        if not verts:
            return False
        start = next(iter(verts))
        seen = {start}
        frontier = [start]
        while frontier:
            frontier = [w for x in frontier for (w, _) in adj[x]
                        if w in verts and not (w in seen or seen.add(w))]
        return seen == verts

    out = []
    others = list(range(1, V))
    for bits in range(2 ** (V - 1)):
        side = {0} | {others[i] for i in range(V - 1) if bits >> i & 1}
        rest = set(range(V)) - side
        if not rest:
            continue
        if not (connected(side) and connected(rest)):
            continue
        cut = tuple(e for e, (u, v) in enumerate(edges)
                    if (u in side) != (v in side))
        if cut:
            out.append(cut)
    return sorted(set(out))


def _generator_choices(sub: SympSubgroup):
    """All module elements generating a cyclic subgroup."""
    space = sub.space
    gens = sub.canonical_gens()
    if not gens:
        return [space.zero()]
    if sub.rank != 1:
        raise InvalidInputError("generator choices of a non-cyclic subgroup")
    c = gens[0]
    if space.m == 0:
        return [c, tuple(-x for x in c)]
    order = sub.order
    out = []
    for k in range(1, order + 1):
        v = space.reduce([k * x for x in c])
        if math.gcd(k, order) == 1:
            out.append(v)
    return out


def _unit_pair(space, sub: SympSubgroup):
    """A pair (x, y) in the subgroup with unit pairing, or None.

    Over Z/m a per-prime search among generator pairs is exact (a combined
    pair is assembled by CRT); over Z the generator pairs are enriched with
    sums and differences before giving up, and an uncertifiable state
    raises instead of guessing."""
    gens = list(sub.canonical_gens())
    if len(gens) < 2:
        return None
    m = space.m

    def pairs(candidates):
        for x, y in itertools.combinations(candidates, 2):
            yield x, y, space.pairing(x, y)

    if m == 0:
        for trial in range(3):
            for x, y, p in pairs(gens):
                if p == 1:
                    return (x, y)
                if p == -1:
                    return (y, x)
            gram = [[space.pairing(x, y) for y in gens] for x in gens]
            divs = [d for d in _snf_divisors(gram) if d]
            if not divs or divs[0] != 1:
                return None
            if trial == 0:
                gens += [tuple(a + b for a, b in zip(x, y))
                         for x, y in itertools.combinations(gens, 2)]
            elif trial == 1:
                gens += [tuple(a - b for a, b in zip(x, y))
                         for x, y in itertools.combinations(gens, 2)]
        raise LevelNerveError(
            "cannot certify a unit intersection pair over Z")
    primes = sorted(set(_prime_factors(m)))
    found = {}
    for x, y, p in pairs(gens):
        if math.gcd(p, m) == 1:
            return (x, y)
        for q in primes:
            if q not in found and p % q:
                found[q] = (x, y)
    if len(found) < len(primes):
        return None
    x = space.zero()
    y = space.zero()
    for q in primes:
        qk = q
        while m % (qk * q) == 0:
            qk *= q
        rest = m // qk
        inv = pow(rest, -1, qk)
        coeff = rest * inv
        xq, yq = found[q]
        x = space.reduce([a + coeff * b for a, b in zip(x, xq)])
        y = space.reduce([a + coeff * b for a, b in zip(y, yq)])
    _check(math.gcd(space.pairing(x, y), m) == 1, "assembled unit pair")
    return (x, y)


def _prime_factors(m):
    out = []
    d = 2
    while d * d <= m:
        while m % d == 0:
            out.append(d)
            m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _hyperbolic_residual(space, sub: SympSubgroup):
    """Split off unit-pairing planes until none remain; the residual is the
    orthogonal rest of the subgroup."""
    current = sub
    for _ in range(space.g + 1):
        pair = _unit_pair(space, current)
        if pair is None:
            return current
        x, y = pair
        plane = space.subgroup([x, y])
        current = current.intersection(plane.perp())
    raise LevelNerveError("hyperbolic splitting did not terminate")


def validate(d, conditions=None):
    """Violated condition labels, in the fixed order i..vi, frame, action.

    `conditions` restricts the checked subset (labels as strings); the
    default checks everything the kind of decomposition carries."""
    if not isinstance(d, GraphDecomposition):
        raise InvalidInputError("not a decomposition")
    space = d.space
    wanted = list(_CONDITIONS[:6])
    if isinstance(d, FramedDecomposition):
        wanted.append("frame")
    if isinstance(d, EquivariantDecomposition):
        wanted.append("action")
    if conditions is not None:
        conditions = set(conditions)
        unknown = conditions - set(_CONDITIONS)
        if unknown:
            raise InvalidInputError(f"unknown conditions {sorted(unknown)}")
        wanted = [c for c in wanted if c in conditions]
    bad = []

    if "i" in wanted:
        defined, injective, image = _pushout_report(
            space, d.vertex_groups, d.edges, d.edge_groups)
        ok = defined and injective
        if ok:
            amb = space.subgroup([space.basis_a(i + 1) for i in range(space.g)]
                                 + [space.basis_b(i + 1)
                                    for i in range(space.g)])
            contained, free, rank = _quotient_profile(image, amb)
            ok = contained and free and rank == d.b1()
        if not ok:
            bad.append("i")

    if "ii" in wanted:
        labels = [x for mk in d.marks for x in mk]
        if sorted(labels) != list(range(1, d.n + 1)):
            bad.append("ii")

    if "iii" in wanted:
        E = space.subgroup([v for eg in d.edge_groups
                            for v in eg.canonical_gens()])
        ok = E.is_isotropic()
        egens = E.canonical_gens()
        for vg in d.vertex_groups:
            if not ok:
                break
            ok = all(space.pairing(x, y) == 0
                     for x in egens for y in vg.canonical_gens())
        if not ok:
            bad.append("iii")

    if "iv" in wanted:
        ok = all(eg.is_cyclic() for eg in d.edge_groups)
        if ok:
            full = set(range(len(d.edges)))
            for tree in _all_spanning_trees(d.edges, d.V):
                co = sorted(full - set(tree))
                span = space.subgroup([v for e in co for v in
                                       d.edge_groups[e].canonical_gens()])
                if not (span.rank == len(co) and span.is_primitive()):
                    ok = False
                    break
        if ok:
            for bond in _bonds(d.edges, d.V):
                choice_lists = [_generator_choices(d.edge_groups[e])
                                for e in bond]
                count = 1
                for ch in choice_lists:
                    count *= len(ch)
                if count > MAX_SUM_CHOICES:
                    raise ResourceLimitError("bond generator choice cap")
                if not any(
                        not any(space.reduce(
                            [sum(t) for t in zip(*pick)]))
                        for pick in itertools.product(*choice_lists)):
                    ok = False
                    break
        if not ok:
            bad.append("iv")

    if "v" in wanted:
        deg = d.degrees()
        ok = all(d.vertex_groups[v].rank >= 2
                 for v in range(d.V) if deg[v] + len(d.marks[v]) <= 2)
        if not ok:
            bad.append("v")

    if "vi" in wanted:
        ok = True
        for v in range(d.V):
            vg = d.vertex_groups[v]
            ev = space.subgroup([x for e in d.incident(v)
                                 for x in d.edge_groups[e].canonical_gens()])
            if not all(vg.contains(x) for x in ev.canonical_gens()):
                ok = False
                break
            if not all(space.pairing(x, y) == 0
                       for x in ev.canonical_gens()
                       for y in vg.canonical_gens()):
                ok = False
                break
            if _hyperbolic_residual(space, vg) != ev:
                ok = False
                break
        if not ok:
            bad.append("vi")

    if "frame" in wanted:
        ok = all(space.subgroup([f]) == eg
                 for f, eg in zip(d.frames, d.edge_groups))
        if not ok:
            bad.append("frame")

    if "action" in wanted:
        if not _action_natural(d):
            bad.append("action")

    return bad


def _maps_onto(space, A: SympSubgroup, M, Minv, B: SympSubgroup) -> bool:
    """Whether A * M = B, decided by memberships instead of a fresh
    Hermite form per pair."""
    if not all(B.contains(space.mat_apply(x, M)) for x in A.canonical_gens()):
        return False
    if space.m:
        return A.order == B.order
    return all(A.contains(space.mat_apply(y, Minv))
               for y in B.canonical_gens())


def _action_natural(d: EquivariantDecomposition):
    space = d.space
    E = len(d.edges)
    for M, vp, ep in zip(d.matrices, d.vperms, d.eperms):
        if not space.is_symplectic(M):
            return False
        Minv = _symplectic_inverse(space, M)
        for e in range(E):
            u, v = d.edges[e]
            if tuple(sorted((vp[u], vp[v]))) != d.edges[ep[e]]:
                return False
            if not _maps_onto(space, d.edge_groups[e], M, Minv,
                              d.edge_groups[ep[e]]):
                return False
            if d.frames[ep[e]] != _sign_normal(
                    space, space.mat_apply(d.frames[e], M)):
                return False
        for v in range(d.V):
            if not _maps_onto(space, d.vertex_groups[v], M, Minv,
                              d.vertex_groups[vp[v]]):
                return False
            if len(d.marks[vp[v]]) != len(d.marks[v]):
                return False
    if d.group is not None:
        elems = d.group.elements
        idx = d.group.index
        for a in range(len(elems)):
            for b in range(len(elems)):
                c = idx[d.group.mul(elems[a], elems[b])]
                vab = tuple(d.vperms[b][d.vperms[a][v]]
                            for v in range(d.V))
                if vab != d.vperms[c]:
                    return False
                eab = tuple(d.eperms[b][d.eperms[a][e]] for e in range(E))
                if eab != d.eperms[c]:
                    return False
    return True


# --------------------------------------------------------------------------
# equivalence and canonical forms


def _payload_classes(d):
    """Vertices grouped by their invariant class, each class sorted."""
    inv = []
    for v in range(d.V):
        around = sorted((d._edge_payload(e),
                         d.edges[e][0] == d.edges[e][1])
                        for e in d.incident(v))
        inv.append((d._vertex_payload(v), tuple(around)))
    classes = {}
    for v, key in enumerate(inv):
        classes.setdefault(key, []).append(v)
    return [vs for _, vs in sorted(classes.items())]


def _serial(d, order):
    """Serialized form under the vertex relabeling order[v] = new label."""
    vert = sorted((order[v],) + d._vertex_payload(v) for v in range(d.V))
    edg = sorted((min(order[u], order[v]), max(order[u], order[v]))
                 + d._edge_payload(e)
                 for e, (u, v) in enumerate(d.edges))
    return (d.kind, d.space.g, d.space.m, d.n, tuple(vert), tuple(edg))


def canonical_form(d) -> bytes:
    """Byte string equal exactly for equivalent decompositions.

    Minimizes the serialized form over all vertex relabelings compatible
    with the payload classes.  Equivalence compares the graph with its
    subgroup and frame data; an equivariant value is canonicalized through
    its framed part, the action itself is not part of the invariant."""
    if isinstance(d, EquivariantDecomposition):
        d = d.framed()
    classes = _payload_classes(d)
    count = 1
    for c in classes:
        count *= math.factorial(len(c))
    if count > MAX_CANONICAL_PERMS:
        raise ResourceLimitError("canonical form permutation cap")
    best = None
    for perms in itertools.product(*[itertools.permutations(c)
                                     for c in classes]):
        order = [0] * d.V
        label = 0
        for cls, perm in zip(classes, perms):
            for v in perm:
                order[v] = label
                label += 1
        s = _serial(d, order)
        if best is None or s < best:
            best = s
    return repr(best).encode()


def equivalent(d1, d2) -> bool:
    """Attribute-preserving graph isomorphism, decided by direct search.

    Kinds must agree; equivariant values are compared through their framed
    parts (the action is transported by sp_action but is not part of the
    equivalence relation)."""
    if d1.kind != d2.kind:
        return False
    if isinstance(d1, EquivariantDecomposition):
        d1 = d1.framed()
        d2 = d2.framed()
    if (d1.space.g, d1.space.m, d1.n, d1.V) != \
            (d2.space.g, d2.space.m, d2.n, d2.V):
        return False
    if sorted(d1._vertex_payload(v) for v in range(d1.V)) != \
            sorted(d2._vertex_payload(v) for v in range(d2.V)):
        return False
    edges2 = sorted((u, v) + d2._edge_payload(e)
                    for e, (u, v) in enumerate(d2.edges))

    def assign(mapping, v):
        if v == d1.V:
            edges1 = sorted((min(mapping[u], mapping[w]),
                             max(mapping[u], mapping[w]))
                            + d1._edge_payload(e)
                            for e, (u, w) in enumerate(d1.edges))
            return edges1 == edges2
        for target in range(d1.V):
            if target in mapping.values():
                continue
            if d1._vertex_payload(v) != d2._vertex_payload(target):
                continue
            mapping[v] = target
            if assign(mapping, v + 1):
                return True
            del mapping[v]
        return False

    return assign({}, 0)


# --------------------------------------------------------------------------
# partial order


def _connected_subgraphs(d):
    """(vertex tuple, edge tuple) pairs forming connected subgraphs."""
    out = []
    verts = range(d.V)
    for r in range(1, d.V + 1):
        for vs in itertools.combinations(verts, r):
            inside = set(vs)
            pool = [e for e, (u, v) in enumerate(d.edges)
                    if u in inside and v in inside]
            for k in range(len(pool) + 1):
                for es in itertools.combinations(pool, k):
                    seen = {vs[0]}
                    grew = True
                    while grew:
                        grew = False
                        for e in es:
                            u, v = d.edges[e]
                            for a, b in ((u, v), (v, u)):
                                if a in seen and b not in seen:
                                    seen.add(b)
                                    grew = True
                    if seen == inside:
                        out.append((vs, es))
    return out


def leq(d1, d2) -> bool:
    """Whether d1 is below d2: edge groups a subset, and every d1 vertex
    group glued from a connected subgraph of d2 carrying its marks."""
    if (d1.space.g, d1.space.m) != (d2.space.g, d2.space.m) or d1.n != d2.n:
        raise InvalidInputError("order comparison across ambient spaces")
    space = d1.space
    keys2 = {eg.key() for eg in d2.edge_groups}
    if any(eg.key() not in keys2 for eg in d1.edge_groups):
        return False
    candidates = _connected_subgraphs(d2)
    for v1 in range(d1.V):
        target = d1.vertex_groups[v1]
        want_marks = d1.marks[v1]
        found = False
        for vs, es in candidates:
            got = tuple(sorted(x for v in vs for x in d2.marks[v]))
            if got != want_marks:
                continue
            defined, injective, image = _pushout_report(
                space, [d2.vertex_groups[v] for v in vs],
                [(vs.index(d2.edges[e][0]), vs.index(d2.edges[e][1]))
                 for e in es],
                [d2.edge_groups[e] for e in es], strict=True)
            if not (defined and injective):
                continue
            contained, free, rank = _quotient_profile(image, target)
            if contained and free and rank == len(es) - len(vs) + 1:
                found = True
                break
        if not found:
            return False
    return True


# --------------------------------------------------------------------------
# symplectic transport


def sp_action(F, d):
    """Transport a decomposition through a symplectic matrix."""
    space = d.space
    F = space.reduce_matrix(F)
    if not space.is_symplectic(F):
        raise InvalidInputError("matrix is not symplectic over the ambient")
    vgroups = [vg.apply(F) for vg in d.vertex_groups]
    egroups = [eg.apply(F) for eg in d.edge_groups]
    if isinstance(d, EquivariantDecomposition):
        inv = _symplectic_inverse(space, F)
        mats = [space.mat_mul(space.mat_mul(inv, M), F) for M in d.matrices]
        return EquivariantDecomposition(
            space, vgroups, egroups, d.edges,
            [space.mat_apply(f, F) for f in d.frames],
            d.marks, d.n, d.group, mats, d.vperms, d.eperms)
    if isinstance(d, FramedDecomposition):
        return FramedDecomposition(
            space, vgroups, egroups, d.edges,
            [space.mat_apply(f, F) for f in d.frames], d.marks, d.n)
    return GraphDecomposition(space, vgroups, egroups, d.edges, d.marks, d.n)


# --------------------------------------------------------------------------
# constructors


def _require_catalog(g, n, mc):
    cat = multicurve_catalog(g, n)
    if (mc.g, mc.n) != (g, n) or mc.key not in {c.key for c in cat}:
        raise UnsupportedError("multicurve is not a catalog representative")


def induced_from_multicurve(g, n, m, mc) -> FramedDecomposition:
    """The framed decomposition a catalog multicurve cuts out of the base:
    vertex groups are the homology images of the complementary pieces,
    edge groups the cyclic spans of the curve classes, frames the classes
    themselves, marks the punctures of each piece."""
    _require_catalog(g, n, mc)
    space = SympSpace(g, m)
    pres = presentation(g, n)
    vgroups = [space.subgroup([pres.homology_class(w, m) for w in p.gens])
               for p in mc.pieces]
    marks = [tuple(sorted(j for j, _ in p.marks)) for p in mc.pieces]
    classes = [pres.homology_class(w, m) for w in mc.words]
    egroups = [space.subgroup([c]) for c in classes]
    d = FramedDecomposition(space, vgroups, egroups, mc.graph.edges,
                            classes, marks, n)
    viol = validate(d)
    if viol:
        raise ValidationError("decomposition",
                              f"induced decomposition violates {viol}")
    return d


def _schreier_vertex_group(space, hom, table, piece, orbit):
    """Image of the homology of one piece copy: classes of the Schreier
    generators of the sheet stabilizer, conjugated to the base sheet."""
    root = orbit[0]
    trans = {root: ()}
    frontier = [root]
    while frontier:
        nxt = []
        for h in frontier:
            for gw in piece.gens:
                for w in (gw, winv(gw)):
                    h2 = table.trace(h, w)
                    if h2 not in trans:
                        trans[h2] = wmul(trans[h], w)
                        nxt.append(h2)
        frontier = nxt
    _check(set(trans) == set(orbit), "piece copy orbit transversal")
    tw = table.twords[root]
    gens = []
    for h in orbit:
        for gw in piece.gens:
            u = wmul(trans[h], gw, winv(trans[table.trace(h, gw)]))
            gens.append(hom.class_of(wmul(tw, u, winv(tw))))
    return space.subgroup(gens)


def induced_from_lift(spec, mc, m) -> EquivariantDecomposition:
    """The equivariant decomposition of the cover homology cut out by the
    preimage of a catalog multicurve, deck action included."""
    _require_catalog(spec.g, spec.n, mc)
    cg = covers.lift_cut_graph(spec, mc, m)
    hom = covers.cover_homology(spec, m)
    table = covers._table(spec)
    group = spec.group
    space = hom.space

    vert_index = {}
    for v, (pi, orb) in enumerate(zip(cg.vert_piece, cg.vert_orbit)):
        for h in orb:
            vert_index[(pi, h)] = v
    vgroups = [_schreier_vertex_group(space, hom, table, mc.pieces[pi], orb)
               for pi, orb in zip(cg.vert_piece, cg.vert_orbit)]
    egroups = [space.subgroup([c]) for c in cg.edge_class]
    edge_index = {(cg.edge_curve[e], cg.edge_rep[e]): e
                  for e in range(len(cg.edge_ends))}

    vperms = []
    eperms = []
    for h in group.elements:
        hinv = group.inv(h)
        sheet = [group.index[group.mul(hinv, x)] for x in group.elements]
        vp = [vert_index[(cg.vert_piece[v], sheet[cg.vert_orbit[v][0]])]
              for v in range(len(vgroups))]
        ep = [edge_index[(cg.edge_curve[e],
                          cg.edge_copy_of[cg.edge_curve[e]]
                          [sheet[cg.edge_rep[e]]])]
              for e in range(len(cg.edge_ends))]
        vperms.append(tuple(vp))
        eperms.append(tuple(ep))

    d = EquivariantDecomposition(space, vgroups, egroups, cg.edge_ends,
                                 cg.edge_class, cg.vert_marks, cg.n_K,
                                 group, hom.matrices, vperms, eperms)
    viol = validate(d, conditions=("ii", "frame", "action"))
    if viol:
        raise ValidationError("decomposition",
                              f"lifted decomposition violates {viol}")
    return d


# --------------------------------------------------------------------------
# serialization


def decomposition_to_data(d) -> dict:
    data = {
        "space": {"genus": d.space.g, "modulus": d.space.m},
        "n": d.n,
        "vertices": d.V,
        "marks": [list(mk) for mk in d.marks],
        "edges": [list(e) for e in d.edges],
        "vertex_groups": [[list(v) for v in vg.canonical_gens()]
                          for vg in d.vertex_groups],
        "edge_groups": [[list(v) for v in eg.canonical_gens()]
                        for eg in d.edge_groups],
    }
    if isinstance(d, FramedDecomposition):
        data["frames"] = [list(f) for f in d.frames]
    if isinstance(d, EquivariantDecomposition):
        data["action"] = {
            "vertex": [list(p) for p in d.vperms],
            "edge": [list(p) for p in d.eperms],
            "matrices": [[list(r) for r in M] for M in d.matrices],
        }
    return data


def decomposition_from_data(data) -> GraphDecomposition:
    try:
        space = SympSpace(int(data["space"]["genus"]),
                          int(data["space"]["modulus"]))
        n = int(data.get("n", 0))
        V = int(data["vertices"])
        marks = data.get("marks") or [()] * V
        edges = [tuple(e) for e in data["edges"]]
        vgroups = [list(map(tuple, vg)) for vg in data["vertex_groups"]]
        egroups = [list(map(tuple, eg)) for eg in data["edge_groups"]]
        if len(vgroups) != V:
            raise InvalidInputError("vertex group count mismatch")
        if "action" in data:
            act = data["action"]
            return EquivariantDecomposition(
                space, vgroups, egroups, edges, data["frames"], marks, n,
                None, [tuple(map(tuple, M)) for M in act["matrices"]],
                act["vertex"], act["edge"])
        if "frames" in data:
            return FramedDecomposition(space, vgroups, egroups, edges,
                                       data["frames"], marks, n)
        return GraphDecomposition(space, vgroups, egroups, edges, marks, n)
    except (KeyError, TypeError, IndexError) as ex:
        raise InvalidInputError(f"malformed decomposition data: {ex}")
