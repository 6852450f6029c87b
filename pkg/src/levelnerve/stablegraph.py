"""Stable graphs: dual graphs of surfaces cut along multicurves.

A vertex carries a genus and a tuple of labeled marked points; an edge is an
unordered vertex pair (loops allowed) and corresponds to one curve of the
multicurve.  Stability is the usual hyperbolicity condition on every piece,
2*g_v - 2 + deg(v) + #marks(v) > 0, with deg counting loops twice.

Canonical forms are computed by minimizing the encoding over vertex
relabelings, which is plenty at desk scale; equality of canonical keys is
graph isomorphism (mark labels are preserved, not permuted).
"""

from __future__ import annotations

from itertools import combinations_with_replacement, permutations

from .errors import InvalidInputError

from functools import lru_cache


class StableGraph:
    def __init__(self, vertices, edges):
        """vertices: list of (genus, marks) with marks an iterable of labels;
        edges: list of (u, v) vertex indices, u == v for a loop."""
        self.vertices = [(int(g), tuple(sorted(mk))) for (g, mk) in vertices]
        self.edges = [tuple(sorted((int(u), int(v)))) for (u, v) in edges]
        V = len(self.vertices)
        for (g, mk) in self.vertices:
            if g < 0:
                raise InvalidInputError("vertex genus must be nonnegative")
        for (u, v) in self.edges:
            if not (0 <= u < V and 0 <= v < V):
                raise InvalidInputError("edge endpoint out of range")

    # -- basic invariants

    def n_vertices(self):
        return len(self.vertices)

    def n_edges(self):
        return len(self.edges)

    def marks(self):
        out = []
        for (_, mk) in self.vertices:
            out.extend(mk)
        return tuple(sorted(out))

    def degree(self, v):
        d = 0
        for (a, b) in self.edges:
            if a == v:
                d += 1
            if b == v:
                d += 1
        return d

    def star_size(self, v):
        """Number of edge ends at v (loops contribute two)."""
        return self.degree(v)

    def is_connected(self):
        V = len(self.vertices)
        if V == 0:
            return False
        seen = {0}
        stack = [0]
        adj = [[] for _ in range(V)]
        for (u, v) in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == V

    def b1(self):
        return len(self.edges) - len(self.vertices) + 1

    def genus(self):
        return sum(g for (g, _) in self.vertices) + self.b1()

    def is_stable(self):
        if not self.is_connected():
            return False
        for v, (g, mk) in enumerate(self.vertices):
            if 2 * g - 2 + self.degree(v) + len(mk) <= 0:
                return False
        return True

    def check_signature(self, g, n):
        if not self.is_stable():
            raise InvalidInputError("graph is not stable")
        if self.genus() != g:
            raise InvalidInputError(f"graph genus {self.genus()} != {g}")
        if self.marks() != tuple(range(1, n + 1)):
            raise InvalidInputError("marks do not match the signature")

    # -- canonical form

    def _encode(self, perm):
        """Encoding after renaming vertex i to perm[i]."""
        V = len(self.vertices)
        verts = [None] * V
        for i, (g, mk) in enumerate(self.vertices):
            verts[perm[i]] = (g, mk)
        edges = sorted(tuple(sorted((perm[u], perm[v])))
                       for (u, v) in self.edges)
        return (tuple(verts), tuple(edges))

    def canonical_key(self):
        V = len(self.vertices)
        # refine by invariant class to cut the permutation set down
        inv = [(self.vertices[i], self.degree(i)) for i in range(V)]
        order = sorted(range(V), key=lambda i: (inv[i], i))
        classes = []
        for i in order:
            if classes and inv[classes[-1][-1]] == inv[i]:
                classes[-1].append(i)
            else:
                classes.append([i])
        best = None
        for arrangement in _class_products(classes):
            perm = [0] * V
            for newname, old in enumerate(arrangement):
                perm[old] = newname
            enc = self._encode(perm)
            if best is None or enc < best:
                best = enc
        return best

    def canonical(self):
        verts, edges = self.canonical_key()
        return StableGraph(list(verts), list(edges))

    def is_isomorphic(self, other):
        return self.canonical_key() == other.canonical_key()

    def automorphisms(self):
        """All vertex permutations preserving decorations and the edge
        multiset, as tuples perm with perm[i] = image of i."""
        V = len(self.vertices)
        key = self._encode(tuple(range(V)))
        out = []
        for perm in permutations(range(V)):
            ok = all(self.vertices[i] == self.vertices[perm[i]]
                     for i in range(V))
            if ok and self._encode(perm) == key:
                out.append(perm)
        return out

    # -- surgery

    def contract_edge(self, idx):
        """Undo the curve at edge idx: a loop adds genus to its vertex, a
        plain edge merges its endpoints."""
        if not (0 <= idx < len(self.edges)):
            raise InvalidInputError("no such edge")
        u, v = self.edges[idx]
        rest = [e for i, e in enumerate(self.edges) if i != idx]
        verts = list(self.vertices)
        if u == v:
            g, mk = verts[u]
            verts[u] = (g + 1, mk)
            return StableGraph(verts, rest)
        gu, mku = verts[u]
        gv, mkv = verts[v]
        verts[u] = (gu + gv, tuple(sorted(mku + mkv)))
        del verts[v]

        def ren(x):
            return u if x == v else (x - 1 if x > v else x)

        return StableGraph(verts, [(ren(a), ren(b)) for (a, b) in rest])

    # -- cuts

    def _connected_without(self, removed):
        V = len(self.vertices)
        adj = [[] for _ in range(V)]
        for i, (u, v) in enumerate(self.edges):
            if i in removed:
                continue
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == V

    def is_bridge(self, idx):
        u, v = self.edges[idx]
        if u == v:
            return False
        return not self._connected_without({idx})

    def bridges(self):
        return [i for i in range(len(self.edges)) if self.is_bridge(i)]

    def minimal_two_cuts(self):
        """Unordered pairs of edges that jointly disconnect the graph while
        neither does alone."""
        E = len(self.edges)
        bridges = set(self.bridges())
        out = []
        for i in range(E):
            if i in bridges or self.edges[i][0] == self.edges[i][1]:
                continue
            for j in range(i + 1, E):
                if j in bridges or self.edges[j][0] == self.edges[j][1]:
                    continue
                if not self._connected_without({i, j}):
                    out.append((i, j))
        return out


def _class_products(classes):
    """All concatenations of per-class permutations."""
    if not classes:
        yield []
        return
    head, tail = classes[0], classes[1:]
    for p in permutations(head):
        for rest in _class_products(tail):
            yield list(p) + rest


def _mark_distributions(n, V):
    """All ways to assign labeled marks 1..n to V vertices."""
    out = [[tuple() for _ in range(V)]]
    for mark in range(1, n + 1):
        nxt = []
        for asg in out:
            for v in range(V):
                asg2 = [list(x) for x in asg]
                asg2[v].append(mark)
                nxt.append([tuple(x) for x in asg2])
        out = nxt
    return out


def _genus_splits(total, V):
    if V == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _genus_splits(total - first, V - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _all_stable_graphs(g, n):
    if g < 0 or n < 0:
        raise InvalidInputError("bad signature")
    found = {}
    max_v = max(2 * g - 2 + n, 1)
    for V in range(1, max_v + 1):
        slots = list(combinations_with_replacement(range(V), 2)) \
            + [(v, v) for v in range(V)]
        slots = sorted(set(slots))
        for gsum in range(g + 1):
            for genera in _genus_splits(gsum, V):
                E = g - gsum + V - 1
                if E < 1 or E > 3 * g - 3 + n + 3:
                    continue
                for marks in _mark_distributions(n, V):
                    verts = list(zip(genera, marks))
                    for combo in combinations_with_replacement(slots, E):
                        sg = StableGraph(verts, list(combo))
                        if not sg.is_stable():
                            continue
                        if sg.genus() != g:
                            continue
                        key = sg.canonical_key()
                        if key not in found:
                            found[key] = sg.canonical()
    return tuple(found[k] for k in sorted(found))


def max_rank(g, n):
    """Largest k for which graphs with k+1 edges exist (nerve dimension)."""
    return 3 * g - 4 + n if g >= 1 else n - 4


def enumerate_stable_graphs(g, n, k=None, include_empty=False):
    """Isomorphism classes of stable graphs of signature (g, n), one
    canonical representative each, in deterministic order.

    With k given, only the types with exactly k+1 edges (empty above the
    dimension bound 3g-4+n, resp. n-4 for g = 0).  With k = None, all types
    with at least one edge; include_empty prepends the edgeless smooth type
    when it is stable."""
    if k is not None:
        if k < 0:
            raise InvalidInputError("negative rank")
        if k > max_rank(g, n):
            return ()
        return tuple(t for t in _all_stable_graphs(g, n)
                     if len(t.edges) == k + 1)
    out = _all_stable_graphs(g, n)
    if include_empty:
        sg = StableGraph([(g, tuple(range(1, n + 1)))], [])
        if sg.is_stable():
            out = (sg,) + out
    return out


def edge_cut_classification(t: StableGraph):
    """Per-edge bridge / non-bridge labels plus the minimal 2-edge cuts."""
    bridges = set(t.bridges())
    labels = ["bridge" if i in bridges else "non-bridge"
              for i in range(len(t.edges))]
    return labels, t.minimal_two_cuts()
