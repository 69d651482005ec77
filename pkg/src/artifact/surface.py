"""Combinatorial model of dissected polygons, punctured discs and annuli.

Surfaces carry n outer marked points (counterclockwise) and, for annuli,
m inner marked points.  Arcs are stored combinatorially; faces are never
computed on the curved surface itself but in the universal cover: the
annulus and the once-punctured disc unroll to an infinite horizontal strip
whose bottom line carries the lifts v_i^k of the outer vertices and whose
top line carries the lifts w_j^k of the inner vertices (a single point at
+infinity for the disc, reached by asymptotic arcs).  A window of the strip
is a convex polygon whose chords are the lifted arcs, so faces fall out of
a standard non-crossing chord-diagram walk; lifted faces are then
normalized by the period translation to give base faces.

Strip coordinates: the bottom vertex v_i^k sits at global position
x = (i-1) + k*n, the top vertex w_j^k at y = (j-1) + k*m.  A bridging arc
of an annulus carries a shift bit recording whether its lift runs
v_a^0 -> w_b^0 or v_a^0 -> w_b^1 (dissections are considered up to Dehn
twist, and every class has such a representative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

# number of strip periods materialized on each side when deriving faces
_WINDOW = 4


@dataclass(frozen=True)
class Surface:
    kind: str          # "polygon" | "disc" | "annulus"
    n: int
    m: int = 0

    def __post_init__(self):
        if self.kind == "polygon":
            if self.n < 3:
                raise ValueError("polygon needs n >= 3")
        elif self.kind == "disc":
            if self.n < 1:
                raise ValueError("disc needs n >= 1")
        elif self.kind == "annulus":
            if self.n < 1 or self.m < 1:
                raise ValueError("annulus needs n >= 1 and m >= 1")
        else:
            raise ValueError("unknown surface kind %r" % (self.kind,))


def polygon(n):
    return Surface("polygon", n)


def punctured_disc(n):
    return Surface("disc", n)


def annulus(n, m):
    return Surface("annulus", n, m)


@dataclass(frozen=True, order=True)
class Arc:
    """An arc of a dissection.

    kinds: ``peri`` (counterclockwise outer peripheral from v_a to v_b),
    ``bridge`` (annulus, v_a to w_b with a strip shift bit),
    ``bridge_disc`` (v_a to the puncture), ``diag`` (polygon diagonal).
    """
    kind: str
    a: int
    b: int = 0
    shift: int = 0


# vertex labels in the strip: ("b", x) bottom, ("t", y) top, ("inf",) puncture
_INF = ("inf",)


def _vertex_sort_key(v):
    if v[0] == "b":
        return (0, v[1])
    if v[0] == "t":
        return (1, v[1])
    return (2, 0)


def _translate_vertex(v, t, n, m):
    if v[0] == "b":
        return ("b", v[1] + t * n)
    if v[0] == "t":
        return ("t", v[1] + t * m)
    return v


@dataclass(frozen=True)
class Face:
    """A base face (subgon): cyclic vertex list in counterclockwise order,
    normalized so the smallest bottom coordinate lies in [0, n)."""
    id: int
    verts: Tuple[tuple, ...]

    @property
    def size(self):
        return len(self.verts)

    def bottom_coords(self):
        return [v[1] for v in self.verts if v[0] == "b"]

    def top_coords(self):
        return [v[1] for v in self.verts if v[0] == "t"]

    def edges_normalized(self, n, m):
        """Edges projected to the base: each edge translated so that its
        anchor coordinate lies in one fixed period."""
        out = set()
        k = len(self.verts)
        for idx in range(k):
            u, v = self.verts[idx], self.verts[(idx + 1) % k]
            xs = [w[1] for w in (u, v) if w[0] == "b"]
            if xs:
                t = -(min(xs) // n)
            else:
                ys = [w[1] for w in (u, v) if w[0] == "t"]
                t = -(min(ys) // m) if ys else 0
            e = frozenset({_translate_vertex(u, t, n, m),
                           _translate_vertex(v, t, n, m)})
            out.add(e)
        return out


def _rotate_min(seq):
    """Lexicographically smallest rotation of a cyclic tuple."""
    best = None
    for r in range(len(seq)):
        cand = seq[r:] + seq[:r]
        if best is None or cand < best:
            best = cand
    return best


# ---------------------------------------------------------------------------
# chord-diagram face walk
# ---------------------------------------------------------------------------

def _faces_of_chord_diagram(boundary, chords):
    """Faces of a convex polygon with non-crossing chords.

    boundary: vertex labels in counterclockwise cyclic order (interior on
    the left of the forward walk).  Returns a list of faces, each a tuple
    of vertex labels in counterclockwise order, excluding the outer face.
    Raises on crossing or duplicate chords.
    """
    N = len(boundary)
    pos = {v: k for k, v in enumerate(boundary)}
    edge_set = set()
    adj = {v: [] for v in boundary}
    for k, v in enumerate(boundary):
        u = boundary[(k + 1) % N]
        edge_set.add(frozenset({u, v}))
        adj[v].append(u)
        adj[u].append(v)
    spans = []
    for (u, v) in chords:
        key = frozenset({u, v})
        if key in edge_set:
            raise ValueError("duplicate arc or arc parallel to a boundary edge")
        edge_set.add(key)
        pu, pv = sorted((pos[u], pos[v]))
        for (qa, qb) in spans:
            if (pu < qa < pv < qb) or (qa < pu < qb < pv):
                raise ValueError("crossing arcs")
        spans.append((pu, pv))
        adj[u].append(v)
        adj[v].append(u)
    order = {}
    for v, nbrs in adj.items():
        pv = pos[v]
        nbrs.sort(key=lambda u: (pos[u] - pv) % N)
        order[v] = {u: k for k, u in enumerate(nbrs)}
    faces = []
    seen = set()

    def walk(u, v):
        """Trace the face on the left of the directed edge u -> v."""
        start = (u, v)
        cyc = []
        while True:
            cyc.append(u)
            seen.add((u, v))
            nbrs = adj[v]
            w = nbrs[(order[v][u] - 1) % len(nbrs)]
            u, v = v, w
            if (u, v) == start:
                break
        return tuple(cyc)

    outer = walk(boundary[1], boundary[0])
    for v in boundary:
        for u in adj[v]:
            if (v, u) not in seen:
                faces.append(walk(v, u))
    return faces


# ---------------------------------------------------------------------------
# dissections
# ---------------------------------------------------------------------------

class Dissection:
    """A validated dissection with derived base faces.

    ``base_faces`` is a list of Face records with deterministic ids; lifted
    faces are pairs (fid, t) meaning the base face translated t periods to
    the right.  ``outer_corners[i]`` lists the lifts having a corner at
    v_i^0 in counterclockwise angular order around the vertex.
    """

    def __init__(self, surface, arcs):
        self.surface = surface
        arcs = list(arcs)
        if len(set(arcs)) != len(arcs):
            raise ValueError("duplicate arcs")
        self.arcs = tuple(sorted(arcs))
        self._validate_arcs()
        self._compute_faces()

    # -- validation ---------------------------------------------------------

    def _validate_arcs(self):
        s = self.surface
        kinds_ok = {
            "polygon": {"diag"},
            "disc": {"bridge_disc", "peri"},
            "annulus": {"bridge", "peri"},
        }[s.kind]
        for arc in self.arcs:
            if arc.kind not in kinds_ok:
                raise ValueError("arc kind %r invalid on %s" % (arc.kind, s.kind))
            if arc.kind == "diag":
                if not (1 <= arc.a <= s.n and 1 <= arc.b <= s.n):
                    raise ValueError("diagonal endpoint out of range")
                if arc.a == arc.b or (arc.b - arc.a) % s.n in (1, s.n - 1):
                    raise ValueError("diagonal must join non-adjacent vertices")
            elif arc.kind == "peri":
                if not (1 <= arc.a <= s.n and 1 <= arc.b <= s.n):
                    raise ValueError("peripheral endpoint out of range")
                if arc.a == arc.b and s.kind == "polygon":
                    raise ValueError("peripheral arc cannot close on one vertex")
                if (arc.b - arc.a) % s.n == 1:
                    raise ValueError("peripheral arc parallel to a boundary edge")
            elif arc.kind == "bridge":
                if not (1 <= arc.a <= s.n and 1 <= arc.b <= s.m):
                    raise ValueError("bridging endpoint out of range")
                if arc.shift not in (0, 1):
                    raise ValueError("bridging shift must be 0 or 1")
            elif arc.kind == "bridge_disc":
                if not 1 <= arc.a <= s.n:
                    raise ValueError("bridging endpoint out of range")
        if s.kind == "annulus" and not any(a.kind == "bridge" for a in self.arcs):
            raise ValueError("annulus dissection must contain a bridging arc")
        if s.kind == "disc" and not any(a.kind == "bridge_disc" for a in self.arcs):
            raise ValueError("punctured-disc dissection must contain a bridging arc")

    # -- strip materialization ---------------------------------------------

    def _chord_lifts(self, x_lo, x_hi, y_lo, y_hi):
        """All chords (vertex-label pairs) whose lifts fit in the window."""
        s = self.surface
        n, m = s.n, s.m
        chords = []
        for arc in self.arcs:
            if arc.kind == "diag":
                chords.append((("b", arc.a - 1), ("b", arc.b - 1)))
            elif arc.kind == "peri":
                xa = arc.a - 1
                xb = arc.b - 1 if arc.b > arc.a else arc.b - 1 + n
                k = (x_lo - xa) // n
                while xa + k * n <= x_hi:
                    if xa + k * n >= x_lo and xb + k * n <= x_hi:
                        chords.append((("b", xa + k * n), ("b", xb + k * n)))
                    k += 1
            elif arc.kind == "bridge_disc":
                xa = arc.a - 1
                k = (x_lo - xa) // n
                while xa + k * n <= x_hi:
                    if xa + k * n >= x_lo:
                        chords.append((("b", xa + k * n), _INF))
                    k += 1
            elif arc.kind == "bridge":
                xa = arc.a - 1
                yb = (arc.b - 1) + arc.shift * m
                k = (x_lo - xa) // n
                while xa + k * n <= x_hi:
                    if (xa + k * n >= x_lo and y_lo <= yb + k * m <= y_hi):
                        chords.append((("b", xa + k * n), ("t", yb + k * m)))
                    k += 1
        return chords

    def _compute_faces(self):
        s = self.surface
        n, m = s.n, s.m
        if s.kind == "polygon":
            boundary = [("b", x) for x in range(n)]
            chords = self._chord_lifts(0, n - 1, 0, 0)
            raw = _faces_of_chord_diagram(boundary, chords)
            complete = raw
            artificial = set()
        else:
            B = _WINDOW
            x_lo, x_hi = -B * n, (B + 1) * n - 1
            if s.kind == "annulus":
                # top range strictly wider than any chord can reach, so the
                # artificial closure edges never coincide with a chord
                y_lo, y_hi = -(B + 1) * m, (B + 3) * m - 1
                top = [("t", y) for y in range(y_hi, y_lo - 1, -1)]
            else:
                y_lo = y_hi = 0
                top = [_INF]
            bottom = [("b", x) for x in range(x_lo, x_hi + 1)]
            boundary = bottom + top
            artificial = {frozenset({bottom[-1], top[0]}),
                          frozenset({top[-1], bottom[0]})}
            # chords touching the extreme bottom columns are dropped; the
            # truncated regions this creates reach the artificial edges and
            # are filtered below
            chords = self._chord_lifts(x_lo + 1, x_hi - 1, y_lo, y_hi)
            raw = _faces_of_chord_diagram(boundary, chords)
            complete = []
            for f in raw:
                k = len(f)
                if any(frozenset({f[i], f[(i + 1) % k]}) in artificial
                       for i in range(k)):
                    continue
                complete.append(f)
        # normalize lifted faces to base faces
        norm = {}
        for f in complete:
            xs = [v[1] for v in f if v[0] == "b"]
            if not xs:
                raise ValueError("face with no outer-boundary vertex")
            t = min(xs) // n
            nf = tuple(_translate_vertex(v, -t, n, m) for v in f)
            norm[_rotate_min(nf)] = nf
        keys = sorted(norm, key=lambda vs: (len(vs), [_vertex_sort_key(v) + v for v in vs]))
        self.base_faces = [Face(i, norm[k]) for i, k in enumerate(keys)]
        for f in self.base_faces:
            if f.size < 3:
                raise ValueError("dissection produces a face of size < 3")
        self._index_corners()

    def _index_corners(self):
        s = self.surface
        n, m = s.n, s.m
        self.outer_corners = {i: [] for i in range(1, n + 1)}
        self.inner_corners = {j: [] for j in range(1, m + 1)} if s.kind == "annulus" else {}
        for f in self.base_faces:
            k = f.size
            for idx, v in enumerate(f.verts):
                prev = f.verts[(idx - 1) % k]
                nxt = f.verts[(idx + 1) % k]
                if v[0] == "b":
                    i = v[1] % n + 1
                    t = (i - 1 - v[1]) // n
                    self.outer_corners[i].append(
                        (f.id, t, _corner_angle_key_bottom(v, prev, nxt, t, n, m)))
                elif v[0] == "t" and s.kind == "annulus":
                    j = v[1] % m + 1
                    t = (j - 1 - v[1]) // m
                    self.inner_corners[j].append(
                        (f.id, t, _corner_angle_key_top(v, prev, nxt, t, n, m)))
        for table, degree in ((self.outer_corners, self._outer_degree),
                              (self.inner_corners, self._inner_degree)):
            for i in table:
                table[i].sort(key=lambda c: c[2])
                table[i] = [(fid, t) for fid, t, _k in table[i]]
                if len(table[i]) != degree(i) + 1:
                    raise ValueError(
                        "region around a vertex is not tiled by polygons "
                        "(vertex %d: %d corners, degree %d)"
                        % (i, len(table[i]), degree(i)))

    def _outer_degree(self, i):
        d = 0
        for arc in self.arcs:
            if arc.kind in ("diag", "peri"):
                d += (arc.a == i) + (arc.b == i)
            elif arc.kind in ("bridge", "bridge_disc"):
                d += (arc.a == i)
        return d

    def _inner_degree(self, j):
        return sum(1 for arc in self.arcs if arc.kind == "bridge" and arc.b == j)

    # -- lifted-face helpers -------------------------------------------------

    def face(self, fid):
        return self.base_faces[fid]

    def class_key(self, fid, t):
        """Identification class of a lifted face; trivial for plain
        dissections (every lift is its own class)."""
        return (fid, t)

    def corner_choices(self, g, boundary="outer"):
        """Distinct identification classes incident at the cover vertex with
        global coordinate g (bottom line for outer, top for inner), in
        counterclockwise corner order.  Returns [(class_key, fid, t)]."""
        s = self.surface
        if boundary == "outer":
            period, table = s.n, self.outer_corners
        else:
            period, table = s.m, self.inner_corners
        i = g % period + 1
        k = (g - (i - 1)) // period
        out = []
        seen = set()
        for fid, t in table[i]:
            key = self.class_key(fid, t + k)
            if key in seen:
                continue
            seen.add(key)
            out.append((key, fid, t + k))
        return out

    def is_quotient(self):
        return False

    @property
    def base(self):
        return self

    def __repr__(self):
        return "Dissection(%s)" % (format_dissection(self).replace("\n", "; "),)


def _corner_angle_key_bottom(v, prev, nxt, t, n, m):
    """Sort key placing corners at a bottom vertex in counterclockwise
    angular order (right boundary direction first).  Coordinates are
    translated by t so faces living in other periods compare correctly."""
    def direction(u):
        if u[0] == "b":
            dx = (u[1] + t * n) - (v[1] + t * n)
            return (0, dx) if dx > 0 else (3, u[1] + t * n)
        if u == _INF:
            return (1, 0)
        return (2, -(u[1] + t * m))
    return min(direction(prev), direction(nxt))


def _corner_angle_key_top(v, prev, nxt, t, n, m):
    """Deterministic corner order around a top vertex (leftward first).
    Coordinates are translated by t so faces living in other periods
    compare correctly."""
    def direction(u):
        if u[0] == "t":
            dy = u[1] - v[1]
            return (0, -dy) if dy < 0 else (3, -(u[1] + t * m))
        return (2, u[1] + t * n)
    return min(direction(prev), direction(nxt))


def build_dissection(surface, arcs):
    """Validate and build a dissection, deriving its faces in the strip."""
    return Dissection(surface, arcs)


# ---------------------------------------------------------------------------
# quotient dissections
# ---------------------------------------------------------------------------

class _ClassMap:
    """Union-find over base face ids with translation offsets.

    The relation (f1, t) ~ (f2, t + delta) holds for all t; chains of
    identifications may force a class to be invariant under a nonzero
    period translation, recorded as a gcd period per root.
    """

    def __init__(self, nfaces):
        self.parent = list(range(nfaces))
        self.pot = [0] * nfaces     # (f, t) ~ (parent[f], t + pot[f])
        self.period = [0] * nfaces  # gcd of forced self-translations, 0 = none

    def find(self, f):
        if self.parent[f] == f:
            return f, 0
        root, p = self.find(self.parent[f])
        self.parent[f] = root
        self.pot[f] += p
        return root, self.pot[f]

    def union(self, f1, f2, delta):
        """Impose (f1, t) ~ (f2, t + delta) for all t."""
        r1, p1 = self.find(f1)
        r2, p2 = self.find(f2)
        d = delta + p2 - p1  # (r1, t) ~ (r2, t + d)
        if r1 == r2:
            if d:
                self.period[r1] = math.gcd(self.period[r1], abs(d))
            return
        self.parent[r2] = r1
        self.pot[r2] = -d
        self.period[r1] = math.gcd(self.period[r1], self.period[r2])

    def key(self, f, t):
        r, p = self.find(f)
        s = t + p
        g = self.period[r]
        return (r, s % g if g else s)


class QuotientDissection:
    """An annulus dissection with same-size subgons identified.

    Identified lifts are paired copy-by-copy in the cover: whenever two
    identified subgons share an outer vertex v_i, the two lifts incident to
    each v_i^k are identified, and the relation is closed under translation.
    """

    def __init__(self, base, pairs):
        if base.surface.kind != "annulus":
            raise ValueError("quotient dissections live on annuli")
        self.base_dissection = base
        self.surface = base.surface
        self.arcs = base.arcs
        self.base_faces = base.base_faces
        self.outer_corners = base.outer_corners
        self.inner_corners = base.inner_corners
        # a pair (fa, fb) closes over every shared outer vertex; a triple
        # (fa, fb, delta) glues only at the stated translation offset
        self.trace = tuple(tuple(int(x) for x in p) for p in pairs)
        self._classes = _ClassMap(len(base.base_faces))
        for p in self.trace:
            self._merge(p[0], p[1], p[2] if len(p) > 2 else None)

    def _merge(self, fa, fb, delta=None):
        base = self.base_dissection
        n, m = self.surface.n, self.surface.m
        if fa == fb and not delta:
            # gluing a subgon to its own translate needs an explicit offset
            raise ValueError("cannot identify a subgon with itself")
        A, B = base.face(fa), base.face(fb)
        if A.size != B.size:
            raise ValueError("identified subgons must have equal size")
        for f in (A, B):
            if not f.top_coords() or not f.bottom_coords():
                raise ValueError(
                    "cannot identify a subgon with all vertices on one boundary")
        relations = []
        for xa in A.bottom_coords():
            for xb in B.bottom_coords():
                if (xa - xb) % n == 0 and (fa != fb or xa != xb):
                    # lifts of A and B meeting at the same cover vertex:
                    # (A, t) and (B, t + (xa - xb)/n)
                    relations.append((xa - xb) // n)
        if not relations:
            raise ValueError("identified subgons must share an outer vertex")
        if delta is not None:
            if delta not in relations:
                raise ValueError("glue offset %d has no shared outer vertex"
                                 % delta)
            relations = [delta]
        def cover_edges(face, t):
            k = len(face.verts)
            return {frozenset((_translate_vertex(face.verts[i], t, n, m),
                               _translate_vertex(face.verts[(i + 1) % k],
                                                 t, n, m)))
                    for i in range(k)}

        for d in relations:
            # the incident lift pair (A, 0) ~ (B, d) must not share an edge
            if cover_edges(A, 0) & cover_edges(B, d):
                raise ValueError("cannot identify subgons sharing an edge")
            self._classes.union(fa, fb, d)

    def face(self, fid):
        return self.base_faces[fid]

    def class_key(self, fid, t):
        return self._classes.key(fid, t)

    def corner_choices(self, g, boundary="outer"):
        return Dissection.corner_choices(self, g, boundary)

    def is_quotient(self):
        return True

    @property
    def base(self):
        return self.base_dissection

    def classes(self):
        """Partition of base face ids by identification class (ignoring
        translation offsets)."""
        groups = {}
        for f in range(len(self.base_faces)):
            r, _p = self._classes.find(f)
            groups.setdefault(r, []).append(f)
        return sorted(groups.values())

    def __repr__(self):
        return "QuotientDissection(glue=%s)" % (list(self.trace),)


def make_quotient(D, pairs):
    """Identify the listed face-id pairs, validating each against the
    quotient-dissection restrictions."""
    return QuotientDissection(D.base if D.is_quotient() else D, pairs)


# ---------------------------------------------------------------------------
# quiddity derivation and cover windows
# ---------------------------------------------------------------------------

def quiddity_of(D, boundary="outer"):
    """Derived quiddity cycle: A_i is the multiset of sizes of the distinct
    identification classes with a corner at v_i^0 (the small-half-circle
    count; for plain dissections every corner is its own class, so
    self-folded subgons contribute once per corner)."""
    from .frieze import QuiddityCycle
    s = D.surface
    if boundary == "inner":
        if s.kind != "annulus":
            raise ValueError("inner boundary only exists on annuli")
        # read counterclockwise with respect to the inner boundary, which
        # reverses the strip direction
        A = []
        for j in range(s.m, 0, -1):
            choices = D.corner_choices(j - 1, "inner")
            A.append(tuple(sorted(D.face(fid).size for _key, fid, _t in choices)))
        return QuiddityCycle(A)
    A = []
    for i in range(1, s.n + 1):
        choices = D.corner_choices(i - 1, "outer")
        A.append(tuple(sorted(D.face(fid).size for _key, fid, _t in choices)))
    return QuiddityCycle(A)


@dataclass
class CoverWindow:
    """A materialized range of strip copies of a dissection (or quotient)."""
    dissection: object
    k_lo: int
    k_hi: int
    lifts: tuple  # (fid, t) pairs with a vertex in the window

    def face(self, fid):
        return self.dissection.face(fid)

    def corner_choices(self, g, boundary="outer"):
        return self.dissection.corner_choices(g, boundary)

    def covers(self, g):
        n = self.dissection.surface.n
        return self.k_lo * n <= g < (self.k_hi + 1) * n


def cover_window(D, k_lo, k_hi):
    """Materialize the lifted faces whose vertices meet copies
    k_lo..k_hi of the strip."""
    if k_lo > k_hi:
        raise ValueError("k_lo must be <= k_hi")
    s = D.surface
    n = s.n
    lifts = []
    for f in D.base_faces:
        xs = f.bottom_coords()
        lo, hi = min(xs), max(xs)
        t = k_lo - hi // n - 1
        while lo + t * n < (k_hi + 1) * n:
            if hi + t * n >= k_lo * n:
                lifts.append((f.id, t))
            t += 1
    return CoverWindow(D, k_lo, k_hi, tuple(sorted(lifts)))


# ---------------------------------------------------------------------------
# powers, ears, rotation
# ---------------------------------------------------------------------------

def dissection_power(D, k):
    """The k-th power: the same strip pattern read over k periods, a
    dissection of A_{kn,km} or S_{kn}."""
    if D.is_quotient():
        raise ValueError("powers are defined for plain dissections")
    s = D.surface
    if s.kind == "polygon":
        raise ValueError("powers are defined on annuli and punctured discs")
    if k < 1:
        raise ValueError("k must be >= 1")
    n, m = s.n, s.m
    arcs = []
    for arc in D.arcs:
        for c in range(k):
            if arc.kind == "bridge":
                y = (arc.b - 1) + (arc.shift + c) * m
                arcs.append(Arc("bridge", arc.a + c * n,
                                y % (k * m) + 1, y // (k * m)))
            elif arc.kind == "bridge_disc":
                arcs.append(Arc("bridge_disc", arc.a + c * n))
            elif arc.kind == "peri":
                xa = (arc.a - 1) + c * n
                xb = (arc.b - 1 if arc.b > arc.a else arc.b - 1 + n) + c * n
                arcs.append(Arc("peri", xa % (k * n) + 1, xb % (k * n) + 1))
    new_surface = annulus(k * n, k * m) if s.kind == "annulus" else punctured_disc(k * n)
    return Dissection(new_surface, arcs)


def glue_ear(D, g, p):
    """Attach a p-ear between outer vertices g and g+1: insert p-2 new
    outer vertices there and a peripheral arc enclosing them."""
    if D.is_quotient():
        return QuotientDissection(glue_ear(D.base, g, p), _requote(D, g, p))
    s = D.surface
    n = s.n
    if not 1 <= g <= n:
        raise ValueError("glue position out of range")
    n2 = n + (p - 2)

    def remap(a):
        return a if a <= g else a + (p - 2)

    arcs = []
    for arc in D.arcs:
        if arc.kind == "diag":
            arcs.append(Arc("diag", remap(arc.a), remap(arc.b)))
        elif arc.kind == "peri":
            arcs.append(Arc("peri", remap(arc.a), remap(arc.b)))
        elif arc.kind == "bridge":
            arcs.append(Arc("bridge", remap(arc.a), arc.b, arc.shift))
        elif arc.kind == "bridge_disc":
            arcs.append(Arc("bridge_disc", remap(arc.a)))
    ear_end = (g + p - 2) % n2 + 1
    kind = "diag" if s.kind == "polygon" else "peri"
    arcs.append(Arc(kind, g, ear_end))
    if s.kind == "polygon":
        new_surface = polygon(n2)
    elif s.kind == "disc":
        new_surface = punctured_disc(n2)
    else:
        new_surface = annulus(n2, s.m)
    return Dissection(new_surface, arcs)


def _remap_trace(trace, map_face):
    """Transport glue relations through a face relabelling.  map_face
    returns (new id, period shift of the canonical representative); a
    single-offset relation (a, b, d) identifies lift (a, 0) with lift
    (b, d), so the offset becomes d + t_b - t_a."""
    out = []
    for rel in trace:
        if len(rel) == 2:
            (fa, _ta), (fb, _tb) = map_face(rel[0]), map_face(rel[1])
            out.append((fa, fb))
        else:
            a, b, d = rel
            (fa, ta), (fb, tb) = map_face(a), map_face(b)
            out.append((fa, fb, d + tb - ta))
    return out


def _requote(D, g, p):
    """Recompute quotient glue pairs after an ear attachment: map each
    identified pair of the old base to the corresponding faces of the new
    base by matching normalized vertex cycles."""
    old = D.base
    new = glue_ear(old, g, p)
    n, m = old.surface.n, old.surface.m
    n2 = new.surface.n

    def remap_vertex(v):
        if v[0] != "b":
            return v
        x = v[1]
        k, i = divmod(x, n)
        i2 = i if i < g else i + (p - 2)
        return ("b", i2 + k * n2)

    lookup = {}
    for f in new.base_faces:
        lookup[_rotate_min(f.verts)] = f.id

    def map_face(fid):
        f = old.face(fid)
        verts = tuple(remap_vertex(v) for v in f.verts)
        xs = [v[1] for v in verts if v[0] == "b"]
        t = min(xs) // n2
        verts = tuple(_translate_vertex(v, -t, n2, m) for v in verts)
        key = _rotate_min(verts)
        if key not in lookup:
            raise AssertionError("face lost while attaching an ear")
        return lookup[key], t

    return _remap_trace(D.trace, map_face)


def rotate_dissection(D, r):
    """Relabel outer vertices so that old v_{1+r} becomes new v_1 (the
    cycle read from position 1 starts r steps later); inner labels of an
    annulus are re-anchored so all bridging shifts stay in {0,1}."""
    if D.is_quotient():
        base = D.base
        newbase = rotate_dissection(base, r)
        n, m = base.surface.n, base.surface.m
        # map old faces to new by transported vertex cycles
        shift_t = _rotation_inner_offset(base, r)
        lookup = {_rotate_min(f.verts): f.id for f in newbase.base_faces}

        def map_face(fid):
            f = base.face(fid)
            verts = []
            for v in f.verts:
                if v[0] == "b":
                    verts.append(("b", v[1] - r))
                elif v[0] == "t":
                    verts.append(("t", v[1] + shift_t))
                else:
                    verts.append(v)
            xs = [v[1] for v in verts if v[0] == "b"]
            t = min(xs) // n
            verts = tuple(_translate_vertex(v, -t, n, m) for v in verts)
            return lookup[_rotate_min(verts)], t

        return QuotientDissection(newbase, _remap_trace(D.trace, map_face))
    s = D.surface
    n = s.n
    r %= n
    if r == 0:
        return D
    if s.kind in ("polygon", "disc"):
        arcs = []
        for arc in D.arcs:
            if arc.kind == "bridge_disc":
                arcs.append(Arc("bridge_disc", (arc.a - 1 - r) % n + 1))
            else:
                arcs.append(Arc(arc.kind, (arc.a - 1 - r) % n + 1,
                                (arc.b - 1 - r) % n + 1))
        return Dissection(s, arcs)
    m = s.m
    t0 = _rotation_inner_offset(D, r)
    arcs = []
    for arc in D.arcs:
        if arc.kind == "peri":
            arcs.append(Arc("peri", (arc.a - 1 - r) % n + 1,
                            (arc.b - 1 - r) % n + 1))
        else:
            x = (arc.a - 1) - r
            y = (arc.b - 1) + arc.shift * m + t0
            k = x // n
            x -= k * n
            y -= k * m
            if not 0 <= y < 2 * m:
                raise AssertionError("rotation failed to renormalize shifts")
            arcs.append(Arc("bridge", x + 1, y % m + 1, y // m))
    return Dissection(s, arcs)


def _rotation_inner_offset(D, r):
    """Inner relabeling offset making all bridging shifts land in {0,1}
    after rotating the outer labels by r."""
    n, m = D.surface.n, D.surface.m
    ys = []
    for arc in D.arcs:
        if arc.kind == "bridge":
            x = (arc.a - 1) - r
            y = (arc.b - 1) + arc.shift * m
            k = x // n
            ys.append(y - k * m)
    return -min(ys) if ys else 0


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def format_dissection(D):
    """Serialize in the line format: header, one arc per line, glue lines
    for quotients."""
    lines = []
    s = D.surface
    if s.kind == "annulus":
        lines.append("annulus %d %d" % (s.n, s.m))
    elif s.kind == "disc":
        lines.append("disc %d" % s.n)
    else:
        lines.append("polygon %d" % s.n)
    for arc in D.arcs:
        if arc.kind == "bridge":
            lines.append("bridge %d %d %d" % (arc.a, arc.b, arc.shift))
        elif arc.kind == "bridge_disc":
            lines.append("bridge-disc %d" % arc.a)
        elif arc.kind == "peri":
            lines.append("peri %d %d" % (arc.a, arc.b))
        else:
            lines.append("diag %d %d" % (arc.a, arc.b))
    if D.is_quotient():
        for p in D.trace:
            lines.append("glue " + " ".join(str(x) for x in p))
    return "\n".join(lines)


def parse_dissection_text(text):
    """Parse the dissection text format; returns a Dissection or
    QuotientDissection."""
    surface = None
    arcs = []
    glues = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head, args = parts[0], parts[1:]
        try:
            nums = [int(x) for x in args]
        except ValueError:
            raise ValueError("line %d: non-integer argument" % lineno)
        if head in ("annulus", "disc", "polygon"):
            if surface is not None:
                raise ValueError("line %d: duplicate header" % lineno)
            if head == "annulus":
                if len(nums) != 2:
                    raise ValueError("line %d: annulus takes n and m" % lineno)
                surface = annulus(*nums)
            else:
                if len(nums) != 1:
                    raise ValueError("line %d: %s takes n" % (lineno, head))
                surface = punctured_disc(nums[0]) if head == "disc" else polygon(nums[0])
            continue
        if surface is None:
            raise ValueError("line %d: arc before surface header" % lineno)
        if head == "bridge":
            if len(nums) != 3:
                raise ValueError("line %d: bridge takes outer inner shift" % lineno)
            arcs.append(Arc("bridge", nums[0], nums[1], nums[2]))
        elif head == "bridge-disc":
            if len(nums) != 1:
                raise ValueError("line %d: bridge-disc takes outer" % lineno)
            arcs.append(Arc("bridge_disc", nums[0]))
        elif head == "peri":
            if len(nums) != 2:
                raise ValueError("line %d: peri takes two outer vertices" % lineno)
            arcs.append(Arc("peri", nums[0], nums[1]))
        elif head == "diag":
            if len(nums) != 2:
                raise ValueError("line %d: diag takes two vertices" % lineno)
            arcs.append(Arc("diag", nums[0], nums[1]))
        elif head == "glue":
            if len(nums) not in (2, 3):
                raise ValueError("line %d: glue takes two face ids and an "
                                 "optional offset" % lineno)
            glues.append(tuple(nums))
        else:
            raise ValueError("line %d: unknown directive %r" % (lineno, head))
    if surface is None:
        raise ValueError("missing surface header")
    D = Dissection(surface, arcs)
    if glues:
        return QuotientDissection(D, glues)
    return D
