"""Realization of quiddity cycles by dissections and quotient dissections.

The pipeline: a skeletal cycle passing the quiddity-level test is realized
directly (punctured disc or annulus) by choosing a compatible subgon size
p_{i,i+1} for every boundary gap and drawing the bridging arcs in the
strip model; cycles where no compatible choice exists get a quotient
witness; non-skeletal cycles are reduced by cutting ears and the witness
is re-assembled by gluing the ears back geometrically.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .ring import sign_of
from .frieze import (QuiddityCycle, FriezeTable, growth_coefficient,
                     realizability_test, is_skeletal_quiddity,
                     _cut_with_info, singleton_runs)
from .surface import (Arc, Dissection, annulus, punctured_disc, polygon,
                      build_dissection, make_quotient, quiddity_of,
                      glue_ear, rotate_dissection)


# ---------------------------------------------------------------------------
# compatible size choices
# ---------------------------------------------------------------------------

def _gap_choices(Q):
    """Sorted candidate sizes for each boundary gap: values common to the
    multisets at both endpoints.  Empty candidate list means the cycle
    already fails the quiddity-level test."""
    n = Q.n
    out = []
    for i in range(n):
        common = set(Q.A[i]) & set(Q.A[(i + 1) % n])
        out.append(sorted(common))
    return out


def _violations(Q, pchoice):
    """0-based indices where the chosen sizes clash: both neighbouring gaps
    of v_i carry the same size p, the multiset at v_i is not a singleton,
    yet p appears there only once."""
    n = Q.n
    bad = []
    for i in range(n):
        p_left = pchoice[(i - 1) % n]
        p_right = pchoice[i]
        if len(Q.A[i]) > 1 and p_left == p_right and Q.A[i].count(p_left) < 2:
            bad.append(i)
    return bad


def all_pchoices(Q):
    """All gap-size assignments (lexicographic order).  pchoice[i] is the
    size shared between v_{i+1} and v_{i+2}, 0-based."""
    choices = _gap_choices(Q)
    if any(not c for c in choices):
        return
    for combo in product(*choices):
        yield combo


def valid_pchoices(Q):
    """Gap-size assignments with no clashing index, lexicographic order."""
    for combo in all_pchoices(Q):
        if not _violations(Q, combo):
            yield combo


# ---------------------------------------------------------------------------
# the geometric construction for a skeletal cycle with a fixed choice
# ---------------------------------------------------------------------------

def _construct(Q, pchoice):
    """Build the dissection realizing a skeletal cycle from a fixed gap-size
    assignment.  Returns ("disc", D) or ("annulus", D)."""
    n = Q.n
    A = [list(a) for a in Q.A]
    anchors = [i for i in range(n) if len(A[i]) > 1]
    if not anchors:
        raise ValueError("constant singleton cycles are polygon friezes; "
                         "no disc or annulus construction applies")
    l = len(anchors)
    gaps = []
    gap_p = []
    for j in range(l):
        a, b = anchors[j], anchors[(j + 1) % l]
        gap = (b - a) % n
        if gap == 0:
            gap = n
        gaps.append(gap)
        gap_p.append(pchoice[a])

    if (all(len(A[a]) == 2 for a in anchors)
            and all(p - 2 == g for p, g in zip(gap_p, gaps))):
        arcs = [Arc("bridge_disc", a + 1) for a in anchors]
        return "disc", build_dissection(punctured_disc(n), arcs)

    # annulus: lay out inner-boundary nodes left to right, one period
    nodes = []            # ("arc", anchor 0-based) or ("fill",)
    merges = set()        # adjacent node index pairs carrying one vertex
    wrap_merge = False
    for j in range(l):
        a = anchors[j]
        p_left = gap_p[(j - 1) % l]
        p_right = gap_p[j]
        R = list(A[a])
        try:
            R.remove(p_left)
            R.remove(p_right)
        except ValueError:
            raise ValueError("gap-size assignment incompatible with the "
                             "multiset at position %d" % (a + 1))
        R.sort()
        nodes.append(("arc", a))
        for r in R:
            nodes.extend([("fill",)] * (r - 3))
            nodes.append(("arc", a))
        # the gap towards the next anchor
        p, g = gap_p[j], gaps[j]
        if p - 2 < g:
            raise ValueError("cycle is not skeletal at position %d" % (a + 1))
        if p - 2 == g:
            if j == l - 1:
                wrap_merge = True
            else:
                merges.add(len(nodes) - 1)   # merge with the next node
        else:
            nodes.extend([("fill",)] * (p - 3 - g))

    ys = []
    y = 0
    for k, _node in enumerate(nodes):
        if k > 0 and (k - 1) not in merges:
            y += 1
        elif k == 0:
            y = 0
        ys.append(y)
    m = ys[-1] if wrap_merge else ys[-1] + 1
    if m < 1:
        raise ValueError("inner boundary degenerates to no vertices; "
                         "the cycle has no annulus realization of this shape")

    arcs = []
    for (kind, *rest), y in zip(nodes, ys):
        if kind != "arc":
            continue
        a = rest[0]
        if y < m:
            arcs.append(Arc("bridge", a + 1, y + 1, 0))
        else:
            arcs.append(Arc("bridge", a + 1, 1, 1))
    return "annulus", build_dissection(annulus(n, m), arcs)


def skeletal_realize(Q):
    """Realize a skeletal cycle passing the quiddity-level test.

    Returns ("disc", D), ("annulus", D), or ("no_valid_choice", None).
    When both disc- and annulus-shaped choices exist the disc wins.
    """
    verdict = realizability_test(Q)
    if not verdict.ok:
        raise ValueError("cycle fails the realizability test (%s)" % verdict.reason)
    if not is_skeletal_quiddity(Q):
        raise ValueError("cycle is not skeletal")
    first = None
    for pchoice in valid_pchoices(Q):
        kind, D = _construct(Q, pchoice)
        if kind == "disc":
            return kind, D
        if first is None:
            first = (kind, D)
    if first is not None:
        return first
    return "no_valid_choice", None


# ---------------------------------------------------------------------------
# quotient realization
# ---------------------------------------------------------------------------

def quotient_realize(Q):
    """Quotient-dissection witness for a skeletal cycle that passes the test
    but admits no clash-free gap-size assignment."""
    best = None
    for pchoice in all_pchoices(Q):
        bad = _violations(Q, pchoice)
        if best is None or len(bad) < len(best[1]):
            best = (pchoice, bad)
    if best is None:
        raise ValueError("cycle fails the realizability test")
    pchoice, bad = best
    if not bad:
        raise ValueError("cycle admits an ordinary realization; "
                         "no quotient needed")

    n = Q.n
    last_err = None
    # the variants differ in which entries are widened by one extra copy of
    # the gap size and in whether the flanking subgons are glued with the
    # full shared-vertex closure or only at the clashing vertex itself
    variants = [("bad", "closure"), ("bad", "at_vertex"),
                ("all", "closure"), ("all", "at_vertex")]
    for widen, glue_mode in variants:
        A_hat = [list(a) for a in Q.A]
        p_common = pchoice[bad[0]]
        if widen == "all":
            glue_at = range(n)
            for i in range(n):
                A_hat[i] = sorted(A_hat[i] + [p_common])
        else:
            glue_at = bad
            for j in bad:
                A_hat[j] = sorted(A_hat[j] + [pchoice[j]])
        Q_hat = QuiddityCycle([tuple(a) for a in A_hat], Q.context)
        try:
            kind, D = _construct(Q_hat, pchoice)
            if kind != "annulus":
                raise ValueError("widened cycle realized by a disc; "
                                 "the quotient construction expects an annulus")
            pairs = []
            for j in glue_at:
                corners = D.corner_choices(j, "outer")
                (_k1, fa, ta) = corners[0]
                (_k2, fb, tb) = corners[-1]
                if D.face(fa).size != D.face(fb).size:
                    continue
                if widen == "all" and D.face(fa).size != p_common:
                    continue
                if fa == fb:
                    # the flanking corners are two lifts of one subgon,
                    # glued to its own translate
                    if glue_mode != "at_vertex" or ta == tb:
                        continue
                    pair = (fa, fb, tb - ta)
                else:
                    pair = (fa, fb, tb - ta) if glue_mode == "at_vertex" \
                        else (min(fa, fb), max(fa, fb))
                if pair not in pairs:
                    pairs.append(pair)
            if not pairs:
                raise ValueError("no identifiable subgon pair")
            QD = make_quotient(D, pairs)
        except ValueError as exc:
            last_err = exc
            continue
        derived = QuiddityCycle(
            [tuple(a) for a in _multisets_of(QD)], Q.context)
        if derived == Q:
            return QD
        last_err = ValueError("quotient witness quiddity mismatch: %r vs %r"
                              % (derived, Q))
    raise AssertionError("quotient construction failed: %s" % last_err)


def _multisets_of(D):
    """Outer quiddity of a dissection as raw multisets."""
    return quiddity_of(D, "outer").A


# ---------------------------------------------------------------------------
# full classification
# ---------------------------------------------------------------------------

@dataclass
class Classification:
    kind: str                      # unrealizable | polygon | punctured_disc
                                   # | annulus | quotient_annulus
    n: Optional[int] = None
    m: Optional[int] = None
    reason: Optional[str] = None
    witness: Optional[object] = None
    cut_trace: list = field(default_factory=list)

    @property
    def realizable(self):
        return self.kind != "unrealizable"


def _constant_singleton(Q):
    if all(len(a) == 1 and a == Q.A[0] for a in Q.A):
        return Q.A[0][0]
    return None


def classify_realizability(Q):
    """Decide how (and whether) a quiddity cycle is realizable, with a
    constructed witness and the ear-cut trace leading to the skeletal core."""
    n0 = Q.n
    result = _classify_rec(Q, depth=0)
    if result.kind == "polygon":
        result.n = n0
    return result


def _classify_rec(Q, depth):
    if depth > Q.n + 64:
        raise AssertionError("cut recursion failed to terminate")
    n = Q.n

    verdict = realizability_test(Q)
    if not verdict.ok:
        return Classification("unrealizable", reason=verdict.reason)

    p_const = _constant_singleton(Q)
    if p_const is not None:
        witness = build_dissection(polygon(p_const), [])
        return Classification("polygon", n=n, witness=witness)

    if not is_skeletal_quiddity(Q):
        start, length, p = next((s, ln, p) for s, ln, p in singleton_runs(Q)
                                if ln >= p - 2)
        # the test passed, so the run has length exactly p-2
        try:
            child, info = _cut_with_info(Q, start, p)
        except ValueError:
            return Classification("unrealizable", reason="cut_underflow")
        sub = _classify_rec(child, depth + 1)
        sub.cut_trace = [(start, p)] + sub.cut_trace
        if not sub.realizable:
            return sub
        W = glue_ear(sub.witness, info["glue_index"], p)
        W = rotate_dissection(W, -(info["child_start_orig"] - 1))
        sub.witness = W
        sub.n = W.base.surface.n
        sub.m = W.base.surface.m if W.base.surface.kind == "annulus" else None
        return sub

    kind, D = skeletal_realize(Q)
    if kind == "no_valid_choice":
        QD = quotient_realize(Q)
        s = QD.base.surface
        return Classification("quotient_annulus", n=s.n, m=s.m, witness=QD)

    # cross-check the disc/annulus split against the first growth coefficient
    s1 = growth_coefficient(FriezeTable(Q), 1)
    two = Q.context.from_int(2)
    is_disc_by_growth = sign_of(s1 - two) == 0
    if is_disc_by_growth != (kind == "disc"):
        raise AssertionError("surface shape disagrees with the growth "
                             "coefficient criterion")
    if kind == "disc":
        return Classification("punctured_disc", n=D.surface.n, witness=D)
    return Classification("annulus", n=D.surface.n, m=D.surface.m, witness=D)


# ---------------------------------------------------------------------------
# distinct witnesses for one cycle
# ---------------------------------------------------------------------------

def witness_nonuniqueness_probe(Q):
    """One witness per clash-free gap-size assignment of the skeletal core
    (empty for polygon, quotient, and unrealizable cycles); each witness is
    re-assembled through the same cut trace."""
    cls = classify_realizability(Q)
    if cls.kind not in ("punctured_disc", "annulus"):
        return []
    core = Q
    infos = []
    for start, p in cls.cut_trace:
        core, info = _cut_with_info(core, start, p)
        infos.append((info, p))
    out = []
    for pchoice in valid_pchoices(core):
        _kind, D = _construct(core, pchoice)
        for info, p in reversed(infos):
            D = glue_ear(D, info["glue_index"], p)
            D = rotate_dissection(D, -(info["child_start_orig"] - 1))
        out.append(D)
    return out
