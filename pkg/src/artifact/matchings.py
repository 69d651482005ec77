"""Matchings between boundary vertices and the three weightings.

A matching contributing to the entry m_{i,j} picks one incident subgon
for every cover vertex strictly between positions i and j on the outer
boundary (global coordinates; vertex v_a of the surface sits at
coordinate a-1 plus multiples of the period).  Summing the local weight
recovers the frieze entry; the traditional weight is its nonnegative
sibling; the annulus weight of full-period matchings recovers growth
coefficients.
"""

from dataclasses import dataclass
from math import prod

from .ring import chebyshev_u
from .frieze import FriezeTable, QuiddityCycle, growth_coefficient
from .surface import CoverWindow, dissection_power, quiddity_of

DEFAULT_BUDGET = 10 ** 7


class BudgetExceeded(ValueError):
    pass


def _source(W):
    """The dissection (or quotient) behind a matching source."""
    return W.dissection if isinstance(W, CoverWindow) else W


@dataclass(frozen=True)
class Matching:
    i: int
    j: int
    choice: tuple  # (class_key, fid, t) per intermediate coordinate

    def __len__(self):
        return len(self.choice)


def _choice_lists(W, i, j):
    D = _source(W)
    n = D.base.surface.n
    is_polygon = D.base.surface.kind == "polygon"
    lists = []
    for g in range(i, j - 1):
        if isinstance(W, CoverWindow) and not W.covers(g):
            raise ValueError("cover window does not reach coordinate %d" % g)
        gg = g % n if is_polygon else g
        lists.append(W.corner_choices(gg, "outer"))
    return lists


def enumerate_matchings(W, i, j, budget=DEFAULT_BUDGET):
    """All matchings contributing to m_{i,j}, in counterclockwise corner
    order per vertex.  m_{i,i} has none; m_{i,i+1} has exactly the empty
    matching.  W is a dissection, quotient dissection, or cover window."""
    if j < i:
        raise ValueError("need j >= i")
    if j == i:
        return
    lists = _choice_lists(W, i, j)
    if prod(len(c) for c in lists) > budget:
        raise BudgetExceeded("more than %d matchings" % budget)
    stack = [()]
    for options in lists:
        stack = [partial + (opt,) for partial in stack for opt in options]
    for combo in stack:
        yield Matching(i, j, combo)


def _context_of(D):
    return quiddity_of(D.base if D.is_quotient() else D, "outer").context


def weigh_matching(w, mode, D, ctx=None):
    """Weight of one matching: local (run rule, class equality),
    traditional (per lifted face), or annulus (per base face,
    full-period matchings only)."""
    if ctx is None:
        ctx = _context_of(D)
    src = _source(D)
    base = src.base
    if mode == "local":
        total = ctx.one()
        k = 0
        for idx, (key, fid, _t) in enumerate(w.choice):
            k += 1
            nxt = w.choice[idx + 1][0] if idx + 1 < len(w.choice) else None
            if nxt != key:
                total = total * chebyshev_u(ctx, k, ctx.lam(base.face(fid).size))
                k = 0
        return total
    if src.is_quotient():
        raise ValueError("mode %r is defined only for ordinary dissections"
                         % mode)
    if mode == "traditional":
        counts = {}
        for key, fid, _t in w.choice:
            counts[key] = (counts.get(key, (0, fid))[0] + 1, fid)
        total = ctx.one()
        for k, fid in counts.values():
            p = base.face(fid).size
            if k > p - 2:
                return ctx.zero()
            total = total * chebyshev_u(ctx, k, ctx.lam(p))
        return total
    if mode == "annulus":
        n = base.surface.n
        if len(w.choice) != n:
            raise ValueError("annulus weighting needs a full-period matching")
        counts = {}
        for _key, fid, _t in w.choice:
            counts[fid] = counts.get(fid, 0) + 1
        total = ctx.one()
        for fid, k in counts.items():
            p = base.face(fid).size
            if k > p - 2:
                return ctx.zero()
            total = total * chebyshev_u(ctx, k, ctx.lam(p))
        return total
    raise ValueError("unknown weighting mode %r" % mode)


def matching_sum(W, i, j, mode="local", budget=DEFAULT_BUDGET, ctx=None):
    """Exact ring sum of weights over all matchings contributing to
    m_{i,j}.  Traditional and annulus modes prune branches whose running
    face multiplicities already force weight zero."""
    src = _source(W)
    if ctx is None:
        ctx = _context_of(src)
    if j < i:
        raise ValueError("need j >= i")
    if j == i:
        return ctx.zero()
    if mode in ("traditional", "annulus") and src.is_quotient():
        raise ValueError("mode %r is defined only for ordinary dissections"
                         % mode)
    if mode == "annulus" and j - i - 1 != src.base.surface.n:
        raise ValueError("annulus weighting needs a full-period matching")
    lists = _choice_lists(W, i, j)
    if prod(len(c) for c in lists) > budget:
        raise BudgetExceeded("more than %d matchings" % budget)
    base = src.base
    sizes = {f.id: f.size for f in base.base_faces}

    if mode == "local":
        total = ctx.zero()
        for w in enumerate_matchings(W, i, j, budget=budget):
            total = total + weigh_matching(w, "local", W, ctx)
        return total

    # traditional / annulus: DFS with multiplicity counters
    total = ctx.zero()
    per_lift = mode == "traditional"

    def rec(idx, counts, acc_keys):
        nonlocal total
        if idx == len(lists):
            val = ctx.one()
            for k2, fid in counts.values():
                val = val * chebyshev_u(ctx, k2, ctx.lam(sizes[fid]))
            total = total + val
            return
        for key, fid, t in lists[idx]:
            ck = key if per_lift else fid
            k2, _f = counts.get(ck, (0, fid))
            if k2 + 1 > sizes[fid] - 2:
                continue
            counts[ck] = (k2 + 1, fid)
            rec(idx + 1, counts, acc_keys)
            if k2 == 0:
                del counts[ck]
            else:
                counts[ck] = (k2, fid)

    rec(0, {}, None)
    return total


def growth_via_annulus_weight(D, k=1, budget=DEFAULT_BUDGET):
    """Growth coefficient s_k as the annulus-weight sum over full-period
    matchings of the k-th power dissection; cross-checked against the
    frieze recurrence."""
    if D.is_quotient():
        raise ValueError("annulus weighting is not defined on quotients")
    Dk = dissection_power(D, k) if k > 1 else D
    nk = Dk.surface.n
    Q = quiddity_of(D, "outer")
    ctx = Q.context
    total = matching_sum(Dk, 0, nk + 1, mode="annulus", budget=budget, ctx=ctx)
    expected = growth_coefficient(FriezeTable(Q), k)
    if total != expected:
        raise AssertionError("annulus-weight sum disagrees with the frieze "
                             "growth coefficient")
    return total


def inner_outer_consistency(D):
    """Compare the principal growth coefficients computed from the outer
    and inner quiddity cycles of an annulus dissection.  Returns
    (equal, s1_outer, s1_inner)."""
    base = D.base
    if base.surface.kind != "annulus":
        raise ValueError("inner boundary requires an annulus")
    Q_out = quiddity_of(D, "outer")
    Q_in_raw = quiddity_of(D, "inner")
    ctx = Q_out.context
    # every subgon meets the outer boundary, so the outer ring covers the
    # inner sizes and both coefficients live in the same ring
    if any(ctx.L % p for a in Q_in_raw.A for p in a):
        raise AssertionError("inner subgon size outside the outer ring")
    Q_in = QuiddityCycle(Q_in_raw.A, ctx)
    s_out = growth_coefficient(FriezeTable(Q_out), 1)
    s_in = growth_coefficient(FriezeTable(Q_in), 1)
    return s_out == s_in, s_out, s_in
