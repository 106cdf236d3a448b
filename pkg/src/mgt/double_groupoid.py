"""The double groupoid of a matched pair.

A square is the pair (m, n): left edge m, bottom edge n, top edge ^m n and
right edge m^n.  Direction 1 stacks squares vertically (edges in M add up
on the left), direction 2 places them side by side (edges in N add up along
the bottom).
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

import numpy as np

from .errors import FillerError, NotComposableError
from .matched_pair import MatchedPairData
from .report import DEFAULT_CAP, VerificationReport, compare, stopwatch, tally

EDGE_KINDS = (("left", "bottom"), ("left", "top"), ("bottom", "right"), ("top", "right"))


@dataclass(frozen=True, order=True)
class Square:
    m: int
    n: int

    def top(self, mp: MatchedPairData) -> int:
        return int(mp.left_act[self.m, self.n])

    def right(self, mp: MatchedPairData) -> int:
        return int(mp.right_act[self.m, self.n])

    def edges(self, mp: MatchedPairData) -> dict[str, int]:
        return {"left": self.m, "bottom": self.n, "top": self.top(mp), "right": self.right(mp)}


def compose_h(mp: MatchedPairData, s1: Square, s2: Square) -> Square:
    """s1 ∘2 s2: s2 sits to the right of s1."""
    if s2.m != s1.right(mp):
        raise NotComposableError(f"right edge of {s1} is {s1.right(mp)}, left edge of {s2} is {s2.m}")
    return Square(s1.m, int(mp.Ntab.mul[s1.n, s2.n]))


def compose_v(mp: MatchedPairData, s1: Square, s2: Square) -> Square:
    """s1 ∘1 s2: s1 sits on top of s2."""
    if s1.n != s2.top(mp):
        raise NotComposableError(f"bottom edge of {s1} is {s1.n}, top edge of {s2} is {s2.top(mp)}")
    return Square(int(mp.Mtab.mul[s1.m, s2.m]), s2.n)


class _Inverses:
    """Inverse lookups for the two action bijections."""

    def __init__(self, mp: MatchedPairData):
        a, b = mp.shape
        # by_top[m, t] = n with ^m n = t; by_right[r, n] = m with m^n = r; -1 if absent
        self.by_top = np.full((a, b), -1, dtype=np.intp)
        self.by_top[np.arange(a)[:, None], mp.left_act] = np.arange(b)[None, :]
        self.by_right = np.full((a, b), -1, dtype=np.intp)
        self.by_right[mp.right_act, np.arange(b)[None, :]] = np.arange(a)[:, None]


_INVERSE_CACHE: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def _inverses(mp: MatchedPairData) -> _Inverses:
    inv = _INVERSE_CACHE.get(mp)
    if inv is None:
        inv = _INVERSE_CACHE[mp] = _Inverses(mp)
    return inv


def _edge_arrays(mp: MatchedPairData) -> dict[str, np.ndarray]:
    a, b = mp.shape
    m, n = np.meshgrid(np.arange(a), np.arange(b), indexing="ij")
    return {"left": m, "bottom": n, "top": mp.left_act, "right": mp.right_act}


def solve_fill(mp: MatchedPairData, kind: tuple[str, str], first, second, checked: bool = False):
    """Vectorized filler: squares with edges ``kind`` equal to (first, second).

    Returns ``(codes, solutions)``: the square code m*|N| + n per query (-1
    when there is no unique solution) and the number of solutions found.
    In checked mode the counts come from a scan over every square and the
    solver's answer must coincide with the scanned square.
    """
    if kind not in EDGE_KINDS:
        raise ValueError(f"need two adjacent edges, one of {EDGE_KINDS}; got {kind}")
    a, b = mp.shape
    first, second = np.broadcast_arrays(np.asarray(first, dtype=np.intp), np.asarray(second, dtype=np.intp))
    inv = _inverses(mp)
    if kind == ("left", "bottom"):
        m, n = first, second
        count = np.ones(first.shape, dtype=np.intp)
    elif kind == ("left", "top"):
        m, n = first, inv.by_top[first, second]
        count = (n >= 0).astype(np.intp)
    elif kind == ("bottom", "right"):
        m, n = inv.by_right[second, first], first
        count = (m >= 0).astype(np.intp)
    else:
        # for each candidate m, the bijection n -> ^m n gives the only n with top t
        ns = inv.by_top[:, first]                              # [m, query]
        ms = np.arange(a).reshape((a,) + (1,) * first.ndim)
        ok = (ns >= 0) & (mp.right_act[ms, np.maximum(ns, 0)] == second)
        count = ok.sum(axis=0)
        m = ok.argmax(axis=0)
        n = np.take_along_axis(ns, m[None], axis=0)[0]
    codes = np.where(count == 1, m * b + n, -1)
    if checked:
        edges = _edge_arrays(mp)
        e1, e2 = edges[kind[0]].ravel(), edges[kind[1]].ravel()
        width = max(a, b)
        keys = e1 * width + e2
        hist = np.bincount(keys, minlength=width * width)
        owner = np.full(width * width, -1, dtype=np.intp)
        owner[keys] = np.arange(a * b)
        qk = first * width + second
        scanned = np.where(hist[qk] == 1, owner[qk], -1)
        count = np.where(scanned == codes, hist[qk], np.maximum(hist[qk], 2))
        codes = np.where(count == 1, codes, -1)
    return codes, count


def fill_square(mp: MatchedPairData, edge_spec: dict[str, int], checked: bool = False) -> Square:
    """The unique square with the two given adjacent edges.

    ``edge_spec`` is e.g. ``{"top": t, "right": r}``.  In checked mode every
    square is scanned and exactly one must match.
    """
    kind = tuple(k for k in ("left", "bottom", "top", "right") if k in edge_spec)
    if len(edge_spec) != 2 or kind not in EDGE_KINDS:
        raise ValueError(f"need two adjacent edges, one of {EDGE_KINDS}; got {sorted(edge_spec)}")
    codes, count = solve_fill(mp, kind, edge_spec[kind[0]], edge_spec[kind[1]], checked)
    if int(count) != 1:
        raise FillerError(f"{edge_spec}: {int(count)} filling squares")
    m, n = divmod(int(codes), mp.shape[1])
    return Square(m, n)


def derived_composition(mp: MatchedPairData, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    """(m, n)(l, p) read off the path m, n, l, p by filling the corner n, l."""
    m, n = x
    l, p = y
    sq = fill_square(mp, {"top": n, "right": l})
    return int(mp.Mtab.mul[m, sq.m]), int(mp.Ntab.mul[sq.n, p])


# -- verification --------------------------------------------------------------


def _sq_renderer(mp: MatchedPairData):
    ms, ns = mp.Mtab.element_str, mp.Ntab.element_str
    b = mp.shape[1]

    def render(code: int) -> str:
        if code < 0:
            return "undefined (not composable)"
        m, n = divmod(code, b)
        return f"({ms(m)}, {ns(n)})"

    return render


def _report(mp: MatchedPairData) -> VerificationReport:
    o = mp.origin
    if o is None:
        return VerificationReport(f"pair[{mp.shape[0]}x{mp.shape[1]}]")
    return VerificationReport(f"{o.G.name} M={list(o.M.elements)} N={list(o.N.elements)}",
                              {"spec": o.G.name, "order": o.G.order})


def interchange_sides(mp: MatchedPairData) -> tuple[np.ndarray, np.ndarray]:
    """Both evaluations of every composable grid [[x, y], [z, w]].

    Indexed by (l, m, n, p): z = (m, n), w = (m^n, p), x = (l, ^m n) and y
    is forced by x and w.  Squares are coded m*|N| + n, -1 where a
    composition in that evaluation is undefined.
    """
    a, b = mp.shape
    L, R = mp.left_act, mp.right_act
    Mm, Nm = mp.Mtab.mul.astype(np.intp), mp.Ntab.mul.astype(np.intp)
    l = np.arange(a)[:, None, None, None]
    m = np.arange(a)[None, :, None, None]
    n = np.arange(b)[None, None, :, None]
    p = np.arange(b)[None, None, None, :]
    x_m, x_n = l, L[m, n]
    z_m, z_n = m, n
    w_m, w_n = R[m, n], p
    y_m, y_n = R[x_m, x_n], L[w_m, w_n]

    # (x ∘1 z) ∘2 (y ∘1 w)
    xz_m, xz_n = Mm[x_m, z_m], z_n
    yw_m, yw_n = Mm[y_m, w_m], w_n
    ok = (yw_m == R[xz_m, xz_n]) & (x_n == L[z_m, z_n]) & (y_n == L[w_m, w_n])
    lhs = np.where(ok, xz_m * b + Nm[xz_n, yw_n], -1)

    # (x ∘2 y) ∘1 (z ∘2 w)
    xy_m, xy_n = x_m, Nm[x_n, y_n]
    zw_m, zw_n = z_m, Nm[z_n, w_n]
    ok = (xy_n == L[zw_m, zw_n]) & (y_m == R[x_m, x_n]) & (w_m == R[z_m, z_n])
    rhs = np.where(ok, Mm[xy_m, zw_m] * b + zw_n, -1)
    lhs, rhs = np.broadcast_arrays(lhs, rhs)
    return lhs, rhs


def verify_interchange(mp: MatchedPairData, cap: int = DEFAULT_CAP) -> VerificationReport:
    ms, ns = mp.Mtab.element_str, mp.Ntab.element_str
    rep = _report(mp)
    rep.checks.append(compare("double.interchange", lambda: interchange_sides(mp),
                              [("l", ms), ("m", ms), ("n", ns), ("p", ns)], _sq_renderer(mp), cap))
    rep.notes["interchange_grids"] = int(np.prod(mp.shape) ** 2)
    return rep


def verify_groupoid_laws(mp: MatchedPairData, cap: int = DEFAULT_CAP) -> VerificationReport:
    """Associativity, units and inverses for ∘1 and ∘2 separately.

    Each composite is coded -1 when undefined, so a failed law shows up as
    a mismatch against the expected square.
    """
    a, b = mp.shape
    L, R = mp.left_act, mp.right_act
    Mm, Nm = mp.Mtab.mul.astype(np.intp), mp.Ntab.mul.astype(np.intp)
    Mi, Ni = mp.Mtab.inv.astype(np.intp), mp.Ntab.inv.astype(np.intp)
    ms, ns = mp.Mtab.element_str, mp.Ntab.element_str
    sq = _sq_renderer(mp)
    M_ = np.arange(a)
    N_ = np.arange(b)
    rep = _report(mp)
    add = rep.checks.append

    def h(s1, s2):
        (m1, n1), (m2, n2) = s1, s2
        return np.where(m2 == R[m1, n1], m1, -1), Nm[n1, n2]

    def v(s1, s2):
        (m1, n1), (m2, n2) = s1, s2
        return np.where(n1 == L[m2, n2], Mm[m1, m2], -1), n2

    def code(s):
        m, n = np.broadcast_arrays(*s)
        return np.where(m < 0, -1, m * b + n)

    def h_assoc():
        m, n, p, q = M_[:, None, None, None], N_[None, :, None, None], N_[None, None, :, None], N_[None, None, None, :]
        s1, s2 = (m, n), (R[m, n], p)
        s3 = (R[R[m, n], p], q)
        return code(h(h(s1, s2), s3)), code(h(s1, h(s2, s3)))

    def v_assoc():
        k, l, m, n = M_[:, None, None, None], M_[None, :, None, None], M_[None, None, :, None], N_[None, None, None, :]
        s3 = (m, n)
        s2 = (l, L[m, n])
        s1 = (k, L[l, L[m, n]])
        return code(v(v(s1, s2), s3)), code(v(s1, v(s2, s3)))

    m, n = M_[:, None], N_[None, :]
    add(compare("double.h.associativity", h_assoc, [("m", ms), ("n", ns), ("p", ns), ("q", ns)], sq, cap))
    add(compare("double.h.identity",          # (m,1) ∘2 (m,n) = (m,n)
                lambda: (code(h((m, 0 * n), (m, n))), code((m, n))), [("m", ms), ("n", ns)], sq, cap))
    add(compare("double.h.inverse",           # (m^n, n̄) ∘2 (m, n) = (m^n, 1)
                lambda: (code(h((R[m, n], Ni[n]), (m, n))), code((R[m, n], 0 * n))),
                [("m", ms), ("n", ns)], sq, cap))
    add(compare("double.v.associativity", v_assoc, [("k", ms), ("l", ms), ("m", ms), ("n", ns)], sq, cap))
    add(compare("double.v.identity",          # (m,n) ∘1 (1,n) = (m,n)
                lambda: (code(v((m, n), (0 * m, n))), code((m, n))), [("m", ms), ("n", ns)], sq, cap))
    add(compare("double.v.inverse",           # (m,n) ∘1 (m̄, ^m n) = (1, ^m n)
                lambda: (code(v((m, n), (Mi[m], L[m, n]))), code((0 * m, L[m, n]))),
                [("m", ms), ("n", ns)], sq, cap))
    return rep


def verify_fillers(mp: MatchedPairData, checked: bool = True, cap: int = DEFAULT_CAP) -> VerificationReport:
    """Query every edge pair of every square; each must return that square."""
    a, b = mp.shape
    sq = _sq_renderer(mp)
    rep = _report(mp)
    edges = _edge_arrays(mp)
    expected = np.arange(a * b).reshape(a, b)
    for kind in EDGE_KINDS:
        with stopwatch() as sw:
            codes, count = solve_fill(mp, kind, edges[kind[0]], edges[kind[1]], checked)
            bad = np.argwhere(codes != expected)
        failures = [{"inputs": {"square": sq(int(expected[m, n])),
                                kind[0]: int(edges[kind[0]][m, n]), kind[1]: int(edges[kind[1]][m, n])},
                     "lhs": f"{int(count[m, n])} filling squares" if count[m, n] != 1 else sq(int(codes[m, n])),
                     "rhs": sq(int(expected[m, n]))}
                    for m, n in bad[:cap]]
        rep.checks.append(tally(f"double.filler.{'+'.join(kind)}", a * b, failures, total=len(bad),
                                ms=sw["ms"], cap=cap))
    return rep


def verify_derived_composition(mp: MatchedPairData, cap: int = DEFAULT_CAP) -> VerificationReport:
    """Filler-based composition against the matched-pair product formula."""
    a, b = mp.shape
    sq = _sq_renderer(mp)
    rep = _report(mp)
    with stopwatch() as sw:
        # the corner fill depends only on (n, l)
        tops, rights = np.meshgrid(np.arange(b), np.arange(a), indexing="ij")
        fill, count = solve_fill(mp, ("top", "right"), tops, rights)
        Mm, Nm = mp.Mtab.mul.astype(np.intp), mp.Ntab.mul.astype(np.intp)
        m = np.arange(a)[:, None, None, None]
        n = np.arange(b)[None, :, None, None]
        l = np.arange(a)[None, None, :, None]
        p = np.arange(b)[None, None, None, :]
        f = fill[n, l]
        fm, fn = np.maximum(f, 0) // b, np.maximum(f, 0) % b
        derived = np.where(f >= 0, Mm[m, fm] * b + Nm[fn, p], -1).reshape(a * b, a * b)
        formula = mp.product_table()
    chk = compare("double.derived_composition", lambda: (derived, formula), [("x", sq), ("y", sq)], sq, cap)
    chk.ms += sw["ms"]
    if (count != 1).any():
        chk.note = f"{int((count != 1).sum())} corners without a unique filler"
    rep.checks.append(chk)
    return rep
