"""Matched pairs of groups read off from an exact factorization.

For ``G = MN`` exact, every product ``m*n`` is rewritten uniquely as
``n' * m'``; we write ``n' = left_act[m, n]`` (M acting on the left of N)
and ``m' = right_act[m, n]`` (N acting on the right of M).  Tables use the
standalone indices of ``Mtab`` and ``Ntab``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import NotAGroupError
from .factorization import PairFactorization
from .groups import GroupTable, subgroup_table
from .report import DEFAULT_CAP, VerificationReport, compare, stopwatch, tally

# the pairing m <- n is read as ^{(m̄^n̄)} n, the form that makes
# nm = (m -> n)(m <- n) hold; the superscript-caret rendering of the same
# pairing would have an N element acting on N
NW_READING = "^{(m̄^n̄)}n"


@dataclass(frozen=True, eq=False)
class MatchedPairData:
    Mtab: GroupTable
    Ntab: GroupTable
    left_act: np.ndarray   # [m, n] -> index in Ntab
    right_act: np.ndarray  # [m, n] -> index in Mtab
    origin: PairFactorization | None = None

    def __post_init__(self):
        shape = (self.Mtab.order, self.Ntab.order)
        left = np.array(self.left_act, dtype=np.intp)
        right = np.array(self.right_act, dtype=np.intp)
        if left.shape != shape or right.shape != shape:
            raise ValueError(f"action tables must have shape {shape}")
        if left.min() < 0 or left.max() >= shape[1] or right.min() < 0 or right.max() >= shape[0]:
            raise ValueError("action table entry out of range")
        left.setflags(write=False)
        right.setflags(write=False)
        object.__setattr__(self, "left_act", left)
        object.__setattr__(self, "right_act", right)

    @property
    def shape(self) -> tuple[int, int]:
        return self.Mtab.order, self.Ntab.order

    @property
    def m_embed(self) -> np.ndarray:
        """Ambient index of each M element (needs an origin)."""
        return np.array(self.origin.M.elements)

    @property
    def n_embed(self) -> np.ndarray:
        return np.array(self.origin.N.elements)

    def is_trivial(self) -> bool:
        a, b = self.shape
        return bool((self.left_act == np.arange(b)).all() and
                    (self.right_act == np.arange(a)[:, None]).all())

    def mutated(self, table: str, m: int, n: int, value: int) -> MatchedPairData:
        """Copy with one action-table entry overwritten (for mutation tests)."""
        if table not in ("left", "right"):
            raise ValueError("table must be 'left' or 'right'")
        arr = (self.left_act if table == "left" else self.right_act).copy()
        arr[m, n] = value
        return replace(self, **{f"{table}_act": arr})

    def ne_table(self) -> np.ndarray:
        """``[m, n] -> m ↗ n = m^(^m̄ n̄)`` as M indices."""
        a, b = self.shape
        Mi, Ni = self.Mtab.inv.astype(np.intp), self.Ntab.inv.astype(np.intp)
        inner = self.left_act[Mi[:, None], Ni[None, :]]
        return self.right_act[np.arange(a)[:, None], inner]

    def nw_table(self) -> np.ndarray:
        """``[m, n] -> m ↖ n = ^(m̄^n̄) n`` as N indices."""
        a, b = self.shape
        Mi, Ni = self.Mtab.inv.astype(np.intp), self.Ntab.inv.astype(np.intp)
        inner = self.right_act[Mi[:, None], Ni[None, :]]
        return self.left_act[inner, np.arange(b)[None, :]]

    def product_table(self) -> np.ndarray:
        """``[(m,n), (l,p)] -> (m·(l↗n), (l↖n)·p)`` on the index set m*|N| + n.

        Computed from the tables alone; no group axioms assumed.
        """
        a, b = self.shape
        NE, NW = self.ne_table(), self.nw_table()
        Mm, Nm = self.Mtab.mul.astype(np.intp), self.Ntab.mul.astype(np.intp)
        m = np.arange(a)[:, None, None, None]
        n = np.arange(b)[None, :, None, None]
        l = np.arange(a)[None, None, :, None]
        p = np.arange(b)[None, None, None, :]
        first = Mm[m, NE[l, n]]
        second = Nm[NW[l, n], p]
        return (first * b + second).reshape(a * b, a * b)


def derive_matched_pair(pf: PairFactorization) -> MatchedPairData:
    G = pf.G
    Mtab = subgroup_table(pf.M, name=f"M<{G.name}>")
    Ntab = subgroup_table(pf.N, name=f"N<{G.name}>")
    m_pos = {g: i for i, g in enumerate(pf.M.elements)}
    n_pos = {g: j for j, g in enumerate(pf.N.elements)}
    a, b = Mtab.order, Ntab.order
    left = np.empty((a, b), dtype=np.intp)
    right = np.empty((a, b), dtype=np.intp)
    for i, m in enumerate(pf.M.elements):
        for j, n in enumerate(pf.N.elements):
            n2, m2 = pf.decomp_rev[int(G.mul[m, n])]
            left[i, j] = n_pos[n2]
            right[i, j] = m_pos[m2]
    return MatchedPairData(Mtab, Ntab, left, right, origin=pf)


def pairing_ne(mp: MatchedPairData, m: int, n: int) -> int:
    """m ↗ n, an element of M."""
    mbar, nbar = int(mp.Mtab.inv[m]), int(mp.Ntab.inv[n])
    return int(mp.right_act[m, mp.left_act[mbar, nbar]])


def pairing_nw(mp: MatchedPairData, m: int, n: int) -> int:
    """m ↖ n, an element of N."""
    mbar, nbar = int(mp.Mtab.inv[m]), int(mp.Ntab.inv[n])
    return int(mp.left_act[mp.right_act[mbar, nbar], n])


def _subject(mp: MatchedPairData) -> str:
    if mp.origin is None:
        return f"pair[{mp.Mtab.order}x{mp.Ntab.order}]"
    o = mp.origin
    return f"{o.G.name} M={list(o.M.elements)} N={list(o.N.elements)}"


def _report(mp: MatchedPairData) -> VerificationReport:
    group = {}
    if mp.origin is not None:
        group = {"spec": mp.origin.G.name, "order": mp.origin.G.order}
    return VerificationReport(_subject(mp), group)


def verify_pair_axioms(mp: MatchedPairData, cap: int = DEFAULT_CAP) -> VerificationReport:
    """Composition rules for the two actions, bijectivity and unit laws."""
    a, b = mp.shape
    L, R = mp.left_act, mp.right_act
    Mm, Nm = mp.Mtab.mul.astype(np.intp), mp.Ntab.mul.astype(np.intp)
    ms, ns = mp.Mtab.element_str, mp.Ntab.element_str
    rep = _report(mp)
    add = rep.checks.append

    add(compare("pair.right_act_of_product",            # m^(np) = (m^n)^p
                lambda: (R[:, Nm], R[R]),
                [("m", ms), ("n", ns), ("p", ns)], ms, cap))
    add(compare("pair.left_act_of_product",             # ^m(np) = ^m n · ^(m^n) p
                lambda: (L[:, Nm], Nm[L[:, :, None], L[R]]),
                [("m", ms), ("n", ns), ("p", ns)], ns, cap))
    add(compare("pair.left_act_by_product",             # ^(lm) n = ^l(^m n)
                lambda: (L[Mm], L[:, L]),
                [("l", ms), ("m", ms), ("n", ns)], ns, cap))
    add(compare("pair.right_act_by_product",            # (lm)^n = l^(^m n) · m^n
                lambda: (R[Mm], Mm[R[:, L], R[None, :, :]]),
                [("l", ms), ("m", ms), ("n", ns)], ms, cap))

    with stopwatch() as sw:
        bad_rows = [m for m in range(a) if len(set(L[m].tolist())) != b]
        bad_cols = [n for n in range(b) if len(set(R[:, n].tolist())) != a]
    add(tally("pair.left_act_bijective", a,
              [{"inputs": {"m": ms(m)}, "lhs": "n -> ^m n", "rhs": "not a bijection of N"} for m in bad_rows],
              ms=sw["ms"], cap=cap))
    add(tally("pair.right_act_bijective", b,
              [{"inputs": {"n": ns(n)}, "lhs": "m -> m^n", "rhs": "not a bijection of M"} for n in bad_cols],
              ms=sw["ms"], cap=cap))

    add(compare("pair.unit.left_by_identity", lambda: (L[0], np.arange(b)), [("n", ns)], ns, cap))
    add(compare("pair.unit.right_by_identity", lambda: (R[:, 0], np.arange(a)), [("m", ms)], ms, cap))
    add(compare("pair.unit.left_of_identity", lambda: (L[:, 0], 0), [("m", ms)], ns, cap))
    add(compare("pair.unit.right_of_identity", lambda: (R[0], 0), [("n", ns)], ms, cap))
    return rep


def verify_inverse_identities(mp: MatchedPairData, cap: int = DEFAULT_CAP) -> VerificationReport:
    L, R = mp.left_act, mp.right_act
    Mi, Ni = mp.Mtab.inv.astype(np.intp), mp.Ntab.inv.astype(np.intp)
    ms, ns = mp.Mtab.element_str, mp.Ntab.element_str
    rep = _report(mp)
    rep.checks.append(compare("inverse.left_act",      # (^m n)^-1 = ^(m^n)(n^-1)
                              lambda: (Ni[L], L[R, Ni[None, :]]),
                              [("m", ms), ("n", ns)], ns, cap))
    rep.checks.append(compare("inverse.right_act",     # (m^n)^-1 = (m^-1)^(^m n)
                              lambda: (Mi[R], R[Mi[:, None], L]),
                              [("m", ms), ("n", ns)], ms, cap))
    return rep


def bicrossproduct(mp: MatchedPairData) -> GroupTable:
    """The group on M×N with (m,n)(l,p) = (m·(l↗n), (l↖n)·p); index m*|N| + n."""
    a, b = mp.shape
    table = mp.product_table()
    try:
        return GroupTable(table, name=f"bicrossproduct[{a}x{b}]")
    except NotAGroupError as exc:
        w = dict(exc.witness)
        for key in ("a", "b", "c", "row", "column"):
            if key in w:
                w[key] = divmod(int(w[key]), b)
        raise NotAGroupError(f"bicrossproduct is not a group: {exc}", w) from None


def verify_canonical_map(mp: MatchedPairData, pf: PairFactorization | None = None,
                         cap: int = DEFAULT_CAP) -> VerificationReport:
    """Compare the tables against the ambient group through (m, n) -> m*n."""
    pf = pf or mp.origin
    if pf is None:
        raise ValueError("canonical map needs the originating factorization")
    G = pf.G
    a, b = mp.shape
    gm = G.mul.astype(np.intp)
    me, ne = np.array(pf.M.elements), np.array(pf.N.elements)
    phi = gm[me[:, None], ne[None, :]].ravel()      # index m*b + n
    ms, ns, gs = mp.Mtab.element_str, mp.Ntab.element_str, G.element_str

    def pair_str(x: int) -> str:
        m, n = divmod(x, b)
        return f"({ms(m)}, {ns(n)})"

    rep = _report(mp)
    rep.notes["pairing_nw_reading"] = NW_READING

    with stopwatch() as sw:
        hits = np.zeros(G.order, dtype=np.int64)
        np.add.at(hits, phi, 1)
        target = np.zeros(G.order, dtype=bool)
        target[list(pf.within.elements)] = True
        bad = [int(g) for g in np.flatnonzero((hits != 1) & target)]
        bad += [int(g) for g in np.flatnonzero((hits > 0) & ~target)]
    rep.checks.append(tally(
        "canonical.bijection", a * b,
        [{"inputs": {"g": gs(g)}, "lhs": f"{int(hits[g])} preimages", "rhs": "1 preimage"} for g in bad],
        ms=sw["ms"], cap=cap))

    rep.checks.append(compare(                       # m·n = ^m n · m^n in G
        "canonical.defining_square",
        lambda: (gm[me[:, None], ne[None, :]], gm[ne[mp.left_act], me[mp.right_act]]),
        [("m", ms), ("n", ns)], gs, cap))
    rep.checks.append(compare(                       # n·m = (m↗n)(m↖n) in G
        "canonical.reverse_product",
        lambda: (gm[ne[None, :], me[:, None]], gm[me[mp.ne_table()], ne[mp.nw_table()]]),
        [("m", ms), ("n", ns)], gs, cap))
    rep.checks.append(compare(                       # φ(xy) = φ(x)φ(y)
        "canonical.homomorphism",
        lambda: (phi[mp.product_table()], gm[phi[:, None], phi[None, :]]),
        [("x", pair_str), ("y", pair_str)], gs, cap))
    return rep
