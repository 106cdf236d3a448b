"""Finite groups as multiplication tables.

Every group carries its identity at index 0.  Groups built from
permutations list their elements in lexicographic order of image sequence,
which puts the identity first automatically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import NotAGroupError, SizeLimitError
from .perm import Perm

DEFAULT_MAX_ORDER = 10368

# rows of the associativity / label checks handled per numpy call
_BLOCK_CELLS = 4_000_000


def _index_dtype(order: int):
    if order <= np.iinfo(np.int16).max:
        return np.int16
    return np.int32


def _as_void(rows: np.ndarray) -> np.ndarray:
    """View uint8 rows as single void scalars; their order is lexicographic."""
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.shape[-1]))).reshape(rows.shape[:-1])


class GroupTable:
    """A finite group given by its full Cayley table.

    ``mul[a, b]`` is the index of ``a*b``; ``inv[a]`` the index of ``a**-1``.
    When ``labels`` is given, ``labels[i]`` is the permutation realizing
    element ``i`` and ``mul`` must agree with apply-first composition.
    """

    identity = 0

    def __init__(
        self,
        mul,
        labels: Sequence[Perm] | None = None,
        name: str = "",
        check: bool = True,
    ):
        mul = np.asarray(mul)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise ValueError(f"multiplication table must be a non-empty square, got {mul.shape}")
        n = mul.shape[0]
        if mul.min() < 0 or mul.max() >= n:
            raise ValueError("multiplication table entries out of range")
        self.mul = mul.astype(_index_dtype(n))
        self.mul.setflags(write=False)
        self.order = n
        self.name = name
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("need exactly one label per element")
        self._label_index: dict[Perm, int] | None = None
        self.inv = self._find_inverses()
        if check:
            self.validate()

    def __repr__(self):
        return f"GroupTable({self.name or '?'}, order={self.order})"

    def __len__(self):
        return self.order

    # -- construction checks -------------------------------------------------

    def _find_inverses(self) -> np.ndarray:
        hits = self.mul == 0
        if not (hits.sum(axis=1) == 1).all():
            a = int(np.flatnonzero(hits.sum(axis=1) != 1)[0])
            raise NotAGroupError(f"element {a} has no unique right inverse", {"axiom": "inverse", "a": a})
        inv = hits.argmax(axis=1).astype(self.mul.dtype)
        inv.setflags(write=False)
        return inv

    def validate(self) -> None:
        """Exhaustively check the group axioms; raise NotAGroupError on failure."""
        n = self.order
        mul = self.mul
        full = np.arange(n)
        rows_ok = (np.sort(mul, axis=1) == full).all(axis=1)
        cols_ok = (np.sort(mul, axis=0) == full[:, None]).all(axis=0)
        if not rows_ok.all():
            a = int(np.flatnonzero(~rows_ok)[0])
            raise NotAGroupError(f"row {a} is not a permutation", {"axiom": "latin", "row": a})
        if not cols_ok.all():
            b = int(np.flatnonzero(~cols_ok)[0])
            raise NotAGroupError(f"column {b} is not a permutation", {"axiom": "latin", "column": b})
        if not ((mul[0] == full).all() and (mul[:, 0] == full).all()):
            raise NotAGroupError("index 0 is not a two-sided identity", {"axiom": "identity"})
        left = mul[self.inv, full]
        if not (left == 0).all():
            a = int(np.flatnonzero(left != 0)[0])
            raise NotAGroupError(f"inverse of {a} is one-sided", {"axiom": "inverse", "a": a})
        if self.labels is not None:
            self._check_labels()
        else:
            self._check_associative()

    def _check_associative(self) -> None:
        n = self.order
        mul = self.mul.astype(np.intp)
        step = max(1, _BLOCK_CELLS // (n * n))
        for lo in range(0, n, step):
            a = np.arange(lo, min(n, lo + step))
            lhs = mul[mul[a]]      # [a, b, c] -> (ab)c
            rhs = mul[a][:, mul]   # [a, b, c] -> a(bc)
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                i, b, c = (int(v) for v in bad[0])
                raise NotAGroupError(
                    "multiplication is not associative",
                    {"axiom": "assoc", "a": int(a[i]), "b": b, "c": c},
                )

    def _check_labels(self) -> None:
        # agreement with permutation composition on every pair certifies
        # associativity: the labels form a faithful copy of the table
        L = np.array([p.images for p in self.labels], dtype=np.intp)
        if len(set(self.labels)) != self.order:
            raise NotAGroupError("labels are not distinct", {"axiom": "labels"})
        if not L[0].tolist() == list(range(L.shape[1])):
            raise NotAGroupError("label of index 0 is not the identity", {"axiom": "labels"})
        n = self.order
        mul = self.mul.astype(np.intp)
        step = max(1, _BLOCK_CELLS // max(1, n * L.shape[1]))
        for lo in range(0, n, step):
            a = np.arange(lo, min(n, lo + step))
            composed = L[:, L[a]].transpose(1, 0, 2)  # [a, b, i] = b(a(i))
            bad = np.argwhere((composed != L[mul[a]]).any(axis=2))
            if len(bad):
                i, b = (int(v) for v in bad[0])
                raise NotAGroupError(
                    "table disagrees with permutation composition",
                    {"axiom": "labels", "a": int(a[i]), "b": b},
                )

    # -- element access ------------------------------------------------------

    def multiply(self, a: int, b: int) -> int:
        self._check_index(a)
        self._check_index(b)
        return int(self.mul[a, b])

    def inverse(self, a: int) -> int:
        self._check_index(a)
        return int(self.inv[a])

    def power(self, a: int, k: int) -> int:
        x = 0
        if k < 0:
            a, k = int(self.inv[a]), -k
        for _ in range(k):
            x = int(self.mul[x, a])
        return x

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = int(self.mul[x, a])
            k += 1
        return k

    def _check_index(self, a) -> None:
        if not (isinstance(a, (int, np.integer)) and 0 <= a < self.order):
            raise ValueError(f"element index {a!r} out of range for order {self.order}")

    def index_of(self, perm: Perm) -> int:
        if self.labels is None:
            raise ValueError(f"{self.name or 'group'} has no permutation labels")
        if self._label_index is None:
            self._label_index = {p: i for i, p in enumerate(self.labels)}
        try:
            return self._label_index[perm]
        except KeyError:
            raise ValueError(f"{perm} is not an element of {self.name or 'the group'}") from None

    def element_str(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a].to_cycles()
        return str(int(a))

    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())


def multiply(G: GroupTable, a: int, b: int) -> int:
    return G.multiply(a, b)


def inverse(G: GroupTable, a: int) -> int:
    return G.inverse(a)


@dataclass(frozen=True, eq=False)
class SubgroupRef:
    """A subgroup of ``ambient`` as a sorted tuple of ambient indices."""

    ambient: GroupTable
    elements: tuple[int, ...]
    mask: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        els = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", els)
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ValueError("subgroup elements must be strictly increasing")
        if not els or els[0] != 0:
            raise ValueError("subgroup must contain the identity")
        G = self.ambient
        mask = np.zeros(G.order, dtype=bool)
        mask[list(els)] = True
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)
        idx = np.array(els)
        if not mask[G.mul[np.ix_(idx, idx)]].all():
            raise ValueError("element set is not closed under multiplication")
        if not mask[G.inv[idx]].all():
            raise ValueError("element set is not closed under inverses")

    def __eq__(self, other):
        if not isinstance(other, SubgroupRef):
            return NotImplemented
        return self.ambient is other.ambient and self.elements == other.elements

    def __hash__(self):
        return hash((id(self.ambient), self.elements))

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return bool(self.mask[g])

    def __iter__(self):
        return iter(self.elements)

    def describe(self) -> list[str]:
        return [self.ambient.element_str(e) for e in self.elements]


def closure_mask(G: GroupTable, seed: np.ndarray) -> np.ndarray:
    """Smallest subgroup mask containing the elements flagged in ``seed``."""
    mask = seed.copy()
    mask[0] = True
    while True:
        idx = np.flatnonzero(mask)
        grown = mask.copy()
        grown[G.mul[np.ix_(idx, idx)].ravel()] = True
        if grown.sum() == mask.sum():
            return mask
        mask = grown


def subgroup_from_mask(G: GroupTable, mask: np.ndarray) -> SubgroupRef:
    return SubgroupRef(G, tuple(int(i) for i in np.flatnonzero(mask)))


def subgroup_generated(G: GroupTable, gens: Iterable[int]) -> SubgroupRef:
    seed = np.zeros(G.order, dtype=bool)
    for g in gens:
        G._check_index(g)
        seed[g] = True
    H = subgroup_from_mask(G, closure_mask(G, seed))
    assert G.order % H.order == 0, "Lagrange violated"
    return H


def whole_group(G: GroupTable) -> SubgroupRef:
    return SubgroupRef(G, tuple(range(G.order)))


def trivial_subgroup(G: GroupTable) -> SubgroupRef:
    return SubgroupRef(G, (0,))


def subgroup_table(H: SubgroupRef, name: str = "") -> GroupTable:
    """Re-index ``H`` as a standalone group; index i is ambient ``H.elements[i]``."""
    G = H.ambient
    idx = np.array(H.elements)
    pos = np.full(G.order, -1, dtype=np.intp)
    pos[idx] = np.arange(len(idx))
    mul = pos[G.mul[np.ix_(idx, idx)]]
    labels = [G.labels[e] for e in H.elements] if G.labels is not None else None
    return GroupTable(mul, labels=labels, name=name)


# -- constructions -------------------------------------------------------------


def group_from_perms(perms: Iterable[Perm], name: str = "") -> GroupTable:
    """Cayley table of a set of permutations that is already closed."""
    perms = sorted(set(perms))
    if not perms:
        raise ValueError("empty permutation set")
    degree = perms[0].degree
    if degree > 255:
        raise ValueError("degree above 255 is not supported")
    n = len(perms)
    L = np.array([p.images for p in perms], dtype=np.uint8).reshape(n, degree)
    keys = _as_void(L)
    mul = np.empty((n, n), dtype=_index_dtype(n))
    step = max(1, _BLOCK_CELLS // max(1, n * degree))
    Li = L.astype(np.intp)
    for lo in range(0, n, step):
        a = np.arange(lo, min(n, lo + step))
        prods = np.ascontiguousarray(L[:, Li[a]].transpose(1, 0, 2))
        pk = _as_void(prods)
        where = np.searchsorted(keys, pk)
        where = np.minimum(where, n - 1)
        if not (keys[where] == pk).all():
            raise ValueError("permutation set is not closed under composition")
        mul[lo : lo + len(a)] = where
    # table agrees with the labels by construction; only the cheap axioms need checking
    G = GroupTable(mul, labels=perms, name=name, check=False)
    return G


def group_from_generators(
    degree: int,
    gens: Sequence[Perm],
    max_order: int = DEFAULT_MAX_ORDER,
    name: str = "",
) -> GroupTable:
    ident = Perm.identity(degree)
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > max_order:
                        raise SizeLimitError(
                            f"closure exceeds max order {max_order}; raise max_order to allow it"
                        )
        frontier = nxt
    G = group_from_perms(seen, name=name)
    G.validate()
    return G


def _quaternion8() -> GroupTable:
    # index = 2*unit + sign_bit over units (1, i, j, k): 1,-1,i,-i,j,-j,k,-k
    unit_mul = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
        (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
        (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
    }
    mul = np.zeros((8, 8), dtype=np.int16)
    for a in range(8):
        for b in range(8):
            u, s = unit_mul[(a // 2, b // 2)]
            sign = s * (-1) ** (a % 2) * (-1) ** (b % 2)
            mul[a, b] = 2 * u + (sign < 0)
    return GroupTable(mul, name="quaternion8")


def direct_product(A: GroupTable, B: GroupTable, name: str = "",
                   max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    if A.order * B.order > max_order:
        raise SizeLimitError(f"product order {A.order * B.order} exceeds max order {max_order}")
    name = name or f"product:{A.name},{B.name}"
    if A.labels is not None and B.labels is not None:
        da, db = A.labels[0].degree, B.labels[0].degree
        perms = []
        for p in A.labels:
            pe = p.extend(da + db)
            for q in B.labels:
                perms.append(pe * q.extend(da + db, shift=da))
        G = group_from_perms(perms, name=name)
        G.validate()
        return G
    nb = B.order
    am = A.mul.astype(np.intp)
    bm = B.mul.astype(np.intp)
    mul = (am[:, None, :, None] * nb + bm[None, :, None, :]).reshape(A.order * nb, A.order * nb)
    return GroupTable(mul, name=name)


FAMILIES = ("cyclic", "dihedral", "symmetric", "alternating", "klein4", "quaternion8", "product")


def _cycle(points: Sequence[int], degree: int) -> Perm:
    return Perm.from_cycles([tuple(points)], degree)


def standard_group(family: str, *params, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Named group, e.g. ``standard_group("dihedral", 4)`` (order 8)."""

    def need_int(lo: int, hi: int | None = None) -> int:
        if len(params) != 1 or not isinstance(params[0], (int, np.integer)) or isinstance(params[0], bool):
            raise ValueError(f"{family} takes one integer parameter")
        n = int(params[0])
        if n < lo or (hi is not None and n > hi):
            raise ValueError(f"{family}:{n} out of range [{lo}, {hi if hi is not None else 'inf'}]")
        return n

    if family == "cyclic":
        n = need_int(1)
        gens = [_cycle(range(n), n)] if n > 1 else []
        return group_from_generators(n, gens, max_order, name=f"cyclic:{n}")
    if family == "dihedral":
        n = need_int(3)
        rot = _cycle(range(n), n)
        refl = Perm(tuple((-i) % n for i in range(n)))
        return group_from_generators(n, [rot, refl], max_order, name=f"dihedral:{n}")
    if family == "symmetric":
        n = need_int(1, 8)
        gens = [_cycle((0, 1), n), _cycle(range(n), n)] if n > 1 else []
        return group_from_generators(n, gens, max_order, name=f"symmetric:{n}")
    if family == "alternating":
        n = need_int(1, 8)
        gens = [_cycle((0, 1, k), n) for k in range(2, n)]
        return group_from_generators(n, gens, max_order, name=f"alternating:{n}")
    if family == "klein4":
        if params:
            raise ValueError("klein4 takes no parameters")
        gens = [Perm.from_cycles([(0, 1), (2, 3)], 4), Perm.from_cycles([(0, 2), (1, 3)], 4)]
        return group_from_generators(4, gens, max_order, name="klein4")
    if family == "quaternion8":
        if params:
            raise ValueError("quaternion8 takes no parameters")
        return _quaternion8()
    if family == "product":
        if len(params) != 2 or not all(isinstance(p, GroupTable) for p in params):
            raise ValueError("product takes two GroupTables")
        return direct_product(params[0], params[1], max_order=max_order)
    raise ValueError(f"unknown group family {family!r}; expected one of {', '.join(FAMILIES)}")
