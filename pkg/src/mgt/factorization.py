"""Exact factorizations G = MN and G = MNP."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import NotExactError, SizeLimitError
from .groups import GroupTable, SubgroupRef, closure_mask, subgroup_from_mask, whole_group

# every subgroup of a group of order <= 48 is generated by 3 elements
COMPLETE_UP_TO = 48


def _check_member(G: GroupTable, *subs: SubgroupRef) -> None:
    for H in subs:
        if not isinstance(H, SubgroupRef) or H.ambient is not G:
            raise ValueError("argument is not a subgroup of the given group")


def _products(G: GroupTable, *subs: SubgroupRef) -> np.ndarray:
    """All products x1*x2*...*xk, as an array indexed by the factors' positions."""
    out = np.array([0])
    for H in subs:
        out = G.mul[np.ix_(out.ravel(), np.array(H.elements))]
    return out.reshape([len(H) for H in subs])


def product_subgroup(G: GroupTable, A: SubgroupRef, B: SubgroupRef) -> SubgroupRef | None:
    """The set AB as a subgroup, or None when AB is not closed."""
    mask = np.zeros(G.order, dtype=bool)
    mask[_products(G, A, B).ravel()] = True
    if closure_mask(G, mask).sum() != mask.sum():
        return None
    return subgroup_from_mask(G, mask)


@dataclass(frozen=True, eq=False)
class PairFactorization:
    """Unique decompositions ``g = m*n`` and ``g = n'*m'`` over ``within``.

    ``within`` is the subgroup MN; for a factorization of the whole group it
    is G itself.  All indices are ambient indices of G.
    """

    G: GroupTable
    M: SubgroupRef
    N: SubgroupRef
    within: SubgroupRef
    decomp: dict[int, tuple[int, int]]
    decomp_rev: dict[int, tuple[int, int]]


def is_exact_pair(G: GroupTable, M: SubgroupRef, N: SubgroupRef) -> bool:
    _check_member(G, M, N)
    return int((M.mask & N.mask).sum()) == 1 and M.order * N.order == G.order


def _factorize(G: GroupTable, M: SubgroupRef, N: SubgroupRef, within: SubgroupRef) -> PairFactorization:
    decomp: dict[int, tuple[int, int]] = {}
    decomp_rev: dict[int, tuple[int, int]] = {}
    mn = _products(G, M, N)
    nm = _products(G, N, M)
    for i, m in enumerate(M.elements):
        for j, n in enumerate(N.elements):
            g = int(mn[i, j])
            if g in decomp:
                raise NotExactError(f"{G.element_str(g)} has two decompositions m*n")
            decomp[g] = (m, n)
            g = int(nm[j, i])
            if g in decomp_rev:
                raise NotExactError(f"{G.element_str(g)} has two decompositions n*m")
            decomp_rev[g] = (n, m)
    if set(decomp) != set(within.elements) or set(decomp_rev) != set(within.elements):
        raise NotExactError("products do not cover the target subgroup")
    return PairFactorization(G, M, N, within, decomp, decomp_rev)


def build_pair_factorization(G: GroupTable, M: SubgroupRef, N: SubgroupRef) -> PairFactorization:
    if not is_exact_pair(G, M, N):
        raise NotExactError(
            f"not an exact factorization: |M|={M.order}, |N|={N.order}, "
            f"|M∩N|={int((M.mask & N.mask).sum())}, |G|={G.order}"
        )
    return _factorize(G, M, N, whole_group(G))


def enumerate_subgroups(G: GroupTable, max_gens: int | None = 3) -> list[SubgroupRef]:
    """All subgroups generated by at most ``max_gens`` elements.

    With the default bound this is every subgroup when |G| <= 48; larger
    groups are refused unless the bound is raised or set to None (no bound).
    """
    if max_gens is not None and max_gens <= 3 and G.order > COMPLETE_UP_TO:
        raise SizeLimitError(
            f"order {G.order} > {COMPLETE_UP_TO}: 3-generator enumeration may be incomplete; "
            "raise max_gens or pass None"
        )
    mul = G.mul
    found: dict[bytes, np.ndarray] = {}
    trivial = np.zeros(G.order, dtype=bool)
    trivial[0] = True
    found[np.packbits(trivial).tobytes()] = trivial
    level = [trivial]
    depth = 0
    while level and (max_gens is None or depth < max_gens):
        depth += 1
        nxt = []
        for H in level:
            hidx = np.flatnonzero(H)
            covered = H.copy()
            for g in range(G.order):
                if covered[g]:
                    continue
                # <H, g> only depends on the double coset HgH
                covered[mul[np.ix_(mul[hidx, g], hidx)].ravel()] = True
                seed = H.copy()
                seed[g] = True
                K = closure_mask(G, seed)
                key = np.packbits(K).tobytes()
                if key not in found:
                    found[key] = K
                    nxt.append(K)
        level = nxt
    subs = [subgroup_from_mask(G, K) for K in found.values()]
    subs.sort(key=lambda H: (H.order, H.elements))
    return subs


def _is_degenerate(*subs: SubgroupRef) -> bool:
    return any(H.order == 1 for H in subs)


def enumerate_exact_pairs(
    G: GroupTable,
    include_degenerate: bool = False,
    subgroups: list[SubgroupRef] | None = None,
) -> list[tuple[SubgroupRef, SubgroupRef]]:
    subs = subgroups if subgroups is not None else enumerate_subgroups(G)
    out = []
    for M, N in product(subs, repeat=2):
        if M.order * N.order != G.order:
            continue
        if not include_degenerate and _is_degenerate(M, N):
            continue
        if is_exact_pair(G, M, N):
            out.append((M, N))
    return out


# -- triples -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TripleFactorization:
    """Unique decomposition ``g = m*n*p``.

    ``pairs`` maps "MN", "MP", "NP" to the pair factorizations inside the
    product subgroups; in relaxed mode an entry is None when that product
    set is not a subgroup.
    """

    G: GroupTable
    M: SubgroupRef
    N: SubgroupRef
    P: SubgroupRef
    decomp3: dict[int, tuple[int, int, int]]
    pairs: dict[str, PairFactorization | None]
    mode: str = "strict"

    @property
    def strict_ok(self) -> bool:
        return all(pf is not None for pf in self.pairs.values())


def _triple_status(G, M, N, P) -> tuple[bool, dict[str, SubgroupRef | None]]:
    """(bijective, product subgroups) for the map (m, n, p) -> mnp."""
    if M.order * N.order * P.order != G.order:
        return False, {}
    prods = _products(G, M, N, P).ravel()
    if len(np.unique(prods)) != G.order:
        return False, {}
    subs = {
        "MN": product_subgroup(G, M, N),
        "MP": product_subgroup(G, M, P),
        "NP": product_subgroup(G, N, P),
    }
    return True, subs


def is_exact_triple(G: GroupTable, M: SubgroupRef, N: SubgroupRef, P: SubgroupRef,
                    mode: str = "strict") -> bool:
    """Strict mode additionally needs MN, MP, NP to be subgroups.

    Injectivity of (m, n, p) -> mnp already forces the three pairwise
    intersections to be trivial, so each product subgroup is then exactly
    factorized by its pair.
    """
    _check_member(G, M, N, P)
    if mode not in ("strict", "relaxed"):
        raise ValueError(f"mode must be strict or relaxed, not {mode!r}")
    bij, subs = _triple_status(G, M, N, P)
    if not bij:
        return False
    return mode == "relaxed" or all(K is not None for K in subs.values())


def build_triple_factorization(G: GroupTable, M: SubgroupRef, N: SubgroupRef, P: SubgroupRef,
                               mode: str = "strict") -> TripleFactorization:
    if not is_exact_triple(G, M, N, P, mode):
        raise NotExactError(f"({M.order}, {N.order}, {P.order}) is not an exact {mode} triple in order {G.order}")
    _, subs = _triple_status(G, M, N, P)
    prods = _products(G, M, N, P)
    decomp3 = {}
    for (i, j, k), g in np.ndenumerate(prods):
        decomp3[int(g)] = (M.elements[i], N.elements[j], P.elements[k])
    factors = {"MN": (M, N), "MP": (M, P), "NP": (N, P)}
    pairs = {}
    for key, (A, B) in factors.items():
        pairs[key] = _factorize(G, A, B, subs[key]) if subs[key] is not None else None
    return TripleFactorization(G, M, N, P, decomp3, pairs, mode)


def enumerate_exact_triples(
    G: GroupTable,
    mode: str = "strict",
    include_degenerate: bool = False,
    subgroups: list[SubgroupRef] | None = None,
) -> list[tuple[SubgroupRef, SubgroupRef, SubgroupRef]]:
    subs = subgroups if subgroups is not None else enumerate_subgroups(G)
    out = []
    for M, N in product(subs, repeat=2):
        if G.order % (M.order * N.order) or int((M.mask & N.mask).sum()) != 1:
            continue
        for P in subs:
            if M.order * N.order * P.order != G.order:
                continue
            if not include_degenerate and _is_degenerate(M, N, P):
                continue
            if is_exact_triple(G, M, N, P, mode):
                out.append((M, N, P))
    return out
