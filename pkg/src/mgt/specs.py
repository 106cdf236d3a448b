"""Textual group descriptors and the survey catalog.

Grammar::

    spec := cyclic:<n> | dihedral:<n> | symmetric:<n> | alternating:<n>
          | klein4 | quaternion8 | product:<spec>,<spec>
          | perm:<degree>:<cycles>;<cycles>;...
"""

from __future__ import annotations

import math
import re


from .errors import SpecParseError
from .groups import DEFAULT_MAX_ORDER, GroupTable, SubgroupRef, group_from_generators, standard_group, subgroup_generated
from .perm import Perm, parse_gens

_INT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str, max_order: int):
        self.text = text
        self.pos = 0
        self.max_order = max_order

    def fail(self, msg: str):
        raise SpecParseError(f"{msg} at position {self.pos} in group spec {self.text!r}")

    def expect(self, lit: str) -> None:
        if not self.text.startswith(lit, self.pos):
            self.fail(f"expected {lit!r}")
        self.pos += len(lit)

    def integer(self) -> int:
        m = _INT.match(self.text, self.pos)
        if not m:
            self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def spec(self) -> GroupTable:
        for family in ("cyclic", "dihedral", "symmetric", "alternating"):
            if self.text.startswith(family + ":", self.pos):
                self.pos += len(family) + 1
                n = self.integer()
                try:
                    return standard_group(family, n, max_order=self.max_order)
                except ValueError as exc:
                    raise SpecParseError(str(exc)) from None
        for family in ("klein4", "quaternion8"):
            if self.text.startswith(family, self.pos):
                self.pos += len(family)
                return standard_group(family, max_order=self.max_order)
        if self.text.startswith("product:", self.pos):
            self.pos += len("product:")
            A = self.spec()
            self.expect(",")
            B = self.spec()
            return standard_group("product", A, B, max_order=self.max_order)
        if self.text.startswith("perm:", self.pos):
            start = self.pos
            self.pos += len("perm:")
            degree = self.integer()
            self.expect(":")
            end = self.pos
            depth = 0
            while end < len(self.text) and not (self.text[end] == "," and depth == 0):
                depth += {"(": 1, ")": -1}.get(self.text[end], 0)
                end += 1
            body = self.text[self.pos:end]
            self.pos = end
            if degree < 1 or degree > 255:
                self.fail("perm degree must be in 1..255")
            gens = parse_gens(body, degree, sep=";")
            return group_from_generators(degree, gens, self.max_order, name=self.text[start:end])
        self.fail("unknown group family")


def parse_group_spec(text: str, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    p = _Parser(text.strip(), max_order)
    G = p.spec()
    if p.pos != len(p.text):
        p.fail("trailing characters")
    return G


def parse_subgroup(G: GroupTable, gens_text: str) -> SubgroupRef:
    """Subgroup generated by a cycle-notation list (or element indices for unlabelled groups)."""
    gens_text = (gens_text or "").strip()
    if G.labels is None:
        try:
            idx = [int(t) for t in gens_text.split(",") if t.strip()]
        except ValueError:
            raise SpecParseError(
                f"{G.name} has no permutation labels; give generators as element indices") from None
        if any(not 0 <= i < G.order for i in idx):
            raise SpecParseError(f"element index out of range for order {G.order}")
        return subgroup_generated(G, idx)
    degree = G.labels[0].degree
    perms = parse_gens(gens_text, degree)
    try:
        return subgroup_generated(G, [G.index_of(p) for p in perms])
    except ValueError as exc:
        raise SpecParseError(str(exc)) from None


# -- catalog -------------------------------------------------------------------


def _base_catalog() -> list[tuple[str, int]]:
    out = [(f"cyclic:{n}", n) for n in range(1, 25)]
    out += [(f"dihedral:{n}", 2 * n) for n in range(3, 13)]
    out += [(f"symmetric:{n}", math.factorial(n)) for n in (3, 4)]
    out += [("alternating:4", 12), ("klein4", 4), ("quaternion8", 8)]
    return out


CATALOG_MAX = 48


def catalog(max_order: int) -> list[str]:
    """Spec strings of every catalog group of order <= max_order, in survey order.

    Binary direct products pair two non-trivial base groups, each unordered
    pair once.
    """
    if max_order > CATALOG_MAX:
        raise ValueError(f"survey max order is at most {CATALOG_MAX}")
    base = [(s, n) for s, n in _base_catalog() if n <= max_order]
    entries = list(base)
    nontrivial = [(s, n) for s, n in base if n > 1]
    for i, (sa, na) in enumerate(nontrivial):
        for sb, nb in nontrivial[i:]:
            if na * nb <= max_order:
                entries.append((f"product:{sa},{sb}", na * nb))
    entries.sort(key=lambda e: (e[1], e[0]))
    return [s for s, _ in entries]
