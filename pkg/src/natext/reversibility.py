"""Reversibility and directedness of the eta(S)-order on the group.

g <= h means h g^-1 lies in eta(S) (one can pass from g to h by a
semigroup move on the left).  Everything here is bounded and honest:

* left_reversible_bounded searches for common right multiples of
  generator cones inside the presented semigroup itself,
* PreorderOracle decides h g^-1 in eta(S) exactly where a membership
  test exists (Z^d, free, the dyadic BS(1,2) model, finite groups) and
  raises MembershipUndecidable elsewhere,
* directed_bounded scans a Cayley ball for a lower bound of a finite
  element set F (an m with F m^-1 inside eta(S)),
* check_fractions_by_subshift runs the same scan through the indicator
  configuration x* of eta(S): g works for radius r exactly when the
  translate g . x* is 1 on the whole r-ball.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cayley import Ball, build_ball, element_label
from .errors import MembershipUndecidable, NatextError
from .groups import (
    FiniteFamily,
    GroupElem,
    SGroup,
    eta_apply,
    inv,
    mul,
    semigroup_membership,
)
from .words import SemigroupPresentation, TriState, words_equal_bounded


def left_reversible_bounded(p: SemigroupPresentation, length: int,
                            budget: int = 4000) -> dict:
    """Common right multiples of generator cones, searched up to length.

    For every generator pair (a, b) looks for words u, v with |u|, |v| <=
    length and a u = b v in the semigroup.  A free presentation has
    provably disjoint cones.  Pair verdicts: CommonRightMultiple,
    DisjointProven, Unknown.
    """
    n = p.n_gens
    pairs = {}
    verdict = "LeftReversibleUpTo"
    for i in range(n):
        for j in range(i + 1, n):
            key = f"{p.gens.names[i]},{p.gens.names[j]}"
            if not p.relations:
                pairs[key] = {"verdict": "DisjointProven"}
                verdict = "NotLeftReversible"
                continue
            found = None
            for lu in range(length + 1):
                if found:
                    break
                for lv in range(length + 1):
                    if found:
                        break
                    for u in product(range(n), repeat=lu):
                        wu = (i,) + u
                        done = False
                        for v in product(range(n), repeat=lv):
                            wv = (j,) + v
                            tri = words_equal_bounded(p, wu, wv, budget=budget)
                            if tri is TriState.EQUAL:
                                found = (wu, wv)
                                done = True
                                break
                        if done:
                            break
            if found:
                pairs[key] = {
                    "verdict": "CommonRightMultiple",
                    "left": p.gens.format_word(found[0]),
                    "right": p.gens.format_word(found[1]),
                }
            else:
                pairs[key] = {"verdict": "Unknown"}
                verdict = "Unknown"
    if verdict == "LeftReversibleUpTo" and any(
        v["verdict"] != "CommonRightMultiple" for v in pairs.values()
    ):
        verdict = "Unknown"
    return {"verdict": verdict, "length": length, "pairs": pairs}


class PreorderOracle:
    """Decides g <= h (h g^-1 in eta(S)) where membership is exact."""

    def __init__(self, sg: SGroup):
        self.sg = sg
        self._finite_members = None
        if sg.membership_kind is None and not isinstance(sg.family, FiniteFamily):
            raise MembershipUndecidable(
                f"no exact eta(S) membership test for {sg.family.name}"
            )
        if isinstance(sg.family, FiniteFamily):
            self._finite_members = self._finite_closure()

    def _finite_closure(self):
        group = self.sg.family.group
        seen = {group.identity: ()}
        frontier = [group.identity]
        while frontier:
            x = frontier.pop(0)
            for gen, e in enumerate(self.sg.eta):
                y = group.mul(x, e.payload)
                if y not in seen:
                    seen[y] = seen[x] + (gen,)
                    frontier.append(y)
        return seen

    def member(self, g: GroupElem):
        """(bool, witness word or None) for g in eta(S)."""
        if self._finite_members is not None:
            w = self._finite_members.get(g.payload)
            return (True, w) if w is not None else (False, None)
        ok, wit = semigroup_membership(self.sg, g)
        return ok, wit

    def leq(self, g: GroupElem, h: GroupElem):
        """g <= h iff h g^-1 in eta(S); returns (bool, witness word)."""
        return self.member(mul(h, inv(g)))


def xstar_patch(sg: SGroup, ball: Ball) -> dict:
    """Indicator of eta(S) on the ball: idx -> 1 inside, 0 outside."""
    oracle = PreorderOracle(sg)
    return {i: (1 if oracle.member(e)[0] else 0)
            for i, e in enumerate(ball.elements)}


@dataclass
class DirectedReport:
    verdict: str          # "LowerBound" or "NoneFound"
    radius: int
    bound: str | None = None
    bound_index: int | None = None
    witnesses: dict | None = None

    def to_json(self) -> dict:
        out = {"schema": 1, "verdict": self.verdict, "radius": self.radius}
        if self.bound is not None:
            out["bound"] = self.bound
            out["bound_index"] = self.bound_index
        if self.witnesses is not None:
            out["witnesses"] = self.witnesses
        return out


def directed_bounded(sg: SGroup, elems, radius: int) -> DirectedReport:
    """Scan ball(radius) in breadth-first order for a lower bound of
    elems: the first m with h m^-1 in eta(S) for every h."""
    oracle = PreorderOracle(sg)
    ball = build_ball(sg, radius)
    names = sg.presentation.gens
    for idx, m in enumerate(ball.elements):
        m_inv = inv(m)
        wits = {}
        ok = True
        for k, h in enumerate(elems):
            member, wit = oracle.member(mul(h, m_inv))
            if not member:
                ok = False
                break
            wits[str(k)] = names.format_word(wit)
        if ok:
            return DirectedReport("LowerBound", radius,
                                  element_label(ball, idx), idx, wits)
    return DirectedReport("NoneFound", radius)


@dataclass
class FractionsReport:
    verdict: str          # "Directed" or "FailsAt"
    r: int
    search_radius: int
    witness: str | None = None
    witness_index: int | None = None
    checked: int = 0

    def to_json(self) -> dict:
        out = {"schema": 1, "verdict": self.verdict, "r": self.r,
               "search_radius": self.search_radius, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
            out["witness_index"] = self.witness_index
        return out


def check_fractions_by_subshift(sg: SGroup, r: int, search_radius: int | None = None) -> FractionsReport:
    """Directedness of ball(r) read off the indicator configuration x*.

    Searches ball(search_radius), default 2r + 1, for a g whose translate
    g . x* is identically 1 on ball(r), i.e. h g in eta(S) for every h in
    ball(r); such a g bounds ball(r) from below after inverting.
    """
    if search_radius is None:
        search_radius = 2 * r + 1
    big = build_ball(sg, r + search_radius)
    star = xstar_patch(sg, big)
    index = {e.payload: i for i, e in enumerate(big.elements)}
    inner = [i for i in range(big.size) if big.layer[i] <= r]
    candidates = [i for i in range(big.size) if big.layer[i] <= search_radius]
    checked = 0
    for gi in candidates:
        g = big.elements[gi]
        checked += 1
        ok = True
        for hi in inner:
            j = index.get(mul(big.elements[hi], g).payload)
            if j is None or not star[j]:
                ok = False
                break
        if ok:
            return FractionsReport("Directed", r, search_radius,
                                   element_label(big, gi), gi, checked)
    return FractionsReport("FailsAt", r, search_radius, checked=checked)
