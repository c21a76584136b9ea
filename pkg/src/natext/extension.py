"""Bounded decision procedures on the group side.

A subshift over the semigroup S pushes forward to a constraint problem on
each Cayley ball of the receiving group: action edges carry the allowed
value pairs, forbidden patterns become nogoods at every placement that
fits inside the ball (a pattern placed at position g occupies the cells
eta(d) g for d in its domain).

Verdicts are radius-qualified and never overclaim:

* EmptyProven(r): the ball-r problem is unsatisfiable; a deterministic
  minimal unsatisfiable core of cells is extracted as the certificate.
* ConsistentUpTo(r): satisfiable through radius r; certified_nonempty is
  set only when a morphism argument proves the full system nonempty.
* PointExtendsUpTo / PointFailsAt: a pinned finite pattern extends (or
  not) to an admissible assignment on the ball.
* SurjectiveUpTo / NotSurjectiveAt: every locally admissible pattern on
  a finite acting-side window extends to an admissible ball assignment
  (or a witness pattern that does not).

The morphism certificate applies when every generator's allowed pairs are
the graph of a value permutation: relators with non-identity permutation
image obstruct configurations (empty if no common fixed value), identity
images on all relators certify nonemptiness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .cayley import Ball, build_ball, element_label, geodesic_word
from .errors import EtaCollision, NatextError, NoRelatorList
from .groups import SGroup, eta_apply, inv, mul
from .subshift import SubshiftSpec, enumerate_admissible, make_pattern, nn_view

__all__ = [
    "Problem", "build_problem", "pushforward_forbidden", "solve",
    "all_solutions", "verify_witness", "unsat_core", "hom_obstruction",
    "check_empty", "check_point_extensible", "check_surjective_up_to",
    "solve_ball", "default_s_window", "ExtensionReport", "eta_of_cell",
]


@dataclass
class Problem:
    """Finite CSP over ball cells: per-edge pair constraints plus nogoods."""

    ball: Ball
    n_values: int
    pairs: list            # (i, j, frozenset of (vi, vj))
    nogoods: list          # (idx tuple, value tuple)
    pins: dict = field(default_factory=dict)


def eta_of_cell(sg: SGroup, carrier, cell):
    """eta image of a carrier cell (word for free carriers, coordinate
    tuple for grids; grid order is harmless because grid presentations
    commute)."""
    if carrier.kind == "free":
        return eta_apply(sg, cell)
    word = tuple(g for g, c in enumerate(cell) for _ in range(c))
    return eta_apply(sg, word)


def pushforward_forbidden(sg: SGroup, spec: SubshiftSpec) -> dict:
    """Group-side constraint template of a carrier-side spec.

    Edge-local rules attach their allowed-pair tables to the eta image of
    each generator: the pair constrains x(eta(s) h) against x(h) on every
    such edge.  Forbidden patterns keep their values on the eta image of
    their domain cells.  The template is position-free; a ball solver
    instantiates it at every group element.

    Raises EtaCollision when eta merges two cells of one pattern that
    carry different values (impossible once eta is injective; such a
    pattern has no group-side occurrence at all).
    """
    if len(spec.gen_names) != sg.n_gens:
        raise NatextError("spec and semigroup have different generator counts")
    allowed = nn_view(spec)
    if allowed is not None:
        edges = []
        for gen, name in enumerate(spec.gen_names):
            image = eta_apply(sg, (gen,))
            edges.append({
                "generator": name,
                "image": image,
                "image_str": str(image),
                "allowed": sorted(allowed[gen]),
            })
        return {"kind": "edge_pairs", "alphabet": list(spec.alphabet),
                "edges": edges}
    from .groups import GenericFamily

    if isinstance(sg.family, GenericFamily):
        raise NatextError("pattern pushforward needs a canonical payload family")
    carrier = spec.carrier()
    templates = []
    for pat in spec.patterns:
        merged = {}
        order = []
        for cell, val in zip(pat.domain(), pat.values()):
            g = eta_of_cell(sg, carrier, cell)
            if g.payload in merged:
                if merged[g.payload][1] != val:
                    raise EtaCollision(
                        f"cells with different values share the eta image {g}"
                    )
                continue
            merged[g.payload] = (g, val)
            order.append(g.payload)
        templates.append({
            "domain": tuple(merged[p][0] for p in order),
            "domain_str": [str(merged[p][0]) for p in order],
            "values": tuple(merged[p][1] for p in order),
        })
    return {"kind": "forbidden", "alphabet": list(spec.alphabet),
            "patterns": templates}


def build_problem(sg: SGroup, spec: SubshiftSpec, ball: Ball, pins=None) -> Problem:
    if len(spec.gen_names) != sg.n_gens:
        raise NatextError("spec and semigroup have different generator counts")
    pairs = []
    nogoods = []
    allowed = nn_view(spec)
    if allowed is not None:
        for u, gen, v in ball.positive_edges():
            pairs.append((u, v, allowed[gen]))
    else:
        from .groups import GenericFamily

        if isinstance(sg.family, GenericFamily):
            raise NatextError(
                "pattern pushforward needs a canonical payload family"
            )
        carrier = spec.carrier()
        index = {e.payload: i for i, e in enumerate(ball.elements)}
        seen_placements = set()
        for pat in spec.patterns:
            dom = pat.domain()
            vals = pat.values()
            etas = [eta_of_cell(sg, carrier, d) for d in dom]
            anchor_inv = inv(etas[0])
            for w in ball.elements:
                pos = mul(anchor_inv, w)
                idxs = []
                ok = True
                for e in etas:
                    j = index.get(mul(e, pos).payload)
                    if j is None:
                        ok = False
                        break
                    idxs.append(j)
                if not ok:
                    continue
                merged = {}
                vacuous = False
                for j, v in zip(idxs, vals):
                    if j in merged and merged[j] != v:
                        vacuous = True  # eta collision with clashing values
                        break
                    merged[j] = v
                if vacuous:
                    continue
                key = tuple(sorted(merged.items()))
                if key in seen_placements:
                    continue
                seen_placements.add(key)
                nogoods.append((tuple(k for k, _ in key), tuple(v for _, v in key)))
    return Problem(ball, spec.n_values, pairs, nogoods, dict(pins or {}))


# ---------------------------------------------------------------------------
# solver: arc consistency + nogood units, smallest-domain-first search


def _propagate(domains, pair_adj, nogoods_by_var, active):
    """AC-3 over pair constraints interleaved with nogood unit rules.

    domains maps var -> set; active are the vars whose domains just
    changed (all vars on the initial call).  Returns False on a wipeout.
    pair_adj[i] holds (j, pset, fwd): the arc "revise i against j", with
    fwd telling whether pset is oriented (i, j) or (j, i); when D_i
    changes, the reverse arcs (j against i) carry the flipped flag.
    """
    queue = []

    def touch(i):
        for j, ps, fw in pair_adj.get(i, ()):
            queue.append((j, i, ps, not fw))

    for i in active:
        touch(i)
        for j, ps, fw in pair_adj.get(i, ()):
            queue.append((i, j, ps, fw))
    dirty = set(active)
    while queue or dirty:
        while queue:
            i, j, pset, fwd = queue.pop()
            if i not in domains or j not in domains:
                continue
            di = domains[i]
            dj = domains[j]
            if fwd:
                keep = {v for v in di if any((v, w) in pset for w in dj)}
            else:
                keep = {v for v in di if any((w, v) in pset for w in dj)}
            if len(keep) < len(di):
                if not keep:
                    return False
                domains[i] = keep
                dirty.add(i)
                touch(i)
        scan, dirty = dirty, set()
        for var in scan:
            for idxs, vals in nogoods_by_var.get(var, ()):
                free = None
                live = True
                for k, v in zip(idxs, vals):
                    dk = domains.get(k)
                    if dk is None:
                        live = False
                        break
                    if len(dk) == 1:
                        if next(iter(dk)) != v:
                            live = False
                            break
                    else:
                        if v not in dk:
                            live = False
                            break
                        if free is not None:
                            free = -1  # two or more free cells: no unit rule
                            break
                        free = k
                if not live or free == -1:
                    continue
                if free is None:
                    return False  # fully forced and violated
                pos = idxs.index(free)
                dk = set(domains[free])
                dk.discard(vals[pos])
                if not dk:
                    return False
                domains[free] = dk
                dirty.add(free)
                touch(free)
    return True


def _index_constraints(problem: Problem, subset):
    sub = set(subset)
    pair_adj: dict = {}
    for i, j, pset in problem.pairs:
        if i in sub and j in sub:
            pair_adj.setdefault(i, []).append((j, pset, True))
            pair_adj.setdefault(j, []).append((i, pset, False))
    nogoods_by_var: dict = {}
    for idxs, vals in problem.nogoods:
        if all(k in sub for k in idxs):
            for k in set(idxs):
                nogoods_by_var.setdefault(k, []).append((idxs, vals))
    return pair_adj, nogoods_by_var


def _search(domains, pair_adj, nogoods_by_var, collect, limit):
    free = [v for v in domains if len(domains[v]) > 1]
    if not free:
        collect.append({v: next(iter(d)) for v, d in domains.items()})
        return len(collect) < limit
    var = min(free, key=lambda v: (len(domains[v]), v))
    for val in sorted(domains[var]):
        trial = {v: set(d) for v, d in domains.items()}
        trial[var] = {val}
        if _propagate(trial, pair_adj, nogoods_by_var, [var]):
            if not _search(trial, pair_adj, nogoods_by_var, collect, limit):
                return False
    return True


def _solve_subset(problem: Problem, subset, limit):
    domains = {}
    for v in subset:
        if v in problem.pins:
            pin = problem.pins[v]
            if not 0 <= pin < problem.n_values:
                raise NatextError("pinned value out of range")
            domains[v] = {pin}
        else:
            domains[v] = set(range(problem.n_values))
    pair_adj, nogoods_by_var = _index_constraints(problem, subset)
    collect: list = []
    if _propagate(domains, pair_adj, nogoods_by_var, list(domains)):
        _search(domains, pair_adj, nogoods_by_var, collect, limit)
    return collect


def solve(problem: Problem, subset=None):
    """First admissible assignment (dict idx -> value) or None."""
    subset = range(problem.ball.size) if subset is None else subset
    found = _solve_subset(problem, list(subset), 1)
    return found[0] if found else None


def all_solutions(problem: Problem, subset=None, limit: int = 10000):
    """All admissible assignments in deterministic order."""
    subset = range(problem.ball.size) if subset is None else subset
    found = _solve_subset(problem, list(subset), limit)
    if len(found) >= limit:
        raise NatextError(f"solution enumeration exceeded limit {limit}")
    return found


def verify_witness(problem: Problem, sol: dict) -> bool:
    """Independent re-check of a solution against every constraint."""
    for i, j, pset in problem.pairs:
        if i in sol and j in sol and (sol[i], sol[j]) not in pset:
            return False
    for idxs, vals in problem.nogoods:
        if all(k in sol for k in idxs):
            if tuple(sol[k] for k in idxs) == vals:
                return False
    for k, v in problem.pins.items():
        if k in sol and sol[k] != v:
            return False
    return True


def unsat_core(problem: Problem) -> list:
    """Deterministic minimal unsatisfiable cell set of an UNSAT problem.

    Grows the BFS-index prefix to the first unsatisfiable length (binary
    search; unsatisfiability is monotone in the prefix), then deletes
    cells in descending index order whenever the rest stays UNSAT.
    """
    n = problem.ball.size
    if solve(problem) is not None:
        raise NatextError("unsat_core called on a satisfiable problem")
    lo, hi = 0, n - 1  # invariant: prefix hi is UNSAT
    while lo < hi:
        mid = (lo + hi) // 2
        if solve(problem, range(mid + 1)) is None:
            hi = mid
        else:
            lo = mid + 1
    kept = list(range(lo + 1))
    for i in reversed(list(kept)):
        rest = [k for k in kept if k != i]
        if solve(problem, rest) is None:
            kept = rest
    return kept


# ---------------------------------------------------------------------------
# morphism certificate


def _identity_perm(k):
    return tuple(range(k))


def _perm_of_pairs(pairs, k):
    """Permutation tuple when the pair set is a bijection graph, else None."""
    m = {}
    for a, b in pairs:
        if a in m:
            return None
        m[a] = b
    if len(m) != k or sorted(m.values()) != list(range(k)):
        return None
    return tuple(m[i] for i in range(k))


def _perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def hom_obstruction(sg: SGroup, spec: SubshiftSpec) -> dict:
    """Relator images of the induced value permutations.

    Requires the spec's allowed pairs to be permutation graphs (coset
    rules always are).  Raises NoRelatorList when the receiving group
    carries no relator list to evaluate.
    """
    if sg.relators is None:
        raise NoRelatorList(
            f"{sg.name} has no relator list; the morphism certificate needs one"
        )
    allowed = nn_view(spec)
    k = spec.n_values
    if allowed is None:
        return {"applicable": False, "status": "NotApplicable",
                "reason": "spec is not edge-local"}
    perms = []
    for i, pairs in enumerate(allowed):
        p = _perm_of_pairs(pairs, k)
        if p is None:
            return {"applicable": False, "status": "NotApplicable",
                    "reason": f"allowed pairs of generator "
                              f"{spec.gen_names[i]} are not a permutation"}
        perms.append(p)
    images = []
    for rel in sg.relators:
        img = _identity_perm(k)
        for gen, sign in rel:
            p = perms[gen] if sign == 1 else _perm_inverse(perms[gen])
            img = tuple(img[p[i]] for i in range(k))  # compose: img after p
        images.append(img)
    ident = _identity_perm(k)
    all_trivial = all(img == ident for img in images)
    common_fixed = [v for v in range(k)
                    if all(img[v] == v for img in images)]
    if all_trivial:
        status = "Unobstructed"
    else:
        status = "Obstructed"
    return {
        "applicable": True,
        "status": status,
        "relator_images": [list(img) for img in images],
        "common_fixed_values": common_fixed,
        "certified_nonempty": all_trivial,
        "certified_empty": (not all_trivial) and not common_fixed,
    }


# ---------------------------------------------------------------------------
# reports


@dataclass
class ExtensionReport:
    kind: str
    verdict: str
    radius: int
    group: str
    certified_nonempty: bool = False
    witness: dict | None = None       # cell label -> value label
    core: dict | None = None          # {"size", "indices", "elements"}
    obstruction: dict | None = None
    detail: dict | None = None

    def to_json(self) -> dict:
        out = {
            "schema": 1,
            "kind": self.kind,
            "verdict": self.verdict,
            "radius": self.radius,
            "group": self.group,
            "certified_nonempty": self.certified_nonempty,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.core is not None:
            out["core"] = self.core
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction
        if self.detail:
            out.update(self.detail)
        return out


def _witness_labels(ball: Ball, spec: SubshiftSpec, sol: dict) -> dict:
    return {element_label(ball, i): spec.alphabet[v]
            for i, v in sorted(sol.items())}


def _core_json(ball: Ball, core: list) -> dict:
    return {
        "size": len(core),
        "indices": list(core),
        "elements": [element_label(ball, i) for i in core],
    }


def check_empty(sg: SGroup, spec: SubshiftSpec, r_max: int) -> ExtensionReport:
    """Search radii 0..r_max for an unsatisfiable ball.

    Unsatisfiability at any radius proves the pushed-forward system empty
    (EmptyProven with a minimal core); otherwise ConsistentUpTo(r_max),
    certified nonempty when the morphism argument applies.
    """
    try:
        obstruction = hom_obstruction(sg, spec)
    except NoRelatorList:
        obstruction = {"applicable": False, "status": "NoRelatorList"}
    certified = bool(obstruction.get("certified_nonempty"))
    last = None
    last_ball = None
    for r in range(r_max + 1):
        ball = build_ball(sg, r)
        problem = build_problem(sg, spec, ball)
        sol = solve(problem)
        if sol is None:
            core = unsat_core(problem)
            return ExtensionReport(
                "check-empty", "EmptyProven", r, sg.name,
                core=_core_json(ball, core), obstruction=obstruction,
            )
        assert verify_witness(problem, sol)
        last, last_ball = sol, ball
    return ExtensionReport(
        "check-empty", "ConsistentUpTo", r_max, sg.name,
        certified_nonempty=certified,
        witness=_witness_labels(last_ball, spec, last),
        obstruction=obstruction,
    )


def pin_pattern(sg: SGroup, spec: SubshiftSpec, ball: Ball, pattern) -> dict:
    """Ball pins from an S-side pattern placed at the identity.

    Raises EtaCollision when eta identifies two pattern cells that carry
    different values; cells outside the ball are ignored (the caller's
    radius must cover the pattern for a meaningful check).
    """
    carrier = spec.carrier()
    index = {e.payload: i for i, e in enumerate(ball.elements)}
    pins: dict = {}
    for cell, val in pattern.cells:
        g = eta_of_cell(sg, carrier, cell)
        j = index.get(g.payload)
        if j is None:
            continue
        if j in pins and pins[j] != val:
            raise EtaCollision(
                f"cells with different values share the eta image "
                f"{element_label(ball, j)}"
            )
        pins[j] = val
    return pins


def check_point_extensible(sg: SGroup, spec: SubshiftSpec, pattern, r: int) -> ExtensionReport:
    """Does the pinned pattern extend to an admissible ball(r) assignment?"""
    ball = build_ball(sg, r)
    pins = pin_pattern(sg, spec, ball, pattern)
    problem = build_problem(sg, spec, ball, pins=pins)
    sol = solve(problem)
    if sol is None:
        return ExtensionReport(
            "extend", "PointFailsAt", r, sg.name,
            detail={"pinned_cells": len(pins)},
        )
    assert verify_witness(problem, sol)
    return ExtensionReport(
        "extend", "PointExtendsUpTo", r, sg.name,
        witness=_witness_labels(ball, spec, sol),
        detail={"pinned_cells": len(pins)},
    )


def solve_ball(sg: SGroup, spec: SubshiftSpec, ball, base=None) -> ExtensionReport:
    """Solve one ball outright or around a pinned base pattern.

    Without a base: a witness coloring of the full ball, or EmptyProven
    with a contradiction core (a coloring of any global configuration
    would restrict to the ball, so unsatisfiability is conclusive).
    With a base pattern the failure verdict is only about this radius.
    """
    pins = pin_pattern(sg, spec, ball, base) if base is not None else None
    problem = build_problem(sg, spec, ball, pins=pins)
    sol = solve(problem)
    if sol is not None:
        assert verify_witness(problem, sol)
        return ExtensionReport(
            "solve", "Witness", ball.radius, sg.name,
            witness=_witness_labels(ball, spec, sol),
        )
    core = unsat_core(problem)
    verdict = "EmptyProven" if base is None else "NoExtensionAt"
    return ExtensionReport(
        "solve", verdict, ball.radius, sg.name,
        core=_core_json(ball, core),
    )


def default_s_window(spec: SubshiftSpec, r: int) -> list:
    """Cells of the acting-side carrier within combinatorial radius r-1.

    A product of k generator steps lands in ball(k) of any receiving
    group, so the eta-image of these cells always fits inside ball(r).
    """
    carrier = spec.carrier()
    if carrier.kind == "free":
        return list(carrier.ball(r - 1))
    d = carrier.d
    lo = 0 if carrier.nonneg else -(r - 1)
    cells = [
        c for c in product(range(lo, r), repeat=d)
        if sum(abs(v) for v in c) <= r - 1
    ]
    cells.sort(key=carrier.sort_key)
    return cells


def check_surjective_up_to(sg: SGroup, spec: SubshiftSpec, r: int,
                           s_window=None, limit: int = 10000) -> ExtensionReport:
    """Must every locally admissible window pattern extend to ball(r)?

    s_window is a finite list of acting-side carrier cells whose
    eta-image lies in the ball; default is every cell within
    combinatorial radius r-1.
    """
    if r < 1:
        raise NatextError("surjectivity check needs radius >= 1")
    carrier = spec.carrier()
    names = spec.gen_names
    if s_window is None:
        s_window = default_s_window(spec, r)
    else:
        s_window = [carrier.parse_cell(c, names) if isinstance(c, str) else c
                    for c in s_window]
    ball = build_ball(sg, r)
    problem = build_problem(sg, spec, ball)
    cells, patterns = enumerate_admissible(spec, carrier, s_window)
    total = 0
    failed = 0
    first_failure = None
    for values in patterns:
        total += 1
        if total > limit:
            raise NatextError(f"more than {limit} admissible window patterns")
        pat = make_pattern(carrier, list(zip(cells, values)))
        pins = pin_pattern(sg, spec, ball, pat)
        pinned = Problem(ball, problem.n_values, problem.pairs,
                         problem.nogoods, pins)
        if solve(pinned) is None:
            failed += 1
            if first_failure is None:
                first_failure = {
                    carrier.format_cell(c, names): spec.alphabet[v]
                    for c, v in zip(cells, values)
                }
    window_labels = [carrier.format_cell(c, names) for c in cells]
    if failed:
        return ExtensionReport(
            "surjective", "NotSurjectiveAt", r, sg.name,
            detail={
                "window": window_labels,
                "admissible_patterns": total,
                "failed_patterns": failed,
                "first_failure": first_failure,
            },
        )
    return ExtensionReport(
        "surjective", "SurjectiveUpTo", r, sg.name,
        detail={"window": window_labels, "admissible_patterns": total},
    )
