"""Subshift specifications over a carrier and their finite-window logic.

A configuration assigns one alphabet value to every carrier cell; the
semigroup acts by (s . x)(t) = x(t s).  Three constraint kinds:

* nearest_neighbor: per generator s a set of allowed (x(t), x(s t)) value
  pairs along every action edge t -> s t,
* forbidden_patterns: finite patterns that must not occur at any position
  (a pattern with domain D occurs at s on the cells {d s : d in D}),
* coset_rule: values are elements of a finite group F and the rule forces
  x(s t) = phi(s) x(t) for a morphism phi into F; its configurations are
  exactly x_g(t) = phi(t) g for g in F.

Window counting checks only constraints that lie fully inside the window,
so counts are upper approximations of the infinite system that stabilize
as windows grow.  Values are handled internally as alphabet indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .carriers import Carrier, FreeCarrier, GridCarrier, carrier_for
from .errors import MorphismInconsistent, NatextError, NotSingleGenerator
from .groups import FiniteGroup


@dataclass(frozen=True)
class Pattern:
    """Finite partial configuration: sorted tuple of (cell, value index)."""

    cells: tuple

    def domain(self) -> tuple:
        return tuple(c for c, _ in self.cells)

    def values(self) -> tuple:
        return tuple(v for _, v in self.cells)


def make_pattern(carrier: Carrier, items) -> Pattern:
    cells = tuple(sorted(items, key=lambda cv: carrier.sort_key(cv[0])))
    seen = set()
    for c, _ in cells:
        if c in seen:
            raise ValueError("pattern assigns a cell twice")
        seen.add(c)
    return Pattern(cells)


@dataclass(frozen=True)
class SubshiftSpec:
    alphabet: tuple
    gen_names: tuple
    carrier_kind: str
    kind: str
    allowed: tuple | None = None  # per generator, frozenset of (i, j)
    patterns: tuple | None = None
    group: FiniteGroup | None = None
    phi: tuple | None = None

    @property
    def n_values(self) -> int:
        return len(self.alphabet)

    def carrier(self) -> Carrier:
        return carrier_for(self.carrier_kind, len(self.gen_names))

    def value_index(self, label) -> int:
        if label in self.alphabet:
            return self.alphabet.index(label)
        raise NatextError(f"value {label!r} not in alphabet")


def nn_spec(alphabet, gen_names, allowed, carrier_kind="free") -> SubshiftSpec:
    allowed_t = tuple(frozenset(tuple(p) for p in allowed[i]) for i in range(len(gen_names)))
    return SubshiftSpec(tuple(alphabet), tuple(gen_names), carrier_kind,
                        "nearest_neighbor", allowed=allowed_t)


def pattern_spec(alphabet, gen_names, patterns, carrier_kind="free") -> SubshiftSpec:
    return SubshiftSpec(tuple(alphabet), tuple(gen_names), carrier_kind,
                        "forbidden_patterns", patterns=tuple(patterns))


def coset_spec(group: FiniteGroup, phi, gen_names, carrier_kind="free") -> SubshiftSpec:
    phi = tuple(phi)
    for p in phi:
        if not 0 <= p < group.order:
            raise ValueError("phi image out of range")
    allowed = tuple(
        frozenset((g, group.mul(p, g)) for g in range(group.order)) for p in phi
    )
    return SubshiftSpec(tuple(group.names), tuple(gen_names), carrier_kind,
                        "coset_rule", allowed=allowed, group=group, phi=phi)


def nn_view(spec: SubshiftSpec):
    """Allowed-pair tables when the spec is edge-local, else None."""
    if spec.kind in ("nearest_neighbor", "coset_rule"):
        return spec.allowed
    return None


# ---------------------------------------------------------------------------
# window machinery


def compile_window(spec: SubshiftSpec, carrier: Carrier, window):
    """Sorted cells plus constraints as index-level records.

    Records: ("pair", i, j, allowed_set) for action edges inside the
    window, ("nogood", idx_tuple, value_tuple) for forbidden-pattern
    placements fully inside the window.
    """
    cells = sorted(window, key=carrier.sort_key)
    index = {c: i for i, c in enumerate(cells)}
    cons = []
    allowed = nn_view(spec)
    if allowed is not None:
        for t in cells:
            for i in range(len(spec.gen_names)):
                t2 = carrier.step(i, t)
                j = index.get(t2)
                if j is not None:
                    cons.append(("pair", index[t], j, allowed[i]))
    else:
        for pat in spec.patterns:
            dom = pat.domain()
            vals = pat.values()
            d0 = dom[0]
            positions = set()
            for w in cells:
                s = carrier.divide_left(d0, w)
                if s is not None:
                    positions.add(s)
            for s in sorted(positions, key=carrier.sort_key):
                placed = [carrier.place(d, s) for d in dom]
                if all(c in index for c in placed):
                    cons.append(("nogood", tuple(index[c] for c in placed), vals))
    return cells, cons


def _by_completion(cons, n_cells):
    at = [[] for _ in range(n_cells)]
    for c in cons:
        if c[0] == "pair":
            at[max(c[1], c[2])].append(c)
        else:
            at[max(c[1])].append(c)
    return at


def _check(con, assign) -> bool:
    if con[0] == "pair":
        return (assign[con[1]], assign[con[2]]) in con[3]
    idxs, vals = con[1], con[2]
    return tuple(assign[i] for i in idxs) != vals


def _window_dfs(n_cells, n_vals, cons):
    at = _by_completion(cons, n_cells)
    assign = [0] * n_cells
    # iterative DFS yielding complete assignments
    k = 0
    v = 0
    while True:
        if k == n_cells:
            yield tuple(assign)
            k -= 1
            if k < 0:
                return
            v = assign[k] + 1
            continue
        while v < n_vals:
            assign[k] = v
            if all(_check(c, assign) for c in at[k]):
                break
            v += 1
        if v < n_vals:
            k += 1
            v = 0
        else:
            k -= 1
            if k < 0:
                return
            v = assign[k] + 1


def _is_line_window(carrier: Carrier, cells) -> bool:
    if not isinstance(carrier, GridCarrier) or carrier.d != 1:
        return False
    return cells == [(i,) for i in range(len(cells))]


def _transfer_count(spec: SubshiftSpec, n: int) -> int:
    if n == 0:
        return 1
    k = spec.n_values
    allowed = spec.allowed[0]
    a = [[1 if (i, j) in allowed else 0 for j in range(k)] for i in range(k)]
    vec = [1] * k
    for _ in range(n - 1):
        vec = [sum(a[i][j] * vec[j] for j in range(k)) for i in range(k)]
    return sum(vec)


@dataclass(frozen=True)
class WindowCount:
    """A window together with its count of locally admissible assignments."""

    window: tuple
    count: int


def window_count(spec: SubshiftSpec, window, carrier: Carrier | None = None) -> WindowCount:
    """Count locally admissible assignments on the window.

    Uses a transfer-matrix fast path for initial segments of the
    nonnegative line under edge-local rules, backtracking otherwise.
    """
    if carrier is None:
        carrier = spec.carrier()
    cells, cons = compile_window(spec, carrier, window)
    if nn_view(spec) is not None and _is_line_window(carrier, cells):
        return WindowCount(tuple(cells), _transfer_count(spec, len(cells)))
    total = 0
    for _ in _window_dfs(len(cells), spec.n_values, cons):
        total += 1
    return WindowCount(tuple(cells), total)


def enumerate_admissible(spec: SubshiftSpec, carrier: Carrier, window):
    """(cells, iterator of value tuples aligned with cells)."""
    cells, cons = compile_window(spec, carrier, window)
    return cells, _window_dfs(len(cells), spec.n_values, cons)


def locally_admissible(spec: SubshiftSpec, carrier: Carrier, assignment: dict) -> bool:
    """Check a partial configuration against all constraints it completes."""
    cells, cons = compile_window(spec, carrier, list(assignment))
    vals = [assignment[c] for c in cells]
    return all(_check(c, vals) for c in cons)


# ---------------------------------------------------------------------------
# coset subshifts as finite actions


@dataclass(frozen=True)
class FiniteAction:
    """Action of the semigroup generators on a finite configuration set."""

    labels: tuple
    gen_maps: tuple  # per generator: tuple idx -> idx

    @property
    def size(self) -> int:
        return len(self.labels)


def coset_action(group: FiniteGroup, phi) -> FiniteAction:
    """Configs x_g(t) = phi(t) g indexed by g; s sends x_g to x_{phi(s) g}."""
    maps = tuple(
        tuple(group.mul(p, g) for g in range(group.order)) for p in phi
    )
    return FiniteAction(group.names, maps)


def coset_subshift(group: FiniteGroup, phi, gen_names, presentation=None,
                   carrier_kind="free"):
    """Coset spec plus its finite action, validating phi.

    When a presentation is supplied, phi must respect every relation or
    MorphismInconsistent is raised.  Returns (spec, action, warnings);
    warnings flags a phi whose images generate a proper subgroup.
    """
    phi = tuple(phi)
    if presentation is not None:
        if presentation.n_gens != len(gen_names):
            raise NatextError("presentation and generator names disagree")

        def phi_word(w):
            acc = group.identity
            for g in w:
                acc = group.mul(acc, phi[g])
            return acc

        for lhs, rhs in presentation.relations:
            if phi_word(lhs) != phi_word(rhs):
                raise MorphismInconsistent(
                    "phi breaks the relation "
                    f"{presentation.gens.format_word(lhs)} = "
                    f"{presentation.gens.format_word(rhs)}"
                )
    spec = coset_spec(group, phi, gen_names, carrier_kind)
    action = coset_action(group, phi)
    warnings = []
    reach = {group.identity}
    frontier = [group.identity]
    while frontier:
        g = frontier.pop()
        for p in phi:
            h = group.mul(p, g)
            if h not in reach:
                reach.add(h)
                frontier.append(h)
    if len(reach) < group.order:
        warnings.append(
            f"phi images generate a proper subgroup (order {len(reach)} of "
            f"{group.order}); the action is not transitive"
        )
    return spec, action, warnings


def _reach_sets(action: FiniteAction):
    out = []
    for start in range(action.size):
        seen = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for m in action.gen_maps:
                y = m[x]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        out.append(seen)
    return out


def _as_action(obj) -> FiniteAction:
    if isinstance(obj, FiniteAction):
        return obj
    if isinstance(obj, SubshiftSpec) and obj.kind == "coset_rule":
        return coset_action(obj.group, obj.phi)
    raise NatextError("need a FiniteAction or a coset spec with an "
                      "explicit configuration list")


def check_surjective_finite(action) -> dict:
    """Per-generator surjectivity of the induced map on configurations."""
    action = _as_action(action)
    per_gen = [len(set(m)) == action.size for m in action.gen_maps]
    return {"per_generator": per_gen, "all": all(per_gen)}


def check_transitive(action) -> bool:
    """One dense orbit: some configuration reaches every configuration."""
    action = _as_action(action)
    return any(len(r) == action.size for r in _reach_sets(action))


def check_minimal(action) -> bool:
    """Every orbit closure is everything (finite: every reach set is full)."""
    action = _as_action(action)
    return all(len(r) == action.size for r in _reach_sets(action))


check_transitive_finite = check_transitive
check_minimal_finite = check_minimal


def check_transitive_matrix(spec: SubshiftSpec) -> bool:
    """Transitivity of a one-generator edge subshift via its transition
    graph: every value must reach every value."""
    if len(spec.gen_names) != 1:
        raise NotSingleGenerator("transition-matrix test needs one generator")
    allowed = nn_view(spec)
    if allowed is None:
        raise NatextError("transition-matrix test needs an edge-local spec")
    k = spec.n_values
    adj = {i: [j for j in range(k) if (i, j) in allowed[0]] for i in range(k)}
    for start in range(k):
        seen = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        if len(seen) != k:
            return False
    return True


def config_distance(cells_in_order, x, y):
    """Distance 2^-m with m the first cell (in the given enumeration)
    where the configurations differ.

    x and y are callables on cells.  Returns (Fraction, exact flag); when
    the enumeration is exhausted without a disagreement the value
    2^-len(cells) is only an upper bound and exact is False.
    """
    cells = list(cells_in_order)
    for m, c in enumerate(cells):
        if x(c) != y(c):
            return Fraction(1, 2**m), True
    return Fraction(1, 2 ** len(cells)), False


# ---------------------------------------------------------------------------
# JSON round trip


def _group_to_json(group: FiniteGroup) -> dict:
    return {"type": "table", "table": [list(r) for r in group.table],
            "names": list(group.names)}


def _group_from_json(obj) -> FiniteGroup:
    t = obj.get("type", "table")
    if t == "cyclic":
        return FiniteGroup.cyclic(int(obj["n"]))
    if t == "symmetric":
        return FiniteGroup.symmetric(int(obj["n"]))
    if t == "table":
        return FiniteGroup(tuple(tuple(r) for r in obj["table"]),
                           tuple(obj["names"]))
    raise NatextError(f"unknown finite group type {t!r}")


def spec_to_json(spec: SubshiftSpec) -> dict:
    out = {
        "schema": 1,
        "alphabet": list(spec.alphabet),
        "generators": list(spec.gen_names),
        "carrier": spec.carrier_kind,
        "kind": spec.kind,
    }
    if spec.kind == "nearest_neighbor":
        out["allowed"] = {
            name: sorted([list(p) for p in spec.allowed[i]])
            for i, name in enumerate(spec.gen_names)
        }
    elif spec.kind == "forbidden_patterns":
        carrier = spec.carrier()
        out["patterns"] = [
            {"cells": [[carrier.cell_json(c, spec.gen_names), v]
                       for c, v in pat.cells]}
            for pat in spec.patterns
        ]
    else:
        out["group"] = _group_to_json(spec.group)
        out["phi"] = list(spec.phi)
    return out


def spec_from_json(obj) -> SubshiftSpec:
    alphabet = tuple(obj["alphabet"])
    gen_names = tuple(obj["generators"])
    carrier_kind = obj.get("carrier", "free")
    kind = obj["kind"]
    if kind == "nearest_neighbor":
        allowed = []
        table = obj["allowed"]
        labels = list(alphabet)

        def _idx(v):
            # pairs may use alphabet indices or the symbols themselves
            if isinstance(v, str) and v in labels:
                return labels.index(v)
            return v

        for name in gen_names:
            if name not in table:
                raise NatextError(f"no allowed pairs for generator {name!r}")
            allowed.append([(_idx(p[0]), _idx(p[1])) for p in table[name]])
        return nn_spec(alphabet, gen_names, allowed, carrier_kind)
    if kind == "forbidden_patterns":
        carrier = carrier_for(carrier_kind, len(gen_names))
        pats = []
        for p in obj["patterns"]:
            items = []
            for cell, val in p["cells"]:
                if isinstance(val, str):
                    val = list(alphabet).index(val)
                items.append((carrier.parse_cell(cell, gen_names), val))
            pats.append(make_pattern(carrier, items))
        return pattern_spec(alphabet, gen_names, pats, carrier_kind)
    if kind == "coset_rule":
        group = _group_from_json(obj["group"])
        phi = []
        for p in obj["phi"]:
            if isinstance(p, str):
                p = list(group.names).index(p)
            phi.append(p)
        return coset_spec(group, phi, gen_names, carrier_kind)
    raise NatextError(f"unknown subshift kind {kind!r}")


def load_spec(path_or_obj) -> SubshiftSpec:
    if isinstance(path_or_obj, dict):
        return spec_from_json(path_or_obj)
    with open(path_or_obj, encoding="utf-8") as fh:
        return spec_from_json(json.load(fh))


def save_spec(spec: SubshiftSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_json(spec), fh, indent=2, sort_keys=True)
        fh.write("\n")


BUILTIN_SPECS = ("fig1_z3",)


def load_builtin_spec(name: str) -> SubshiftSpec:
    if name not in BUILTIN_SPECS:
        raise NatextError(f"unknown builtin spec {name!r}; have {BUILTIN_SPECS}")
    text = resources.files("natext.data").joinpath(f"{name}.json").read_text()
    return spec_from_json(json.loads(text))
