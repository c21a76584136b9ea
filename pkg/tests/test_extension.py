"""Ball solving, emptiness certificates, pins, and surjectivity windows."""

import itertools
import json
import random

import pytest

from natext.carriers import FreeCarrier, GridCarrier
from natext.cayley import build_ball
from natext.errors import EtaCollision, NoRelatorList
from natext.extension import (
    all_solutions,
    build_problem,
    check_empty,
    check_point_extensible,
    check_surjective_up_to,
    default_s_window,
    hom_obstruction,
    pin_pattern,
    pushforward_forbidden,
    solve,
    solve_ball,
    unsat_core,
    verify_witness,
)
from natext.groups import (
    FiniteGroup,
    eta_apply,
    sgroup_bs,
    sgroup_bs12,
    sgroup_free,
    sgroup_zd,
)
from natext.subshift import (
    coset_subshift,
    load_builtin_spec,
    make_pattern,
    nn_spec,
    nn_view,
    pattern_spec,
)


def golden_spec(carrier_kind="grid"):
    return nn_spec(("0", "1"), ("s",), [[(0, 0), (0, 1), (1, 0)]],
                   carrier_kind=carrier_kind)


def full_shift(k, gen_names, carrier_kind="free"):
    pairs = [(i, j) for i in range(k) for j in range(k)]
    return nn_spec(tuple(str(i) for i in range(k)), gen_names,
                   [pairs] * len(gen_names), carrier_kind=carrier_kind)


# ---------------------------------------------------------------------------
# the mod-3 successor rule pushed to the dyadic affine group is empty


def test_mod3_rule_empty_over_dyadic_affine():
    sg = sgroup_bs12()
    spec = load_builtin_spec("fig1_z3")
    rep = check_empty(sg, spec, 4)
    assert rep.verdict == "EmptyProven"
    assert rep.radius == 3
    assert rep.core["size"] == 6
    assert rep.core["indices"] == [0, 1, 2, 6, 8, 22]
    assert rep.core["elements"] == ["1", "a", "b", "b a", "a b", "a^-1 b a"]
    assert rep.obstruction["status"] == "Obstructed"
    assert rep.obstruction["relator_images"] == [[2, 0, 1]]
    assert rep.obstruction["certified_empty"] is True


def test_empty_core_is_deletion_minimal():
    sg = sgroup_bs12()
    spec = load_builtin_spec("fig1_z3")
    ball = build_ball(sg, 3)
    problem = build_problem(sg, spec, ball)
    assert solve(problem) is None
    core = unsat_core(problem)
    assert solve(problem, subset=core) is None
    for i in core:
        rest = [j for j in core if j != i]
        assert solve(problem, subset=rest) is not None


def test_emptiness_is_monotone_in_radius():
    # once a radius is unsatisfiable every larger ball stays unsatisfiable
    sg = sgroup_bs12()
    spec = load_builtin_spec("fig1_z3")
    rep = solve_ball(sg, spec, build_ball(sg, 4))
    assert rep.verdict == "EmptyProven"
    assert rep.core["size"] >= 1


def test_mod3_rule_survives_over_free_group():
    sg = sgroup_free(2)
    spec = load_builtin_spec("fig1_z3")
    rep = check_empty(sg, spec, 5)
    assert rep.verdict == "ConsistentUpTo"
    assert rep.radius == 5
    assert rep.certified_nonempty
    assert rep.obstruction["status"] == "Unobstructed"
    assert rep.witness is not None


def test_obstruction_images():
    fig1 = load_builtin_spec("fig1_z3")
    # free receiving group has an empty relator list, every image trivial
    free = hom_obstruction(sgroup_free(2), fig1)
    assert free["status"] == "Unobstructed"
    assert free["relator_images"] == []
    assert free["certified_nonempty"]
    # parity swap on both generators commutes with itself
    par = nn_spec(("0", "1"), ("a", "b"),
                  [[(0, 1), (1, 0)], [(0, 1), (1, 0)]], carrier_kind="grid")
    ob = hom_obstruction(sgroup_zd(2), par)
    assert ob["status"] == "Unobstructed"
    assert ob["relator_images"] == [[0, 1]]
    rep = check_empty(sgroup_zd(2), par, 3)
    assert rep.verdict == "ConsistentUpTo"
    assert rep.certified_nonempty


def test_obstruction_needs_relator_list():
    # finite receivers given by table only carry no relator list
    from natext.groups import sgroup_finite

    sg = sgroup_finite(FiniteGroup.cyclic(3), [1, 2])
    with pytest.raises(NoRelatorList):
        hom_obstruction(sg, load_builtin_spec("fig1_z3"))
    rep = check_empty(sg, load_builtin_spec("fig1_z3"), 2)
    assert rep.obstruction["status"] == "NoRelatorList"


def test_obstruction_not_applicable_to_non_permutation_rules():
    ob = hom_obstruction(sgroup_zd(1, names=("s",)), golden_spec())
    assert ob["applicable"] is False
    assert ob["status"] == "NotApplicable"


def test_empty_never_proven_on_satisfiable_systems():
    # full shifts, the golden mean rule on the line, unobstructed cosets
    assert check_empty(sgroup_bs12(), full_shift(2, ("a", "b")), 3).verdict \
        == "ConsistentUpTo"
    assert check_empty(sgroup_zd(1, names=("s",)), golden_spec(), 4).verdict \
        == "ConsistentUpTo"
    sg = sgroup_bs12()
    s3 = FiniteGroup.symmetric(3)
    names = list(s3.names)
    phi = [names.index("102"), names.index("210")]
    spec, _, _ = coset_subshift(s3, phi, ("a", "b"), sg.presentation)
    rep = check_empty(sg, spec, 3)
    assert rep.verdict == "ConsistentUpTo"
    assert rep.certified_nonempty


# ---------------------------------------------------------------------------
# pinned patterns


def test_pinned_word_extends_on_the_line():
    sg = sgroup_zd(1, names=("s",))
    spec = golden_spec()
    pat = make_pattern(GridCarrier(1),
                       [((0,), 1), ((1,), 0), ((2,), 1), ((3,), 0)])
    rep = check_point_extensible(sg, spec, pat, 6)
    assert rep.verdict == "PointExtendsUpTo"
    assert rep.detail["pinned_cells"] == 4
    assert len(rep.witness) == 13
    assert rep.witness["1"] == "1"


def test_pin_fails_inside_proven_empty_system():
    sg = sgroup_bs12()
    spec = load_builtin_spec("fig1_z3")
    pat = make_pattern(FreeCarrier(2), [((), 0)])
    rep = check_point_extensible(sg, spec, pat, 3)
    assert rep.verdict == "PointFailsAt"
    assert rep.detail["pinned_cells"] == 1


def test_empty_pattern_means_any_coloring():
    sg = sgroup_zd(1, names=("s",))
    spec = golden_spec()
    rep = check_point_extensible(sg, spec, make_pattern(GridCarrier(1), []), 2)
    assert rep.verdict == "PointExtendsUpTo"
    assert rep.detail["pinned_cells"] == 0


def test_pin_detects_eta_collisions():
    # a b and b b a share their image in the presented group, values clash
    sg = sgroup_bs(1, 2)
    spec = load_builtin_spec("fig1_z3")
    ball = build_ball(sg, 3)
    pat = make_pattern(FreeCarrier(2), [((0, 1), 0), ((1, 1, 0), 1)])
    with pytest.raises(EtaCollision):
        pin_pattern(sg, spec, ball, pat)
    # matching values collapse to a single pin
    ok = make_pattern(FreeCarrier(2), [((0, 1), 2), ((1, 1, 0), 2)])
    pins = pin_pattern(sg, spec, ball, ok)
    assert len(pins) == 1
    assert set(pins.values()) == {2}


def test_pushforward_golden_mean_to_the_integers():
    # forbidden word 11 on cells {0, 1} of N stays forbidden 11 on {0, 1} of Z
    sg = sgroup_zd(1, names=("s",))
    pat = make_pattern(GridCarrier(1), [((0,), 1), ((1,), 1)])
    spec = pattern_spec(("0", "1"), ("s",), [pat], carrier_kind="grid")
    tpl = pushforward_forbidden(sg, spec)
    assert tpl["kind"] == "forbidden"
    assert len(tpl["patterns"]) == 1
    pushed = tpl["patterns"][0]
    assert [g.payload for g in pushed["domain"]] == [(0,), (1,)]
    assert pushed["values"] == (1, 1)


def test_pushforward_attaches_pairs_to_generator_images():
    sg = sgroup_bs12()
    spec = load_builtin_spec("fig1_z3")
    tpl = pushforward_forbidden(sg, spec)
    assert tpl["kind"] == "edge_pairs"
    by_gen = {e["generator"]: e for e in tpl["edges"]}
    assert set(by_gen) == {"a", "b"}
    assert by_gen["a"]["image"] == eta_apply(sg, (0,))
    assert by_gen["b"]["image"] == eta_apply(sg, (1,))
    # successor rule rides the a-edges, double successor the b-edges
    assert by_gen["a"]["allowed"] == [(0, 1), (1, 2), (2, 0)]
    assert by_gen["b"]["allowed"] == [(0, 2), (1, 0), (2, 1)]


def test_pushforward_of_empty_forbidden_set_is_unconstrained():
    sg = sgroup_zd(1, names=("s",))
    spec = pattern_spec(("0", "1"), ("s",), [], carrier_kind="grid")
    tpl = pushforward_forbidden(sg, spec)
    assert tpl["patterns"] == []


def test_pushforward_detects_eta_collisions():
    # a b and b b a share their image in the presented group
    sg = sgroup_bs(1, 2)
    clash = make_pattern(FreeCarrier(2), [((0, 1), 0), ((1, 1, 0), 1)])
    spec = pattern_spec(("0", "1"), ("a", "b"), [clash], carrier_kind="free")
    with pytest.raises(EtaCollision):
        pushforward_forbidden(sg, spec)
    # matching values merge into a single template cell
    fold = make_pattern(FreeCarrier(2), [((0, 1), 1), ((1, 1, 0), 1)])
    spec = pattern_spec(("0", "1"), ("a", "b"), [fold], carrier_kind="free")
    tpl = pushforward_forbidden(sg, spec)
    assert len(tpl["patterns"][0]["domain"]) == 1
    assert tpl["patterns"][0]["values"] == (1,)


def test_solve_ball_verdicts():
    sg = sgroup_zd(1, names=("s",))
    spec = golden_spec()
    ball = build_ball(sg, 4)
    free_rep = solve_ball(sg, spec, ball)
    assert free_rep.verdict == "Witness"
    base = make_pattern(GridCarrier(1), [((0,), 1), ((1,), 1)])
    pinned = solve_ball(sg, spec, ball, base=base)
    assert pinned.verdict == "NoExtensionAt"
    assert pinned.core["size"] >= 2


def test_golden_mean_ball_solution_count():
    sg = sgroup_zd(1, names=("s",))
    ball = build_ball(sg, 4)
    problem = build_problem(sg, golden_spec(), ball)
    sols = all_solutions(problem)
    # 9 cells of the line, no adjacent ones: Fibonacci count
    assert len(sols) == 89
    for sol in sols[:5]:
        assert verify_witness(problem, sol)


def test_verify_witness_rejects_corruption():
    sg = sgroup_zd(1, names=("s",))
    ball = build_ball(sg, 3)
    problem = build_problem(sg, golden_spec(), ball)
    sol = solve(problem)
    assert verify_witness(problem, sol)
    bad = dict(sol)
    bad[0] = 1
    bad[1] = 1
    assert not verify_witness(problem, bad)
    # a pin violation alone also sinks the check: zeros satisfy every
    # golden mean pair, so only the pin is broken here
    pinned = build_problem(sg, golden_spec(), ball, pins={0: 0})
    broken = {i: 0 for i in range(ball.size)}
    broken[0] = 1
    for u, _, v in ball.positive_edges():
        if u == 0 or v == 0:
            broken[u if u != 0 else v] = 0
    assert not verify_witness(pinned, broken)


# ---------------------------------------------------------------------------
# surjectivity windows


def test_default_windows():
    assert default_s_window(golden_spec(), 3) == [(0,), (1,), (2,)]
    fig1 = load_builtin_spec("fig1_z3")
    assert default_s_window(fig1, 2) == [(), (0,), (1,)]
    # two-sided grid windows reach negative cells
    two_sided = default_s_window(golden_spec(carrier_kind="grid-z"), 2)
    assert set(two_sided) == {(-1,), (0,), (1,)}


def test_surjective_golden_mean_on_the_line():
    sg = sgroup_zd(1, names=("s",))
    spec = golden_spec()
    rep = check_surjective_up_to(sg, spec, 3)
    assert rep.verdict == "SurjectiveUpTo"
    assert rep.detail["admissible_patterns"] == 5
    assert rep.detail["window"] == ["(0)", "(1)", "(2)"]
    wide = check_surjective_up_to(sg, spec, 5, s_window=[(0,), (1,), (2,)])
    assert wide.verdict == "SurjectiveUpTo"
    assert wide.detail["admissible_patterns"] == 5


def test_surjective_mod3_rule_over_free_group():
    rep = check_surjective_up_to(sgroup_free(2), load_builtin_spec("fig1_z3"), 2)
    assert rep.verdict == "SurjectiveUpTo"
    assert rep.detail["window"] == ["1", "a", "b"]
    assert rep.detail["admissible_patterns"] == 3


def test_not_surjective_when_system_is_empty():
    sg = sgroup_bs12()
    z3 = FiniteGroup.cyclic(3)
    spec, _, _ = coset_subshift(z3, [1, 2], ("a", "b"))
    rep = check_surjective_up_to(sg, spec, 3, s_window=["1"])
    assert rep.verdict == "NotSurjectiveAt"
    assert rep.detail["admissible_patterns"] == 3
    assert rep.detail["failed_patterns"] == 3
    assert rep.detail["first_failure"] == {"1": "0"}


def test_not_surjective_sink_value():
    # successors are always 0 and nothing precedes a 1, so a lone 1 is
    # locally admissible on the window but extends to no ball coloring
    spec = nn_spec(("0", "1"), ("s",), [[(0, 0), (1, 0)]], carrier_kind="free")
    rep = check_surjective_up_to(sgroup_zd(1, names=("s",)), spec, 1)
    assert rep.verdict == "NotSurjectiveAt"
    assert rep.detail["window"] == ["1"]
    assert rep.detail["admissible_patterns"] == 2
    assert rep.detail["failed_patterns"] == 1
    assert rep.detail["first_failure"] == {"1": "1"}


# ---------------------------------------------------------------------------
# agreement with plain enumeration, and determinism


def brute_force_satisfiable(ball, spec):
    allowed = nn_view(spec)
    edges = [(u, g, v) for u, g, v in ball.positive_edges()]
    k = spec.n_values
    n = ball.size
    for colors in itertools.product(range(k), repeat=n):
        if all((colors[u], colors[v]) in allowed[g] for u, g, v in edges):
            return True
    return False


def test_solver_matches_enumeration_on_random_rules():
    rng = random.Random(20260816)
    groups = [
        (sgroup_zd(1, names=("s",)), 1, 3),
        (sgroup_zd(2), 2, 1),
        (sgroup_free(2), 2, 1),
        (sgroup_bs12(), 2, 1),
    ]
    checked = 0
    for case in range(60):
        sg, n_gens, r = groups[case % len(groups)]
        k = rng.choice([2, 2, 3])
        names = ("a", "b")[:n_gens] if n_gens > 1 else ("s",)
        allowed = []
        for _ in range(n_gens):
            pairs = [(i, j) for i in range(k) for j in range(k)
                     if rng.random() < 0.45]
            allowed.append(pairs)
        spec = nn_spec(tuple(str(i) for i in range(k)), names, allowed,
                       carrier_kind="free")
        ball = build_ball(sg, r)
        if ball.size > 10:
            continue
        rep = solve_ball(sg, spec, ball)
        expected = brute_force_satisfiable(ball, spec)
        assert (rep.verdict == "Witness") == expected, (case, spec.allowed)
        checked += 1
    assert checked >= 50


def test_reports_are_deterministic():
    sg = sgroup_bs12()
    spec = load_builtin_spec("fig1_z3")
    a = json.dumps(check_empty(sg, spec, 4).to_json(), sort_keys=True)
    b = json.dumps(check_empty(sg, spec, 4).to_json(), sort_keys=True)
    assert a == b
    sa = check_surjective_up_to(sg, load_builtin_spec("fig1_z3"), 2)
    sb = check_surjective_up_to(sg, load_builtin_spec("fig1_z3"), 2)
    assert json.dumps(sa.to_json(), sort_keys=True) \
        == json.dumps(sb.to_json(), sort_keys=True)
