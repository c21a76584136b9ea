"""Named worked examples with self-checking expected values.

Each example builds its objects from scratch, computes the reported
quantities, and compares them against frozen expected values; run
reports carry the data and a pass flag with any failure messages.
Everything here is deterministic, so repeated runs are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cayley import build_ball
from .dynamics import eigen_entropy, entropy_compare, entropy_summary
from .errors import UnknownExample
from .extension import (
    all_solutions,
    build_problem,
    check_empty,
    check_surjective_up_to,
)
from .groups import (
    FiniteGroup,
    bs23_affine_sgroup,
    endomorphism_apply,
    eta_apply,
    grothendieck_group,
    sgroup_bs,
    sgroup_bs12,
    sgroup_free,
    sgroup_zd,
)
from .reversibility import check_fractions_by_subshift, left_reversible_bounded
from .subshift import (
    GridCarrier,
    check_minimal,
    check_surjective_finite,
    check_transitive,
    check_transitive_matrix,
    coset_subshift,
    load_builtin_spec,
    make_pattern,
    nn_spec,
    pattern_spec,
)
from .words import TriState, parse_presentation, words_equal_bounded


@dataclass(frozen=True)
class ExampleDescriptor:
    name: str
    anchor: str
    summary: str
    runner: object


def _expect(failures, label, got, want):
    if got != want:
        failures.append(f"{label}: got {got!r}, expected {want!r}")
    return got


def _golden_spec():
    car = GridCarrier(1)
    forbidden = make_pattern(car, [((0,), 1), ((1,), 1)])
    return pattern_spec(("0", "1"), ("s",), [forbidden], carrier_kind="grid")


def _golden_nn():
    return nn_spec(("0", "1"), ("s",), [[(0, 0), (0, 1), (1, 0)]],
                   carrier_kind="grid")


def _run_fig1_bs12():
    failures = []
    sg = sgroup_bs12()
    spec = load_builtin_spec("fig1_z3")
    rep = check_empty(sg, spec, 4)
    _expect(failures, "verdict", rep.verdict, "EmptyProven")
    _expect(failures, "radius", rep.radius, 3)
    _expect(failures, "core size", rep.core["size"], 6)
    _expect(failures, "core elements", sorted(rep.core["elements"]),
            sorted(["1", "a", "b", "b a", "a b", "a^-1 b a"]))
    _expect(failures, "obstruction", rep.obstruction["status"], "Obstructed")
    _expect(failures, "relator image", rep.obstruction["relator_images"], [[2, 0, 1]])
    _expect(failures, "certified empty", rep.obstruction["certified_empty"], True)
    return rep.to_json(), failures


def _run_fig1_free():
    failures = []
    sg = sgroup_free(2)
    spec = load_builtin_spec("fig1_z3")
    rep = check_empty(sg, spec, 4)
    _expect(failures, "verdict", rep.verdict, "ConsistentUpTo")
    _expect(failures, "certified nonempty", rep.certified_nonempty, True)
    _expect(failures, "obstruction", rep.obstruction["status"], "Unobstructed")
    return rep.to_json(), failures


def _run_coset_s3_bs12():
    failures = []
    sg = sgroup_bs12()
    s3 = FiniteGroup.symmetric(3)
    names = list(s3.names)
    phi = [names.index("102"), names.index("210")]  # two transpositions
    spec, action, warnings = coset_subshift(s3, phi, ("a", "b"),
                                            sg.presentation)
    rep = check_empty(sg, spec, 3)
    _expect(failures, "warnings", warnings, [])
    _expect(failures, "verdict", rep.verdict, "ConsistentUpTo")
    _expect(failures, "certified nonempty", rep.certified_nonempty, True)
    _expect(failures, "obstruction", rep.obstruction["status"], "Unobstructed")
    _expect(failures, "configuration count", action.size, 6)
    _expect(failures, "transitive", check_transitive(action), True)
    _expect(failures, "minimal", check_minimal(action), True)
    _expect(failures, "surjective", check_surjective_finite(action)["all"], True)
    data = rep.to_json()
    data["configurations"] = action.size
    data["transitive"] = check_transitive(action)
    data["minimal"] = check_minimal(action)
    return data, failures


def _run_nat_to_int_goldenmean():
    failures = []
    sg = sgroup_zd(1)
    spec = _golden_spec()
    rep = check_empty(sg, spec, 4)
    _expect(failures, "verdict", rep.verdict, "ConsistentUpTo")
    ball = build_ball(sg, 4)
    problem = build_problem(sg, spec, ball)
    sols = all_solutions(problem)
    _expect(failures, "segment count radius 4", len(sols), 89)
    cmp_ = entropy_compare(spec, spec, 10,
                           carrier_a=GridCarrier(1, nonneg=True),
                           carrier_b=GridCarrier(1, nonneg=False))
    _expect(failures, "half-line vs line counts", cmp_["counts_identical"], True)
    sur = check_surjective_up_to(sg, spec, 3)
    _expect(failures, "surjective", sur.verdict, "SurjectiveUpTo")
    data = rep.to_json()
    data["segment_count_radius_4"] = len(sols)
    data["window_counts_match"] = cmp_["counts_identical"]
    data["surjectivity"] = sur.to_json()
    return data, failures


def _run_fractions_z2():
    failures = []
    sg = sgroup_zd(2)
    rep = check_fractions_by_subshift(sg, 1)
    _expect(failures, "verdict", rep.verdict, "Directed")
    _expect(failures, "witness", rep.witness, "y x")
    return rep.to_json(), failures


def _run_fractions_f2():
    failures = []
    sg = sgroup_free(2)
    rep = check_fractions_by_subshift(sg, 1)
    _expect(failures, "verdict", rep.verdict, "FailsAt")
    return rep.to_json(), failures


def _run_reversible_f2plus():
    failures = []
    p = parse_presentation("gens: a b;")
    rep = left_reversible_bounded(p, 3)
    _expect(failures, "verdict", rep["verdict"], "NotLeftReversible")
    _expect(failures, "pair verdict", rep["pairs"]["a,b"]["verdict"],
            "DisjointProven")
    contrast = left_reversible_bounded(
        parse_presentation("gens: a b; rels: a b = b b a;"), 2
    )
    _expect(failures, "contrast verdict", contrast["verdict"],
            "LeftReversibleUpTo")
    return {"schema": 1, "free": rep, "one_relation_contrast": contrast}, failures


def _run_grothendieck_n2():
    failures = []
    p = parse_presentation("gens: x y; rels: x y = y x;")
    st = grothendieck_group(p)
    _expect(failures, "rank", st.rank, 2)
    _expect(failures, "torsion", st.torsion, ())
    _expect(failures, "generator images",
            tuple(img[0] for img in st.gen_images), ((1, 0), (0, 1)))
    return {
        "schema": 1,
        "presentation": p.format(),
        "rank": st.rank,
        "torsion": list(st.torsion),
        "generator_images": [
            {"free": list(f), "torsion": list(t)} for f, t in st.gen_images
        ],
    }, failures


def _run_bs23_endo():
    failures = []
    sg = sgroup_bs(2, 3)
    aff = bs23_affine_sgroup()
    p = sg.presentation
    # theta: a -> a, b -> b b; check it respects a b b = b b b a
    theta_words = ((0,), (1, 1))

    def theta_word(w):
        out = []
        for g in w:
            out.extend(theta_words[g])
        return tuple(out)

    lhs, rhs = p.relations[0]
    tl, tr = theta_word(lhs), theta_word(rhs)
    tri = words_equal_bounded(p, tl, tr, budget=4000)
    _expect(failures, "semigroup-level relation image",
            tri, TriState.EQUAL)
    gl, gr = eta_apply(sg, tl), eta_apply(sg, tr)
    _expect(failures, "normal forms agree", gl.payload == gr.payload, True)
    al, ar = eta_apply(aff, tl), eta_apply(aff, tr)
    _expect(failures, "affine images agree", al.payload == ar.payload, True)
    theta_elems = tuple(eta_apply(sg, w) for w in theta_words)
    sample = (1, 0)  # the word b a
    img = endomorphism_apply(theta_elems, sample)
    _expect(failures, "image of b a", str(img), "b^2 a")
    direct = eta_apply(sg, theta_word(sample))
    _expect(failures, "homomorphic fold matches substitution",
            img.payload == direct.payload, True)
    return {
        "schema": 1,
        "presentation": p.format(),
        "assignment": {"a": "a", "b": "b b"},
        "relation_image_equal": tri.value,
        "normal_form_left": str(gl),
        "normal_form_right": str(gr),
        "sample_word": "b a",
        "sample_image": str(img),
    }, failures


def _run_transitive_lift_goldenmean():
    failures = []
    spec = _golden_nn()
    transitive = check_transitive_matrix(spec)
    _expect(failures, "transitive", transitive, True)
    summ = entropy_summary(spec, 40)
    oracle = eigen_entropy(spec)
    gap = abs(summ["summary_value"] - oracle)
    if gap > 1e-3:
        failures.append(f"growth-rate gap {gap} above 1e-3")
    return {
        "schema": 1,
        "transitive": transitive,
        "summary_value": summ["summary_value"],
        "summary_method": summ["summary_method"],
        "matrix_oracle": oracle,
        "gap": gap,
    }, failures


REGISTRY = (
    ExampleDescriptor(
        "fig1-bs12",
        "mod-3 successor rule pushed to the dyadic affine group",
        "The two-generator mod-3 rule admits no configuration on the "
        "dyadic affine group: obstructed relator, empty at radius 3, "
        "six-cell core.",
        _run_fig1_bs12,
    ),
    ExampleDescriptor(
        "fig1-free",
        "mod-3 successor rule received in the free group",
        "The same rule on the free group stays consistent and is "
        "certified nonempty (no relators to obstruct).",
        _run_fig1_free,
    ),
    ExampleDescriptor(
        "coset-s3-bs12",
        "two-transposition coset rule on the dyadic affine group",
        "A coset rule over the order-6 symmetric group whose relator "
        "image vanishes: certified nonempty, transitive, minimal.",
        _run_coset_s3_bs12,
    ),
    ExampleDescriptor(
        "nat-to-int-goldenmean",
        "golden mean rule extended from the half-line to the line",
        "The no-adjacent-ones rule extends from N to Z with identical "
        "window counts and surjective shifts.",
        _run_nat_to_int_goldenmean,
    ),
    ExampleDescriptor(
        "fractions-test-z2",
        "directedness witness in the rank-two lattice",
        "Every radius-1 ball in Z^2 is bounded below through the "
        "positive cone; the scan finds the witness deterministically.",
        _run_fractions_z2,
    ),
    ExampleDescriptor(
        "fractions-test-f2",
        "directedness failure in the free group",
        "No group element right-translates the radius-1 ball of F_2 "
        "into the positive submonoid.",
        _run_fractions_f2,
    ),
    ExampleDescriptor(
        "reversible-f2plus",
        "disjoint generator cones in the free semigroup",
        "The free semigroup on two generators is provably not left "
        "reversible; a single defining relation restores common right "
        "multiples.",
        _run_reversible_f2plus,
    ),
    ExampleDescriptor(
        "grothendieck-n2",
        "group completion of the free commutative monoid on two letters",
        "The commutative monoid N^2 completes to Z^2 with the evident "
        "generator images.",
        _run_grothendieck_n2,
    ),
    ExampleDescriptor(
        "bs23-endo",
        "doubling endomorphism of the two-three exchange semigroup",
        "a -> a, b -> b^2 respects the exchange relation; normal forms "
        "and the rational-affine model agree on images.",
        _run_bs23_endo,
    ),
    ExampleDescriptor(
        "transitive-lift-goldenmean",
        "transitivity and growth rate of the golden mean line system",
        "The line extension of the golden mean rule is transitive and "
        "its summary growth rate matches the matrix oracle to 1e-3.",
        _run_transitive_lift_goldenmean,
    ),
)


def list_examples() -> list:
    return [
        {"name": d.name, "anchor": d.anchor, "summary": d.summary}
        for d in REGISTRY
    ]


def get_example(name: str) -> ExampleDescriptor:
    for d in REGISTRY:
        if d.name == name:
            return d
    raise UnknownExample(
        f"no example named {name!r}; known: {', '.join(d.name for d in REGISTRY)}"
    )


def run_example(name: str) -> dict:
    d = get_example(name)
    data, failures = d.runner()
    return {
        "schema": 1,
        "name": d.name,
        "anchor": d.anchor,
        "summary": d.summary,
        "pass": not failures,
        "failures": failures,
        "data": data,
    }


def run_all(concurrent: bool = False) -> dict:
    """Run every registered example; results keep registry order.

    Examples are independent pure computations, so concurrent dispatch
    changes timing only, never content.
    """
    if concurrent:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=4) as pool:
            results = list(pool.map(run_example, (d.name for d in REGISTRY)))
    else:
        results = [run_example(d.name) for d in REGISTRY]
    return {
        "schema": 1,
        "pass": all(r["pass"] for r in results),
        "results": results,
    }
