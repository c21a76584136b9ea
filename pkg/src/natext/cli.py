"""Command-line front end.

Every command prints one JSON document (sorted keys, no timestamps) so
runs are byte-for-byte reproducible.  Report directories given with
--out receive the machine-readable files plus rendered figures.
"""

from __future__ import annotations

import json
import os
import re
import sys
from dataclasses import dataclass

import click

from . import registry as _registry
from .cayley import build_ball, export_dot
from .dynamics import eigen_entropy, entropy_summary
from .errors import NatextError, UnknownExample
from .extension import check_empty, solve_ball
from .groups import (
    FiniteGroup,
    free_s_group_of,
    grothendieck_group,
    sgroup_bs,
    sgroup_bs12,
    sgroup_finite,
    sgroup_free,
    sgroup_zd,
)
from .report import (
    core_figure,
    dumps,
    ensure_dir,
    entropy_csv,
    entropy_figure,
    write_json,
)
from .reversibility import check_fractions_by_subshift, left_reversible_bounded
from .subshift import BUILTIN_SPECS, load_builtin_spec, load_spec, make_pattern
from .words import parse_presentation

_BS_RE = re.compile(r"^BS\((\d+),(\d+)\)$")


def parse_group(name: str, pres: str | None = None,
                budget: int | None = None):
    """Receiving group by name: Z^d, F_n, BS(m,n), finite:<file>, generic."""
    name = name.strip()
    if name == "Z" or name.startswith("Z^"):
        d = 1 if name == "Z" else int(name[2:])
        return sgroup_zd(d)
    if name.startswith("F_"):
        return sgroup_free(int(name[2:]))
    m = _BS_RE.match(name)
    if m:
        mm, nn = int(m.group(1)), int(m.group(2))
        if (mm, nn) == (1, 2):
            return sgroup_bs12()
        return sgroup_bs(mm, nn)
    if name.startswith("finite:"):
        with open(name[len("finite:"):], encoding="utf-8") as fh:
            data = json.load(fh)
        group = FiniteGroup(
            tuple(tuple(row) for row in data["table"]),
            tuple(data["names"]),
        )
        p = None
        if data.get("presentation"):
            p = parse_presentation(data["presentation"])
        return sgroup_finite(group, data["eta"], presentation=p,
                             name=data.get("name"))
    if name == "generic":
        if not pres:
            raise NatextError("generic group needs --pres")
        return free_s_group_of(parse_presentation(pres), budget=budget)
    raise NatextError(
        f"unknown group {name!r}; use Z^d, F_n, BS(m,n), finite:<file>, generic"
    )


def load_spec_arg(spec: str):
    """Spec from a file path or a builtin:<name> reference."""
    if spec.startswith("builtin:"):
        return load_builtin_spec(spec[len("builtin:"):])
    if not os.path.exists(spec):
        base = os.path.basename(spec)
        if base.endswith(".json"):
            base = base[: -len(".json")]
        if base in BUILTIN_SPECS:
            return load_builtin_spec(base)
        raise NatextError(f"spec file {spec!r} not found")
    return load_spec(spec)


def load_pattern_file(path: str, spec):
    """Pattern JSON {"cells": [[cell, value], ...]}.

    Cells are carrier cells (grid: coordinate lists; free: words like
    "a b" or "1"); values are alphabet labels or indices.
    """
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    carrier = spec.carrier()
    items = []
    for cell, val in data["cells"]:
        if isinstance(cell, int):
            cell = [cell]
        c = carrier.parse_cell(cell, spec.gen_names)
        v = val if isinstance(val, int) else spec.value_index(val)
        items.append((c, v))
    return make_pattern(carrier, items)


def echo_json(obj) -> None:
    click.echo(dumps(obj))


def _core_outputs(sg, spec, report_json, out=None, dot_path=None):
    """Render the contradiction core (DOT and figure) when one exists."""
    core = report_json.get("core")
    if not core:
        return
    ball = build_ball(sg, report_json["radius"])
    idx = core["indices"]
    dot = export_dot(ball, highlight=idx, restrict=idx)
    if dot_path:
        with open(dot_path, "w", encoding="utf-8") as fh:
            fh.write(dot)
    if out:
        with open(os.path.join(out, "core.dot"), "w", encoding="utf-8") as fh:
            fh.write(dot)
        core_figure(ball, idx, os.path.join(out, "core.png"),
                    title=f"contradiction core, radius {report_json['radius']}")


class _Fail(click.ClickException):
    exit_code = 1


def _run(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except NatextError as exc:
        raise _Fail(str(exc)) from exc
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise _Fail(str(exc)) from exc


@dataclass(frozen=True)
class RunConfig:
    """Bounds and output choices for one command invocation.

    Every bound is at least 1; None leaves the choice to the engine.
    """

    max_radius: int = 4
    budget: int | None = None
    length: int = 3
    n_max: int = 10
    search_radius: int | None = None
    out: str | None = None
    output: str | None = None
    log_base: str = "e"

    def __post_init__(self):
        for name in ("max_radius", "length", "n_max"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        for name in ("budget", "search_radius"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be at least 1")


@click.group()
@click.option("--budget", type=int, default=None,
              help="Word-equality search budget (overrides NATEXT_BUDGET).")
@click.pass_context
def main(ctx, budget):
    """Semigroup actions, their receiving groups, and group subshifts."""
    if budget is None:
        env = os.environ.get("NATEXT_BUDGET")
        budget = int(env) if env else None
    ctx.obj = _run(RunConfig, budget=budget)


@main.command("check-empty")
@click.option("--spec", "spec_arg", required=True,
              help="Subshift spec file or builtin:<name>.")
@click.option("--group", "group_arg", required=True,
              help="Receiving group name.")
@click.option("--max-radius", type=int, default=4, show_default=True)
@click.option("--pres", default=None,
              help="Presentation text for --group generic.")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Directory for report.json and core figures.")
@click.pass_context
def cmd_check_empty(ctx, spec_arg, group_arg, max_radius, pres, out):
    """Prove ball-emptiness or report consistency up to a radius."""
    cfg = _run(RunConfig, budget=ctx.obj.budget, max_radius=max_radius,
               out=out)
    sg = _run(parse_group, group_arg, pres, cfg.budget)
    spec = _run(load_spec_arg, spec_arg)
    rep = _run(check_empty, sg, spec, cfg.max_radius).to_json()
    echo_json(rep)
    if cfg.out:
        ensure_dir(cfg.out)
        write_json(rep, os.path.join(cfg.out, "report.json"))
        _run(_core_outputs, sg, spec, rep, out=cfg.out)


@main.command("extend")
@click.option("--spec", "spec_arg", required=True)
@click.option("--group", "group_arg", required=True)
@click.option("--radius", type=int, default=3, show_default=True)
@click.option("--pattern", "pattern_path",
              type=click.Path(exists=True, dir_okay=False), default=None,
              help="Base pattern JSON; omitted means any coloring.")
@click.option("--dot-core", "dot_core",
              type=click.Path(dir_okay=False), default=None,
              help="Write the contradiction core subgraph as DOT here.")
@click.option("--pres", default=None)
@click.option("--out", type=click.Path(file_okay=False), default=None)
@click.pass_context
def cmd_extend(ctx, spec_arg, group_arg, radius, pattern_path, dot_core,
               pres, out):
    """Solve one ball, optionally around a pinned base pattern."""
    cfg = _run(RunConfig, budget=ctx.obj.budget, max_radius=radius, out=out)
    sg = _run(parse_group, group_arg, pres, cfg.budget)
    spec = _run(load_spec_arg, spec_arg)
    base = _run(load_pattern_file, pattern_path, spec) if pattern_path else None
    ball = _run(build_ball, sg, cfg.max_radius)
    rep = _run(solve_ball, sg, spec, ball, base).to_json()
    echo_json(rep)
    _run(_core_outputs, sg, spec, rep, dot_path=dot_core)
    if cfg.out:
        ensure_dir(cfg.out)
        write_json(rep, os.path.join(cfg.out, "report.json"))
        _run(_core_outputs, sg, spec, rep, out=cfg.out)


@main.command("reversible")
@click.option("--pres", required=True, help="Semigroup presentation text.")
@click.option("--length", type=int, default=3, show_default=True)
@click.pass_context
def cmd_reversible(ctx, pres, length):
    """Search generator cones for common right multiples."""
    cfg = _run(RunConfig, budget=ctx.obj.budget, length=length)
    p = _run(parse_presentation, pres)
    kwargs = {"budget": cfg.budget} if cfg.budget else {}
    rep = _run(left_reversible_bounded, p, cfg.length, **kwargs)
    rep = {"schema": 1, **rep}
    echo_json(rep)


@main.command("fractions-test")
@click.option("--group", "group_arg", default=None)
@click.option("--pres", default=None,
              help="Presentation for the free receiving group.")
@click.option("-r", "--radius", type=int, default=1, show_default=True)
@click.option("--search-radius", type=int, default=None)
@click.pass_context
def cmd_fractions(ctx, group_arg, pres, radius, search_radius):
    """Is every ball bounded below through the positive cone?"""
    cfg = _run(RunConfig, budget=ctx.obj.budget, max_radius=radius,
               search_radius=search_radius)
    if group_arg:
        sg = _run(parse_group, group_arg, pres, cfg.budget)
    elif pres:
        sg = _run(free_s_group_of, parse_presentation(pres),
                  budget=cfg.budget)
    else:
        raise _Fail("need --group or --pres")
    rep = _run(check_fractions_by_subshift, sg, cfg.max_radius,
               cfg.search_radius)
    echo_json(rep.to_json())


@main.command("grothendieck")
@click.option("--pres", required=True)
@click.option("--declared-commutative", is_flag=True, default=False,
              help="Trust commutativity even without commutation relations.")
def cmd_grothendieck(pres, declared_commutative):
    """Group completion of a commutative presented semigroup."""
    p = _run(parse_presentation, pres)
    st = _run(grothendieck_group, p, declared_commutative)
    echo_json({
        "schema": 1,
        "presentation": p.format(),
        "rank": st.rank,
        "torsion": list(st.torsion),
        "generator_images": [
            {"free": list(f), "torsion": list(t)} for f, t in st.gen_images
        ],
    })


@main.command("entropy")
@click.option("--spec", "spec_arg", required=True)
@click.option("--n-max", type=int, default=10, show_default=True)
@click.option("--log-base", default="e", show_default=True,
              help="Display base for the echoed values; data stays natural.")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Directory for entropy.csv, summary.json, entropy.png.")
def cmd_entropy(spec_arg, n_max, log_base, out):
    """Window growth-rate series over Folner windows."""
    cfg = _run(RunConfig, n_max=n_max, log_base=log_base, out=out)
    spec = _run(load_spec_arg, spec_arg)
    summary = _run(entropy_summary, spec, cfg.n_max)
    reference = None
    try:
        reference = eigen_entropy(spec)
        summary["matrix_oracle"] = reference
    except NatextError:
        pass
    if cfg.log_base != "e":
        import math

        base = float(cfg.log_base)
        scale = 1.0 / math.log(base)
        display = {"log_base": base,
                   "summary_value": summary["summary_value"] * scale}
        if reference is not None:
            display["matrix_oracle"] = reference * scale
        summary["display"] = display
    echo_json(summary)
    if cfg.out:
        ensure_dir(cfg.out)
        write_json(summary, os.path.join(cfg.out, "summary.json"))
        entropy_csv(summary, os.path.join(cfg.out, "entropy.csv"))
        entropy_figure(summary, os.path.join(cfg.out, "entropy.png"),
                       reference=reference)


@main.command("export-dot")
@click.option("--group", "group_arg", required=True)
@click.option("--radius", type=int, default=2, show_default=True)
@click.option("--pres", default=None)
@click.option("--approx", is_flag=True, default=False,
              help="Allow unresolved equality on generic engines.")
@click.option("-o", "--output", type=click.Path(dir_okay=False),
              required=True)
@click.pass_context
def cmd_export_dot(ctx, group_arg, radius, pres, approx, output):
    """Write the Cayley ball's signed-edge graph as DOT."""
    cfg = _run(RunConfig, budget=ctx.obj.budget, max_radius=radius,
               output=output)
    sg = _run(parse_group, group_arg, pres, cfg.budget)
    ball = _run(build_ball, sg, cfg.max_radius, approx=approx)
    with open(cfg.output, "w", encoding="utf-8") as fh:
        fh.write(export_dot(ball))
    click.echo(dumps({"schema": 1, "ball_size": ball.size,
                      "output": str(cfg.output), "radius": cfg.max_radius}))


@main.group("examples")
def cmd_examples():
    """Built-in worked examples with expected verdicts."""


@cmd_examples.command("list")
def cmd_examples_list():
    """Names, anchors, and one-line summaries."""
    echo_json({"schema": 1, "examples": _registry.list_examples()})


@cmd_examples.command("run")
@click.argument("name")
def cmd_examples_run(name):
    """Run one example; exit 1 unless every expected value matched."""
    try:
        rep = _registry.run_example(name)
    except UnknownExample as exc:
        raise _Fail(str(exc)) from exc
    echo_json(rep)
    if not rep["pass"]:
        sys.exit(1)


@cmd_examples.command("run-all")
def cmd_examples_run_all():
    """Run every example; exit 1 on any mismatch."""
    rep = _registry.run_all(concurrent=True)
    echo_json(rep)
    if not rep["pass"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
