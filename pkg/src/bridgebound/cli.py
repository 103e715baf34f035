"""``bb`` command-line front end.

Exit status: 0 on success, 1 on a negative verdict (``verify``, ``exact``,
``cover``), 2 on usage, parse or limit errors.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

import click

from bridgebound.abstraction import (
    AlphaAbstraction,
    Cover,
    DefinitionError,
    abstract_with_exactness,
    compose,
    find_proper_cover,
    is_exact,
    snc,
    verify,
    wsc,
)
from bridgebound.files import read_definitions, read_facts, read_theory
from bridgebound.formula import Theory, render
from bridgebound.parser import ParseError, parse
from bridgebound.semantics import DEFAULT_MAX_ATOMS, VocabularyLimitError, query

COMMANDS = ("snc", "wsc", "abstract", "verify", "exact", "cover", "layer", "query")


class UsageProblem(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    source: str | None = None
    bridges: list[str] = field(default_factory=list)
    keeps: list[list[str]] = field(default_factory=list)
    drop: list[str] | None = None
    defs: str | None = None
    lower: str | None = None
    upper: str | None = None
    facts: str | None = None
    query: str | None = None
    json: bool = False
    max_atoms: int = DEFAULT_MAX_ATOMS

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageProblem(f"unknown command {self.command!r}")
        if self.command == "layer":
            return
        if self.keeps and self.drop is not None:
            raise UsageProblem("--keep and --drop are mutually exclusive")
        if len(self.keeps) > 1:
            raise UsageProblem(f"{self.command} takes a single --keep")
        if len(self.bridges) > 1:
            raise UsageProblem(f"{self.command} takes a single -b")


def _split_atoms(value: str | None) -> list[str]:
    if not value:
        return []
    return [a.strip() for a in value.split(",") if a.strip()]


def _world_text(w) -> str:
    return ", ".join(f"{a}={'true' if v else 'false'}" for a, v in sorted(w.items()))


def _cover_json(cover: Cover | None):
    if cover is None:
        return None
    return [
        {
            "formula": e.formula_index,
            "position": list(e.position),
            "head": e.head,
            "subformula": render(e.subformula),
        }
        for e in cover
    ]


def _require(value, flag: str, command: str):
    if value is None:
        raise UsageProblem(f"{command} requires {flag}")
    return value


class _Runner:
    def __init__(self, config: RunConfig):
        self.c = config
        self.inputs: dict = {}

    def theory(self, path: str | None, key: str, flag: str) -> Theory:
        path = _require(path, flag, self.c.command)
        self.inputs[key] = path
        return read_theory(path)

    def optional_theory(self, path: str | None, key: str) -> Theory:
        if path is None:
            return Theory()
        self.inputs[key] = path
        return read_theory(path)

    def keep(self, *theories: Theory) -> frozenset[str]:
        c = self.c
        if c.drop is not None:
            pool = frozenset().union(*(t.vocabulary() for t in theories))
            keep = pool - frozenset(c.drop)
            self.inputs["drop"] = sorted(c.drop)
        elif c.keeps:
            keep = frozenset(c.keeps[0])
        else:
            raise UsageProblem(f"{c.command} requires --keep or --drop")
        self.inputs["keep"] = sorted(keep)
        return keep

    def run(self) -> tuple[int, dict, list[str]]:
        return getattr(self, "cmd_" + self.c.command)()

    def cmd_snc(self):
        s = self.theory(self.c.source, "source", "-s")
        b = self.optional_theory(self.c.bridges[0] if self.c.bridges else None, "bridge")
        f = snc(s, b, self.keep(s, b), max_atoms=self.c.max_atoms)
        return 0, {"upper": render(f)}, [f"snc: {render(f)}"]

    def cmd_wsc(self):
        s = self.theory(self.c.source, "source", "-s")
        b = self.optional_theory(self.c.bridges[0] if self.c.bridges else None, "bridge")
        f = wsc(s, b, self.keep(s, b), max_atoms=self.c.max_atoms)
        return 0, {"lower": render(f)}, [f"wsc: {render(f)}"]

    def cmd_abstract(self):
        s = self.theory(self.c.source, "source", "-s")
        defs = None
        if self.c.defs is not None:
            self.inputs["defs"] = self.c.defs
            defs = read_definitions(self.c.defs)
        if self.c.bridges:
            b = self.theory(self.c.bridges[0], "bridge", "-b")
        elif defs is not None:
            b = defs.as_theory()
        else:
            b = Theory()
        res = abstract_with_exactness(
            s, b, self.keep(s, b), defs, max_atoms=self.c.max_atoms
        )
        a = res.abstraction
        data = {
            "lower": render(a.lower_formula),
            "upper": render(a.upper_formula),
            "exact": res.exact,
        }
        lines = [
            f"lower: {data['lower']}",
            f"upper: {data['upper']}",
            f"exact: {'true' if res.exact else 'false'}",
        ]
        if defs is not None:
            data["cover"] = _cover_json(res.cover)
            if res.cover is None:
                lines.append("cover: none")
            else:
                lines.extend(f"cover: {e.describe()}" for e in res.cover)
        return 0, data, lines

    def _candidate(self, keep: Sequence[str] | None) -> AlphaAbstraction:
        lo = self.theory(self.c.lower, "lower", "--lower")
        up = self.theory(self.c.upper, "upper", "--upper")
        vocab = frozenset(keep) if keep else lo.vocabulary() | up.vocabulary()
        return AlphaAbstraction(lo, up, vocab)

    def cmd_verify(self):
        s = self.theory(self.c.source, "source", "-s")
        b = self.optional_theory(self.c.bridges[0] if self.c.bridges else None, "bridge")
        if self.c.keeps:
            self.inputs["keep"] = sorted(self.c.keeps[0])
        cand = self._candidate(self.c.keeps[0] if self.c.keeps else None)
        rep = verify(s, b, cand, max_atoms=self.c.max_atoms)
        w = rep.counterexample_world
        data = {
            "lower": render(cand.lower_formula),
            "upper": render(cand.upper_formula),
            "lower_ok": rep.lower_ok,
            "upper_ok": rep.upper_ok,
            "exact": rep.exact,
            "counterexample": dict(w) if w is not None else None,
        }
        if w is not None:
            data["failed_check"] = rep.failed_check
        lines = [
            f"lower_ok: {str(rep.lower_ok).lower()}",
            f"upper_ok: {str(rep.upper_ok).lower()}",
            f"exact: {str(rep.exact).lower()}",
        ]
        if w is not None:
            lines.append(f"counterexample ({rep.failed_check}): {_world_text(w)}")
        return (0 if rep.is_abstraction else 1), data, lines

    def cmd_exact(self):
        b = self.optional_theory(self.c.bridges[0] if self.c.bridges else None, "bridge")
        cand = self._candidate(None)
        ok = is_exact(cand, b, max_atoms=self.c.max_atoms)
        data = {
            "lower": render(cand.lower_formula),
            "upper": render(cand.upper_formula),
            "exact": ok,
        }
        return (0 if ok else 1), data, [f"exact: {str(ok).lower()}"]

    def cmd_cover(self):
        s = self.theory(self.c.source, "source", "-s")
        self.inputs["defs"] = _require(self.c.defs, "--defs", "cover")
        defs = read_definitions(self.c.defs)
        if self.c.drop is not None:
            drop = frozenset(self.c.drop)
            self.inputs["drop"] = sorted(drop)
        elif self.c.keeps:
            drop = s.vocabulary() - frozenset(self.c.keeps[0])
            self.inputs["keep"] = sorted(self.c.keeps[0])
        else:
            raise UsageProblem("cover requires --keep or --drop")
        cover = find_proper_cover(s, defs, drop, max_atoms=self.c.max_atoms)
        if cover is None:
            return 1, {"cover": None}, ["cover: none"]
        return 0, {"cover": _cover_json(cover)}, [
            f"cover: {e.describe()}" for e in cover
        ]

    def cmd_layer(self):
        s = self.theory(self.c.source, "source", "-s")
        if not self.c.bridges:
            raise UsageProblem("layer requires at least one -b")
        if len(self.c.bridges) != len(self.c.keeps):
            raise UsageProblem(
                f"layer pairs each -b with a --keep; got {len(self.c.bridges)} "
                f"bridges and {len(self.c.keeps)} vocabularies"
            )
        stages = []
        for path, keep in zip(self.c.bridges, self.c.keeps):
            stages.append((read_theory(path), frozenset(keep)))
        self.inputs["stages"] = [
            {"bridge": p, "keep": sorted(k)} for p, k in zip(self.c.bridges, self.c.keeps)
        ]
        a = compose(s, stages, max_atoms=self.c.max_atoms)
        data = {"lower": render(a.lower_formula), "upper": render(a.upper_formula)}
        return 0, data, [f"lower: {data['lower']}", f"upper: {data['upper']}"]

    def cmd_query(self):
        path = _require(self.c.facts, "-f", "query")
        text = _require(self.c.query, "-q", "query")
        self.inputs.update(facts=path, query=text)
        facts = read_facts(path)
        value = query(facts, parse(text, source="<query>"))
        return 0, {"result": value}, ["true" if value else "false"]


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command; returns the exit status and the rendered output."""
    try:
        runner = _Runner(config)
        status, data, lines = runner.run()
    except (UsageProblem, ParseError, DefinitionError, VocabularyLimitError) as exc:
        return 2, f"error: {exc}"
    except (OSError, ValueError) as exc:
        return 2, f"error: {exc}"
    if config.json:
        payload = {"command": config.command, "inputs": runner.inputs, **data}
        return status, json.dumps(payload, sort_keys=False)
    return status, "\n".join(lines)


# -- click layer -------------------------------------------------------------


def _common(f):
    f = click.option(
        "--max-atoms",
        type=click.IntRange(min=0),
        envvar="BB_MAX_ATOMS",
        default=DEFAULT_MAX_ATOMS,
        show_default=True,
        help="Enumeration limit on the number of atoms.",
    )(f)
    f = click.option("--json", "as_json", is_flag=True, help="Emit one JSON object.")(f)
    return f


_path = click.Path(dir_okay=False, path_type=str)


def _source_opt(f):
    return click.option("-s", "--source", type=_path, help="Source theory file.")(f)


def _bridge_opt(multiple=False):
    return click.option(
        "-b",
        "--bridge",
        "bridges",
        type=_path,
        multiple=True,
        help="Bridging theory file" + (" (repeatable)." if multiple else "."),
    )


def _vocab_opts(f):
    f = click.option("--drop", help="Comma-separated atoms to eliminate.")(f)
    f = click.option(
        "--keep", "keeps", multiple=True, help="Comma-separated abstract vocabulary."
    )(f)
    return f


def _emit(config_kwargs: dict):
    keeps = [_split_atoms(k) for k in config_kwargs.pop("keeps", ())]
    drop = config_kwargs.pop("drop", None)
    bridges = list(config_kwargs.pop("bridges", ()))
    as_json = config_kwargs.pop("as_json", False)
    try:
        config = RunConfig(
            keeps=keeps,
            drop=_split_atoms(drop) if drop is not None else None,
            bridges=bridges,
            json=as_json,
            **config_kwargs,
        )
    except UsageProblem as exc:
        raise click.UsageError(str(exc)) from None
    status, out = run(config)
    if out:
        click.echo(out, err=status == 2)
    sys.exit(status)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Compute and check approximate abstractions of propositional theories."""


@main.command("snc")
@_source_opt
@_bridge_opt()
@_vocab_opts
@_common
def snc_cmd(**kw):
    """Strongest necessary condition of the source over the abstract vocabulary."""
    _emit({"command": "snc", **kw})


@main.command("wsc")
@_source_opt
@_bridge_opt()
@_vocab_opts
@_common
def wsc_cmd(**kw):
    """Weakest sufficient condition of the source over the abstract vocabulary."""
    _emit({"command": "wsc", **kw})


@main.command("abstract")
@_source_opt
@_bridge_opt()
@_vocab_opts
@click.option("--defs", type=_path, help="Definition file (head := formula).")
@_common
def abstract_cmd(**kw):
    """Tightest abstraction, its exactness and a cover certificate."""
    _emit({"command": "abstract", **kw})


@main.command("verify")
@_source_opt
@_bridge_opt()
@click.option("--keep", "keeps", multiple=True, help="Abstract vocabulary.")
@click.option("--lower", type=_path, help="Candidate lower bound file.")
@click.option("--upper", type=_path, help="Candidate upper bound file.")
@_common
def verify_cmd(**kw):
    """Check whether a lower/upper pair is an abstraction of the source."""
    _emit({"command": "verify", **kw})


@main.command("exact")
@_bridge_opt()
@click.option("--lower", type=_path, help="Lower bound file.")
@click.option("--upper", type=_path, help="Upper bound file.")
@_common
def exact_cmd(**kw):
    """Check whether the bounds are equivalent under the bridge."""
    _emit({"command": "exact", **kw})


@main.command("cover")
@_source_opt
@_vocab_opts
@click.option("--defs", type=_path, help="Definition file (head := formula).")
@_common
def cover_cmd(**kw):
    """Search for a proper cover of the dropped atoms."""
    _emit({"command": "cover", **kw})


@main.command("layer")
@_source_opt
@_bridge_opt(multiple=True)
@click.option(
    "--keep", "keeps", multiple=True, help="Vocabulary of each stage, paired with -b."
)
@_common
def layer_cmd(**kw):
    """Layered abstraction through a sequence of bridges."""
    _emit({"command": "layer", **kw})


@main.command("query")
@click.option("-f", "--facts", type=_path, help="Fact-base file.")
@click.option("-q", "--query", help="Query formula.")
@_common
def query_cmd(**kw):
    """Evaluate a formula against a fact base (closed world)."""
    _emit({"command": "query", **kw})


if __name__ == "__main__":
    main()
