"""
Command-line interface for cgbinom.

All spins and projections are given as TWICE their physical value, so spin
1/2 is ``1`` and spin 1 is ``2``.

Usage:
    cgbinom table --j1 2 --j2 2                 # spin-1 x spin-1 table
    cgbinom stretched --l1 2 --k1 1 --l2 2 --k2 1
    cgbinom verify --max 8 --format json
    cgbinom conditional --spectrum1 uniform:2 --spectrum2 uniform:2 --total 0
    cgbinom sample --spectrum1 binomial:2:1/2 --spectrum2 binomial:2:1/2 \\
        --total 0 --n 1000000 --seed 42
    cgbinom demo-spin1 --format csv

Exit codes: 0 success, 1 verification failure, 2 usage/argument error.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional

import click

from .angular import CGTable, Spin, format_half
from .exact import SignedSqrtRational
from .ladder import build_cg_table
from .probability import (
    ConditioningOnNullError,
    SpectrumDistribution,
    conditional_joint,
    explicit_spectrum,
    sample_conditional,
    spectrum_from_binomial,
    uniform_spectrum,
)
from .stretched import stretched_cg_squared
from .verify import run_suite

__all__ = [
    "cli",
    "main",
    "approx",
    "parse_spectrum",
    "table_to_json",
    "table_from_json",
    "TABLE_KEYS",
]

FORMATS = ("text", "json", "csv")
TABLE_KEYS = ["J_twice", "M_twice", "m1_twice", "m2_twice", "sign", "radicand_num", "radicand_den", "approx"]
DEMO_CSV_KEYS = ["section", "spectrum", "J_twice", "M_twice", "m1_twice", "m2_twice", "sign", "num", "den", "approx"]


class CLIError(click.ClickException):
    exit_code = 2


# ---------------------------------------------------------------------------
# rendering helpers


def approx(x) -> float:
    """Display float rounded to 12 significant digits."""
    return float(f"{float(x):.12g}")


def fmt(x) -> str:
    return f"{float(x):.12g}"


def _dump_json(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _dump_csv(header: list[str], rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _entry_json(J: int, M: int, m1: int, c: SignedSqrtRational) -> dict:
    return {
        "J_twice": J,
        "M_twice": M,
        "m1_twice": m1,
        "m2_twice": M - m1,
        "sign": str(c.sign),
        "radicand_num": str(c.radicand.numerator),
        "radicand_den": str(c.radicand.denominator),
        "approx": approx(float(c)),
    }


def table_to_json(table: CGTable) -> dict:
    return {
        "j1_twice": table.j1.twice,
        "j2_twice": table.j2.twice,
        "entries": [_entry_json(r.J_twice, r.M_twice, r.m1_twice, r.coefficient) for r in table.rows()],
    }


def table_from_json(doc: dict) -> CGTable:
    entries = {}
    for e in doc["entries"]:
        if e["m2_twice"] != e["M_twice"] - e["m1_twice"]:
            raise ValueError(f"inconsistent entry {e}")
        radicand = Fraction(int(e["radicand_num"]), int(e["radicand_den"]))
        entries[(e["J_twice"], e["M_twice"], e["m1_twice"])] = SignedSqrtRational(int(e["sign"]), radicand)
    return CGTable(Spin(doc["j1_twice"]), Spin(doc["j2_twice"]), entries)


def _coeff_text(c: SignedSqrtRational) -> str:
    return str(c) if c.sign else "0"


def _table_text(table: CGTable) -> str:
    lines = [f"Clebsch-Gordan table  j1 = {table.j1}  j2 = {table.j2}"]
    lines.append(f"{'J':>5} {'M':>5} {'m1':>5} {'m2':>5}  {'coefficient':<16} approx")
    for r in table.rows():
        lines.append(
            f"{format_half(r.J_twice):>5} {format_half(r.M_twice):>5} "
            f"{format_half(r.m1_twice):>5} {format_half(r.m2_twice):>5}  "
            f"{_coeff_text(r.coefficient):<16} {fmt(float(r.coefficient))}"
        )
    return "\n".join(lines) + "\n"


def parse_spectrum(text: str) -> SpectrumDistribution:
    """Parse ``binomial:<l_twice>:<p>``, ``uniform:<l_twice>`` or
    ``explicit:[<l_twice>:]<m_twice>=<prob>,...``."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "binomial":
            l, _, p = rest.partition(":")
            return spectrum_from_binomial(_nonneg(int(l)), Fraction(p))
        if kind == "uniform":
            return uniform_spectrum(_nonneg(int(rest)))
        if kind == "explicit":
            head, sep, body = rest.partition(":")
            l_twice: Optional[int] = None
            if sep:
                l_twice = _nonneg(int(head))
            else:
                body = head
            probs = {}
            for item in body.split(","):
                m, _, prob = item.partition("=")
                probs[int(m)] = Fraction(prob)
            if l_twice is None:
                l_twice = max(abs(m) for m in probs)
            return explicit_spectrum(l_twice, probs)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad spectrum {text!r}: {exc}") from exc
    raise ValueError(f"unknown spectrum kind in {text!r}; expected binomial, uniform or explicit")


def _nonneg(n: int) -> int:
    if n < 0:
        raise ValueError("l_twice must be >= 0")
    return n


class SpectrumType(click.ParamType):
    name = "spectrum"

    def convert(self, value, param, ctx):
        if isinstance(value, SpectrumDistribution):
            return value
        try:
            return parse_spectrum(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


SPECTRUM = SpectrumType()


# ---------------------------------------------------------------------------
# shared option plumbing


def output_options(f: Callable) -> Callable:
    f = click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
                     help="Write to this file instead of standard output.")(f)
    f = click.option("--format", "fmt_", type=click.Choice(FORMATS), default=None,
                     help="Output format (default text).")(f)
    return f


def _resolve(ctx: click.Context, fmt_: Optional[str], output: Optional[str]) -> tuple[str, Optional[str]]:
    obj = ctx.find_root().obj or {}
    return fmt_ or obj.get("format") or "text", output or obj.get("output")


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt_", type=click.Choice(FORMATS), default=None, help="Default output format.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="Default sampling seed.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="Default output file.")
@click.version_option(package_name="artifact", prog_name="cgbinom")
@click.pass_context
def cli(ctx, fmt_, seed, output):
    """Exact Clebsch-Gordan coefficients and their binomial/hypergeometric
    probability model.  Spins and projections are TWICE-VALUES (spin 1/2 -> 1)."""
    ctx.obj = {"format": fmt_, "seed": seed, "output": output}


@cli.command()
@click.option("--j1", "j1", type=click.IntRange(min=0), required=True, help="2*j1")
@click.option("--j2", "j2", type=click.IntRange(min=0), required=True, help="2*j2")
@output_options
@click.pass_context
def table(ctx, j1, j2, fmt_, output):
    """Full exact CG table by ladder operators."""
    fmt_, output = _resolve(ctx, fmt_, output)
    t = build_cg_table(j1, j2)
    if fmt_ == "json":
        text = _dump_json(table_to_json(t))
    elif fmt_ == "csv":
        text = _dump_csv(TABLE_KEYS, table_to_json(t)["entries"])
    else:
        text = _table_text(t)
    _emit(text, output)


@cli.command()
@click.option("--l1", type=int, required=True, help="2*j1")
@click.option("--k1", type=int, required=True, help="(l1 - m1_twice)/2")
@click.option("--l2", type=int, required=True, help="2*j2")
@click.option("--k2", type=int, required=True, help="(l2 - m2_twice)/2")
@output_options
@click.pass_context
def stretched(ctx, l1, k1, l2, k2, fmt_, output):
    """Squared stretched-state coefficient C(l1,k1) C(l2,k2) / C(l1+l2,k1+k2)."""
    fmt_, output = _resolve(ctx, fmt_, output)
    if l1 < 0 or l2 < 0:
        raise CLIError("l1 and l2 must be >= 0")
    v = stretched_cg_squared(l1, k1, l2, k2)
    record = {
        "l1": l1, "k1": k1, "l2": l2, "k2": k2,
        "value_num": str(v.numerator), "value_den": str(v.denominator), "approx": approx(v),
    }
    if fmt_ == "json":
        text = _dump_json(record)
    elif fmt_ == "csv":
        text = _dump_csv(list(record), [record])
    else:
        text = f"{v}\t{fmt(v)}\n"
    _emit(text, output)


@cli.command()
@click.option("--max", "max_twice", type=click.IntRange(min=0), required=True,
              help="Check every pair with j1_twice, j2_twice <= MAX.")
@output_options
@click.pass_context
def verify(ctx, max_twice, fmt_, output):
    """Cross-check ladder tables, closed form, probability model and float oracle."""
    fmt_, output = _resolve(ctx, fmt_, output)
    results = run_suite(max_twice)
    passed = all(r.passed for r in results)
    records = [
        {"check": r.check, "j1_twice": r.j1_twice, "j2_twice": r.j2_twice,
         "passed": r.passed, "detail": r.detail}
        for r in results
    ]
    if fmt_ == "json":
        text = _dump_json({"max_twice": max_twice, "passed": passed, "checks": records})
    elif fmt_ == "csv":
        text = _dump_csv(["check", "j1_twice", "j2_twice", "passed", "detail"], records)
    else:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'} {r.check:<13} j1_twice={r.j1_twice:<3} "
            f"j2_twice={r.j2_twice:<3} {r.detail}"
            for r in results
        ]
        n_fail = sum(not r.passed for r in results)
        lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
        text = "\n".join(lines) + "\n"
    _emit(text, output)
    if not passed:
        ctx.exit(1)


def _conditional_records(d1, d2, total) -> list[dict]:
    try:
        rep = conditional_joint(d1, d2, total)
    except ConditioningOnNullError as exc:
        raise CLIError(str(exc)) from exc
    return [
        {"m1_twice": m1, "m2_twice": m2, "prob_num": str(v.numerator),
         "prob_den": str(v.denominator), "approx": approx(v)}
        for (m1, m2), v in rep.entries.items()
    ]


@cli.command()
@click.option("--spectrum1", type=SPECTRUM, required=True)
@click.option("--spectrum2", type=SPECTRUM, required=True)
@click.option("--total", type=int, required=True, help="Conditioning total M_twice.")
@output_options
@click.pass_context
def conditional(ctx, spectrum1, spectrum2, total, fmt_, output):
    """Exact joint law of (M1, M2) given M1 + M2 = TOTAL."""
    fmt_, output = _resolve(ctx, fmt_, output)
    records = _conditional_records(spectrum1, spectrum2, total)
    if fmt_ == "json":
        text = _dump_json({
            "spectrum1": spectrum1.label, "spectrum2": spectrum2.label,
            "total_m_twice": total, "entries": records,
        })
    elif fmt_ == "csv":
        text = _dump_csv(list(records[0]), records)
    else:
        lines = [f"P(M1, M2 | M1 + M2 = {format_half(total)})  [{spectrum1.label} x {spectrum2.label}]"]
        for r in records:
            p = Fraction(int(r["prob_num"]), int(r["prob_den"]))
            lines.append(f"  m1={format_half(r['m1_twice']):>5} m2={format_half(r['m2_twice']):>5}  {p}\t{fmt(p)}")
        text = "\n".join(lines) + "\n"
    _emit(text, output)


@cli.command()
@click.option("--spectrum1", type=SPECTRUM, required=True)
@click.option("--spectrum2", type=SPECTRUM, required=True)
@click.option("--total", type=int, required=True, help="Conditioning total M_twice.")
@click.option("--n", "n", type=click.IntRange(min=1), default=1_000_000, show_default=True,
              help="Accepted samples.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="64-bit seed (default 0).")
@click.option("--streams", type=click.IntRange(min=1), default=1, show_default=True,
              help="Independent child streams spawned from the seed.")
@output_options
@click.pass_context
def sample(ctx, spectrum1, spectrum2, total, n, seed, streams, fmt_, output):
    """Seeded rejection sampling of the conditional law, against exact values."""
    fmt_, output = _resolve(ctx, fmt_, output)
    if seed is None:
        seed = ctx.find_root().obj.get("seed") or 0
    try:
        res = sample_conditional(spectrum1, spectrum2, total, n, seed, streams=streams)
    except ConditioningOnNullError as exc:
        raise CLIError(str(exc)) from exc
    freqs, errs = res.frequencies, res.std_errors
    records = []
    for cell in res.cells:
        ex = res.exact[cell]
        records.append({
            "m1_twice": cell[0], "m2_twice": cell[1], "count": res.counts[cell],
            "frequency": approx(freqs[cell]),
            "exact_num": str(ex.numerator), "exact_den": str(ex.denominator), "exact_approx": approx(ex),
            "abs_error": approx(abs(freqs[cell] - float(ex))), "std_error": approx(errs[cell]),
        })
    if fmt_ == "json":
        text = _dump_json({
            "spectrum1": spectrum1.label, "spectrum2": spectrum2.label, "total_m_twice": total,
            "n": n, "seed": seed, "streams": streams, "draws": res.draws,
            "acceptance_rate": approx(res.acceptance_rate), "cells": records,
        })
    elif fmt_ == "csv":
        text = _dump_csv(list(records[0]), records)
    else:
        lines = [
            f"rejection sampling  [{spectrum1.label} x {spectrum2.label}]  total M = {format_half(total)}",
            f"n = {n}  seed = {seed}  streams = {streams}  draws = {res.draws}  "
            f"acceptance = {fmt(res.acceptance_rate)}",
            f"{'m1':>5} {'m2':>5} {'count':>9} {'frequency':>14} {'exact':>8} {'abs_error':>12} {'std_error':>12}",
        ]
        for r in records:
            ex = f"{r['exact_num']}/{r['exact_den']}" if r["exact_den"] != "1" else r["exact_num"]
            lines.append(
                f"{format_half(r['m1_twice']):>5} {format_half(r['m2_twice']):>5} {r['count']:>9} "
                f"{fmt(r['frequency']):>14} {ex:>8} {fmt(r['abs_error']):>12} {fmt(r['std_error']):>12}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, output)


# ---------------------------------------------------------------------------
# spin-1 walk-through

DEMO_CLOSED_FORM = [(2, 1, 2, 1), (2, 0, 2, 2), (2, 2, 2, 0)]


def demo_document() -> dict:
    """Structured spin-1 x spin-1 walk-through (JSON form of ``demo-spin1``)."""
    t = build_cg_table(2, 2)
    closed = []
    for l1, k1, l2, k2 in DEMO_CLOSED_FORM:
        v = stretched_cg_squared(l1, k1, l2, k2)
        m1, m2 = l1 - 2 * k1, l2 - 2 * k2
        ladder = t[(l1 + l2, m1 + m2, m1)].radicand
        closed.append({
            "l1": l1, "k1": k1, "l2": l2, "k2": k2, "m1_twice": m1, "m2_twice": m2,
            "value_num": str(v.numerator), "value_den": str(v.denominator), "approx": approx(v),
            "ladder_num": str(ladder.numerator), "ladder_den": str(ladder.denominator),
            "match": v == ladder,
        })
    conditional = []
    for spectrum, J in ((spectrum_from_binomial(2, Fraction(1, 2)), 4), (uniform_spectrum(2), 0)):
        rep = conditional_joint(spectrum, spectrum, 0)
        entries = []
        for (m1, m2), v in rep.entries.items():
            cg = t[(J, 0, m1)].radicand
            entries.append({
                "m1_twice": m1, "m2_twice": m2,
                "prob_num": str(v.numerator), "prob_den": str(v.denominator), "approx": approx(v),
                "cg_num": str(cg.numerator), "cg_den": str(cg.denominator), "match": v == cg,
            })
        conditional.append({
            "spectrum": spectrum.label,
            "spectrum_probs": {str(m): str(p) for m, p in spectrum.probs.items()},
            "total_m_twice": 0, "compare_J_twice": J, "entries": entries,
            "matches": all(e["match"] for e in entries),
        })
    return {"j1_twice": 2, "j2_twice": 2, "table": table_to_json(t)["entries"],
            "closed_form": closed, "conditional": conditional}


def _demo_text(doc: dict) -> str:
    t = table_from_json({"j1_twice": 2, "j2_twice": 2, "entries": doc["table"]})
    out = ["Spin-1 x spin-1 coupling", "", "1. Ladder-operator construction", ""]
    for J in (4, 2, 0):
        for M in range(J, -J - 1, -2):
            terms = [
                f"{_coeff_text(c)}|{format_half(m1)},{format_half(M - m1)}>"
                for m1, c in t.state(J, M).items() if c.sign
            ]
            out.append(f"  |{format_half(J)},{format_half(M)}> = " + " ".join(terms))
    out += ["", "2. Stretched closed form  C(l1,k1) C(l2,k2) / C(l,k)", ""]
    for c in doc["closed_form"]:
        v = Fraction(int(c["value_num"]), int(c["value_den"]))
        out.append(
            f"  <{format_half(c['m1_twice'])},{format_half(c['m2_twice'])}|2,0>^2 = "
            f"C({c['l1']},{c['k1']}) C({c['l2']},{c['k2']}) / C(4,2) = {v}"
            f"  [ladder agrees: {'yes' if c['match'] else 'NO'}]"
        )
    out += ["", "3. Conditional law of (M1, M2) given M1 + M2 = 0", ""]
    for block in doc["conditional"]:
        probs = ", ".join(f"P(m={format_half(int(m))})={p}" for m, p in block["spectrum_probs"].items())
        out.append(f"  {block['spectrum']}: {probs}")
        for e in block["entries"]:
            v = Fraction(int(e["prob_num"]), int(e["prob_den"]))
            cg = Fraction(int(e["cg_num"]), int(e["cg_den"]))
            out.append(
                f"    P(M1={format_half(e['m1_twice'])}, M2={format_half(e['m2_twice'])} | M=0) = {v}"
                f"   <{format_half(e['m1_twice'])},{format_half(e['m2_twice'])}"
                f"|{format_half(block['compare_J_twice'])},0>^2 = {cg}"
            )
        verdict = "equal" if block["matches"] else "DIFFERENT"
        out.append(f"    squared coefficients of J = {format_half(block['compare_J_twice'])}: {verdict}")
        out.append("")
    return "\n".join(out)


def _demo_csv(doc: dict) -> str:
    rows = []
    for e in doc["table"]:
        rows.append({"section": "table", "spectrum": "", **{k: e[k] for k in TABLE_KEYS[:5]},
                     "num": e["radicand_num"], "den": e["radicand_den"], "approx": e["approx"]})
    for c in doc["closed_form"]:
        rows.append({"section": "closed_form", "spectrum": "", "J_twice": 4, "M_twice": c["m1_twice"] + c["m2_twice"],
                     "m1_twice": c["m1_twice"], "m2_twice": c["m2_twice"], "sign": "1",
                     "num": c["value_num"], "den": c["value_den"], "approx": c["approx"]})
    for block in doc["conditional"]:
        for e in block["entries"]:
            rows.append({"section": "conditional", "spectrum": block["spectrum"], "J_twice": block["compare_J_twice"],
                         "M_twice": 0, "m1_twice": e["m1_twice"], "m2_twice": e["m2_twice"], "sign": "",
                         "num": e["prob_num"], "den": e["prob_den"], "approx": e["approx"]})
    return _dump_csv(DEMO_CSV_KEYS, rows)


@cli.command("demo-spin1")
@output_options
@click.pass_context
def demo_spin1(ctx, fmt_, output):
    """Spin-1 x spin-1 walk-through: ladder table, closed form, conditional laws."""
    fmt_, output = _resolve(ctx, fmt_, output)
    doc = demo_document()
    if fmt_ == "json":
        text = _dump_json(doc)
    elif fmt_ == "csv":
        text = _demo_csv(doc)
    else:
        text = _demo_text(doc)
    _emit(text, output)


def main(argv: Optional[list[str]] = None) -> None:
    cli.main(args=argv, prog_name="cgbinom")


if __name__ == "__main__":
    main()
