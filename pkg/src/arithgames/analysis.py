"""Sequence export, occurrence and ratio reports, SVG scatter plots, and
display-level simplification of sums."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .engine import SGTable
from .errors import DomainError
from .rulesets import Ruleset, SumPosition, emission_key, canonical, lookup, options

FORMATS = ("csv", "bfile", "json-lines")


def export_sequence(table: SGTable, fmt: str = "bfile") -> bytes:
    """Serialize ``(n, SG(n))`` pairs; output is byte-stable."""
    if fmt == "bfile":
        return "".join(f"{n} {v}\n" for n, v in table.items()).encode("ascii")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "sg"])
        w.writerows(table.items())
        return buf.getvalue().encode("ascii")
    if fmt == "json-lines":
        return "".join(json.dumps({"n": n, "sg": v}) + "\n" for n, v in table.items()).encode("ascii")
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


@dataclass(frozen=True)
class Occurrence:
    count: int
    first: int
    last: int


@dataclass(frozen=True)
class SequenceReport:
    ruleset: str
    limit: int
    values: tuple[int, ...]
    occurrences: dict[int, Occurrence] = field(repr=False)
    max_value: int | None
    argmax: int | None

    def missing(self, upto: int | None = None) -> list[int]:
        """Values below ``upto`` (default: the maximum) that never occur."""
        top = (self.max_value or 0) if upto is None else upto
        return [v for v in range(top) if v not in self.occurrences]

    def summary(self) -> str:
        lines = [f"{self.ruleset} up to {self.limit}: {len(self.values)} values, max {self.max_value} at n={self.argmax}"]
        gaps = self.missing()
        if gaps:
            lines.append("absent below max: " + ", ".join(map(str, gaps[:20])) + (" ..." if len(gaps) > 20 else ""))
        return "\n".join(lines)


def occurrence_report(table: SGTable) -> SequenceReport:
    occ: dict[int, list[int]] = {}
    for n, v in table.items():
        rec = occ.get(v)
        if rec is None:
            occ[v] = [1, n, n]
        else:
            rec[0] += 1
            rec[2] = n
    vals = tuple(table.sequence())
    if vals:
        top = max(vals)
        argmax = table.domain_min + vals.index(top)
    else:
        top = argmax = None
    return SequenceReport(
        table.ruleset, table.limit, vals,
        {v: Occurrence(*r) for v, r in sorted(occ.items())}, top, argmax,
    )


def ratio_report(table: SGTable, parity: str | None = None, start: int = 1) -> list[tuple[int, Fraction]]:
    """Exact ratios SG(n)/n for n >= start, optionally only even or odd n."""
    keep = {None: lambda n: True, "even": lambda n: n % 2 == 0, "odd": lambda n: n % 2 == 1}[parity]
    return [(n, Fraction(v, n)) for n, v in table.items() if n >= max(start, 1) and keep(n)]


def smallest_ratios(table: SGTable, count: int, parity: str | None = None) -> list[tuple[int, int]]:
    """The ``count`` heaps with the smallest positive ratio SG(n)/n, as [n, SG(n)]."""
    series = [(r, n) for n, r in ratio_report(table, parity) if r > 0]
    series.sort()
    return [(n, table[n]) for _, n in series[:count]]


def ratio_trend(table: SGTable, blocks: int = 10) -> list[tuple[int, Fraction]]:
    """Maximum of SG(n)/n over consecutive blocks of heaps; a falling series hints at SG(n)/n -> 0."""
    series = ratio_report(table)
    if not series:
        return []
    size = max(1, -(-len(series) // blocks))
    return [
        (chunk[-1][0], max(r for _, r in chunk))
        for chunk in (series[i : i + size] for i in range(0, len(series), size))
    ]


# -- svg --------------------------------------------------------------------


def scatter_svg(table: SGTable, path: str | Path | None = None, *, width: int = 640, height: int = 400,
                title: str | None = None) -> str:
    """One dot per (n, SG(n)); returns the SVG text and writes it if a path is given."""
    pad_l, pad_r, pad_t, pad_b = 56, 16, 28, 40
    pw, ph = width - pad_l - pad_r, height - pad_t - pad_b
    pts = list(table.items())
    xmax = max(table.limit, 1)
    ymax = max((v for _, v in pts), default=0) or 1
    title = title or f"{table.ruleset}: nim-values for n <= {table.limit}"

    def x(n):
        return pad_l + pw * n / xmax

    def y(v):
        return pad_t + ph * (1 - v / ymax)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="18" font-size="13" text-anchor="middle" font-family="sans-serif">{title}</text>',
        f'<line x1="{pad_l}" y1="{pad_t + ph}" x2="{pad_l + pw}" y2="{pad_t + ph}" stroke="black"/>',
        f'<line x1="{pad_l}" y1="{pad_t}" x2="{pad_l}" y2="{pad_t + ph}" stroke="black"/>',
        f'<text x="{pad_l + pw / 2:.1f}" y="{height - 6}" font-size="12" text-anchor="middle" '
        f'font-family="sans-serif">heap size n</text>',
        f'<text x="14" y="{pad_t + ph / 2:.1f}" font-size="12" text-anchor="middle" font-family="sans-serif" '
        f'transform="rotate(-90 14 {pad_t + ph / 2:.1f})">SG(n)</text>',
    ]
    for frac in (0, 0.5, 1):
        n, v = round(xmax * frac), round(ymax * frac)
        out.append(f'<text x="{x(n):.1f}" y="{pad_t + ph + 16}" font-size="10" text-anchor="middle" '
                   f'font-family="sans-serif">{n}</text>')
        out.append(f'<text x="{pad_l - 6}" y="{y(v) + 3:.1f}" font-size="10" text-anchor="end" '
                   f'font-family="sans-serif">{v}</text>')
    r = 1.6 if len(pts) <= 2000 else 0.8
    out.append('<g fill="steelblue">')
    out.extend(f'<circle cx="{x(n):.2f}" cy="{y(v):.2f}" r="{r}"/>' for n, v in pts)
    out.append("</g>")
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="ascii")
    return text


# -- display reduction ------------------------------------------------------


def reduce_display(pos: SumPosition, rs: Ruleset | str, *, as_option: bool = False) -> SumPosition:
    """Cancel equal pairs and drop heaps of size 1; the nim-sum is unchanged.

    With ``as_option`` a sum that cancels completely is shown as the single
    heap 1, marking a move to a position of value 0.
    """
    rs = lookup(rs)
    if not rs.is_terminal(1):
        raise DomainError(f"display reduction assumes heap 1 is terminal, which fails for {rs.name}")
    odd = [h for h, c in Counter(pos).items() if c % 2 and h != 1]
    out = canonical(odd)
    if as_option and not out:
        return (1,)
    return out


def reduced_options(rs: Ruleset | str, n: int) -> list[SumPosition]:
    """Options of n after display reduction, deduplicated, in emission order."""
    rs = lookup(rs)
    seen = {reduce_display(p, rs, as_option=True) for p in options(rs, n)}
    return sorted(seen, key=emission_key)


def format_sum(pos: SumPosition) -> str:
    return "+".join(map(str, pos)) if pos else "0-sum"
