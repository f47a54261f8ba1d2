"""Deterministic text serializations of finite posets: a JSON document
with points and covers, Graphviz DOT with one undirected edge per cover
and one rank per height level, and a plain-text minimal-open-set table."""

from __future__ import annotations

import json

from .posets import FinitePoset


def poset_to_json_dict(p: FinitePoset) -> dict:
    return {
        "points": [{"id": i, "label": lab} for i, lab in enumerate(p.labels)],
        "covers": [[lo, hi] for lo, hi in p.hasse()],
    }


def poset_to_json(p: FinitePoset) -> str:
    return json.dumps(poset_to_json_dict(p), indent=2) + "\n"


def poset_from_json(text: str) -> FinitePoset:
    data = json.loads(text)
    points = sorted(data["points"], key=lambda pt: pt["id"])
    if [pt["id"] for pt in points] != list(range(len(points))):
        raise ValueError("point ids must be 0..n-1")
    labels = [pt["label"] for pt in points]
    covers = [(lo, hi) for lo, hi in data["covers"]]
    return FinitePoset.from_covers(labels, covers)


def poset_to_dot(p: FinitePoset) -> str:
    heights = p.heights()
    lines = ["graph poset {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for level in range(max(heights) + 1):
        members = [i for i in range(p.n) if heights[i] == level]
        if members:
            names = " ".join(f'"{p.labels[i]}";' for i in members)
            lines.append("  { rank=same; " + names + " }")
    for lo, hi in p.hasse():
        lines.append(f'  "{p.labels[lo]}" -- "{p.labels[hi]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_text(p: FinitePoset) -> str:
    lines = [f"{p.n} points, {len(p.hasse())} covers"]
    for x in range(p.n):
        members = ", ".join(p.labels[y] for y in sorted(p.minimal_open(x)))
        lines.append(f"U[{p.labels[x]}] = {{{members}}}")
    return "\n".join(lines) + "\n"


FORMATS = {
    "json": poset_to_json,
    "dot": poset_to_dot,
    "text": poset_to_text,
}


def render_poset(p: FinitePoset, fmt: str) -> str:
    try:
        return FORMATS[fmt](p)
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}") from None
