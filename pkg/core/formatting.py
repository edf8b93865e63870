"""
Output formatting: JSON payloads for command results and DOT text for the
lattice and tree of saturated localizations of Z.

Elements are printed in the compact element grammar (``x*d+1``) so that every
payload parses back through :func:`core.expressions.parse_element`. Payload
dictionaries keep insertion order; together with the deterministic node order
of the DOT writers this keeps output byte-stable across runs.
"""

import json
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Sequence

from core.closure import ClosureTrace, IntLattice, TorsionReport, WeylVerifyReport
from core.localization import OreFraction
from core.ore_sets import OrePair, WitnessResult
from core.rings import Element, Tri, format_element
from core.saturation import (
    Classification,
    invertible_primes,
    lattice_graph,
    subset_label,
    tree_graph,
)
from core.sets import OreSetDesc, OreSetKind, SaturatedSetDesc
from utils.logging_utils import ContextLogger

logger = ContextLogger("formatting")

Payload = Dict[str, Any]

EXIT_DEFINITE = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2


def element_text(element: Element) -> str:
    return format_element(element, compact=True)


def elements_text(elements: Iterable[Element]) -> List[str]:
    return [element_text(e) for e in elements]


def rational_text(value: Fraction) -> str:
    return str(value)


def tri_exit_code(answer: Tri) -> int:
    """Exit status for a three-valued answer; UNKNOWN is never 0."""
    return EXIT_UNKNOWN if answer is Tri.UNKNOWN else EXIT_DEFINITE


def to_json(payload: Any) -> str:
    return json.dumps(payload, ensure_ascii=False)


def error_payload(error: BaseException) -> Payload:
    return {"error": str(error), "type": type(error).__name__}


# domain objects


def saturated_payload(sat: SaturatedSetDesc) -> Payload:
    return {
        "ring": str(sat.ring),
        "mode": sat.mode.value,
        "irreducibles": elements_text(sat.irreducibles),
    }


def set_payload(S: OreSetDesc) -> Payload:
    """OreSetDesc JSON; ``parts`` and ``primes`` appear only when used."""
    payload: Payload = {"ring": str(S.ring), "kind": S.kind.value}
    if S.gens:
        payload["gens"] = elements_text(S.gens)
    if S.kind is OreSetKind.EULER:
        payload["z"] = rational_text(S.z)
    if S.parts:
        payload["parts"] = [set_payload(part) for part in S.parts]
    if S.primes is not None:
        payload["primes"] = saturated_payload(S.primes)
    return payload


def fraction_payload(a: OreFraction, with_set: bool = False) -> Payload:
    payload: Payload = {"den": element_text(a.s), "num": element_text(a.r)}
    if with_set:
        payload["set"] = set_payload(a.ctx.S)
    return payload


def ore_pair_payload(pair: OrePair) -> Payload:
    return {
        "s_tilde": element_text(pair.s_tilde),
        "r_tilde": element_text(pair.r_tilde),
    }


def witness_payload(result: WitnessResult) -> Payload:
    payload: Payload = {"outcome": result.outcome.value}
    if result.witness is not None:
        payload["witness"] = element_text(result.witness)
    return payload


def classification_payload(result: Classification) -> Payload:
    return {
        "maximality": result.maximality.value,
        "integer_type": result.integer_type.value,
        "special": result.special,
        "normal_form": saturated_payload(result.normal_form),
    }


def lattice_payload(P: IntLattice) -> Payload:
    return {"ambient": P.ambient, "rows": [list(row) for row in P.basis]}


def torsion_payload(report: TorsionReport) -> Payload:
    return {
        "generators": [list(g) for g in report.generators],
        "invariant_factors": list(report.invariant_factors),
        "order": report.order,
        "torsion_free": report.torsion_free,
        "is_torsion": report.is_torsion,
    }


def weyl_report_payload(report: WeylVerifyReport) -> Payload:
    payload: Payload = {
        "verdict": report.verdict.value,
        "contains_old": report.contains_old,
        "certificates": [
            {
                "generator": element_text(c.generator),
                "multiplier": element_text(c.multiplier),
            }
            for c in report.certificates
        ],
        "missing": elements_text(report.missing),
        "budget": report.budget,
    }
    if report.stable is not None:
        payload["stable"] = report.stable
    if report.new_member is not None:
        payload["new_member"] = element_text(report.new_member)
    return payload


def trace_lines(trace: ClosureTrace[Any], render: Callable[[Any], Any]) -> List[str]:
    """One JSON line per driver step, then a line with the verdict."""
    lines = [
        to_json(
            {
                "step": step.step,
                "index": step.index,
                "changed": step.changed,
                "state": render(step.state),
            }
        )
        for step in trace.steps
    ]
    lines.append(to_json({"verdict": trace.verdict.value}))
    return lines


# DOT


def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def node_label(primes: Sequence[int]) -> str:
    """``Z`` for the integers, otherwise the set of inverted primes."""
    return subset_label(primes) if primes else "Z"


def lattice_dot(primes: Sequence[int], name: str = "lattice") -> str:
    """Hasse diagram of the localizations of Z at subsets of ``primes``.

    Edges point from the smaller ring to the larger one and are labelled
    with the prime that becomes invertible.
    """
    hasse = lattice_graph(primes)
    nodes = sorted(hasse.nodes, key=lambda node: (len(node), node))
    lines = [f"digraph {name} {{", "\trankdir=BT;"]
    for node in nodes:
        label = node_label(node)
        lines.append(f"\t{_quote(label)} [label={_quote(label)}];")
    for small, big in sorted(hasse.edges, key=lambda e: (len(e[0]), e[0], e[1])):
        prime = hasse.edges[small, big]["prime"]
        lines.append(
            f"\t{_quote(node_label(small))} -> {_quote(node_label(big))}"
            f" [label={_quote(f'{prime}^-1')}];"
        )
    lines.append("}")
    logger.debug(f"Lattice DOT with {len(nodes)} nodes")
    return "\n".join(lines) + "\n"


def tree_dot(primes: Sequence[int], name: str = "tree") -> str:
    """Binary tree whose level ``i`` decides whether the i-th prime is inverted.

    Leaves are labelled with the resulting localization; each level is
    drawn on one rank.
    """
    tree = tree_graph(primes)
    ordered = sorted(set(primes))

    def node_id(node: Sequence[bool]) -> str:
        return _quote("t" + "".join("1" if flag else "0" for flag in node))

    levels: Dict[int, List[Any]] = {}
    for node in tree.nodes:
        levels.setdefault(len(node), []).append(node)
    lines = [f"digraph {name} {{"]
    for depth in sorted(levels):
        lines.append("\t{")
        lines.append("\t\trank = same;")
        for node in sorted(levels[depth]):
            label = node_label(invertible_primes(node, ordered))
            lines.append(f"\t\t{node_id(node)} [label={_quote(label)}];")
        lines.append("\t}")
    for parent, child in sorted(tree.edges, key=lambda e: (len(e[0]), e[0], e[1])):
        data = tree.edges[parent, child]
        label = f"{data['prime']}^-1" if data["inverted"] else str(data["prime"])
        style = "solid" if data["inverted"] else "dashed"
        lines.append(
            f"\t{node_id(parent)} -> {node_id(child)}"
            f" [label={_quote(label)}, style={style}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_counts(dot: str) -> Dict[str, int]:
    """Node and edge counts of DOT text written by this module."""
    edges = sum(1 for line in dot.splitlines() if "->" in line)
    nodes = sum(
        1 for line in dot.splitlines() if "[label=" in line and "->" not in line
    )
    return {"nodes": nodes, "edges": edges}
