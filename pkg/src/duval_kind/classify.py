"""Kind classification of du Val singularities.

The implemented criterion is reducedness of the fundamental cycle on the
minimal resolution graph: reduced => first kind (the dualising sheaf is
the full Grauert-Riemenschneider sheaf), non-reduced => second kind (the
maximal ideal twist).  For the A series the verdict can additionally be
backed by the annulus-integral table certifying the structure form lies
in the domain of the Dirichlet dbar-extension.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .cycles import Cycle, fundamental_cycle, is_reduced
from .dual_graph import (
    DualGraph,
    ParameterError,
    build_dynkin,
    intersection_form,
    is_negative_definite,
)
from .quadrature import QuadratureResult, integral_Ik, weighted_graph_norm_defect

FIRST_KIND_FORMULA = "pi_* K_M"
SECOND_KIND_FORMULA = "pi_*(K_M (x) O(-Z))"

DE_NUMERICS_NOTE = (
    "second kind is established by contradiction against an external "
    "solvability obstruction; no integral table applies"
)


class Kind(enum.Enum):
    FIRST = "first"
    SECOND = "second"
    NOT_DETERMINED = "not determined - input is not a du Val graph"


@dataclass(frozen=True)
class IntegralRow:
    k: int
    integral: float
    error: float
    defect_bound: float


@dataclass(frozen=True)
class ClassificationReport:
    input_label: str
    dual_graph_summary: dict
    fundamental_cycle: Cycle
    reduced: bool
    kind: Kind
    kxs_formula: str | None
    numerical_evidence: tuple[IntegralRow, ...] | None = None
    numerics_note: str | None = None

    def to_dict(self) -> dict:
        doc = {
            "input_label": self.input_label,
            "dual_graph_summary": self.dual_graph_summary,
            "fundamental_cycle": list(self.fundamental_cycle.coefficients),
            "reduced": self.reduced,
            "kind": self.kind.value,
            "kxs_formula": self.kxs_formula,
        }
        if self.numerical_evidence is not None:
            doc["numerical_evidence"] = [
                {
                    "k": row.k,
                    "integral": row.integral,
                    "error": row.error,
                    "defect_bound": row.defect_bound,
                }
                for row in self.numerical_evidence
            ]
        if self.numerics_note is not None:
            doc["numerics_note"] = self.numerics_note
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [
            f"input_label: {self.input_label}",
            f"dual_graph_summary: {self.dual_graph_summary['vertices']} vertices, "
            f"{self.dual_graph_summary['edges']} edges, "
            f"self-intersections {self.dual_graph_summary['self_intersections']}",
            "fundamental_cycle: "
            + " ".join(str(c) for c in self.fundamental_cycle.coefficients),
            f"reduced: {'yes' if self.reduced else 'no'}",
            f"kind: {self.kind.value}",
            f"kxs_formula: {self.kxs_formula if self.kxs_formula else '-'}",
        ]
        if self.numerical_evidence is not None:
            lines.append("numerical_evidence (k, integral, error, defect_bound):")
            for row in self.numerical_evidence:
                lines.append(
                    f"  {row.k}  {row.integral:.17e}  {row.error:.17e}  "
                    f"{row.defect_bound:.17e}"
                )
        if self.numerics_note is not None:
            lines.append(f"numerics_note: {self.numerics_note}")
        return "\n".join(lines)


def _graph_summary(g: DualGraph) -> dict:
    return {
        "vertices": g.vertex_count,
        "edges": len(g.edges),
        "self_intersections": list(g.self_intersections),
    }


def _integral_table(n: int, rel_tol: float, k_max: int = 3) -> tuple[IntegralRow, ...]:
    rows = []
    for k in range(1, k_max + 1):
        res: QuadratureResult = integral_Ik(n, k, rel_tol)
        bound = weighted_graph_norm_defect(n, k, rel_tol)
        rows.append(IntegralRow(k, res.value, res.error_estimate, bound.value))
    return tuple(rows)


def classify(
    type_: str, n: int, with_numerics: bool = False, rel_tol: float = 1e-4
) -> ClassificationReport:
    """Kind verdict for the du Val singularity of the given ADE type."""
    type_ = type_.upper()
    g = build_dynkin(type_, n)
    z = fundamental_cycle(g)
    reduced = is_reduced(z)
    kind = Kind.FIRST if reduced else Kind.SECOND
    evidence = None
    note = None
    if with_numerics:
        if type_ == "A":
            evidence = _integral_table(n, rel_tol)
        else:
            note = DE_NUMERICS_NOTE
    return ClassificationReport(
        input_label=f"{type_}{n}",
        dual_graph_summary=_graph_summary(g),
        fundamental_cycle=z,
        reduced=reduced,
        kind=kind,
        kxs_formula=FIRST_KIND_FORMULA if kind is Kind.FIRST else SECOND_KIND_FORMULA,
        numerical_evidence=evidence,
        numerics_note=note,
    )


def classify_graph(g: DualGraph, label: str = "user graph") -> ClassificationReport:
    """Kind verdict for a user-supplied dual graph.

    Graphs that are not du Val (some self-intersection != -2) still get
    their cycle and reducedness, but no kind verdict: the dichotomy is
    only proved for canonical Gorenstein singularities.
    """
    if not is_negative_definite(intersection_form(g)):
        raise ParameterError("graph is not negative definite")
    z = fundamental_cycle(g)
    reduced = is_reduced(z)
    if g.is_all_minus_two():
        kind = Kind.FIRST if reduced else Kind.SECOND
        formula = FIRST_KIND_FORMULA if kind is Kind.FIRST else SECOND_KIND_FORMULA
    else:
        kind = Kind.NOT_DETERMINED
        formula = None
    return ClassificationReport(
        input_label=label,
        dual_graph_summary=_graph_summary(g),
        fundamental_cycle=z,
        reduced=reduced,
        kind=kind,
        kxs_formula=formula,
    )


def classify_graph_dict(doc: dict, label: str = "user graph") -> ClassificationReport:
    from .dual_graph import graph_from_dict

    return classify_graph(graph_from_dict(doc), label=label)
