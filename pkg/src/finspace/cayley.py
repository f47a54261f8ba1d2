"""The 2-complex canonically attached to a presentation over a concrete
finite group: one vertex per group element, one edge per (element,
generator) pair, one face per (element, relator) pair attached along the
relator walk.  Left multiplication acts freely on cells of each dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import CosetTable
from .presentations import ReducedPresentation, Word


@dataclass(frozen=True, order=True)
class Vertex:
    element: int


@dataclass(frozen=True, order=True)
class EdgeCell:
    base: int
    gen: str


@dataclass(frozen=True, order=True)
class FaceCell:
    base: int
    relator: int


def cell_dim(cell) -> int:
    if isinstance(cell, Vertex):
        return 0
    if isinstance(cell, EdgeCell):
        return 1
    if isinstance(cell, FaceCell):
        return 2
    raise TypeError(f"not a cell: {cell!r}")


def cell_label(cell) -> str:
    if isinstance(cell, Vertex):
        return str(cell.element)
    if isinstance(cell, EdgeCell):
        return f"({cell.base},{cell.gen})"
    return f"({cell.base},r{cell.relator})"


@dataclass(frozen=True)
class OrientedEdge:
    """An edge cell as traversed by a relator walk.  The intrinsic tail of
    EdgeCell(g, s) is g and its head is g*s; a letter s^-1 traverses the
    cell against its intrinsic orientation, swapping tail and head."""

    cell: EdgeCell
    reversed: bool
    tail: int
    head: int


def boundary_edge(table: CosetTable, base: int, r: Word, i: int) -> OrientedEdge:
    """The oriented edge traversed by letter i (0-based) of the walk that
    reads r starting at base."""
    if not 0 <= i < len(r):
        raise IndexError(f"letter index {i} out of range for relator of length {len(r)}")
    letter = r.letters[i]
    tail = table.apply(base, r.subword(0, i))
    head = table.step(tail, letter)
    if letter.sign == 1:
        return OrientedEdge(EdgeCell(tail, letter.gen), False, tail, head)
    return OrientedEdge(EdgeCell(head, letter.gen), True, tail, head)


class AttachingMapViolation(ValueError):
    def __init__(self, report: "AttachingReport"):
        super().__init__(
            "attaching maps are degenerate: " + "; ".join(report.violations)
        )
        self.report = report


@dataclass(frozen=True)
class AttachingReport:
    ok: bool
    violations: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class CayleyComplex:
    table: CosetTable
    vertices: tuple[Vertex, ...]
    edges: tuple[EdgeCell, ...]
    faces: tuple[FaceCell, ...]
    walks: dict[FaceCell, tuple[OrientedEdge, ...]]

    def cells(self) -> tuple:
        return self.vertices + self.edges + self.faces

    def edge_endpoints(self, e: EdgeCell) -> tuple[int, int]:
        return e.base, self.table.rows[e.base][self.table.column(e.gen, 1)]

    def cell_boundary(self, cell) -> frozenset:
        """All cells of strictly lower dimension incident to the cell; for a
        face this includes both the walk's edges and their vertices, so the
        relation 'is in the boundary of' is transitively closed."""
        if isinstance(cell, Vertex):
            return frozenset()
        if isinstance(cell, EdgeCell):
            t, h = self.edge_endpoints(cell)
            return frozenset({Vertex(t), Vertex(h)})
        walk = self.walks[cell]
        cells = set()
        for oe in walk:
            cells.add(oe.cell)
            cells.add(Vertex(oe.tail))
            cells.add(Vertex(oe.head))
        return frozenset(cells)

    def boundary_order(self) -> dict:
        """cell -> set of cells strictly below it in the face order."""
        return {c: self.cell_boundary(c) for c in self.cells()}

    def act(self, g: int, cell):
        """Left multiplication by group element g."""
        if isinstance(cell, Vertex):
            return Vertex(self.table.left_multiply(g, cell.element))
        if isinstance(cell, EdgeCell):
            return EdgeCell(self.table.left_multiply(g, cell.base), cell.gen)
        return FaceCell(self.table.left_multiply(g, cell.base), cell.relator)

    def cell_action(self) -> list[dict]:
        """One cell permutation (as a dict) per group element."""
        return [
            {c: self.act(g, c) for c in self.cells()} for g in range(self.table.size)
        ]


def validate_attaching(complex: CayleyComplex) -> AttachingReport:
    """Check that no edge is a loop and that every face walk closes up after
    visiting distinct vertices and distinct edge cells.  For a certified
    reduced presentation these all hold; the checks catch bad inputs."""
    violations = []
    for e in complex.edges:
        t, h = complex.edge_endpoints(e)
        if t == h:
            violations.append(f"degenerate edge {cell_label(e)} has equal endpoints")
    for f in complex.faces:
        walk = complex.walks[f]
        tails = [oe.tail for oe in walk]
        if len(set(tails)) != len(tails):
            violations.append(f"walk of {cell_label(f)} revisits a vertex")
        if walk and walk[-1].head != walk[0].tail:
            violations.append(f"walk of {cell_label(f)} does not close up")
        cells = [oe.cell for oe in walk]
        if len(set(cells)) != len(cells):
            violations.append(f"walk of {cell_label(f)} repeats an edge cell")
    return AttachingReport(not violations, tuple(violations))


def build_cayley_complex(rp: ReducedPresentation, table: CosetTable) -> CayleyComplex:
    """Assemble the complex for a certified reduced presentation over the
    group realized by a complete coset table for the same presentation."""
    if not isinstance(rp, ReducedPresentation):
        raise TypeError("build_cayley_complex needs a certified ReducedPresentation")
    pres = rp.presentation
    if table.presentation.generators != pres.generators:
        raise ValueError("coset table was built for different generators")
    n = table.size
    vertices = tuple(Vertex(g) for g in range(n))
    edges = tuple(EdgeCell(g, s) for g in range(n) for s in pres.generators)
    faces = tuple(FaceCell(g, k) for g in range(n) for k in range(len(pres.relators)))
    walks = {
        f: tuple(
            boundary_edge(table, f.base, pres.relators[f.relator], i)
            for i in range(len(pres.relators[f.relator]))
        )
        for f in faces
    }
    complex = CayleyComplex(table, vertices, edges, faces, walks)
    report = validate_attaching(complex)
    if not report.ok:
        raise AttachingMapViolation(report)
    return complex
