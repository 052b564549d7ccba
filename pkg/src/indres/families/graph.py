"""Directed graphs: the path semilattice, its free-group action, and the vertex-matrix complex.

Paths are written ``k1 k2 ... kn`` with ``src(k_i) = dst(k_{i+1})``; the
range of a path is ``dst(k1)`` and its source is ``src(kn)``.  Two paths
multiply to the longer one when one extends the other, and to zero otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..action import GeneratorAction, Move, free_action_check, orbits
from ..covers import CoverSystem, build_resolution, check_all
from ..errors import ValidationError
from ..homology import ChainComplex, IntMatrix
from ..ktheory import KResult, complex_ktheory
from ..zlattice import ZERO, Semilattice


@dataclass(frozen=True)
class GraphDesc:
    vertices: tuple
    edges: tuple  # (src, dst) pairs; position is the edge id

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(set(vs)) != len(vs):
            raise ValidationError("duplicate vertex names")
        es = tuple((s, t) for s, t in self.edges)
        for s, t in es:
            if s not in vs or t not in vs:
                raise ValidationError(f"edge ({s!r}, {t!r}) has an unknown endpoint")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    @classmethod
    def from_json(cls, data: Mapping) -> "GraphDesc":
        try:
            vertices = [str(v) for v in data["vertices"]]
            edges = [(str(e["src"]), str(e["dst"])) for e in data.get("edges", [])]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"graph input needs 'vertices' and 'edges' with src/dst: {exc}") from exc
        return cls(tuple(vertices), tuple(edges))

    def src(self, k):
        return self.edges[k][0]

    def dst(self, k):
        return self.edges[k][1]

    def incoming(self, v) -> list:
        """Edges with range ``v``."""
        return [k for k, (_, t) in enumerate(self.edges) if t == v]

    @property
    def regular(self) -> list:
        """Vertices receiving at least one edge, in vertex order."""
        return [v for v in self.vertices if self.incoming(v)]

    def vertex_matrix(self) -> IntMatrix:
        """``A[v][w]`` = number of edges with range ``v`` and source ``w``."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        A = [[0] * len(self.vertices) for _ in self.vertices]
        for s, t in self.edges:
            A[idx[t]][idx[s]] += 1
        return IntMatrix(A, len(self.vertices))

    def basis_order(self) -> list:
        """Regular vertices first, then the rest; the row order of the complex."""
        reg = set(self.regular)
        return [v for v in self.vertices if v in reg] + [v for v in self.vertices if v not in reg]


@dataclass(frozen=True)
class Path:
    range: str
    edges: tuple = ()

    def __repr__(self):
        return self.range if not self.edges else "k" + ".".join(map(str, self.edges))


class PathSemilattice(Semilattice):
    def __init__(self, graph: GraphDesc):
        self.graph = graph
        self._vindex = {v: i for i, v in enumerate(graph.basis_order())}

    def source(self, p: Path):
        return self.graph.src(p.edges[-1]) if p.edges else p.range

    def _mul(self, a: Path, b: Path):
        if a.range != b.range:
            return ZERO
        short, long_ = (a, b) if len(a.edges) <= len(b.edges) else (b, a)
        return long_ if long_.edges[:len(short.edges)] == short.edges else ZERO

    def key(self, p: Path):
        return (len(p.edges), self._vindex[p.range], p.edges)

    def label(self, p: Path) -> str:
        return repr(p)

    def vertex(self, v) -> Path:
        return Path(v)

    def edge(self, k) -> Path:
        return Path(self.graph.dst(k), (k,))

    def extensions(self, p: Path) -> list:
        s = self.source(p)
        return [Path(p.range, p.edges + (k,)) for k in self.graph.incoming(s)]

    def paths(self, max_len: int) -> list:
        out = [self.vertex(v) for v in self.graph.vertices]
        frontier = list(out)
        for _ in range(max_len):
            frontier = [q for p in frontier for q in self.extensions(p)]
            out += frontier
        return self.sorted(out)


def path_action(E: PathSemilattice) -> GeneratorAction:
    g = E.graph
    moves = {}
    for k in range(len(g.edges)):
        edge = E.edge(k)

        def fwd(x, k=k, edge=edge):
            return Path(edge.range, (k,) + x.edges)

        def bwd(x):
            return Path(E.source(Path(x.range, x.edges[:1])), x.edges[1:])

        moves[k] = Move(E.vertex(g.src(k)), edge, fwd, bwd)
    return GeneratorAction(E, moves)


def path_covers(E: PathSemilattice) -> CoverSystem:
    def covers(p):
        ext = E.extensions(p)
        return [ext] if ext else []

    return CoverSystem(E, covers, 1)


@dataclass
class GraphModel:
    desc: GraphDesc
    semilattice: PathSemilattice
    action: GeneratorAction
    system: CoverSystem

    def universe(self, max_len: int = 2) -> list:
        return self.semilattice.paths(max_len)

    def check(self, max_len: int = 2):
        return check_all(self.semilattice, self.system, self.universe(max_len), self.action)


def graph_model(G: GraphDesc) -> GraphModel:
    E = PathSemilattice(G)
    return GraphModel(G, E, path_action(E), path_covers(E))


def closed_form_boundary(G: GraphDesc) -> IntMatrix:
    """``[I - A0^t ; -A1^t]`` with rows ordered regular vertices first."""
    order = G.basis_order()
    reg = G.regular
    idx = {v: i for i, v in enumerate(G.vertices)}
    A = G.vertex_matrix()
    rows = []
    for v in order:
        rows.append([int(v == w) - A[idx[w], idx[v]] for w in reg])
    return IntMatrix(rows, len(reg))


def graph_complex(G: GraphDesc, check: bool = True) -> ChainComplex:
    """``0 -> Z^{regular} -> Z^{vertices} -> 0`` built from the cover system.

    The builder matrix is compared with the vertex-matrix closed form.
    """
    M = graph_model(G)
    E = M.semilattice
    universe = M.universe(1)
    part = orbits(universe, M.action, strict=False)
    res = build_resolution(M.system, part, M.action, n=1, universe=M.universe(2), check=check)
    C = res.complex()
    expected = closed_form_boundary(G)
    assert C.boundaries[0] == expected, "builder boundary differs from the vertex-matrix formula"
    return C


def graph_ktheory(G: GraphDesc, check: bool = True) -> KResult:
    M = graph_model(G)
    notes = []
    if check:
        free, depth, wit = free_action_check(M.universe(2), M.action, depth=4)
        notes.append(f"free action verified to word length {depth}" if free
                     else f"action not free: {wit!r}")
    return complex_ktheory(graph_complex(G, check=check), notes)
