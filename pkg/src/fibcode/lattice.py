"""Abstract trivalent lattice fragments and F-move rewiring.

A lattice is stored as a ribbon graph.  Every edge has two ends (darts)
``(edge, 0)`` and ``(edge, 1)``; a vertex lists its three darts in
counterclockwise order.  An end attached to no vertex is a free (open)
end.  Qubits stay put while F-moves redraw the graph, so the edge-to-qubit
map never changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional

import numpy as np

from .tensors import ALLOWED_TRIPLES, fibonacci

Dart = tuple[str, int]

MAX_ENUM_EDGES = 13


def _rotate_to(darts: tuple[Dart, ...], first: Dart) -> tuple[Dart, ...]:
    k = darts.index(first)
    return darts[k:] + darts[:k]


def _canonical_cycle(items: tuple) -> tuple:
    k = min(range(len(items)), key=lambda i: items[i])
    return items[k:] + items[:k]


@dataclass(frozen=True)
class Plaquette:
    """A closed face: inner edges in cyclic order and the outer edge at each vertex.

    ``outer[k]`` meets ``inner[k - 1]`` and ``inner[k]`` at the k-th vertex.
    """

    inner: tuple[str, ...]
    outer: tuple[str, ...]

    @property
    def sides(self) -> int:
        return len(self.inner)


@dataclass(frozen=True)
class TrivalentLattice:
    vertices: Mapping[str, tuple[Dart, Dart, Dart]]
    edges: Mapping[str, int]

    def __post_init__(self):
        verts = {v: tuple(tuple(d) for d in ds) for v, ds in self.vertices.items()}
        object.__setattr__(self, "vertices", MappingProxyType(verts))
        object.__setattr__(self, "edges", MappingProxyType(dict(self.edges)))
        seen: set[Dart] = set()
        for v, ds in verts.items():
            if len(ds) != 3:
                raise ValueError(f"vertex {v} has {len(ds)} darts, expected 3")
            for d in ds:
                if d[0] not in self.edges or d[1] not in (0, 1):
                    raise ValueError(f"vertex {v} refers to unknown dart {d}")
                if d in seen:
                    raise ValueError(f"dart {d} attached twice")
                seen.add(d)
        qubits = sorted(self.edges.values())
        if qubits != list(range(len(qubits))):
            raise ValueError("edge qubits must be a bijection onto 0..E-1")
        for e in self.edges:
            if (e, 0) not in seen and (e, 1) not in seen:
                raise ValueError(f"edge {e} is not attached to any vertex")

    @property
    def num_qubits(self) -> int:
        return len(self.edges)

    def dart_vertex(self) -> dict[Dart, str]:
        return {d: v for v, ds in self.vertices.items() for d in ds}

    def edge_vertices(self, edge: str) -> tuple[Optional[str], Optional[str]]:
        where = self.dart_vertex()
        return where.get((edge, 0)), where.get((edge, 1))

    def vertex_qubits(self) -> list[tuple[int, int, int]]:
        return [tuple(self.edges[d[0]] for d in ds) for ds in self.vertices.values()]

    def faces(self) -> list[list[Dart]]:
        """Orbits of the face permutation; free ends are fixed points of the rotation."""
        where = self.dart_vertex()

        def sigma(d: Dart) -> Dart:
            v = where.get(d)
            if v is None:
                return d
            ds = self.vertices[v]
            return ds[(ds.index(d) + 1) % 3]

        all_darts = [(e, end) for e in self.edges for end in (0, 1)]
        seen: set[Dart] = set()
        orbits = []
        for start in all_darts:
            if start in seen:
                continue
            orbit = []
            d = start
            while d not in seen:
                seen.add(d)
                orbit.append(d)
                d = sigma((d[0], 1 - d[1]))
            orbits.append(orbit)
        return orbits

    def plaquettes(self) -> list[Plaquette]:
        """Closed faces (faces touching no free end)."""
        where = self.dart_vertex()
        out = []
        for orbit in self.faces():
            if any(d not in where for d in orbit):
                continue
            inner = tuple(d[0] for d in orbit)
            outer = []
            for k, d in enumerate(orbit):
                arriving = (orbit[k - 1][0], 1 - orbit[k - 1][1])
                ds = self.vertices[where[d]]
                rest = [x for x in ds if x != d and x != arriving]
                if len(rest) != 1:
                    raise ValueError("malformed face")
                outer.append(rest[0][0])
            out.append(Plaquette(inner, tuple(outer)))
        return out

    def plaquette(self) -> Plaquette:
        ps = self.plaquettes()
        if len(ps) != 1:
            raise ValueError(f"expected exactly one closed plaquette, found {len(ps)}")
        return ps[0]

    def is_tadpole(self) -> bool:
        ps = self.plaquettes()
        return len(ps) == 1 and ps[0].sides == 1

    def signature(self, rename: Optional[Mapping[str, str]] = None) -> frozenset:
        """Shape of the graph by edge names, insensitive to vertex ids and dart ends."""
        rename = rename or {}
        return frozenset(_canonical_cycle(tuple(rename.get(d[0], d[0]) for d in ds))
                         for ds in self.vertices.values())

    def dumps(self) -> str:
        lines = [f"vertex {v}: {' '.join(d[0] for d in ds)}" for v, ds in self.vertices.items()]
        lines += [f"edge {e}: qubit {q}" for e, q in self.edges.items()]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FMoveRecord:
    """Roles of one F-move.  For a reduced move ``a == d`` and ``qubits`` has four entries."""

    edge: str
    roles: Mapping[str, str]
    qubits: Mapping[str, int]
    reduced: bool
    lattice: TrivalentLattice

    def role_qubits(self) -> tuple[int, int, int, int, int]:
        q = self.qubits
        return q["a"], q["b"], q["c"], q["d"], q["e"]


_DIHEDRAL = (
    (0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2),
    (3, 2, 1, 0), (2, 1, 0, 3), (1, 0, 3, 2), (0, 3, 2, 1),
)


def _normalize_roles(abcd: tuple[str, str, str, str]) -> tuple[tuple[str, str, str, str], bool]:
    """Relabel the four outer roles so any single identification reads a == d.

    The F-move is unchanged under the symmetries of the square a-b-c-d.
    """
    if len(set(abcd)) == 4:
        return abcd, False
    for perm in _DIHEDRAL:
        p = tuple(abcd[i] for i in perm)
        if p[0] == p[3] and len({p[0], p[1], p[2]}) == 3:
            return p, True
    raise ValueError(f"role pattern {abcd} does not match an F-move")


def apply_fmove(lattice: TrivalentLattice, edge: str) -> tuple[TrivalentLattice, FMoveRecord]:
    """Redraw the edge ``edge`` between the opposite pair of its neighbors.

    With the edge's vertices ``(e, a, b)`` and ``(e, c, d)`` (counterclockwise),
    the new vertices are ``(e, d, a)`` and ``(e, b, c)``.
    """
    if edge not in lattice.edges:
        raise KeyError(f"unknown edge {edge!r}")
    u, v = lattice.edge_vertices(edge)
    if u is None or v is None:
        raise ValueError(f"edge {edge!r} has a free end; F-moves need an internal edge")
    if u == v:
        raise ValueError(f"edge {edge!r} is a loop; F-moves need two distinct vertices")
    du, dv = (edge, 0), (edge, 1)
    _, x1, x2 = _rotate_to(lattice.vertices[u], du)
    _, y1, y2 = _rotate_to(lattice.vertices[v], dv)
    raw = (x1[0], x2[0], y1[0], y2[0])
    if edge in raw:
        raise ValueError(f"edge {edge!r} neighbors itself; not an F-move site")
    (a, b, c, d), reduced = _normalize_roles(raw)

    verts = dict(lattice.vertices)
    verts[u] = (du, y2, x1)
    verts[v] = (dv, x2, y1)
    new = TrivalentLattice(verts, lattice.edges)
    roles = {"a": a, "b": b, "c": c, "d": d, "e": edge}
    qubits = {k: lattice.edges[name] for k, name in roles.items()}
    return new, FMoveRecord(edge, MappingProxyType(roles), MappingProxyType(qubits), reduced, new)


def build_plaquette(n: int) -> TrivalentLattice:
    """An n-sided plaquette with its n outer legs.

    Inner edges ``i1..in`` take qubits ``0..n-1`` and outer edges ``a1..an``
    take ``n..2n-1``.  Vertex ``k`` joins ``a_k``, ``i_{k-1}`` and ``i_k``.
    """
    if not 2 <= n <= 6:
        raise ValueError(f"plaquette sides must be in 2..6, got {n}")
    edges = {f"i{k}": k - 1 for k in range(1, n + 1)}
    edges.update({f"a{k}": n + k - 1 for k in range(1, n + 1)})
    verts = {}
    for k in range(1, n + 1):
        prev = n if k == 1 else k - 1
        verts[f"v{k}"] = ((f"a{k}", 0), (f"i{k}", 0), (f"i{prev}", 1))
    return TrivalentLattice(verts, edges)


def reduction_plan(n: int) -> list[FMoveRecord]:
    """F-moves that shrink an n-gon to a tadpole, one side per move.

    Moves act on ``i1, i2, ..., i_{n-1}`` in turn; the last one is the
    reduced move on the remaining 2-gon.
    """
    lattice = build_plaquette(n)
    records = []
    for k in range(1, n):
        lattice, rec = apply_fmove(lattice, f"i{k}")
        records.append(rec)
    if not records[-1].reduced or any(r.reduced for r in records[:-1]):
        raise AssertionError("reduction plan did not end with a single reduced move")
    if not lattice.is_tadpole():
        raise AssertionError("reduction plan did not produce a tadpole")
    return records


def tadpole_roles(lattice: TrivalentLattice) -> tuple[str, str]:
    """(tail, head) edge names of a tadpole lattice."""
    p = lattice.plaquette()
    if p.sides != 1:
        raise ValueError("lattice is not a tadpole")
    return p.outer[0], p.inner[0]


def build_pentagon_tree() -> TrivalentLattice:
    """Seven-edge tree: leaves 1, 2, 3, 4, 7 and internal edges 5, 6 (qubits 0..6)."""
    edges = {str(k): k - 1 for k in range(1, 8)}
    verts = {
        "A": (("1", 0), ("2", 0), ("5", 0)),
        "B": (("5", 1), ("3", 0), ("6", 0)),
        "C": (("6", 1), ("4", 0), ("7", 0)),
    }
    return TrivalentLattice(verts, edges)


PENTAGON_MOVES = ("5", "6", "5", "6", "5")


def build_line_with_tadpole() -> TrivalentLattice:
    """Line 1-2 with a tadpole attached: tail 3, head 4 (qubits 0..3)."""
    edges = {str(k): k - 1 for k in range(1, 5)}
    verts = {
        "L": (("1", 0), ("2", 0), ("3", 0)),
        "T": (("3", 1), ("4", 0), ("4", 1)),
    }
    return TrivalentLattice(verts, edges)


PULL_MOVES = ("3", "4")


def valid_indices(lattice: TrivalentLattice) -> np.ndarray:
    """Basis indices satisfying the fusion rule at every vertex."""
    n = lattice.num_qubits
    if n > MAX_ENUM_EDGES:
        raise ValueError(f"enumeration limited to {MAX_ENUM_EDGES} edges, lattice has {n}")
    return valid_mask(n, lattice.vertex_qubits()).nonzero()[0]


def valid_mask(num_qubits: int, vertices: list[tuple[int, int, int]]) -> np.ndarray:
    idx = np.arange(1 << num_qubits)
    ok = np.ones(idx.size, dtype=bool)
    for q1, q2, q3 in vertices:
        code = ((idx >> q1) & 1) * 4 + ((idx >> q2) & 1) * 2 + ((idx >> q3) & 1)
        allowed = np.zeros(8, dtype=bool)
        for i, j, k in ALLOWED_TRIPLES:
            allowed[4 * i + 2 * j + k] = True
        ok &= allowed[code]
    return ok


def enumerate_valid_states(lattice: TrivalentLattice) -> list[str]:
    """Bit strings (qubit 0 first) with every vertex constraint satisfied."""
    n = lattice.num_qubits
    return ["".join("1" if (i >> q) & 1 else "0" for q in range(n)) for i in valid_indices(lattice)]


def plaquette_dimensions(n: int) -> tuple[int, int]:
    """Closed-form (Dim[B_p = 1], Dim[B_p = 0]) for an n-gon."""
    return fibonacci(2 * n - 1), fibonacci(2 * n + 1)
