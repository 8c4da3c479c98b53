"""Planar link diagrams: parsing, validation, faces, arcs and link components.

A diagram is a forest of *pieces*.  A piece is either a connected PD code
(``X a b c d`` entries listed counterclockwise, positions 0 and 2 on the
under-strand) or a crossing-free circle ``O``.  Placements put a piece inside
a face of another piece; unplaced pieces sit side by side in the unbounded
face.

Darts are numbered globally: pieces in file order, ``4 * crossing + position``
inside a crossing piece, and ``0`` (outside) / ``1`` (inside) for a circle.
Faces are orbits of ``next_ccw(partner(dart))`` merged across placements, and
get ids in order of their smallest dart.  The quadrant ``q_i`` of a crossing
is the corner between positions ``i`` and ``i + 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from ._dsu import DisjointSet


class DiagramError(ValueError):
    """Raised for malformed diagram sources."""

    def __init__(self, code, message, line=None, column=None):
        self.code = code
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{code}: {message}{where}")


@dataclass(frozen=True)
class Crossing:
    labels: tuple


@dataclass(frozen=True)
class Piece:
    name: str
    crossings: tuple = ()
    free_loop: bool = False
    outer_face: int | None = None
    line: int | None = field(default=None, compare=False)

    @property
    def n_darts(self):
        return 2 if self.free_loop else 4 * len(self.crossings)

    @cached_property
    def edge_labels(self):
        """Edge labels in order of first appearance."""
        if self.free_loop:
            return ("O",)
        seen = {}
        for x in self.crossings:
            for lab in x.labels:
                seen.setdefault(lab, None)
        return tuple(seen)

    @cached_property
    def label_counts(self):
        counts = {}
        for x in self.crossings:
            for lab in x.labels:
                counts[lab] = counts.get(lab, 0) + 1
        return counts

    @cached_property
    def partner(self):
        """Local edge involution on darts (the other end of each edge)."""
        if self.free_loop:
            return (1, 0)
        ends = {}
        for c, x in enumerate(self.crossings):
            for i, lab in enumerate(x.labels):
                ends.setdefault(lab, []).append(4 * c + i)
        alpha = [0] * self.n_darts
        for lab, ds in ends.items():
            if len(ds) != 2:
                raise DiagramError(
                    "EDGE_MULTIPLICITY",
                    f"edge {lab!r} of piece {self.name!r} occurs {len(ds)} times",
                    self.line,
                )
            a, b = ds
            alpha[a], alpha[b] = b, a
        return tuple(alpha)

    @cached_property
    def orbits(self):
        """Face boundary curves of the piece, ordered by smallest dart."""
        if self.free_loop:
            return ((0,), (1,))
        alpha = self.partner
        seen = [False] * self.n_darts
        out = []
        for start in range(self.n_darts):
            if seen[start]:
                continue
            orbit = []
            x = start
            while not seen[x]:
                seen[x] = True
                orbit.append(x)
                y = alpha[x]
                x = (y & ~3) | ((y + 1) & 3)
            out.append(tuple(orbit))
        return tuple(out)

    @cached_property
    def orbit_of_dart(self):
        table = [0] * self.n_darts
        for k, orbit in enumerate(self.orbits):
            for x in orbit:
                table[x] = k
        return tuple(table)

    @property
    def outer_orbit(self):
        return 0 if self.outer_face is None else self.outer_face

    def is_connected(self):
        if self.free_loop or len(self.crossings) <= 1:
            return True
        dsu = DisjointSet(len(self.crossings))
        alpha = self.partner
        for x in range(self.n_darts):
            dsu.union(x // 4, alpha[x] // 4)
        return len(dsu.classes()) == 1

    def euler_characteristic(self):
        v = len(self.crossings)
        return v - 2 * v + len(self.orbits)


@dataclass(frozen=True)
class Placement:
    child: str
    host: str | None  # None places the child in the unbounded face
    host_face: int = 0


@dataclass(frozen=True)
class Face:
    id: int
    boundary_curves: tuple
    is_unbounded: bool

    @property
    def darts(self):
        return tuple(x for curve in self.boundary_curves for x in curve)


@dataclass(frozen=True)
class Arc:
    id: int
    edges: tuple


@dataclass(frozen=True)
class LinkComponent:
    id: int
    edges: tuple


@dataclass(frozen=True)
class Adjacency:
    """The two faces on either side of one edge."""

    faces: tuple
    edge: int
    arc: int
    component: int


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    location: str = ""


@dataclass
class ValidationReport:
    ok: bool
    errors: list
    pieces: list = field(default_factory=list)

    def to_dict(self):
        return {
            "ok": self.ok,
            "errors": [
                {"code": e.code, "message": e.message, "location": e.location}
                for e in self.errors
            ],
            "pieces": self.pieces,
        }


class Diagram:
    """A link diagram; all derived structure is computed lazily and cached."""

    def __init__(self, pieces, placements=()):
        self.pieces = tuple(pieces)
        self.placements = tuple(placements)
        self.piece_index = {p.name: k for k, p in enumerate(self.pieces)}

    def __repr__(self):
        return (
            f"Diagram({len(self.pieces)} pieces, {self.n_crossings} crossings)"
        )

    def __eq__(self, other):
        return (
            isinstance(other, Diagram)
            and self.pieces == other.pieces
            and set(self.placements) == set(other.placements)
        )

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.pieces, frozenset(self.placements)))

    # -- darts and crossings ------------------------------------------------

    @cached_property
    def dart_offset(self):
        out, total = [], 0
        for p in self.pieces:
            out.append(total)
            total += p.n_darts
        return tuple(out)

    @property
    def n_darts(self):
        return sum(p.n_darts for p in self.pieces)

    @cached_property
    def crossings(self):
        """Global crossing list as ``(piece index, local crossing index)``."""
        return tuple(
            (k, c)
            for k, p in enumerate(self.pieces)
            for c in range(len(p.crossings))
        )

    @property
    def n_crossings(self):
        return len(self.crossings)

    @property
    def n_free_loops(self):
        return sum(1 for p in self.pieces if p.free_loop)

    def dart(self, crossing, position):
        k, c = self.crossings[crossing]
        return self.dart_offset[k] + 4 * c + (position % 4)

    @cached_property
    def partner(self):
        out = []
        for p, off in zip(self.pieces, self.dart_offset):
            out.extend(off + y for y in p.partner)
        return tuple(out)

    # -- edges ----------------------------------------------------------------

    @cached_property
    def edges(self):
        """Global edges as ``(piece name, label)``."""
        return tuple((p.name, lab) for p in self.pieces for lab in p.edge_labels)

    @cached_property
    def edge_of_dart(self):
        table = []
        base = 0
        for p in self.pieces:
            local = {lab: base + j for j, lab in enumerate(p.edge_labels)}
            if p.free_loop:
                table.extend([base, base])
            else:
                for x in p.crossings:
                    table.extend(local[lab] for lab in x.labels)
            base += len(p.edge_labels)
        return tuple(table)

    @cached_property
    def edge_darts(self):
        ends = [[] for _ in self.edges]
        for x, e in enumerate(self.edge_of_dart):
            ends[e].append(x)
        return tuple(tuple(d) for d in ends)

    # -- faces ----------------------------------------------------------------

    @cached_property
    def _orbit_table(self):
        """Global orbit list, plus (piece, local orbit) -> global orbit index."""
        orbits, index = [], {}
        for k, (p, off) in enumerate(zip(self.pieces, self.dart_offset)):
            for j, orbit in enumerate(p.orbits):
                index[k, j] = len(orbits)
                orbits.append(tuple(off + x for x in orbit))
        return orbits, index

    @cached_property
    def faces(self):
        orbits, index = self._orbit_table
        dsu = DisjointSet(len(orbits))
        hosted = set()
        for pl in self.placements:
            child = self.piece_index[pl.child]
            outer = index[child, self.pieces[child].outer_orbit]
            if pl.host is None:
                continue
            hosted.add(child)
            dsu.union(outer, index[self.piece_index[pl.host], pl.host_face])
        top = [
            index[k, p.outer_orbit]
            for k, p in enumerate(self.pieces)
            if k not in hosted
        ]
        for t in top[1:]:
            dsu.union(top[0], t)
        unbounded = dsu.find(top[0]) if top else None
        return tuple(
            Face(
                id=i,
                boundary_curves=tuple(orbits[j] for j in cls),
                is_unbounded=dsu.find(cls[0]) == unbounded,
            )
            for i, cls in enumerate(dsu.classes())
        )

    @cached_property
    def face_of_dart(self):
        table = [0] * self.n_darts
        for f in self.faces:
            for x in f.darts:
                table[x] = f.id
        return tuple(table)

    @cached_property
    def unbounded_face(self):
        return next(f.id for f in self.faces if f.is_unbounded)

    def piece_face(self, piece, local_face):
        """Global face id of ``piece.face(local_face)``."""
        k = self.piece_index[piece] if isinstance(piece, str) else piece
        orbit = self.pieces[k].orbits[local_face]
        return self.face_of_dart[self.dart_offset[k] + orbit[0]]

    @cached_property
    def quadrants(self):
        """Per crossing, the faces ``(q0, q1, q2, q3)``."""
        fd = self.face_of_dart
        return tuple(
            tuple(fd[self.dart(c, i + 1)] for i in range(4))
            for c in range(self.n_crossings)
        )

    # -- arcs and components -----------------------------------------------

    def _edge_classes(self, pairs):
        dsu = DisjointSet(len(self.edges))
        eod = self.edge_of_dart
        for c in range(self.n_crossings):
            for i, j in pairs:
                dsu.union(eod[self.dart(c, i)], eod[self.dart(c, j)])
        return dsu.classes()

    @cached_property
    def arcs(self):
        return tuple(
            Arc(id=i, edges=tuple(cls))
            for i, cls in enumerate(self._edge_classes([(1, 3)]))
        )

    @cached_property
    def components(self):
        return tuple(
            LinkComponent(id=i, edges=tuple(cls))
            for i, cls in enumerate(self._edge_classes([(0, 2), (1, 3)]))
        )

    @cached_property
    def arc_of_edge(self):
        table = [0] * len(self.edges)
        for a in self.arcs:
            for e in a.edges:
                table[e] = a.id
        return tuple(table)

    @cached_property
    def component_of_edge(self):
        table = [0] * len(self.edges)
        for k in self.components:
            for e in k.edges:
                table[e] = k.id
        return tuple(table)

    def crossing_arcs(self, c):
        """``(under, under, over)`` arcs at crossing ``c``."""
        a = self.arc_of_edge
        e = self.edge_of_dart
        return (
            a[e[self.dart(c, 0)]],
            a[e[self.dart(c, 2)]],
            a[e[self.dart(c, 1)]],
        )

    @cached_property
    def adjacencies(self):
        out = []
        fd = self.face_of_dart
        for e, (x, y) in enumerate(self.edge_darts):
            out.append(
                Adjacency(
                    faces=(fd[x], fd[y]),
                    edge=e,
                    arc=self.arc_of_edge[e],
                    component=self.component_of_edge[e],
                )
            )
        return tuple(out)

    # -- serialization ------------------------------------------------------

    def to_text(self):
        lines = []
        for p in self.pieces:
            if p.free_loop:
                body = "O"
            else:
                body = " ; ".join(
                    "X " + " ".join(str(lab) for lab in x.labels)
                    for x in p.crossings
                )
            lines.append(f"piece {p.name} {{ {body} }}")
        for p in self.pieces:
            if p.outer_face is not None:
                lines.append(f"outer {p.name}.face({p.outer_face})")
        for pl in self.placements:
            if pl.host is not None:
                lines.append(f"place {pl.child} in {pl.host}.face({pl.host_face})")
        return "\n".join(lines) + "\n"

    def with_placements(self, placements):
        return Diagram(self.pieces, placements)


# -- parsing --------------------------------------------------------------

_TOKEN = re.compile(r"\s+|#[^\n]*|[{};().]|[A-Za-z0-9_\-+]+|.")


def _tokenize(text):
    line, col_start = 1, 0
    for m in _TOKEN.finditer(text):
        tok = m.group()
        start = m.start()
        if tok[0].isspace() or tok[0] == "#":
            for k, ch in enumerate(tok):
                if ch == "\n":
                    line += 1
                    col_start = start + k + 1
            continue
        yield tok, line, start - col_start + 1


class _Parser:
    def __init__(self, text):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def where(self):
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else ("", 1, 0)
            return last[1], last[2] + len(last[0])
        return tok[1], tok[2]

    def fail(self, message):
        line, col = self.where()
        raise DiagramError("SYNTAX", message, line, col)

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            self.fail(f"unexpected end of input, expected {expected or 'token'}")
        if expected is not None and tok[0] != expected:
            self.fail(f"expected {expected!r}, got {tok[0]!r}")
        self.pos += 1
        return tok

    def word(self, what):
        tok = self.peek()
        if tok is None or not re.fullmatch(r"[A-Za-z0-9_\-+]+", tok[0]):
            self.fail(f"expected {what}")
        self.pos += 1
        return tok

    def face_ref(self):
        name = self.word("piece name")
        self.take(".")
        self.take("face")
        self.take("(")
        num = self.word("face id")
        if not num[0].isdigit():
            self.pos -= 1
            self.fail("face id must be a non-negative integer")
        self.take(")")
        return name, int(num[0])

    def piece(self):
        _, line, _ = self.take("piece")
        name = self.word("piece name")[0]
        self.take("{")
        if self.peek() and self.peek()[0] == "O":
            self.take("O")
            if self.peek() and self.peek()[0] == ";":
                self.take(";")
            self.take("}")
            return Piece(name, free_loop=True, line=line)
        crossings = []
        while True:
            self.take("X")
            labels = tuple(self.word("edge label")[0] for _ in range(4))
            crossings.append(Crossing(labels))
            if self.peek() and self.peek()[0] == ";":
                self.take(";")
            if self.peek() and self.peek()[0] == "}":
                self.take("}")
                break
        return Piece(name, crossings=tuple(crossings), line=line)

    def parse(self):
        pieces, places, outers = [], [], []
        while self.peek() is not None:
            tok, line, col = self.peek()
            if tok == "piece":
                pieces.append(self.piece())
            elif tok == "place":
                self.take()
                child = self.word("piece name")
                self.take("in")
                host, face = self.face_ref()
                places.append((child, host, face))
            elif tok == "outer":
                self.take()
                name, face = self.face_ref()
                outers.append((name, face))
            else:
                self.fail(f"unexpected token {tok!r}")
        return pieces, places, outers


def parse_diagram(text):
    """Parse diagram source text into a :class:`Diagram`.

    Raises :class:`DiagramError` on syntax errors, edge labels that do not
    occur exactly twice in their piece, unknown or duplicate pieces,
    placement cycles and unknown face references.  Geometric validity
    (connectedness, genus) is left to :func:`validate_diagram`.
    """
    pieces, places, outers = _Parser(text).parse()
    by_name = {}
    for p in pieces:
        if p.name in by_name:
            raise DiagramError(
                "DUPLICATE_PIECE", f"piece {p.name!r} defined twice", p.line
            )
        p.partner  # edge multiplicity check
        by_name[p.name] = p

    def lookup(tok):
        name, line, col = tok
        if name not in by_name:
            raise DiagramError("UNKNOWN_PIECE", f"no piece {name!r}", line, col)
        return by_name[name]

    def check_face(tok, face):
        p = lookup(tok)
        if face >= len(p.orbits):
            raise DiagramError(
                "UNKNOWN_HOST_FACE",
                f"piece {p.name!r} has faces 0..{len(p.orbits) - 1}, not {face}",
                tok[1],
                tok[2],
            )

    for tok, face in outers:
        check_face(tok, face)
        p = by_name[tok[0]]
        by_name[p.name] = Piece(p.name, p.crossings, p.free_loop, face, p.line)

    placements = []
    placed = set()
    for child, host, face in places:
        lookup(child)
        check_face(host, face)
        if child[0] in placed:
            raise DiagramError(
                "DUPLICATE_PLACEMENT",
                f"piece {child[0]!r} placed twice",
                child[1],
                child[2],
            )
        placed.add(child[0])
        placements.append(Placement(child[0], host[0], face))

    cycle = _placement_cycle(placements)
    if cycle:
        raise DiagramError(
            "PLACEMENT_CYCLE", "placements form a cycle: " + " -> ".join(cycle)
        )
    return Diagram([by_name[p.name] for p in pieces], placements)


def _placement_cycle(placements):
    host_of = {pl.child: pl.host for pl in placements if pl.host is not None}
    for start in host_of:
        path = [start]
        node = host_of.get(start)
        while node is not None:
            if node in path:
                return path[path.index(node):] + [node]
            path.append(node)
            node = host_of.get(node)
    return None


def validate_diagram(d):
    """Check every piece is connected, 4-valent and planar, and that
    placements form a forest.  Never raises; failures go in the report."""
    errors = []
    stats = []
    if not d.pieces:
        errors.append(Issue("EMPTY_DIAGRAM", "diagram has no pieces"))
    for p in d.pieces:
        loc = f"piece {p.name}"
        if p.free_loop:
            stats.append({"piece": p.name, "free_loop": True})
            continue
        if not p.crossings:
            errors.append(Issue("EMPTY_PIECE", "piece has no crossings", loc))
            continue
        bad = [x for x in p.crossings if len(x.labels) != 4]
        if bad:
            errors.append(Issue("NOT_4_VALENT", "crossing without 4 ends", loc))
            continue
        counts = p.label_counts
        wrong = sorted(str(lab) for lab, n in counts.items() if n != 2)
        if wrong:
            errors.append(
                Issue(
                    "EDGE_MULTIPLICITY",
                    "edge labels not used exactly twice: " + ", ".join(wrong),
                    loc,
                )
            )
            continue
        v, e, f = len(p.crossings), 2 * len(p.crossings), len(p.orbits)
        stats.append({"piece": p.name, "V": v, "E": e, "F": f})
        if not p.is_connected():
            errors.append(Issue("DISCONNECTED_PIECE", "piece is not connected", loc))
        elif v - e + f != 2:
            errors.append(
                Issue("GENUS_NONZERO", f"V - E + F = {v - e + f}, expected 2", loc)
            )
        if p.outer_face is not None and p.outer_face >= f:
            errors.append(Issue("UNKNOWN_FACE", "outer face out of range", loc))
    names = d.piece_index
    seen = set()
    for pl in d.placements:
        if pl.child not in names or (pl.host is not None and pl.host not in names):
            errors.append(Issue("UNKNOWN_PIECE", f"bad placement {pl}"))
            continue
        if pl.child in seen:
            errors.append(Issue("DUPLICATE_PLACEMENT", f"{pl.child} placed twice"))
        seen.add(pl.child)
        if pl.host is not None:
            host = d.pieces[names[pl.host]]
            if pl.host_face >= len(host.orbits):
                errors.append(
                    Issue("UNKNOWN_HOST_FACE", f"{pl.host} has no face {pl.host_face}")
                )
    if _placement_cycle(list(d.placements)):
        errors.append(Issue("PLACEMENT_CYCLE", "placements form a cycle"))
    return ValidationReport(ok=not errors, errors=errors, pieces=stats)


def compute_faces(d):
    return d.faces


def compute_arcs(d):
    return d.arcs


def compute_link_components(d):
    return d.components


def face_adjacency(d):
    return d.adjacencies
