"""Checkerboard shadings, Tait graphs, Goeritz indices and the unreduced Goeritz matrix."""

from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from ._dsu import DisjointSet

# Orientation of the Goeritz index rule.  With the default, a crossing has
# index +1 when its unshaded quadrants are q0 and q2, i.e. the over-strand
# lies on the right-hand side seen from the unshaded faces.  Setting it to
# True negates every index (used to check the golden matrices can fail).
ETA_RULE_FLIPPED = False

SHADED = 1
UNSHADED = 0


@dataclass(frozen=True)
class Shading:
    sigma: tuple  # sigma[face] in {0, 1}; 1 means shaded
    reference: tuple  # (face id, value) that selected this shading

    def complement(self):
        f, v = self.reference
        return Shading(tuple(1 - s for s in self.sigma), (f, 1 - v))

    def faces(self, color):
        return tuple(f for f, s in enumerate(self.sigma) if s == color)

    @property
    def unshaded(self):
        return self.faces(UNSHADED)

    @property
    def shaded(self):
        return self.faces(SHADED)


@dataclass(frozen=True)
class TaitGraph:
    color: int
    vertices: tuple
    edges: tuple  # (face, face, crossing, eta), one per crossing

    def n_components(self):
        index = {f: k for k, f in enumerate(self.vertices)}
        dsu = DisjointSet(len(self.vertices))
        for a, b, _, _ in self.edges:
            dsu.union(index[a], index[b])
        return len(dsu.classes())


@dataclass(frozen=True)
class GoeritzMatrix:
    matrix: tuple  # rows of exact integers
    face_order: tuple

    @property
    def n(self):
        return len(self.face_order)

    def tolist(self):
        return [list(r) for r in self.matrix]


@dataclass(frozen=True)
class RhoVector:
    face: int
    curve: int
    entries: tuple


class ShadingConflict(AssertionError):
    pass


def checkerboard_shade(d, ref_face=None, ref_value=0):
    """The unique checkerboard shading with ``sigma[ref_face] == ref_value``.

    ``ref_face`` defaults to the unbounded face.
    """
    if ref_face is None:
        ref_face = d.unbounded_face
    n = len(d.faces)
    nbrs = [[] for _ in range(n)]
    for adj in d.adjacencies:
        a, b = adj.faces
        nbrs[a].append(b)
        nbrs[b].append(a)
    sigma = [None] * n
    sigma[ref_face] = ref_value
    queue = deque([ref_face])
    while queue:
        f = queue.popleft()
        for g in nbrs[f]:
            if sigma[g] is None:
                sigma[g] = 1 - sigma[f]
                queue.append(g)
            elif sigma[g] == sigma[f]:
                raise ShadingConflict(f"faces {f} and {g} share an edge and a color")
    if None in sigma:
        raise ShadingConflict("face graph is disconnected")
    return Shading(tuple(sigma), (ref_face, ref_value))


def both_shadings(d):
    s = checkerboard_shade(d)
    return s, s.complement()


def goeritz_index(d, s, crossing, flipped=None):
    """Goeritz index (+1 or -1) of one crossing under shading ``s``."""
    if flipped is None:
        flipped = ETA_RULE_FLIPPED
    q = d.quadrants[crossing]
    eta = 1 if s.sigma[q[0]] == UNSHADED else -1
    return -eta if flipped else eta


def goeritz_indices(d, s, flipped=None):
    return tuple(goeritz_index(d, s, c, flipped) for c in range(d.n_crossings))


def _color_pair(d, s, crossing, color):
    q = d.quadrants[crossing]
    if s.sigma[q[0]] == color:
        return q[0], q[2]
    return q[1], q[3]


def tait_graph(d, s, color=SHADED, flipped=None):
    etas = goeritz_indices(d, s, flipped)
    edges = tuple(
        _color_pair(d, s, c, color) + (c, etas[c]) for c in range(d.n_crossings)
    )
    return TaitGraph(color, s.faces(color), edges)


def beta_count(d, s):
    """Number of connected components of the shaded Tait graph."""
    return tait_graph(d, s, SHADED).n_components()


def goeritz_matrix(d, s, flipped=None):
    """Unreduced Goeritz matrix over the unshaded faces, in ascending face id."""
    if flipped is None:
        flipped = ETA_RULE_FLIPPED
    return _goeritz_matrix(d, s, flipped)


@lru_cache(maxsize=256)
def _goeritz_matrix(d, s, flipped):
    order = s.unshaded
    index = {f: k for k, f in enumerate(order)}
    n = len(order)
    g = [[0] * n for _ in range(n)]
    for c in range(d.n_crossings):
        a, b = _color_pair(d, s, c, UNSHADED)
        if a == b:
            continue
        i, j = index[a], index[b]
        eta = goeritz_index(d, s, c, flipped)
        g[i][j] -= eta
        g[j][i] -= eta
        g[i][i] += eta
        g[j][j] += eta
    return GoeritzMatrix(tuple(tuple(r) for r in g), order)


def crossings_on_curve(d, curve):
    """Crossings having a corner on the given boundary curve (dart orbit)."""
    found = []
    for x in curve:
        # a dart (c, i) of a crossing piece marks the corner q_{i-1}
        k = _piece_of_dart(d, x)
        p = d.pieces[k]
        if p.free_loop:
            continue
        local = x - d.dart_offset[k]
        base = sum(len(q.crossings) for q in d.pieces[:k])
        found.append((base + local // 4, (local - 1) % 4))
    return found


def _piece_of_dart(d, x):
    return bisect_right(d.dart_offset, x) - 1


def boundary_rho(d, s, face, curve_index, flipped=None):
    """The vector rho(gamma) for boundary curve ``curve_index`` of an unshaded face."""
    order = s.unshaded
    if face not in order:
        raise ValueError(f"face {face} is shaded")
    curves = d.faces[face].boundary_curves
    if not 0 <= curve_index < len(curves):
        raise ValueError(f"face {face} has no boundary curve {curve_index}")
    index = {f: k for k, f in enumerate(order)}
    i = index[face]
    rho = [0] * len(order)
    for c, q in crossings_on_curve(d, curves[curve_index]):
        a, b = _color_pair(d, s, c, UNSHADED)
        other = b if a == face else a
        if other == face:
            continue
        rho[index[other]] -= goeritz_index(d, s, c, flipped)
    rho[i] = -sum(rho[k] for k in range(len(rho)) if k != i)
    return RhoVector(face, curve_index, tuple(rho))


def single_shaded_pairs(d, s):
    """Pairs of unshaded faces meeting at a crossing with only one shaded face."""
    out = []
    for c in range(d.n_crossings):
        s1, s2 = _color_pair(d, s, c, SHADED)
        if s1 == s2:
            a, b = _color_pair(d, s, c, UNSHADED)
            out.append((c, a, b))
    return out


def goeritz_report(d, s, flipped=None):
    g = goeritz_matrix(d, s, flipped)
    return {
        "face_order": list(g.face_order),
        "matrix": g.tolist(),
        "eta": list(goeritz_indices(d, s, flipped)),
        "beta": beta_count(d, s),
        "sigma": list(s.sigma),
    }
