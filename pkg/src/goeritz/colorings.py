"""Fox and Dehn colorings, the maps between them, and the coloring groups.

Colorings here take values in Z/m.  Structural results (``fox_group``,
``dehn_group``) accept any finitely generated coefficient group.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache
from dataclasses import dataclass, field, asdict

import numpy as np

from ._dsu import DisjointSet
from .diagram import Placement
from .linalg import (
    CapExceeded,
    FgAbelianGroup,
    IntMatrix,
    ModVector,
    direct_sum,
    enumerate_solutions_mod_m,
    enumeration_cap,
    in_kernel_mod_m,
    kernel_basis_mod_m,
    kernel_structure,
    rank_mod_p,
    smith_normal_form,
    solution_count_mod_m,
)
from .shading import (
    SHADED,
    beta_count,
    both_shadings,
    boundary_rho,
    goeritz_matrix,
    single_shaded_pairs,
)

# sign of each quadrant in the crossing relation d(q0) + d(q1) = d(q2) + d(q3)
DEHN_SIGNS = (1, 1, -1, -1)


class ColoringError(ValueError):
    def __init__(self, code, message):
        self.code = code
        super().__init__(f"{code}: {message}")


@dataclass(frozen=True)
class FoxColoring:
    modulus: int
    values: tuple  # one per arc

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(x) % self.modulus for x in self.values))

    def __add__(self, other):
        return FoxColoring(self.modulus, tuple(a + b for a, b in zip(self.values, other.values)))


@dataclass(frozen=True)
class DehnColoring:
    modulus: int
    values: tuple  # one per face

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(x) % self.modulus for x in self.values))

    def __add__(self, other):
        return DehnColoring(self.modulus, tuple(a + b for a, b in zip(self.values, other.values)))

    @classmethod
    def checkerboard(cls, s, alpha, beta, m):
        """``alpha`` on unshaded faces, ``beta`` on shaded ones."""
        return cls(m, tuple(beta if x else alpha for x in s.sigma))


# -- relation matrices -----------------------------------------------------


@lru_cache(maxsize=256)
def fox_matrix(d):
    rows = []
    for c in range(d.n_crossings):
        u1, u2, over = d.crossing_arcs(c)
        row = [0] * len(d.arcs)
        row[u1] += 1
        row[u2] += 1
        row[over] -= 2
        rows.append(row)
    return IntMatrix(rows, len(d.arcs))


@lru_cache(maxsize=256)
def dehn_matrix(d):
    rows = []
    for q in d.quadrants:
        row = [0] * len(d.faces)
        for f, sign in zip(q, DEHN_SIGNS):
            row[f] += sign
        rows.append(row)
    return IntMatrix(rows, len(d.faces))


def is_fox_coloring(d, f):
    return in_kernel_mod_m(fox_matrix(d), f.values, f.modulus)


def is_dehn_coloring(d, dc):
    return in_kernel_mod_m(dehn_matrix(d), dc.values, dc.modulus)


def enumerate_fox_mod_m(d, m, cap=None):
    """All Fox colorings with values in Z/m, by exhaustive search."""
    sols = enumerate_solutions_mod_m(fox_matrix(d), m, cap)
    return [FoxColoring(m, tuple(int(x) for x in row)) for row in sols]


def enumerate_dehn_mod_m(d, m, cap=None):
    """All Dehn colorings with values in Z/m, by exhaustive search."""
    sols = enumerate_solutions_mod_m(dehn_matrix(d), m, cap)
    return [DehnColoring(m, tuple(int(x) for x in row)) for row in sols]


# -- the maps phi, delta, v, u ----------------------------------------------


def phi_map(d, dc):
    """Fox coloring ``a -> d(F) + d(F')`` for faces F, F' on either side of ``a``."""
    m = dc.modulus
    values = [None] * len(d.arcs)
    for adj in d.adjacencies:
        a, b = adj.faces
        s = (dc.values[a] + dc.values[b]) % m
        if values[adj.arc] is None:
            values[adj.arc] = s
        elif values[adj.arc] != s:
            raise ColoringError(
                "INCONSISTENT_DEHN", f"face sums along arc {adj.arc} disagree"
            )
    return FoxColoring(m, tuple(values))


def _face_neighbors(d):
    nbrs = [[] for _ in d.faces]
    for adj in d.adjacencies:
        a, b = adj.faces
        nbrs[a].append((b, adj))
        nbrs[b].append((a, adj))
    return nbrs


def lift_fox_to_dehn(d, f, base_face=None, alpha0=0):
    """A Dehn coloring ``dc`` with ``phi(dc) == f`` and ``dc[base_face] == alpha0``.

    Values propagate across edges by ``d(F') = f(a) - d(F)``; every
    adjacency outside the search tree is checked for agreement.
    """
    m = f.modulus
    if base_face is None:
        base_face = d.unbounded_face
    values = [None] * len(d.faces)
    values[base_face] = alpha0 % m
    queue = deque([base_face])
    nbrs = _face_neighbors(d)
    while queue:
        x = queue.popleft()
        for y, adj in nbrs[x]:
            want = (f.values[adj.arc] - values[x]) % m
            if values[y] is None:
                values[y] = want
                queue.append(y)
            elif values[y] != want:
                raise ColoringError(
                    "INCONSISTENT_FOX",
                    f"faces {x}, {y} across arc {adj.arc} do not sum to f",
                )
    return DehnColoring(m, tuple(values))


def lift_matrix(d, base_face=None):
    """Integer matrix ``L`` with ``lift(f, alpha0) = L @ (f, alpha0)``.

    Row ``F`` holds the signed arc counts of the search-tree path from the
    base face to ``F``; the last column is the sign of ``alpha0``.
    """
    if base_face is None:
        base_face = d.unbounded_face
    n_arcs = len(d.arcs)
    rows = [None] * len(d.faces)
    rows[base_face] = [0] * n_arcs + [1]
    queue = deque([base_face])
    nbrs = _face_neighbors(d)
    while queue:
        x = queue.popleft()
        for y, adj in nbrs[x]:
            if rows[y] is None:
                row = [-c for c in rows[x]]
                row[adj.arc] += 1
                rows[y] = row
                queue.append(y)
    return IntMatrix(rows, n_arcs + 1)


def phi_batch(d, dehn_values, m):
    """Apply phi to each row of an array of Dehn colorings.

    Returns ``(fox_values, consistent)`` where ``consistent[k]`` says all
    edges of each arc gave the same sum for row ``k``.
    """
    dehn_values = np.asarray(dehn_values)
    n = len(dehn_values)
    fox = np.full((n, len(d.arcs)), -1, dtype=np.int64)
    consistent = np.ones(n, dtype=bool)
    for adj in d.adjacencies:
        a, b = adj.faces
        s = (dehn_values[:, a] + dehn_values[:, b]) % m
        col = fox[:, adj.arc]
        consistent &= (col < 0) | (col == s)
        fox[:, adj.arc] = s
    return fox, consistent


def v_map(d, s, dc):
    """Restriction of a Dehn coloring to the unshaded faces, in matrix order."""
    if not is_dehn_coloring(d, dc):
        raise ColoringError("INCONSISTENT_DEHN", "input violates a crossing relation")
    v = ModVector(dc.modulus, tuple(dc.values[f] for f in s.unshaded))
    g = goeritz_matrix(d, s).matrix
    if not in_kernel_mod_m(IntMatrix(g, len(v.entries)), v.entries, v.modulus):
        raise AssertionError("restriction of a Dehn coloring is not in ker G")
    return v


def shaded_components(d, s):
    """Connected components of the shaded Tait graph, as sorted face lists."""
    shaded = s.shaded
    index = {f: k for k, f in enumerate(shaded)}
    dsu = DisjointSet(len(shaded))
    for q in d.quadrants:
        a, b = (q[0], q[2]) if s.sigma[q[0]] == SHADED else (q[1], q[3])
        dsu.union(index[a], index[b])
    return [[shaded[k] for k in cls] for cls in dsu.classes()]


def extend_kernel_to_dehn(d, s, vv, base_values=None):
    """Extend a kernel vector on the unshaded faces to a full Dehn coloring.

    ``base_values`` maps one shaded face per shaded Tait component to its
    value; by default each component's smallest face gets 0, which makes
    the extension the homomorphism ``u``.  Raises ``NOT_IN_KERNEL`` when
    propagation hits a contradiction.
    """
    m = vv.modulus
    values = [None] * len(d.faces)
    order = s.unshaded
    if len(vv.entries) != len(order):
        raise ValueError("vector length differs from the number of unshaded faces")
    for f, x in zip(order, vv.entries):
        values[f] = x
    comps = shaded_components(d, s)
    if base_values is None:
        base_values = {comp[0]: 0 for comp in comps}
    comp_of = {f: k for k, comp in enumerate(comps) for f in comp}
    seeded = sorted(comp_of[f] for f in base_values)
    if seeded != list(range(len(comps))):
        raise ValueError("base_values must name exactly one shaded face per component")

    through = {f: [] for f in s.shaded}
    for c, q in enumerate(d.quadrants):
        for i in range(4):
            if s.sigma[q[i]] == SHADED:
                through[q[i]].append(c)

    def solve(c, unknown):
        q = d.quadrants[c]
        coef, rest = 0, 0
        for f, sign in zip(q, DEHN_SIGNS):
            if f == unknown:
                coef += sign
            else:
                rest += sign * values[f]
        # coef is +-1 here: the unknown fills exactly one shaded quadrant
        return (-rest * coef) % m

    for face, value in base_values.items():
        values[face] = value % m
        queue = deque([face])
        while queue:
            x = queue.popleft()
            for c in through[x]:
                q = d.quadrants[c]
                pair = (q[0], q[2]) if s.sigma[q[0]] == SHADED else (q[1], q[3])
                y = pair[1] if pair[0] == x else pair[0]
                if y != x and values[y] is None:
                    values[y] = solve(c, y)
                    queue.append(y)
    dc = DehnColoring(m, tuple(values))
    if not is_dehn_coloring(d, dc):
        raise ColoringError("NOT_IN_KERNEL", "propagation conflict: G v != 0")
    return dc


def u_map(d, s, vv):
    return extend_kernel_to_dehn(d, s, vv)


# -- mod 2 index theory ------------------------------------------------------


def index_table(d):
    """``table[face][component]``: parity of crossings of a path to the unbounded face."""
    mu = len(d.components)
    table = [None] * len(d.faces)
    start = d.unbounded_face
    table[start] = (0,) * mu
    queue = deque([start])
    nbrs = _face_neighbors(d)
    while queue:
        x = queue.popleft()
        for y, adj in nbrs[x]:
            bits = list(table[x])
            bits[adj.component] ^= 1
            bits = tuple(bits)
            if table[y] is None:
                table[y] = bits
                queue.append(y)
            elif table[y] != bits:
                raise AssertionError(f"index of face {y} depends on the path")
    return table


def face_component_index(d, face, component):
    return index_table(d)[face][component]


def exponent2_kernel_check(d, s):
    """Compare ker G over Z/2 with the component-index description."""
    mu = len(d.components)
    beta = beta_count(d, s)
    g = goeritz_matrix(d, s)
    G = IntMatrix(g.matrix, g.n)
    table = index_table(d)
    gens = [tuple(1 for _ in g.face_order)]
    gens += [tuple(table[f][i] for f in g.face_order) for i in range(mu)]
    snf = smith_normal_form(G)
    dim_ker = sum(1 for x in snf.nonzero if x % 2 == 0) + g.n - snf.rank
    span_dim = rank_mod_p(gens, 2) if g.n else 0
    gens_in_kernel = all(in_kernel_mod_m(G, v, 2) for v in gens)

    fm = fox_matrix(d)
    comp_constant_ok = True
    arc_comp = [d.component_of_edge[a.edges[0]] for a in d.arcs]
    for bits in itertools.product((0, 1), repeat=mu):
        values = [bits[k] for k in arc_comp]
        if not in_kernel_mod_m(fm, values, 2):
            comp_constant_ok = False
            break
    fox_count = solution_count_mod_m(fm, 2)
    checks = {
        "fox_component_constant": comp_constant_ok and fox_count == 2**mu,
        "kernel_is_index_span": gens_in_kernel and span_dim == dim_ker,
        "kernel_dimension": dim_ker == mu - beta + 1,
    }
    return {
        "mu": mu,
        "beta": beta,
        "dim_ker": dim_ker,
        "span_dim": span_dim,
        "fox_count": fox_count,
        "checks": checks,
        "ok": all(checks.values()),
    }


# -- coloring groups ---------------------------------------------------------


def goeritz_kernel(d, s, A):
    g = goeritz_matrix(d, s)
    return kernel_structure(IntMatrix(g.matrix, g.n), A)


def fox_group(d, s, A):
    """Fox colorings with values in ``A``, up to isomorphism."""
    return direct_sum(goeritz_kernel(d, s, A), A.power(beta_count(d, s) - 1))


def dehn_group(d, s, A):
    """Dehn colorings with values in ``A``, up to isomorphism."""
    return direct_sum(goeritz_kernel(d, s, A), A.power(beta_count(d, s)))


def predicted_counts(d, s, m):
    g = goeritz_matrix(d, s)
    kernel = solution_count_mod_m(IntMatrix(g.matrix, g.n), m)
    beta = beta_count(d, s)
    return kernel * m ** (beta - 1), kernel * m**beta


@dataclass
class ColoringReport:
    goeritz: dict
    snf_diag: list
    rank: int
    beta: int
    kernel: FgAbelianGroup
    fox_group: FgAbelianGroup
    dehn_group: FgAbelianGroup
    counts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "goeritz": self.goeritz,
            "snf_diag": self.snf_diag,
            "rank": self.rank,
            "beta": self.beta,
            "kernel": self.kernel.to_dict(),
            "fox_group": self.fox_group.to_dict(),
            "dehn_group": self.dehn_group.to_dict(),
            "counts": self.counts,
            "notes": self.notes,
        }


def coloring_report(d, s, A, moduli=(), enumerate_too=True, flipped=None):
    from .shading import goeritz_report

    g = goeritz_matrix(d, s, flipped)
    G = IntMatrix(g.matrix, g.n)
    snf = smith_normal_form(G)
    beta = beta_count(d, s)
    kernel = kernel_structure(G, A)
    report = ColoringReport(
        goeritz=goeritz_report(d, s, flipped),
        snf_diag=list(snf.diag),
        rank=snf.rank,
        beta=beta,
        kernel=kernel,
        fox_group=direct_sum(kernel, A.power(beta - 1)),
        dehn_group=direct_sum(kernel, A.power(beta)),
    )
    for m in moduli:
        ker = solution_count_mod_m(G, m)
        entry = {
            "kernel": ker,
            "fox": ker * m ** (beta - 1),
            "dehn": ker * m**beta,
        }
        if enumerate_too:
            try:
                entry["fox_enumerated"] = len(enumerate_solutions_mod_m(fox_matrix(d), m))
            except CapExceeded as exc:
                report.notes.append(f"m={m}: fox enumeration skipped ({exc})")
            try:
                entry["dehn_enumerated"] = len(enumerate_solutions_mod_m(dehn_matrix(d), m))
            except CapExceeded as exc:
                report.notes.append(f"m={m}: dehn enumeration skipped ({exc})")
        report.counts[str(m)] = entry
    return report


# -- theorem verification ----------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    check: str
    diagram: str
    m: int | None
    shading: str
    expected: object
    actual: object
    ok: bool

    def to_dict(self):
        return asdict(self)


def renestings(d):
    """Alternative placements of the same pieces: all side by side, a chain,
    and every piece but the first inside each face of the first."""
    names = [p.name for p in d.pieces]
    if len(names) < 2:
        return []
    out = [d.with_placements([])]
    chain = []
    for host, child in zip(names, names[1:]):
        hp = d.pieces[d.piece_index[host]]
        chain.append(Placement(child, host, len(hp.orbits) - 1))
    out.append(d.with_placements(chain))
    first = d.pieces[0]
    for k in range(len(first.orbits)):
        out.append(d.with_placements([Placement(c, names[0], k) for c in names[1:]]))
    return out


def _split_pieces(d):
    from .diagram import Diagram

    return [Diagram([p]) for p in d.pieces]


SAMPLE_GROUPS = (
    FgAbelianGroup.Z(),
    FgAbelianGroup((2, 4)),
    FgAbelianGroup((8,), 1),
)


def verify_theorems(d, moduli, name="diagram", cap=None):
    """Cross-check the structure theorems against brute force over Z/m.

    Returns a list of :class:`CheckResult`; checks whose enumeration would
    exceed the cap are omitted.
    """
    cap = enumeration_cap() if cap is None else cap
    results = []

    def record(check, m, shading, expected, actual):
        results.append(
            CheckResult(check, name, m, shading, expected, actual, expected == actual)
        )

    shadings = both_shadings(d)
    labels = ("s", "s_bar")
    fm, dm = fox_matrix(d), dehn_matrix(d)

    for s, lab in zip(shadings, labels):
        g = goeritz_matrix(d, s)
        rows_ok = all(sum(r) == 0 for r in g.matrix) and all(
            g.matrix[i][j] == g.matrix[j][i] for i in range(g.n) for j in range(g.n)
        )
        record("goeritz_symmetric_zero_sums", None, lab, True, rows_ok)
        sums_ok = True
        for i, f in enumerate(g.face_order):
            curves = d.faces[f].boundary_curves
            total = [0] * g.n
            for k in range(len(curves)):
                rho = boundary_rho(d, s, f, k).entries
                total = [a + b for a, b in zip(total, rho)]
            sums_ok = sums_ok and tuple(total) == g.matrix[i]
        record("rho_sums_to_row", None, lab, True, sums_ok)
        record("exponent2", 2, lab, True, exponent2_kernel_check(d, s)["ok"])

    for m in moduli:
        A = FgAbelianGroup.cyclic(m)
        try:
            foxes = enumerate_solutions_mod_m(fm, m, cap)
        except CapExceeded:
            foxes = None
        try:
            dehns = enumerate_solutions_mod_m(dm, m, cap)
        except CapExceeded:
            dehns = None

        for s, lab in zip(shadings, labels):
            fox_pred, dehn_pred = predicted_counts(d, s, m)
            if foxes is not None:
                record("fox_count_formula", m, lab, fox_pred, len(foxes))
            if dehns is not None:
                record("dehn_count_formula", m, lab, dehn_pred, len(dehns))
            record("dehn_is_m_times_fox", m, lab, dehn_pred, m * fox_pred)

            g = goeritz_matrix(d, s)
            G = IntMatrix(g.matrix, g.n)
            basis = kernel_basis_mod_m(G, m)
            record(
                "kernel_basis_in_kernel", m, lab, True,
                all(in_kernel_mod_m(G, v.entries, m) for v in basis),
            )
            rho_ok = True
            for f in g.face_order:
                for k in range(len(d.faces[f].boundary_curves)):
                    rho = boundary_rho(d, s, f, k).entries
                    rho_ok = rho_ok and all(
                        sum(a * b for a, b in zip(rho, v.entries)) % m == 0
                        for v in basis
                    )
            record("rho_annihilates_kernel", m, lab, True, rho_ok)
            pos = {f: i for i, f in enumerate(g.face_order)}
            pairs_ok = all(
                v.entries[pos[a]] == v.entries[pos[b]]
                for _, a, b in single_shaded_pairs(d, s)
                for v in basis
            )
            record("single_shaded_crossing_equal", m, lab, True, pairs_ok)
            u_ok = True
            for vv in basis:
                try:
                    u_ok = u_ok and v_map(d, s, u_map(d, s, vv)) == vv
                except ColoringError:
                    u_ok = False
            record("v_after_u_identity", m, lab, True, u_ok)
            if dehns is not None:
                restricted = dehns[:, list(g.face_order)]
                gm = np.array(g.matrix, dtype=np.int64).reshape(g.n, g.n)
                v_ok = not ((restricted @ gm.T) % m).any()
                record("v_into_kernel", m, lab, True, bool(v_ok))
            s_bar = s.complement()
            record(
                "fox_group_shading_reversal", m, lab,
                str(fox_group(d, s, A)), str(fox_group(d, s_bar, A)),
            )

        if foxes is not None:
            L = np.array(lift_matrix(d).rows, dtype=np.int64)
            lift_ok = True
            for alpha0 in range(m):
                aug = np.hstack([foxes, np.full((len(foxes), 1), alpha0)])
                lifted = (aug @ L.T) % m
                back, consistent = phi_batch(d, lifted, m)
                lift_ok = lift_ok and bool(consistent.all()) and np.array_equal(back, foxes)
            record("phi_lift_identity", m, "-", True, lift_ok)
        if dehns is not None:
            back, consistent = phi_batch(d, dehns, m)
            kernel = sorted(
                tuple(int(x) for x in row) for row in dehns[~back.any(axis=1)]
            )
            expected = sorted(
                DehnColoring.checkerboard(shadings[0], a, -a, m).values for a in range(m)
            )
            record("phi_well_defined", m, "-", True, bool(consistent.all()))
            record("phi_kernel_checkerboard", m, "-", expected, kernel)

        if len(d.pieces) > 1:
            parts = _split_pieces(d)
            try:
                expected = 1
                for part in parts:
                    expected *= len(enumerate_solutions_mod_m(fox_matrix(part), m, cap))
                actual = len(foxes) if foxes is not None else solution_count_mod_m(fm, m)
                record("split_union_product", m, "-", expected, actual)
            except CapExceeded:
                pass
            base = str(fox_group(d, shadings[0], A))
            for k, alt in enumerate(renestings(d)):
                for s in both_shadings(alt):
                    record(f"renesting_{k}", m, "-", base, str(fox_group(alt, s, A)))

    for s, lab in zip(shadings, labels):
        for A in SAMPLE_GROUPS:
            record(
                "fox_group_shading_reversal_fg", None, f"{lab}:{A}",
                str(fox_group(d, s, A)), str(fox_group(d, s.complement(), A)),
            )
    return results
