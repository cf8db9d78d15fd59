"""Probes for the geometry swept by a family of focal lines.

Every probe works on exact data carried by jets: a line branch at a sample
is a pair of lifted spanning points whose first derivatives in (u, v) are
known exactly, so Jacobian ranks, incidence tests and developability tests
are plain exact linear algebra.  Aggregation across samples follows the
80% majority rule, except for incidence facts (a cone vertex lying on a
sampled line, a plane containing a sampled line) which must hold at every
sample and turn into AmbiguousVerdict when contradicted.
"""

from dataclasses import dataclass, field

from .errors import AmbiguousVerdict, UnsupportedField
from .fields import Rat, primitive_vector, proportional
from .jets import Jet, jet_value
from .linalg import kernel_basis, rank, rref

# Index pairs for the exterior square of a 5-dimensional space, in
# lexicographic order.
PAIRS = tuple((i, j) for i in range(5) for j in range(i + 1, 5))

# 4-element subsets give one quadratic relation each.
_QUADS = tuple(
    (i, j, k, l)
    for i in range(5)
    for j in range(i + 1, 5)
    for k in range(j + 1, 5)
    for l in range(k + 1, 5)
)


def plucker(l0, l1):
    """Exterior product of two 5-vectors (scalars or jets), lex pair order."""
    return [l0[i] * l1[j] - l0[j] * l1[i] for i, j in PAIRS]


def plucker_relations_hold(p):
    """Check the quadratic relations p_ij p_kl - p_ik p_jl + p_il p_jk = 0."""
    idx = {pair: n for n, pair in enumerate(PAIRS)}
    for i, j, k, l in _QUADS:
        r = p[idx[(i, j)]] * p[idx[(k, l)]] - p[idx[(i, k)]] * p[idx[(j, l)]] \
            + p[idx[(i, l)]] * p[idx[(j, k)]]
        if r != 0:
            return False
    return True


@dataclass
class LineSample:
    """A sampled member of a line family with exact first-order data."""

    point: object            # SamplePoint
    l0: list                 # jet 5-vector, first spanning point
    l1: list                 # jet 5-vector, second spanning point
    _pl: list = field(default=None, repr=False)

    @property
    def plucker_jets(self):
        if self._pl is None:
            self._pl = plucker(self.l0, self.l1)
        return self._pl

    @property
    def plucker_values(self):
        return [jet_value(c) for c in self.plucker_jets]

    def spanning_values(self):
        return [jet_value(c) for c in self.l0], [jet_value(c) for c in self.l1]


def _jet_rows(vec):
    """Split a jet vector into its value, du and dv coordinate rows."""
    vals, dus, dvs = [], [], []
    for c in vec:
        if isinstance(c, Jet):
            vals.append(c.val)
            dus.append(c.du)
            dvs.append(c.dv)
        else:
            vals.append(c)
            dus.append(c - c)
            dvs.append(c - c)
    return vals, dus, dvs


def grassmann_map_rank_at(sample):
    """Local rank of the classifying map into the line Grassmannian.

    The row space of [pi; d_u pi; d_v pi] does not change when the spanning
    points are rescaled by unit jets, so the result only depends on the line
    family itself.
    """
    vals, dus, dvs = _jet_rows(sample.plucker_jets)
    return rank([vals, dus, dvs]) - 1


def line_moves_along(sample, coord):
    """True when the line varies to first order in the given coordinate."""
    vals, dus, dvs = _jet_rows(sample.plucker_jets)
    row = dus if coord == "u" else dvs
    return rank([vals, row]) > 1


def line_ortho_complement(l0, l1):
    """Functionals (3 of them) vanishing exactly on span{l0, l1}."""
    return kernel_basis([l0, l1])


def common_point_of_lines(samples):
    """Exact common point of all sampled lines.

    Returns (dim, point): dim is the dimension of the space of common
    points; point is a primitive representative when dim == 1, else None.
    """
    rows = []
    for s in samples:
        v0, v1 = s.spanning_values()
        rows.extend(line_ortho_complement(v0, v1))
    ker = kernel_basis(rows)
    if len(ker) == 1:
        return 1, primitive_vector(ker[0])
    return len(ker), None


def common_plane_of_lines(samples):
    """Exact common plane (three spanning rows) or None."""
    rows = []
    for s in samples:
        v0, v1 = s.spanning_values()
        rows.append(v0)
        rows.append(v1)
    reduced, _ = rref(rows)
    red = [r for r in reduced if any(c != 0 for c in r)]
    if len(red) == 3:
        return red
    return None


def developable_at(sample, coord):
    """Rank test rank[L0, L1, dL0/dt, dL1/dt] <= 3 along the coordinate."""
    v0, d0u, d0v = _jet_rows(sample.l0)
    v1, d1u, d1v = _jet_rows(sample.l1)
    du0 = d0u if coord == "u" else d0v
    du1 = d1u if coord == "u" else d1v
    return rank([v0, v1, du0, du1]) <= 3


@dataclass
class RealizationVerdict:
    """What the union of a sampled line family looks like."""

    kind: str                # line | plane | cone | tangent_developable |
                             # nondev_ruled | unknown
    family_dim: int
    swept_dim: int
    line: list = None        # kind == line: two spanning rows
    plane: list = None       # kind == plane: three spanning rows
    vertex: list = None      # kind == cone: primitive 5-vector
    transverse: str = None   # coordinate used for the rank-1 curve tests
    warnings: tuple = ()


def _majority(values, threshold=Rat(4, 5)):
    """Most common value if it reaches the threshold, else None."""
    if not values:
        return None
    best, count = None, 0
    for v in sorted(set(values), key=repr):
        c = values.count(v)
        if c > count:
            best, count = v, c
    if Rat(count, len(values)) >= threshold:
        return best
    return None


def _pick_transverse(samples):
    """Coordinate along which the family moves at (most) samples."""
    moves_u = [line_moves_along(s, "u") for s in samples]
    if _majority(moves_u) is True:
        return "u"
    moves_v = [line_moves_along(s, "v") for s in samples]
    if _majority(moves_v) is True:
        return "v"
    return None


def realization_verdict(samples, resolve=None, curve_points=None):
    """Classify the set swept by the sampled lines.

    samples: LineSample list at the base sample points.
    resolve: optional callable mapping a sample point to a LineSample for
        the same branch, used to draw fresh points on a restriction curve.
    curve_points: candidate points for the restriction curve, grouped as
        (coord, points) where all points share the other coordinate.
    """
    warnings = []
    ranks = [grassmann_map_rank_at(s) for s in samples]
    fam = _majority(ranks)
    if fam is None:
        raise AmbiguousVerdict(
            "line family dimension does not stabilize across samples",
            evidence={"ranks": ranks})

    if fam == 0:
        first = primitive_vector(samples[0].plucker_values)
        for s in samples[1:]:
            if not proportional(first, s.plucker_values):
                raise AmbiguousVerdict(
                    "constant-line verdict contradicted by an exact sample",
                    evidence={"point": s.point.as_dict()})
        v0, v1 = samples[0].spanning_values()
        return RealizationVerdict(kind="line", family_dim=0, swept_dim=1,
                                  line=[v0, v1])

    if fam == 2:
        try:
            plane = common_plane_of_lines(samples)
        except UnsupportedField:
            plane = None
            warnings.append("common-plane solve skipped: incompatible "
                            "quadratic extensions across samples")
        if plane is not None:
            return RealizationVerdict(kind="plane", family_dim=2, swept_dim=2,
                                      plane=plane, warnings=tuple(warnings))
        return RealizationVerdict(kind="unknown", family_dim=2, swept_dim=3,
                                  warnings=tuple(warnings))

    # One-dimensional family: a ruled surface.  Cone test first; cones are
    # developable too, so the order matters.
    try:
        dim, vertex = common_point_of_lines(samples)
    except UnsupportedField:
        dim, vertex = 0, None
        warnings.append("common-point solve skipped: incompatible quadratic "
                        "extensions across samples")
    if dim == 1 and vertex is not None:
        return RealizationVerdict(kind="cone", family_dim=1, swept_dim=2,
                                  vertex=vertex, warnings=tuple(warnings))

    transverse = _pick_transverse(samples)
    if transverse is None:
        return RealizationVerdict(kind="unknown", family_dim=1, swept_dim=2,
                                  warnings=tuple(warnings))

    # Developability along a restriction curve transverse to the fibers.
    curve_samples = list(samples)
    if resolve is not None and curve_points:
        fresh = []
        for p in curve_points.get(transverse, ()):
            ls = resolve(p)
            if ls is not None:
                fresh.append(ls)
        if len(fresh) >= 3:
            curve_samples = fresh
    flags = []
    for s in curve_samples:
        if not line_moves_along(s, transverse):
            continue
        flags.append(developable_at(s, transverse))
    if flags and all(flags):
        kind = "tangent_developable"
    else:
        kind = "nondev_ruled"
    return RealizationVerdict(kind=kind, family_dim=1, swept_dim=2,
                              transverse=transverse, warnings=tuple(warnings))


def plane_functionals(rows):
    """Two functionals cutting out the projective plane spanned by rows."""
    return kernel_basis(rows)


def tangency_check(frame, entries):
    """Exact test that each plane is tangent to the swept surface.

    entries: (sample_point, LineSample, transverse_coord) triples.  The
    plane span{A0,A1,A2} contains a tangent plane of the ruled surface at a
    point of the line exactly when the two functionals cutting the plane
    annihilate dL0/dt + s dL1/dt for a common (s0 : s1), i.e. when a 2x2
    determinant of pairings vanishes.  Directions differing by elements of
    span{L0, L1} pair to zero, so the test does not depend on how the
    transverse derivative was completed.
    """
    for point, sample, coord in entries:
        a = frame.at(point)
        ws = kernel_basis(a)
        if len(ws) != 2:
            return False
        _, d0u, d0v = _jet_rows(sample.l0)
        _, d1u, d1v = _jet_rows(sample.l1)
        dl0 = d0u if coord == "u" else d0v
        dl1 = d1u if coord == "u" else d1v
        m = [[sum(x * y for x, y in zip(dl0, w)) for w in ws],
             [sum(x * y for x, y in zip(dl1, w)) for w in ws]]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0:
            return False
    return True


def plane_directrix_probe(plane_rows, samples):
    """Incidence of every sampled generator with a fixed plane.

    Returns a dict: met (every line meets the plane, exact 5x5 rank test)
    and curve_rank (Jacobian rank of the intersection-point map; 1 means
    the meeting points trace a curve inside the plane).
    """
    for s in samples:
        v0, v1 = s.spanning_values()
        if rank([v0, v1] + [list(r) for r in plane_rows]) > 4:
            return {"met": False, "curve_rank": None}
    hs = plane_functionals(plane_rows)
    ranks = []
    for s in samples:
        e = [[sum(x * y for x, y in zip(s.l0, h)) for h in hs],
             [sum(x * y for x, y in zip(s.l1, h)) for h in hs]]
        # P = a L0 + b L1 with a e[0][j] + b e[1][j] = 0 for both j; the
        # incidence already proved the 2x2 system has rank <= 1.
        row = None
        for j in (0, 1):
            cand = (e[0][j], e[1][j])
            if jet_value(cand[0]) != 0 or jet_value(cand[1]) != 0:
                row = cand
                break
        if row is None:
            continue
        a, b = -row[1], row[0]
        pt = [a * x + b * y for x, y in zip(s.l0, s.l1)]
        vals, dus, dvs = _jet_rows(pt)
        if all(c == 0 for c in vals):
            continue
        ranks.append(rank([vals, dus, dvs]) - 1)
    agg = _majority(ranks)
    return {"met": True, "curve_rank": agg}


def sigma_prime_probe(entries):
    """Dimension of the set traced by the distinguished singular points.

    entries: per-sample jet 5-vectors of the lifted singular focal point.
    Jacobian rank 0 means a single point (returned exactly), 1 a curve,
    2 a two-dimensional set.
    """
    ranks = []
    for vec in entries:
        vals, dus, dvs = _jet_rows(vec)
        ranks.append(rank([vals, dus, dvs]) - 1)
    agg = _majority(ranks)
    if agg is None:
        return {"kind": "unknown", "point": None}
    if agg == 0:
        first = primitive_vector([jet_value(c) for c in entries[0]])
        for vec in entries[1:]:
            if not proportional(first, [jet_value(c) for c in vec]):
                raise AmbiguousVerdict(
                    "stationary singular point contradicted by an exact "
                    "sample")
        return {"kind": "point", "point": first}
    if agg == 1:
        return {"kind": "curve", "point": None}
    return {"kind": "none", "point": None}


def pencil_linearity_probe(frame, entries):
    """First-order check that planes through a fixed generator form a
    linear pencil containing the tangent plane along the generator.

    entries: (sample_point, LineSample, fiber_direction) triples where
    fiber_direction = (fu, fv) moves the plane while keeping the line
    fixed to first order.  The probe checks that the moved plane stays in
    a hyperplane spanned by the plane and its fiber derivative (rank <= 4)
    and that the tangent plane of the swept surface along the generator
    lies in that hyperplane.
    """
    for point, sample, (fu, fv) in entries:
        jets = frame.jets_at(point)
        a = [[c.val for c in row] for row in jets]
        da = [[fu * c.du + fv * c.dv for c in row] for row in jets]
        stack = [list(r) for r in a] + da
        if rank(stack) > 4:
            return False
        v0, d0u, d0v = _jet_rows(sample.l0)
        v1, d1u, d1v = _jet_rows(sample.l1)
        # Tangent plane of the swept surface along the generator: spanned
        # by the line and its transverse derivatives.
        tang = [v0, v1, d0u, d0v, d1u, d1v]
        base = rank(stack)
        if rank(stack + tang) > base:
            return False
    return True


def fiber_direction(sample):
    """Direction (fu, fv) along which the line is stationary to first order.

    Solves pi ^ (fu pi_u + fv pi_v) = 0.  Returns None when no such
    direction exists (two-dimensional family) or every direction works
    (constant line).
    """
    vals, dus, dvs = _jet_rows(sample.plucker_jets)
    rows = []
    n = len(vals)
    for i in range(n):
        for j in range(i + 1, n):
            cu = vals[i] * dus[j] - vals[j] * dus[i]
            cv = vals[i] * dvs[j] - vals[j] * dvs[i]
            rows.append([cu, cv])
    ker = kernel_basis(rows)
    if len(ker) != 1:
        return None
    return primitive_vector(ker[0])
