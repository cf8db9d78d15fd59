"""Focal machinery: the focal conic, normal classes, developable directions,
second-order loci on the conic and on its line components, and the pointwise
variation criterion used as an independent oracle.

Everything here is exact.  Sampled mode works over Q (or a single quadratic
extension) at a fixed parameter point, with derivative information carried
by first-order jets; symbolic mode works over Q(u, v) for the parts that do
not require splitting a conic.
"""
from __future__ import annotations

from fractions import Fraction

from .bform import (
    BForm,
    bform_gcd,
    distinct_root_count,
    exact_roots,
    multiplicity_profile,
    squarefree_part,
)
from .congruence import PlaneFrame, SamplePoint, complement_basis
from .errors import (
    DegenerateCongruence,
    ExactDivisionError,
    InconsistentBranch,
    NotNondegenerate,
    RankDrop,
    UnsupportedField,
    ZeroForm,
)
from .fields import QExt, field_sqrt, primitive_vector, scalar_sort_key
from .jets import Jet
from .linalg import det, det_cofactor, rank, solve_unique, transpose
from .poly import MPoly, RFunc

BF_VARS = ("lam", "mu")


def _jet_unit(x) -> bool:
    return x.is_unit()


def cross3(a, b):
    return [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]


# -- focal conic ---------------------------------------------------------------

_PROBES = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1))


def focal_matrix(frame: PlaneFrame, p: SamplePoint, x):
    """The 5x5 matrix [A0; A1; A2; sum x_i dA_i/du; sum x_i dA_i/dv] at p."""
    pt = p.as_dict()
    rows = [[e.eval(pt) for e in r] for r in frame.rows]
    du, dv = frame.du_rows(), frame.dv_rows()
    ru = [sum(x[i] * du[i][j].eval(pt) for i in range(3)) for j in range(5)]
    rv = [sum(x[i] * dv[i][j].eval(pt) for i in range(3)) for j in range(5)]
    return rows + [ru, rv]


def focal_value(frame: PlaneFrame, p: SamplePoint, x):
    """q(x): the focal determinant at plane coordinates x."""
    return det(focal_matrix(frame, p, x))


def _polarize(q_at):
    """Symmetric 3x3 matrix from values of a quadratic form at the 6 probes."""
    d = [q_at[0], q_at[1], q_at[2]]
    off = {
        (0, 1): (q_at[3] - d[0] - d[1]) / 2,
        (0, 2): (q_at[4] - d[0] - d[2]) / 2,
        (1, 2): (q_at[5] - d[1] - d[2]) / 2,
    }
    m = [[None] * 3 for _ in range(3)]
    for i in range(3):
        m[i][i] = d[i]
    for (i, j), val in off.items():
        m[i][j] = val
        m[j][i] = val
    return m


def focal_form(frame: PlaneFrame, p: SamplePoint):
    """The focal conic as a symmetric 3x3 matrix Q with q(x) = x^T Q x."""
    vals = [focal_value(frame, p, x) for x in _PROBES]
    q = _polarize(vals)
    if all(not e for row in q for e in row):
        raise DegenerateCongruence("focal form vanishes identically at the sample")
    return q


def focal_form_jets(frame: PlaneFrame, p: SamplePoint):
    """Focal conic with first-order jets as entries (division-free dets)."""
    jets = frame.jets_at(p)
    ju, jv = frame.derivative_jets_at(p)
    vals = []
    for x in _PROBES:
        ru = [sum(x[i] * ju[i][j] for i in range(3)) for j in range(5)]
        rv = [sum(x[i] * jv[i][j] for i in range(3)) for j in range(5)]
        vals.append(det_cofactor(jets + [ru, rv]))
    q = _polarize(vals)
    if all(not e.val for row in q for e in row):
        raise DegenerateCongruence("focal form vanishes identically at the sample")
    return q


def focal_form_symbolic(frame: PlaneFrame):
    """The focal conic over Q(u, v) (entries are RFunc).

    Polynomial frames stay in Q[u, v] through the determinants (division-
    free cofactor expansion); rational-function frames fall back to the
    fraction arithmetic.
    """
    try:
        arows = frame.polynomial_rows()
    except ValueError:
        arows = None
    if arows is not None:
        adu = [[e.derivative("u") for e in r] for r in arows]
        adv = [[e.derivative("v") for e in r] for r in arows]
        zero = MPoly.zero(("u", "v"))
        vals = []
        for x in _PROBES:
            ru = [
                sum((x[i] * adu[i][j] for i in range(3)), start=zero)
                for j in range(5)
            ]
            rv = [
                sum((x[i] * adv[i][j] for i in range(3)), start=zero)
                for j in range(5)
            ]
            vals.append(det_cofactor([list(r) for r in arows] + [ru, rv]))
        q = [[RFunc(e) for e in row] for row in _polarize(vals)]
    else:
        du, dv = frame.du_rows(), frame.dv_rows()
        zero = RFunc.from_const(("u", "v"), 0)
        vals = []
        for x in _PROBES:
            ru = [
                sum((x[i] * du[i][j] for i in range(3)), start=zero)
                for j in range(5)
            ]
            rv = [
                sum((x[i] * dv[i][j] for i in range(3)), start=zero)
                for j in range(5)
            ]
            vals.append(det([list(r) for r in frame.rows] + [ru, rv]))
        q = _polarize(vals)
    if all(e.is_zero() for row in q for e in row):
        raise DegenerateCongruence("focal form vanishes identically")
    return q


def quad_eval(q, x):
    """x^T Q x for a 3x3 matrix and a 3-vector."""
    acc = None
    for i in range(3):
        for j in range(3):
            t = x[i] * q[i][j] * x[j]
            acc = t if acc is None else acc + t
    return acc


def conic_rank(q) -> int:
    if all(not e for row in q for e in row):
        raise ZeroForm("conic with zero matrix has no rank class")
    return rank([list(r) for r in q])


def completion_det(frame: PlaneFrame, p: SamplePoint):
    """det[A0; A1; A2; e_i; e_j] for the complement pair (i, j) at p."""
    i, j = complement_basis(frame, p)
    rows = frame.at(p)
    ei = [Fraction(0)] * 5
    ej = [Fraction(0)] * 5
    ei[i] = Fraction(1)
    ej[j] = Fraction(1)
    return det(rows + [ei, ej])


# -- normal classes -------------------------------------------------------------


def normal_classes(frame: PlaneFrame, p: SamplePoint, with_jets: bool = False):
    """(C_u, C_v): classes of the frame-row derivatives in the complement basis.

    Column i of C_u holds the last two coordinates of the solution of
    [A0 A1 A2 e_i1 e_i2] c = dA_i/du at p.  With jets, entries carry their
    own u/v derivatives (this needs second derivatives of the frame).
    """
    i1, i2 = complement_basis(frame, p)
    if with_jets:
        a = frame.jets_at(p)
        ru, rv = frame.derivative_jets_at(p)
        zero, one = Jet(0), Jet(1)
        unit = _jet_unit
    else:
        a = frame.at(p)
        pt = p.as_dict()
        du, dv = frame.du_rows(), frame.dv_rows()
        ru = [[e.eval(pt) for e in r] for r in du]
        rv = [[e.eval(pt) for e in r] for r in dv]
        zero, one = Fraction(0), Fraction(1)
        unit = bool
    cols = [list(a[0]), list(a[1]), list(a[2])]
    e1 = [zero] * 5
    e2 = [zero] * 5
    e1[i1] = one
    e2[i2] = one
    b = transpose(cols + [e1, e2])
    cu = [[None] * 3 for _ in range(2)]
    cv = [[None] * 3 for _ in range(2)]
    for i in range(3):
        cu_sol = solve_unique(b, list(ru[i]), unit)
        cv_sol = solve_unique(b, list(rv[i]), unit)
        cu[0][i], cu[1][i] = cu_sol[3], cu_sol[4]
        cv[0][i], cv[1][i] = cv_sol[3], cv_sol[4]
    return cu, cv


def normal_classes_symbolic(frame: PlaneFrame):
    """(C_u, C_v) over Q(u, v), with the complement pair fixed at a good point.

    Both matrices are scaled by the completion determinant d(u, v) of the
    anchored basis.  Since the two are scaled jointly, every rank locus of
    the pencil lam*C_u + mu*C_v (in particular the developable directions
    and their multiplicity structure) is unchanged, and the entries stay
    polynomial, which keeps the downstream pencil arithmetic out of the
    rational-function gcd path.
    """
    witness = None
    for a, b in ((0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (-1, 2), (3, -2)):
        p = SamplePoint(a, b)
        if frame.admissible(p):
            witness = p
            break
    if witness is None:
        raise RankDrop("no admissible point found to anchor the complement basis")
    i1, i2 = complement_basis(frame, witness)

    try:
        arows = frame.polynomial_rows()
    except ValueError:
        arows = None
    if arows is not None:
        two = ("u", "v")
        zero2 = MPoly.zero(two)
        one2 = MPoly(two, {(0, 0): Fraction(1)})
        e1 = [zero2] * 5
        e2 = [zero2] * 5
        e1[i1] = one2
        e2[i2] = one2
        base = [list(arows[0]), list(arows[1]), list(arows[2]), e1, e2]
        adu = [[e.derivative("u") for e in r] for r in arows]
        adv = [[e.derivative("v") for e in r] for r in arows]
        cu = [[None] * 3 for _ in range(2)]
        cv = [[None] * 3 for _ in range(2)]
        for i in range(3):
            for k, slot in ((3, 0), (4, 1)):
                rows = [adu[i] if r == k else base[r] for r in range(5)]
                cu[slot][i] = RFunc(det_cofactor(rows))
                rows = [adv[i] if r == k else base[r] for r in range(5)]
                cv[slot][i] = RFunc(det_cofactor(rows))
        return cu, cv

    zero = RFunc.from_const(("u", "v"), 0)
    one = RFunc.from_const(("u", "v"), 1)
    e1 = [zero] * 5
    e2 = [zero] * 5
    e1[i1] = one
    e2[i2] = one
    b = transpose([list(r) for r in frame.rows] + [e1, e2])
    du, dv = frame.du_rows(), frame.dv_rows()
    cu = [[None] * 3 for _ in range(2)]
    cv = [[None] * 3 for _ in range(2)]
    for i in range(3):
        cu_sol = solve_unique(b, list(du[i]), lambda f: not f.is_zero())
        cv_sol = solve_unique(b, list(dv[i]), lambda f: not f.is_zero())
        cu[0][i], cu[1][i] = cu_sol[3], cu_sol[4]
        cv[0][i], cv[1][i] = cv_sol[3], cv_sol[4]
    return cu, cv


def fundamental_point_test(cu, cv, x) -> bool:
    """True iff both normal-class matrices kill x (focal for every direction)."""
    for m in (cu, cv):
        for r in range(2):
            if sum(m[r][i] * x[i] for i in range(3)):
                return False
    return True


# -- developable directions ------------------------------------------------------


class DevDirections:
    """Directions (lam : mu) along which the focal point degenerates to a line."""

    __slots__ = ("tag", "directions", "form")

    def __init__(self, tag, directions, form):
        self.tag = tag
        self.directions = directions
        self.form = form

    def __repr__(self):
        return f"DevDirections({self.tag}, {self.directions})"


def _pencil_minor_form(cu, cv, j, k):
    """The (j,k)-column 2x2 minor of lam*C_u + mu*C_v as a degree-2 form."""
    c_ll = cu[0][j] * cu[1][k] - cu[0][k] * cu[1][j]
    c_lm = (
        cu[0][j] * cv[1][k]
        + cv[0][j] * cu[1][k]
        - cu[0][k] * cv[1][j]
        - cv[0][k] * cu[1][j]
    )
    c_mm = cv[0][j] * cv[1][k] - cv[0][k] * cv[1][j]
    return BForm(2, [c_ll, c_lm, c_mm])


def developable_form(cu, cv):
    """gcd of the three pencil minors, with its direction tag.

    Tags: none / one / two_distinct / one_double / infinite, mirroring the
    possible counts of developable families through a general plane.
    """
    ms = [
        _pencil_minor_form(cu, cv, 0, 1),
        _pencil_minor_form(cu, cv, 0, 2),
        _pencil_minor_form(cu, cv, 1, 2),
    ]
    nonzero = [m for m in ms if not m.is_zero()]
    if not nonzero:
        return DevDirections("infinite", None, None)
    g = nonzero[0]
    for m in nonzero[1:]:
        g = bform_gcd(g, m)
    g = g.monic()
    if g.deg == 0 or (g.chart_degree() == 0 and g.lam_multiplicity() == 0):
        return DevDirections("none", [], g)
    roots = None
    if all(isinstance(c, (int, Fraction, QExt)) for c in g.coeffs):
        try:
            roots = [r for r, _m in exact_roots(g)]
        except UnsupportedField:
            roots = None
    if g.deg == 1:
        return DevDirections("one", roots, g)
    profile = multiplicity_profile(g)
    if profile == [1, 1]:
        return DevDirections("two_distinct", roots, g)
    return DevDirections("one_double", roots, g)


def developable_tag_symbolic(cu, cv):
    """Direction tag of the pencil over Q(u, v), without gcd arithmetic.

    The tag of a set of binary quadratics is decided by closed-form
    coefficient tests: proportionality via 2x2 crosses, a shared root via
    the quadratic resultant Q^2 - P*R, and the double-root split via the
    discriminant.  Each minor is cleared to polynomial coefficients first
    (scaling a form by a nonzero function changes neither its roots nor
    any of these verdicts), so everything stays in MPoly and the
    rational-function gcd path is never touched.
    """
    minors = []
    for j, k in ((0, 1), (0, 2), (1, 2)):
        f = _pencil_minor_form(cu, cv, j, k)
        a, b, c = f.coeffs
        cleared = (
            a.num * b.den * c.den,
            b.num * a.den * c.den,
            c.num * a.den * b.den,
        )
        if any(not e.is_zero() for e in cleared):
            minors.append(cleared)
    if not minors:
        return "infinite"

    def crosses(m, n):
        return (
            m[0] * n[1] - n[0] * m[1],
            m[0] * n[2] - n[0] * m[2],
            m[1] * n[2] - n[1] * m[2],
        )

    pair = None
    for i in range(len(minors)):
        for j in range(i + 1, len(minors)):
            if any(not e.is_zero() for e in crosses(minors[i], minors[j])):
                pair = (i, j)
                break
        if pair:
            break
    if pair is None:
        a, b, c = minors[0]
        disc = b * b - a * c * 4
        return "one_double" if disc.is_zero() else "two_distinct"

    mi, mj = minors[pair[0]], minors[pair[1]]
    p, q, r = crosses(mi, mj)
    if not (q * q - p * r).is_zero():
        return "none"
    # one shared root: (1:0) when both quadratics lack a lam^2 term,
    # otherwise the root of p*lam + q*mu (p is nonzero in that case)
    if mi[0].is_zero() and mj[0].is_zero():
        root = (None, None)  # marker for (1:0)
    else:
        root = (q * -1, p)  # (lam : mu) = (-q : p)
    for idx, m in enumerate(minors):
        if idx in pair:
            continue
        if root[0] is None:
            val = m[0]
        else:
            lam, mu = root
            val = m[0] * lam * lam + m[1] * lam * mu + m[2] * mu * mu
        if not val.is_zero():
            return "none"
    return "one"


def veronese_point(cu, cv, d):
    """Kernel of lam*C_u + mu*C_v at direction d, as signed 2x2 minors.

    Fails with RankDrop when the pencil matrix has rank <= 1 there (the
    direction is developable and the focal set is a line, not a point).
    """
    lam, mu = d
    n = [
        [lam * cu[r][c] + mu * cv[r][c] for c in range(3)]
        for r in range(2)
    ]
    x = cross3(n[0], n[1])
    vals = [e.val if isinstance(e, Jet) else e for e in x]
    if not any(vals):
        raise RankDrop("direction is developable; the focal point degenerates")
    return x


def singular_focal_point(cu, cv, d):
    """The single focal point shared by all non-developable directions
    (cases with a degenerate conic); same kernel construction."""
    return veronese_point(cu, cv, d)


# -- conic splitting --------------------------------------------------------------


class ConicSplit:
    """Tagged split: kind in {nondegenerate, two_lines, double_line}."""

    __slots__ = ("kind", "lines")

    def __init__(self, kind, lines):
        self.kind = kind
        self.lines = lines

    def __repr__(self):
        return f"ConicSplit({self.kind}, {self.lines})"


def _norm_line(l):
    """Scale a line-coefficient vector deterministically."""
    if all(isinstance(c, (int, Fraction)) for c in l):
        return primitive_vector(l)
    piv = next(c for c in l if c)
    return [c / piv for c in l]


def _adjugate3(q):
    out = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rs = [r for r in range(3) if r != j]
            cs = [c for c in range(3) if c != i]
            m = q[rs[0]][cs[0]] * q[rs[1]][cs[1]] - q[rs[0]][cs[1]] * q[rs[1]][cs[0]]
            out[i][j] = m if (i + j) % 2 == 0 else -m
    return out


def split_conic(q) -> ConicSplit:
    """Split a focal conic by rank: nondegenerate, two lines, or double line.

    Rank 1 returns the primitive nonzero row (the conic is proportional to
    l l^T, so any nonzero row spans the line's coefficients; no square root
    is needed for a representative up to scale).  Rank 2 restricts to a
    coordinate complement of the vertex and applies the quadratic formula,
    possibly over a quadratic extension.
    """
    r = conic_rank(q)
    if r == 3:
        return ConicSplit("nondegenerate", None)
    if r == 1:
        row = next(row for row in q if any(row))
        return ConicSplit("double_line", [_norm_line(list(row))])
    adj = _adjugate3(q)
    kcol = None
    for j in range(3):
        col = [adj[i][j] for i in range(3)]
        if any(col):
            kcol = col
            break
    k = kcol
    pair = None
    for a, b in ((0, 1), (0, 2), (1, 2)):
        c = ({0, 1, 2} - {a, b}).pop()
        if k[c]:
            pair = (a, b)
            break
    a, b = pair
    qa, qb, qab = q[a][a], q[b][b], q[a][b]
    disc = qab * qab - qa * qb
    if not disc:
        raise ZeroForm("rank-2 conic with degenerate restriction (unexpected)")
    roots = _binary_quadratic_roots(qa, qab, qb)
    lines = []
    for s, t in roots:
        w = [Fraction(0)] * 3
        w[a] = s
        w[b] = t
        lines.append(_norm_line(cross3(w, k)))
    lines.sort(key=lambda l: [scalar_sort_key(c) for c in l])
    return ConicSplit("two_lines", lines)


def _binary_quadratic_roots(a, b, c):
    """Roots (s : t) of a s^2 + 2 b s t + c t^2, disc = b^2 - ac nonzero.

    Each root also admits the alternate representation (c : -b -/+ sqrt),
    used when the primary one degenerates to (0, 0).
    """
    disc = b * b - a * c
    s = field_sqrt(disc)
    roots = []
    for sign in (1, -1):
        num = -b + s if sign == 1 else -b - s
        den = a
        if not num and not den:
            num, den = c, (-b - s) if sign == 1 else (-b + s)
        roots.append((num, den))
    return roots


def split_conic_jets(q_jets) -> ConicSplit:
    """Split with jet entries, tracking each line branch to first order.

    The branch pairing is pinned by the sign of the square root of the jet
    discriminant, so the two tracked lines vary consistently with (u, v).
    """
    qv = [[e.val for e in row] for row in q_jets]
    r = conic_rank(qv)
    if r == 3:
        return ConicSplit("nondegenerate", None)
    if r == 1:
        idx = next(i for i in range(3) if any(qv[i]))
        return ConicSplit("double_line", [list(q_jets[idx])])
    adj = _adjugate3(q_jets)
    kcol = None
    for j in range(3):
        col = [adj[i][j] for i in range(3)]
        if any(c.val for c in col):
            kcol = col
            break
    if kcol is None:
        raise InconsistentBranch("vertex tracking failed: adjugate value is zero")
    k = kcol
    kv = [c.val for c in k]
    pair = None
    for a, b in ((0, 1), (0, 2), (1, 2)):
        c = ({0, 1, 2} - {a, b}).pop()
        if kv[c]:
            pair = (a, b)
            break
    a, b = pair
    qa, qb, qab = q_jets[a][a], q_jets[b][b], q_jets[a][b]
    disc = qab * qab - qa * qb
    if not disc.val:
        raise InconsistentBranch("branch collision: jet discriminant is not a unit")
    s = disc.sqrt()
    roots = []
    for sign in (1, -1):
        num = -qab + s if sign == 1 else -qab - s
        den = qa
        if not num.val and not den.val:
            num, den = qb, (-qab - s) if sign == 1 else (-qab + s)
        roots.append((num, den))
    lines = []
    for num, den in roots:
        w = [Jet(0), Jet(0), Jet(0)]
        w[a] = num
        w[b] = den
        lines.append(cross3(w, k))
    for l in lines:
        if not any(c.val for c in l):
            raise InconsistentBranch("tracked line has zero value part")
    lines.sort(key=lambda l: _line_value_key(l))
    return ConicSplit("two_lines", lines)


def _line_value_key(l_jets):
    vals = [c.val for c in l_jets]
    piv = next(c for c in vals if c)
    return [scalar_sort_key(c / piv) for c in vals]


# -- lifting line families ---------------------------------------------------------


class LiftedLine:
    """A focal line tracked to first order: plane and ambient spanning pairs."""

    __slots__ = ("line", "x0", "x1", "l0", "l1")

    def __init__(self, line, x0, x1, l0, l1):
        self.line = line
        self.x0 = x0
        self.x1 = x1
        self.l0 = l0
        self.l1 = l1


def _line_spanning_points(line):
    """Two plane points spanning {x : line . x = 0}; deterministic pivot."""
    vals = [c.val if isinstance(c, Jet) else c for c in line]
    piv = next((i for i in range(3) if vals[i]), None)
    if piv is None:
        raise ZeroForm("zero line coefficients")
    others = [i for i in range(3) if i != piv]
    pts = []
    one = Jet(1) if isinstance(line[0], Jet) else Fraction(1)
    zero = Jet(0) if isinstance(line[0], Jet) else Fraction(0)
    for j in others:
        x = [zero, zero, zero]
        x[j] = one
        x[piv] = -line[j] / line[piv]
        pts.append(x)
    return pts


def line_family_lift(frame: PlaneFrame, p: SamplePoint, line) -> LiftedLine:
    """Lift a (jet-tracked) focal line to ambient 5-space with derivatives.

    Returns jets L0, L1 spanning the lifted line; their du/dv parts are the
    exact directional derivatives of the chosen local spanning pair.
    """
    x0, x1 = _line_spanning_points(line)
    jets = frame.jets_at(p)
    l0 = [sum((x0[i] * jets[i][j] for i in range(3)), start=Jet(0)) for j in range(5)]
    l1 = [sum((x1[i] * jets[i][j] for i in range(3)), start=Jet(0)) for j in range(5)]
    return LiftedLine(line, x0, x1, l0, l1)


# -- second-order loci --------------------------------------------------------------


class SecondOrderLocus:
    """Either finitely many points (with multiplicities) or a whole component."""

    __slots__ = ("kind", "profile", "roots", "form")

    def __init__(self, kind, profile=None, roots=None, form=None):
        self.kind = kind
        self.profile = profile
        self.roots = roots
        self.form = form

    @property
    def total_multiplicity(self):
        return sum(self.profile) if self.profile else 0

    def __repr__(self):
        if self.kind == "whole":
            return "SecondOrderLocus(whole)"
        return f"SecondOrderLocus(points, profile={self.profile})"


def _minors_of_5x4(cols):
    """The five 4x4 minors (delete row i, i = 0..4) of a 5x4 column list."""
    rows = transpose(cols)
    out = []
    for drop in range(5):
        sub = [rows[i] for i in range(5) if i != drop]
        out.append(det(sub))
    return out


def _mpoly_to_bform(p: MPoly, deg: int) -> BForm:
    """Convert a homogeneous MPoly in (lam, mu) into a BForm of degree deg."""
    coeffs = [Fraction(0)] * (deg + 1)
    li = p.vars.index("lam")
    mi = p.vars.index("mu")
    for e, c in p.terms.items():
        if e[li] + e[mi] != deg or any(
            e[k] for k in range(len(e)) if k not in (li, mi)
        ):
            raise ValueError("polynomial is not homogeneous of the expected degree")
        coeffs[e[mi]] = c
    return BForm(deg, coeffs)


def second_order_form_nondeg(frame: PlaneFrame, p: SamplePoint):
    """Second-order locus on a nondegenerate focal conic.

    Builds the lifted Veronese curve Phi(lam, mu) = sum x_i(lam,mu) A_i and
    takes the gcd of the five 4x4 minors of [dPhi/dlam, dPhi/dmu, dPhi/du,
    dPhi/dv]; this column span agrees with the affine-chart matrix
    [Phi, dPhi/dt, ...] on both charts, so the gcd merges both.  Returns
    (gcd form or None, SecondOrderLocus).
    """
    cu, cv = normal_classes(frame, p, with_jets=True)
    qv = focal_form(frame, p)
    if conic_rank(qv) != 3:
        raise NotNondegenerate("the focal conic is degenerate at this sample")

    lam = MPoly.variable(BF_VARS, "lam")
    mu = MPoly.variable(BF_VARS, "mu")

    def entry(jm, r, c, part):
        cuv = getattr(jm[0][r][c], part)
        cvv = getattr(jm[1][r][c], part)
        return cuv * lam + cvv * mu

    pair = (cu, cv)
    n_val = [[entry(pair, r, c, "val") for c in range(3)] for r in range(2)]
    n_du = [[entry(pair, r, c, "du") for c in range(3)] for r in range(2)]
    n_dv = [[entry(pair, r, c, "dv") for c in range(3)] for r in range(2)]
    x_val = cross3(n_val[0], n_val[1])
    x_du = [
        a + b
        for a, b in zip(cross3(n_du[0], n_val[1]), cross3(n_val[0], n_du[1]))
    ]
    x_dv = [
        a + b
        for a, b in zip(cross3(n_dv[0], n_val[1]), cross3(n_val[0], n_dv[1]))
    ]

    jets = frame.jets_at(p)
    a_val = [[jets[i][j].val for j in range(5)] for i in range(3)]
    a_du = [[jets[i][j].du for j in range(5)] for i in range(3)]
    a_dv = [[jets[i][j].dv for j in range(5)] for i in range(3)]

    phi_val = [
        sum((x_val[i] * a_val[i][j] for i in range(3)), start=MPoly.zero(BF_VARS))
        for j in range(5)
    ]
    phi_du = [
        sum(
            (x_du[i] * a_val[i][j] + x_val[i] * a_du[i][j] for i in range(3)),
            start=MPoly.zero(BF_VARS),
        )
        for j in range(5)
    ]
    phi_dv = [
        sum(
            (x_dv[i] * a_val[i][j] + x_val[i] * a_dv[i][j] for i in range(3)),
            start=MPoly.zero(BF_VARS),
        )
        for j in range(5)
    ]
    phi_lam = [e.derivative("lam") for e in phi_val]
    phi_mu = [e.derivative("mu") for e in phi_val]

    minors = _minors_of_5x4([phi_lam, phi_mu, phi_du, phi_dv])
    forms = [
        _mpoly_to_bform(m, 6) for m in minors if not m.is_zero()
    ]
    if not forms:
        return None, SecondOrderLocus("whole")
    g = forms[0]
    for f in forms[1:]:
        g = bform_gcd(g, f)
    g = g.monic()
    profile = multiplicity_profile(g)
    locus = SecondOrderLocus("points", profile=profile, form=g)
    return g, locus


def frame_motion(frame: PlaneFrame, p: SamplePoint):
    """In-plane 3x3 parts (Mu, Mv) of the frame-row derivatives at p.

    Row i solves dA_i/dw = sum_j Mw[i][j] A_j + (complement part); the
    complement part is what normal_classes keeps, this keeps the rest.
    """
    i1, i2 = complement_basis(frame, p)
    a = frame.at(p)
    pt = p.as_dict()
    ru = [[e.eval(pt) for e in r] for r in frame.du_rows()]
    rv = [[e.eval(pt) for e in r] for r in frame.dv_rows()]
    e1 = [Fraction(0)] * 5
    e2 = [Fraction(0)] * 5
    e1[i1] = Fraction(1)
    e2[i2] = Fraction(1)
    b = transpose([list(a[0]), list(a[1]), list(a[2]), e1, e2])
    m_u, m_v = [], []
    for i in range(3):
        m_u.append(solve_unique(b, list(ru[i]), bool)[:3])
        m_v.append(solve_unique(b, list(rv[i]), bool)[:3])
    return m_u, m_v


def second_order_quintic(frame: PlaneFrame, p: SamplePoint):
    """Second route to the nondegenerate second-order locus.

    Moving the plane along (lam, mu) drags both the conic's equation and
    the frame the equation is written in, so the in-plane variation at the
    kernel point x(lam, mu) is

        x^T (lam dQ/du + mu dQ/dv) x  -  2 x^T Q (lam Mu + mu Mv)^T x,

    with (Mu, Mv) the in-plane frame motion.  At x(lam, mu) the
    out-of-plane variation vanishes by construction, which makes this
    expression independent of the complement choice; scaling Q only adds a
    multiple of x^T Q x = 0.  Returns the monic binary quintic, or None
    when it vanishes identically.
    """
    qjets = focal_form_jets(frame, p)
    qval = [[qjets[i][j].val for j in range(3)] for i in range(3)]
    if conic_rank(qval) != 3:
        raise NotNondegenerate("the focal conic is degenerate at this sample")
    cu, cv = normal_classes(frame, p)
    m_u, m_v = frame_motion(frame, p)
    lam = MPoly.variable(BF_VARS, "lam")
    mu = MPoly.variable(BF_VARS, "mu")
    n = [[cu[r][c] * lam + cv[r][c] * mu for c in range(3)] for r in range(2)]
    x = cross3(n[0], n[1])
    acc = MPoly.zero(BF_VARS)
    for i in range(3):
        for j in range(3):
            du = qjets[i][j].du
            dv = qjets[i][j].dv
            if du:
                acc = acc + x[i] * x[j] * du * lam
            if dv:
                acc = acc + x[i] * x[j] * dv * mu
    # z = (lam Mu + mu Mv)^T x, the in-plane drift of the moving point
    for i in range(3):
        z_i = MPoly.zero(BF_VARS)
        for j in range(3):
            if m_u[j][i]:
                z_i = z_i + x[j] * m_u[j][i] * lam
            if m_v[j][i]:
                z_i = z_i + x[j] * m_v[j][i] * mu
        if z_i.is_zero():
            continue
        for k in range(3):
            if qval[k][i]:
                acc = acc - x[k] * z_i * (2 * qval[k][i])
    if acc.is_zero():
        return None
    return _mpoly_to_bform(acc, 5).monic()


def second_order_form_symbolic(frame: PlaneFrame):
    """Second-order form over Q(u, v) for a rank-3 focal conic.

    Denominator-cleared version of second_order_quintic: with d the
    completion determinant anchoring the complement pair, the kernel
    point, normal-class and frame-motion numerators are all polynomial,
    and  d * x^T (lam Qu + mu Qv) x  -  2 x^T Q (lam Mu + mu Mv)^T x
    equals d^5 times the true form.  Returns a primitive BForm(5) with
    polynomial coefficients in (u, v), or None when identically zero.
    """
    from .poly import poly_gcd

    witness = None
    for a, b in ((0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (-1, 2), (3, -2)):
        p = SamplePoint(a, b)
        if frame.admissible(p):
            witness = p
            break
    if witness is None:
        raise RankDrop("no admissible point found to anchor the complement basis")
    i1, i2 = complement_basis(frame, witness)

    two = ("u", "v")
    four = ("u", "v", "lam", "mu")
    arows = frame.polynomial_rows()
    zero2 = MPoly.zero(two)
    one2 = MPoly(two, {(0, 0): Fraction(1)})
    e1 = [zero2] * 5
    e2 = [zero2] * 5
    e1[i1] = one2
    e2[i2] = one2
    base = [list(arows[0]), list(arows[1]), list(arows[2]), e1, e2]
    d = det_cofactor(base)

    def cramer(rhs):
        sol = []
        for k in range(5):
            rows = [rhs if i == k else base[i] for i in range(5)]
            sol.append(det_cofactor(rows))
        return sol

    adu = [[e.derivative("u") for e in r] for r in arows]
    adv = [[e.derivative("v") for e in r] for r in arows]
    m_u, m_v = [], []
    cu = [[None] * 3 for _ in range(2)]
    cv = [[None] * 3 for _ in range(2)]
    for i in range(3):
        su = cramer(adu[i])
        sv = cramer(adv[i])
        m_u.append(su[:3])
        m_v.append(sv[:3])
        cu[0][i], cu[1][i] = su[3], su[4]
        cv[0][i], cv[1][i] = sv[3], sv[4]

    # polynomial focal matrix and its parameter derivatives
    vals = []
    for xp in _PROBES:
        ru = [
            sum((xp[i] * adu[i][j] for i in range(3)), start=zero2)
            for j in range(5)
        ]
        rv = [
            sum((xp[i] * adv[i][j] for i in range(3)), start=zero2)
            for j in range(5)
        ]
        vals.append(det_cofactor([list(r) for r in arows] + [ru, rv]))
    q = _polarize(vals)
    if all(e.is_zero() for row in q for e in row):
        raise DegenerateCongruence("focal form vanishes identically")
    qu = [[q[i][j].derivative("u") for j in range(3)] for i in range(3)]
    qv = [[q[i][j].derivative("v") for j in range(3)] for i in range(3)]

    def lift(poly):
        return MPoly(four, {e + (0, 0): c for e, c in poly.terms.items()})

    lam = MPoly.variable(four, "lam")
    mu = MPoly.variable(four, "mu")
    n = [
        [lift(cu[r][c]) * lam + lift(cv[r][c]) * mu for c in range(3)]
        for r in range(2)
    ]
    x = cross3(n[0], n[1])
    xx = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            xx[i][j] = x[i] * x[j]
            xx[j][i] = xx[i][j]
    acc = MPoly.zero(four)
    for i in range(3):
        for j in range(3):
            term = lift(qu[i][j]) * lam + lift(qv[i][j]) * mu
            if not term.is_zero():
                acc = acc + xx[i][j] * term
    acc = acc * lift(d)

    def drift_pairing(k, j):
        s_kj = MPoly.zero(four)
        for i in range(3):
            if q[k][i].is_zero():
                continue
            mterm = lift(m_u[j][i]) * lam + lift(m_v[j][i]) * mu
            if not mterm.is_zero():
                s_kj = s_kj + lift(q[k][i]) * mterm
        return s_kj

    for k in range(3):
        for j in range(k, 3):
            s_kj = drift_pairing(k, j)
            if j != k:
                s_kj = s_kj + drift_pairing(j, k)
            if not s_kj.is_zero():
                z = xx[k][j] * s_kj
                acc = acc - (z + z)
    if acc.is_zero():
        return None

    # bucket by (lam, mu) exponents into a binary quintic over Q[u, v]
    li = four.index("lam")
    mi = four.index("mu")
    buckets = {}
    for e, c in acc.terms.items():
        if e[li] + e[mi] != 5:
            raise ValueError("second-order form is not homogeneous of degree 5")
        buckets.setdefault(e[mi], {})[(e[0], e[1])] = c
    coeffs = [MPoly(two, buckets.get(k, {})) for k in range(6)]
    # The clearing multiplied the true form by d^5; peel d off while it
    # divides every coefficient.  Whatever content survives is harmless
    # (callers use zero-ness, the form degree, and monic evaluations), so
    # only chase it while the coefficients stay small.
    if not d.is_constant():
        for _ in range(5):
            try:
                peeled = [c if c.is_zero() else c.divexact(d) for c in coeffs]
            except ExactDivisionError:
                break
            coeffs = peeled
    resid = [c for c in coeffs if not c.is_zero()]
    if resid and max(c.total_degree() for c in resid) <= 16:
        content = resid[0]
        for c in resid[1:]:
            content = poly_gcd(content, c)
            if content.is_constant():
                break
        if content.total_degree() > 0:
            coeffs = [c if c.is_zero() else c.divexact(content) for c in coeffs]
    lead = next(c for c in reversed(coeffs) if not c.is_zero())
    lc = lead.leading_coeff()
    coeffs = [c / lc for c in coeffs]
    return BForm(5, coeffs)


def second_order_on_line(lift: LiftedLine):
    """Second-order locus along a focal line, via the rank of
    [L0, L1, dP/du, dP/dv] with P = s0 L0 + s1 L1.

    The minors are binary quadratics in (s0 : s1); their gcd being zero
    means the whole line consists of second-order focal points, otherwise
    the locus is the gcd's roots (at most two points, s = infinity
    included via the homogeneous form).  Returns (locus, gcd form or None).
    """
    l0v = [c.val for c in lift.l0]
    l1v = [c.val for c in lift.l1]
    l0u = [c.du for c in lift.l0]
    l0w = [c.dv for c in lift.l0]
    l1u = [c.du for c in lift.l1]
    l1w = [c.dv for c in lift.l1]
    minors = []
    import itertools

    for rows in itertools.combinations(range(5), 4):
        def restr(vec):
            return [vec[i] for i in rows]

        base = [restr(l0v), restr(l1v)]

        def d4(c3, c4):
            return det(transpose(base + [c3, c4]))

        c_ss = d4(restr(l0u), restr(l0w))
        c_st = d4(restr(l0u), restr(l1w)) + d4(restr(l1u), restr(l0w))
        c_tt = d4(restr(l1u), restr(l1w))
        minors.append(BForm(2, [c_ss, c_st, c_tt]))
    nonzero = [m for m in minors if not m.is_zero()]
    if not nonzero:
        return SecondOrderLocus("whole"), None
    g = nonzero[0]
    for m in nonzero[1:]:
        g = bform_gcd(g, m)
    g = g.monic()
    if g.deg == 0 or (g.chart_degree() == 0 and g.lam_multiplicity() == 0):
        return SecondOrderLocus("points", profile=[], roots=[], form=g), g
    profile = multiplicity_profile(g)
    try:
        roots = exact_roots(g)
    except UnsupportedField:
        roots = None
    locus = SecondOrderLocus("points", profile=profile, roots=roots, form=g)
    return locus, g


# -- pointwise criterion (independent oracle) ----------------------------------------


def pointwise_criterion(frame, p, cu, cv, line_jets, x) -> bool:
    """True iff some direction w is simultaneously focal for x and keeps the
    tracked line through x to first order.

    cu/cv are value matrices, line_jets the tracked line coefficients (jets),
    x plane coordinates of a point on the line.  The line's lifted variation
    normal to itself inside the plane has two pieces: the coefficient motion
    l'(w).x and the drift of the plane coordinates written in a moving frame,
    l.(Mw^T x) with (Mu, Mv) from frame_motion.  Their difference is the
    variation that must vanish; it is well defined exactly at the focal
    directions of x, where the complement-basis ambiguity drops out.  The
    answer is invariant under rescaling of the tracked line representative.
    """
    cux = [sum(cu[r][i] * x[i] for i in range(3)) for r in range(2)]
    cvx = [sum(cv[r][i] * x[i] for i in range(3)) for r in range(2)]
    lvals = [c.val for c in line_jets]
    ldu = [c.du for c in line_jets]
    ldv = [c.dv for c in line_jets]
    m_u, m_v = frame_motion(frame, p)

    def psi(lam, mu):
        coeff = sum((lam * ldu[i] + mu * ldv[i]) * x[i] for i in range(3))
        drift = sum(
            lvals[j] * (lam * m_u[i][j] + mu * m_v[i][j]) * x[i]
            for i in range(3) for j in range(3)
        )
        return coeff - drift

    if not any(cux) and not any(cvx):
        return True
    m = [[cux[0], cvx[0]], [cux[1], cvx[1]]]
    d = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if d:
        return False
    if any(m[0]):
        lam, mu = m[0][1], -m[0][0]
    else:
        lam, mu = m[1][1], -m[1][0]
    return not psi(lam, mu)
