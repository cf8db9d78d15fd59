"""Frames of plane congruences: parsing, validation, sampling, jets.

A congruence is handed around as a 3x5 matrix of rational functions in
(u, v); the three rows span the plane attached to the parameter point.
Everything downstream differentiates this frame, so the frame object
caches its first and second derivative matrices and can evaluate itself
into plain numbers or first-order jets at a sample point.
"""
from __future__ import annotations

import random
from fractions import Fraction

from . import parsing
from .errors import DegenerateCongruence, DegenerateFrame, SamplingExhausted
from .jets import Jet
from .linalg import det, det_cofactor, echelon_pivot_cols, rank
from .poly import MPoly, RFunc

FRAME_VARS = ("u", "v")


def _entry(x) -> RFunc:
    if isinstance(x, RFunc):
        if x.vars != FRAME_VARS:
            raise ValueError("frame entries must use variables (u, v)")
        return x
    if isinstance(x, MPoly):
        if x.vars != FRAME_VARS:
            raise ValueError("frame entries must use variables (u, v)")
        return RFunc(x)
    if isinstance(x, (int, Fraction)):
        return RFunc.from_const(FRAME_VARS, x)
    raise TypeError(f"cannot use {type(x).__name__} as a frame entry")


class SamplePoint:
    __slots__ = ("u", "v", "admissible")

    def __init__(self, u, v, admissible=True):
        self.u = Fraction(u)
        self.v = Fraction(v)
        self.admissible = bool(admissible)

    def as_dict(self):
        return {"u": self.u, "v": self.v}

    def __eq__(self, other):
        if not isinstance(other, SamplePoint):
            return NotImplemented
        return self.u == other.u and self.v == other.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        return f"SamplePoint({self.u}, {self.v})"


class PlanePoint:
    """A point of a plane: its (x0:x1:x2) coordinates and the ambient lift."""

    __slots__ = ("x", "lift")

    def __init__(self, x, lift):
        self.x = list(x)
        self.lift = list(lift)
        if not any(self.lift):
            raise ValueError("plane point with zero lift")

    def __repr__(self):
        return f"PlanePoint(x={self.x})"


class PlaneFrame:
    __slots__ = ("rows", "_du", "_dv", "_d2")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if len(rows) != 3 or any(len(r) != 5 for r in rows):
            raise ValueError("a plane frame is a 3x5 matrix")
        self.rows = [[_entry(x) for x in r] for r in rows]
        self._du = None
        self._dv = None
        self._d2 = None
        if not self._generically_rank3():
            raise DegenerateFrame(
                "frame rows are linearly dependent at every parameter point"
            )

    # -- structure ----------------------------------------------------------

    def _generically_rank3(self) -> bool:
        from itertools import combinations

        for cols in combinations(range(5), 3):
            sub = [[self.rows[i][j] for j in cols] for i in range(3)]
            if det_cofactor(sub):
                return True
        return False

    def du_rows(self):
        if self._du is None:
            self._du = [[e.derivative("u") for e in r] for r in self.rows]
        return self._du

    def dv_rows(self):
        if self._dv is None:
            self._dv = [[e.derivative("v") for e in r] for r in self.rows]
        return self._dv

    def second_derivatives(self):
        if self._d2 is None:
            du, dv = self.du_rows(), self.dv_rows()
            self._d2 = {
                "uu": [[e.derivative("u") for e in r] for r in du],
                "uv": [[e.derivative("v") for e in r] for r in du],
                "vv": [[e.derivative("v") for e in r] for r in dv],
            }
        return self._d2

    # -- evaluation ----------------------------------------------------------

    def at(self, p: SamplePoint):
        pt = p.as_dict()
        return [[e.eval(pt) for e in r] for r in self.rows]

    def admissible(self, p: SamplePoint) -> bool:
        pt = p.as_dict()
        try:
            m = [[e.eval(pt) for e in r] for r in self.rows]
        except ZeroDivisionError:
            return False
        return rank(m) == 3

    def jets_at(self, p: SamplePoint):
        """The frame as a 3x5 matrix of first-order jets at p."""
        pt = p.as_dict()
        du, dv = self.du_rows(), self.dv_rows()
        return [
            [
                Jet(e.eval(pt), du[i][j].eval(pt), dv[i][j].eval(pt))
                for j, e in enumerate(r)
            ]
            for i, r in enumerate(self.rows)
        ]

    def derivative_jets_at(self, p: SamplePoint):
        """Jets of the derivative frames dA/du and dA/dv at p.

        Needs second derivatives of the frame; used when the normal-class
        matrices themselves have to be differentiated.
        """
        pt = p.as_dict()
        du, dv = self.du_rows(), self.dv_rows()
        d2 = self.second_derivatives()
        ju = [
            [
                Jet(du[i][j].eval(pt), d2["uu"][i][j].eval(pt), d2["uv"][i][j].eval(pt))
                for j in range(5)
            ]
            for i in range(3)
        ]
        jv = [
            [
                Jet(dv[i][j].eval(pt), d2["uv"][i][j].eval(pt), d2["vv"][i][j].eval(pt))
                for j in range(5)
            ]
            for i in range(3)
        ]
        return ju, jv

    # -- transforms (used heavily by the invariance tests) ---------------------

    def row_mix(self, m3):
        new = [
            [
                sum((m3[i][k] * self.rows[k][j] for k in range(3)), start=RFunc.from_const(FRAME_VARS, 0))
                for j in range(5)
            ]
            for i in range(3)
        ]
        return PlaneFrame(new)

    def ambient_map(self, p5):
        new = [
            [
                sum((self.rows[i][k] * p5[j][k] for k in range(5)), start=RFunc.from_const(FRAME_VARS, 0))
                for j in range(5)
            ]
            for i in range(3)
        ]
        return PlaneFrame(new)

    def reparametrize(self, fu: MPoly, fv: MPoly):
        mapping = {"u": fu, "v": fv}
        return PlaneFrame([[e.subs(mapping) for e in r] for r in self.rows])

    # -- misc -----------------------------------------------------------------

    def polynomial_rows(self):
        """Rows as MPoly when every entry is polynomial (raises otherwise)."""
        out = []
        for r in self.rows:
            row = []
            for e in r:
                if not e.is_polynomial():
                    raise ValueError("frame entry is not polynomial")
                row.append(e.num / e.den.constant_value())
            out.append(row)
        return out

    def max_total_degree(self) -> int:
        return max(
            max(e.num.total_degree(), e.den.total_degree()) for r in self.rows for e in r
        )

    def to_text(self) -> str:
        return parsing.congruence_to_text(self.polynomial_rows())

    def __eq__(self, other):
        if not isinstance(other, PlaneFrame):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __repr__(self):
        return f"PlaneFrame({[[e.to_text() for e in r] for r in self.rows]})"


def parse_congruence(text: str) -> PlaneFrame:
    return PlaneFrame(parsing.parse_text(text))


def lift_point(frame_at_p, x):
    """Lift plane coordinates x to ambient coordinates via the frame rows."""
    lift = [
        sum(x[i] * frame_at_p[i][j] for i in range(3)) for j in range(5)
    ]
    return PlanePoint(x, lift)


_POLARIZATION_PROBES = (
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
)


def _focal_matrix_rows(frame: PlaneFrame, pt: dict, x):
    rows = [[e.eval(pt) for e in r] for r in frame.rows]
    du, dv = frame.du_rows(), frame.dv_rows()
    ru = [
        sum(x[i] * du[i][j].eval(pt) for i in range(3)) for j in range(5)
    ]
    rv = [
        sum(x[i] * dv[i][j].eval(pt) for i in range(3)) for j in range(5)
    ]
    return rows + [ru, rv]


def _symbolic_focal_coeff(frame: PlaneFrame, x):
    """det of the 5x5 focal matrix with plane coordinates frozen to x in Z^3,
    as a rational function of (u, v)."""
    rows = [list(r) for r in frame.rows]
    du, dv = frame.du_rows(), frame.dv_rows()
    zero = RFunc.from_const(FRAME_VARS, 0)
    ru = [
        sum((x[i] * du[i][j] for i in range(3)), start=zero) for j in range(5)
    ]
    rv = [
        sum((x[i] * dv[i][j] for i in range(3)), start=zero) for j in range(5)
    ]
    return det(rows + [ru, rv])


def _nonvanishing_point(p: RFunc):
    """A grid point where a nonzero rational function does not vanish."""
    n = p.num
    bu = max(n.degree_in("u"), 0) + 1
    bv = max(n.degree_in("v"), 0) + 1
    for a in range(bu):
        for b in range(bv):
            pt = {"u": Fraction(a), "v": Fraction(b)}
            try:
                if p.eval(pt):
                    return pt
            except ZeroDivisionError:
                continue
    for a in range(-12, 13):
        for b in range(-12, 13):
            pt = {"u": Fraction(a), "v": Fraction(b)}
            try:
                if p.eval(pt):
                    return pt
            except ZeroDivisionError:
                continue
    raise DegenerateCongruence("could not certify a nonvanishing witness")


def validate_frame(frame: PlaneFrame) -> dict:
    """Nondegeneracy diagnostics: frame rank and a focal-form witness.

    Raises DegenerateFrame if the rows are generically dependent and
    DegenerateCongruence if the focal determinant vanishes identically
    (every plane point would be focal).  On success returns the witness:
    plane coordinates x and a parameter point where the determinant is
    nonzero.
    """
    if not frame._generically_rank3():
        raise DegenerateFrame(
            "frame rows are linearly dependent at every parameter point"
        )
    probe_points = [
        SamplePoint(a, b)
        for a, b in ((0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (-1, 2), (3, -2))
    ]
    for p in probe_points:
        if not frame.admissible(p):
            continue
        pt = p.as_dict()
        for x in _POLARIZATION_PROBES:
            try:
                d = det(_focal_matrix_rows(frame, pt, x))
            except ZeroDivisionError:
                continue
            if d:
                return {
                    "frame_rank": 3,
                    "witness": {"u": p.u, "v": p.v, "x": list(x), "det": d},
                }
    for x in _POLARIZATION_PROBES:
        coeff = _symbolic_focal_coeff(frame, x)
        if coeff:
            pt = _nonvanishing_point(coeff)
            return {
                "frame_rank": 3,
                "witness": {
                    "u": pt["u"],
                    "v": pt["v"],
                    "x": list(x),
                    "det": coeff.eval(pt),
                },
            }
    raise DegenerateCongruence(
        "the focal determinant vanishes identically; every plane point is focal"
    )


def sample_points(frame: PlaneFrame, n: int, seed: int):
    """n admissible integer sample points from [-9, 9]^2, seed-deterministic."""
    if n < 1:
        raise ValueError("need at least one sample point")
    rng = random.Random(seed)
    out = []
    for slot in range(n):
        for _attempt in range(100):
            u = rng.randint(-9, 9)
            v = rng.randint(-9, 9)
            p = SamplePoint(u, v)
            if frame.admissible(p):
                out.append(p)
                break
        else:
            raise SamplingExhausted(
                f"no admissible point found for slot {slot} after 100 attempts"
            )
    return out


def complement_basis(frame: PlaneFrame, p: SamplePoint):
    """Indices (i, j) with {A0(p), A1(p), A2(p), e_i, e_j} a basis of C^5.

    Taken as the non-pivot columns of the row echelon form of A(p); this
    matches a first-working-pair scan ordered by the echelon structure and
    is stable under row mixing of the frame.
    """
    m = frame.at(p)
    pivots = echelon_pivot_cols(m)
    if len(pivots) != 3:
        raise DegenerateFrame("frame does not have rank 3 at the sample point")
    free = [j for j in range(5) if j not in pivots]
    return free[0], free[1]
