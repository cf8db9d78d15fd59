"""Verification suites behind ``focalis verify``.

Three suites: ``segre`` (the all-second-order surface cases on the
gallery), ``taxonomy`` (every gallery item classifies as expected), and
``invariants`` (classification is stable under a fixed projective map,
a fixed row mixing and a fixed reparametrization, and the two
second-order membership routes agree pointwise on line components).
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .classify import analyze_sample, classify
from .congruence import PlaneFrame, sample_points
from .focal import pointwise_criterion, second_order_on_line
from .gallery import gallery_items
from .jets import jet_value


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict


SUITES = ("segre", "taxonomy", "invariants")


# -- frame transforms --------------------------------------------------------------

# One fixed representative of each symmetry; determinants are checked in
# the test suite so a careless edit cannot silently make them singular.
PGL5_MAP = (
    (1, 1, 0, 0, 0),
    (0, 1, 0, 0, 0),
    (0, 0, 1, 0, 1),
    (0, 2, 0, 1, 0),
    (1, 0, 0, 0, 1),
)

GL3_MIX = (
    (1, 1, 0),
    (0, 1, 1),
    (1, 0, 2),
)

# u -> u - 2v + 1, v -> 3u + v - 2  (linear part has determinant 7)
REPARAM = ((1, -2, 1), (3, 1, -2))


def apply_projective(frame, m=PGL5_MAP):
    """Image frame under the ambient map x -> M x."""
    rows = []
    for r in frame.rows:
        img = []
        for k in range(5):
            acc = r[0] * Fraction(m[k][0])
            for j in range(1, 5):
                acc = acc + r[j] * Fraction(m[k][j])
            img.append(acc)
        rows.append(img)
    return PlaneFrame(rows)


def mix_rows(frame, g=GL3_MIX):
    """Replace the spanning rows by an invertible constant combination."""
    rows = []
    for i in range(3):
        img = []
        for c in range(5):
            acc = frame.rows[0][c] * Fraction(g[i][0])
            for j in range(1, 3):
                acc = acc + frame.rows[j][c] * Fraction(g[i][j])
            img.append(acc)
        rows.append(img)
    return PlaneFrame(rows)


def reparametrize(frame, coeffs=REPARAM):
    """Precompose the frame with an invertible affine map of (u, v)."""
    from .poly import MPoly

    (a, b, e), (c, d, f) = coeffs
    two = ("u", "v")
    uu = MPoly.variable(two, "u")
    vv = MPoly.variable(two, "v")
    mapping = {
        "u": uu * a + vv * b + MPoly.const(two, Fraction(e)),
        "v": uu * c + vv * d + MPoly.const(two, Fraction(f)),
    }
    rows = [[entry.subs(mapping) for entry in r] for r in frame.rows]
    return PlaneFrame(rows)


# -- suites ------------------------------------------------------------------------


def _classify_item(item, seed, n_samples=25):
    return classify(item.frame, n_samples=n_samples, seed=seed,
                    construction_sub=item.construction_sub)


def suite_segre(seed=0):
    results = []
    for item in gallery_items():
        if item.expected_segre is None:
            continue
        rep = _classify_item(item, seed)
        ok = (rep.segre == item.expected_segre
              and rep.cclass == item.expected_class)
        results.append(CheckResult(
            name=f"segre/{item.name}",
            passed=ok,
            details={
                "expected_class": item.expected_class.label(),
                "expected_segre": item.expected_segre,
                "class": rep.cclass.label(),
                "segre": rep.segre,
            },
        ))
    return results


def suite_taxonomy(seed=0):
    results = []
    for item in gallery_items():
        rep = _classify_item(item, seed)
        ok = (rep.cclass == item.expected_class
              and rep.segre == item.expected_segre)
        results.append(CheckResult(
            name=f"taxonomy/{item.name}",
            passed=ok,
            details={
                "expected_class": item.expected_class.label(),
                "expected_segre": item.expected_segre,
                "class": rep.cclass.label(),
                "segre": rep.segre,
            },
        ))
    return results


def _signature(rep):
    return {
        "class": rep.cclass.label(),
        "segre": rep.segre,
        "conic_rank": rep.conic_rank,
        "dev_tag": rep.dev_tag,
    }


def suite_invariants(seed=0):
    results = []
    transforms = (
        ("pgl5", apply_projective),
        ("row_mix", mix_rows),
        ("reparam", reparametrize),
    )
    for item in gallery_items():
        base = _signature(_classify_item(item, seed))
        for tname, tf in transforms:
            moved = tf(item.frame)
            rep = classify(moved, n_samples=25, seed=seed,
                           construction_sub=item.construction_sub)
            sig = _signature(rep)
            results.append(CheckResult(
                name=f"invariance/{item.name}/{tname}",
                passed=sig == base,
                details={"base": base, "transformed": sig},
            ))
    for item in gallery_items():
        res = _oracle_equivalence(item, seed)
        if res is not None:
            results.append(res)
    return results


def _oracle_equivalence(item, seed, n_points=20):
    """Pointwise second-order membership against the root route.

    Only items whose focal conic splits into lines participate; the two
    routes must agree at every random point of every line component.
    """
    frame = item.frame
    pts = sample_points(frame, 3, seed)
    rec = None
    for p in pts:
        rec = analyze_sample(frame, p)
        if rec is not None and any(c.lift is not None for c in rec.components):
            break
        rec = None
    if rec is None:
        return None
    from .focal import normal_classes

    cu, cv = normal_classes(frame, rec.point)
    rng = random.Random(f"{seed}:{item.name}:oracle")
    tested = 0
    agreed = 0
    for comp in rec.components:
        if comp.lift is None:
            continue
        locus, g = second_order_on_line(comp.lift)
        x0 = [jet_value(c) for c in comp.lift.x0]
        x1 = [jet_value(c) for c in comp.lift.x1]
        for _ in range(n_points):
            a = Fraction(rng.randint(-9, 9))
            b = Fraction(rng.randint(-9, 9))
            if a == 0 and b == 0:
                b = Fraction(1)
            x = [a * x0[i] + b * x1[i] for i in range(3)]
            member = locus.kind == "whole" or \
                (g is not None and not g.eval(a, b))
            direct = pointwise_criterion(frame, rec.point, cu, cv,
                                         comp.lift.line, x)
            tested += 1
            if member == direct:
                agreed += 1
    if tested == 0:
        return None
    return CheckResult(
        name=f"oracle/{item.name}",
        passed=agreed == tested,
        details={"tested": tested, "agreed": agreed},
    )


def run_suite(suite, seed=0):
    if suite == "segre":
        return suite_segre(seed)
    if suite == "taxonomy":
        return suite_taxonomy(seed)
    if suite == "invariants":
        return suite_invariants(seed)
    raise ValueError(f"unknown suite: {suite!r}")
