#!/usr/bin/env python3
"""Search for the frozen generic5 gallery frame.

Draws random integer frames of total degree <= 2 until one passes the
gate: the frame validates, the focal conic is nondegenerate with no
developable directions at every probe sample, the second-order form has
squarefree degree exactly 5 at >= 80% of 25 samples, and the classifier
returns NondegenerateConic{FivePoints} with no Segre case.  The winner's
rows are frozen in focalis.gallery; rerunning this script reproduces them.
"""

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from focalis.bform import squarefree_part
from focalis.classify import classify
from focalis.congruence import parse_congruence, sample_points
from focalis.errors import AmbiguousVerdict, DegenerateCongruence
from focalis.focal import (
    NotNondegenerate,
    conic_rank,
    developable_form,
    focal_form,
    normal_classes,
    second_order_form_nondeg,
)

MONOMIALS = ["1", "u", "v", "u^2", "u*v", "v^2"]
SEED = 7


def random_frame_text(rng):
    rows = []
    for _ in range(3):
        entries = []
        for _ in range(5):
            terms = []
            for mono in MONOMIALS:
                c = rng.randint(-2, 2)
                if c == 0:
                    continue
                terms.append(mono if c == 1 else f"{c}*{mono}")
            entries.append(" + ".join(terms).replace("+ -", "- ") or "0")
        rows.append(", ".join(entries))
    return "PLANECONGRUENCE v1\n" + "\n".join(rows) + "\n"


def passes_gate(text):
    try:
        frame = parse_congruence(text)
    except Exception:
        return None
    try:
        pts = sample_points(frame, 25, 0)
    except DegenerateCongruence:
        return None
    good = 0
    for p in pts:
        try:
            q = focal_form(frame, p)
            if conic_rank(q) != 3:
                return None
            cu, cv = normal_classes(frame, p)
            if developable_form(cu, cv).tag != "none":
                return None
            g, locus = second_order_form_nondeg(frame, p)
        except (DegenerateCongruence, NotNondegenerate, AmbiguousVerdict):
            return None
        if g is None:
            return None
        sf = squarefree_part(g)
        if sf.deg == 5 and sf == g:
            good += 1
    if good < 20:
        return None
    try:
        report = classify(frame, n_samples=25, seed=0)
    except (DegenerateCongruence, AmbiguousVerdict):
        return None
    if report.cclass.label() != "NondegenerateConic{FivePoints}":
        return None
    if report.segre is not None:
        return None
    return frame, good


def main():
    rng = random.Random(SEED)
    for attempt in range(1, 5001):
        text = random_frame_text(rng)
        hit = passes_gate(text)
        if hit is None:
            continue
        frame, good = hit
        print(f"# found on attempt {attempt}; squarefree degree 5 at {good}/25 samples")
        print(frame.to_text())
        return 0
    print("no frame found within the attempt budget", file=sys.stderr)
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
