"""Top-level analysis pipeline.

Per-sample exact focal data is aggregated into the taxonomy of plane
congruences by their developable families (Delta, Gamma, Beta, Alpha,
nondegenerate-conic) plus, when every focal component consists entirely
of second-order points, the matching all-second-order case.

Aggregation rules: a verdict needs at least 80% of the usable samples;
exact incidence facts must hold at every sample and a contradiction
raises AmbiguousVerdict instead of being outvoted.
"""

from dataclasses import dataclass, field

from .congruence import SamplePoint, lift_point, sample_points, validate_frame
from .errors import (
    AmbiguousVerdict,
    DegenerateCongruence,
    InconsistentBranch,
    RankDrop,
    SegreMismatch,
    UnsupportedField,
    ZeroForm,
)
from .fields import Rat, proportional
from .focal import (
    conic_rank,
    developable_form,
    developable_tag_symbolic,
    focal_form_jets,
    focal_form_symbolic,
    line_family_lift,
    normal_classes,
    normal_classes_symbolic,
    second_order_form_nondeg,
    second_order_form_symbolic,
    second_order_on_line,
    split_conic_jets,
    veronese_point,
)
from .jets import jet_value
from .linalg import rank
from .surfaces import (
    LineSample,
    fiber_direction,
    grassmann_map_rank_at,
    pencil_linearity_probe,
    plane_directrix_probe,
    realization_verdict,
    sigma_prime_probe,
    tangency_check,
)

THRESHOLD = Rat(4, 5)

# Fixed scan list for a non-developable reference direction.
_DIRECTIONS = (
    (1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, -1), (2, 3), (3, 2),
    (1, 3), (3, 1), (1, 4), (4, 1),
)

SEGRE_CASES = (
    "Case1Veronese",
    "Case2aTwoCones",
    "Case2bPlaneDirectrix",
    "Case3Line",
    "Case3NondevRuled",
    "Case3TangentDev",
    "Case3Cone",
)


@dataclass(frozen=True)
class CongruenceClass:
    tag: str                  # NondegenerateConic|Alpha|Beta|Gamma|Delta
    sub: str = None

    def label(self):
        if self.sub is None:
            return self.tag
        return f"{self.tag}{{{self.sub}}}"


@dataclass
class ComponentRecord:
    """Second-order data of one focal component at one sample."""

    label: str                # conic | double_line | dev_line | free_line |
                              # dev_line_0 | dev_line_1
    locus_kind: str           # whole | points
    profile: list
    degree: int = None        # degree of the minor gcd, None when zero
    squarefree_degree: int = None
    is_dev: bool = False
    direction: tuple = None   # canonical (lam, mu) for the matched direction
    line: list = None         # plane-coordinate line values
    lift: object = None       # LiftedLine (jets; not serialized)
    line_sample: object = None


@dataclass
class SampleRecord:
    point: SamplePoint
    conic_rank: int
    dev_tag: str
    dev_degree: int = None
    components: list = field(default_factory=list)
    sigma_lift: list = None   # jet 5-vector of the lifted singular point
    warnings: list = field(default_factory=list)

    @property
    def pattern(self):
        return (self.conic_rank, self.dev_tag)


@dataclass
class AnalysisReport:
    frame: object
    mode: str
    seed: int
    n_samples: int
    witness: dict
    samples: list
    conic_rank: int
    dev_tag: str
    cclass: CongruenceClass
    subclass_source: str
    segre: str
    probes: dict
    warnings: list


def _values(vec):
    return [jet_value(c) for c in vec]


def _dev_pencil_row(cu, cv, d):
    """The focal line of a developable direction: the nonzero row of the
    pencil matrix lam C_u + mu C_v at d, as a plane-line coefficient row."""
    lam, mu = d
    for r in range(2):
        row = [lam * cu[r][c] + mu * cv[r][c] for c in range(3)]
        if any(row):
            return row
    return None


def analyze_sample(frame, p):
    """Exact focal analysis at one admissible sample.

    Returns a SampleRecord, or None when the sample cannot be analyzed
    (per-sample degeneration, unsplittable branch data); such samples
    count against the aggregation threshold.
    """
    try:
        qj = focal_form_jets(frame, p)
    except DegenerateCongruence:
        return None
    qv = [[jet_value(e) for e in row] for row in qj]
    try:
        rk = conic_rank(qv)
    except ZeroForm:
        return None
    cu_j, cv_j = normal_classes(frame, p, with_jets=True)
    cu = [[jet_value(e) for e in row] for row in cu_j]
    cv = [[jet_value(e) for e in row] for row in cv_j]
    dev = developable_form(cu, cv)
    rec = SampleRecord(point=p, conic_rank=rk, dev_tag=dev.tag,
                       dev_degree=dev.form.deg if dev.form is not None else None)

    if rk == 3:
        g, locus = second_order_form_nondeg(frame, p)
        rec.components.append(ComponentRecord(
            label="conic",
            locus_kind=locus.kind,
            profile=list(locus.profile or []),
            degree=g.deg if g is not None else None,
            squarefree_degree=len(locus.profile) if locus.profile else
            (None if locus.kind == "whole" else 0),
        ))
        return rec

    try:
        split = split_conic_jets(qj)
    except (InconsistentBranch, ZeroForm, UnsupportedField):
        return None

    if split.kind == "double_line":
        line = split.lines[0]
        is_dev = dev.tag in ("one_double", "infinite", "one")
        direction = None
        if dev.directions:
            direction = dev.directions[0]
            row = _dev_pencil_row(cu, cv, direction)
            if row is not None and not proportional(row, _values(line)):
                rec.warnings.append(
                    "developable focal line does not match the double line")
        _append_line_component(frame, p, rec, "double_line", line, is_dev,
                               direction)
    else:
        if dev.tag == "one" and dev.directions:
            d = dev.directions[0]
            row = _dev_pencil_row(cu, cv, d)
            matches = [i for i, l in enumerate(split.lines)
                       if row is not None and proportional(row, _values(l))]
            if len(matches) != 1:
                rec.warnings.append("developable direction does not single "
                                    "out one line of the split conic")
                return rec
            dev_i = matches[0]
            _append_line_component(frame, p, rec, "dev_line",
                                   split.lines[dev_i], True, d)
            _append_line_component(frame, p, rec, "free_line",
                                   split.lines[1 - dev_i], False, None)
        elif dev.tag == "two_distinct" and dev.directions \
                and len(dev.directions) == 2:
            used = set()
            for k, d in enumerate(dev.directions):
                row = _dev_pencil_row(cu, cv, d)
                matches = [i for i, l in enumerate(split.lines)
                           if i not in used and row is not None
                           and proportional(row, _values(l))]
                if len(matches) != 1:
                    rec.warnings.append(
                        "developable directions do not match the two lines "
                        "of the split conic")
                    return rec
                used.add(matches[0])
                _append_line_component(frame, p, rec, f"dev_line_{k}",
                                       split.lines[matches[0]], True, d)
        else:
            # Rank/tag combination outside the taxonomy table; keep the
            # record so the aggregation sees the contradiction.
            for k, line in enumerate(split.lines):
                _append_line_component(frame, p, rec, f"line_{k}", line,
                                       False, None)

    if rk <= 2 and dev.tag != "infinite":
        rec.sigma_lift = _sigma_lift(frame, p, cu_j, cv_j, dev)
    return rec


def _append_line_component(frame, p, rec, label, line_jets, is_dev, direction):
    lift = line_family_lift(frame, p, line_jets)
    locus, g = second_order_on_line(lift)
    rec.components.append(ComponentRecord(
        label=label,
        locus_kind=locus.kind,
        profile=list(locus.profile or []),
        degree=g.deg if g is not None else None,
        squarefree_degree=len(locus.profile or []) if locus.kind == "points"
        else None,
        is_dev=is_dev,
        direction=direction,
        line=_values(line_jets),
        lift=lift,
        line_sample=LineSample(p, lift.l0, lift.l1),
    ))


def _sigma_lift(frame, p, cu_j, cv_j, dev):
    """Jets of the lifted singular focal point, via a non-developable
    reference direction from a fixed scan list."""
    for d in _DIRECTIONS:
        if dev.directions and any(
                _direction_matches(d, r) for r in dev.directions):
            continue
        try:
            x = veronese_point(cu_j, cv_j, d)
        except RankDrop:
            continue
        jets = frame.jets_at(p)
        return [sum(x[i] * jets[i][j] for i in range(3)) for j in range(5)]
    return None


def _direction_matches(d, root):
    lam, mu = d
    rl, rm = root
    return rl * mu - rm * lam == 0


def _majority(values, threshold=THRESHOLD):
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


_CLASS_TABLE = {
    (3, "none"): "NondegenerateConic",
    (2, "one"): "Alpha",
    (2, "two_distinct"): "Beta",
    (1, "one_double"): "Gamma",
    (1, "one"): "Gamma",
    (1, "infinite"): "Delta",
}


def classify(frame, n_samples=25, seed=0, mode="sampled",
             construction_sub=None):
    """Run the full pipeline and aggregate an AnalysisReport.

    construction_sub: sub-label coming from how the input was built (only
    the curated examples carry one); applied only when the probes cannot
    determine a sub-label on their own, and recorded as such.
    """
    witness = validate_frame(frame)
    pts = sample_points(frame, n_samples, seed)
    warnings = []

    records = []
    for p in pts:
        rec = analyze_sample(frame, p)
        if rec is not None:
            records.append(rec)
    if not records or Rat(len(records), len(pts)) < THRESHOLD:
        raise AmbiguousVerdict(
            "too many samples resisted exact analysis",
            evidence={"usable": len(records), "drawn": len(pts)})

    pattern = _majority([r.pattern for r in records])
    if pattern is None:
        raise AmbiguousVerdict(
            "no (conic rank, developable tag) pattern reaches the "
            "aggregation threshold",
            evidence={"patterns": sorted(
                {repr(r.pattern) for r in records})})
    rk, dev_tag = pattern
    if pattern not in _CLASS_TABLE:
        raise AmbiguousVerdict(
            "sampled pattern falls outside the taxonomy table",
            evidence={"conic_rank": rk, "dev_tag": dev_tag})
    tag = _CLASS_TABLE[pattern]
    if pattern == (1, "one"):
        warnings.append(
            "rank-1 conic with a single simple developable direction: "
            "sub-label left undetermined")

    conforming = [r for r in records if r.pattern == pattern]
    labels = _component_labels(tag, dev_tag)
    conforming = [r for r in conforming
                  if sorted(c.label for c in r.components) == sorted(labels)]
    if not conforming or Rat(len(conforming), len(records)) < THRESHOLD:
        raise AmbiguousVerdict(
            "component structure does not stabilize across samples",
            evidence={"conforming": len(conforming), "usable": len(records)})
    for r in conforming:
        warnings.extend(r.warnings)

    whole = {}
    for label in labels:
        kinds = [_component(r, label).locus_kind for r in conforming]
        if all(k == "whole" for k in kinds):
            whole[label] = True
        elif Rat(kinds.count("points"), len(kinds)) >= THRESHOLD:
            whole[label] = False
        else:
            raise AmbiguousVerdict(
                "whole-component verdict does not stabilize",
                evidence={"component": label, "kinds": kinds})

    probes = {}
    branch_verdicts = {}
    line_labels = [l for l in labels if l != "conic"]
    curve_points = _restriction_curve_points(frame, conforming, seed)
    for label in line_labels:
        lifts = [_component(r, label).line_sample for r in conforming]
        resolver = _branch_resolver(frame, pattern, labels, label)
        verdict = realization_verdict(lifts, resolver, curve_points)
        warnings.extend(verdict.warnings)
        branch_verdicts[label] = verdict
        entry = {
            "kind": verdict.kind,
            "family_dim": verdict.family_dim,
            "swept_dim": verdict.swept_dim,
        }
        if verdict.vertex is not None:
            entry["vertex"] = verdict.vertex
        if verdict.plane is not None:
            entry["plane"] = verdict.plane
        if verdict.kind in ("nondev_ruled", "tangent_developable"):
            coord = verdict.transverse or "u"
            entry["tangency"] = tangency_check(
                frame,
                [(r.point, _component(r, label).line_sample, coord)
                 for r in conforming])
        probes[label] = entry

    if tag in ("Beta", "Gamma"):
        sig = [r.sigma_lift for r in conforming if r.sigma_lift is not None]
        if sig:
            probes["sigma_prime"] = sigma_prime_probe(sig)

    if tag == "Alpha":
        plane_label = next((l for l in line_labels
                            if branch_verdicts[l].kind == "plane"), None)
        ruled_label = next((l for l in line_labels
                            if branch_verdicts[l].kind == "nondev_ruled"),
                           None)
        if plane_label and ruled_label:
            probes["plane_directrix"] = plane_directrix_probe(
                branch_verdicts[plane_label].plane,
                [_component(r, ruled_label).line_sample for r in conforming])
            probes["dev_system_in_hyperplane"] = _dev_hyperplane_probe(
                frame, conforming, branch_verdicts[plane_label].plane)

    if tag == "Gamma" and branch_verdicts.get("double_line") is not None \
            and branch_verdicts["double_line"].kind in (
                "cone", "tangent_developable"):
        entries = []
        for r in conforming:
            comp = _component(r, "double_line")
            f = fiber_direction(comp.line_sample)
            if f is not None:
                entries.append((r.point, comp.line_sample, f))
        if entries:
            probes["pencil_linearity"] = pencil_linearity_probe(frame, entries)

    sub, sub_source = _subtype(tag, dev_tag, branch_verdicts, probes,
                               construction_sub, warnings)
    if tag == "NondegenerateConic":
        sub = "WholeConic" if whole["conic"] else "FivePoints"
        sub_source = "probes"
    cclass = CongruenceClass(tag, sub)

    segre = None
    if whole and all(whole.values()):
        try:
            segre = _segre_case(tag, branch_verdicts, probes)
        except SegreMismatch as e:
            warnings.append(f"all components second-order focal but no "
                            f"all-second-order case matches: {e}")

    if mode == "symbolic":
        probes["symbolic"] = _symbolic_crosscheck(frame, rk, dev_tag, whole,
                                                  warnings)

    return AnalysisReport(
        frame=frame,
        mode=mode,
        seed=seed,
        n_samples=n_samples,
        witness=witness,
        samples=records,
        conic_rank=rk,
        dev_tag=dev_tag,
        cclass=cclass,
        subclass_source=sub_source,
        segre=segre,
        probes=probes,
        warnings=warnings,
    )


def _component(rec, label):
    for c in rec.components:
        if c.label == label:
            return c
    raise KeyError(label)


def _component_labels(tag, dev_tag):
    if tag == "NondegenerateConic":
        return ["conic"]
    if tag == "Alpha":
        return ["dev_line", "free_line"]
    if tag == "Beta":
        return ["dev_line_0", "dev_line_1"]
    return ["double_line"]


def _restriction_curve_points(frame, conforming, seed):
    """Points on the coordinate restriction curves through the first
    conforming sample, for the rank-1 realization tests."""
    import random

    base = conforming[0].point
    rng = random.Random(seed + 1)
    us, vs = [], []
    tries = 0
    while len(us) < 6 and tries < 60:
        tries += 1
        w = Rat(rng.randint(-9, 9))
        if w != base.u and w not in us:
            us.append(w)
    tries = 0
    while len(vs) < 6 and tries < 60:
        tries += 1
        w = Rat(rng.randint(-9, 9))
        if w != base.v and w not in vs:
            vs.append(w)
    return {
        "u": [SamplePoint(w, base.v) for w in us],
        "v": [SamplePoint(base.u, w) for w in vs],
    }


def _branch_resolver(frame, pattern, labels, label):
    def resolve(point):
        if not frame.admissible(point):
            return None
        rec = analyze_sample(frame, point)
        if rec is None or rec.pattern != pattern:
            return None
        if sorted(c.label for c in rec.components) != sorted(labels):
            return None
        return _component(rec, label).line_sample
    return resolve


def _dev_hyperplane_probe(frame, conforming, plane_rows):
    """First-order check that each developable system stays inside the
    hyperplane spanned by the plane branch and the developable focal line."""
    for r in conforming:
        comp = _component(r, "dev_line")
        if comp.direction is None:
            return False
        v0, v1 = comp.line_sample.spanning_values()
        h = [list(row) for row in plane_rows] + [v0, v1]
        base = rank([list(row) for row in h])
        if base > 4:
            return False
        jets = frame.jets_at(r.point)
        lam, mu = comp.direction
        a_rows = [[c.val for c in row] for row in jets]
        da_rows = [[lam * c.du + mu * c.dv for c in row] for row in jets]
        if rank(h + a_rows + da_rows) > base:
            return False
    return True


def _subtype(tag, dev_tag, branch_verdicts, probes, construction_sub,
             warnings):
    sub = None
    if tag == "NondegenerateConic":
        return None, None   # filled by caller from the whole-dichotomy
    if tag == "Gamma":
        if dev_tag == "one":
            sub = "UnknownSub"
        else:
            v = branch_verdicts.get("double_line")
            if v is not None and v.kind == "cone":
                sub = "G3"
            elif v is not None and v.kind == "tangent_developable":
                sub = "G2"
            elif v is not None and v.kind == "nondev_ruled" \
                    and probes.get("double_line", {}).get("tangency"):
                sub = "G1"
            else:
                sub = "UnknownSub"
    elif tag == "Beta":
        kinds = [branch_verdicts[l].kind for l in ("dev_line_0", "dev_line_1")]
        if kinds == ["cone", "cone"]:
            v0 = branch_verdicts["dev_line_0"].vertex
            v1 = branch_verdicts["dev_line_1"].vertex
            if proportional(v0, v1):
                sub = "B3"
        if sub is None:
            sigma = probes.get("sigma_prime", {})
            ruled = [k for k in kinds if k in
                     ("cone", "tangent_developable", "nondev_ruled")]
            if sigma.get("kind") == "curve" and ruled \
                    and all(k == "tangent_developable" for k in ruled):
                sub = "B2"
        if sub is None:
            sub = "UnknownSub"
    elif tag == "Alpha":
        v = branch_verdicts.get("dev_line")
        if v is not None and v.kind == "nondev_ruled" \
                and probes.get("dev_line", {}).get("tangency") is False:
            sub = "A3"
        else:
            sub = "UnknownSub"
    else:
        return None, None   # Delta has no sub-label

    if sub == "UnknownSub" and construction_sub is not None:
        return construction_sub, "construction"
    return sub, "probes"


def _segre_case(tag, branch_verdicts, probes):
    if tag == "NondegenerateConic":
        return "Case1Veronese"
    if tag in ("Alpha", "Beta"):
        kinds = {l: v.kind for l, v in branch_verdicts.items()}
        vals = sorted(kinds.values())
        if vals == ["cone", "cone"]:
            vs = [v.vertex for v in branch_verdicts.values()]
            if proportional(vs[0], vs[1]):
                return "Case2aTwoCones"
            raise SegreMismatch("two cones with different vertices")
        if vals == ["nondev_ruled", "plane"]:
            pd = probes.get("plane_directrix")
            if pd and pd.get("met"):
                return "Case2bPlaneDirectrix"
            raise SegreMismatch(
                "plane and ruled branch without a plane directrix")
        raise SegreMismatch(f"branch verdicts {vals} fit no rank-2 case")
    v = branch_verdicts.get("double_line")
    kind = v.kind if v is not None else None
    mapping = {
        "line": "Case3Line",
        "nondev_ruled": "Case3NondevRuled",
        "tangent_developable": "Case3TangentDev",
        "cone": "Case3Cone",
    }
    if kind in mapping:
        return mapping[kind]
    raise SegreMismatch(f"line-branch verdict {kind} fits no rank-1 case")


def _symbolic_rank(q):
    if all(e.is_zero() for row in q for e in row):
        raise ZeroForm("symbolic focal form is zero")
    # Rank over Q(u, v) via nonvanishing minors.  Gaussian elimination on
    # rational-function entries forces a gcd normalisation per division and
    # chokes on dense frames; minors of the cleared numerator matrix need no
    # division at all.  Scaling row i by the product of its denominators
    # preserves rank.
    from .linalg import det_cofactor

    m = []
    for row in q:
        cleared = []
        for j, e in enumerate(row):
            acc = e.num
            for k, other in enumerate(row):
                if k != j:
                    acc = acc * other.den
            cleared.append(acc)
        m.append(cleared)
    if not det_cofactor(m).is_zero():
        return 3
    for i in range(3):
        for j in range(3):
            a, b = [r for r in range(3) if r != i]
            c, d = [col for col in range(3) if col != j]
            if not (m[a][c] * m[b][d] - m[a][d] * m[b][c]).is_zero():
                return 2
    return 1


def _symbolic_crosscheck(frame, rk, dev_tag, whole, warnings):
    """Recompute the aggregate invariants over Q(u, v) and compare."""
    out = {}
    q = focal_form_symbolic(frame)
    srk = _symbolic_rank(q)
    out["conic_rank"] = srk
    if srk != rk:
        raise AmbiguousVerdict(
            "symbolic conic rank disagrees with the sampled aggregate",
            evidence={"symbolic": srk, "sampled": rk})
    cu, cv = normal_classes_symbolic(frame)
    sym_tag = developable_tag_symbolic(cu, cv)
    out["dev_tag"] = sym_tag
    if sym_tag != dev_tag:
        raise AmbiguousVerdict(
            "symbolic developable tag disagrees with the sampled aggregate",
            evidence={"symbolic": sym_tag, "sampled": dev_tag})
    if rk == 3:
        g = second_order_form_symbolic(frame)
        out["second_order_whole"] = g is None
        if (g is None) != whole.get("conic", False):
            raise AmbiguousVerdict(
                "symbolic second-order verdict disagrees with the sampled "
                "aggregate",
                evidence={"symbolic_whole": g is None})
        if g is not None:
            out["second_order_degree"] = g.deg
    else:
        warnings.append("symbolic mode: line-component loci and surface "
                        "probes come from sampled data")
    return out
