"""Canonical congruences with known classifications, used as the test corpus.

Every reachable class and every Segre case has a constructor here.  Each
item carries the classification its construction forces; the test suite
re-derives all of them with the classifier, so the expectations double as
regression anchors.  Two intentionally degenerate frames (every plane
point focal) are shipped alongside for error-path coverage; they are not
gallery items because they have no classification.
"""

from dataclasses import dataclass

from .classify import CongruenceClass
from .congruence import PlaneFrame, parse_congruence
from .errors import UnknownGalleryItem


@dataclass(frozen=True)
class GalleryItem:
    name: str
    frame: PlaneFrame
    expected_class: CongruenceClass
    expected_segre: str = None
    notes: str = ""
    # Sub-labels that only the construction pins down (the probes cannot);
    # pass through to classify(construction_sub=...).
    construction_sub: str = None


def _item(name, text, tag, sub, segre, notes, construction_sub=None):
    return GalleryItem(
        name=name,
        frame=parse_congruence(text),
        expected_class=CongruenceClass(tag, sub),
        expected_segre=segre,
        notes=notes,
        construction_sub=construction_sub,
    )


def gallery_delta():
    return _item(
        "delta",
        """PLANECONGRUENCE v1
1, 0, 0, 0, 0
0, 1, 0, 0, 0
0, 0, 1, u, v
""",
        "Delta", None, "Case3Line",
        "All planes through the fixed line x2=x3=x4=0; the focal form is "
        "the square x2^2 and every point of the line is focal at every "
        "order.",
    )


def gallery_veronese_projection():
    return _item(
        "veronese_projection",
        """PLANECONGRUENCE v1
1, 0, u, 0, 0
0, 0, 0, 1, v
1, 1, u+v, 1, u+v
""",
        "NondegenerateConic", "WholeConic", "Case1Veronese",
        "Conic planes of a projected Veronese surface: each plane cuts the "
        "surface in a conic, so the focal conic is entirely second-order "
        "focal.",
    )


def gallery_two_cones():
    return _item(
        "two_cones",
        """PLANECONGRUENCE v1
0, 0, 0, 0, 1
1, u, u^2, 0, 0
0, 1, v, v^2, 0
""",
        "Beta", "B3", "Case2aTwoCones",
        "Planes spanned by one generator from each of two quadric cones "
        "sharing the vertex (0,0,0,0,1); both line branches are cones "
        "with that vertex.",
    )


def gallery_plane_directrix():
    return _item(
        "plane_directrix",
        """PLANECONGRUENCE v1
1, u, u^2, 0, 0
0, 0, 1, u, u^2
0, 1, v, 0, 0
""",
        "Alpha", "A3", "Case2bPlaneDirectrix",
        "Ruled surface with directrix conic C(u) inside the plane "
        "{x3=x4=0}: each plane joins a generator of the surface to a "
        "moving line of that plane through the generator's foot on C.",
    )


def gallery_gamma1_tangent_planes():
    return _item(
        "gamma1_tangent_planes",
        """PLANECONGRUENCE v1
1, v, v^2, 0, 0
0, 0, 0, 1, v
0, 1, 2*v, 0, u
""",
        "Gamma", "G1", "Case3NondevRuled",
        "Tangent planes of a nondevelopable ruled surface, parametrized "
        "by ruling (v) and contact point along the ruling (u); the double "
        "focal line is the ruling itself.",
    )


def gallery_gamma2_tangent_dev_pencils():
    return _item(
        "gamma2_tangent_dev_pencils",
        """PLANECONGRUENCE v1
1, u, u^2, u^3, 0
0, 1, 2*u, 3*u^2, 0
0, 0, 2, 6*u, v
""",
        "Gamma", "G2", "Case3TangentDev",
        "Pencils of planes through the tangent lines of a twisted cubic, "
        "each pencil containing the osculating plane; the double focal "
        "line sweeps the curve's tangent developable.",
    )


def gallery_gamma3_cone_pencils():
    return _item(
        "gamma3_cone_pencils",
        """PLANECONGRUENCE v1
0, 0, 0, 1, 0
1, u, u^2, 0, 0
0, 1, 2*u, 0, v
""",
        "Gamma", "G3", "Case3Cone",
        "Pencils of planes through the generators of a quadric cone with "
        "vertex (0,0,0,1,0), each pencil containing the cone's tangent "
        "plane along its generator.",
    )


def gallery_beta2_tangent_dev():
    return _item(
        "beta2_tangent_dev",
        """PLANECONGRUENCE v1
1, u, u^2, u^3, 0
0, 1, 2*u, 3*u^2, 0
0, 0, 0, v, 1
""",
        "Beta", "B2", None,
        "Pencils of planes through the tangent lines of a twisted cubic "
        "that avoid the osculating planes: one focal branch sweeps the "
        "tangent developable, the singular conic points trace the curve.",
    )


def gallery_alpha1_osculating():
    return _item(
        "alpha1_osculating",
        """PLANECONGRUENCE v1
u, u^2, u^3, v, u*v
1, 2*u, 3*u^2, 0, v
0, 1, 3*u, 0, 0
""",
        "Alpha", "A1", None,
        "Osculating planes of the pencil of hyperplane sections x4=v*x0 "
        "of the cubic scroll (1,s,s^2,t,t*s); the sections are twisted "
        "cubics, their tangent lines form the developable branch.",
        construction_sub="A1",
    )


def gallery_generic5():
    # Frozen output of scripts/derive_generic5.py (search seed 7); the
    # second-order form is squarefree of degree 5 at all 25 base samples.
    return _item(
        "generic5",
        """PLANECONGRUENCE v1
-2*u^2 - 2*u*v + 2*v^2 - u + v, -2*u^2 + 2*u*v - v^2 + 2*v - 2, u^2 - 2*u*v - v^2 - 2*u + v - 2, -2*u^2 + 2*u*v - 2*v^2 + 2*u + v - 2, 2*u^2 + 2*u*v + v^2 + 2*u - 2*v - 1
2*u^2 - u*v - u - 2*v - 2, -2*u^2 + 2*u*v - u + 2*v + 1, 2*u^2 + 2*u*v - v^2 - u - 2*v + 2, -2*u^2 + 2*u*v - 2*v^2 - 2*u + 2*v, 2*u^2 + u*v - u + v + 2
-1*v^2 + 2*u + v + 1, 2*u^2 + 2*v^2 - u - 2*v - 1, 2*u*v - 2*v^2 + v + 1, -1*u^2 - v^2 + 2*u + v - 2, -2*u^2 + 2*u*v + 2*v^2 + u - 2*v + 1
""",
        "NondegenerateConic", "FivePoints", None,
        "Random-coefficient frame of total degree 2 whose second-order "
        "locus is five simple points on every sampled conic.",
    )


_CONSTRUCTORS = (
    gallery_delta,
    gallery_veronese_projection,
    gallery_two_cones,
    gallery_plane_directrix,
    gallery_gamma1_tangent_planes,
    gallery_gamma2_tangent_dev_pencils,
    gallery_gamma3_cone_pencils,
    gallery_beta2_tangent_dev,
    gallery_alpha1_osculating,
    gallery_generic5,
)


def gallery_items():
    """All gallery items, in a fixed presentation order."""
    return [ctor() for ctor in _CONSTRUCTORS]


def gallery_item(name):
    for ctor in _CONSTRUCTORS:
        item = ctor()
        if item.name == name:
            return item
    raise UnknownGalleryItem(f"no gallery item named {name!r}")


# Frames that fail validation on purpose: the focal form vanishes
# identically, so analysis must stop with DegenerateCongruence.
DEGENERATE_FIXTURES = {
    # The family only depends on u+v, so it sweeps a 1-parameter pencil.
    "pencil_sweep": """PLANECONGRUENCE v1
1, 0, 0, 0, 0
0, 1, 0, 0, 0
0, 0, 1, u+v, u+v
""",
    # No parameter moves the plane at all.
    "constant_plane": """PLANECONGRUENCE v1
1, 0, 0, 0, 0
0, 1, 0, 0, 0
0, 0, 1, 0, 0
""",
}
