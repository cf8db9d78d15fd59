"""Exact classification of 2-parameter families of planes in P^4 by
their focal loci.

The surface API: parse or pick a congruence, then classify it.

    >>> from focalis import gallery_item, classify
    >>> report = classify(gallery_item("delta").frame)
    >>> report.cclass.label()
    'Delta'
"""

from .classify import AnalysisReport, CongruenceClass, classify
from .congruence import PlaneFrame, SamplePoint, parse_congruence, validate_frame
from .errors import (
    AmbiguousVerdict,
    CongruenceSyntaxError,
    DegenerateCongruence,
    DegenerateFrame,
    FocalisError,
    UnknownGalleryItem,
)
from .gallery import GalleryItem, gallery_item, gallery_items
from .report import report_to_dict, report_to_text, to_json

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "AmbiguousVerdict",
    "CongruenceClass",
    "CongruenceSyntaxError",
    "DegenerateCongruence",
    "DegenerateFrame",
    "FocalisError",
    "GalleryItem",
    "PlaneFrame",
    "SamplePoint",
    "UnknownGalleryItem",
    "classify",
    "gallery_item",
    "gallery_items",
    "parse_congruence",
    "report_to_dict",
    "report_to_text",
    "to_json",
    "validate_frame",
]
