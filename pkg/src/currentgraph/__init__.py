"""Current graphs over Z3 x Z12s and the triangular embeddings of K_36s they generate."""

from .group import GroupElement, GroupSpec, element_order, is_even, parse_group
from .model import CurrentGraph, Dart, ModelError, ParseError, apply_flip, parse, serialize
from .tracer import classify_edges, face_log, surface_orientable, trace_faces
from .laws import LawReport, check_laws
from .derive import RotationSystem, derive_index1, derive_index2, normalize_to_pure
from .certify import Certificate, certify, expected_genus

__version__ = "0.1.0"
