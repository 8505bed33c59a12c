"""Rack and quandle homology, shadow colourings of link diagrams, and
shadow cocycle invariants with exact arithmetic."""

from .chains import (DEGENERATE, QUANDLE, RACK, ZZ, Chain, Cochain, Ring,
                     boundary, coboundary, eval_cochain, project_quandle,
                     shift, split)
from .diagram import (ALL_CONVENTIONS, CALIBRATED, Convention, diagram_chain,
                      enumerate_colourings, parse_pd, read_pd, regions,
                      shadow_chain, shadow_extend)
from .errors import ShadowHomError
from .homology import (AbelianGroup, cocycle_space, homology_group,
                       in_boundary_image, smith_normal_form)
from .quandle import (Quandle, alexander, conjugation, dihedral, make_quandle,
                      orbits, read_quandle, trivial)

__version__ = "0.1.0"
