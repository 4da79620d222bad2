"""Global normal cones, Fulton's class and virtual fundamental classes."""

from .scheme import (EmbeddedScheme, Bundle, SmoothIdentity, SectionOfBundle, ExplicitCone,
                     InconsistentSection, NotABundle, check_section)
from .classes import (PurityFailure, VfcResult, cone_dimension, fulton_class, bundles,
                      global_normal_cone, fulton_via_normal_space, vfc_direct,
                      vfc_closed_formula, minimal_rank_parts)
from .randgen import SectionConfig, random_section
