"""Chow classes in A_*(P^n), Chern series, multidegrees and Segre classes."""

from .classes import (ChowClass, ChernPoly, VirtualBundle, DimensionMismatch, NonUnitInverse,
                      chern_arith, cap, q_str)
from .multidegree import (Multidegree, MultidegreeConfig, GenericityError, NotSaturated,
                          NotBihomogeneous, multidegree)
from .segre import NotPure, segre_class, segre_from_multidegree, cone_multidegree
