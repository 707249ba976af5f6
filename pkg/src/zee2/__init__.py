"""Exact computations in twisted group algebras over (Z2)^n."""

from .gf2core import BoolPoly, Cochain, CubicPoly, Gl2Map, anf, apply_map, weight
from .twist import (GeneratingFunction, TwistSpec, alpha_to_twist, beta_of, closed_alpha,
                    equivalence_report, is_coboundary, make_twist, phi_of, recover_alpha)
from .algebra import Algebra, AlgebraElement, GaussianRational

__version__ = "0.1.0"
