# -*- coding: utf-8 -*-

"""
dp2_cluster computes toric cluster variables of the dP2 quiver in closed form
and as perfect-matching polynomials of subgraphs of its brane tiling.
"""

from dp2_cluster.contour import Contour, Special, contour_for, extract
from dp2_cluster.errors import Dp2Error
from dp2_cluster.laurent import LaurentPoly
from dp2_cluster.matching import c_value, verify_main_theorem
from dp2_cluster.quiver import apply_rho_word, dp2_model1_seed, mutate
from dp2_cluster.somos import ClassifiedVariable, Family, classify
from dp2_cluster.tiling import dp2_tiling

__version__ = '0.1.0'
